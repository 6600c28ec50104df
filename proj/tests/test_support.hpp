#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "sft/measures.hpp"
#include "sft/orbits.hpp"
#include "sft/rng.hpp"
#include "sft/transition_matrix.hpp"
#include "sft/word.hpp"

namespace sft::testing {

// Golden ratio constants used as oracles throughout the suite.
inline constexpr double kPhi = 1.6180339887498948482;
inline constexpr double kLogPhi = 0.4812118250596034475;
inline constexpr double kInvPhiSq = 0.3819660112501051518; // 1/phi^2

// Lucas numbers L_1..L_16: the period-n point counts of the golden mean shift.
inline const std::vector<long>& lucas_numbers() {
    static const std::vector<long> values{1,  3,   4,   7,   11,  18,  29,  47,
                                          76, 123, 199, 322, 521, 843, 1364, 2207};
    return values;
}

// Random s x s transition matrix that passes construction and is primitive.
// Rejection sampling; deterministic for a given generator state.
inline MatrixPtr random_primitive_matrix(int s, std::mt19937_64& gen) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<std::vector<int>> rows(static_cast<std::size_t>(s),
                                           std::vector<int>(static_cast<std::size_t>(s), 0));
        for (auto& row : rows) {
            for (int& e : row) {
                e = rng::unit(gen) < 0.55 ? 1 : 0;
            }
        }
        try {
            MatrixPtr m = TransitionMatrix::from_rows(rows);
            if (m->is_primitive()) {
                return m;
            }
        } catch (const SftError&) {
            // zero row or column; resample
        }
    }
    throw std::runtime_error("random_primitive_matrix: rejection sampling stalled");
}

// Random periodic point with stored period in [1, max_period].
inline PeriodicPoint random_periodic_point(const MatrixPtr& matrix, unsigned max_period,
                                           std::mt19937_64& gen) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
        const unsigned n = 1 + static_cast<unsigned>(rng::below(gen, max_period));
        Block block;
        block.push_back(static_cast<Symbol>(rng::below(gen, static_cast<std::uint64_t>(matrix->size()))));
        bool dead = false;
        for (unsigned i = 1; i < n; ++i) {
            const auto& next = matrix->successors(block.back());
            if (next.empty()) {
                dead = true;
                break;
            }
            block.push_back(next[static_cast<std::size_t>(rng::below(gen, next.size()))]);
        }
        if (!dead && matrix->wrap_admissible(block)) {
            return PeriodicPoint(matrix, block);
        }
    }
    throw std::runtime_error("random_periodic_point: rejection sampling stalled");
}

// Random finitely supported invariant measure: a few whole shift orbits with
// random orbit masses, spread evenly within each orbit.
inline FiniteInvariantMeasure random_invariant_measure(const MatrixPtr& matrix,
                                                       unsigned max_period,
                                                       std::mt19937_64& gen) {
    const unsigned orbit_count = 1 + static_cast<unsigned>(rng::below(gen, 4));
    std::map<Block, PeriodicPoint> picked; // keyed by orbit, dedupes collisions
    for (unsigned k = 0; k < orbit_count; ++k) {
        PeriodicPoint x = random_periodic_point(matrix, max_period, gen);
        picked.emplace(x.orbit_key(), x);
    }
    std::vector<PeriodicPoint> support;
    std::vector<double> weights;
    std::vector<double> masses;
    double total = 0.0;
    for (std::size_t k = 0; k < picked.size(); ++k) {
        masses.push_back(0.1 + rng::unit(gen));
        total += masses.back();
    }
    std::size_t orbit_index = 0;
    for (const auto& [key, rep] : picked) {
        PeriodicPoint x(matrix, key);
        const std::size_t orbit_size = x.minimal_period();
        const double w = masses[orbit_index] / total / static_cast<double>(orbit_size);
        for (std::size_t r = 0; r < orbit_size; ++r) {
            support.push_back(x);
            weights.push_back(w);
            x = x.shifted();
        }
        ++orbit_index;
    }
    // Weights sum to 1 up to roundoff; construction tolerance absorbs it.
    return FiniteInvariantMeasure::from_weights(std::move(support), std::move(weights));
}

// Random table values in [-1, 1] at the given depth.
inline LocallyConstantFunction random_function(const MatrixPtr& matrix, int depth,
                                               std::mt19937_64& gen) {
    return LocallyConstantFunction::tabulate(
        matrix, depth, [&](const Block&) { return rng::symmetric_unit(gen); });
}

} // namespace sft::testing
