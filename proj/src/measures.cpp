#include "sft/measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

#include "sft/errors.hpp"
#include "sft/numerics.hpp"

namespace sft {

namespace {

constexpr double kWeightTol = 1e-12;

// Support indices grouped by shift orbit (points with equal orbit keys).
std::map<Block, std::vector<std::size_t>>
group_by_orbit(const std::vector<PeriodicPoint>& support) {
    std::map<Block, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < support.size(); ++i) {
        groups[support[i].orbit_key()].push_back(i);
    }
    return groups;
}

} // namespace

FiniteInvariantMeasure::FiniteInvariantMeasure(MatrixPtr matrix,
                                               std::vector<PeriodicPoint> support,
                                               std::vector<double> weights)
    : matrix_(std::move(matrix)), support_(std::move(support)), weights_(std::move(weights)) {}

FiniteInvariantMeasure FiniteInvariantMeasure::uniform(const OrbitSet& points) {
    if (points.empty()) {
        throw EmptySetError("uniform measure: empty orbit set");
    }
    std::vector<PeriodicPoint> support = points.points();
    const double w = 1.0 / static_cast<double>(support.size());
    return FiniteInvariantMeasure(points.matrix(), std::move(support),
                                  std::vector<double>(points.size(), w));
}

FiniteInvariantMeasure
FiniteInvariantMeasure::from_weights(std::vector<PeriodicPoint> support,
                                     std::vector<double> weights) {
    if (support.empty()) {
        throw EmptySetError("measure: empty support");
    }
    if (support.size() != weights.size()) {
        throw NotInvariantError("measure: support and weight counts differ");
    }
    const MatrixPtr matrix = support.front().matrix();
    double total = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (!same_matrix(support[i].matrix(), matrix)) {
            throw NotInvariantError("measure: support mixes matrices");
        }
        if (weights[i] < 0.0) {
            throw NotInvariantError("measure: negative weight");
        }
        total += weights[i];
    }
    if (std::abs(total - 1.0) > kWeightTol) {
        throw NotInvariantError("measure: weights sum to " + format_double(total));
    }
    for (std::size_t i = 0; i < support.size(); ++i) {
        for (std::size_t j = i + 1; j < support.size(); ++j) {
            if (support[i].same_sequence(support[j])) {
                throw NotInvariantError("measure: duplicate support point");
            }
        }
    }
    // Shift invariance: each orbit fully present, equal weight on its points.
    for (const auto& [key, indices] : group_by_orbit(support)) {
        const std::size_t orbit_size = support[indices.front()].minimal_period();
        if (indices.size() != orbit_size) {
            throw NotInvariantError("measure: support contains a partial shift orbit");
        }
        for (std::size_t k = 1; k < indices.size(); ++k) {
            if (std::abs(weights[indices[k]] - weights[indices[0]]) > kWeightTol) {
                throw NotInvariantError("measure: weights differ along a shift orbit");
            }
        }
    }
    return FiniteInvariantMeasure(matrix, std::move(support), std::move(weights));
}

FiniteInvariantMeasure
FiniteInvariantMeasure::symmetrized(const std::vector<PeriodicPoint>& support,
                                    const std::vector<double>& weights) {
    if (support.empty()) {
        throw EmptySetError("measure: empty support");
    }
    if (support.size() != weights.size()) {
        throw NotInvariantError("measure: support and weight counts differ");
    }
    const MatrixPtr matrix = support.front().matrix();
    // Total weight per orbit, then spread evenly over the full orbit.
    std::map<Block, double> orbit_mass;
    double total = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (weights[i] < 0.0) {
            throw NotInvariantError("measure: negative weight");
        }
        orbit_mass[support[i].orbit_key()] += weights[i];
        total += weights[i];
    }
    if (total <= 0.0) {
        throw NotInvariantError("measure: zero total weight");
    }
    std::vector<PeriodicPoint> closed;
    std::vector<double> spread;
    for (const auto& [key, mass] : orbit_mass) {
        PeriodicPoint x(matrix, key);
        const std::size_t orbit_size = x.minimal_period();
        const double w = mass / total / static_cast<double>(orbit_size);
        for (std::size_t r = 0; r < orbit_size; ++r) {
            closed.push_back(x);
            spread.push_back(w);
            x = x.shifted();
        }
    }
    return from_weights(std::move(closed), std::move(spread));
}

double FiniteInvariantMeasure::integrate(const LocallyConstantFunction& f) const {
    if (!same_matrix(f.matrix(), matrix_)) {
        throw SftError("integrate: function over a different matrix");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i) {
        total += weights_[i] * f.evaluate(support_[i]);
    }
    return total;
}

double FiniteInvariantMeasure::cylinder_measure(const Block& word) const {
    if (word.empty()) {
        throw SftError("cylinder_measure: empty word");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i) {
        if (support_[i].prefix(word.size()) == word) {
            total += weights_[i];
        }
    }
    return total;
}

double FiniteInvariantMeasure::partition_entropy(unsigned N) const {
    if (N == 0) {
        throw SftError("partition_entropy: depth must be at least 1");
    }
    // Cylinder masses at depth N: accumulate weights by N-prefix. Only
    // prefixes realized by the support carry mass.
    std::map<Block, double> mass;
    for (std::size_t i = 0; i < support_.size(); ++i) {
        mass[support_[i].prefix(N)] += weights_[i];
    }
    double h = 0.0;
    for (const auto& [prefix, m] : mass) {
        if (m > 0.0) {
            h -= m * std::log(m);
        }
    }
    return h;
}

double FiniteInvariantMeasure::conditional_entropy(unsigned N) const {
    if (N == 0) {
        return partition_entropy(1);
    }
    return partition_entropy(N + 1) - partition_entropy(N);
}

void FiniteInvariantMeasure::write(std::ostream& out) const {
    for (std::size_t i = 0; i < support_.size(); ++i) {
        for (const Symbol a : support_[i].block()) {
            out << a << ' ';
        }
        out << format_double(weights_[i]) << '\n';
    }
}

double kl_divergence(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) {
        throw SftError("kl_divergence: length mismatch");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (q[i] == 0.0) {
            continue; // 0 log(p/0) = 0 by convention
        }
        if (q[i] < 0.0 || p[i] < 0.0) {
            throw SftError("kl_divergence: negative entry");
        }
        if (p[i] == 0.0) {
            throw InfiniteDivergenceError("kl_divergence: q charges an index of p-mass zero");
        }
        total += q[i] * std::log(q[i] / p[i]);
    }
    return total;
}

double l1_distance(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) {
        throw SftError("l1_distance: length mismatch");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        total += std::abs(p[i] - q[i]);
    }
    return total;
}

double pinsker_bound(double divergence) {
    if (divergence < 0.0) {
        divergence = 0.0;
    }
    return std::sqrt(2.0 * divergence);
}

AveragingCheck averaging_gap_check(const std::vector<double>& a, double h, std::size_t n) {
    if (n == 0 || n > a.size()) {
        throw SftError("averaging_gap_check: n out of range");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] < 0.0) {
            throw NotDecreasingError("averaging_gap_check: negative term");
        }
        if (i + 1 < n && a[i + 1] > a[i]) {
            throw NotDecreasingError("averaging_gap_check: sequence increases");
        }
    }
    if (h < a[0]) {
        throw HTooSmallError("averaging_gap_check: h below the first term");
    }
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean += a[i];
    }
    mean /= static_cast<double>(n);
    AveragingCheck check;
    check.lhs = 2.0 * (h - mean);
    check.rhs = h - a[n / 2];
    check.holds = check.lhs >= check.rhs - 1e-12;
    return check;
}

} // namespace sft
