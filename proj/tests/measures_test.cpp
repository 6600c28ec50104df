#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "sft/errors.hpp"
#include "sft/measures.hpp"
#include "sft/parry.hpp"
#include "test_support.hpp"

using namespace sft;

TEST_CASE("uniform measures weight every point equally") {
    const MatrixPtr golden = TransitionMatrix::golden_mean();
    const auto m = FiniteInvariantMeasure::uniform(OrbitSet::enumerate_fix(golden, 4));
    REQUIRE(m.support().size() == 7);
    for (const double w : m.weights()) {
        CHECK(w == doctest::Approx(1.0 / 7.0).epsilon(1e-15));
    }
    const OrbitSet empty = OrbitSet::closure(golden, 3, {});
    CHECK_THROWS_AS(FiniteInvariantMeasure::uniform(empty), EmptySetError);
}

TEST_CASE("explicit weights are strictly validated") {
    const MatrixPtr golden = TransitionMatrix::golden_mean();
    const PeriodicPoint fixed(golden, {0});
    const PeriodicPoint a(golden, {0, 1});
    const PeriodicPoint b(golden, {1, 0});

    // Valid: a full orbit with equal weights plus a fixed point.
    CHECK_NOTHROW(FiniteInvariantMeasure::from_weights({fixed, a, b}, {0.5, 0.25, 0.25}));

    // Partial orbit: b missing.
    CHECK_THROWS_AS(FiniteInvariantMeasure::from_weights({fixed, a}, {0.5, 0.5}),
                    NotInvariantError);
    // Unequal weights along the orbit.
    CHECK_THROWS_AS(FiniteInvariantMeasure::from_weights({fixed, a, b}, {0.5, 0.3, 0.2}),
                    NotInvariantError);
    // Weights not summing to one.
    CHECK_THROWS_AS(FiniteInvariantMeasure::from_weights({fixed, a, b}, {0.5, 0.2, 0.2}),
                    NotInvariantError);
    // Negative weight.
    CHECK_THROWS_AS(FiniteInvariantMeasure::from_weights({fixed, a, b}, {1.5, -0.25, -0.25}),
                    NotInvariantError);
    // Same sequence stored at periods 2 and 4.
    const PeriodicPoint a4(golden, {0, 1, 0, 1});
    CHECK_THROWS_AS(
        FiniteInvariantMeasure::from_weights({a, b, a4}, {0.25, 0.25, 0.5}),
        NotInvariantError);
}

TEST_CASE("symmetrization repairs weights and closes the support") {
    const MatrixPtr golden = TransitionMatrix::golden_mean();
    const PeriodicPoint a(golden, {0, 1});
    const PeriodicPoint fixed(golden, {0});
    // Orbit of a is half open: symmetrized closes it and splits its mass.
    const auto m = FiniteInvariantMeasure::symmetrized({fixed, a}, {0.4, 0.6});
    REQUIRE(m.support().size() == 3);
    CHECK(m.cylinder_measure({0, 0}) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(m.cylinder_measure({0, 1}) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(m.cylinder_measure({1, 0}) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("cylinder masses sum to one at every depth") {
    std::mt19937_64 gen(55);
    const MatrixPtr golden = TransitionMatrix::golden_mean();
    for (int trial = 0; trial < 10; ++trial) {
        const auto m = sft::testing::random_invariant_measure(golden, 6, gen);
        for (unsigned len = 1; len <= 5; ++len) {
            double total = 0.0;
            for (const Block& w : golden->admissible_words(static_cast<int>(len))) {
                total += m.cylinder_measure(w);
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("partition entropy of small uniform measures is exact") {
    const MatrixPtr golden = TransitionMatrix::golden_mean();
    // Uniform on the 3 period-2 points: three distinct 2-prefixes.
    const auto u2 = FiniteInvariantMeasure::uniform(OrbitSet::enumerate_fix(golden, 2));
    CHECK(u2.partition_entropy(2) == doctest::Approx(std::log(3.0)).epsilon(1e-14));

    // A point mass has zero entropy at any depth.
    const auto point =
        FiniteInvariantMeasure::uniform(OrbitSet::closure(golden, 1, {PeriodicPoint(golden, {0})}));
    for (unsigned N = 1; N <= 6; ++N) {
        CHECK(point.partition_entropy(N) == 0.0);
    }
    CHECK_THROWS_AS(u2.partition_entropy(0), SftError);
}

TEST_CASE("conditional entropy is a difference of partition entropies") {
    const MatrixPtr full = TransitionMatrix::full_shift(2);
    const auto m = FiniteInvariantMeasure::uniform(OrbitSet::enumerate_fix(full, 4));
    // Uniform on Fix_4 of the full 2-shift: every admissible word of length
    // <= 4 appears with the uniform frequency, so H(N) grows by log 2 until
    // the period wraps.
    CHECK(m.conditional_entropy(0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(m.conditional_entropy(1) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(m.conditional_entropy(2) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    for (unsigned N = 1; N <= 6; ++N) {
        CHECK(m.conditional_entropy(N) ==
              doctest::Approx(m.partition_entropy(N + 1) - m.partition_entropy(N))
                  .epsilon(1e-13));
    }
}

TEST_CASE("partition entropy telescopes through conditional entropies") {
    std::mt19937_64 gen(56);
    const MatrixPtr golden = TransitionMatrix::golden_mean();
    for (int trial = 0; trial < 5; ++trial) {
        const auto m = sft::testing::random_invariant_measure(golden, 6, gen);
        for (unsigned N = 1; N <= 7; ++N) {
            double sum = 0.0;
            for (unsigned k = 0; k < N; ++k) {
                sum += m.conditional_entropy(k);
            }
            CHECK(sum == doctest::Approx(m.partition_entropy(N)).epsilon(1e-11));
        }
    }
}

TEST_CASE("entropy defect of an invariant measure decomposes over atoms") {
    // For invariant mu and the Markov measure m with kernel q(. | next):
    // log lambda - (H(N+1) - H(N)) equals the weighted divergence sum
    // sum_w mu(C(w)) phi_{q(.|w_0)}(mu(first symbol | w)) over N-words w.
    std::mt19937_64 gen(57);
    const MatrixPtr golden = TransitionMatrix::golden_mean();
    const ParryMeasure parry = ParryMeasure::compute(golden);
    for (int trial = 0; trial < 8; ++trial) {
        const auto mu = sft::testing::random_invariant_measure(golden, 8, gen);
        for (unsigned N = 1; N <= 5; ++N) {
            double divergence_total = 0.0;
            for (const Block& w : golden->admissible_words(static_cast<int>(N))) {
                const double atom = mu.cylinder_measure(w);
                if (atom <= 0.0) {
                    continue;
                }
                std::vector<double> q(static_cast<std::size_t>(golden->size()), 0.0);
                for (Symbol i = 0; i < golden->size(); ++i) {
                    Block prefixed;
                    prefixed.push_back(i);
                    prefixed.insert(prefixed.end(), w.begin(), w.end());
                    q[static_cast<std::size_t>(i)] = mu.cylinder_measure(prefixed) / atom;
                }
                divergence_total += atom * kl_divergence(parry.conditional_first_symbol(w[0]), q);
            }
            const double defect = parry.entropy() - mu.conditional_entropy(N);
            CHECK(defect == doctest::Approx(divergence_total).epsilon(1e-9));
            // Divergences are nonnegative, so conditional entropy never
            // exceeds the topological entropy.
            CHECK(mu.conditional_entropy(N) <= parry.entropy() + 1e-9);
        }
    }
}

TEST_CASE("divergence has the expected closed forms and failure mode") {
    CHECK(kl_divergence({0.5, 0.5}, {0.5, 0.5}) == doctest::Approx(0.0).epsilon(1e-15));
    // phi = 0.75 log 1.5 + 0.25 log 0.5.
    CHECK(kl_divergence({0.5, 0.5}, {0.75, 0.25}) ==
          doctest::Approx(0.13081203594113696).epsilon(1e-14));
    CHECK(kl_divergence({0.5, 0.5}, {1.0, 0.0}) ==
          doctest::Approx(std::numbers::ln2).epsilon(1e-14));
    CHECK_THROWS_AS(kl_divergence({1.0, 0.0}, {0.5, 0.5}), InfiniteDivergenceError);
    CHECK_THROWS_AS(kl_divergence({0.5, 0.5}, {0.5, 0.25, 0.25}), SftError);

    CHECK(l1_distance({0.5, 0.5}, {0.75, 0.25}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(l1_distance({1.0, 0.0}, {1.0, 0.0}) == 0.0);

    CHECK(pinsker_bound(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pinsker_bound(0.0) == 0.0);
}

TEST_CASE("pinsker bound holds on random distribution pairs") {
    std::mt19937_64 gen(58);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t dim = 2 + rng::below(gen, 5);
        const std::vector<double> p = rng::simplex_point(gen, dim);
        const std::vector<double> q = rng::simplex_point(gen, dim);
        const double phi = kl_divergence(p, q);
        CHECK(phi >= -1e-12);
        CHECK(l1_distance(p, q) <= pinsker_bound(phi) + 1e-12);
    }
}

TEST_CASE("averaged gap controls the midpoint gap") {
    const auto check = averaging_gap_check({4.0, 2.0, 0.0}, 4.0, 2);
    CHECK(check.lhs == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(check.rhs == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(check.holds);

    // Constant sequence at the ceiling h: both sides vanish.
    const auto flat = averaging_gap_check({1.0, 1.0, 1.0, 1.0}, 1.0, 4);
    CHECK(flat.lhs == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(flat.rhs == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(flat.holds);

    CHECK_THROWS_AS(averaging_gap_check({1.0, 2.0}, 3.0, 2), NotDecreasingError);
    CHECK_THROWS_AS(averaging_gap_check({2.0, 1.0}, 1.5, 2), HTooSmallError);
    CHECK_THROWS_AS(averaging_gap_check({2.0, 1.0}, 3.0, 0), SftError);
    CHECK_THROWS_AS(averaging_gap_check({2.0, 1.0}, 3.0, 3), SftError);
}

TEST_CASE("averaged gap inequality holds on random decreasing sequences") {
    std::mt19937_64 gen(59);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t len = 1 + rng::below(gen, 20);
        std::vector<double> a(len);
        double level = 5.0 * rng::unit(gen) + 1.0;
        for (std::size_t i = 0; i < len; ++i) {
            a[i] = level;
            level -= rng::unit(gen);
            level = std::max(level, 0.0);
        }
        const double h = a[0] + rng::unit(gen);
        for (std::size_t n = 1; n <= len; ++n) {
            CHECK(averaging_gap_check(a, h, n).holds);
        }
    }
}
