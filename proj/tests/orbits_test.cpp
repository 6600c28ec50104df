#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "sft/errors.hpp"
#include "sft/orbits.hpp"
#include "test_support.hpp"

using namespace sft;
using sft::testing::kLogPhi;

TEST_CASE("period counts of the golden mean shift are the Lucas numbers") {
    const MatrixPtr golden = TransitionMatrix::golden_mean();
    const std::vector<long>& lucas = sft::testing::lucas_numbers();
    for (unsigned n = 1; n <= 16; ++n) {
        CHECK(count_fix(*golden, n) == BigInt(lucas[n - 1]));
    }
    CHECK_THROWS_AS(count_fix(*golden, 0), SftError);
}

TEST_CASE("period counts of the full shift are powers of the alphabet size") {
    const MatrixPtr full = TransitionMatrix::full_shift(2);
    BigInt expected = 2;
    for (unsigned n = 1; n <= 40; ++n) {
        CHECK(count_fix(*full, n) == expected);
        expected *= 2;
    }
}

TEST_CASE("minimal-period counts follow Moebius inversion") {
    const MatrixPtr golden = TransitionMatrix::golden_mean();
    const std::vector<long long> expected{1, 2, 3, 4, 10, 12, 28, 40};
    for (unsigned n = 1; n <= 8; ++n) {
        CHECK(count_primitive(*golden, n) == BigInt(expected[n - 1]));
    }
    // n = 12 has divisors 1,2,3,4,6,12: L12 - L6 - L4 + L2 = 322 - 18 - 7 + 3.
    CHECK(count_primitive(*golden, 12) == BigInt(300));
    // Full 2-shift, n = 4: 16 - 4 = 12.
    CHECK(count_primitive(*TransitionMatrix::full_shift(2), 4) == BigInt(12));
    // Sum over divisors recovers the raw count.
    const MatrixPtr full3 = TransitionMatrix::full_shift(3);
    BigInt total = 0;
    for (unsigned d : {1u, 2u, 3u, 4u, 6u, 12u}) {
        total += count_primitive(*full3, d);
    }
    CHECK(total == count_fix(*full3, 12));
}

TEST_CASE("log of big counts stays accurate far beyond double range") {
    const MatrixPtr golden = TransitionMatrix::golden_mean();
    // L300 ~ phi^300, about 208 decimal digits; fits the direct path.
    const double log300 = log_bigint(count_fix(*golden, 300));
    CHECK(log300 == doctest::Approx(300.0 * kLogPhi).epsilon(1e-12));

    // 2^1500 exceeds the direct conversion threshold; exercises the split path.
    const MatrixPtr full = TransitionMatrix::full_shift(2);
    const double log1500 = log_bigint(count_fix(*full, 1500));
    CHECK(log1500 == doctest::Approx(1500.0 * std::numbers::ln2).epsilon(1e-12));

    CHECK(log_bigint(BigInt(0)) == -std::numeric_limits<double>::infinity());
    CHECK(log_bigint(BigInt(1)) == 0.0);
    CHECK(log_bigint(BigInt(7)) == doctest::Approx(std::log(7.0)).epsilon(1e-15));
}

TEST_CASE("enumeration is lexicographic and matches the exact counts") {
    const MatrixPtr golden = TransitionMatrix::golden_mean();
    const OrbitSet one = OrbitSet::enumerate_fix(golden, 1);
    REQUIRE(one.size() == 1);
    CHECK(one.blocks()[0] == Block{0});

    const OrbitSet two = OrbitSet::enumerate_fix(golden, 2);
    REQUIRE(two.size() == 3);
    CHECK(two.blocks()[0] == Block{0, 0});
    CHECK(two.blocks()[1] == Block{0, 1});
    CHECK(two.blocks()[2] == Block{1, 0});

    for (unsigned n = 1; n <= 12; ++n) {
        CHECK(BigInt(OrbitSet::enumerate_fix(golden, n).size()) == count_fix(*golden, n));
        CHECK(BigInt(OrbitSet::enumerate_primitive(golden, n).size()) ==
              count_primitive(*golden, n));
    }
}

TEST_CASE("enumeration counts match on random primitive matrices") {
    std::mt19937_64 gen(99);
    for (int trial = 0; trial < 3; ++trial) {
        const MatrixPtr matrix = sft::testing::random_primitive_matrix(3, gen);
        for (unsigned n = 1; n <= 10; ++n) {
            CHECK(BigInt(OrbitSet::enumerate_fix(matrix, n).size()) == count_fix(*matrix, n));
            CHECK(BigInt(OrbitSet::enumerate_primitive(matrix, n).size()) ==
                  count_primitive(*matrix, n));
        }
    }
}

TEST_CASE("the enumeration cap is checked before any work") {
    const MatrixPtr full = TransitionMatrix::full_shift(2);
    CHECK_THROWS_AS(OrbitSet::enumerate_fix(full, 7, 100), CapExceededError);
    CHECK_NOTHROW(OrbitSet::enumerate_fix(full, 7, 128));
    // 2^80 overflows uint64 candidate counting; the exact pre-check still trips.
    CHECK_THROWS_AS(OrbitSet::enumerate_fix(full, 80), CapExceededError);
}

TEST_CASE("closure completes shift orbits and validates periods") {
    const MatrixPtr golden = TransitionMatrix::golden_mean();
    const PeriodicPoint p(golden, {0, 1});
    const OrbitSet closed = OrbitSet::closure(golden, 4, {p});
    REQUIRE(closed.size() == 2);
    CHECK(closed.blocks()[0] == Block{0, 1, 0, 1});
    CHECK(closed.blocks()[1] == Block{1, 0, 1, 0});

    // Stored period 3 does not divide 4.
    const PeriodicPoint q(golden, {0, 0, 1});
    CHECK_THROWS_AS(OrbitSet::closure(golden, 4, {q}), InadmissiblePointError);
}

TEST_CASE("orbit partition groups blocks by rotation") {
    const MatrixPtr golden = TransitionMatrix::golden_mean();
    const OrbitSet fix6 = OrbitSet::enumerate_fix(golden, 6);
    REQUIRE(fix6.size() == 18);
    const auto groups = fix6.orbit_partition();
    std::vector<std::size_t> sizes;
    std::size_t covered = 0;
    for (const auto& g : groups) {
        sizes.push_back(g.size());
        covered += g.size();
    }
    CHECK(covered == fix6.size());
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<std::size_t>{1, 2, 3, 6, 6});
    // Every group is one shift orbit: rotating any member stays inside it.
    const auto points = fix6.points();
    for (const auto& g : groups) {
        for (std::size_t idx : g) {
            const PeriodicPoint shifted = points[idx].shifted();
            bool found = false;
            for (std::size_t other : g) {
                found = found || shifted.same_sequence(points[other]);
            }
            CHECK(found);
        }
    }
}

TEST_CASE("orbit sets round trip through streams") {
    const MatrixPtr golden = TransitionMatrix::golden_mean();
    const OrbitSet fix5 = OrbitSet::enumerate_fix(golden, 5);
    std::ostringstream out;
    fix5.write(out);
    std::istringstream in(out.str());
    const OrbitSet back = OrbitSet::read(golden, 5, in);
    CHECK(back == fix5);

    std::istringstream bad("0 1 0\n");
    CHECK_THROWS_AS(OrbitSet::read(golden, 5, bad), IoError);
    std::istringstream inadmissible("1 1 0 0 0\n");
    CHECK_THROWS_AS(OrbitSet::read(golden, 5, inadmissible), SftError);
}
