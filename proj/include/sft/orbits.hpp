#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sft/transition_matrix.hpp"
#include "sft/word.hpp"

namespace sft {

using BigInt = boost::multiprecision::cpp_int;

// Number of period-n points: trace of the n-th matrix power, computed exactly
// by integer exponentiation by squaring. n >= 1.
BigInt count_fix(const TransitionMatrix& matrix, unsigned n);

// Number of points of minimal period exactly n, by Moebius inversion over the
// divisors of n: sum over d | n of mu(n/d) tr(A^d).
BigInt count_primitive(const TransitionMatrix& matrix, unsigned n);

// Natural log of a nonnegative big integer; log(0) = -infinity. For values
// beyond double range the top bits are converted and the shift is folded in
// as a multiple of log 2.
double log_bigint(const BigInt& value);

// A finite shift-invariant set of period-n points, stored as the sorted list
// of their period blocks. Always closed under the shift (rotation of blocks).
class OrbitSet {
public:
    static constexpr std::uint64_t default_cap = std::uint64_t{1} << 24;

    // All period-n points, by lexicographic depth-first search over blocks.
    // Throws CapExceededError when the candidate space s^n exceeds cap.
    static OrbitSet enumerate_fix(const MatrixPtr& matrix, unsigned n,
                                  std::uint64_t cap = default_cap);

    // Only the points of minimal period exactly n.
    static OrbitSet enumerate_primitive(const MatrixPtr& matrix, unsigned n,
                                        std::uint64_t cap = default_cap);

    // Smallest invariant period-n set containing the given points. Each
    // point's stored period must divide n; otherwise InadmissiblePointError.
    static OrbitSet closure(const MatrixPtr& matrix, unsigned n,
                            const std::vector<PeriodicPoint>& points);

    const MatrixPtr& matrix() const { return matrix_; }
    unsigned period() const { return period_; }
    std::size_t size() const { return blocks_.size(); }
    bool empty() const { return blocks_.empty(); }
    // Sorted lexicographically, no duplicates.
    const std::vector<Block>& blocks() const { return blocks_; }
    std::vector<PeriodicPoint> points() const;

    // Indices of blocks() grouped into shift orbits, each group sorted, groups
    // ordered by first index. Group size equals the minimal period.
    std::vector<std::vector<std::size_t>> orbit_partition() const;

    // One block per line, symbols space separated, blocks in stored order.
    void write(std::ostream& out) const;
    static OrbitSet read(const MatrixPtr& matrix, unsigned n, std::istream& in);

    bool operator==(const OrbitSet& other) const;

private:
    // Callers with blocks already sorted and closed under rotation (the
    // exhaustive enumerations) may skip the closure rebuild.
    enum class Build { close_and_sort, trusted_sorted_closed };

    OrbitSet(MatrixPtr matrix, unsigned n, std::vector<Block> blocks,
             Build mode = Build::close_and_sort);

    MatrixPtr matrix_;
    unsigned period_ = 0;
    std::vector<Block> blocks_;
};

} // namespace sft
