#pragma once

#include <cstddef>

#include "sft/transition_matrix.hpp"

namespace sft {

// An admissible finite word over a fixed transition matrix. Validated at
// construction: nonempty, symbols in range, every transition allowed.
class Word {
public:
    Word(MatrixPtr matrix, Block symbols);

    const MatrixPtr& matrix() const { return matrix_; }
    const Block& symbols() const { return symbols_; }
    std::size_t length() const { return symbols_.size(); }
    Symbol at(std::size_t i) const { return symbols_[i]; }

    bool operator==(const Word& other) const;

private:
    MatrixPtr matrix_;
    Block symbols_;
};

// A periodic point of the shift, stored as one period block b of length n
// with x_i = b[i mod n]. The block must be admissible with wrap-around.
// The stored period n need not be minimal.
class PeriodicPoint {
public:
    PeriodicPoint(MatrixPtr matrix, Block block);

    const MatrixPtr& matrix() const { return matrix_; }
    const Block& block() const { return block_; }
    // Stored period (block length), a multiple of the minimal period.
    std::size_t period() const { return block_.size(); }
    std::size_t minimal_period() const { return minimal_period_; }

    Symbol coord(std::size_t i) const { return block_[i % block_.size()]; }
    // First k coordinates, wrapping as needed.
    Block prefix(std::size_t k) const;
    // Image under the shift: block rotated left by one.
    PeriodicPoint shifted() const;

    // Lexicographically least rotation of the minimal-period block. Equal
    // sequences share a key even when stored with different periods, and two
    // points lie on the same shift orbit exactly when their keys match.
    const Block& orbit_key() const { return orbit_key_; }

    // True when both describe the same element of the shift space.
    bool same_sequence(const PeriodicPoint& other) const;

private:
    MatrixPtr matrix_;
    Block block_;
    std::size_t minimal_period_ = 0;
    Block orbit_key_;
};

// Smallest divisor d of block.size() such that the block is d-periodic; the
// block's minimal period as a periodic sequence.
std::size_t minimal_period_of(const Block& block);

// Metric d_theta(x, y) = theta^t where t is the length of the longest common
// prefix (t = 0 when first symbols differ; distance 0 for equal sequences).
// Requires theta in (0,1) and both points over the same matrix.
double theta_distance(const PeriodicPoint& x, const PeriodicPoint& y, double theta);

} // namespace sft
