#include "sft/word.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sft/errors.hpp"

namespace sft {

Word::Word(MatrixPtr matrix, Block symbols)
    : matrix_(std::move(matrix)), symbols_(std::move(symbols)) {
    if (!matrix_) {
        throw SftError("word: null matrix");
    }
    if (symbols_.empty()) {
        throw SftError("word: empty");
    }
    if (!matrix_->word_admissible(symbols_)) {
        throw SftError("word: inadmissible transition");
    }
}

bool Word::operator==(const Word& other) const {
    return symbols_ == other.symbols_ && same_matrix(matrix_, other.matrix_);
}

std::size_t minimal_period_of(const Block& block) {
    const std::size_t n = block.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) {
            continue;
        }
        bool matches = true;
        for (std::size_t i = 0; i + d < n && matches; ++i) {
            matches = block[i] == block[i + d];
        }
        if (matches) {
            return d;
        }
    }
    return n;
}

namespace {

Block least_rotation(const Block& block) {
    Block best = block;
    Block candidate = block;
    for (std::size_t r = 1; r < block.size(); ++r) {
        std::rotate(candidate.begin(), candidate.begin() + 1, candidate.end());
        if (candidate < best) {
            best = candidate;
        }
    }
    return best;
}

} // namespace

PeriodicPoint::PeriodicPoint(MatrixPtr matrix, Block block)
    : matrix_(std::move(matrix)), block_(std::move(block)) {
    if (!matrix_) {
        throw SftError("periodic point: null matrix");
    }
    if (!matrix_->wrap_admissible(block_)) {
        throw InadmissiblePointError("periodic point: block not admissible with wrap-around");
    }
    minimal_period_ = minimal_period_of(block_);
    Block minimal(block_.begin(), block_.begin() + static_cast<std::ptrdiff_t>(minimal_period_));
    orbit_key_ = least_rotation(minimal);
}

Block PeriodicPoint::prefix(std::size_t k) const {
    Block out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        out.push_back(coord(i));
    }
    return out;
}

PeriodicPoint PeriodicPoint::shifted() const {
    Block rotated(block_.begin() + 1, block_.end());
    rotated.push_back(block_.front());
    return PeriodicPoint(matrix_, std::move(rotated));
}

bool PeriodicPoint::same_sequence(const PeriodicPoint& other) const {
    if (!same_matrix(matrix_, other.matrix_)) {
        return false;
    }
    if (minimal_period_ != other.minimal_period_) {
        return false;
    }
    return std::equal(block_.begin(), block_.begin() + static_cast<std::ptrdiff_t>(minimal_period_),
                      other.block_.begin());
}

double theta_distance(const PeriodicPoint& x, const PeriodicPoint& y, double theta) {
    if (!(theta > 0.0 && theta < 1.0)) {
        throw SftError("theta_distance: theta must lie in (0,1)");
    }
    if (!same_matrix(x.matrix(), y.matrix())) {
        throw SftError("theta_distance: points over different matrices");
    }
    if (x.same_sequence(y)) {
        return 0.0;
    }
    // Distinct periodic sequences must disagree within one common period.
    const std::size_t horizon = std::lcm(x.period(), y.period());
    for (std::size_t t = 0; t < horizon; ++t) {
        if (x.coord(t) != y.coord(t)) {
            return std::pow(theta, static_cast<double>(t));
        }
    }
    return 0.0;
}

} // namespace sft
