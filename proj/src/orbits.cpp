#include "sft/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "sft/errors.hpp"

namespace sft {

namespace {

using BigMatrix = std::vector<BigInt>; // s*s, row-major

BigMatrix big_identity(int s) {
    BigMatrix m(static_cast<std::size_t>(s) * static_cast<std::size_t>(s), BigInt(0));
    for (int i = 0; i < s; ++i) {
        m[static_cast<std::size_t>(i) * static_cast<std::size_t>(s) + static_cast<std::size_t>(i)] = 1;
    }
    return m;
}

BigMatrix big_multiply(const BigMatrix& a, const BigMatrix& b, int s) {
    const std::size_t n = static_cast<std::size_t>(s);
    BigMatrix out(n * n, BigInt(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const BigInt& aik = a[i * n + k];
            if (aik == 0) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    return out;
}

BigInt trace_power(const TransitionMatrix& matrix, unsigned n) {
    const int s = matrix.size();
    BigMatrix base(static_cast<std::size_t>(s) * static_cast<std::size_t>(s), BigInt(0));
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) {
            base[static_cast<std::size_t>(i) * static_cast<std::size_t>(s) +
                 static_cast<std::size_t>(j)] = matrix.entry(i, j) ? 1 : 0;
        }
    }
    BigMatrix power = big_identity(s);
    unsigned e = n;
    while (e > 0) {
        if (e & 1) {
            power = big_multiply(power, base, s);
        }
        e >>= 1;
        if (e > 0) {
            base = big_multiply(base, base, s);
        }
    }
    BigInt trace = 0;
    for (int i = 0; i < s; ++i) {
        trace += power[static_cast<std::size_t>(i) * static_cast<std::size_t>(s) +
                       static_cast<std::size_t>(i)];
    }
    return trace;
}

std::vector<unsigned> distinct_prime_factors(unsigned n) {
    std::vector<unsigned> primes;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            primes.push_back(p);
            while (n % p == 0) {
                n /= p;
            }
        }
    }
    if (n > 1) {
        primes.push_back(n);
    }
    return primes;
}

} // namespace

BigInt count_fix(const TransitionMatrix& matrix, unsigned n) {
    if (n == 0) {
        throw SftError("count_fix: period must be at least 1");
    }
    return trace_power(matrix, n);
}

BigInt count_primitive(const TransitionMatrix& matrix, unsigned n) {
    if (n == 0) {
        throw SftError("count_primitive: period must be at least 1");
    }
    // Moebius inversion restricted to squarefree divisors: over subsets S of
    // the distinct primes of n, sum (-1)^|S| tr(A^{n / prod S}).
    const std::vector<unsigned> primes = distinct_prime_factors(n);
    BigInt total = 0;
    const std::size_t subsets = std::size_t{1} << primes.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
        unsigned divisor = 1;
        bool negate = false;
        for (std::size_t b = 0; b < primes.size(); ++b) {
            if (mask >> b & 1) {
                divisor *= primes[b];
                negate = !negate;
            }
        }
        const BigInt term = trace_power(matrix, n / divisor);
        if (negate) {
            total -= term;
        } else {
            total += term;
        }
    }
    return total;
}

double log_bigint(const BigInt& value) {
    if (value < 0) {
        throw SftError("log_bigint: negative argument");
    }
    if (value == 0) {
        return -std::numeric_limits<double>::infinity();
    }
    const unsigned bits = boost::multiprecision::msb(value);
    if (bits <= 900) {
        return std::log(value.convert_to<double>());
    }
    // Beyond double range: value = m * 2^shift with m holding the top 64 bits,
    // read out bit by bit to stay off cpp_int's resizing paths.
    const unsigned shift = bits - 63;
    std::uint64_t m = 0;
    for (int b = 63; b >= 0; --b) {
        m = (m << 1) | (boost::multiprecision::bit_test(value, shift + static_cast<unsigned>(b)) ? 1 : 0);
    }
    return std::log(static_cast<double>(m)) + static_cast<double>(shift) * std::numbers::ln2;
}

OrbitSet::OrbitSet(MatrixPtr matrix, unsigned n, std::vector<Block> blocks, Build mode)
    : matrix_(std::move(matrix)), period_(n), blocks_(std::move(blocks)) {
    if (!matrix_) {
        throw SftError("orbit set: null matrix");
    }
    if (period_ == 0) {
        throw SftError("orbit set: period must be at least 1");
    }
    for (const Block& b : blocks_) {
        if (b.size() != period_) {
            throw InadmissiblePointError("orbit set: block length differs from period");
        }
        if (!matrix_->wrap_admissible(b)) {
            throw InadmissiblePointError("orbit set: block not admissible with wrap-around");
        }
    }
    if (mode == Build::trusted_sorted_closed) {
        return;
    }
    // Close under the shift (rotation), dedupe, sort.
    std::vector<Block> closed;
    closed.reserve(blocks_.size());
    for (const Block& b : blocks_) {
        Block rotated = b;
        for (std::size_t r = 0; r < b.size(); ++r) {
            closed.push_back(rotated);
            std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
        }
    }
    std::sort(closed.begin(), closed.end());
    closed.erase(std::unique(closed.begin(), closed.end()), closed.end());
    blocks_ = std::move(closed);
}

OrbitSet OrbitSet::enumerate_fix(const MatrixPtr& matrix, unsigned n, std::uint64_t cap) {
    if (!matrix) {
        throw SftError("enumerate_fix: null matrix");
    }
    if (n == 0) {
        throw SftError("enumerate_fix: period must be at least 1");
    }
    // Guard on the candidate space s^n, in exact arithmetic.
    BigInt space = 1;
    for (unsigned i = 0; i < n; ++i) {
        space *= matrix->size();
    }
    if (space > BigInt(cap)) {
        std::ostringstream msg;
        msg << "enumerate_fix: candidate space " << matrix->size() << "^" << n
            << " exceeds cap " << cap;
        throw CapExceededError(msg.str());
    }

    std::vector<Block> found;
    Block current;
    current.reserve(n);
    auto extend = [&](auto&& self) -> void {
        if (current.size() == n) {
            if (matrix->entry(current.back(), current.front())) {
                found.push_back(current);
            }
            return;
        }
        if (current.empty()) {
            for (Symbol a = 0; a < matrix->size(); ++a) {
                current.push_back(a);
                self(self);
                current.pop_back();
            }
            return;
        }
        for (const Symbol a : matrix->successors(current.back())) {
            current.push_back(a);
            self(self);
            current.pop_back();
        }
    };
    extend(extend);
    // DFS in symbol order emits the blocks lexicographically sorted, and the
    // set of all period-n points is rotation-invariant as a whole.
    return OrbitSet(matrix, n, std::move(found), Build::trusted_sorted_closed);
}

OrbitSet OrbitSet::enumerate_primitive(const MatrixPtr& matrix, unsigned n, std::uint64_t cap) {
    OrbitSet all = enumerate_fix(matrix, n, cap);
    std::vector<Block> minimal;
    for (Block& b : all.blocks_) {
        if (minimal_period_of(b) == n) {
            minimal.push_back(std::move(b));
        }
    }
    // Rotation preserves the minimal period, so the filtered set stays closed.
    return OrbitSet(matrix, n, std::move(minimal), Build::trusted_sorted_closed);
}

OrbitSet OrbitSet::closure(const MatrixPtr& matrix, unsigned n,
                           const std::vector<PeriodicPoint>& points) {
    if (!matrix) {
        throw SftError("closure: null matrix");
    }
    std::vector<Block> blocks;
    blocks.reserve(points.size());
    for (const PeriodicPoint& x : points) {
        if (!same_matrix(x.matrix(), matrix)) {
            throw InadmissiblePointError("closure: point over a different matrix");
        }
        if (n % x.minimal_period() != 0) {
            throw InadmissiblePointError("closure: point period does not divide the set period");
        }
        blocks.push_back(x.prefix(n));
    }
    return OrbitSet(matrix, n, std::move(blocks));
}

std::vector<PeriodicPoint> OrbitSet::points() const {
    std::vector<PeriodicPoint> out;
    out.reserve(blocks_.size());
    for (const Block& b : blocks_) {
        out.emplace_back(matrix_, b);
    }
    return out;
}

std::vector<std::vector<std::size_t>> OrbitSet::orbit_partition() const {
    std::vector<std::vector<std::size_t>> groups;
    std::vector<char> used(blocks_.size(), 0);
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (used[i]) {
            continue;
        }
        std::vector<std::size_t> group;
        Block rotated = blocks_[i];
        for (std::size_t r = 0; r < rotated.size(); ++r) {
            const auto it = std::lower_bound(blocks_.begin(), blocks_.end(), rotated);
            const std::size_t idx = static_cast<std::size_t>(it - blocks_.begin());
            if (it == blocks_.end() || *it != rotated) {
                throw SftError("orbit set: not closed under the shift");
            }
            if (!used[idx]) {
                used[idx] = 1;
                group.push_back(idx);
            }
            std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
        }
        std::sort(group.begin(), group.end());
        groups.push_back(std::move(group));
    }
    return groups;
}

void OrbitSet::write(std::ostream& out) const {
    for (const Block& b : blocks_) {
        for (std::size_t i = 0; i < b.size(); ++i) {
            out << (i ? " " : "") << b[i];
        }
        out << '\n';
    }
}

OrbitSet OrbitSet::read(const MatrixPtr& matrix, unsigned n, std::istream& in) {
    if (n == 0) {
        throw SftError("orbit set: period must be at least 1");
    }
    std::vector<Block> blocks;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::istringstream parts(line);
        Block b;
        int a = 0;
        while (parts >> a) {
            b.push_back(a);
        }
        if (b.size() != n) {
            throw IoError("orbit set: block length differs from period");
        }
        blocks.push_back(std::move(b));
    }
    return OrbitSet(matrix, n, std::move(blocks));
}

bool OrbitSet::operator==(const OrbitSet& other) const {
    return period_ == other.period_ && blocks_ == other.blocks_ &&
           same_matrix(matrix_, other.matrix_);
}

} // namespace sft
