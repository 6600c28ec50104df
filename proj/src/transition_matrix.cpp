#include "sft/transition_matrix.hpp"

#include <cstdint>
#include <fstream>
#include <queue>
#include <sstream>

#include "sft/errors.hpp"

namespace sft {

namespace {

// Reachability of every vertex from 0 along the given adjacency lists.
bool all_reachable(const std::vector<std::vector<Symbol>>& adjacency) {
    const std::size_t s = adjacency.size();
    std::vector<char> seen(s, 0);
    std::queue<Symbol> frontier;
    frontier.push(0);
    seen[0] = 1;
    std::size_t count = 1;
    while (!frontier.empty()) {
        const Symbol i = frontier.front();
        frontier.pop();
        for (const Symbol j : adjacency[static_cast<std::size_t>(i)]) {
            if (!seen[static_cast<std::size_t>(j)]) {
                seen[static_cast<std::size_t>(j)] = 1;
                ++count;
                frontier.push(j);
            }
        }
    }
    return count == s;
}

// Rows of a boolean matrix packed into 64-bit words.
using BitRows = std::vector<std::vector<std::uint64_t>>;

BitRows bit_identity(int s) {
    const std::size_t words = (static_cast<std::size_t>(s) + 63) / 64;
    BitRows rows(static_cast<std::size_t>(s), std::vector<std::uint64_t>(words, 0));
    for (int i = 0; i < s; ++i) {
        rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i) / 64] |=
            std::uint64_t{1} << (static_cast<std::size_t>(i) % 64);
    }
    return rows;
}

BitRows bit_multiply(const BitRows& a, const BitRows& b) {
    const std::size_t s = a.size();
    const std::size_t words = a.empty() ? 0 : a[0].size();
    BitRows out(s, std::vector<std::uint64_t>(words, 0));
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t k = 0; k < s; ++k) {
            if (a[i][k / 64] >> (k % 64) & 1) {
                for (std::size_t w = 0; w < words; ++w) {
                    out[i][w] |= b[k][w];
                }
            }
        }
    }
    return out;
}

bool bit_all_ones(const BitRows& rows, int s) {
    for (const auto& row : rows) {
        int remaining = s;
        for (std::size_t w = 0; w < row.size(); ++w) {
            const int chunk = remaining < 64 ? remaining : 64;
            const std::uint64_t mask =
                chunk == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << chunk) - 1;
            if ((row[w] & mask) != mask) {
                return false;
            }
            remaining -= chunk;
        }
    }
    return true;
}

} // namespace

TransitionMatrix::TransitionMatrix(std::vector<std::vector<int>> rows)
    : rows_(std::move(rows)) {
    const std::size_t s = rows_.size();
    if (s < 2) {
        throw SftError("transition matrix needs at least 2 symbols");
    }
    size_ = static_cast<int>(s);
    successors_.resize(s);
    predecessors_.resize(s);
    std::vector<char> row_has(s, 0);
    std::vector<char> col_has(s, 0);
    for (std::size_t i = 0; i < s; ++i) {
        if (rows_[i].size() != s) {
            throw SftError("transition matrix must be square");
        }
        for (std::size_t j = 0; j < s; ++j) {
            const int e = rows_[i][j];
            if (e != 0 && e != 1) {
                throw SftError("transition matrix entries must be 0 or 1");
            }
            if (e == 1) {
                row_has[i] = 1;
                col_has[j] = 1;
                successors_[i].push_back(static_cast<Symbol>(j));
                predecessors_[j].push_back(static_cast<Symbol>(i));
            }
        }
    }
    for (std::size_t i = 0; i < s; ++i) {
        if (!row_has[i]) {
            throw SftError("transition matrix row " + std::to_string(i) + " is all zero");
        }
        if (!col_has[i]) {
            throw SftError("transition matrix column " + std::to_string(i) + " is all zero");
        }
    }

    irreducible_ = all_reachable(successors_) && all_reachable(predecessors_);

    if (irreducible_) {
        // Wielandt: a primitive s x s matrix has a positive power by
        // W = (s-1)^2 + 1, and positivity is monotone in the exponent here
        // because every column is nonzero, so checking exactly A^W suffices.
        const unsigned wielandt =
            static_cast<unsigned>((size_ - 1) * (size_ - 1) + 1);
        BitRows base(s);
        for (std::size_t i = 0; i < s; ++i) {
            base[i].assign((s + 63) / 64, 0);
            for (const Symbol j : successors_[i]) {
                base[i][static_cast<std::size_t>(j) / 64] |=
                    std::uint64_t{1} << (static_cast<std::size_t>(j) % 64);
            }
        }
        BitRows power = bit_identity(size_);
        unsigned e = wielandt;
        while (e > 0) {
            if (e & 1) {
                power = bit_multiply(power, base);
            }
            base = bit_multiply(base, base);
            e >>= 1;
        }
        primitive_ = bit_all_ones(power, size_);
    }
}

std::shared_ptr<const TransitionMatrix>
TransitionMatrix::from_rows(std::vector<std::vector<int>> rows) {
    return std::make_shared<const TransitionMatrix>(std::move(rows));
}

std::shared_ptr<const TransitionMatrix> TransitionMatrix::full_shift(int s) {
    if (s < 2) {
        throw SftError("full shift needs at least 2 symbols");
    }
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(s),
                                       std::vector<int>(static_cast<std::size_t>(s), 1));
    return from_rows(std::move(rows));
}

std::shared_ptr<const TransitionMatrix> TransitionMatrix::golden_mean() {
    return from_rows({{1, 1}, {1, 0}});
}

std::shared_ptr<const TransitionMatrix> TransitionMatrix::parse(std::istream& in) {
    int s = 0;
    if (!(in >> s)) {
        throw IoError("matrix: missing size line");
    }
    if (s < 2 || s > 4096) {
        throw IoError("matrix: size out of range: " + std::to_string(s));
    }
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(s),
                                       std::vector<int>(static_cast<std::size_t>(s), 0));
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) {
            if (!(in >> rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])) {
                throw IoError("matrix: truncated at row " + std::to_string(i));
            }
        }
    }
    try {
        return from_rows(std::move(rows));
    } catch (const SftError& e) {
        throw IoError(std::string("matrix: ") + e.what());
    }
}

std::shared_ptr<const TransitionMatrix> TransitionMatrix::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open matrix file: " + path);
    }
    return parse(in);
}

std::string TransitionMatrix::to_text() const {
    std::ostringstream out;
    out << size_ << '\n';
    for (const auto& row : rows_) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            out << (j ? " " : "") << row[j];
        }
        out << '\n';
    }
    return out.str();
}

void TransitionMatrix::check_symbol(Symbol a) const {
    if (a < 0 || a >= size_) {
        throw SftError("symbol out of range: " + std::to_string(a));
    }
}

bool TransitionMatrix::word_admissible(const Block& word) const {
    for (const Symbol a : word) {
        check_symbol(a);
    }
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
        if (!entry(word[i], word[i + 1])) {
            return false;
        }
    }
    return true;
}

bool TransitionMatrix::wrap_admissible(const Block& block) const {
    if (block.empty()) {
        return false;
    }
    if (!word_admissible(block)) {
        return false;
    }
    return entry(block.back(), block.front());
}

std::vector<Block> TransitionMatrix::admissible_words(int k) const {
    if (k < 1) {
        throw SftError("admissible_words: length must be at least 1");
    }
    std::vector<Block> words;
    Block current;
    current.reserve(static_cast<std::size_t>(k));
    auto extend = [&](auto&& self, int remaining) -> void {
        if (remaining == 0) {
            words.push_back(current);
            return;
        }
        if (current.empty()) {
            for (Symbol a = 0; a < size_; ++a) {
                current.push_back(a);
                self(self, remaining - 1);
                current.pop_back();
            }
            return;
        }
        for (const Symbol a : successors(current.back())) {
            current.push_back(a);
            self(self, remaining - 1);
            current.pop_back();
        }
    };
    extend(extend, k);
    return words;
}

bool same_matrix(const MatrixPtr& a, const MatrixPtr& b) {
    if (!a || !b) {
        return false;
    }
    return a == b || *a == *b;
}

} // namespace sft
