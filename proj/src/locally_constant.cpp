#include "sft/locally_constant.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sft/errors.hpp"
#include "sft/numerics.hpp"

namespace sft {

LocallyConstantFunction::LocallyConstantFunction(MatrixPtr matrix, int depth,
                                                 std::vector<Block> words,
                                                 std::vector<double> values)
    : matrix_(std::move(matrix)), depth_(depth), words_(std::move(words)),
      values_(std::move(values)) {}

LocallyConstantFunction
LocallyConstantFunction::tabulate(MatrixPtr matrix, int depth,
                                  const std::function<double(const Block&)>& rule) {
    if (!matrix) {
        throw SftError("locally constant function: null matrix");
    }
    if (depth < 1) {
        throw SftError("locally constant function: depth must be at least 1");
    }
    std::vector<Block> words = matrix->admissible_words(depth);
    std::vector<double> values;
    values.reserve(words.size());
    for (const Block& w : words) {
        values.push_back(rule(w));
    }
    return LocallyConstantFunction(std::move(matrix), depth, std::move(words), std::move(values));
}

LocallyConstantFunction
LocallyConstantFunction::from_table(MatrixPtr matrix, int depth,
                                    const std::vector<std::pair<Block, double>>& entries) {
    if (!matrix) {
        throw SftError("locally constant function: null matrix");
    }
    if (depth < 1) {
        throw SftError("locally constant function: depth must be at least 1");
    }
    std::vector<Block> words = matrix->admissible_words(depth);
    std::vector<double> values(words.size(), 0.0);
    std::vector<char> filled(words.size(), 0);
    for (const auto& [word, value] : entries) {
        const auto it = std::lower_bound(words.begin(), words.end(), word);
        if (it == words.end() || *it != word) {
            std::ostringstream msg;
            msg << "table entry is not an admissible word of depth " << depth << ":";
            for (const Symbol a : word) {
                msg << ' ' << a;
            }
            throw TableLookupError(msg.str());
        }
        const std::size_t idx = static_cast<std::size_t>(it - words.begin());
        if (filled[idx]) {
            throw TableLookupError("duplicate table entry");
        }
        filled[idx] = 1;
        values[idx] = value;
    }
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (!filled[i]) {
            std::ostringstream msg;
            msg << "table is missing admissible word:";
            for (const Symbol a : words[i]) {
                msg << ' ' << a;
            }
            throw TableLookupError(msg.str());
        }
    }
    return LocallyConstantFunction(std::move(matrix), depth, std::move(words), std::move(values));
}

LocallyConstantFunction LocallyConstantFunction::constant(MatrixPtr matrix, int depth,
                                                          double value) {
    return tabulate(std::move(matrix), depth, [value](const Block&) { return value; });
}

LocallyConstantFunction LocallyConstantFunction::indicator_first_symbol(MatrixPtr matrix,
                                                                        Symbol symbol) {
    if (!matrix) {
        throw SftError("locally constant function: null matrix");
    }
    if (symbol < 0 || symbol >= matrix->size()) {
        throw SftError("indicator: symbol out of range");
    }
    return tabulate(std::move(matrix), 1,
                    [symbol](const Block& w) { return w[0] == symbol ? 1.0 : 0.0; });
}

LocallyConstantFunction LocallyConstantFunction::parse(MatrixPtr matrix, std::istream& in) {
    if (!matrix) {
        throw SftError("locally constant function: null matrix");
    }
    int depth = 0;
    if (!(in >> depth)) {
        throw IoError("function: missing depth line");
    }
    if (depth < 1 || depth > 64) {
        throw IoError("function: depth out of range: " + std::to_string(depth));
    }
    std::vector<std::pair<Block, double>> entries;
    while (true) {
        Block word(static_cast<std::size_t>(depth));
        if (!(in >> word[0])) {
            break; // end of input
        }
        for (int i = 1; i < depth; ++i) {
            if (!(in >> word[static_cast<std::size_t>(i)])) {
                throw IoError("function: truncated word");
            }
        }
        double value = 0.0;
        if (!(in >> value)) {
            throw IoError("function: missing value");
        }
        entries.emplace_back(std::move(word), value);
    }
    try {
        return from_table(std::move(matrix), depth, entries);
    } catch (const TableLookupError& e) {
        throw IoError(std::string("function: ") + e.what());
    }
}

LocallyConstantFunction LocallyConstantFunction::load(MatrixPtr matrix, const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open function file: " + path);
    }
    return parse(std::move(matrix), in);
}

std::string LocallyConstantFunction::to_text() const {
    std::ostringstream out;
    out << depth_ << '\n';
    for (std::size_t i = 0; i < words_.size(); ++i) {
        for (const Symbol a : words_[i]) {
            out << a << ' ';
        }
        out << format_double(values_[i]) << '\n';
    }
    return out.str();
}

std::size_t LocallyConstantFunction::index_of(const Block& word) const {
    const auto it = std::lower_bound(words_.begin(), words_.end(), word);
    if (it == words_.end() || *it != word) {
        std::ostringstream msg;
        msg << "prefix not in table:";
        for (const Symbol a : word) {
            msg << ' ' << a;
        }
        throw TableLookupError(msg.str());
    }
    return static_cast<std::size_t>(it - words_.begin());
}

double LocallyConstantFunction::value_at(const Block& word) const {
    return values_[index_of(word)];
}

double LocallyConstantFunction::evaluate(const PeriodicPoint& x) const {
    if (!same_matrix(matrix_, x.matrix())) {
        throw SftError("evaluate: point over a different matrix");
    }
    return value_at(x.prefix(static_cast<std::size_t>(depth_)));
}

double LocallyConstantFunction::sup_norm() const {
    double best = 0.0;
    for (const double v : values_) {
        best = std::max(best, std::abs(v));
    }
    return best;
}

double LocallyConstantFunction::lipschitz_seminorm(double theta) const {
    if (!(theta > 0.0 && theta < 1.0)) {
        throw SftError("lipschitz_seminorm: theta must lie in (0,1)");
    }
    // Largest |f(w) - f(w')| / theta^m over distinct word pairs, m the common
    // prefix length. Words sharing a longer prefix dominate, so all pairs are
    // scanned; table sizes stay small (depth <= ~10 in practice).
    double best = 0.0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        for (std::size_t j = i + 1; j < words_.size(); ++j) {
            std::size_t m = 0;
            const std::size_t len = words_[i].size();
            while (m < len && words_[i][m] == words_[j][m]) {
                ++m;
            }
            const double gap = std::abs(values_[i] - values_[j]);
            if (gap == 0.0) {
                continue;
            }
            best = std::max(best, gap / std::pow(theta, static_cast<double>(m)));
        }
    }
    return best;
}

double LocallyConstantFunction::theta_norm(double theta) const {
    return lipschitz_seminorm(theta) + sup_norm();
}

namespace {

void require_compatible(const LocallyConstantFunction& a, const LocallyConstantFunction& b) {
    if (a.depth() != b.depth() || !same_matrix(a.matrix(), b.matrix())) {
        throw SftError("locally constant arithmetic: mismatched depth or matrix");
    }
}

} // namespace

LocallyConstantFunction&
LocallyConstantFunction::operator+=(const LocallyConstantFunction& other) {
    require_compatible(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) {
        values_[i] += other.values_[i];
    }
    return *this;
}

LocallyConstantFunction&
LocallyConstantFunction::operator-=(const LocallyConstantFunction& other) {
    require_compatible(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) {
        values_[i] -= other.values_[i];
    }
    return *this;
}

LocallyConstantFunction& LocallyConstantFunction::operator*=(double scale) {
    for (double& v : values_) {
        v *= scale;
    }
    return *this;
}

} // namespace sft
