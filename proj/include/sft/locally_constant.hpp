#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "sft/transition_matrix.hpp"
#include "sft/word.hpp"

namespace sft {

// Real-valued function on the shift space depending only on the first k
// coordinates, stored as a table over the admissible words of length k in
// lexicographic order. Such functions have Lipschitz constant
// |f|_theta = max |f(w) - f(w')| / theta^m over distinct admissible words,
// where m is the length of their common prefix.
class LocallyConstantFunction {
public:
    // Table over admissible_words(depth) via the given rule.
    static LocallyConstantFunction tabulate(MatrixPtr matrix, int depth,
                                            const std::function<double(const Block&)>& rule);

    // From explicit (word, value) pairs; every admissible word of the depth
    // must appear exactly once.
    static LocallyConstantFunction from_table(MatrixPtr matrix, int depth,
                                              const std::vector<std::pair<Block, double>>& entries);

    static LocallyConstantFunction constant(MatrixPtr matrix, int depth, double value);

    // Depth-1 indicator of the cylinder [symbol].
    static LocallyConstantFunction indicator_first_symbol(MatrixPtr matrix, Symbol symbol);

    // Text format: first line depth k, then one line per admissible word:
    // k symbols followed by the value. Every admissible word must appear.
    static LocallyConstantFunction parse(MatrixPtr matrix, std::istream& in);
    static LocallyConstantFunction load(MatrixPtr matrix, const std::string& path);
    std::string to_text() const;

    const MatrixPtr& matrix() const { return matrix_; }
    int depth() const { return depth_; }
    // Lexicographic admissible words of length depth() and the parallel values.
    const std::vector<Block>& words() const { return words_; }
    const std::vector<double>& values() const { return values_; }

    // Value on the cylinder of an admissible word of length depth().
    double value_at(const Block& word) const;
    // Evaluate at a point: value on its depth-length prefix.
    double evaluate(const PeriodicPoint& x) const;

    double sup_norm() const;
    double lipschitz_seminorm(double theta) const;
    // |f|_theta + sup|f|.
    double theta_norm(double theta) const;

    LocallyConstantFunction& operator+=(const LocallyConstantFunction& other);
    LocallyConstantFunction& operator-=(const LocallyConstantFunction& other);
    LocallyConstantFunction& operator*=(double scale);
    friend LocallyConstantFunction operator+(LocallyConstantFunction a, const LocallyConstantFunction& b) {
        a += b;
        return a;
    }
    friend LocallyConstantFunction operator-(LocallyConstantFunction a, const LocallyConstantFunction& b) {
        a -= b;
        return a;
    }
    friend LocallyConstantFunction operator*(double scale, LocallyConstantFunction f) {
        f *= scale;
        return f;
    }

private:
    LocallyConstantFunction(MatrixPtr matrix, int depth, std::vector<Block> words,
                            std::vector<double> values);

    std::size_t index_of(const Block& word) const;

    MatrixPtr matrix_;
    int depth_ = 1;
    std::vector<Block> words_;
    std::vector<double> values_;
};

} // namespace sft
