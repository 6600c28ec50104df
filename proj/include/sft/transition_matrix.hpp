#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace sft {

using Symbol = int;
using Block = std::vector<Symbol>;

// 0/1 transition matrix of a subshift of finite type over symbols 0..s-1.
// Construction validates shape (s >= 2, square, entries 0/1, every row and
// every column nonzero) and precomputes adjacency, irreducibility, and
// primitivity. Instances are immutable and shared by pointer.
class TransitionMatrix {
public:
    explicit TransitionMatrix(std::vector<std::vector<int>> rows);

    static std::shared_ptr<const TransitionMatrix>
    from_rows(std::vector<std::vector<int>> rows);

    // Full shift on s symbols: all-ones matrix.
    static std::shared_ptr<const TransitionMatrix> full_shift(int s);

    // Golden mean shift: [[1,1],[1,0]] (no two consecutive 1s).
    static std::shared_ptr<const TransitionMatrix> golden_mean();

    // Text format: first line s, then s lines of s space-separated 0/1 entries.
    static std::shared_ptr<const TransitionMatrix> parse(std::istream& in);
    static std::shared_ptr<const TransitionMatrix> load(const std::string& path);
    std::string to_text() const;

    int size() const { return size_; }
    bool entry(Symbol i, Symbol j) const { return rows_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0; }
    const std::vector<std::vector<int>>& rows() const { return rows_; }

    // Symbols j with entry(i, j) == 1, ascending.
    const std::vector<Symbol>& successors(Symbol i) const { return successors_[static_cast<std::size_t>(i)]; }
    // Symbols i with entry(i, j) == 1, ascending.
    const std::vector<Symbol>& predecessors(Symbol j) const { return predecessors_[static_cast<std::size_t>(j)]; }

    bool is_irreducible() const { return irreducible_; }
    bool is_primitive() const { return primitive_; }

    // Every consecutive pair allowed. Empty and single-symbol blocks are
    // admissible when their symbols are in range.
    bool word_admissible(const Block& word) const;
    // word_admissible plus the wrap-around pair (last, first); used for
    // blocks describing periodic points.
    bool wrap_admissible(const Block& block) const;

    // All admissible words of length k in lexicographic order. k >= 1.
    std::vector<Block> admissible_words(int k) const;

    bool operator==(const TransitionMatrix& other) const { return rows_ == other.rows_; }

private:
    void check_symbol(Symbol a) const;

    int size_ = 0;
    std::vector<std::vector<int>> rows_;
    std::vector<std::vector<Symbol>> successors_;
    std::vector<std::vector<Symbol>> predecessors_;
    bool irreducible_ = false;
    bool primitive_ = false;
};

using MatrixPtr = std::shared_ptr<const TransitionMatrix>;

// True when both pointers refer to equal matrices (same object or same
// entries). Used to validate that objects built over one subshift are not
// mixed with another.
bool same_matrix(const MatrixPtr& a, const MatrixPtr& b);

} // namespace sft
