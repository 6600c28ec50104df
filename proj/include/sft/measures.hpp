#pragma once

#include <iosfwd>
#include <vector>

#include "sft/locally_constant.hpp"
#include "sft/orbits.hpp"
#include "sft/word.hpp"

namespace sft {

// Shift-invariant probability measure supported on finitely many periodic
// points: nonnegative weights summing to one (tolerance 1e-12) that are
// constant along each shift orbit. Strictly validated at construction.
class FiniteInvariantMeasure {
public:
    // Equal weight 1/|I| on each point of a nonempty orbit set.
    static FiniteInvariantMeasure uniform(const OrbitSet& points);

    // Explicit support and weights; throws NotInvariantError when weights are
    // negative, do not sum to one, differ along an orbit, or when the same
    // sequence appears twice.
    static FiniteInvariantMeasure from_weights(std::vector<PeriodicPoint> support,
                                               std::vector<double> weights);

    // Repairs non-invariant weights by averaging over each orbit and closing
    // the support under the shift, then validates.
    static FiniteInvariantMeasure symmetrized(const std::vector<PeriodicPoint>& support,
                                              const std::vector<double>& weights);

    const MatrixPtr& matrix() const { return matrix_; }
    const std::vector<PeriodicPoint>& support() const { return support_; }
    const std::vector<double>& weights() const { return weights_; }

    double integrate(const LocallyConstantFunction& f) const;

    // Measure of the cylinder on a word: total weight of support points whose
    // prefix matches.
    double cylinder_measure(const Block& word) const;

    // Entropy of the partition into length-N cylinders:
    // H(N) = -sum m(C(w)) log m(C(w)) over N-prefixes w of the support. N >= 1.
    double partition_entropy(unsigned N) const;

    // H(N+1) - H(N), the conditional entropy of the first coordinate given
    // the next N; N = 0 gives H(1).
    double conditional_entropy(unsigned N) const;

    // One line per support point: period block then weight.
    void write(std::ostream& out) const;

private:
    FiniteInvariantMeasure(MatrixPtr matrix, std::vector<PeriodicPoint> support,
                           std::vector<double> weights);

    MatrixPtr matrix_;
    std::vector<PeriodicPoint> support_;
    std::vector<double> weights_;
};

// Divergence of q from p over a common finite index set:
// phi_p(q) = sum_i q_i log(q_i / p_i), with 0 log 0 = 0. Throws
// InfiniteDivergenceError when q charges an index with p_i = 0.
double kl_divergence(const std::vector<double>& p, const std::vector<double>& q);

// l1 distance sum_i |p_i - q_i|.
double l1_distance(const std::vector<double>& p, const std::vector<double>& q);

// Pinsker bound: ||p - q||_1 <= sqrt(2 phi_p(q)).
double pinsker_bound(double divergence);

struct AveragingCheck {
    double lhs = 0.0; // 2 (h - average of a_0..a_{n-1})
    double rhs = 0.0; // h - a_{floor(n/2)}
    bool holds = false;
};

// For a nonincreasing nonnegative sequence a and h >= a_0... the averaged gap
// controls the midpoint gap: 2(h - A_n) >= h - a_{floor(n/2)} where A_n is
// the mean of the first n terms. Validates monotonicity and h >= a_0.
// n is 1-based count of terms used, 1 <= n <= a.size().
AveragingCheck averaging_gap_check(const std::vector<double>& a, double h, std::size_t n);

} // namespace sft
