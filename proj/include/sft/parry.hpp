#pragma once

#include <vector>

#include "sft/locally_constant.hpp"
#include "sft/transition_matrix.hpp"

namespace sft {

// Perron eigendata of a primitive transition matrix: spectral radius lambda,
// right eigenvector v (Av = lambda v) scaled to unit 1-norm, left eigenvector
// u (u^T A = lambda u^T) scaled so sum_i u_i v_i = 1. Both eigenvectors are
// entrywise positive.
struct PerronData {
    MatrixPtr matrix;
    double lambda = 0.0;
    std::vector<double> u;
    std::vector<double> v;
    double residual_left = 0.0;  // max_j |(u^T A)_j - lambda u_j|
    double residual_right = 0.0; // max_i |(A v)_i - lambda v_i|
    unsigned iterations = 0;
};

// Deterministic power iteration: all-ones start, 1-norm renormalization each
// step, convergence when successive eigenvalue estimates differ by less than
// tol and the eigenvector residual is below tol. Throws NotIrreducibleError /
// NotPrimitiveError on invalid input and NoConvergenceError past 10^6 steps.
PerronData compute_perron(const MatrixPtr& matrix, double tol = 1e-13);

// Measure of maximal entropy of the subshift: the stationary Markov measure
// with p_i = u_i v_i and P_ij = a_ij v_j / (lambda v_i). Its entropy equals
// log lambda, the topological entropy.
class ParryMeasure {
public:
    explicit ParryMeasure(PerronData data);
    static ParryMeasure compute(const MatrixPtr& matrix, double tol = 1e-13);

    const PerronData& perron() const { return data_; }
    const MatrixPtr& matrix() const { return data_.matrix; }
    double lambda() const { return data_.lambda; }
    double entropy() const; // log lambda

    // Stationary distribution p, strictly positive, summing to one.
    const std::vector<double>& stationary() const { return stationary_; }
    // Row-stochastic transition kernel P with p P = p.
    const std::vector<std::vector<double>>& kernel() const { return kernel_; }

    // Mass of the cylinder on a word w_0..w_k: u_{w_0} v_{w_k} / lambda^k.
    // Inadmissible words get 0; symbols must be in range; the word nonempty.
    double cylinder_measure(const Block& word) const;

    // Integral of a locally constant function: sum of value times cylinder
    // mass over its table.
    double integrate(const LocallyConstantFunction& f) const;

    // Information function of the measure, a depth-2 function: on the
    // cylinder of (a, b) its value is log lambda + log u_b - log u_a. Its
    // integral is the entropy.
    LocallyConstantFunction information_function() const;

    // Conditional distribution of the first symbol given that the next one is
    // `next`: q_i = a_{i,next} u_i / (lambda u_next). Sums to one.
    std::vector<double> conditional_first_symbol(Symbol next) const;

private:
    PerronData data_;
    std::vector<double> stationary_;
    std::vector<std::vector<double>> kernel_;
};

} // namespace sft
