#include "sft/parry.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "sft/errors.hpp"

namespace sft {

namespace {

constexpr unsigned kIterationCap = 1000000;

std::vector<double> apply_matrix(const TransitionMatrix& m, const std::vector<double>& x,
                                 bool transpose) {
    const std::size_t s = static_cast<std::size_t>(m.size());
    std::vector<double> y(s, 0.0);
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < s; ++j) {
            if (transpose ? m.entry(static_cast<Symbol>(j), static_cast<Symbol>(i))
                          : m.entry(static_cast<Symbol>(i), static_cast<Symbol>(j))) {
                y[i] += x[j];
            }
        }
    }
    return y;
}

struct PowerResult {
    std::vector<double> vec; // unit 1-norm, positive
    double lambda = 0.0;
    unsigned iterations = 0;
};

// Deterministic power iteration from the normalized all-ones vector, 1-norm
// renormalization each step. Converges when successive eigenvalue estimates
// differ by less than tol and the eigenvector residual drops below tol.
PowerResult power_iterate(const TransitionMatrix& m, bool transpose, double tol) {
    const std::size_t s = static_cast<std::size_t>(m.size());
    std::vector<double> x(s, 1.0 / static_cast<double>(s));
    double lambda_prev = 0.0;
    for (unsigned iter = 1; iter <= kIterationCap; ++iter) {
        const std::vector<double> y = apply_matrix(m, x, transpose);
        double lambda = 0.0;
        for (const double v : y) {
            lambda += v; // 1-norm of a positive vector
        }
        for (std::size_t i = 0; i < s; ++i) {
            x[i] = y[i] / lambda;
        }
        const std::vector<double> check = apply_matrix(m, x, transpose);
        double residual = 0.0;
        for (std::size_t i = 0; i < s; ++i) {
            residual = std::max(residual, std::abs(check[i] - lambda * x[i]));
        }
        if (std::abs(lambda - lambda_prev) < tol && residual < tol) {
            return {std::move(x), lambda, iter};
        }
        lambda_prev = lambda;
    }
    throw NoConvergenceError("power iteration did not converge within iteration cap");
}

} // namespace

PerronData compute_perron(const MatrixPtr& matrix, double tol) {
    if (!matrix) {
        throw SftError("compute_perron: null matrix");
    }
    if (!matrix->is_irreducible()) {
        throw NotIrreducibleError("transition matrix is not irreducible");
    }
    if (!matrix->is_primitive()) {
        throw NotPrimitiveError("transition matrix is irreducible but not primitive");
    }
    PowerResult right = power_iterate(*matrix, false, tol);
    PowerResult left = power_iterate(*matrix, true, tol);

    PerronData data;
    data.matrix = matrix;
    data.v = std::move(right.vec);
    data.u = std::move(left.vec);
    data.iterations = std::max(right.iterations, left.iterations);

    // Normalization order: v already has unit 1-norm; scale u so sum u_i v_i = 1.
    double inner = 0.0;
    for (std::size_t i = 0; i < data.u.size(); ++i) {
        inner += data.u[i] * data.v[i];
    }
    for (double& ui : data.u) {
        ui /= inner;
    }

    // With sum u_i v_i = 1 the bilinear form u^T A v is the eigenvalue.
    const std::vector<double> av = apply_matrix(*matrix, data.v, false);
    double lambda = 0.0;
    for (std::size_t i = 0; i < data.u.size(); ++i) {
        lambda += data.u[i] * av[i];
    }
    data.lambda = lambda;

    for (std::size_t i = 0; i < data.v.size(); ++i) {
        data.residual_right = std::max(data.residual_right, std::abs(av[i] - lambda * data.v[i]));
    }
    const std::vector<double> ua = apply_matrix(*matrix, data.u, true);
    for (std::size_t j = 0; j < data.u.size(); ++j) {
        data.residual_left = std::max(data.residual_left, std::abs(ua[j] - lambda * data.u[j]));
    }
    return data;
}

ParryMeasure::ParryMeasure(PerronData data) : data_(std::move(data)) {
    if (!data_.matrix) {
        throw SftError("measure: eigendata has no matrix");
    }
    const std::size_t s = static_cast<std::size_t>(data_.matrix->size());
    if (data_.u.size() != s || data_.v.size() != s || !(data_.lambda > 0.0)) {
        throw SftError("measure: malformed eigendata");
    }
    stationary_.resize(s);
    double total = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
        if (!(data_.u[i] > 0.0) || !(data_.v[i] > 0.0)) {
            throw SftError("measure: eigenvectors must be strictly positive");
        }
        stationary_[i] = data_.u[i] * data_.v[i];
        total += stationary_[i];
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw SftError("measure: stationary distribution does not sum to 1");
    }
    kernel_.assign(s, std::vector<double>(s, 0.0));
    for (std::size_t i = 0; i < s; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < s; ++j) {
            if (data_.matrix->entry(static_cast<Symbol>(i), static_cast<Symbol>(j))) {
                kernel_[i][j] = data_.v[j] / (data_.lambda * data_.v[i]);
                row += kernel_[i][j];
            }
        }
        if (std::abs(row - 1.0) > 1e-12) {
            throw SftError("measure: kernel row is not stochastic");
        }
    }
    for (std::size_t j = 0; j < s; ++j) {
        double mass = 0.0;
        for (std::size_t i = 0; i < s; ++i) {
            mass += stationary_[i] * kernel_[i][j];
        }
        if (std::abs(mass - stationary_[j]) > 1e-12) {
            throw SftError("measure: stationary distribution is not kernel-invariant");
        }
    }
}

ParryMeasure ParryMeasure::compute(const MatrixPtr& matrix, double tol) {
    return ParryMeasure(compute_perron(matrix, tol));
}

double ParryMeasure::entropy() const {
    return std::log(data_.lambda);
}

double ParryMeasure::cylinder_measure(const Block& word) const {
    if (word.empty()) {
        throw SftError("cylinder_measure: empty word");
    }
    for (const Symbol a : word) {
        if (a < 0 || a >= data_.matrix->size()) {
            throw SftError("cylinder_measure: symbol out of range");
        }
    }
    if (!data_.matrix->word_admissible(word)) {
        return 0.0;
    }
    const std::size_t k = word.size() - 1;
    const double u0 = data_.u[static_cast<std::size_t>(word.front())];
    const double vk = data_.v[static_cast<std::size_t>(word.back())];
    return u0 * vk / std::pow(data_.lambda, static_cast<double>(k));
}

double ParryMeasure::integrate(const LocallyConstantFunction& f) const {
    if (!same_matrix(f.matrix(), data_.matrix)) {
        throw SftError("integrate: function over a different matrix");
    }
    double total = 0.0;
    const auto& words = f.words();
    const auto& values = f.values();
    for (std::size_t i = 0; i < words.size(); ++i) {
        total += values[i] * cylinder_measure(words[i]);
    }
    return total;
}

LocallyConstantFunction ParryMeasure::information_function() const {
    const double log_lambda = std::log(data_.lambda);
    const std::vector<double>& u = data_.u;
    return LocallyConstantFunction::tabulate(
        data_.matrix, 2, [&](const Block& w) {
            return log_lambda + std::log(u[static_cast<std::size_t>(w[1])]) -
                   std::log(u[static_cast<std::size_t>(w[0])]);
        });
}

std::vector<double> ParryMeasure::conditional_first_symbol(Symbol next) const {
    const std::size_t s = static_cast<std::size_t>(data_.matrix->size());
    if (next < 0 || next >= data_.matrix->size()) {
        throw SftError("conditional_first_symbol: symbol out of range");
    }
    std::vector<double> q(s, 0.0);
    const double denom = data_.lambda * data_.u[static_cast<std::size_t>(next)];
    for (std::size_t i = 0; i < s; ++i) {
        if (data_.matrix->entry(static_cast<Symbol>(i), next)) {
            q[i] = data_.u[i] / denom;
        }
    }
    return q;
}

} // namespace sft
