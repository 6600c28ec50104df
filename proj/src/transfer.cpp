#include "sft/transfer.hpp"

#include <cmath>
#include <utility>

#include "sft/errors.hpp"
#include "sft/numerics.hpp"
#include "sft/rng.hpp"

namespace sft {

namespace {

constexpr double kNormFloor = 1e-14;

} // namespace

TransferOperator::TransferOperator(ParryMeasure measure) : measure_(std::move(measure)) {}

LocallyConstantFunction TransferOperator::apply(const LocallyConstantFunction& f) const {
    if (!same_matrix(f.matrix(), matrix())) {
        throw SftError("transfer: function over a different matrix");
    }
    const PerronData& pd = measure_.perron();
    const int k = f.depth();
    const int result_depth = k > 1 ? k - 1 : 1;

    // (Lf) on the cylinder of z: average of f(i.z) over predecessors i of z_0
    // with weights u_i / (lambda u_{z_0}). For k = 1 only z_0 matters; the
    // extension i.z is read through f's depth-k table either way.
    return LocallyConstantFunction::tabulate(
        f.matrix(), result_depth, [&](const Block& z) {
            const Symbol z0 = z.front();
            const double denom = pd.lambda * pd.u[static_cast<std::size_t>(z0)];
            double total = 0.0;
            Block extended;
            extended.reserve(static_cast<std::size_t>(k) + 1);
            for (const Symbol i : matrix()->predecessors(z0)) {
                extended.assign(1, i);
                for (int t = 0; t + 1 < k; ++t) {
                    extended.push_back(z[static_cast<std::size_t>(t)]);
                }
                total += f.value_at(extended) * (pd.u[static_cast<std::size_t>(i)] / denom);
            }
            return total;
        });
}

std::vector<TransferOperator::IterateRecord>
TransferOperator::iterate(const LocallyConstantFunction& f, unsigned steps, double theta) const {
    std::vector<IterateRecord> records;
    records.reserve(steps + 1);
    LocallyConstantFunction current = f;
    for (unsigned j = 0; j <= steps; ++j) {
        IterateRecord record{current, current.sup_norm(), current.lipschitz_seminorm(theta)};
        records.push_back(std::move(record));
        if (j < steps) {
            current = apply(current);
        }
    }
    return records;
}

TransferOperator::GapEstimate TransferOperator::estimate_gap(unsigned trials, int depth,
                                                             unsigned n_max, std::uint64_t seed,
                                                             double theta) const {
    if (trials < 1) {
        throw SftError("estimate_gap: need at least one trial");
    }
    if (n_max < 4) {
        throw SftError("estimate_gap: need at least 4 steps");
    }
    if (depth < 1) {
        throw SftError("estimate_gap: depth must be at least 1");
    }
    std::mt19937_64 gen(seed);
    GapEstimate estimate;
    estimate.per_trial.reserve(trials);
    std::size_t worst = 0;
    for (unsigned t = 0; t < trials; ++t) {
        // Random depth-k table, values uniform in [-1,1] in lexicographic word
        // order, then mean-subtracted under the measure.
        LocallyConstantFunction f = LocallyConstantFunction::tabulate(
            matrix(), depth, [&](const Block&) { return rng::symmetric_unit(gen); });
        f -= LocallyConstantFunction::constant(matrix(), depth, measure_.integrate(f));

        const std::vector<IterateRecord> records = iterate(f, n_max, theta);
        std::vector<double> xs;
        std::vector<double> ys;
        for (std::size_t j = 0; j < records.size(); ++j) {
            const double norm = records[j].sup_norm + records[j].theta_seminorm;
            if (norm > kNormFloor) {
                xs.push_back(static_cast<double>(j));
                ys.push_back(std::log(norm));
            }
        }
        TrialFit fit;
        fit.fit_points = static_cast<unsigned>(xs.size());
        if (xs.size() < 2) {
            // Degenerate: the operator annihilated the function outright.
            fit.rho = 0.0;
            fit.c = records.front().sup_norm + records.front().theta_seminorm;
        } else {
            const LinearFit line = fit_line(xs, ys);
            fit.rho = std::exp(line.slope);
            fit.c = std::exp(line.intercept);
        }
        estimate.per_trial.push_back(fit);
        if (fit.rho > estimate.per_trial[worst].rho) {
            worst = estimate.per_trial.size() - 1;
        }
    }
    estimate.rho_hat = estimate.per_trial[worst].rho;
    estimate.c_hat = estimate.per_trial[worst].c;
    return estimate;
}

} // namespace sft
