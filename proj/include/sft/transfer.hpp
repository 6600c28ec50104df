#pragma once

#include <cstdint>
#include <vector>

#include "sft/locally_constant.hpp"
#include "sft/parry.hpp"

namespace sft {

// Normalized Ruelle transfer operator of the maximal-entropy measure:
// (Lf)(z) = sum over predecessors i of z_0 of f(i.z) * u_i / (lambda u_{z_0}).
// The weights are the conditional first-symbol probabilities of the measure,
// so L fixes constants, preserves integrals and positivity, and contracts the
// sup norm.
class TransferOperator {
public:
    explicit TransferOperator(ParryMeasure measure);

    const ParryMeasure& measure() const { return measure_; }
    const MatrixPtr& matrix() const { return measure_.matrix(); }

    // Depth-k input yields a depth max(k-1, 1) result.
    LocallyConstantFunction apply(const LocallyConstantFunction& f) const;

    struct IterateRecord {
        LocallyConstantFunction f;
        double sup_norm = 0.0;
        double theta_seminorm = 0.0;
    };

    // f_0 = f, f_{j+1} = L f_j, for j = 0..steps; records both norm parts.
    std::vector<IterateRecord> iterate(const LocallyConstantFunction& f, unsigned steps,
                                       double theta) const;

    struct TrialFit {
        double rho = 0.0;
        double c = 0.0;
        unsigned fit_points = 0; // steps with theta-norm above the floor
    };

    struct GapEstimate {
        double c_hat = 0.0;
        double rho_hat = 0.0;
        std::vector<TrialFit> per_trial;
    };

    // Decay-rate estimate: for `trials` random mean-zero depth-k functions
    // (values uniform in [-1,1] from a seeded generator, then mean-subtracted
    // under the measure), fit log ||f_n||_theta against n by least squares
    // over the steps whose norm exceeds 1e-14, and report the largest fitted
    // rho across trials with its constant. A trial with fewer than two usable
    // steps is degenerate: rho = 0, c = ||f_0||_theta.
    GapEstimate estimate_gap(unsigned trials, int depth, unsigned n_max,
                             std::uint64_t seed, double theta) const;

private:
    ParryMeasure measure_;
};

} // namespace sft
