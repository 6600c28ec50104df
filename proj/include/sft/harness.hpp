#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "sft/measures.hpp"
#include "sft/orbits.hpp"
#include "sft/parry.hpp"
#include "sft/transfer.hpp"

namespace sft {

enum class Mode { counts, equidist, bound, spectral };

Mode parse_mode(const std::string& name);
std::string mode_name(Mode mode);

struct ExperimentConfig {
    std::string matrix_path;
    double theta = 0.5;
    Mode mode = Mode::counts;
    std::string fn_path;  // empty: generate instead
    int gen_depth = 1;
    std::uint64_t seed = 0;
    unsigned n_min = 1;
    unsigned n_max = 12;
    bool primitive = false; // equidist: use minimal-period points only
    std::uint64_t cap = OrbitSet::default_cap;
    unsigned subsets = 10;         // bound: random invariant subsets per n
    double subset_exponent = 0.9;  // bound: target |I| = ceil(|Fix_n|^exponent)
    unsigned trials = 16;          // spectral
    std::string out_path;          // stem; writes <stem>.csv / <stem>.json

    // Throws std::invalid_argument unless theta in (0,1), 1 <= n_min <= n_max.
    void validate() const;
};

// h - (1/n) log(count). Both sweep modes and the counts mode share this so
// their defect columns agree bit for bit.
double entropy_defect(double h, const BigInt& count, unsigned n);

struct CountsRow {
    unsigned n = 0;
    BigInt fix_count;
    BigInt primitive_count;
    double defect = 0.0;
    double primitive_defect = 0.0;
};

struct CountsReport {
    PerronData eigen;
    std::vector<CountsRow> rows;
    // Least-squares fit of log|defect| vs n over nonzero defects; the decay
    // rate estimate is -slope. NaN when fewer than two usable rows.
    double delta_hat = 0.0;
    // Max over rows with 0 < |Fix'_n| of primitive_defect / (log n / n), n >= 2.
    double primitive_defect_ratio = 0.0;
};

struct DiscrepancyRow {
    unsigned n = 0;
    BigInt fix_count;      // |Fix_n|, exact
    std::size_t subset_size = 0; // |I|
    std::string subset;    // "fix", "primitive", "rand0", ...
    double defect = 0.0;   // h - (1/n) log |I|; negative values are flagged
    double lhs = 0.0;      // |integral of f d mu_I - integral of f dm|
    double rhs_half = 0.0; // ||f||_theta (theta^{n/2} + 2 sqrt2 sqrt(defect))
    double rhs_quarter = 0.0;
    double ratio = 0.0;    // lhs / rhs_quarter
};

struct SweepReport {
    PerronData eigen;
    std::vector<DiscrepancyRow> rows;
    double lhs_slope = 0.0;   // log lhs vs n, over rows with lhs > 0
    double ratio_max = 0.0;   // over rows with finite ratio
    double ratio_median = 0.0;
    std::vector<std::string> violations; // defect < -1e-12, or rhs 0 with lhs > 0
    std::vector<unsigned> skipped;       // n with empty point sets
};

struct SpectralReport {
    PerronData eigen;
    TransferOperator::GapEstimate gap;
    int depth = 1;
    double theta = 0.5;
    unsigned trials = 0;
    std::uint64_t seed = 0;
};

CountsReport run_counts(const ExperimentConfig& cfg);
SweepReport run_equidist(const ExperimentConfig& cfg);
SweepReport run_theorem_bound(const ExperimentConfig& cfg);
SpectralReport run_spectral(const ExperimentConfig& cfg);

// Union of whole shift orbits of `fix`, sampled without replacement until the
// target size is met or exceeded: primitive (full-length) orbits first, then
// shorter orbits when those run out. Throws EmptySetError when fix is empty.
OrbitSet random_invariant_subset(const OrbitSet& fix, std::size_t target,
                                 std::mt19937_64& gen);

// The function a sweep integrates: loaded from cfg.fn_path when set,
// otherwise tabulated with values uniform in [-1,1] from mt19937_64(cfg.seed)
// in lexicographic word order.
LocallyConstantFunction sweep_function(const ExperimentConfig& cfg, const MatrixPtr& matrix);

std::string counts_csv(const CountsReport& report);
std::string sweep_csv(const SweepReport& report, bool subset_column);
nlohmann::json counts_json(const ExperimentConfig& cfg, const CountsReport& report);
nlohmann::json sweep_json(const ExperimentConfig& cfg, const SweepReport& report);
nlohmann::json spectral_json(const ExperimentConfig& cfg, const SpectralReport& report);

// Full CLI behavior: run the mode, write <out>.csv / <out>.json, print a one
// line summary per row plus violations to the streams. Returns the process
// exit code: 0 success, 2 invariant violation (negative defect beyond the
// tolerance, or a non-invariant measure), 1 on I/O, cap, or other errors.
int run_cli(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace sft
