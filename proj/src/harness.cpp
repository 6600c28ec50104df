#include "sft/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "sft/errors.hpp"
#include "sft/numerics.hpp"
#include "sft/rng.hpp"

namespace sft {

namespace {

constexpr double kDefectTol = -1e-12;
const double kNan = std::numeric_limits<double>::quiet_NaN();

std::string strip_extension(std::string path) {
    for (const char* ext : {".csv", ".json"}) {
        const std::size_t len = std::string(ext).size();
        if (path.size() > len && path.compare(path.size() - len, len, ext) == 0) {
            path.erase(path.size() - len);
            break;
        }
    }
    return path;
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open output file: " + path);
    }
    out << body;
    if (!out) {
        throw IoError("failed writing output file: " + path);
    }
}

nlohmann::json config_json(const ExperimentConfig& cfg) {
    nlohmann::json j{
        {"matrix", cfg.matrix_path}, {"theta", cfg.theta},
        {"mode", mode_name(cfg.mode)}, {"seed", cfg.seed},
        {"nmin", cfg.n_min},          {"nmax", cfg.n_max},
        {"primitive", cfg.primitive}, {"cap", cfg.cap},
    };
    if (cfg.fn_path.empty()) {
        j["gen_depth"] = cfg.gen_depth;
    } else {
        j["fn"] = cfg.fn_path;
    }
    if (cfg.mode == Mode::bound) {
        j["subsets"] = cfg.subsets;
        j["subset_exponent"] = cfg.subset_exponent;
    }
    return j;
}

nlohmann::json eigen_json(const PerronData& eigen) {
    return nlohmann::json{
        {"lambda", eigen.lambda},
        {"u", eigen.u},
        {"v", eigen.v},
        {"residual_left", eigen.residual_left},
        {"residual_right", eigen.residual_right},
        {"iterations", eigen.iterations},
    };
}

struct SweepContext {
    MatrixPtr matrix;
    ParryMeasure measure;
    LocallyConstantFunction f;
    double h = 0.0;
    double theta = 0.5;
    double theta_norm = 0.0;
    double f_mean = 0.0; // integral of f under the maximal-entropy measure
};

SweepContext make_sweep_context(const ExperimentConfig& cfg) {
    MatrixPtr matrix = TransitionMatrix::load(cfg.matrix_path);
    ParryMeasure measure = ParryMeasure::compute(matrix);
    LocallyConstantFunction f = sweep_function(cfg, matrix);
    const double h = measure.entropy();
    const double tn = f.theta_norm(cfg.theta);
    const double mean = measure.integrate(f);
    return SweepContext{std::move(matrix), std::move(measure), std::move(f),
                        h, cfg.theta, tn, mean};
}

DiscrepancyRow make_row(const SweepContext& ctx, unsigned n, const BigInt& fix_count,
                        const OrbitSet& subset, std::string label,
                        std::vector<std::string>& violations) {
    DiscrepancyRow row;
    row.n = n;
    row.fix_count = fix_count;
    row.subset_size = subset.size();
    row.subset = std::move(label);
    row.defect = entropy_defect(ctx.h, BigInt(subset.size()), n);

    const FiniteInvariantMeasure mu = FiniteInvariantMeasure::uniform(subset);
    row.lhs = std::abs(mu.integrate(ctx.f) - ctx.f_mean);

    if (row.defect < kDefectTol) {
        // The square root in the bound is undefined; flag and poison the row.
        row.rhs_half = kNan;
        row.rhs_quarter = kNan;
        row.ratio = kNan;
        std::ostringstream msg;
        msg << "defect " << format_double(row.defect) << " < -1e-12 at n=" << n
            << " subset=" << row.subset << " (|I|=" << row.subset_size << ")";
        violations.push_back(msg.str());
        return row;
    }
    const double clamped = row.defect > 0.0 ? row.defect : 0.0;
    const double root_term = 2.0 * std::sqrt(2.0) * std::sqrt(clamped);
    const double nd = static_cast<double>(n);
    row.rhs_half = ctx.theta_norm * (std::pow(ctx.theta, nd / 2.0) + root_term);
    row.rhs_quarter = ctx.theta_norm * (std::pow(ctx.theta, nd / 4.0) + root_term);
    if (row.rhs_quarter == 0.0) {
        if (row.lhs > 0.0) {
            std::ostringstream msg;
            msg << "rhs 0 with lhs " << format_double(row.lhs) << " at n=" << n
                << " subset=" << row.subset;
            violations.push_back(msg.str());
            row.ratio = std::numeric_limits<double>::infinity();
        } else {
            row.ratio = kNan;
        }
    } else {
        row.ratio = row.lhs / row.rhs_quarter;
    }
    return row;
}

void finish_sweep_stats(SweepReport& report) {
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<double> ratios;
    for (const DiscrepancyRow& row : report.rows) {
        if (row.lhs > 0.0) {
            xs.push_back(static_cast<double>(row.n));
            ys.push_back(std::log(row.lhs));
        }
        if (std::isfinite(row.ratio)) {
            ratios.push_back(row.ratio);
        }
    }
    report.lhs_slope = xs.size() >= 2 ? fit_line(xs, ys).slope : kNan;
    if (ratios.empty()) {
        report.ratio_max = kNan;
        report.ratio_median = kNan;
    } else {
        report.ratio_max = *std::max_element(ratios.begin(), ratios.end());
        report.ratio_median = median(ratios);
    }
}

} // namespace

Mode parse_mode(const std::string& name) {
    if (name == "counts") {
        return Mode::counts;
    }
    if (name == "equidist") {
        return Mode::equidist;
    }
    if (name == "bound") {
        return Mode::bound;
    }
    if (name == "spectral") {
        return Mode::spectral;
    }
    throw std::invalid_argument("unknown mode: " + name);
}

std::string mode_name(Mode mode) {
    switch (mode) {
    case Mode::counts:
        return "counts";
    case Mode::equidist:
        return "equidist";
    case Mode::bound:
        return "bound";
    case Mode::spectral:
        return "spectral";
    }
    throw std::invalid_argument("unknown mode value");
}

void ExperimentConfig::validate() const {
    if (matrix_path.empty()) {
        throw std::invalid_argument("config: matrix path is required");
    }
    if (!(theta > 0.0 && theta < 1.0)) {
        throw std::invalid_argument("config: theta must lie in (0,1)");
    }
    if (n_min < 1 || n_min > n_max) {
        throw std::invalid_argument("config: need 1 <= nmin <= nmax");
    }
    if (gen_depth < 1) {
        throw std::invalid_argument("config: generator depth must be at least 1");
    }
    if (!(subset_exponent > 0.0 && subset_exponent <= 1.0)) {
        throw std::invalid_argument("config: subset exponent must lie in (0,1]");
    }
    if (trials < 1) {
        throw std::invalid_argument("config: need at least one trial");
    }
}

double entropy_defect(double h, const BigInt& count, unsigned n) {
    return h - log_bigint(count) / static_cast<double>(n);
}

LocallyConstantFunction sweep_function(const ExperimentConfig& cfg, const MatrixPtr& matrix) {
    if (!cfg.fn_path.empty()) {
        return LocallyConstantFunction::load(matrix, cfg.fn_path);
    }
    std::mt19937_64 gen(cfg.seed);
    return LocallyConstantFunction::tabulate(
        matrix, cfg.gen_depth, [&](const Block&) { return rng::symmetric_unit(gen); });
}

CountsReport run_counts(const ExperimentConfig& cfg) {
    const MatrixPtr matrix = TransitionMatrix::load(cfg.matrix_path);
    const ParryMeasure measure = ParryMeasure::compute(matrix);
    const double h = measure.entropy();

    CountsReport report;
    report.eigen = measure.perron();
    std::vector<double> xs;
    std::vector<double> ys;
    report.primitive_defect_ratio = kNan;
    for (unsigned n = cfg.n_min; n <= cfg.n_max; ++n) {
        CountsRow row;
        row.n = n;
        row.fix_count = count_fix(*matrix, n);
        row.primitive_count = count_primitive(*matrix, n);
        row.defect = entropy_defect(h, row.fix_count, n);
        row.primitive_defect = entropy_defect(h, row.primitive_count, n);
        if (row.defect != 0.0 && std::isfinite(row.defect)) {
            xs.push_back(static_cast<double>(n));
            ys.push_back(std::log(std::abs(row.defect)));
        }
        if (n >= 2 && row.primitive_count > 0) {
            const double scale = std::log(static_cast<double>(n)) / static_cast<double>(n);
            const double ratio = row.primitive_defect / scale;
            if (!(ratio <= report.primitive_defect_ratio)) { // NaN-aware max
                report.primitive_defect_ratio = ratio;
            }
        }
        report.rows.push_back(std::move(row));
    }
    report.delta_hat = xs.size() >= 2 ? -fit_line(xs, ys).slope : kNan;
    return report;
}

SweepReport run_equidist(const ExperimentConfig& cfg) {
    const SweepContext ctx = make_sweep_context(cfg);
    SweepReport report;
    report.eigen = ctx.measure.perron();
    for (unsigned n = cfg.n_min; n <= cfg.n_max; ++n) {
        const BigInt fix_count = count_fix(*ctx.matrix, n);
        const OrbitSet subset = cfg.primitive
                                    ? OrbitSet::enumerate_primitive(ctx.matrix, n, cfg.cap)
                                    : OrbitSet::enumerate_fix(ctx.matrix, n, cfg.cap);
        if (subset.empty()) {
            report.skipped.push_back(n);
            continue;
        }
        report.rows.push_back(make_row(ctx, n, fix_count, subset,
                                       cfg.primitive ? "primitive" : "fix",
                                       report.violations));
    }
    finish_sweep_stats(report);
    return report;
}

SweepReport run_theorem_bound(const ExperimentConfig& cfg) {
    const SweepContext ctx = make_sweep_context(cfg);
    SweepReport report;
    report.eigen = ctx.measure.perron();
    std::mt19937_64 gen(cfg.seed);
    for (unsigned n = cfg.n_min; n <= cfg.n_max; ++n) {
        const BigInt fix_count = count_fix(*ctx.matrix, n);
        const OrbitSet base = cfg.primitive
                                  ? OrbitSet::enumerate_primitive(ctx.matrix, n, cfg.cap)
                                  : OrbitSet::enumerate_fix(ctx.matrix, n, cfg.cap);
        if (base.empty()) {
            report.skipped.push_back(n);
            continue;
        }
        report.rows.push_back(make_row(ctx, n, fix_count, base,
                                       cfg.primitive ? "primitive" : "fix",
                                       report.violations));
        const double sized = static_cast<double>(base.size());
        const std::size_t target = static_cast<std::size_t>(
            std::ceil(std::pow(sized, cfg.subset_exponent)));
        for (unsigned j = 0; j < cfg.subsets; ++j) {
            const OrbitSet subset = random_invariant_subset(base, target, gen);
            report.rows.push_back(make_row(ctx, n, fix_count, subset,
                                           "rand" + std::to_string(j), report.violations));
        }
    }
    finish_sweep_stats(report);
    return report;
}

SpectralReport run_spectral(const ExperimentConfig& cfg) {
    const MatrixPtr matrix = TransitionMatrix::load(cfg.matrix_path);
    ParryMeasure measure = ParryMeasure::compute(matrix);
    SpectralReport report;
    report.eigen = measure.perron();
    report.depth = cfg.gen_depth;
    report.theta = cfg.theta;
    report.trials = cfg.trials;
    report.seed = cfg.seed;
    const TransferOperator transfer(std::move(measure));
    report.gap = transfer.estimate_gap(cfg.trials, cfg.gen_depth, cfg.n_max, cfg.seed, cfg.theta);
    return report;
}

OrbitSet random_invariant_subset(const OrbitSet& fix, std::size_t target,
                                 std::mt19937_64& gen) {
    if (fix.empty()) {
        throw EmptySetError("random subset: empty orbit set");
    }
    if (target < 1) {
        target = 1;
    }
    const std::vector<std::vector<std::size_t>> orbits = fix.orbit_partition();
    // Whole primitive (full-length) orbits first; shorter orbits are the
    // fallback when the primitive supply cannot reach the target.
    std::vector<std::size_t> primitive_ids;
    std::vector<std::size_t> shorter_ids;
    for (std::size_t g = 0; g < orbits.size(); ++g) {
        if (orbits[g].size() == fix.period()) {
            primitive_ids.push_back(g);
        } else {
            shorter_ids.push_back(g);
        }
    }
    rng::shuffle(primitive_ids, gen);
    rng::shuffle(shorter_ids, gen);

    std::vector<PeriodicPoint> chosen;
    std::size_t count = 0;
    auto take = [&](const std::vector<std::size_t>& ids) {
        for (const std::size_t g : ids) {
            if (count >= target) {
                return;
            }
            for (const std::size_t idx : orbits[g]) {
                chosen.emplace_back(fix.matrix(), fix.blocks()[idx]);
            }
            count += orbits[g].size();
        }
    };
    take(primitive_ids);
    take(shorter_ids);
    return OrbitSet::closure(fix.matrix(), fix.period(), chosen);
}

std::string counts_csv(const CountsReport& report) {
    std::ostringstream out;
    out << "n,fix_count,primitive_count,defect,primitive_defect\n";
    for (const CountsRow& row : report.rows) {
        out << row.n << ',' << row.fix_count.str() << ',' << row.primitive_count.str() << ','
            << format_double(row.defect) << ',' << format_double(row.primitive_defect) << '\n';
    }
    return out.str();
}

std::string sweep_csv(const SweepReport& report, bool subset_column) {
    std::ostringstream out;
    out << "n,fix_count,subset_size,defect,lhs,rhs_half_exp,rhs_quarter_exp,ratio";
    if (subset_column) {
        out << ",subset";
    }
    out << '\n';
    for (const DiscrepancyRow& row : report.rows) {
        out << row.n << ',' << row.fix_count.str() << ',' << row.subset_size << ','
            << format_double(row.defect) << ',' << format_double(row.lhs) << ','
            << format_double(row.rhs_half) << ',' << format_double(row.rhs_quarter) << ','
            << format_double(row.ratio);
        if (subset_column) {
            out << ',' << row.subset;
        }
        out << '\n';
    }
    return out.str();
}

nlohmann::json counts_json(const ExperimentConfig& cfg, const CountsReport& report) {
    return nlohmann::json{
        {"config", config_json(cfg)},
        {"eigen", eigen_json(report.eigen)},
        {"delta_hat", report.delta_hat},
        {"primitive_defect_ratio", report.primitive_defect_ratio},
        {"rows", report.rows.size()},
    };
}

nlohmann::json sweep_json(const ExperimentConfig& cfg, const SweepReport& report) {
    return nlohmann::json{
        {"config", config_json(cfg)},
        {"eigen", eigen_json(report.eigen)},
        {"lhs_slope", report.lhs_slope},
        {"ratio_max", report.ratio_max},
        {"ratio_median", report.ratio_median},
        {"violations", report.violations},
        {"skipped_n", report.skipped},
        {"rows", report.rows.size()},
    };
}

nlohmann::json spectral_json(const ExperimentConfig& cfg, const SpectralReport& report) {
    nlohmann::json trials = nlohmann::json::array();
    for (const TransferOperator::TrialFit& fit : report.gap.per_trial) {
        trials.push_back({{"rho", fit.rho}, {"c", fit.c}, {"fit_points", fit.fit_points}});
    }
    return nlohmann::json{
        {"matrix", cfg.matrix_path},
        {"theta", report.theta},
        {"depth", report.depth},
        {"trials", report.trials},
        {"seed", report.seed},
        {"C_hat", report.gap.c_hat},
        {"rho_hat", report.gap.rho_hat},
        {"per_trial", trials},
    };
}

int run_cli(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    const std::string stem = cfg.out_path.empty() ? "" : strip_extension(cfg.out_path);
    try {
        switch (cfg.mode) {
        case Mode::counts: {
            const CountsReport report = run_counts(cfg);
            if (!stem.empty()) {
                write_text_file(stem + ".csv", counts_csv(report));
                write_text_file(stem + ".json", counts_json(cfg, report).dump(2) + "\n");
            }
            out << "counts: rows=" << report.rows.size()
                << " delta_hat=" << format_double(report.delta_hat)
                << " primitive_defect_ratio=" << format_double(report.primitive_defect_ratio)
                << '\n';
            return 0;
        }
        case Mode::equidist:
        case Mode::bound: {
            const SweepReport report =
                cfg.mode == Mode::equidist ? run_equidist(cfg) : run_theorem_bound(cfg);
            if (!stem.empty()) {
                write_text_file(stem + ".csv", sweep_csv(report, cfg.mode == Mode::bound));
                write_text_file(stem + ".json", sweep_json(cfg, report).dump(2) + "\n");
            }
            out << mode_name(cfg.mode) << ": rows=" << report.rows.size()
                << " lhs_slope=" << format_double(report.lhs_slope)
                << " ratio_max=" << format_double(report.ratio_max)
                << " ratio_median=" << format_double(report.ratio_median);
            if (!report.skipped.empty()) {
                out << " skipped=" << report.skipped.size();
            }
            out << '\n';
            for (const std::string& violation : report.violations) {
                err << "violation: " << violation << '\n';
            }
            return report.violations.empty() ? 0 : 2;
        }
        case Mode::spectral: {
            const SpectralReport report = run_spectral(cfg);
            if (!stem.empty()) {
                write_text_file(stem + ".json", spectral_json(cfg, report).dump(2) + "\n");
            }
            out << "spectral: rho_hat=" << format_double(report.gap.rho_hat)
                << " C_hat=" << format_double(report.gap.c_hat) << '\n';
            return 0;
        }
        }
        err << "error: unhandled mode\n";
        return 1;
    } catch (const NotInvariantError& e) {
        err << "invariant violation: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace sft
