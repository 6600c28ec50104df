#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sft/harness.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Subshift-of-finite-type experiment harness: periodic-orbit "
                 "counts, equidistribution discrepancies, effective bounds, "
                 "and transfer-operator spectral gap estimates"};

    sft::ExperimentConfig cfg;
    std::string mode = "counts";

    app.add_option("--matrix", cfg.matrix_path, "Transition matrix file")->required();
    app.add_option("--theta", cfg.theta, "Metric parameter in (0,1)")
        ->default_val(0.5);
    app.add_option("--mode", mode, "counts | equidist | bound | spectral")
        ->default_val("counts")
        ->check(CLI::IsMember({"counts", "equidist", "bound", "spectral"}));
    app.add_option("--fn", cfg.fn_path,
                   "Locally constant function file (default: seeded generator)");
    app.add_option("--gen-depth", cfg.gen_depth,
                   "Depth of the generated random function")
        ->default_val(1);
    app.add_option("--seed", cfg.seed, "Seed for every random choice")->default_val(0);
    app.add_option("--nmin", cfg.n_min, "Smallest period")->default_val(1);
    app.add_option("--nmax", cfg.n_max,
                   "Largest period (spectral: iteration steps)")
        ->default_val(12);
    app.add_flag("--primitive", cfg.primitive,
                 "Sweep minimal-period points instead of all of Fix_n");
    app.add_option("--cap", cfg.cap, "Enumeration candidate-space cap")
        ->default_val(sft::OrbitSet::default_cap);
    app.add_option("--subsets", cfg.subsets,
                   "Bound mode: random invariant subsets per period")
        ->default_val(10);
    app.add_option("--subset-exponent", cfg.subset_exponent,
                   "Bound mode: target |I| = ceil(|Fix_n|^e)")
        ->default_val(0.9);
    app.add_option("--trials", cfg.trials, "Spectral mode: number of trials")
        ->default_val(16);
    app.add_option("--out", cfg.out_path,
                   "Output stem; writes <stem>.csv and/or <stem>.json");

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.mode = sft::parse_mode(mode);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return sft::run_cli(cfg, std::cout, std::cerr);
}
