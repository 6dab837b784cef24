// af -- numerical laboratory for the average-field anyon functional.
//
// Subcommands: minimize | sweep | tf | trial | verify | lda.
// Every flag can also come from a flat key = value config file (--config);
// flags given on the command line win.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "af/errors.hpp"
#include "af/experiment.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string betas;
    std::string potential;
    std::string bc;
    std::string init;
    std::string out, save_field, field;
    double beta = -1.0;
    double e11 = -1.0;
    double extent = -1.0;
    double tol_energy = -1.0, tol_residual = -1.0;
    double nu = -1.0, mu_thr = -1.0;
    int grid = -1, max_iters = -1, restarts = -1, threads = -1;
    long seed = -1;
    bool warm_start = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "key = value config file");
    cmd->add_option("--grid", f.grid, "cells per direction (square grid)");
    cmd->add_option("--extent", f.extent, "box side (default: unit square / TF auto-size)");
    cmd->add_option("--bc", f.bc, "dirichlet | neumann");
    cmd->add_option("--potential", f.potential, "none | harmonic:a,b | power:s");
    cmd->add_option("--beta", f.beta, "statistics parameter");
    cmd->add_option("--betas", f.betas, "comma-separated ascending list");
    cmd->add_option("--e11", f.e11, "homogeneous-gas coefficient e(1,1)");
    cmd->add_option("--seed", f.seed, "rng seed");
    cmd->add_option("--tol-energy", f.tol_energy, "relative energy stagnation tolerance");
    cmd->add_option("--tol-residual", f.tol_residual, "relative EL residual tolerance");
    cmd->add_option("--max-iters", f.max_iters, "descent iteration cap");
    cmd->add_option("--restarts", f.restarts, "multistart count");
    cmd->add_option("--init", f.init, "auto | constant | random-phase | vortex-seeded");
    cmd->add_flag("--warm-start", f.warm_start, "sweep: reuse the previous beta's state");
    cmd->add_option("--threads", f.threads, "sweep worker cap (also capped by AF_THREADS)");
    cmd->add_option("--nu", f.nu, "coarse-graining exponent, 0 < nu < 1/2");
    cmd->add_option("--mu-thr", f.mu_thr, "coarse-graining threshold exponent");
    cmd->add_option("--out", f.out, "CSV output path (default stdout)");
    cmd->add_option("--save-field", f.save_field, "write the final state as AFLD");
    cmd->add_option("--field", f.field, "AFLD input state (lda)");
}

af::ExperimentConfig build_config(const std::string& kind, const CommonFlags& f) {
    std::ostringstream doc;
    doc.precision(17);
    if (!f.config_path.empty()) {
        std::ifstream is(f.config_path);
        if (!is)
            throw af::Error(af::ErrorKind::Config, "cannot open config: " + f.config_path);
        doc << is.rdbuf() << "\n";
    }
    // Flags append after the file, so they override.
    doc << "kind = " << kind << "\n";
    if (f.grid > 0) doc << "grid = " << f.grid << "\n";
    if (f.extent > 0) doc << "extent = " << f.extent << "\n";
    if (!f.bc.empty()) doc << "bc = " << f.bc << "\n";
    if (!f.potential.empty()) doc << "potential = " << f.potential << "\n";
    if (f.beta >= 0) doc << "beta = " << f.beta << "\n";
    if (!f.betas.empty()) doc << "betas = " << f.betas << "\n";
    if (f.e11 > 0) doc << "e11 = " << f.e11 << "\n";
    if (f.seed >= 0) doc << "seed = " << f.seed << "\n";
    if (f.tol_energy > 0) doc << "tol_energy = " << f.tol_energy << "\n";
    if (f.tol_residual > 0) doc << "tol_residual = " << f.tol_residual << "\n";
    if (f.max_iters > 0) doc << "max_iters = " << f.max_iters << "\n";
    if (f.restarts > 0) doc << "restarts = " << f.restarts << "\n";
    if (!f.init.empty()) doc << "init = " << f.init << "\n";
    if (f.warm_start) doc << "warm_start = true\n";
    if (f.threads > 0) doc << "threads = " << f.threads << "\n";
    if (f.nu > 0) doc << "nu = " << f.nu << "\n";
    if (f.mu_thr > 0) doc << "mu_thr = " << f.mu_thr << "\n";
    if (!f.out.empty()) doc << "out = " << f.out << "\n";
    if (!f.save_field.empty()) doc << "save_field = " << f.save_field << "\n";
    if (!f.field.empty()) doc << "field = " << f.field << "\n";

    // parse_config keeps the *last* value per key, so later lines override:
    // it processes lines in order and assigns on each occurrence.
    return af::parse_config(doc.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"average-field anyon functional laboratory"};
    app.require_subcommand(1);

    const char* names[] = {"minimize", "sweep", "tf", "trial", "verify", "lda"};
    const char* descs[] = {
        "minimize the functional at one beta",
        "minimize over an ascending beta list and fit e(1,1)",
        "closed-form Thomas-Fermi values",
        "vortex-lattice trial state and energy factorization",
        "run the invariant battery (nonzero exit on failure)",
        "local-density-approximation comparison for a saved state"};
    CommonFlags flags[6];
    CLI::App* cmds[6];
    for (int i = 0; i < 6; ++i) {
        cmds[i] = app.add_subcommand(names[i], descs[i]);
        add_common(cmds[i], flags[i]);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        for (int i = 0; i < 6; ++i) {
            if (cmds[i]->parsed()) {
                const af::ExperimentConfig cfg = build_config(names[i], flags[i]);
                return af::run(cfg, std::cerr);
            }
        }
    } catch (const af::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
