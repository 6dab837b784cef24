#pragma once
#include <iosfwd>
#include <string>
#include <vector>

#include "af/minimize.hpp"
#include "af/potential.hpp"

namespace af {

enum class ExperimentKind { Minimize, Sweep, Tf, Trial, Verify, Lda };

const char* to_string(ExperimentKind k);

/// One experiment per invocation; flat key = value configuration.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Verify;
    int grid_n = 128;
    double extent = 1.0;       // box side; ignored when auto_extent
    bool auto_extent = true;   // trapped runs size the box from the TF support
    BoundaryCondition bc = BoundaryCondition::Dirichlet;
    PotentialSpec potential;   // zero = homogeneous box
    std::vector<double> betas; // sweep/tf lists
    double beta = 10.0;        // single-beta experiments
    double e11 = 2.0 * 3.14159265358979323846;
    double nu = 0.25;          // coarse-graining exponent
    double mu_thr = 0.25;      // coarse-graining threshold exponent
    MinimizeSettings settings;
    int threads = 0;           // 0 = auto (capped by AF_THREADS)
    std::string out;           // CSV path; empty = stdout
    std::string save_field;    // optional AFLD output
    std::string field;         // AFLD input for lda

    int worker_count() const;
};

/// Parses a flat key = value document ('#' comments, blank lines allowed).
/// Unknown keys and out-of-range values raise ErrorKind::Config naming the
/// key. Defaults are applied for missing keys.
ExperimentConfig parse_config(const std::string& text);

/// Parses "none", "harmonic:a,b" or "power:s".
PotentialSpec parse_potential(const std::string& text);

/// Canonical config echo (stable ordering), used by the run manifest.
std::string config_echo(const ExperimentConfig& cfg);

/// Dispatches the experiment, writes CSV/field artifacts and a manifest next
/// to the CSV output. Progress goes to `log`. Returns a process exit status.
int run(const ExperimentConfig& cfg, std::ostream& log);

/// Invariant battery behind the `verify` subcommand; prints one pass/fail
/// line per check. Returns true when everything passes.
bool run_verify_battery(std::ostream& log);

}  // namespace af
