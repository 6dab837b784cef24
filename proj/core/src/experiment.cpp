#include "af/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "af/diagnostics.hpp"
#include "af/errors.hpp"
#include "af/field_io.hpp"
#include "af/kernel.hpp"
#include "af/synthetic.hpp"
#include "af/tf.hpp"
#include "af/trial.hpp"

namespace af {
namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt(int v) { return std::to_string(v); }
std::string fmt(std::uint64_t v) { return std::to_string(v); }

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw Error(ErrorKind::Config, "config key '" + key + "': not a number: " + v);
    }
}

long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw Error(ErrorKind::Config, "config key '" + key + "': not an integer: " + v);
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw Error(ErrorKind::Config, "config key '" + key + "': not a boolean: " + v);
}

std::string potential_echo(const PotentialSpec& v) {
    switch (v.kind) {
        case PotentialSpec::Kind::Zero: return "none";
        case PotentialSpec::Kind::Harmonic:
            return "harmonic:" + fmt(v.a) + "," + fmt(v.b);
        case PotentialSpec::Kind::Power: return "power:" + fmt(v.s);
    }
    return "none";
}

class CsvWriter {
  public:
    CsvWriter(std::ostream& os, std::vector<std::string> columns) : os_(os) {
        for (std::size_t i = 0; i < columns.size(); ++i)
            os_ << (i ? "," : "") << columns[i];
        os_ << "\n";
    }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
        os_ << "\n";
    }

  private:
    std::ostream& os_;
};

struct OutputTarget {
    std::ofstream file;
    std::ostream* os = nullptr;

    OutputTarget(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            os = &fallback;
        } else {
            file.open(path, std::ios::binary);  // binary: byte-identical reruns
            if (!file)
                throw Error(ErrorKind::Resource, "cannot open output file: " + path);
            os = &file;
        }
    }
};

}  // namespace

const char* to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::Minimize: return "minimize";
        case ExperimentKind::Sweep: return "sweep";
        case ExperimentKind::Tf: return "tf";
        case ExperimentKind::Trial: return "trial";
        case ExperimentKind::Verify: return "verify";
        case ExperimentKind::Lda: return "lda";
    }
    return "?";
}

int ExperimentConfig::worker_count() const {
    int w = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (w < 1) w = 1;
    if (const char* cap = std::getenv("AF_THREADS")) {
        const int c = std::atoi(cap);
        if (c >= 1) w = std::min(w, c);
    }
    return w;
}

PotentialSpec parse_potential(const std::string& text) {
    if (text == "none" || text == "zero") return PotentialSpec::zero();
    if (text.rfind("harmonic:", 0) == 0) {
        auto parts = split(text.substr(9), ',');
        if (parts.size() != 2)
            throw Error(ErrorKind::Config, "potential: expected harmonic:a,b");
        return PotentialSpec::harmonic(parse_double("potential", trim(parts[0])),
                                       parse_double("potential", trim(parts[1])));
    }
    if (text.rfind("power:", 0) == 0)
        return PotentialSpec::power(parse_double("potential", trim(text.substr(6))));
    throw Error(ErrorKind::Config,
                "potential: unknown form '" + text + "' (none | harmonic:a,b | power:s)");
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    bool saw_kind = false;

    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::Config,
                        "config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw Error(ErrorKind::Config,
                        "config line " + std::to_string(lineno) + ": empty key or value");

        if (key == "kind") {
            saw_kind = true;
            if (val == "minimize") cfg.kind = ExperimentKind::Minimize;
            else if (val == "sweep") cfg.kind = ExperimentKind::Sweep;
            else if (val == "tf") cfg.kind = ExperimentKind::Tf;
            else if (val == "trial") cfg.kind = ExperimentKind::Trial;
            else if (val == "verify") cfg.kind = ExperimentKind::Verify;
            else if (val == "lda") cfg.kind = ExperimentKind::Lda;
            else throw Error(ErrorKind::Config, "config key 'kind': unknown experiment " + val);
        } else if (key == "grid") {
            cfg.grid_n = static_cast<int>(parse_int(key, val));
            if (cfg.grid_n < 8)
                throw Error(ErrorKind::Config, "config key 'grid': need at least 8 cells");
        } else if (key == "extent") {
            cfg.extent = parse_double(key, val);
            cfg.auto_extent = false;
            if (!(cfg.extent > 0.0))
                throw Error(ErrorKind::Config, "config key 'extent': must be positive");
        } else if (key == "bc") {
            if (val == "dirichlet") cfg.bc = BoundaryCondition::Dirichlet;
            else if (val == "neumann") cfg.bc = BoundaryCondition::Neumann;
            else
                throw Error(ErrorKind::Config,
                            "config key 'bc': unsupported value '" + val +
                                "' (dirichlet | neumann)");
        } else if (key == "potential") {
            cfg.potential = parse_potential(val);
        } else if (key == "betas") {
            cfg.betas.clear();
            for (const auto& tok : split(val, ','))
                cfg.betas.push_back(parse_double(key, trim(tok)));
        } else if (key == "beta") {
            cfg.beta = parse_double(key, val);
        } else if (key == "e11") {
            cfg.e11 = parse_double(key, val);
            if (!(cfg.e11 > 0.0))
                throw Error(ErrorKind::Config, "config key 'e11': must be positive");
        } else if (key == "nu") {
            cfg.nu = parse_double(key, val);
            if (!(cfg.nu > 0.0 && cfg.nu < 0.5))
                throw Error(ErrorKind::Config, "config key 'nu': requires 0 < nu < 1/2");
        } else if (key == "mu_thr") {
            cfg.mu_thr = parse_double(key, val);
            if (!(cfg.mu_thr > 0.0 && cfg.mu_thr < 1.0))
                throw Error(ErrorKind::Config, "config key 'mu_thr': requires 0 < mu_thr < 1");
        } else if (key == "seed") {
            cfg.settings.seed = static_cast<std::uint64_t>(parse_int(key, val));
        } else if (key == "tol_energy") {
            cfg.settings.tol_energy = parse_double(key, val);
        } else if (key == "tol_residual") {
            cfg.settings.tol_residual = parse_double(key, val);
        } else if (key == "max_iters") {
            cfg.settings.max_iterations = static_cast<int>(parse_int(key, val));
        } else if (key == "restarts") {
            cfg.settings.restarts = static_cast<int>(parse_int(key, val));
        } else if (key == "warm_start") {
            cfg.settings.warm_start = parse_bool(key, val);
        } else if (key == "init") {
            if (val == "auto") cfg.settings.init = InitStrategy::Auto;
            else if (val == "constant") cfg.settings.init = InitStrategy::Constant;
            else if (val == "random-phase") cfg.settings.init = InitStrategy::RandomPhase;
            else if (val == "vortex-seeded") cfg.settings.init = InitStrategy::VortexSeeded;
            else throw Error(ErrorKind::Config, "config key 'init': unknown strategy " + val);
        } else if (key == "threads") {
            cfg.threads = static_cast<int>(parse_int(key, val));
        } else if (key == "out") {
            cfg.out = val;
        } else if (key == "save_field") {
            cfg.save_field = val;
        } else if (key == "field") {
            cfg.field = val;
        } else {
            throw Error(ErrorKind::Config, "unknown config key '" + key + "'");
        }
    }
    if (!saw_kind) throw Error(ErrorKind::Config, "config: missing required key 'kind'");

    if (cfg.kind == ExperimentKind::Sweep && cfg.betas.empty())
        throw Error(ErrorKind::Config, "config key 'betas': sweep needs a nonempty list");
    cfg.settings.validate();
    return cfg;
}

std::string config_echo(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "kind = " << to_string(cfg.kind) << "\n";
    os << "grid = " << cfg.grid_n << "\n";
    if (!cfg.auto_extent) os << "extent = " << fmt(cfg.extent) << "\n";
    os << "bc = " << to_string(cfg.bc) << "\n";
    os << "potential = " << potential_echo(cfg.potential) << "\n";
    if (!cfg.betas.empty()) {
        os << "betas = ";
        for (std::size_t i = 0; i < cfg.betas.size(); ++i)
            os << (i ? "," : "") << fmt(cfg.betas[i]);
        os << "\n";
    }
    os << "beta = " << fmt(cfg.beta) << "\n";
    os << "e11 = " << fmt(cfg.e11) << "\n";
    os << "nu = " << fmt(cfg.nu) << "\n";
    os << "mu_thr = " << fmt(cfg.mu_thr) << "\n";
    os << "seed = " << cfg.settings.seed << "\n";
    os << "tol_energy = " << fmt(cfg.settings.tol_energy) << "\n";
    os << "tol_residual = " << fmt(cfg.settings.tol_residual) << "\n";
    os << "max_iters = " << cfg.settings.max_iterations << "\n";
    os << "restarts = " << cfg.settings.restarts << "\n";
    os << "warm_start = " << (cfg.settings.warm_start ? "true" : "false") << "\n";
    os << "init = " << to_string(cfg.settings.init) << "\n";
    if (cfg.threads > 0) os << "threads = " << cfg.threads << "\n";
    if (!cfg.out.empty()) os << "out = " << cfg.out << "\n";
    if (!cfg.save_field.empty()) os << "save_field = " << cfg.save_field << "\n";
    if (!cfg.field.empty()) os << "field = " << cfg.field << "\n";
    return os.str();
}

namespace {

Grid2D experiment_grid(const ExperimentConfig& cfg, double beta_max) {
    if (cfg.potential.is_zero()) {
        const double L = cfg.auto_extent ? 1.0 : cfg.extent;
        return make_grid({L, L}, cfg.grid_n, cfg.grid_n, cfg.bc);
    }
    double L = cfg.extent;
    if (cfg.auto_extent) {
        // Heuristic: the box side is three TF support radii at the largest beta.
        const TFProfile tf1 = tf_minimizer(cfg.potential, cfg.e11);
        L = 3.0 * tf_support_radius(tf1, beta_max);
    }
    return make_grid_centered({L, L}, cfg.grid_n, cfg.grid_n, cfg.bc);
}

void write_manifest(const ExperimentConfig& cfg, double wall_seconds) {
    if (cfg.out.empty()) return;
    std::ofstream os(cfg.out + ".manifest");
    if (!os) throw Error(ErrorKind::Resource, "cannot open manifest: " + cfg.out + ".manifest");
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    os << "# run manifest\n";
    os << "version = " << kVersion << "\n";
    os << "wall_seconds = " << fmt(wall_seconds) << "\n";
    os << "unix_time = " << static_cast<long long>(now) << "\n";
    os << "# configuration\n";
    os << config_echo(cfg);
}

const std::vector<std::string> kRunColumns = {
    "beta",    "bc",  "grid",     "energy",     "energy_per_beta",
    "kinetic", "potential", "cross", "quartic", "mu",
    "residual", "iterations", "vortex_count", "seed"};

void write_run_row(CsvWriter& csv, const SweepRow& r) {
    csv.row({fmt(r.beta), to_string(r.bc), fmt(r.grid_n), fmt(r.energy.total),
             fmt(r.beta > 0.0 ? r.energy.total / r.beta : 0.0), fmt(r.energy.kinetic),
             fmt(r.energy.potential),
             fmt(r.energy.cross), fmt(r.energy.quartic), fmt(r.mu), fmt(r.residual),
             fmt(r.iterations), fmt(r.vortex_count), fmt(r.seed)});
}

int run_minimize(const ExperimentConfig& cfg, std::ostream& log) {
    if (!(cfg.beta >= 0.0)) throw Error(ErrorKind::Config, "minimize: beta must be >= 0");
    Grid2D grid = experiment_grid(cfg, cfg.beta);
    KernelTable kernel(grid);
    auto [u, rep] = minimize_multistart(grid, cfg.beta, cfg.potential, kernel, cfg.settings);

    SweepRow row;
    row.beta = cfg.beta;
    row.bc = grid.bc;
    row.grid_n = grid.nx;
    row.domain_area = grid.area();
    row.energy = rep.final_energy;
    row.mu = rep.mu;
    row.residual = rep.residual;
    row.iterations = rep.iterations;
    row.vortex_count = rep.vortex_count;
    row.seed = rep.seed;
    row.converged = rep.converged;

    OutputTarget target(cfg.out, std::cout);
    CsvWriter csv(*target.os, kRunColumns);
    write_run_row(csv, row);
    if (!cfg.save_field.empty()) write_field(cfg.save_field, u);
    log << "minimize: beta=" << cfg.beta << " energy=" << rep.final_energy.total
        << " E/beta=" << (cfg.beta > 0 ? rep.final_energy.total / cfg.beta : 0.0)
        << " iterations=" << rep.iterations << " converged=" << (rep.converged ? "yes" : "no")
        << "\n";
    return 0;
}

int run_sweep(const ExperimentConfig& cfg, std::ostream& log) {
    Grid2D grid = experiment_grid(cfg, cfg.betas.back());
    std::vector<ComplexField> states;
    auto rows = sweep(cfg.betas, cfg.potential, grid, cfg.settings, cfg.worker_count(),
                      cfg.save_field.empty() ? nullptr : &states);

    OutputTarget target(cfg.out, std::cout);
    CsvWriter csv(*target.os, kRunColumns);
    bool any_failed = false, any_ok = false;
    for (const auto& r : rows) {
        if (r.failed) {
            any_failed = true;
            log << "sweep: beta=" << r.beta << " FAILED: " << r.error << "\n";
            continue;
        }
        any_ok = true;
        write_run_row(csv, r);
    }
    if (!cfg.save_field.empty() && any_ok) {
        // Save the largest converged beta's state.
        for (std::size_t i = rows.size(); i-- > 0;) {
            if (!rows[i].failed) {
                write_field(cfg.save_field, states[i]);
                break;
            }
        }
    }

    int usable = 0;
    for (const auto& r : rows)
        if (!r.failed) ++usable;
    if (usable >= 3) {
        const E11Fit fit = estimate_e11(rows);
        log << "estimate_e11: " << fit.estimate << " (intercept " << fit.intercept << ", slope "
            << fit.slope << ", rms " << fit.rms_residual << ", rows " << fit.rows_used << ")\n";
    }
    if (!any_ok) throw Error(ErrorKind::Numerical, "sweep: every beta failed");
    return any_failed ? 4 : 0;
}

int run_tf(const ExperimentConfig& cfg, std::ostream& log) {
    if (cfg.potential.is_zero())
        throw Error(ErrorKind::Config, "tf: needs potential = harmonic:a,b or power:s");
    const TFProfile tf1 = tf_minimizer(cfg.potential, cfg.e11);
    std::vector<double> betas = cfg.betas.empty() ? std::vector<double>{1.0} : cfg.betas;

    OutputTarget target(cfg.out, std::cout);
    CsvWriter csv(*target.os,
                  {"s", "e11", "beta", "lambda_tf", "energy", "support_radius"});
    for (double b : betas) {
        const double scale = std::pow(b, tf1.s / (tf1.s + 2.0));
        csv.row({fmt(tf1.s), fmt(tf1.e11), fmt(b), fmt(scale * tf1.lambda),
                 fmt(tf_scale(tf1.energy1, b, tf1.s)), fmt(tf_support_radius(tf1, b))});
    }
    log << "tf: lambda_1=" << tf1.lambda << " E_1=" << tf1.energy1 << " R0=" << tf1.R0 << "\n";
    return 0;
}

int run_trial(const ExperimentConfig& cfg, std::ostream& log) {
    const int n_balls = static_cast<int>(std::floor(cfg.beta));
    if (n_balls < 1) throw Error(ErrorKind::Config, "trial: beta must be >= 1");
    const int m = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_balls))));
    double L;
    if (cfg.auto_extent) {
        // Smallest square accommodating the radius-1/sqrt(beta) lattice balls,
        // with a one-lattice-cell margin so packing is strict.
        L = 2.0 * m / std::sqrt(cfg.beta) * (1.0 + 4.0 / cfg.grid_n);
    } else {
        L = cfg.extent;
    }
    Grid2D grid = make_grid({L, L}, cfg.grid_n, cfg.grid_n, BoundaryCondition::Free);

    const RadialProfile f = bump_profile();
    ComplexField u = vortex_lattice_trial(grid, cfg.beta, f);
    const FactorizationCheck check = factorization_check(u, cfg.beta, f);
    const auto centers = vortex_lattice_centers(n_balls, grid);

    // Mass per ball (assigned by nearest center, supports are disjoint).
    std::vector<double> mass(centers.size(), 0.0);
    const ScalarField rho = density(u);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const double r = rho.values[grid.index(i, j)];
            if (r == 0.0) continue;
            const Vec2 p = grid.node(i, j);
            std::size_t best = 0;
            double bd = norm2(p - centers[0]);
            for (std::size_t k = 1; k < centers.size(); ++k) {
                const double d = norm2(p - centers[k]);
                if (d < bd) {
                    bd = d;
                    best = k;
                }
            }
            mass[best] += r * grid.cell_area();
        }

    OutputTarget target(cfg.out, std::cout);
    CsvWriter csv(*target.os, {"row", "beta", "lhs", "rhs", "rel_error", "ball", "center_x",
                               "center_y", "mass"});
    csv.row({"summary", fmt(cfg.beta), fmt(check.lhs), fmt(check.rhs), fmt(check.rel_error), "",
             "", "", ""});
    for (std::size_t k = 0; k < centers.size(); ++k)
        csv.row({"ball", fmt(cfg.beta), "", "", "", fmt(static_cast<int>(k)),
                 fmt(centers[k].x), fmt(centers[k].y), fmt(mass[k])});
    if (!cfg.save_field.empty()) write_field(cfg.save_field, u);
    log << "trial: lhs=" << check.lhs << " rhs=" << check.rhs
        << " rel_error=" << check.rel_error << " balls=" << check.n_balls
        << " cells/ball=" << check.ball_cells << "\n";
    return 0;
}

int run_lda(const ExperimentConfig& cfg, std::ostream& log) {
    if (cfg.field.empty()) throw Error(ErrorKind::Config, "lda: needs field = <path.afld>");
    if (cfg.potential.is_zero())
        throw Error(ErrorKind::Config, "lda: needs potential = harmonic:a,b or power:s");
    const ComplexField u = read_field(cfg.field);
    const TFProfile tf1 = tf_minimizer(cfg.potential, cfg.e11);
    const LdaReport rep = lda_compare(u, cfg.beta, cfg.potential, tf1);

    OutputTarget target(cfg.out, std::cout);
    CsvWriter csv(*target.os, {"ball", "center_x", "center_y", "radius", "distance",
                               "support_radius_measured", "support_radius_tf"});
    for (std::size_t k = 0; k < rep.balls.size(); ++k)
        csv.row({fmt(static_cast<int>(k)), fmt(rep.balls[k].center.x),
                 fmt(rep.balls[k].center.y), fmt(rep.balls[k].radius),
                 fmt(rep.balls[k].distance), fmt(rep.support_radius_measured),
                 fmt(rep.support_radius_tf)});
    log << "lda: max_distance=" << rep.max_distance
        << " support_measured=" << rep.support_radius_measured
        << " support_tf=" << rep.support_radius_tf << "\n";
    return 0;
}

}  // namespace

int run(const ExperimentConfig& cfg, std::ostream& log) {
    const auto t0 = std::chrono::steady_clock::now();
    int status = 0;
    switch (cfg.kind) {
        case ExperimentKind::Minimize: status = run_minimize(cfg, log); break;
        case ExperimentKind::Sweep: status = run_sweep(cfg, log); break;
        case ExperimentKind::Tf: status = run_tf(cfg, log); break;
        case ExperimentKind::Trial: status = run_trial(cfg, log); break;
        case ExperimentKind::Verify: status = run_verify_battery(log) ? 0 : 1; break;
        case ExperimentKind::Lda: status = run_lda(cfg, log); break;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(cfg, secs);
    return status;
}

}  // namespace af
