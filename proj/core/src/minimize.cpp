#include "af/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "af/diagnostics.hpp"
#include "af/precond.hpp"
#include "af/trial.hpp"

namespace af {
namespace {

double inner_real(const ComplexField& a, const ComplexField& b) {
    double s = 0.0;
    for (std::size_t p = 0; p < a.values.size(); ++p)
        s += std::real(std::conj(a.values[p]) * b.values[p]);
    return s * a.grid.cell_area();
}

Complex inner_cplx(const ComplexField& a, const ComplexField& b) {
    Complex s{0.0, 0.0};
    for (std::size_t p = 0; p < a.values.size(); ++p)
        s += std::conj(a.values[p]) * b.values[p];
    return s * a.grid.cell_area();
}

ComplexField retract(ComplexField u) {
    apply_boundary_mask(u);
    return normalize(u);
}

struct IterateState {
    ComplexField u;
    Evaluation ev;
    double mu = 0.0;
    ComplexField r;  // projected L2 gradient, Dirichlet-masked
    double residual = 0.0;
};

IterateState make_state(ComplexField u, Evaluation ev, double beta, const PotentialSpec& V,
                        const KernelTable& kernel) {
    IterateState s;
    s.u = std::move(u);
    s.ev = std::move(ev);
    ComplexField el = el_apply(s.u, beta, V, s.ev, kernel);
    s.mu = inner_real(s.u, el) / inner_real(s.u, s.u);
    s.r = std::move(el);
    for (std::size_t p = 0; p < s.r.values.size(); ++p) s.r.values[p] -= s.mu * s.u.values[p];
    if (s.u.grid.bc == BoundaryCondition::Dirichlet) apply_boundary_mask(s.r);
    s.residual = l2_norm(s.r) / std::max(1.0, std::abs(s.mu));
    return s;
}

}  // namespace

const char* to_string(InitStrategy s) {
    switch (s) {
        case InitStrategy::Auto: return "auto";
        case InitStrategy::Constant: return "constant";
        case InitStrategy::RandomPhase: return "random-phase";
        case InitStrategy::VortexSeeded: return "vortex-seeded";
    }
    return "?";
}

void MinimizeSettings::validate() const {
    if (max_iterations < 1) throw Error(ErrorKind::Config, "minimize: max_iterations < 1");
    if (!(tol_energy > 0.0) || !(tol_residual > 0.0))
        throw Error(ErrorKind::Config, "minimize: tolerances must be positive");
    if (!(shrink > 0.0 && shrink < 1.0))
        throw Error(ErrorKind::Config, "minimize: shrink factor must lie in (0,1)");
    if (!(initial_step > 0.0)) throw Error(ErrorKind::Config, "minimize: initial step <= 0");
    if (restarts < 1) throw Error(ErrorKind::Config, "minimize: restarts < 1");
}

ComplexField init_state(const Grid2D& grid, InitStrategy strategy, double beta,
                        std::uint64_t seed) {
    InitStrategy st = strategy;
    if (st == InitStrategy::Auto)
        st = beta >= 10.0 ? InitStrategy::VortexSeeded : InitStrategy::Constant;
    if (st == InitStrategy::VortexSeeded && beta < 1.0) st = InitStrategy::Constant;

    ComplexField u(grid);
    switch (st) {
        case InitStrategy::Auto:
        case InitStrategy::Constant:
            for (auto& v : u.values) v = 1.0;
            break;
        case InitStrategy::RandomPhase: {
            std::mt19937_64 gen(seed);
            for (auto& v : u.values) {
                // top 53 bits -> [0,1); bit-reproducible across toolchains
                const double xi = static_cast<double>(gen() >> 11) * 0x1.0p-53;
                v = std::polar(1.0, 2.0 * M_PI * xi);
            }
            break;
        }
        case InitStrategy::VortexSeeded: {
            const int n = static_cast<int>(std::floor(beta));
            const auto centers = vortex_lattice_centers(n, grid);
            for (int j = 0; j < grid.ny; ++j)
                for (int i = 0; i < grid.nx; ++i) {
                    const Vec2 r = grid.node(i, j);
                    double phase = 0.0;
                    for (const Vec2& c : centers) phase -= std::atan2(r.y - c.y, r.x - c.x);
                    u.values[grid.index(i, j)] = std::polar(1.0, phase);
                }
            break;
        }
    }
    return retract(std::move(u));
}

std::pair<ComplexField, MinimizeReport> minimize(const ComplexField& u0, double beta,
                                                 const PotentialSpec& V,
                                                 const KernelTable& kernel,
                                                 const MinimizeSettings& settings) {
    settings.validate();
    if (!u0.grid.same_geometry(kernel.grid()))
        throw Error(ErrorKind::Contract, "minimize: state grid does not match kernel");

    SobolevPreconditioner P(u0.grid);
    ComplexField u_start = retract(u0);
    Evaluation ev0 = evaluate(u_start, beta, V, kernel);
    if (!std::isfinite(ev0.breakdown.total))
        throw MinimizeFailure("minimize: non-finite energy at the starting state",
                              {ev0.breakdown.total});
    IterateState cur = make_state(std::move(u_start), std::move(ev0), beta, V, kernel);

    MinimizeReport rep;
    rep.seed = settings.seed;
    rep.energy_trace.push_back(cur.ev.breakdown.total);

    double step = settings.initial_step;
    bool converged = false;
    int iters = 0;

    // Spectral (Barzilai-Borwein) secant pair for the initial step guess;
    // Armijo backtracking below keeps the trace monotone regardless.
    ComplexField prev_u, prev_d;
    bool have_secant = false;

    for (int it = 0; it < settings.max_iterations; ++it) {
        // Preconditioned direction, projected onto the tangent space. The
        // metric shift follows the chemical-potential scale so that steps
        // stay O(1) at large beta.
        const double shift = std::max(1.0, std::abs(cur.mu));
        ComplexField d = P.solve(cur.r, shift);
        const Complex ud = inner_cplx(cur.u, d) / inner_real(cur.u, cur.u);
        for (std::size_t p = 0; p < d.values.size(); ++p) d.values[p] -= ud * cur.u.values[p];

        double rate = 2.0 * inner_real(cur.r, d);
        if (!(rate > 0.0) || !std::isfinite(rate)) {
            d = cur.r;
            rate = 2.0 * inner_real(cur.r, cur.r);
            if (!(rate > 0.0)) {
                converged = cur.residual <= settings.tol_residual;
                break;
            }
        }

        double t = step;
        if (have_secant) {
            double ss = 0.0, sy = 0.0;
            for (std::size_t p = 0; p < cur.u.values.size(); ++p) {
                const Complex s = cur.u.values[p] - prev_u.values[p];
                const Complex y = d.values[p] - prev_d.values[p];
                ss += std::norm(s);
                sy += std::real(std::conj(s) * y);
            }
            if (sy > 0.0 && std::isfinite(ss / sy)) t = std::clamp(ss / sy, 1e-10, 1e4);
        }
        prev_u = cur.u;
        prev_d = d;
        have_secant = true;

        const double e0 = cur.ev.breakdown.total;
        bool accepted = false;
        ComplexField u_next;
        Evaluation ev_next;
        for (int ls = 0; ls < 80 && t > 1e-16; ++ls) {
            ComplexField cand(cur.u.grid);
            for (std::size_t p = 0; p < cand.values.size(); ++p)
                cand.values[p] = cur.u.values[p] - t * d.values[p];
            cand = retract(std::move(cand));
            Evaluation ev_try = evaluate(cand, beta, V, kernel);
            if (std::isfinite(ev_try.breakdown.total) &&
                ev_try.breakdown.total <= e0 - settings.armijo_c * t * rate) {
                u_next = std::move(cand);
                ev_next = std::move(ev_try);
                accepted = true;
                break;
            }
            t *= settings.shrink;
        }
        if (!accepted) {
            // Line search exhausted: the energy is stationary to rounding.
            converged = cur.residual <= settings.tol_residual;
            break;
        }

        iters = it + 1;
        const double e1 = ev_next.breakdown.total;
        rep.energy_trace.push_back(e1);
        if (!std::isfinite(e1)) {
            std::ostringstream msg;
            msg << "minimize: non-finite energy at iteration " << iters << " (beta=" << beta
                << ")";
            throw MinimizeFailure(msg.str(), rep.energy_trace);
        }
        cur = make_state(std::move(u_next), std::move(ev_next), beta, V, kernel);
        step = std::min(t * 2.0, 1e4);

        if (e0 - e1 <= settings.tol_energy * std::max(1.0, std::abs(e1)) &&
            cur.residual <= settings.tol_residual) {
            converged = true;
            break;
        }
    }

    rep.iterations = iters;
    rep.final_energy = cur.ev.breakdown;
    rep.residual = cur.residual;
    rep.mu = cur.mu;
    rep.converged = converged;
    rep.vortex_count = static_cast<int>(detect_vortices(cur.u).size());
    return {std::move(cur.u), std::move(rep)};
}

std::pair<ComplexField, MinimizeReport> minimize_multistart(const Grid2D& grid, double beta,
                                                            const PotentialSpec& V,
                                                            const KernelTable& kernel,
                                                            const MinimizeSettings& settings) {
    settings.validate();
    std::optional<std::pair<ComplexField, MinimizeReport>> best;
    for (int k = 0; k < settings.restarts; ++k) {
        const std::uint64_t seed = settings.seed + static_cast<std::uint64_t>(k);
        InitStrategy strat = settings.init;
        if (k > 0) strat = (k % 2 == 1) ? InitStrategy::RandomPhase : InitStrategy::VortexSeeded;
        MinimizeSettings local = settings;
        local.seed = seed;
        auto run = minimize(init_state(grid, strat, beta, seed), beta, V, kernel, local);
        if (!best || run.second.final_energy.total < best->second.final_energy.total)
            best = std::move(run);
    }
    return std::move(*best);
}

std::vector<SweepRow> sweep(const std::vector<double>& betas, const PotentialSpec& V,
                            const Grid2D& grid, const MinimizeSettings& settings,
                            int max_workers, std::vector<ComplexField>* states) {
    settings.validate();
    if (betas.empty()) throw Error(ErrorKind::Config, "sweep: empty beta list");
    for (std::size_t i = 0; i < betas.size(); ++i) {
        if (!(betas[i] > 0.0)) throw Error(ErrorKind::Config, "sweep: betas must be positive");
        if (i > 0 && betas[i] <= betas[i - 1])
            throw Error(ErrorKind::Config, "sweep: betas must be strictly ascending");
    }

    const std::size_t n = betas.size();
    std::vector<SweepRow> rows(n);
    std::vector<ComplexField> us(n);
    KernelTable kernel(grid);

    auto run_one = [&](std::size_t i, const ComplexField* warm) {
        SweepRow& row = rows[i];
        row.beta = betas[i];
        row.bc = grid.bc;
        row.grid_n = grid.nx;
        row.domain_area = grid.area();
        row.seed = settings.seed;
        try {
            std::pair<ComplexField, MinimizeReport> res =
                warm ? minimize(*warm, betas[i], V, kernel, settings)
                     : minimize_multistart(grid, betas[i], V, kernel, settings);
            row.energy = res.second.final_energy;
            row.mu = res.second.mu;
            row.residual = res.second.residual;
            row.iterations = res.second.iterations;
            row.vortex_count = res.second.vortex_count;
            row.converged = res.second.converged;
            us[i] = std::move(res.first);
        } catch (const std::exception& e) {
            row.failed = true;
            row.error = e.what();
        }
    };

    if (settings.warm_start || max_workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            const ComplexField* warm =
                (settings.warm_start && i > 0 && !rows[i - 1].failed) ? &us[i - 1] : nullptr;
            run_one(i, warm);
        }
    } else {
        const int workers = std::min<int>(max_workers, static_cast<int>(n));
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < n; i += workers) run_one(i, nullptr);
            });
        for (auto& t : pool) t.join();
    }

    if (states) *states = std::move(us);
    return rows;
}

E11Fit estimate_e11(const std::vector<SweepRow>& rows) {
    std::vector<const SweepRow*> ok;
    for (const auto& r : rows)
        if (!r.failed) ok.push_back(&r);
    if (ok.size() < 3)
        throw Error(ErrorKind::InsufficientData, "estimate_e11: need at least 3 sweep rows");

    // Fit energy/beta = intercept + slope * beta^{-1/7}.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(ok.size());
    for (const auto* r : ok) {
        const double x = std::pow(r->beta, -1.0 / 7.0);
        const double y = r->energy.total / r->beta;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-30)
        throw Error(ErrorKind::InsufficientData, "estimate_e11: degenerate abscissas");
    E11Fit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.rows_used = static_cast<int>(ok.size());
    double ss = 0.0;
    for (const auto* r : ok) {
        const double x = std::pow(r->beta, -1.0 / 7.0);
        const double y = r->energy.total / r->beta;
        const double e = y - fit.intercept - fit.slope * x;
        ss += e * e;
    }
    fit.rms_residual = std::sqrt(ss / n);
    fit.estimate = fit.intercept * ok.front()->domain_area;
    return fit;
}

}  // namespace af
