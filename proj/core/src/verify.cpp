#include <cmath>
#include <iomanip>
#include <ostream>

#include "af/diagnostics.hpp"
#include "af/experiment.hpp"
#include "af/kernel.hpp"
#include "af/synthetic.hpp"
#include "af/tf.hpp"
#include "af/trial.hpp"

namespace af {
namespace {

struct Battery {
    std::ostream& log;
    bool all_pass = true;

    void check(const char* name, double value, double threshold) {
        const bool ok = value <= threshold;
        all_pass = all_pass && ok;
        log << (ok ? "PASS " : "FAIL ") << name << " (value=" << std::scientific
            << std::setprecision(3) << value << ", threshold=" << threshold << ")\n"
            << std::defaultfloat;
    }
};

ScalarField radial_bump(const Grid2D& g, Vec2 center, double a) {
    // (1 - (r/a)^2)^4 inside the disc, scaled to unit mass.
    const double c = 5.0 / (M_PI * a * a);
    ScalarField rho(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double r2 = norm2(g.node(i, j) - center) / (a * a);
            if (r2 < 1.0) {
                const double t = 1.0 - r2;
                rho.values[g.index(i, j)] = c * t * t * t * t;
            }
        }
    return rho;
}

double inner_real(const ComplexField& a, const ComplexField& b) {
    double s = 0.0;
    for (std::size_t p = 0; p < a.values.size(); ++p)
        s += std::real(std::conj(a.values[p]) * b.values[p]);
    return s * a.grid.cell_area();
}

}  // namespace

bool run_verify_battery(std::ostream& log) {
    Battery b{log};
    const PotentialSpec v0 = PotentialSpec::zero();

    {  // curl identity and Newton exterior oracle share one free-space box
        Grid2D g = make_grid_centered({4.0, 4.0}, 256, 256, BoundaryCondition::Free);
        KernelTable kernel(g);

        ScalarField rho = radial_bump(g, {0.0, 0.0}, 1.2);
        ScalarField c = curl(kernel.vector_potential(rho));
        double num = 0.0, den = 0.0;
        const int margin = 8;
        for (int j = margin; j < g.ny - margin; ++j)
            for (int i = margin; i < g.nx - margin; ++i) {
                const double want = 2.0 * M_PI * rho.values[g.index(i, j)];
                const double diff = c.values[g.index(i, j)] - want;
                num += diff * diff;
                den += want * want;
            }
        b.check("curl_identity", std::sqrt(num / den), 1e-2);

        ScalarField bump = radial_bump(g, {0.0, 0.0}, 0.25);
        VectorField A = kernel.vector_potential(bump);
        const int qi = g.nx / 2 + static_cast<int>(std::lround(0.5 / g.spacing.x));
        const int qj = g.ny / 2;
        const Vec2 exact = exterior_field(1.0, {0.0, 0.0}, g.node(qi, qj));
        const Vec2 got = A.at(qi, qj);
        const double rel =
            std::sqrt(norm2(got - exact)) / std::sqrt(norm2(exact));
        b.check("newton_exterior", rel, 1e-3);
    }

    {  // chemical-potential identity
        double worst = 0.0;
        const double betas[] = {0.0, 1.0, 10.0};
        const BoundaryCondition bcs[] = {BoundaryCondition::Neumann,
                                         BoundaryCondition::Dirichlet, BoundaryCondition::Free};
        for (int k = 0; k < 10; ++k) {
            Grid2D g = make_grid({1.0, 1.0}, 64, 64, bcs[k % 3]);
            KernelTable kernel(g);
            ComplexField u = smooth_random_state(g, 100 + k);
            const double beta = betas[k % 3];
            const EnergyBreakdown E = energy(u, beta, v0, kernel);
            const auto [mu1, mu2] = chemical_potential(u, beta, v0, E, kernel);
            worst = std::max(worst, std::abs(mu1 - mu2) / std::max(1.0, std::abs(mu1)));
        }
        b.check("mu_identity", worst, 1e-11);
    }

    {  // scaling covariance of the energy
        Grid2D g = make_grid({1.0, 1.0}, 64, 64, BoundaryCondition::Neumann);
        KernelTable kernel(g);
        ComplexField u = smooth_random_state(g, 7);
        const double beta = 1.3;
        const double combos[][2] = {{2.0, 1.0}, {1.0, 2.0}, {0.5, 3.0}};
        double worst = 0.0;
        for (auto [lam, mu] : combos) {
            ComplexField us = rescale_state(u, lam, mu);
            KernelTable ks(us.grid);
            const double lhs = energy(us, beta, v0, ks).total;
            const double rhs =
                lam * lam * energy(u, lam * lam * mu * mu * beta, v0, kernel).total;
            worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
        }
        b.check("scaling_law", worst, 1e-10);
    }

    {  // diamagnetic and magnetic lower bounds
        Grid2D g = make_grid({1.0, 1.0}, 96, 96, BoundaryCondition::Dirichlet);
        KernelTable kernel(g);
        double viol_dia = 0.0, viol_mag = 0.0;
        for (int k = 0; k < 20; ++k) {
            ComplexField u = smooth_random_state(g, 300 + k);
            const double beta = 5.0;
            const EnergyBreakdown E = energy(u, beta, v0, kernel);
            const LowerBounds lb = lower_bounds(u, beta, true);
            const double km = E.kinetic_magnetic();
            viol_dia = std::max(viol_dia, (lb.diamagnetic - km) / km);
            viol_mag = std::max(viol_mag, (*lb.magnetic - km) / km);
        }
        b.check("diamagnetic_bound_violation", viol_dia, 1e-12);
        b.check("magnetic_bound_violation", viol_mag, 1e-3);
    }

    {  // trial-state factorization
        const double beta = 4.0;
        const int n = 192;
        const double L = 2.0 * (1.0 + 4.0 / n);
        Grid2D g = make_grid({L, L}, n, n, BoundaryCondition::Free);
        const RadialProfile f = bump_profile();
        ComplexField u = vortex_lattice_trial(g, beta, f);
        const FactorizationCheck fc = factorization_check(u, beta, f);
        b.check("trial_factorization", fc.rel_error, 2e-2);
    }

    {  // directional-derivative consistency
        double worst = 0.0;
        const double betas[] = {0.0, 1.0, 10.0};
        for (int k = 0; k < 5; ++k) {
            Grid2D g = make_grid({1.0, 1.0}, 64, 64,
                                 k % 2 ? BoundaryCondition::Dirichlet
                                       : BoundaryCondition::Neumann);
            KernelTable kernel(g);
            ComplexField u = smooth_random_state(g, 900 + k);
            ComplexField w = smooth_random_state(g, 950 + k);
            const double beta = betas[k % 3];

            ComplexField el = el_apply(u, beta, v0, kernel);
            const double mu = inner_real(u, el) / inner_real(u, u);
            ComplexField r = el;
            for (std::size_t p = 0; p < r.values.size(); ++p)
                r.values[p] -= mu * u.values[p];
            const double analytic = 2.0 * inner_real(r, w);

            const double eps = 1e-4;
            auto shifted = [&](double sign) {
                ComplexField t = u;
                for (std::size_t p = 0; p < t.values.size(); ++p)
                    t.values[p] += sign * eps * w.values[p];
                apply_boundary_mask(t);
                return energy(normalize(t), beta, v0, kernel).total;
            };
            const double fd = (shifted(1.0) - shifted(-1.0)) / (2.0 * eps);
            worst = std::max(worst,
                             std::abs(fd - analytic) / std::max(1.0, std::abs(analytic)));
        }
        b.check("gradient_consistency", worst, 1e-5);
    }

    {  // TF closed forms
        const double e11 = 2.0 * M_PI;
        const TFProfile tf = tf_minimizer(PotentialSpec::harmonic(1.0, 1.0), e11);
        const double lam_exact = 2.0 * std::sqrt(2.0);
        b.check("tf_lambda", std::abs(tf.lambda - lam_exact) / lam_exact, 1e-9);
        const double e_exact = lam_exact * lam_exact * lam_exact / 12.0;
        b.check("tf_energy1", std::abs(tf.energy1 - e_exact) / e_exact, 1e-9);
        b.check("tf_mu_identity",
                std::abs(tf.lambda - (tf.energy1 + e11 * tf.l2sq)) / tf.lambda, 1e-10);
        double worst = 0.0;
        for (double beta : {1.0, 10.0, 100.0}) {
            const double scaled = tf_scale(tf.energy1, beta, tf.s) /
                                  std::pow(beta, tf.s / (tf.s + 2.0));
            worst = std::max(worst, std::abs(scaled - tf.energy1) / tf.energy1);
        }
        b.check("tf_beta_scaling", worst, 1e-9);
    }

    log << (b.all_pass ? "verify: all checks passed\n" : "verify: FAILURES present\n");
    return b.all_pass;
}

}  // namespace af
