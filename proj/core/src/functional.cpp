#include "af/functional.hpp"

#include <cmath>

#include "af/errors.hpp"
#include "af/precond.hpp"

namespace af {
namespace {

constexpr Complex kI{0.0, 1.0};

// Unweighted link sums of the three kinetic-magnetic integrands:
//   kin   = sum |D u|^2
//   aj    = sum a Im(conj(m) D u)        (A . j at links)
//   a2rho = sum a^2 |m|^2                (|A|^2 rho at links)
// with D the nearest-neighbor difference, m the link midpoint value of u and
// a the link midpoint value of the A component. Multiply by the cell area
// for the quadrature.
struct LinkSums {
    double kin = 0.0;
    double aj = 0.0;
    double a2rho = 0.0;
};

template <typename PerLink>
void for_each_link(const Grid2D& g, const ComplexField& u, const VectorField& A, PerLink&& f) {
    const double inv_hx = 1.0 / g.spacing.x;
    const double inv_hy = 1.0 / g.spacing.y;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i + 1 < g.nx; ++i) {
            const std::size_t p = g.index(i, j), q = g.index(i + 1, j);
            const Complex d = (u.values[q] - u.values[p]) * inv_hx;
            const Complex m = 0.5 * (u.values[p] + u.values[q]);
            const double a = 0.5 * (A.x[p] + A.x[q]);
            f(p, q, d, m, a, inv_hx, /*along_x=*/true);
        }
    for (int j = 0; j + 1 < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t p = g.index(i, j), q = g.index(i, j + 1);
            const Complex d = (u.values[q] - u.values[p]) * inv_hy;
            const Complex m = 0.5 * (u.values[p] + u.values[q]);
            const double a = 0.5 * (A.y[p] + A.y[q]);
            f(p, q, d, m, a, inv_hy, /*along_x=*/false);
        }
}

LinkSums link_sums(const ComplexField& u, const VectorField& A) {
    LinkSums s;
    for_each_link(u.grid, u, A,
                  [&](std::size_t, std::size_t, Complex d, Complex m, double a, double, bool) {
                      s.kin += std::norm(d);
                      s.aj += a * std::imag(std::conj(m) * d);
                      s.a2rho += a * a * std::norm(m);
                  });
    return s;
}

double potential_quadrature(const ComplexField& u, const PotentialSpec& V) {
    if (V.is_zero()) return 0.0;
    const Grid2D& g = u.grid;
    double acc = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            acc += V(g.node(i, j)) * std::norm(u.values[g.index(i, j)]);
    return acc;
}

}  // namespace

Evaluation evaluate(const ComplexField& u, double beta, const PotentialSpec& V,
                    const KernelTable& kernel) {
    if (!u.grid.same_geometry(kernel.grid()))
        throw Error(ErrorKind::Contract, "evaluate: state grid does not match kernel");

    Evaluation ev;
    ev.rho = density(u);
    ev.A = kernel.vector_potential(ev.rho);

    const LinkSums s = link_sums(u, ev.A);
    const double w = u.grid.cell_area();
    ev.breakdown.kinetic = w * s.kin;
    ev.breakdown.potential = w * potential_quadrature(u, V);
    ev.breakdown.cross = 2.0 * beta * w * s.aj;
    ev.breakdown.quartic = beta * beta * w * s.a2rho;
    ev.breakdown.total = ev.breakdown.kinetic + ev.breakdown.potential + ev.breakdown.cross +
                         ev.breakdown.quartic;
    return ev;
}

EnergyBreakdown energy(const ComplexField& u, double beta, const PotentialSpec& V,
                       const KernelTable& kernel) {
    return evaluate(u, beta, V, kernel).breakdown;
}

ComplexField el_apply(const ComplexField& u, double beta, const PotentialSpec& V,
                      const Evaluation& ev, const KernelTable& kernel) {
    const Grid2D& g = u.grid;
    ComplexField out(g);

    // Per-link Wirtinger derivatives of the three kinetic-magnetic terms,
    // scattered to the two endpoint nodes. F collects the source of the
    // nonlocal self-consistency term, F ~ 2 beta (j + beta A rho) at nodes.
    VectorField F(g);
    const bool magnetic = beta != 0.0;
    for_each_link(g, u, ev.A,
                  [&](std::size_t p, std::size_t q, Complex d, Complex m, double a,
                      double inv_h, bool along_x) {
                      Complex cp = -d * inv_h;
                      Complex cq = d * inv_h;
                      if (magnetic) {
                          const Complex cross_sym = -kI * (beta * a) * (0.5 * d);
                          const Complex cross_asym = -kI * (beta * a) * (m * inv_h);
                          const Complex quart = 0.5 * beta * beta * a * a * m;
                          cp += cross_sym + cross_asym + quart;
                          cq += cross_sym - cross_asym + quart;
                          const double gsrc =
                              beta * (std::imag(std::conj(m) * d) + beta * a * std::norm(m));
                          auto& comp = along_x ? F.x : F.y;
                          comp[p] += gsrc;
                          comp[q] += gsrc;
                      }
                      out.values[p] += cp;
                      out.values[q] += cq;
                  });

    if (!V.is_zero()) {
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const std::size_t p = g.index(i, j);
                out.values[p] += V(g.node(i, j)) * u.values[p];
            }
    }

    if (magnetic) {
        const ScalarField conv = kernel.dot_convolve(F);
        for (std::size_t p = 0; p < u.values.size(); ++p)
            out.values[p] -= conv.values[p] * u.values[p];
    }
    return out;
}

ComplexField el_apply(const ComplexField& u, double beta, const PotentialSpec& V,
                      const KernelTable& kernel) {
    Evaluation ev = evaluate(u, beta, V, kernel);
    return el_apply(u, beta, V, ev, kernel);
}

ComplexField sobolev_gradient(const ComplexField& u, double beta, const PotentialSpec& V,
                              const KernelTable& kernel) {
    ComplexField el = el_apply(u, beta, V, kernel);

    double mu = 0.0, nrm2 = 0.0;
    for (std::size_t p = 0; p < u.values.size(); ++p) {
        mu += std::real(std::conj(u.values[p]) * el.values[p]);
        nrm2 += std::norm(u.values[p]);
    }
    mu = (nrm2 > 0.0) ? mu / nrm2 : 0.0;

    ComplexField r = el;
    for (std::size_t p = 0; p < r.values.size(); ++p) r.values[p] -= mu * u.values[p];
    if (u.grid.bc == BoundaryCondition::Dirichlet) apply_boundary_mask(r);

    SobolevPreconditioner P(u.grid);
    ComplexField d = P.solve(r);

    Complex ud{0.0, 0.0};
    for (std::size_t p = 0; p < u.values.size(); ++p)
        ud += std::conj(u.values[p]) * d.values[p];
    ud /= nrm2;
    for (std::size_t p = 0; p < d.values.size(); ++p) d.values[p] -= ud * u.values[p];
    return d;
}

std::pair<double, double> chemical_potential(const ComplexField& u, double beta,
                                             const PotentialSpec& V, const EnergyBreakdown& E,
                                             const KernelTable& kernel) {
    const Evaluation ev = evaluate(u, beta, V, kernel);
    const LinkSums s = link_sums(u, ev.A);
    const double w = u.grid.cell_area();
    const double aj = w * s.aj;
    const double a2rho = w * s.a2rho;

    const double mu1 = E.total + 2.0 * beta * aj + 2.0 * beta * beta * a2rho;
    const double mu2 = ev.breakdown.kinetic + ev.breakdown.potential + 4.0 * beta * aj +
                       3.0 * beta * beta * a2rho;
    return {mu1, mu2};
}

LowerBounds lower_bounds(const ComplexField& u, double beta, bool require_magnetic) {
    LowerBounds lb;
    const Grid2D& g = u.grid;
    // Same link quadrature as the kinetic term, so the diamagnetic
    // inequality holds with zero discrete slack.
    double acc = 0.0;
    const double inv_hx = 1.0 / g.spacing.x, inv_hy = 1.0 / g.spacing.y;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i + 1 < g.nx; ++i) {
            const double d =
                (std::abs(u.values[g.index(i + 1, j)]) - std::abs(u.values[g.index(i, j)])) *
                inv_hx;
            acc += d * d;
        }
    for (int j = 0; j + 1 < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double d =
                (std::abs(u.values[g.index(i, j + 1)]) - std::abs(u.values[g.index(i, j)])) *
                inv_hy;
            acc += d * d;
        }
    lb.diamagnetic = acc * g.cell_area();

    const bool dirichlet = g.bc == BoundaryCondition::Dirichlet;
    if (require_magnetic && !dirichlet)
        throw Error(ErrorKind::Contract,
                    "lower_bounds: the magnetic bound needs a Dirichlet state");
    if (dirichlet) {
        const double q = lp_norm(u, 4.0);
        lb.magnetic = 2.0 * M_PI * std::abs(beta) * q * q * q * q;
    }
    return lb;
}

}  // namespace af
