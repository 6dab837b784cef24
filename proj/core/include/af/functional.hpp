#pragma once
#include <optional>

#include "af/field.hpp"
#include "af/kernel.hpp"
#include "af/potential.hpp"

namespace af {

/// Itemized terms of the average-field energy
///   E[u] = int |grad u|^2 + V|u|^2 + 2 beta A.j + beta^2 |A|^2 |u|^2
/// with A = A[|u|^2]; the grouping mirrors the expansion of the covariant
/// kinetic term |(-i grad + beta A)u|^2.
///
/// The three kinetic-magnetic terms are quadratures on lattice links
/// (nearest-neighbor differences, midpoint-averaged fields). The link form
/// keeps the discrete diamagnetic inequality exact and carries the flux
/// obstruction of the continuum operator; a centered-difference assembly
/// admits spurious grid-scale minimizers at large beta.
struct EnergyBreakdown {
    double kinetic = 0.0;    // int |grad u|^2
    double potential = 0.0;  // int V |u|^2
    double cross = 0.0;      // 2 beta int A . j[u]
    double quartic = 0.0;    // beta^2 int |A|^2 |u|^2
    double total = 0.0;

    /// Covariant kinetic part, kinetic + cross + quartic.
    double kinetic_magnetic() const { return kinetic + cross + quartic; }
};

/// One full pass over a state; the minimizer reuses this to avoid
/// recomputing transforms.
struct Evaluation {
    EnergyBreakdown breakdown;
    ScalarField rho;
    VectorField A;
};

Evaluation evaluate(const ComplexField& u, double beta, const PotentialSpec& V,
                    const KernelTable& kernel);

EnergyBreakdown energy(const ComplexField& u, double beta, const PotentialSpec& V,
                       const KernelTable& kernel);

/// Applies the variational operator
///   [(-i grad + beta A)^2 + V - 2 beta K * (beta A rho + j)] u
/// assembled as the exact Wirtinger gradient of the discrete energy, so that
/// <u, el_apply(u)> equals the chemical potential identically and directional
/// derivatives of energy() match to rounding.
ComplexField el_apply(const ComplexField& u, double beta, const PotentialSpec& V,
                      const KernelTable& kernel);

/// el_apply reusing a previous evaluation of the same state.
ComplexField el_apply(const ComplexField& u, double beta, const PotentialSpec& V,
                      const Evaluation& ev, const KernelTable& kernel);

/// Preconditioned descent direction: (1 - Laplacian)^{-1} applied to the
/// projected L2 gradient el(u) - <u, el(u)> u, then re-projected onto the
/// tangent space of the unit sphere.
ComplexField sobolev_gradient(const ComplexField& u, double beta, const PotentialSpec& V,
                              const KernelTable& kernel);

/// Both closed forms of the chemical potential:
///   mu1 = E + int {2 beta A.j + 2 beta^2 |A|^2 rho}
///   mu2 = int {|grad u|^2 + V rho + 4 beta A.j + 3 beta^2 |A|^2 rho}
/// They agree identically; computing both is a consistency probe.
std::pair<double, double> chemical_potential(const ComplexField& u, double beta,
                                             const PotentialSpec& V, const EnergyBreakdown& E,
                                             const KernelTable& kernel);

struct LowerBounds {
    double diamagnetic = 0.0;          // int |grad |u||^2
    std::optional<double> magnetic{};  // 2 pi beta ||u||_4^4, Dirichlet only
};

/// The two magnetic lower bounds on the covariant kinetic energy. The
/// magnetic bound needs zero boundary values; requesting it for a
/// non-Dirichlet state is a contract violation.
LowerBounds lower_bounds(const ComplexField& u, double beta, bool require_magnetic = false);

}  // namespace af
