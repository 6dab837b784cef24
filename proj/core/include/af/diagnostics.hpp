#pragma once
#include <vector>

#include "af/field.hpp"
#include "af/potential.hpp"
#include "af/tf.hpp"

namespace af {

struct VortexRecord {
    Vec2 position;    // plaquette center
    int winding = 0;  // nonzero integer, |winding| <= 4
};

/// Plaquette phase-winding detector. For every grid plaquette whose four
/// corner moduli exceed the floor, the branch-adjusted phase differences are
/// summed around the loop; a nonzero multiple of 2 pi is recorded. A
/// negative floor requests the default (0.1 times the median modulus).
std::vector<VortexRecord> detect_vortices(const ComplexField& u, double modulus_floor = -1.0);

int total_winding(const std::vector<VortexRecord>& records);

/// Piecewise-constant coarse graining on squares of side beta^{-nu};
/// cells keep rho_j = beta^{2 nu} * (mass in cell) and survive when
/// rho_j >= beta^{2 nu - 1 + mu_thr}.
struct CoarseDensity {
    double beta = 0.0;
    double nu = 0.0;
    double mu_thr = 0.0;
    double cell_side = 0.0;
    int tiles_x = 0;
    int tiles_y = 0;
    struct Cell {
        int ix = 0;
        int iy = 0;
        double value = 0.0;
    };
    std::vector<Cell> retained;

    double threshold() const;
    /// Mass carried by the retained cells, sum rho_j * cell_side^2.
    double retained_mass() const;
};

CoarseDensity coarse_grain(const ScalarField& rho, double beta, double nu, double mu_thr);

/// Dual-Lipschitz surrogate distance: the supremum of |int phi (rho1 - rho2)|
/// over a fixed dictionary of Lipschitz-1 test functions vanishing on the
/// boundary of B_R(center) -- tensor hats at three dyadic scales plus radial
/// cones. A reproducible lower bound on the true dual norm.
double weak_norm_distance(const ScalarField& rho1, const ScalarField& rho2, double R,
                          Vec2 center);

/// Radius of the centered ball holding the given mass fraction of rho.
double support_radius(const ScalarField& rho, Vec2 center, double mass_fraction = 0.99);

struct LdaBall {
    Vec2 center;
    double radius = 0.0;
    double distance = 0.0;
};

struct LdaReport {
    std::vector<LdaBall> balls;
    double max_distance = 0.0;
    double support_radius_measured = 0.0;  // in TF (rescaled) coordinates
    double support_radius_tf = 0.0;        // R0 of the beta = 1 profile
};

/// Rescales the minimizer density by beta^{2/(s+2)} in value and
/// beta^{1/(s+2)} in length and measures weak-norm distances to the TF
/// profile on balls covering its support.
LdaReport lda_compare(const ComplexField& u, double beta, const PotentialSpec& V,
                      const TFProfile& tf);

}  // namespace af
