#pragma once
#include <functional>

#include "af/field.hpp"
#include "af/potential.hpp"

namespace af {

/// Closed-form Thomas-Fermi minimizer at beta = 1,
///   rho(r) = [lambda - V(r)]_+ / (2 e11),
/// with lambda fixed by unit mass. Profiles are immutable.
struct TFProfile {
    double e11 = 0.0;      // homogeneous-gas coefficient e(1,1)
    double lambda = 0.0;   // chemical potential lambda_1
    double energy1 = 0.0;  // E_1, the beta = 1 ground energy
    double l2sq = 0.0;     // ||rho||_2^2
    double R0 = 0.0;       // support radius bound
    double s = 0.0;        // homogeneity degree of V
    PotentialSpec V;

    double density(Vec2 r) const {
        double d = lambda - V(r);
        return d > 0.0 ? d / (2.0 * e11) : 0.0;
    }
};

/// Solves the normalization for lambda by monotone bisection (tolerance
/// 1e-12 relative) and assembles the profile. Throws ErrorKind::Model when
/// no bracket exists and ErrorKind::Contract for non-trapping V.
TFProfile tf_minimizer(const PotentialSpec& V, double e11);

/// int { e11 beta rho^2 + V rho } for the closed-form profile.
double tf_energy(const TFProfile& rho, double beta);

/// Same functional for a gridded density by Riemann sum; the density must
/// carry unit mass (contract violation otherwise).
double tf_energy(const ScalarField& rho, double beta, const PotentialSpec& V, double e11);

/// E_beta = beta^{s/(s+2)} E_1.
double tf_scale(double energy1, double beta, double s);

/// rho_beta(r) = beta^{-2/(2+s)} rho_1(beta^{-1/(s+2)} r).
std::function<double(Vec2)> tf_scale_density(const TFProfile& rho1, double beta);

/// Support radius of the beta-scaled minimizer, R0 * beta^{1/(2+s)}.
double tf_support_radius(const TFProfile& rho1, double beta);

/// Homogeneous-gas energy density e(gamma, lambda) = gamma lambda^2 e(1,1).
double homogeneous_energy(double gamma, double lambda_dens, double e11);

}  // namespace af
