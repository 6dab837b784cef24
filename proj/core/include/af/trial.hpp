#pragma once
#include <functional>
#include <vector>

#include "af/field.hpp"

namespace af {

/// Radial bump, C^1, compactly supported in the unit ball, unit L^2 norm.
struct RadialProfile {
    std::function<double(double)> f;
    double support_radius = 1.0;
};

/// f(r) = c (1 - r^2)^2 on [0,1], zero outside; c = sqrt(5/pi) makes
/// ||f||_2 = 1.
RadialProfile bump_profile();

/// Square-lattice ball centers for n balls, spacing extent/ceil(sqrt(n)),
/// filled row-major from the lower-left cell.
std::vector<Vec2> vortex_lattice_centers(int n, const Grid2D& domain);

/// The vortex-lattice state
///   u(r) = sum_j f(sqrt(beta)(r - r_j)) exp(-i sum_{k != j} arg(r - r_k)),
/// with floor(beta) bumps of mass 1/beta each, normalized at the end. The
/// phases are accumulated as sums of two-argument arctangents. Throws
/// ErrorKind::Geometry when the radius-1/sqrt(beta) balls do not pack into
/// the domain.
ComplexField vortex_lattice_trial(const Grid2D& domain, double beta, const RadialProfile& f);

struct FactorizationCheck {
    double lhs = 0.0;       // E[u_trial] at the given beta, V = 0
    double rhs = 0.0;       // floor(beta) x E of f on the unit ball at beta = 1
    double rel_error = 0.0;
    int n_balls = 0;
    int ball_cells = 0;     // cells across each trial ball
};

/// Verifies the exact energy factorization of the lattice trial state. The
/// reference side is evaluated on a matched-resolution unit-ball grid.
FactorizationCheck factorization_check(const ComplexField& u, double beta,
                                       const RadialProfile& f);

/// E of the bump alone on the unit ball at beta = 1 (V = 0), sampled with
/// the given number of cells across the ball.
double single_ball_energy(const RadialProfile& f, int cells_across);

}  // namespace af
