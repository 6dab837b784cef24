#include "af/tf.hpp"

#include <cmath>
#include <limits>

#include "af/errors.hpp"

namespace af {
namespace {

// B(2/s, k+1) = k! / prod_{j=0..k} (2/s + j)
double beta_factor(double s, int k) {
    const double a = 2.0 / s;
    double num = 1.0, den = a;
    for (int j = 1; j <= k; ++j) {
        num *= j;
        den *= a + j;
    }
    return num / den;
}

// Periodic trapezoid rule for the angular profile integral
// int_0^{2pi} V(cos t, sin t)^{-2/s} dt; spectrally convergent.
double angular_integral(const PotentialSpec& V, double s) {
    const double p = -2.0 / s;
    double prev = 0.0;
    for (int n = 64; n <= (1 << 20); n *= 2) {
        double acc = 0.0;
        const double dt = 2.0 * M_PI / n;
        for (int i = 0; i < n; ++i) acc += std::pow(V.angular(i * dt), p);
        acc *= dt;
        if (n > 64 && std::abs(acc - prev) <= 1e-13 * std::abs(acc)) return acc;
        prev = acc;
    }
    return prev;
}

// int (lambda - V)_+^k over the plane, reduced to the angular profile.
double bracket_integral(double lambda, double s, int k, double ang) {
    if (!(lambda > 0.0)) return 0.0;
    return std::pow(lambda, k + 2.0 / s) * beta_factor(s, k) / s * ang;
}

}  // namespace

TFProfile tf_minimizer(const PotentialSpec& V, double e11) {
    if (!(e11 > 0.0)) throw Error(ErrorKind::Contract, "tf_minimizer: e11 must be positive");
    if (V.is_zero())
        throw Error(ErrorKind::Contract, "tf_minimizer: needs a trapping potential (degree > 1)");
    const double s = V.degree();
    if (!(s > 1.0)) throw Error(ErrorKind::Contract, "tf_minimizer: degree must exceed 1");

    const double ang = angular_integral(V, s);
    if (!std::isfinite(ang) || !(ang > 0.0))
        throw Error(ErrorKind::Model, "tf_minimizer: angular profile integral is degenerate");

    auto mass = [&](double lam) { return bracket_integral(lam, s, 1, ang) / (2.0 * e11); };

    // Grow the bracket until the mass function crosses 1, then bisect.
    double lo = 0.0, hi = 1.0;
    int guard = 0;
    while (mass(hi) < 1.0) {
        hi *= 2.0;
        if (++guard > 200)
            throw Error(ErrorKind::Model, "tf_minimizer: bisection bracket does not close");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (mass(mid) < 1.0 ? lo : hi) = mid;
        if (hi - lo <= 1e-12 * std::max(1.0, hi)) break;
    }
    const double lambda = 0.5 * (lo + hi);

    TFProfile p;
    p.e11 = e11;
    p.lambda = lambda;
    p.s = s;
    p.V = V;
    const double b1 = bracket_integral(lambda, s, 1, ang);
    const double b2 = bracket_integral(lambda, s, 2, ang);
    p.l2sq = b2 / (4.0 * e11 * e11);
    const double v_rho = (lambda * b1 - b2) / (2.0 * e11);
    p.energy1 = e11 * p.l2sq + v_rho;

    // R(theta) = (lambda / V(theta))^{1/s}, maximized over directions.
    double vmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4096; ++i) vmin = std::min(vmin, V.angular(i * (2.0 * M_PI / 4096)));
    p.R0 = std::pow(lambda / vmin, 1.0 / s);
    return p;
}

double tf_energy(const TFProfile& rho, double beta) {
    double v_rho = rho.energy1 - rho.e11 * rho.l2sq;
    return rho.e11 * beta * rho.l2sq + v_rho;
}

double tf_energy(const ScalarField& rho, double beta, const PotentialSpec& V, double e11) {
    const double w = rho.grid.cell_area();
    double mass = 0.0;
    for (double v : rho.values) mass += v;
    mass *= w;
    if (std::abs(mass - 1.0) > 1e-6)
        throw Error(ErrorKind::Contract, "tf_energy: density must carry unit mass");
    double acc = 0.0;
    for (int j = 0; j < rho.grid.ny; ++j)
        for (int i = 0; i < rho.grid.nx; ++i) {
            const double r = rho.values[rho.grid.index(i, j)];
            acc += e11 * beta * r * r + V(rho.grid.node(i, j)) * r;
        }
    return acc * w;
}

double tf_scale(double energy1, double beta, double s) {
    if (!(beta > 0.0)) throw Error(ErrorKind::Contract, "tf_scale: beta must be positive");
    return std::pow(beta, s / (s + 2.0)) * energy1;
}

std::function<double(Vec2)> tf_scale_density(const TFProfile& rho1, double beta) {
    if (!(beta > 0.0))
        throw Error(ErrorKind::Contract, "tf_scale_density: beta must be positive");
    const double s = rho1.s;
    const double amp = std::pow(beta, -2.0 / (2.0 + s));
    const double len = std::pow(beta, -1.0 / (2.0 + s));
    return [rho1, amp, len](Vec2 r) { return amp * rho1.density({len * r.x, len * r.y}); };
}

double tf_support_radius(const TFProfile& rho1, double beta) {
    return rho1.R0 * std::pow(beta, 1.0 / (2.0 + rho1.s));
}

double homogeneous_energy(double gamma, double lambda_dens, double e11) {
    if (gamma < 0.0 || lambda_dens < 0.0)
        throw Error(ErrorKind::Contract, "homogeneous_energy: arguments must be nonnegative");
    return gamma * lambda_dens * lambda_dens * e11;
}

}  // namespace af
