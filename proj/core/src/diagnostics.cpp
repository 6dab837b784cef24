#include "af/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "af/errors.hpp"

namespace af {
namespace {

double wrap_phase(double d) { return std::remainder(d, 2.0 * M_PI); }

double median_modulus(const ComplexField& u) {
    std::vector<double> m(u.values.size());
    for (std::size_t p = 0; p < m.size(); ++p) m[p] = std::abs(u.values[p]);
    auto mid = m.begin() + m.size() / 2;
    std::nth_element(m.begin(), mid, m.end());
    return *mid;
}

}  // namespace

std::vector<VortexRecord> detect_vortices(const ComplexField& u, double modulus_floor) {
    const Grid2D& g = u.grid;
    const double floor_v = modulus_floor >= 0.0 ? modulus_floor : 0.1 * median_modulus(u);

    std::vector<VortexRecord> out;
    for (int j = 0; j + 1 < g.ny; ++j) {
        for (int i = 0; i + 1 < g.nx; ++i) {
            const Complex c00 = u.at(i, j), c10 = u.at(i + 1, j);
            const Complex c11 = u.at(i + 1, j + 1), c01 = u.at(i, j + 1);
            if (std::abs(c00) <= floor_v || std::abs(c10) <= floor_v ||
                std::abs(c11) <= floor_v || std::abs(c01) <= floor_v)
                continue;
            const double p00 = std::arg(c00), p10 = std::arg(c10);
            const double p11 = std::arg(c11), p01 = std::arg(c01);
            const double total = wrap_phase(p10 - p00) + wrap_phase(p11 - p10) +
                                 wrap_phase(p01 - p11) + wrap_phase(p00 - p01);
            const int w = static_cast<int>(std::llround(total / (2.0 * M_PI)));
            if (w == 0 || std::abs(w) > 4) continue;
            out.push_back({{g.x(i) + 0.5 * g.spacing.x, g.y(j) + 0.5 * g.spacing.y}, w});
        }
    }
    return out;
}

int total_winding(const std::vector<VortexRecord>& records) {
    int s = 0;
    for (const auto& r : records) s += r.winding;
    return s;
}

double CoarseDensity::threshold() const { return std::pow(beta, 2.0 * nu - 1.0 + mu_thr); }

double CoarseDensity::retained_mass() const {
    double s = 0.0;
    for (const auto& c : retained) s += c.value;
    return s * cell_side * cell_side;
}

CoarseDensity coarse_grain(const ScalarField& rho, double beta, double nu, double mu_thr) {
    if (!(nu > 0.0 && nu < 0.5))
        throw Error(ErrorKind::Contract, "coarse_grain: need 0 < nu < 1/2");
    if (!(mu_thr > 0.0 && mu_thr < 1.0 - 2.0 * nu))
        throw Error(ErrorKind::Contract, "coarse_grain: need 0 < mu < 1 - 2 nu");
    if (!(beta > 0.0)) throw Error(ErrorKind::Contract, "coarse_grain: beta must be positive");

    const Grid2D& g = rho.grid;
    const double side = std::pow(beta, -nu);
    if (side < 2.0 * std::max(g.spacing.x, g.spacing.y))
        throw Error(ErrorKind::Resolution,
                    "coarse_grain: tile side beta^{-nu} is under-resolved by the grid");

    CoarseDensity cd;
    cd.beta = beta;
    cd.nu = nu;
    cd.mu_thr = mu_thr;
    cd.cell_side = side;
    cd.tiles_x = static_cast<int>(std::ceil(g.extent().x / side));
    cd.tiles_y = static_cast<int>(std::ceil(g.extent().y / side));

    std::vector<double> mass(static_cast<std::size_t>(cd.tiles_x) * cd.tiles_y, 0.0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            int tx = static_cast<int>((g.x(i) - g.origin.x) / side);
            int ty = static_cast<int>((g.y(j) - g.origin.y) / side);
            tx = std::clamp(tx, 0, cd.tiles_x - 1);
            ty = std::clamp(ty, 0, cd.tiles_y - 1);
            mass[static_cast<std::size_t>(ty) * cd.tiles_x + tx] +=
                rho.values[g.index(i, j)] * g.cell_area();
        }

    const double amp = std::pow(beta, 2.0 * nu);  // 1 / side^2
    const double thr = cd.threshold();
    for (int ty = 0; ty < cd.tiles_y; ++ty)
        for (int tx = 0; tx < cd.tiles_x; ++tx) {
            const double v = amp * mass[static_cast<std::size_t>(ty) * cd.tiles_x + tx];
            if (v >= thr) cd.retained.push_back({tx, ty, v});
        }
    return cd;
}

namespace {

struct HatSpec {
    Vec2 center;
    double half_width = 0.0;  // tensor support |x-c| < s, |y-c| < s
};

// Integral of phi * diff over the support, Riemann sum on the grid.
double pair_with_hat(const ScalarField& diff, const HatSpec& h) {
    const Grid2D& g = diff.grid;
    const double z = 1.0 / (std::sqrt(2.0) * h.half_width);  // Lipschitz normalization
    const int i0 = std::max(0, static_cast<int>((h.center.x - h.half_width - g.origin.x) /
                                                g.spacing.x - 0.5));
    const int i1 = std::min(g.nx - 1, static_cast<int>((h.center.x + h.half_width - g.origin.x) /
                                                           g.spacing.x + 0.5));
    const int j0 = std::max(0, static_cast<int>((h.center.y - h.half_width - g.origin.y) /
                                                g.spacing.y - 0.5));
    const int j1 = std::min(g.ny - 1, static_cast<int>((h.center.y + h.half_width - g.origin.y) /
                                                           g.spacing.y + 0.5));
    double acc = 0.0;
    for (int j = j0; j <= j1; ++j)
        for (int i = i0; i <= i1; ++i) {
            const double hx = std::max(0.0, h.half_width - std::abs(g.x(i) - h.center.x));
            const double hy = std::max(0.0, h.half_width - std::abs(g.y(j) - h.center.y));
            acc += z * hx * hy * diff.values[g.index(i, j)];
        }
    return acc * g.cell_area();
}

double pair_with_cone(const ScalarField& diff, Vec2 center, double radius) {
    const Grid2D& g = diff.grid;
    double acc = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double d = std::sqrt(norm2(g.node(i, j) - center));
            if (d < radius) acc += (radius - d) * diff.values[g.index(i, j)];
        }
    return acc * g.cell_area();
}

}  // namespace

double weak_norm_distance(const ScalarField& rho1, const ScalarField& rho2, double R,
                          Vec2 center) {
    const Grid2D& g = rho1.grid;
    if (!g.same_geometry(rho2.grid))
        throw Error(ErrorKind::Contract, "weak_norm_distance: grids differ");
    if (!(R > 0.0)) throw Error(ErrorKind::Contract, "weak_norm_distance: R must be positive");
    const Vec2 lo = g.origin;
    const Vec2 hi = g.origin + g.extent();
    if (center.x - R < lo.x || center.y - R < lo.y || center.x + R > hi.x ||
        center.y + R > hi.y)
        throw Error(ErrorKind::Geometry, "weak_norm_distance: ball exceeds the grid");

    ScalarField diff(g);
    for (std::size_t p = 0; p < diff.values.size(); ++p)
        diff.values[p] = rho1.values[p] - rho2.values[p];

    double best = 0.0;
    // Radial cones vanishing on (or inside) the boundary of B_R.
    for (double s : {R, 0.5 * R, 0.25 * R})
        best = std::max(best, std::abs(pair_with_cone(diff, center, s)));

    // Tensor hats at three dyadic scales, on lattices of matching pitch,
    // kept only when the support square stays inside B_R.
    for (double s : {0.5 * R, 0.25 * R, 0.125 * R}) {
        const double reach = R - std::sqrt(2.0) * s;
        if (reach < 0.0) continue;
        const int kmax = static_cast<int>(std::floor(reach / s));
        for (int ky = -kmax; ky <= kmax; ++ky)
            for (int kx = -kmax; kx <= kmax; ++kx) {
                const Vec2 c = center + Vec2{kx * s, ky * s};
                if (std::sqrt(norm2(c - center)) > reach + 1e-15) continue;
                best = std::max(best, std::abs(pair_with_hat(diff, {c, s})));
            }
    }
    return best;
}

double support_radius(const ScalarField& rho, Vec2 center, double mass_fraction) {
    const Grid2D& g = rho.grid;
    std::vector<std::pair<double, double>> shells;  // (distance, mass)
    shells.reserve(g.size());
    double total = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double m = rho.values[g.index(i, j)] * g.cell_area();
            shells.emplace_back(std::sqrt(norm2(g.node(i, j) - center)), m);
            total += m;
        }
    if (!(total > 0.0))
        throw Error(ErrorKind::DegenerateState, "support_radius: zero-mass density");
    std::sort(shells.begin(), shells.end());
    double acc = 0.0;
    for (const auto& [d, m] : shells) {
        acc += m;
        if (acc >= mass_fraction * total) return d;
    }
    return shells.back().first;
}

LdaReport lda_compare(const ComplexField& u, double beta, const PotentialSpec& V,
                      const TFProfile& tf) {
    if (V.is_zero())
        throw Error(ErrorKind::Contract, "lda_compare: needs a trapping potential");
    if (!(beta > 0.0)) throw Error(ErrorKind::Contract, "lda_compare: beta must be positive");
    const double s = V.degree();
    const double len = std::pow(beta, 1.0 / (s + 2.0));
    const double amp = std::pow(beta, 2.0 / (s + 2.0));

    // Minimizer density in TF coordinates: the lattice shrinks by the TF
    // length, node values gain the TF amplitude.
    ScalarField scaled(u.grid);
    scaled.grid.origin = (1.0 / len) * u.grid.origin;
    scaled.grid.spacing = (1.0 / len) * u.grid.spacing;
    for (std::size_t p = 0; p < u.values.size(); ++p)
        scaled.values[p] = amp * std::norm(u.values[p]);

    const Grid2D& g = scaled.grid;
    const Vec2 lo = g.origin, hi = g.origin + g.extent();
    if (-tf.R0 < lo.x || -tf.R0 < lo.y || tf.R0 > hi.x || tf.R0 > hi.y)
        throw Error(ErrorKind::Geometry,
                    "lda_compare: TF support exceeds the computational box");

    ScalarField tf_field(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) tf_field.values[g.index(i, j)] = tf.density(g.node(i, j));

    LdaReport rep;
    rep.support_radius_tf = tf.R0;
    rep.support_radius_measured = support_radius(scaled, {0.0, 0.0});

    const double r = 0.5 * tf.R0;
    const Vec2 centers[] = {{0.0, 0.0}, {r, 0.0}, {-r, 0.0}, {0.0, r}, {0.0, -r}};
    for (const Vec2& c : centers) {
        LdaBall ball;
        ball.center = c;
        ball.radius = r;
        ball.distance = weak_norm_distance(scaled, tf_field, r, c);
        rep.balls.push_back(ball);
        rep.max_distance = std::max(rep.max_distance, ball.distance);
    }
    return rep;
}

}  // namespace af
