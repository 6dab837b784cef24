#include "af/trial.hpp"

#include <cmath>
#include <limits>

#include "af/errors.hpp"
#include "af/functional.hpp"
#include "af/kernel.hpp"

namespace af {

RadialProfile bump_profile() {
    const double c = std::sqrt(5.0 / M_PI);
    RadialProfile p;
    p.support_radius = 1.0;
    p.f = [c](double r) {
        if (r >= 1.0) return 0.0;
        const double t = 1.0 - r * r;
        return c * t * t;
    };
    return p;
}

std::vector<Vec2> vortex_lattice_centers(int n, const Grid2D& domain) {
    const int m = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    const Vec2 ext = domain.extent();
    const double sx = ext.x / m, sy = ext.y / m;
    std::vector<Vec2> centers;
    centers.reserve(n);
    for (int j = 0; j < m && static_cast<int>(centers.size()) < n; ++j)
        for (int i = 0; i < m && static_cast<int>(centers.size()) < n; ++i)
            centers.push_back({domain.origin.x + (i + 0.5) * sx, domain.origin.y + (j + 0.5) * sy});
    return centers;
}

ComplexField vortex_lattice_trial(const Grid2D& domain, double beta, const RadialProfile& f) {
    const int n = static_cast<int>(std::floor(beta));
    if (n < 1) throw Error(ErrorKind::Contract, "vortex_lattice_trial: beta must be >= 1");
    const double ball_r = 1.0 / std::sqrt(beta);
    const auto centers = vortex_lattice_centers(n, domain);

    // Packing: pairwise-disjoint balls (tangency allowed, f vanishes at the
    // edge) contained in the domain.
    const double tol = 1e-12;
    for (std::size_t a = 0; a < centers.size(); ++a) {
        const Vec2 c = centers[a];
        if (c.x - ball_r < domain.origin.x - tol || c.y - ball_r < domain.origin.y - tol ||
            c.x + ball_r > domain.origin.x + domain.extent().x + tol ||
            c.y + ball_r > domain.origin.y + domain.extent().y + tol)
            throw Error(ErrorKind::Geometry,
                        "vortex_lattice_trial: balls of radius 1/sqrt(beta) do not fit in the "
                        "domain; enlarge it");
        for (std::size_t b = a + 1; b < centers.size(); ++b)
            if (std::sqrt(norm2(centers[b] - c)) < 2.0 * ball_r * (1.0 - 1e-12))
                throw Error(ErrorKind::Geometry,
                            "vortex_lattice_trial: lattice spacing does not separate the balls");
    }

    const double scale = std::sqrt(beta);
    ComplexField u(domain);
    for (int j = 0; j < domain.ny; ++j) {
        for (int i = 0; i < domain.nx; ++i) {
            const Vec2 r = domain.node(i, j);
            int owner = -1;
            double best = ball_r;
            for (std::size_t k = 0; k < centers.size(); ++k) {
                const double d = std::sqrt(norm2(r - centers[k]));
                if (d < best) {
                    best = d;
                    owner = static_cast<int>(k);
                }
            }
            if (owner < 0) continue;
            const double amp = f.f(scale * best);
            if (amp == 0.0) continue;
            // Summed angle functions, not a complex product: stable for many
            // vortices.
            double phase = 0.0;
            for (std::size_t k = 0; k < centers.size(); ++k) {
                if (static_cast<int>(k) == owner) continue;
                const Vec2 d = r - centers[k];
                phase -= std::atan2(d.y, d.x);
            }
            u.values[domain.index(i, j)] = std::polar(amp, phase);
        }
    }
    apply_boundary_mask(u);
    return normalize(u);
}

double single_ball_energy(const RadialProfile& f, int cells_across) {
    if (cells_across < 8)
        throw Error(ErrorKind::Contract, "single_ball_energy: need >= 8 cells across the ball");
    // The integrand lives on supp f; a small margin around the unit ball is
    // enough since the convolution itself is free-space.
    const double L = 2.2;
    const int n = std::max(16, static_cast<int>(std::lround(cells_across * L / 2.0)));
    Grid2D g = make_grid_centered({L, L}, n, n, BoundaryCondition::Free);
    ComplexField uf(g);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const Vec2 r = g.node(i, j);
            uf.values[g.index(i, j)] = f.f(std::sqrt(norm2(r)));
        }
    uf = normalize(uf);
    KernelTable k(g);
    return energy(uf, 1.0, PotentialSpec::zero(), k).total;
}

FactorizationCheck factorization_check(const ComplexField& u, double beta,
                                       const RadialProfile& f) {
    FactorizationCheck out;
    out.n_balls = static_cast<int>(std::floor(beta));
    KernelTable k(u.grid);
    out.lhs = energy(u, beta, PotentialSpec::zero(), k).total;
    const double ball_diam = 2.0 / std::sqrt(beta);
    out.ball_cells = static_cast<int>(std::lround(ball_diam / u.grid.spacing.x));
    out.rhs = out.n_balls * single_ball_energy(f, out.ball_cells);
    out.rel_error = std::abs(out.lhs - out.rhs) / std::abs(out.rhs);
    return out;
}

}  // namespace af
