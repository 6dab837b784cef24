#include "af/synthetic.hpp"

#include <cmath>
#include <random>

namespace af {

ComplexField smooth_random_state(const Grid2D& grid, std::uint64_t seed, int n_modes) {
    std::mt19937_64 gen(seed);
    auto uniform = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };

    const Vec2 ext = grid.extent();
    const double L = std::min(ext.x, ext.y);

    struct Mode {
        Vec2 center;
        double sigma;
        double amp_re, amp_im;
        Vec2 k;
    };
    std::vector<Mode> modes(n_modes);
    for (auto& m : modes) {
        m.center = {grid.origin.x + uniform() * ext.x, grid.origin.y + uniform() * ext.y};
        m.sigma = L * (0.08 + 0.12 * uniform());
        const double a = 0.2 + 0.8 * uniform();
        const double ph = 2.0 * M_PI * uniform();
        m.amp_re = a * std::cos(ph);
        m.amp_im = a * std::sin(ph);
        // at most ~3 wavelengths across the box: smooth at any tested grid
        const double kmax = 6.0 * M_PI / L;
        m.k = {kmax * (2.0 * uniform() - 1.0), kmax * (2.0 * uniform() - 1.0)};
    }

    const bool dirichlet = grid.bc == BoundaryCondition::Dirichlet;
    // Envelope vanishing at the mask-ring cell centers keeps Dirichlet states
    // smooth up to the hard zero.
    const double ex0 = grid.origin.x + 0.5 * grid.spacing.x;
    const double ey0 = grid.origin.y + 0.5 * grid.spacing.y;
    const double elx = ext.x - grid.spacing.x;
    const double ely = ext.y - grid.spacing.y;

    ComplexField u(grid);
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const Vec2 r = grid.node(i, j);
            Complex v{1.0, 0.0};
            for (const auto& m : modes) {
                const double d2 = norm2(r - m.center);
                const double env = std::exp(-0.5 * d2 / (m.sigma * m.sigma));
                const double ph = m.k.x * r.x + m.k.y * r.y;
                v += Complex{m.amp_re, m.amp_im} * env * Complex{std::cos(ph), std::sin(ph)};
            }
            if (dirichlet)
                v *= std::sin(M_PI * (r.x - ex0) / elx) * std::sin(M_PI * (r.y - ey0) / ely);
            u.values[grid.index(i, j)] = v;
        }
    }
    apply_boundary_mask(u);
    return normalize(u);
}

}  // namespace af
