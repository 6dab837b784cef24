#include <doctest.h>

#include <cmath>

#include "af/errors.hpp"
#include "af/functional.hpp"
#include "af/kernel.hpp"
#include "af/trial.hpp"
#include "helpers.hpp"

using namespace af;
using aftest::contour_winding;
using aftest::radial_integral;

namespace {

Grid2D trial_domain(double beta, int n) {
    const int m = static_cast<int>(std::ceil(std::sqrt(std::floor(beta))));
    const double L = 2.0 * m / std::sqrt(beta) * (1.0 + 4.0 / n);
    return make_grid({L, L}, n, n, BoundaryCondition::Free);
}

}  // namespace

TEST_CASE("bump profile: support edge, normalization, amplitude") {
    RadialProfile f = bump_profile();
    CHECK(f.f(1.0) == 0.0);
    CHECK(f.f(1.5) == 0.0);
    // C^1 at the edge: (f(1) - f(1-h))/h -> 0
    CHECK(std::abs((f.f(1.0) - f.f(1.0 - 1e-6)) / 1e-6) < 1e-4);

    // ||f||_2^2 = int f^2 2 pi r dr = 1 by radial quadrature oracle
    const double n2 = radial_integral([&](double r) { return f.f(r) * f.f(r); }, 1.0);
    CHECK(std::abs(std::sqrt(n2) - 1.0) < 1e-10);

    // amplitude against the oracle for int (1-r^2)^4 2 pi r dr
    const double i0 = radial_integral(
        [](double r) { return std::pow(1.0 - r * r, 4.0); }, 1.0);
    CHECK(f.f(0.0) == doctest::Approx(1.0 / std::sqrt(i0)).epsilon(1e-10));
}

TEST_CASE("lattice centers and packing validation") {
    Grid2D g = make_grid({2.0, 2.0}, 64, 64, BoundaryCondition::Free);
    auto c = vortex_lattice_centers(4, g);
    REQUIRE(c.size() == 4);
    CHECK(c[0].x == doctest::Approx(0.5));
    CHECK(c[0].y == doctest::Approx(0.5));
    CHECK(c[3].x == doctest::Approx(1.5));
    CHECK(c[3].y == doctest::Approx(1.5));

    // radius-1/sqrt(beta) balls do not fit on the unit square
    Grid2D unit = make_grid({1.0, 1.0}, 64, 64, BoundaryCondition::Free);
    CHECK_THROWS_AS(vortex_lattice_trial(unit, 4.0, bump_profile()), Error);
    try {
        vortex_lattice_trial(unit, 4.0, bump_profile());
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Geometry);
    }
}

TEST_CASE("trial state: disjoint bumps, masses, single-bump case") {
    const double beta = 4.0;
    Grid2D g = trial_domain(beta, 128);
    RadialProfile f = bump_profile();
    ComplexField u = vortex_lattice_trial(g, beta, f);
    CHECK(l2_norm(u) == doctest::Approx(1.0).epsilon(1e-12));

    const auto centers = vortex_lattice_centers(4, g);
    const double rb = 1.0 / std::sqrt(beta);
    ScalarField rho = density(u);
    double outside = 0.0;
    std::vector<double> mass(centers.size(), 0.0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const Vec2 r = g.node(i, j);
            bool inside_any = false;
            for (std::size_t k = 0; k < centers.size(); ++k)
                if (norm2(r - centers[k]) < rb * rb) {
                    mass[k] += rho.at(i, j) * g.cell_area();
                    inside_any = true;
                    break;
                }
            if (!inside_any) outside = std::max(outside, rho.at(i, j));
        }
    CHECK(outside == 0.0);  // supports are exactly the balls
    for (double m : mass) CHECK(m == doctest::Approx(0.25).epsilon(1e-3));

    // beta = 1: a single bump with no phase factor
    Grid2D g1 = trial_domain(1.0, 64);
    ComplexField u1 = vortex_lattice_trial(g1, 1.0, f);
    for (const auto& v : u1.values) CHECK(std::abs(v.imag()) < 1e-14);
}

TEST_CASE("per-bump phase winds by -(N-1) around the other centers") {
    const double beta = 9.0;
    const int n = 96;
    Grid2D g = trial_domain(beta, n);
    const auto centers = vortex_lattice_centers(9, g);

    // phase factor attached to bump k, evaluated as a pure-phase field
    const int k = 4;  // middle bump
    ComplexField phase(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double ph = 0.0;
            for (std::size_t m = 0; m < centers.size(); ++m) {
                if (static_cast<int>(m) == k) continue;
                const Vec2 d = g.node(i, j) - centers[m];
                ph -= std::atan2(d.y, d.x);
            }
            phase.values[g.index(i, j)] = std::polar(1.0, ph);
        }
    // contour enclosing all other centers
    CHECK(contour_winding(phase, 1, 1, n - 2, n - 2) == -8);
    // small contour around the bump's own center: no singularity there
    const int ci = static_cast<int>((centers[k].x - g.origin.x) / g.spacing.x);
    const int cj = static_cast<int>((centers[k].y - g.origin.y) / g.spacing.y);
    CHECK(contour_winding(phase, ci - 2, cj - 2, ci + 2, cj + 2) == 0);
}

TEST_CASE("exterior Newton identity for one bump") {
    const double beta = 4.0;
    Grid2D g = trial_domain(beta, 160);
    RadialProfile f = bump_profile();
    const auto centers = vortex_lattice_centers(4, g);
    const double rb = 1.0 / std::sqrt(beta);

    // one bump of mass 1/beta at centers[0]
    ComplexField u1(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double d = std::sqrt(norm2(g.node(i, j) - centers[0]));
            u1.values[g.index(i, j)] = f.f(std::sqrt(beta) * d) / std::sqrt(beta);
        }
    KernelTable k(g);
    VectorField A = k.vector_potential(density(u1));

    double worst = 0.0;
    for (int j = 2; j < g.ny - 2; j += 7)
        for (int i = 2; i < g.nx - 2; i += 7) {
            const Vec2 r = g.node(i, j);
            const double d = std::sqrt(norm2(r - centers[0]));
            if (d < 2.0 * rb) continue;
            const Vec2 want = exterior_field(1.0 / beta, centers[0], r);
            const Vec2 got = A.at(i, j);
            worst = std::max(worst, std::sqrt(norm2(got - want) / norm2(want)));
        }
    CHECK(worst < 1e-3);
}

TEST_CASE("bump scaling identity for the vector potential") {
    // A[|u_j|^2](r) = beta^{-1/2} A[|f|^2](sqrt(beta)(r - r_j)) holds exactly
    // at matched nodes because kernel offsets rescale linearly.
    const double beta = 4.0;
    Grid2D g = make_grid_centered({3.0, 3.0}, 64, 64, BoundaryCondition::Free);
    RadialProfile f = bump_profile();

    ComplexField uj(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            uj.values[g.index(i, j)] =
                f.f(std::sqrt(beta) * std::sqrt(norm2(g.node(i, j)))) / std::sqrt(beta);
    KernelTable k(g);
    VectorField A = k.vector_potential(density(uj));

    Grid2D gs = g;
    gs.origin = std::sqrt(beta) * g.origin;
    gs.spacing = std::sqrt(beta) * g.spacing;
    ComplexField fs(gs);
    for (int j = 0; j < gs.ny; ++j)
        for (int i = 0; i < gs.nx; ++i)
            fs.values[gs.index(i, j)] = f.f(std::sqrt(norm2(gs.node(i, j))));
    KernelTable ks(gs);
    VectorField Af = ks.vector_potential(density(fs));

    double err = 0.0, scale = 0.0;
    const double amp = 1.0 / std::sqrt(beta);
    for (std::size_t p = 0; p < A.x.size(); ++p) {
        err = std::max({err, std::abs(A.x[p] - amp * Af.x[p]),
                        std::abs(A.y[p] - amp * Af.y[p])});
        scale = std::max({scale, std::abs(A.x[p]), std::abs(A.y[p])});
    }
    CHECK(err / scale < 1e-12);
}

TEST_CASE("energy factorization against the matched-resolution ball grid") {
    RadialProfile f = bump_profile();

    // beta = 4 with ~78 cells across each ball
    Grid2D g = trial_domain(4.0, 160);
    ComplexField u = vortex_lattice_trial(g, 4.0, f);
    FactorizationCheck c = factorization_check(u, 4.0, f);
    CHECK(c.n_balls == 4);
    CHECK(c.ball_cells >= 64);
    CHECK(c.rel_error < 2e-2);

    // beta = 1: same integral on both sides up to the grids
    Grid2D g1 = trial_domain(1.0, 96);
    ComplexField u1 = vortex_lattice_trial(g1, 1.0, f);
    FactorizationCheck c1 = factorization_check(u1, 1.0, f);
    CHECK(c1.rel_error < 2e-2);

    // energy/beta roughly constant between beta = 4 and beta = 9
    Grid2D g9 = trial_domain(9.0, 192);
    ComplexField u9 = vortex_lattice_trial(g9, 9.0, f);
    KernelTable k4(g), k9(g9);
    const double e4 = energy(u, 4.0, PotentialSpec::zero(), k4).total;
    const double e9 = energy(u9, 9.0, PotentialSpec::zero(), k9).total;
    CHECK(std::abs(e4 / 4.0 - e9 / 9.0) / (e9 / 9.0) < 0.05);
}

TEST_CASE("factorization error shrinks under refinement") {
    RadialProfile f = bump_profile();
    double errs[2];
    int idx = 0;
    for (int n : {48, 96}) {
        Grid2D g = trial_domain(4.0, n);
        ComplexField u = vortex_lattice_trial(g, 4.0, f);
        errs[idx++] = factorization_check(u, 4.0, f).rel_error;
    }
    CHECK(errs[1] < errs[0]);
}
