#include <doctest.h>

#include <cmath>

#include "af/diagnostics.hpp"
#include "af/errors.hpp"
#include "af/minimize.hpp"
#include "af/synthetic.hpp"
#include "af/tf.hpp"
#include "helpers.hpp"

using namespace af;
using aftest::field_from;

TEST_CASE("vortex detection") {
    Grid2D g = make_grid_centered({2.0, 2.0}, 64, 64, BoundaryCondition::Free);

    // single central vortex of winding +1
    ComplexField v1 = field_from(g, [](double x, double y) {
        const double r = std::hypot(x, y);
        return std::polar(std::tanh(3.0 * r), std::atan2(y, x));
    });
    auto rec = detect_vortices(v1);
    REQUIRE(rec.size() == 1);
    CHECK(rec[0].winding == 1);
    CHECK(std::abs(rec[0].position.x) < 2.1 * g.spacing.x);
    CHECK(std::abs(rec[0].position.y) < 2.1 * g.spacing.y);

    // constant state: no vortices
    ComplexField c(g);
    for (auto& z : c.values) z = 1.0;
    CHECK(detect_vortices(c).empty());

    // doubly quantized
    ComplexField v2 = field_from(g, [](double x, double y) {
        const double r = std::hypot(x, y);
        return std::polar(std::tanh(3.0 * r), -2.0 * std::atan2(y, x));
    });
    auto rec2 = detect_vortices(v2);
    REQUIRE(rec2.size() == 1);
    CHECK(rec2[0].winding == -2);

    // a high floor suppresses detection
    CHECK(detect_vortices(v1, 10.0).empty());
}

TEST_CASE("coarse graining") {
    Grid2D g = make_grid({1.0, 1.0}, 64, 64, BoundaryCondition::Free);
    ScalarField flat(g);
    for (auto& v : flat.values) v = 1.0;

    // beta = 16, nu = 1/4: tile side 1/2 divides the square exactly
    CoarseDensity cd = coarse_grain(flat, 16.0, 0.25, 0.25);
    CHECK(cd.tiles_x == 2);
    CHECK(cd.tiles_y == 2);
    REQUIRE(cd.retained.size() == 4);
    for (const auto& cell : cd.retained) CHECK(cell.value == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(cd.retained_mass() == doctest::Approx(1.0).epsilon(1e-12));

    // preconditions
    CHECK_THROWS_AS(coarse_grain(flat, 16.0, 0.6, 0.1), Error);
    try {
        coarse_grain(flat, 16.0, 0.6, 0.1);
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("0 < nu < 1/2") != std::string::npos);
    }
    CHECK_THROWS_AS(coarse_grain(flat, 16.0, 0.25, 0.6), Error);
    // tile side under-resolved: huge beta shrinks tiles below 2 cells
    CHECK_THROWS_AS(coarse_grain(flat, 1e9, 0.45, 0.05), Error);

    // mass bookkeeping on a smooth density: bounded by 1, converging to the
    // full mass as the threshold admits everything
    ScalarField rho = density(smooth_random_state(g, 12));
    CoarseDensity strict = coarse_grain(rho, 16.0, 0.25, 0.25);
    CHECK(strict.retained_mass() <= 1.0 + 1e-12);
    CoarseDensity lax = coarse_grain(rho, 16.0, 0.25, 1e-6);
    CHECK(lax.retained_mass() >= strict.retained_mass());
    CHECK(lax.retained_mass() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("weak norm distance: seminorm structure") {
    Grid2D g = make_grid_centered({2.0, 2.0}, 96, 96, BoundaryCondition::Free);
    ScalarField a = density(smooth_random_state(g, 31));
    ScalarField b = density(smooth_random_state(g, 32));
    ScalarField c = density(smooth_random_state(g, 33));
    const double R = 0.8;

    CHECK(weak_norm_distance(a, a, R, {0, 0}) == 0.0);
    CHECK(weak_norm_distance(a, b, R, {0, 0}) ==
          doctest::Approx(weak_norm_distance(b, a, R, {0, 0})).epsilon(1e-13));
    CHECK(weak_norm_distance(a, c, R, {0, 0}) <=
          weak_norm_distance(a, b, R, {0, 0}) + weak_norm_distance(b, c, R, {0, 0}) + 1e-13);

    // constant offset: |c| times the dictionary maximum, by linearity
    ScalarField zero(g);
    ScalarField one(g);
    for (auto& v : one.values) v = 1.0;
    const double base = weak_norm_distance(one, zero, R, {0, 0});
    CHECK(base > 0.0);
    ScalarField shifted = a;
    for (auto& v : shifted.values) v += 0.37;
    CHECK(weak_norm_distance(shifted, a, R, {0, 0}) ==
          doctest::Approx(0.37 * base).epsilon(1e-12));

    // ball outside the grid
    CHECK_THROWS_AS(weak_norm_distance(a, b, 5.0, {0, 0}), Error);
}

TEST_CASE("weak norm damps zero-mean high-frequency noise") {
    Grid2D g = make_grid_centered({2.0, 2.0}, 128, 128, BoundaryCondition::Free);
    ScalarField base(g);
    const double R = 0.8, amp = 0.1;
    for (double ell : {0.25, 0.125}) {
        ScalarField noisy(g);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                noisy.at(i, j) = amp * std::sin(2.0 * M_PI * g.x(i) / ell) *
                                 std::sin(2.0 * M_PI * g.y(j) / ell);
        const double weak = weak_norm_distance(noisy, base, R, {0, 0});
        // L2 size of the perturbation over the ball is ~ amp/2 * sqrt(area)
        const double l2 = 0.5 * amp * std::sqrt(M_PI) * R;
        CHECK(weak < 0.2 * l2);
        CHECK(weak < 2.0 * amp * ell);  // O(amp * wavelength) scale
    }
}

TEST_CASE("weak norm reflection invariance") {
    Grid2D g = make_grid_centered({2.0, 2.0}, 64, 64, BoundaryCondition::Free);
    ScalarField rho = density(smooth_random_state(g, 55));
    ScalarField refl(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            refl.at(i, j) = rho.at(g.nx - 1 - i, g.ny - 1 - j);
    ScalarField cst(g);
    for (auto& v : cst.values) v = 0.5;
    const double R = 0.7;
    CHECK(weak_norm_distance(rho, cst, R, {0, 0}) ==
          doctest::Approx(weak_norm_distance(refl, cst, R, {0, 0})).epsilon(1e-12));
}

TEST_CASE("support radius of the TF profile") {
    const double e11 = 2.0 * M_PI;
    TFProfile tf = tf_minimizer(PotentialSpec::harmonic(1.0, 1.0), e11);
    Grid2D g = make_grid_centered({3.0 * tf.R0, 3.0 * tf.R0}, 192, 192,
                                  BoundaryCondition::Free);
    ScalarField rho(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) rho.at(i, j) = tf.density(g.node(i, j));

    // for the harmonic TF profile the 0.99-mass radius is sqrt(0.9) R0
    const double r99 = support_radius(rho, {0, 0}, 0.99);
    CHECK(r99 == doctest::Approx(std::sqrt(0.9) * tf.R0).epsilon(0.02));
}

TEST_CASE("lda_compare on the TF-shaped state itself") {
    const double e11 = 2.0 * M_PI;
    const PotentialSpec V = PotentialSpec::harmonic(1.0, 1.0);
    TFProfile tf = tf_minimizer(V, e11);
    const double beta = 1.0;

    Grid2D g = make_grid_centered({3.0 * tf_support_radius(tf, beta),
                                   3.0 * tf_support_radius(tf, beta)},
                                  128, 128, BoundaryCondition::Free);
    ComplexField u = field_from(g, [&](double x, double y) {
        return Complex{std::sqrt(tf.density({x, y})), 0.0};
    });
    u = normalize(u);

    LdaReport rep = lda_compare(u, beta, V, tf);
    REQUIRE(rep.balls.size() == 5);
    CHECK(rep.max_distance < 5e-3);  // discretization floor
    CHECK(std::abs(rep.support_radius_measured / rep.support_radius_tf - 1.0) < 0.1);

    // box too small for the TF support
    Grid2D tiny = make_grid_centered({0.5 * tf.R0, 0.5 * tf.R0}, 32, 32,
                                     BoundaryCondition::Free);
    ComplexField ut(tiny);
    for (auto& v : ut.values) v = 1.0;
    CHECK_THROWS_AS(lda_compare(normalize(ut), beta, V, tf), Error);
}
