#include <doctest.h>

#include <cmath>
#include <random>

#include "af/errors.hpp"
#include "af/synthetic.hpp"
#include "af/tf.hpp"
#include "helpers.hpp"

using namespace af;
using aftest::radial_integral;

namespace {

// Radial quadrature oracle for V = |r|^s: solves the TF normalization by
// bisection on a Simpson mass function, independent of the library's
// closed-form route.
struct RadialOracle {
    double s, e11;
    double lambda = 0.0, energy = 0.0, l2sq = 0.0;

    RadialOracle(double s_, double e11_) : s(s_), e11(e11_) {
        auto mass = [&](double lam) {
            const double R = std::pow(lam, 1.0 / s);
            return radial_integral(
                       [&](double r) { return lam - std::pow(r, s); }, R, 4000) /
                   (2.0 * e11);
        };
        double lo = 0.0, hi = 1.0;
        while (mass(hi) < 1.0) hi *= 2.0;
        for (int i = 0; i < 100; ++i) {
            const double mid = 0.5 * (lo + hi);
            (mass(mid) < 1.0 ? lo : hi) = mid;
        }
        lambda = 0.5 * (lo + hi);
        const double R = std::pow(lambda, 1.0 / s);
        auto rho = [&](double r) {
            return std::max(0.0, lambda - std::pow(r, s)) / (2.0 * e11);
        };
        l2sq = radial_integral([&](double r) { return rho(r) * rho(r); }, R, 4000);
        const double vrho =
            radial_integral([&](double r) { return std::pow(r, s) * rho(r); }, R, 4000);
        energy = e11 * l2sq + vrho;
    }
};

}  // namespace

TEST_CASE("TF minimizer matches the radial quadrature oracle") {
    const double e11 = 2.0 * M_PI;
    TFProfile tf = tf_minimizer(PotentialSpec::power(2.0), e11);
    RadialOracle oracle(2.0, e11);

    CHECK(std::abs(tf.lambda - oracle.lambda) / oracle.lambda < 1e-9);
    CHECK(std::abs(tf.energy1 - oracle.energy) / oracle.energy < 1e-9);

    // closed forms for the harmonic trap: lambda = 2 sqrt(2), E = lambda^3/12
    CHECK(tf.lambda == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-9));
    CHECK(tf.energy1 ==
          doctest::Approx(std::pow(2.0 * std::sqrt(2.0), 3.0) / 12.0).epsilon(1e-9));
    CHECK(tf.R0 == doctest::Approx(std::sqrt(tf.lambda)).epsilon(1e-9));

    // same trap expressed as the harmonic kind
    TFProfile tfh = tf_minimizer(PotentialSpec::harmonic(1.0, 1.0), e11);
    CHECK(tfh.lambda == doctest::Approx(tf.lambda).epsilon(1e-10));
    CHECK(tfh.energy1 == doctest::Approx(tf.energy1).epsilon(1e-10));

    // a non-harmonic degree, still against the oracle
    TFProfile tf4 = tf_minimizer(PotentialSpec::power(4.0), 3.0);
    RadialOracle oracle4(4.0, 3.0);
    CHECK(std::abs(tf4.lambda - oracle4.lambda) / oracle4.lambda < 1e-8);
    CHECK(std::abs(tf4.energy1 - oracle4.energy) / oracle4.energy < 1e-8);
}

TEST_CASE("TF profile invariants: mass, positivity, chemical potential") {
    for (auto [V, e11] : {std::pair{PotentialSpec::harmonic(1.0, 2.0), 2.0 * M_PI},
                          std::pair{PotentialSpec::harmonic(0.5, 0.5), 4.0},
                          std::pair{PotentialSpec::power(3.0), 1.5}}) {
        TFProfile tf = tf_minimizer(V, e11);

        // unit mass by 2D Riemann quadrature over the support box
        const int n = 2000;
        const double L = 1.05 * tf.R0;
        const double h = 2.0 * L / n;
        double mass = 0.0;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                mass += tf.density({-L + (i + 0.5) * h, -L + (j + 0.5) * h});
        mass *= h * h;
        CHECK(mass == doctest::Approx(1.0).epsilon(2e-6));

        // nonnegative, vanishing outside the support bound
        CHECK(tf.density({0.0, 0.0}) > 0.0);
        CHECK(tf.density({1.01 * tf.R0, 0.0}) == 0.0);
        CHECK(tf.density({0.0, -1.2 * tf.R0}) == 0.0);

        // lambda = E + e11 ||rho||_2^2
        CHECK(std::abs(tf.lambda - (tf.energy1 + e11 * tf.l2sq)) / tf.lambda < 1e-10);
    }
}

TEST_CASE("tf_energy profile and grid variants") {
    const double e11 = 2.0 * M_PI;
    TFProfile tf = tf_minimizer(PotentialSpec::power(2.0), e11);
    CHECK(tf_energy(tf, 1.0) == doctest::Approx(tf.energy1).epsilon(1e-12));

    // beta = 0 leaves only the potential term
    const double vrho = tf.energy1 - e11 * tf.l2sq;
    CHECK(tf_energy(tf, 0.0) == doctest::Approx(vrho).epsilon(1e-12));

    // constant density on the unit square: 2 pi beta
    Grid2D g = make_grid({1.0, 1.0}, 32, 32, BoundaryCondition::Free);
    ScalarField rho(g);
    for (auto& v : rho.values) v = 1.0;
    CHECK(tf_energy(rho, 3.0, PotentialSpec::zero(), e11) ==
          doctest::Approx(2.0 * M_PI * 3.0).epsilon(1e-12));

    ScalarField bad = rho;
    for (auto& v : bad.values) v = 2.0;
    CHECK_THROWS_AS(tf_energy(bad, 1.0, PotentialSpec::zero(), e11), Error);
}

TEST_CASE("TF minimality among random normalized densities") {
    const double e11 = 2.0 * M_PI;
    const PotentialSpec V = PotentialSpec::harmonic(1.0, 1.0);
    TFProfile tf = tf_minimizer(V, e11);

    Grid2D g = make_grid_centered({2.5 * tf.R0, 2.5 * tf.R0}, 96, 96, BoundaryCondition::Free);
    std::mt19937_64 gen(2024);
    for (int t = 0; t < 100; ++t) {
        ScalarField rho = density(smooth_random_state(g, gen()));
        double mass = 0.0;
        for (double v : rho.values) mass += v;
        mass *= g.cell_area();
        for (auto& v : rho.values) v /= mass;
        const double e_trial = tf_energy(rho, 1.0, V, e11);
        CHECK(tf.energy1 <= e_trial + 1e-9);
    }
}

TEST_CASE("beta scaling of energy and density") {
    const double e11 = 2.0 * M_PI;
    const PotentialSpec V = PotentialSpec::power(2.0);
    TFProfile tf = tf_minimizer(V, e11);

    CHECK(tf_scale(tf.energy1, 1.0, 2.0) == doctest::Approx(tf.energy1));
    CHECK(tf_scale(1.0, 16.0, 2.0) == doctest::Approx(4.0).epsilon(1e-13));

    // scaled density stays normalized and supported in the scaled ball
    for (double beta : {4.0, 25.0}) {
        auto rho_b = tf_scale_density(tf, beta);
        const double R = tf_support_radius(tf, beta);
        const int n = 1500;
        const double L = 1.02 * R, h = 2.0 * L / n;
        double mass = 0.0;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                mass += rho_b({-L + (i + 0.5) * h, -L + (j + 0.5) * h});
        mass *= h * h;
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-5));
        CHECK(rho_b({1.01 * R, 0.0}) == 0.0);

        // scaling consistency of the energy functional value
        const double scaled = tf_scale(tf.energy1, beta, tf.s);
        CHECK(scaled / std::pow(beta, tf.s / (tf.s + 2.0)) ==
              doctest::Approx(tf.energy1).epsilon(1e-9));
    }
}

TEST_CASE("homogeneous energy function") {
    CHECK(homogeneous_energy(1.0, 1.0, 5.0) == doctest::Approx(5.0));
    // e(gamma, |Omega|^{-1/2}) = gamma |Omega|^{-1} e(1,1)
    const double area = 3.0, gamma = 2.0, e11 = 7.0;
    CHECK(homogeneous_energy(gamma, 1.0 / std::sqrt(area), e11) ==
          doctest::Approx(gamma / area * e11).epsilon(1e-14));
    // doubling the density quadruples the energy density
    CHECK(homogeneous_energy(1.0, 2.0, e11) == doctest::Approx(4.0 * e11));
    CHECK_THROWS_AS(homogeneous_energy(-1.0, 1.0, 1.0), Error);
}

TEST_CASE("tf error paths") {
    CHECK_THROWS_AS(tf_minimizer(PotentialSpec::zero(), 2.0 * M_PI), Error);
    CHECK_THROWS_AS(tf_minimizer(PotentialSpec::power(2.0), 0.0), Error);
    CHECK_THROWS_AS(tf_scale(1.0, 0.0, 2.0), Error);
}
