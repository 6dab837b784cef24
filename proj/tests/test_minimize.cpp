#include <doctest.h>

#include <cmath>

#include "af/diagnostics.hpp"
#include "af/errors.hpp"
#include "af/minimize.hpp"
#include "helpers.hpp"

using namespace af;

TEST_CASE("init_state strategies") {
    Grid2D g = make_grid({1.0, 1.0}, 48, 48, BoundaryCondition::Neumann);

    ComplexField c = init_state(g, InitStrategy::Constant, 0.0, 1);
    for (const auto& v : c.values) CHECK(v == Complex{1.0, 0.0});

    // determinism: same seed, same bits
    ComplexField r1 = init_state(g, InitStrategy::RandomPhase, 1.0, 42);
    ComplexField r2 = init_state(g, InitStrategy::RandomPhase, 1.0, 42);
    for (std::size_t p = 0; p < r1.values.size(); ++p) CHECK(r1.values[p] == r2.values[p]);
    ComplexField r3 = init_state(g, InitStrategy::RandomPhase, 1.0, 43);
    bool differs = false;
    for (std::size_t p = 0; p < r1.values.size(); ++p)
        differs = differs || r1.values[p] != r3.values[p];
    CHECK(differs);

    // vortex-seeded beta = 9: nine singly quantized singularities, winding -1
    ComplexField vs = init_state(g, InitStrategy::VortexSeeded, 9.0, 1);
    auto records = detect_vortices(vs);
    CHECK(records.size() == 9);
    for (const auto& rec : records) CHECK(rec.winding == -1);
    CHECK(total_winding(records) == -9);
}

TEST_CASE("settings validation") {
    MinimizeSettings s;
    s.shrink = 1.5;
    CHECK_THROWS_AS(s.validate(), Error);
    s = MinimizeSettings{};
    s.tol_energy = 0.0;
    CHECK_THROWS_AS(s.validate(), Error);
    s = MinimizeSettings{};
    s.max_iterations = 0;
    CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("beta=0 Neumann: the constant state is the exact minimizer") {
    Grid2D g = make_grid({1.0, 1.0}, 32, 32, BoundaryCondition::Neumann);
    KernelTable k(g);
    MinimizeSettings s;
    s.init = InitStrategy::Constant;
    auto [u, rep] = minimize(init_state(g, InitStrategy::Constant, 0.0, 1), 0.0,
                             PotentialSpec::zero(), k, s);
    CHECK(rep.final_energy.total <= 1e-8);
    CHECK(rep.converged);
    CHECK(l2_norm(u) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("beta=0 Dirichlet: ground Laplacian mode") {
    Grid2D g = make_grid({1.0, 1.0}, 64, 64, BoundaryCondition::Dirichlet);
    KernelTable k(g);
    MinimizeSettings s;
    s.init = InitStrategy::Constant;
    s.max_iterations = 4000;
    auto [u, rep] = minimize(init_state(g, InitStrategy::Constant, 0.0, 1), 0.0,
                             PotentialSpec::zero(), k, s);
    CHECK(rep.converged);
    CHECK(std::abs(rep.final_energy.total - 2.0 * M_PI * M_PI) / (2.0 * M_PI * M_PI) < 0.05);

    // trace is non-increasing
    for (std::size_t t = 1; t < rep.energy_trace.size(); ++t)
        CHECK(rep.energy_trace[t] <= rep.energy_trace[t - 1] + 1e-12);

    // residual definition: || masked el - mu u || / max(1, |mu|)
    ComplexField el = el_apply(u, 0.0, PotentialSpec::zero(), k);
    apply_boundary_mask(el);
    const double mu = aftest::inner_real(u, el);
    ComplexField r = el;
    for (std::size_t p = 0; p < r.values.size(); ++p) r.values[p] -= mu * u.values[p];
    CHECK(l2_norm(r) / std::max(1.0, std::abs(mu)) ==
          doctest::Approx(rep.residual).epsilon(1e-6));
    CHECK(rep.mu == doctest::Approx(rep.final_energy.total).epsilon(1e-9));
}

TEST_CASE("magnetic run respects bounds and beats the Neumann value") {
    const double beta = 12.0;
    MinimizeSettings s;
    s.max_iterations = 3000;
    s.tol_residual = 1e-4;

    Grid2D gd = make_grid({1.0, 1.0}, 64, 64, BoundaryCondition::Dirichlet);
    KernelTable kd(gd);
    auto [ud, repd] = minimize_multistart(gd, beta, PotentialSpec::zero(), kd, s);

    Grid2D gn = make_grid({1.0, 1.0}, 64, 64, BoundaryCondition::Neumann);
    KernelTable kn(gn);
    auto [un, repn] = minimize_multistart(gn, beta, PotentialSpec::zero(), kn, s);

    // Dirichlet dominates Neumann; Dirichlet satisfies the magnetic bound
    CHECK(repn.final_energy.total <= repd.final_energy.total);
    CHECK(repd.final_energy.total / beta >= 2.0 * M_PI * (1.0 - 1e-9));
    LowerBounds lb = lower_bounds(ud, beta, true);
    CHECK(*lb.magnetic <= repd.final_energy.kinetic_magnetic() * (1.0 + 1e-9));
    CHECK(lb.diamagnetic <= repd.final_energy.kinetic_magnetic() * (1.0 + 1e-12));

    // a converged magnetic minimizer carries vortices
    CHECK(repd.vortex_count > 0);
}

TEST_CASE("determinism of full minimization") {
    Grid2D g = make_grid({1.0, 1.0}, 32, 32, BoundaryCondition::Dirichlet);
    KernelTable k(g);
    MinimizeSettings s;
    s.max_iterations = 120;
    s.seed = 7;
    s.init = InitStrategy::RandomPhase;
    auto [u1, r1] = minimize(init_state(g, s.init, 3.0, s.seed), 3.0,
                             PotentialSpec::zero(), k, s);
    auto [u2, r2] = minimize(init_state(g, s.init, 3.0, s.seed), 3.0,
                             PotentialSpec::zero(), k, s);
    REQUIRE(r1.energy_trace.size() == r2.energy_trace.size());
    for (std::size_t t = 0; t < r1.energy_trace.size(); ++t)
        CHECK(r1.energy_trace[t] == r2.energy_trace[t]);
    for (std::size_t p = 0; p < u1.values.size(); ++p) CHECK(u1.values[p] == u2.values[p]);
}

TEST_CASE("sweep rows and validation") {
    Grid2D g = make_grid({1.0, 1.0}, 32, 32, BoundaryCondition::Dirichlet);
    MinimizeSettings s;
    s.max_iterations = 200;
    s.tol_residual = 1e-3;
    s.restarts = 1;

    auto rows = sweep({2.0}, PotentialSpec::zero(), g, s);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].beta == 2.0);
    CHECK(rows[0].grid_n == 32);
    CHECK_FALSE(rows[0].failed);

    CHECK_THROWS_AS(sweep({}, PotentialSpec::zero(), g, s), Error);
    CHECK_THROWS_AS(sweep({2.0, 1.0}, PotentialSpec::zero(), g, s), Error);
    CHECK_THROWS_AS(sweep({-1.0}, PotentialSpec::zero(), g, s), Error);

    // parallel workers produce the same rows as serial
    auto rows2 = sweep({1.0, 2.0, 3.0}, PotentialSpec::zero(), g, s, 3);
    auto rows1 = sweep({1.0, 2.0, 3.0}, PotentialSpec::zero(), g, s, 1);
    REQUIRE(rows2.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(rows2[i].energy.total == rows1[i].energy.total);
}

TEST_CASE("estimate_e11 fit recovery") {
    auto synth = [](double beta, double eb) {
        SweepRow r;
        r.beta = beta;
        r.energy.total = eb * beta;
        r.domain_area = 1.0;
        return r;
    };

    // exact recovery of energy/beta = 7 + 2 beta^{-1/7}
    std::vector<SweepRow> rows;
    for (double b : {10.0, 20.0, 40.0, 80.0})
        rows.push_back(synth(b, 7.0 + 2.0 * std::pow(b, -1.0 / 7.0)));
    E11Fit fit = estimate_e11(rows);
    CHECK(fit.estimate == doctest::Approx(7.0).epsilon(1e-12));
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(fit.rms_residual < 1e-12);

    // constant rows: estimate equals the constant
    rows.clear();
    for (double b : {10.0, 20.0, 40.0}) rows.push_back(synth(b, 2.0 * M_PI));
    CHECK(estimate_e11(rows).estimate == doctest::Approx(2.0 * M_PI).epsilon(1e-12));

    rows.resize(2);
    CHECK_THROWS_AS(estimate_e11(rows), Error);
    try {
        estimate_e11(rows);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InsufficientData);
    }
}
