#include "af/field.hpp"

#include <cmath>

#include "af/errors.hpp"

namespace af {

double l2_norm(const ComplexField& u) {
    double s = 0.0;
    for (const auto& v : u.values) s += std::norm(v);
    return std::sqrt(s * u.grid.cell_area());
}

double l2_norm(const ScalarField& f) {
    double s = 0.0;
    for (double v : f.values) s += v * v;
    return std::sqrt(s * f.grid.cell_area());
}

double lp_norm(const ComplexField& u, double p) {
    if (!(p >= 1.0) || !std::isfinite(p))
        throw Error(ErrorKind::Contract, "lp_norm: p must be finite and >= 1");
    double s = 0.0;
    for (const auto& v : u.values) s += std::pow(std::abs(v), p);
    return std::pow(s * u.grid.cell_area(), 1.0 / p);
}

double lp_norm(const ScalarField& f, double p) {
    if (!(p >= 1.0) || !std::isfinite(p))
        throw Error(ErrorKind::Contract, "lp_norm: p must be finite and >= 1");
    double s = 0.0;
    for (double v : f.values) s += std::pow(std::abs(v), p);
    return std::pow(s * f.grid.cell_area(), 1.0 / p);
}

ComplexField normalize(const ComplexField& u) {
    double n = l2_norm(u);
    if (!(n > 0.0) || !std::isfinite(n))
        throw Error(ErrorKind::DegenerateState, "normalize: field has zero L2 norm");
    ComplexField out = u;
    double inv = 1.0 / n;
    for (auto& v : out.values) v *= inv;
    return out;
}

ScalarField density(const ComplexField& u) {
    ScalarField rho(u.grid);
    for (std::size_t p = 0; p < u.values.size(); ++p) rho.values[p] = std::norm(u.values[p]);
    return rho;
}

void apply_boundary_mask(ComplexField& u) {
    if (u.grid.bc != BoundaryCondition::Dirichlet) return;
    const int nx = u.grid.nx, ny = u.grid.ny;
    for (int i = 0; i < nx; ++i) {
        u.values[u.grid.index(i, 0)] = 0.0;
        u.values[u.grid.index(i, ny - 1)] = 0.0;
    }
    for (int j = 0; j < ny; ++j) {
        u.values[u.grid.index(0, j)] = 0.0;
        u.values[u.grid.index(nx - 1, j)] = 0.0;
    }
}

ComplexField rescale_state(const ComplexField& u, double lambda, double mu) {
    if (!(lambda > 0.0) || !(mu > 0.0))
        throw Error(ErrorKind::Contract, "rescale_state: lambda and mu must be positive");
    ComplexField out = u;
    out.grid.origin = mu * u.grid.origin;
    out.grid.spacing = mu * u.grid.spacing;
    for (auto& v : out.values) v *= lambda;
    return out;
}

VectorField current(const ComplexField& u) {
    auto [gx, gy] = gradient(u);
    VectorField j(u.grid);
    for (std::size_t p = 0; p < u.values.size(); ++p) {
        const Complex c = std::conj(u.values[p]);
        j.x[p] = std::imag(c * gx.values[p]);
        j.y[p] = std::imag(c * gy.values[p]);
    }
    return j;
}

}  // namespace af
