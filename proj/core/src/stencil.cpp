#include "af/field.hpp"

namespace af {
namespace {

// One strided 1D pass of the centered stencil. The boundary rows depend on
// the boundary tag: zero extension (Dirichlet), mirrored ghosts (Neumann),
// or second-order one-sided differences (Free).
template <typename T>
void d1_line(const T* u, T* d, int n, double h, BoundaryCondition bc, std::ptrdiff_t stride) {
    const double c = 1.0 / (2.0 * h);
    auto U = [&](int i) { return u[i * stride]; };
    for (int i = 1; i < n - 1; ++i) d[i * stride] = c * (U(i + 1) - U(i - 1));
    switch (bc) {
        case BoundaryCondition::Dirichlet:
            d[0] = c * U(1);
            d[(n - 1) * stride] = -c * U(n - 2);
            break;
        case BoundaryCondition::Neumann:
            d[0] = c * (U(1) - U(0));
            d[(n - 1) * stride] = c * (U(n - 1) - U(n - 2));
            break;
        case BoundaryCondition::Free:
            d[0] = c * (-3.0 * U(0) + 4.0 * U(1) - U(2));
            d[(n - 1) * stride] = c * (3.0 * U(n - 1) - 4.0 * U(n - 2) + U(n - 3));
            break;
    }
}

// Exact transpose of d1_line, accumulating into out.
template <typename T>
void d1t_line(const T* v, T* out, int n, double h, BoundaryCondition bc, std::ptrdiff_t stride) {
    const double c = 1.0 / (2.0 * h);
    auto V = [&](int i) { return v[i * stride]; };
    auto add = [&](int i, T w) { out[i * stride] += w; };
    for (int i = 1; i < n - 1; ++i) {
        add(i + 1, c * V(i));
        add(i - 1, -c * V(i));
    }
    switch (bc) {
        case BoundaryCondition::Dirichlet:
            add(1, c * V(0));
            add(n - 2, -c * V(n - 1));
            break;
        case BoundaryCondition::Neumann:
            add(1, c * V(0));
            add(0, -c * V(0));
            add(n - 1, c * V(n - 1));
            add(n - 2, -c * V(n - 1));
            break;
        case BoundaryCondition::Free:
            add(0, -3.0 * c * V(0));
            add(1, 4.0 * c * V(0));
            add(2, -c * V(0));
            add(n - 1, 3.0 * c * V(n - 1));
            add(n - 2, -4.0 * c * V(n - 1));
            add(n - 3, c * V(n - 1));
            break;
    }
}

template <typename T>
void dx_all(const std::vector<T>& u, std::vector<T>& d, const Grid2D& g) {
    for (int j = 0; j < g.ny; ++j)
        d1_line(u.data() + g.index(0, j), d.data() + g.index(0, j), g.nx, g.spacing.x, g.bc, 1);
}

template <typename T>
void dy_all(const std::vector<T>& u, std::vector<T>& d, const Grid2D& g) {
    for (int i = 0; i < g.nx; ++i)
        d1_line(u.data() + g.index(i, 0), d.data() + g.index(i, 0), g.ny, g.spacing.y, g.bc, g.nx);
}

}  // namespace

std::pair<ComplexField, ComplexField> gradient(const ComplexField& u) {
    ComplexField gx(u.grid), gy(u.grid);
    dx_all(u.values, gx.values, u.grid);
    dy_all(u.values, gy.values, u.grid);
    return {std::move(gx), std::move(gy)};
}

ComplexField gradient_adjoint(const ComplexField& gx, const ComplexField& gy) {
    const Grid2D& g = gx.grid;
    ComplexField out(g);
    for (int j = 0; j < g.ny; ++j)
        d1t_line(gx.values.data() + g.index(0, j), out.values.data() + g.index(0, j), g.nx,
                 g.spacing.x, g.bc, 1);
    for (int i = 0; i < g.nx; ++i)
        d1t_line(gy.values.data() + g.index(i, 0), out.values.data() + g.index(i, 0), g.ny,
                 g.spacing.y, g.bc, g.nx);
    return out;
}

ScalarField derivative_x(const ScalarField& f) {
    ScalarField d(f.grid);
    dx_all(f.values, d.values, f.grid);
    return d;
}

ScalarField derivative_y(const ScalarField& f) {
    ScalarField d(f.grid);
    dy_all(f.values, d.values, f.grid);
    return d;
}

}  // namespace af
