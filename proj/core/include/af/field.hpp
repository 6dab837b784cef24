#pragma once
#include <complex>
#include <utility>
#include <vector>

#include "af/grid.hpp"

namespace af {

using Complex = std::complex<double>;

/// Discretized wave function u on a Grid2D, row-major (index = j*nx + i).
struct ComplexField {
    Grid2D grid;
    std::vector<Complex> values;

    ComplexField() = default;
    explicit ComplexField(const Grid2D& g) : grid(g), values(g.size(), Complex{0.0, 0.0}) {}

    Complex& at(int i, int j) { return values[grid.index(i, j)]; }
    Complex at(int i, int j) const { return values[grid.index(i, j)]; }
};

struct ScalarField {
    Grid2D grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const Grid2D& g) : grid(g), values(g.size(), 0.0) {}

    double& at(int i, int j) { return values[grid.index(i, j)]; }
    double at(int i, int j) const { return values[grid.index(i, j)]; }
};

/// Two real components per node; used for A[rho] and j[u].
struct VectorField {
    Grid2D grid;
    std::vector<double> x;
    std::vector<double> y;

    VectorField() = default;
    explicit VectorField(const Grid2D& g) : grid(g), x(g.size(), 0.0), y(g.size(), 0.0) {}

    Vec2 at(int i, int j) const {
        auto p = grid.index(i, j);
        return {x[p], y[p]};
    }
};

// -- norms and basic maps ----------------------------------------------------

/// Discrete L^2 norm, sqrt(sum |u|^2 * cell area).
double l2_norm(const ComplexField& u);
double l2_norm(const ScalarField& f);

/// (sum |f|^p * cell area)^(1/p) for p >= 1.
double lp_norm(const ComplexField& u, double p);
double lp_norm(const ScalarField& f, double p);

/// Rescales to unit L^2 norm, leaving the pointwise phase unchanged.
/// Throws ErrorKind::DegenerateState on a (numerically) zero field.
ComplexField normalize(const ComplexField& u);

/// rho = |u|^2.
ScalarField density(const ComplexField& u);

/// Zeroes the one-cell boundary ring of Dirichlet fields; identity otherwise.
void apply_boundary_mask(ComplexField& u);

/// u_{lambda,mu}(r) = lambda * u(r/mu) on the dilated grid (node values are
/// copied, never interpolated). Grid origin and spacing scale by mu.
ComplexField rescale_state(const ComplexField& u, double lambda, double mu);

// -- differential structure --------------------------------------------------

/// Centered second-order differences; the boundary row treatment follows the
/// grid's boundary tag (zero extension / mirrored ghosts / one-sided).
std::pair<ComplexField, ComplexField> gradient(const ComplexField& u);

/// Exact transpose of the gradient stencil; (gx,gy) |-> Gx^T gx + Gy^T gy.
/// Together with gradient this makes the discrete energy differentiable
/// without any quadrature mismatch.
ComplexField gradient_adjoint(const ComplexField& gx, const ComplexField& gy);

/// Same stencil machinery for real fields (derivative along one axis).
ScalarField derivative_x(const ScalarField& f);
ScalarField derivative_y(const ScalarField& f);

/// j[u] = (i/2)(u grad u* - u* grad u) = Im(u* grad u).
VectorField current(const ComplexField& u);

}  // namespace af
