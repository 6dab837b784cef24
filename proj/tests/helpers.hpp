#pragma once
// Shared test utilities: independent oracles and small field constructors.
// Everything here is deliberately written against plain formulas, not the
// library's internals, so tests cross-check two routes.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "af/field.hpp"
#include "af/grid.hpp"

namespace aftest {

using af::Complex;
using af::ComplexField;
using af::Grid2D;
using af::Vec2;

inline double inner_real(const ComplexField& a, const ComplexField& b) {
    double s = 0.0;
    for (std::size_t p = 0; p < a.values.size(); ++p)
        s += std::real(std::conj(a.values[p]) * b.values[p]);
    return s * a.grid.cell_area();
}

/// Composite Simpson rule on [a,b].
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

/// Radial quadrature oracle: int_0^R g(r) 2 pi r dr.
inline double radial_integral(const std::function<double(double)>& g, double R,
                              int n = 20000) {
    return simpson([&](double r) { return g(r) * 2.0 * M_PI * r; }, 0.0, R, n);
}

/// Fills a field from a complex-valued function of position.
inline ComplexField field_from(const Grid2D& g,
                               const std::function<Complex(double, double)>& f) {
    ComplexField u(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) u.values[g.index(i, j)] = f(g.x(i), g.y(j));
    return u;
}

/// Branch-adjusted phase winding of u along the closed rectangle of grid
/// nodes [i0,i1] x [j0,j1], counterclockwise. Independent of the library's
/// plaquette detector.
inline int contour_winding(const ComplexField& u, int i0, int j0, int i1, int j1) {
    std::vector<Complex> path;
    for (int i = i0; i < i1; ++i) path.push_back(u.at(i, j0));
    for (int j = j0; j < j1; ++j) path.push_back(u.at(i1, j));
    for (int i = i1; i > i0; --i) path.push_back(u.at(i, j1));
    for (int j = j1; j > j0; --j) path.push_back(u.at(i0, j));
    path.push_back(u.at(i0, j0));
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < path.size(); ++k)
        total += std::remainder(std::arg(path[k + 1]) - std::arg(path[k]), 2.0 * M_PI);
    return static_cast<int>(std::llround(total / (2.0 * M_PI)));
}

}  // namespace aftest
