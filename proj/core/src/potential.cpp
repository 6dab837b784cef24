#include "af/potential.hpp"

#include <cmath>

#include "af/errors.hpp"

namespace af {

PotentialSpec PotentialSpec::harmonic(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw Error(ErrorKind::Config, "harmonic potential needs positive coefficients");
    PotentialSpec v;
    v.kind = Kind::Harmonic;
    v.a = a;
    v.b = b;
    v.s = 2.0;
    return v;
}

PotentialSpec PotentialSpec::power(double s) {
    if (!(s > 1.0)) throw Error(ErrorKind::Config, "power potential needs degree s > 1");
    PotentialSpec v;
    v.kind = Kind::Power;
    v.s = s;
    return v;
}

double PotentialSpec::operator()(Vec2 r) const {
    switch (kind) {
        case Kind::Zero: return 0.0;
        case Kind::Harmonic: return a * r.x * r.x + b * r.y * r.y;
        case Kind::Power: return std::pow(norm2(r), 0.5 * s);
    }
    return 0.0;
}

double PotentialSpec::angular(double theta) const {
    switch (kind) {
        case Kind::Zero: return 0.0;
        case Kind::Harmonic: {
            const double c = std::cos(theta), s_ = std::sin(theta);
            return a * c * c + b * s_ * s_;
        }
        case Kind::Power: return 1.0;
    }
    return 0.0;
}

ScalarField potential_field(const Grid2D& grid, const PotentialSpec& V) {
    ScalarField f(grid);
    if (V.is_zero()) return f;
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) f.at(i, j) = V(grid.node(i, j));
    return f;
}

}  // namespace af
