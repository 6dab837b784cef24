#pragma once
#include "af/field.hpp"

namespace af {

/// Trapping potential, either none or homogeneous of degree s > 1:
///   Harmonic: V = a x^2 + b y^2  (s = 2, a,b > 0)
///   Power:    V = |r|^s
/// V(lambda r) = lambda^s V(r) holds exactly for both families.
struct PotentialSpec {
    enum class Kind { Zero, Harmonic, Power };

    Kind kind = Kind::Zero;
    double a = 1.0;  // harmonic x-coefficient
    double b = 1.0;  // harmonic y-coefficient
    double s = 2.0;  // homogeneity degree (Power)

    static PotentialSpec zero() { return {}; }
    static PotentialSpec harmonic(double a, double b);
    static PotentialSpec power(double s);

    double degree() const { return kind == Kind::Harmonic ? 2.0 : s; }
    bool is_zero() const { return kind == Kind::Zero; }

    double operator()(Vec2 r) const;
    /// Angular profile V(cos t, sin t); strictly positive for trapping kinds.
    double angular(double theta) const;
};

/// V sampled at cell centers.
ScalarField potential_field(const Grid2D& grid, const PotentialSpec& V);

}  // namespace af
