#pragma once
#include <array>
#include <cstdint>
#include <cstddef>

namespace af {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm2(Vec2 a) { return a.x * a.x + a.y * a.y; }
// 90-degree counterclockwise rotation, r -> (-y, x)
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

enum class BoundaryCondition : std::uint8_t { Dirichlet = 0, Neumann = 1, Free = 2 };

const char* to_string(BoundaryCondition bc);

/// Uniform rectangular lattice of cell centers. Node (i,j) sits at
/// origin + ((i+1/2) hx, (j+1/2) hy); quadrature is the plain Riemann
/// sum (node value times cell area).
struct Grid2D {
    Vec2 origin{0.0, 0.0};
    Vec2 spacing{0.0, 0.0};
    int nx = 0;
    int ny = 0;
    BoundaryCondition bc = BoundaryCondition::Free;

    std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
    double x(int i) const { return origin.x + (i + 0.5) * spacing.x; }
    double y(int j) const { return origin.y + (j + 0.5) * spacing.y; }
    Vec2 node(int i, int j) const { return {x(i), y(j)}; }
    double cell_area() const { return spacing.x * spacing.y; }
    Vec2 extent() const { return {nx * spacing.x, ny * spacing.y}; }
    double area() const { return extent().x * extent().y; }

    /// One-cell boundary ring; the Dirichlet mask zeroes exactly these nodes.
    bool on_boundary_ring(int i, int j) const {
        return i == 0 || j == 0 || i == nx - 1 || j == ny - 1;
    }

    /// Geometry comparison; the boundary tag is deliberately ignored so that
    /// derived fields (e.g. free-space vector potentials) stay compatible.
    bool same_geometry(const Grid2D& o) const {
        return nx == o.nx && ny == o.ny && origin.x == o.origin.x && origin.y == o.origin.y &&
               spacing.x == o.spacing.x && spacing.y == o.spacing.y;
    }
};

/// Builds a grid covering the rectangle [0, extent.x] x [0, extent.y].
/// Throws ErrorKind::Config for non-positive extents or fewer than 8 cells
/// per direction.
Grid2D make_grid(Vec2 extent, int nx, int ny, BoundaryCondition bc);

/// Same, but centered on the origin (trapped-gas boxes).
Grid2D make_grid_centered(Vec2 extent, int nx, int ny, BoundaryCondition bc);

}  // namespace af
