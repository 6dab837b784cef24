#include "af/grid.hpp"
#include "af/errors.hpp"

namespace af {

const char* to_string(BoundaryCondition bc) {
    switch (bc) {
        case BoundaryCondition::Dirichlet: return "dirichlet";
        case BoundaryCondition::Neumann: return "neumann";
        case BoundaryCondition::Free: return "free";
    }
    return "?";
}

Grid2D make_grid(Vec2 extent, int nx, int ny, BoundaryCondition bc) {
    if (!(extent.x > 0.0) || !(extent.y > 0.0))
        throw Error(ErrorKind::Config, "make_grid: extents must be positive");
    if (nx < 8 || ny < 8)
        throw Error(ErrorKind::Config, "make_grid: need at least 8 cells per direction");
    Grid2D g;
    g.origin = {0.0, 0.0};
    g.spacing = {extent.x / nx, extent.y / ny};
    g.nx = nx;
    g.ny = ny;
    g.bc = bc;
    return g;
}

Grid2D make_grid_centered(Vec2 extent, int nx, int ny, BoundaryCondition bc) {
    Grid2D g = make_grid(extent, nx, ny, bc);
    g.origin = {-0.5 * extent.x, -0.5 * extent.y};
    return g;
}

}  // namespace af
