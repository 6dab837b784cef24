#pragma once
#include <cstdint>

#include "af/field.hpp"

namespace af {

/// Seeded smooth random state: a constant background plus a handful of
/// complex Gaussian bumps with moderate plane-wave phases, all expressed in
/// physical units so the same seed describes the same function at every
/// resolution. Dirichlet grids get a sine envelope vanishing on the mask
/// ring. Normalized.
ComplexField smooth_random_state(const Grid2D& grid, std::uint64_t seed, int n_modes = 6);

}  // namespace af
