#pragma once
#include <memory>

#include "af/field.hpp"

namespace af {

/// Solves (1 - Laplacian) d = r on the rectangle by fast diagonalization
/// (DCT for Neumann/Free grids, DST on the interior for Dirichlet grids),
/// matching the discrete boundary treatment of the state. Used as the
/// Sobolev metric for mesh-independent descent.
class SobolevPreconditioner {
  public:
    explicit SobolevPreconditioner(const Grid2D& grid);
    ~SobolevPreconditioner();
    SobolevPreconditioner(SobolevPreconditioner&&) noexcept;
    SobolevPreconditioner& operator=(SobolevPreconditioner&&) noexcept;
    SobolevPreconditioner(const SobolevPreconditioner&) = delete;
    SobolevPreconditioner& operator=(const SobolevPreconditioner&) = delete;

    /// Solves (shift - Laplacian) d = r; the default shift of 1 is the plain
    /// Sobolev metric. Descent at large beta rescales the shift to the
    /// chemical-potential magnitude, which keeps the step size usable across
    /// the whole beta range.
    ComplexField solve(const ComplexField& r, double shift = 1.0) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace af
