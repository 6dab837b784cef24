#pragma once
#include <memory>

#include "af/field.hpp"

namespace af {

/// Precomputed transforms of the vortex kernel grad^perp log|r| =
/// (-y, x)/|r|^2 tabulated at cell-center offsets, on a zero-padded box
/// large enough for linear (free-space, non-periodic) convolution. The
/// singular cell at the origin is assigned (0,0), the odd-symmetry cell
/// average.
class KernelTable {
  public:
    explicit KernelTable(const Grid2D& grid);
    ~KernelTable();
    KernelTable(KernelTable&&) noexcept;
    KernelTable& operator=(KernelTable&&) noexcept;
    KernelTable(const KernelTable&) = delete;
    KernelTable& operator=(const KernelTable&) = delete;

    const Grid2D& grid() const;
    int padded_nx() const;
    int padded_ny() const;

    /// A[rho] = (grad^perp log|r|) * rho, scaled by the cell area. The result
    /// is a free-space field and carries the Free boundary tag.
    VectorField vector_potential(const ScalarField& rho) const;

    /// Dot-product convolution (K * F)(r) = sum K(r - r') . F(r') * cell area,
    /// the adjoint structure needed by the variational operator.
    ScalarField dot_convolve(const VectorField& F) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

inline KernelTable build_kernel(const Grid2D& grid) { return KernelTable(grid); }

/// curl A = dx Ay - dy Ax with the shared difference stencil.
ScalarField curl(const VectorField& A);

/// Exterior field of a radial mass distribution: mass * (q - c)^perp / |q - c|^2.
/// Throws ErrorKind::Singularity when query == center.
Vec2 exterior_field(double mass, Vec2 center, Vec2 query);

}  // namespace af
