#include "af/kernel.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <new>
#include <vector>

#include "af/errors.hpp"

namespace af {
namespace {

// FFTW plan creation/destruction is not thread-safe; execution via the
// new-array interface is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

// Smallest 5-smooth integer >= n; FFTW handles these sizes efficiently.
int next_fast_size(int n) {
    for (int k = n;; ++k) {
        int m = k;
        for (int f : {2, 3, 5})
            while (m % f == 0) m /= f;
        if (m == 1) return k;
    }
}

}  // namespace

struct KernelTable::Impl {
    Grid2D grid;
    int px = 0, py = 0;            // padded sizes (>= 2n-1)
    int pcx = 0;                   // px/2 + 1, r2c fast-axis size
    std::vector<Complex> khat_x;   // transformed kernel components
    std::vector<Complex> khat_y;
    fftw_plan fwd = nullptr;       // r2c on the padded box
    fftw_plan bwd = nullptr;       // c2r on the padded box

    std::size_t real_size() const { return static_cast<std::size_t>(px) * py; }
    std::size_t cplx_size() const { return static_cast<std::size_t>(pcx) * py; }

    ~Impl() {
        std::lock_guard<std::mutex> lock(plan_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
    }

    // Embed an nx-by-ny real field into the zero-padded box and transform.
    void forward(const std::vector<double>& src, std::vector<double>& pad,
                 std::vector<Complex>& out) const {
        std::fill(pad.begin(), pad.end(), 0.0);
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i)
                pad[static_cast<std::size_t>(j) * px + i] = src[grid.index(i, j)];
        fftw_execute_dft_r2c(fwd, pad.data(), reinterpret_cast<fftw_complex*>(out.data()));
    }

    // Inverse transform and copy the [0,nx)x[0,ny) corner out, including the
    // FFTW normalization and cell-area quadrature weight.
    void backward(std::vector<Complex>& spec, std::vector<double>& pad,
                  std::vector<double>& dst, bool accumulate) const {
        fftw_execute_dft_c2r(bwd, reinterpret_cast<fftw_complex*>(spec.data()), pad.data());
        const double scale = grid.cell_area() / (static_cast<double>(px) * py);
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) {
                double v = scale * pad[static_cast<std::size_t>(j) * px + i];
                if (accumulate)
                    dst[grid.index(i, j)] += v;
                else
                    dst[grid.index(i, j)] = v;
            }
    }
};

KernelTable::KernelTable(const Grid2D& grid) : impl_(std::make_unique<Impl>()) {
    Impl& im = *impl_;
    im.grid = grid;
    im.px = next_fast_size(2 * grid.nx - 1);
    im.py = next_fast_size(2 * grid.ny - 1);
    im.pcx = im.px / 2 + 1;

    std::vector<double> kx, ky, pad;
    try {
        kx.assign(im.real_size(), 0.0);
        ky.assign(im.real_size(), 0.0);
        pad.assign(im.real_size(), 0.0);
        im.khat_x.assign(im.cplx_size(), Complex{});
        im.khat_y.assign(im.cplx_size(), Complex{});
    } catch (const std::bad_alloc&) {
        throw Error(ErrorKind::Resource, "build_kernel: padded kernel allocation failed");
    }

    // Tabulate (-y, x)/|r|^2 at cell offsets, wrapped into circulant layout.
    // Odd symmetry K(-r) = -K(r) holds bitwise by construction; the origin
    // cell is zero.
    for (int dy = -(grid.ny - 1); dy <= grid.ny - 1; ++dy) {
        for (int dx = -(grid.nx - 1); dx <= grid.nx - 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            const double rx = dx * grid.spacing.x;
            const double ry = dy * grid.spacing.y;
            const double r2 = rx * rx + ry * ry;
            const std::size_t p = static_cast<std::size_t>((dy + im.py) % im.py) * im.px +
                                  static_cast<std::size_t>((dx + im.px) % im.px);
            kx[p] = -ry / r2;
            ky[p] = rx / r2;
        }
    }

    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        im.fwd = fftw_plan_dft_r2c_2d(im.py, im.px, pad.data(),
                                      reinterpret_cast<fftw_complex*>(im.khat_x.data()),
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
        im.bwd = fftw_plan_dft_c2r_2d(im.py, im.px,
                                      reinterpret_cast<fftw_complex*>(im.khat_x.data()),
                                      pad.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    if (!im.fwd || !im.bwd) throw Error(ErrorKind::Resource, "build_kernel: FFTW planning failed");

    fftw_execute_dft_r2c(im.fwd, kx.data(), reinterpret_cast<fftw_complex*>(im.khat_x.data()));
    fftw_execute_dft_r2c(im.fwd, ky.data(), reinterpret_cast<fftw_complex*>(im.khat_y.data()));
}

KernelTable::~KernelTable() = default;
KernelTable::KernelTable(KernelTable&&) noexcept = default;
KernelTable& KernelTable::operator=(KernelTable&&) noexcept = default;

const Grid2D& KernelTable::grid() const { return impl_->grid; }
int KernelTable::padded_nx() const { return impl_->px; }
int KernelTable::padded_ny() const { return impl_->py; }

VectorField KernelTable::vector_potential(const ScalarField& rho) const {
    const Impl& im = *impl_;
    if (!rho.grid.same_geometry(im.grid))
        throw Error(ErrorKind::Contract, "vector_potential: density grid does not match kernel");

    std::vector<double> pad(im.real_size());
    std::vector<Complex> rhat(im.cplx_size()), work(im.cplx_size());
    im.forward(rho.values, pad, rhat);

    VectorField A(rho.grid);
    A.grid.bc = BoundaryCondition::Free;  // free-space object, not tied to u's bc
    for (std::size_t p = 0; p < work.size(); ++p) work[p] = rhat[p] * im.khat_x[p];
    im.backward(work, pad, A.x, false);
    for (std::size_t p = 0; p < work.size(); ++p) work[p] = rhat[p] * im.khat_y[p];
    im.backward(work, pad, A.y, false);
    return A;
}

ScalarField KernelTable::dot_convolve(const VectorField& F) const {
    const Impl& im = *impl_;
    if (!F.grid.same_geometry(im.grid))
        throw Error(ErrorKind::Contract, "dot_convolve: field grid does not match kernel");

    std::vector<double> pad(im.real_size());
    std::vector<Complex> fhat(im.cplx_size()), acc(im.cplx_size());
    im.forward(F.x, pad, fhat);
    for (std::size_t p = 0; p < acc.size(); ++p) acc[p] = fhat[p] * im.khat_x[p];
    im.forward(F.y, pad, fhat);
    for (std::size_t p = 0; p < acc.size(); ++p) acc[p] += fhat[p] * im.khat_y[p];

    ScalarField out(F.grid);
    out.grid.bc = BoundaryCondition::Free;
    im.backward(acc, pad, out.values, false);
    return out;
}

ScalarField curl(const VectorField& A) {
    ScalarField ax{}, ay{};
    ax.grid = A.grid;
    ax.values = A.x;
    ay.grid = A.grid;
    ay.values = A.y;
    ScalarField dxAy = derivative_x(ay);
    ScalarField dyAx = derivative_y(ax);
    ScalarField out(A.grid);
    for (std::size_t p = 0; p < out.values.size(); ++p)
        out.values[p] = dxAy.values[p] - dyAx.values[p];
    return out;
}

Vec2 exterior_field(double mass, Vec2 center, Vec2 query) {
    const Vec2 d = query - center;
    const double r2 = norm2(d);
    if (!(r2 > 0.0))
        throw Error(ErrorKind::Singularity, "exterior_field: query coincides with center");
    return (mass / r2) * perp(d);
}

}  // namespace af
