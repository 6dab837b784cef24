#include "af/precond.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <vector>

#include "af/errors.hpp"

namespace af {
namespace {

std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

struct SobolevPreconditioner::Impl {
    Grid2D grid;
    bool dirichlet = false;
    int mx = 0, my = 0;              // transform sizes (interior for Dirichlet)
    double norm = 1.0;               // inverse of the round-trip scale factor
    std::vector<double> sym;         // lambda_kx + lambda_ky per mode
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;         // same plan as fwd for DST-I

    ~Impl() {
        std::lock_guard<std::mutex> lock(plan_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd && bwd != fwd) fftw_destroy_plan(bwd);
    }
};

SobolevPreconditioner::SobolevPreconditioner(const Grid2D& grid)
    : impl_(std::make_unique<Impl>()) {
    Impl& im = *impl_;
    im.grid = grid;
    im.dirichlet = grid.bc == BoundaryCondition::Dirichlet;
    im.mx = im.dirichlet ? grid.nx - 2 : grid.nx;
    im.my = im.dirichlet ? grid.ny - 2 : grid.ny;
    const double hx2 = grid.spacing.x * grid.spacing.x;
    const double hy2 = grid.spacing.y * grid.spacing.y;

    std::vector<double> lamx(im.mx), lamy(im.my);
    if (im.dirichlet) {
        // DST-I modes sin(pi (k+1) (i+1)/(m+1)), zero one cell outside.
        for (int k = 0; k < im.mx; ++k)
            lamx[k] = (2.0 - 2.0 * std::cos(M_PI * (k + 1) / (im.mx + 1))) / hx2;
        for (int k = 0; k < im.my; ++k)
            lamy[k] = (2.0 - 2.0 * std::cos(M_PI * (k + 1) / (im.my + 1))) / hy2;
        im.norm = 1.0 / (4.0 * (im.mx + 1) * (im.my + 1));
    } else {
        // DCT-II modes cos(pi k (i+1/2)/n), mirrored ghosts.
        for (int k = 0; k < im.mx; ++k)
            lamx[k] = (2.0 - 2.0 * std::cos(M_PI * k / im.mx)) / hx2;
        for (int k = 0; k < im.my; ++k)
            lamy[k] = (2.0 - 2.0 * std::cos(M_PI * k / im.my)) / hy2;
        im.norm = 1.0 / (4.0 * im.mx * im.my);
    }
    im.sym.resize(static_cast<std::size_t>(im.mx) * im.my);
    for (int ky = 0; ky < im.my; ++ky)
        for (int kx = 0; kx < im.mx; ++kx)
            im.sym[static_cast<std::size_t>(ky) * im.mx + kx] = lamx[kx] + lamy[ky];

    std::vector<double> scratch(static_cast<std::size_t>(im.mx) * im.my, 0.0);
    std::lock_guard<std::mutex> lock(plan_mutex());
    if (im.dirichlet) {
        im.fwd = fftw_plan_r2r_2d(im.my, im.mx, scratch.data(), scratch.data(), FFTW_RODFT00,
                                  FFTW_RODFT00, FFTW_ESTIMATE | FFTW_UNALIGNED);
        im.bwd = im.fwd;
    } else {
        im.fwd = fftw_plan_r2r_2d(im.my, im.mx, scratch.data(), scratch.data(), FFTW_REDFT10,
                                  FFTW_REDFT10, FFTW_ESTIMATE | FFTW_UNALIGNED);
        im.bwd = fftw_plan_r2r_2d(im.my, im.mx, scratch.data(), scratch.data(), FFTW_REDFT01,
                                  FFTW_REDFT01, FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    if (!im.fwd || !im.bwd)
        throw Error(ErrorKind::Resource, "SobolevPreconditioner: FFTW planning failed");
}

SobolevPreconditioner::~SobolevPreconditioner() = default;
SobolevPreconditioner::SobolevPreconditioner(SobolevPreconditioner&&) noexcept = default;
SobolevPreconditioner& SobolevPreconditioner::operator=(SobolevPreconditioner&&) noexcept =
    default;

ComplexField SobolevPreconditioner::solve(const ComplexField& r, double shift) const {
    const Impl& im = *impl_;
    if (!r.grid.same_geometry(im.grid))
        throw Error(ErrorKind::Contract, "SobolevPreconditioner: grid mismatch");
    if (!(shift > 0.0))
        throw Error(ErrorKind::Contract, "SobolevPreconditioner: shift must be positive");

    const int off = im.dirichlet ? 1 : 0;
    std::vector<double> buf(static_cast<std::size_t>(im.mx) * im.my);
    ComplexField out(r.grid);

    for (int comp = 0; comp < 2; ++comp) {
        for (int j = 0; j < im.my; ++j)
            for (int i = 0; i < im.mx; ++i) {
                const Complex v = r.values[r.grid.index(i + off, j + off)];
                buf[static_cast<std::size_t>(j) * im.mx + i] = comp == 0 ? v.real() : v.imag();
            }
        fftw_execute_r2r(im.fwd, buf.data(), buf.data());
        for (std::size_t p = 0; p < buf.size(); ++p)
            buf[p] *= im.norm / (shift + im.sym[p]);
        fftw_execute_r2r(im.bwd, buf.data(), buf.data());
        for (int j = 0; j < im.my; ++j)
            for (int i = 0; i < im.mx; ++i) {
                Complex& o = out.values[out.grid.index(i + off, j + off)];
                const double v = buf[static_cast<std::size_t>(j) * im.mx + i];
                o = comp == 0 ? Complex{v, 0.0} : Complex{o.real(), v};
            }
    }
    return out;
}

}  // namespace af
