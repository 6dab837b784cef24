#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "af/errors.hpp"
#include "af/functional.hpp"

namespace af {

enum class InitStrategy { Auto, Constant, RandomPhase, VortexSeeded };

const char* to_string(InitStrategy s);

struct MinimizeSettings {
    int max_iterations = 2000;
    double initial_step = 0.5;   // first backtracking step
    double shrink = 0.5;         // backtracking factor, in (0,1)
    double armijo_c = 1e-4;      // sufficient-decrease constant
    double tol_energy = 1e-10;   // relative energy stagnation
    double tol_residual = 1e-5;  // relative EL residual
    InitStrategy init = InitStrategy::Auto;
    std::uint64_t seed = 1;
    int restarts = 3;            // multistart count, best energy wins
    bool warm_start = false;     // sweep: reuse the previous beta's state

    void validate() const;
};

struct MinimizeReport {
    int iterations = 0;
    EnergyBreakdown final_energy;
    double residual = 0.0;  // ||el u - mu u||_2 / max(1, |mu|), Dirichlet-masked
    double mu = 0.0;
    std::vector<double> energy_trace;  // non-increasing by construction
    bool converged = false;
    std::uint64_t seed = 0;
    int vortex_count = 0;
};

/// Thrown when the descent produces a non-finite energy; carries the energy
/// trace up to the failure.
class MinimizeFailure : public Error {
  public:
    MinimizeFailure(const std::string& what, std::vector<double> trace)
        : Error(ErrorKind::Numerical, what), energy_trace(std::move(trace)) {}
    std::vector<double> energy_trace;
};

/// Normalized starting state. Constant: uniform modulus. RandomPhase:
/// uniform modulus, seeded i.i.d. phases. VortexSeeded: unit modulus with
/// the lattice phase pattern of the trial state for floor(beta) vortices.
/// Auto picks VortexSeeded for beta >= 10, Constant below.
ComplexField init_state(const Grid2D& grid, InitStrategy strategy, double beta,
                        std::uint64_t seed);

/// Projected Sobolev-gradient descent on the unit sphere with backtracking
/// line search; the retraction is an additive step followed by masking and
/// normalization. Terminates when both the energy change and the residual
/// fall below their tolerances, or at the iteration cap.
std::pair<ComplexField, MinimizeReport> minimize(const ComplexField& u0, double beta,
                                                 const PotentialSpec& V,
                                                 const KernelTable& kernel,
                                                 const MinimizeSettings& settings);

/// Runs `restarts` seeded descents and keeps the lowest energy.
std::pair<ComplexField, MinimizeReport> minimize_multistart(const Grid2D& grid, double beta,
                                                            const PotentialSpec& V,
                                                            const KernelTable& kernel,
                                                            const MinimizeSettings& settings);

struct SweepRow {
    double beta = 0.0;
    BoundaryCondition bc = BoundaryCondition::Neumann;
    int grid_n = 0;
    double domain_area = 0.0;
    EnergyBreakdown energy;
    double mu = 0.0;
    double residual = 0.0;
    int iterations = 0;
    int vortex_count = 0;
    std::uint64_t seed = 0;
    bool converged = false;
    bool failed = false;       // per-beta failures are recorded, not fatal
    std::string error;
};

/// Independent minimizations over an ascending beta list. Rows run on up to
/// `max_workers` threads unless warm-starting forces serial order. Optional
/// out-parameter collects the minimizing states (in beta order).
std::vector<SweepRow> sweep(const std::vector<double>& betas, const PotentialSpec& V,
                            const Grid2D& grid, const MinimizeSettings& settings,
                            int max_workers = 1, std::vector<ComplexField>* states = nullptr);

struct E11Fit {
    double estimate = 0.0;   // intercept times |Omega|
    double intercept = 0.0;  // limit of energy/beta under the beta^{-1/7} ansatz
    double slope = 0.0;
    double rms_residual = 0.0;
    int rows_used = 0;
};

/// Least-squares fit of energy/beta against beta^{-1/7}; needs at least
/// three usable rows (ErrorKind::InsufficientData otherwise).
E11Fit estimate_e11(const std::vector<SweepRow>& rows);

}  // namespace af
