#pragma once

#include <optional>

#include "strand/hamiltonian.hpp"
#include "strand/state.hpp"

namespace strand {

/// Time stepping configuration. Either a fixed dt or a CFL safety factor
/// sigma in (0, 1]; in CFL mode dt = sigma * ds / max(1, v). The step count
/// is rounded up to a multiple of snapshot_stride so snapshots stay uniform
/// and the run lands exactly on t_end.
struct IntegratorConfig {
    std::optional<double> dt;
    double cfl_safety = 0.5;
    double t_end = 0.0;
    int snapshot_stride = 1;
    int diagnostics_stride = 1;

    double cfl_step(const Grid1D& grid, const HamiltonianParams& params) const;
    void validate() const;
};

/// Time derivative of the evolved fields.
struct StateDeriv {
    Field rho;
    Field pi_t;
    Field mu_t;
    Field omega_s;
};

/// Reduced strand equations in the flat trivialization, with pi_s, mu_s,
/// omega_t supplied by derive:
///   d_t rho     = -v^2 pi_t + rho x omega_t
///   d_t pi_t    = -d_ds(pi_s) + pi_s x omega_s + pi_t x omega_t - U'(r) rho/r
///   d_t mu_t    = -d_ds(mu_s) + mu_s x omega_s + mu_t x omega_t
///   d_t omega_s =  d_ds(omega_t) + closure_sign * (omega_s x omega_t)
/// closure_sign is a test-only hook for the reconstruction-defect mutation
/// check; the validated closure is +1. Throws if params carry a non-flat
/// connection.
StateDeriv rhs(const StrandState& state, const Grid1D& grid, const HamiltonianParams& params,
               int closure_sign = +1);

/// Raised on the first non-finite value; t is the step start time.
struct BlowupError {
    double t;
};

/// Classical 4-stage Runge-Kutta step; throws BlowupError when any stage
/// produces a non-finite value.
StrandState step_rk4(const StrandState& state, const Grid1D& grid,
                     const HamiltonianParams& params, double dt, int closure_sign = +1);

struct RunResult {
    SolutionSeries series;
    std::optional<double> blowup_time;

    bool blew_up() const { return blowup_time.has_value(); }
};

/// Integrates to t_end recording snapshots and diagnostics (energy, max
/// residuals of the two spatial Legendre relations). On blow-up the partial
/// series is preserved. The reconstruction defect is filled in afterwards
/// when the series has at least two snapshots.
RunResult run(const StrandState& initial, const Grid1D& grid, const HamiltonianParams& params,
              const IntegratorConfig& cfg, int closure_sign = +1);

/// Closure validation: at each grid point integrate dR/dt = R hat(omega_t)
/// across snapshots (RK4 on the matrix entries, midpoint by interpolation,
/// orthogonal projection per step, R(0) = identity) and return
/// max_j || vee(R^T d_ds R) - omega_s || per snapshot.
std::vector<double> reconstruction_defect(const SolutionSeries& series,
                                          const HamiltonianParams& params);

} // namespace strand
