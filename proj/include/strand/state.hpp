#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "strand/grid.hpp"
#include "strand/params.hpp"

namespace strand {

/// Reduced fields on one time slice. The evolved variables are
/// (rho, pi_t, mu_t, omega_s); the spatial multimomenta pi_s, mu_s are
/// slaved to these through the spatial Hamilton-Cartan relations (derive),
/// which keeps those relations exactly satisfied along a run.
struct StrandState {
    double t = 0.0;
    Field rho;
    Field pi_t;
    Field mu_t;
    Field omega_s;

    static StrandState zero(const Grid1D& grid);

    std::size_t size() const { return rho.size(); }
    bool shape_matches(const Grid1D& grid) const;
    bool finite() const;
};

/// Legendre-derived fields; recomputable from (state, grid, params),
/// never persisted as independent state.
struct DerivedFields {
    Field pi_s;
    Field mu_s;
    Field omega_t;
};

/// Pointwise, with Lambda = 0 in the s-slot:
///   omega_t = I^-1 (mu_t - rho x pi_t)
///   pi_s    = d_ds(rho) - rho x omega_s
///   mu_s    = rho x pi_s - J omega_s
DerivedFields derive(const StrandState& state, const Grid1D& grid,
                     const HamiltonianParams& params);

/// Space-time block of uniformly spaced snapshots plus diagnostics.
struct SolutionSeries {
    Grid1D grid;
    HamiltonianParams params;
    double dt = 0.0;
    std::uint64_t seed = 0;
    std::string config_text;
    std::vector<StrandState> snapshots;

    struct DiagRow {
        double t = 0.0;
        double energy = 0.0;
        double legendre_pi = 0.0;
        double legendre_mu = 0.0;
    };
    std::vector<DiagRow> diagnostics;
    std::vector<double> recon_defect; // per snapshot, filled after a run

    /// Snapshot spacing; throws unless snapshots are strictly increasing
    /// with constant spacing (1e-12 relative).
    double snapshot_spacing() const;
};

} // namespace strand
