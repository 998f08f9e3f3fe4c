#pragma once

#include "strand/params.hpp"
#include "strand/state.hpp"

namespace strand {

/// One point of the reduced phase space (mu_s, mu_t, rho, pi_s, pi_t).
struct StrandPoint {
    Vec3 mu_s, mu_t, rho, pi_s, pi_t;
};

/// The five functional derivatives of the strand Hamiltonian density.
struct HamiltonianDerivs {
    Vec3 mu_s, mu_t, pi_s, pi_t, rho;
};

/// Strand Hamiltonian density
///   h = 1/2 <pi_s, pi_s> - v^2/2 <pi_t, pi_t> + U(||rho||)
///     + 1/2 <mu_t - rho x pi_t, I^-1 (mu_t - rho x pi_t)>
///     - 1/2 <mu_s - rho x pi_s, J^-1 (mu_s - rho x pi_s)>
double density(const StrandPoint& p, const HamiltonianParams& params);

/// Closed forms:
///   dh/dmu_s = -J^-1 (mu_s - rho x pi_s)
///   dh/dmu_t =  I^-1 (mu_t - rho x pi_t)
///   dh/dpi_s =  pi_s - rho x (J^-1 (mu_s - rho x pi_s))
///   dh/dpi_t = -v^2 pi_t + rho x (I^-1 (mu_t - rho x pi_t))
///   dh/drho  =  pi_s x (J^-1 (mu_s - rho x pi_s))
///             - pi_t x (I^-1 (mu_t - rho x pi_t)) + U'(r) rho/r
HamiltonianDerivs derivatives(const StrandPoint& p, const HamiltonianParams& params);

Vec3 deriv_mu_s(const StrandPoint& p, const HamiltonianParams& params);
Vec3 deriv_mu_t(const StrandPoint& p, const HamiltonianParams& params);
Vec3 deriv_pi_s(const StrandPoint& p, const HamiltonianParams& params);
Vec3 deriv_pi_t(const StrandPoint& p, const HamiltonianParams& params);
Vec3 deriv_rho(const StrandPoint& p, const HamiltonianParams& params);

/// Phase point at grid index j assembled from state + derived fields.
StrandPoint point_at(const StrandState& state, const DerivedFields& derived, std::size_t j);

/// Instantaneous energy of the autonomous theory on the periodic grid:
///   E = ds * sum_j [ h_j - <pi_s_j, dh/dpi_s|_j> - <mu_s_j, dh/dmu_s|_j> ]
/// evaluated through derive. Conserved along exact solutions.
double energy(const StrandState& state, const Grid1D& grid, const HamiltonianParams& params);

/// Same, reusing derived fields already in hand.
double energy(const StrandState& state, const DerivedFields& derived, const Grid1D& grid,
              const HamiltonianParams& params);

} // namespace strand
