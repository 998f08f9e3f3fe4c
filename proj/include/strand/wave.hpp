#pragma once

#include <vector>

#include "strand/grid.hpp"
#include "strand/potential.hpp"

namespace strand {

/// Leapfrog solution block of the pure-string wave equation
///   d^2 rho/dt^2 = v^2 (d^2 rho/ds^2 + U'(r) rho/r)
/// on the periodic grid. Independent code path from dynamics: compact
/// 3-point Laplacian and explicit leapfrog instead of first-order central
/// differences under RK4.
struct WaveSolution {
    std::vector<double> times;
    std::vector<Field> rho;

    const Field& final_rho() const { return rho.back(); }
};

/// Throws on CFL violation (v dt / ds > 1), reporting the offending ratio.
WaveSolution wave_oracle(const Field& rho0, const Field& rho_t0, const Grid1D& grid, double v,
                         const RadialPotential& potential, double dt, double t_end,
                         int record_stride = 1);

} // namespace strand
