#include "strand/wave.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace strand {

namespace {

Field laplacian(const Field& f, double inv_ds2) {
    const std::size_t n = f.size();
    Field out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t jp = (j + 1 == n) ? 0 : j + 1;
        const std::size_t jm = (j == 0) ? n - 1 : j - 1;
        out[j] = (f[jp] - 2.0 * f[j] + f[jm]) * inv_ds2;
    }
    return out;
}

Field acceleration(const Field& f, double v2, double inv_ds2, const RadialPotential& u) {
    Field acc = laplacian(f, inv_ds2);
    for (std::size_t j = 0; j < f.size(); ++j)
        acc[j] = v2 * (acc[j] + potential_force(u, f[j]));
    return acc;
}

} // namespace

WaveSolution wave_oracle(const Field& rho0, const Field& rho_t0, const Grid1D& grid, double v,
                         const RadialPotential& potential, double dt, double t_end,
                         int record_stride) {
    const std::size_t n = static_cast<std::size_t>(grid.n);
    if (rho0.size() != n || rho_t0.size() != n)
        throw std::invalid_argument("wave_oracle: initial data length != grid.n");
    if (!(dt > 0.0)) throw std::invalid_argument("wave_oracle: dt must be > 0");
    if (record_stride < 1) throw std::invalid_argument("wave_oracle: record_stride must be >= 1");
    const double ratio = v * dt / grid.spacing();
    if (ratio > 1.0 + 1e-12) {
        std::ostringstream msg;
        msg << "wave_oracle: CFL violation, v*dt/ds = " << ratio << " > 1";
        throw std::invalid_argument(msg.str());
    }

    long n_steps = 0;
    if (t_end > 0.0) {
        n_steps = static_cast<long>(std::ceil(t_end / dt * (1.0 - 1e-12)));
        if (n_steps < 1) n_steps = 1;
        dt = t_end / static_cast<double>(n_steps);
    }

    const double v2 = v * v;
    const double inv_ds2 = 1.0 / (grid.spacing() * grid.spacing());

    WaveSolution sol;
    sol.times.push_back(0.0);
    sol.rho.push_back(rho0);
    if (n_steps == 0) return sol;

    // Taylor start, then leapfrog
    Field prev = rho0;
    Field curr(n);
    {
        const Field acc = acceleration(rho0, v2, inv_ds2, potential);
        for (std::size_t j = 0; j < n; ++j)
            curr[j] = rho0[j] + dt * rho_t0[j] + 0.5 * dt * dt * acc[j];
    }
    if (1 % record_stride == 0 || n_steps == 1) {
        sol.times.push_back(dt);
        sol.rho.push_back(curr);
    }
    for (long step = 2; step <= n_steps; ++step) {
        const Field acc = acceleration(curr, v2, inv_ds2, potential);
        Field next(n);
        for (std::size_t j = 0; j < n; ++j)
            next[j] = 2.0 * curr[j] - prev[j] + dt * dt * acc[j];
        prev = std::move(curr);
        curr = std::move(next);
        if (step % record_stride == 0 || step == n_steps) {
            sol.times.push_back(static_cast<double>(step) * dt);
            sol.rho.push_back(curr);
        }
    }
    return sol;
}

} // namespace strand
