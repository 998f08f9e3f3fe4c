#include "strand/state.hpp"

#include <cmath>
#include <stdexcept>

#include "strand/parallel.hpp"

namespace strand {

void HamiltonianParams::validate() const {
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument("params.v must be > 0");
}

StrandState StrandState::zero(const Grid1D& grid) {
    StrandState s;
    const std::size_t n = static_cast<std::size_t>(grid.n);
    s.rho.assign(n, Vec3{});
    s.pi_t.assign(n, Vec3{});
    s.mu_t.assign(n, Vec3{});
    s.omega_s.assign(n, Vec3{});
    return s;
}

bool StrandState::shape_matches(const Grid1D& grid) const {
    const std::size_t n = static_cast<std::size_t>(grid.n);
    return rho.size() == n && pi_t.size() == n && mu_t.size() == n && omega_s.size() == n;
}

bool StrandState::finite() const {
    return all_finite(rho) && all_finite(pi_t) && all_finite(mu_t) && all_finite(omega_s);
}

DerivedFields derive(const StrandState& state, const Grid1D& grid,
                     const HamiltonianParams& params) {
    if (!state.shape_matches(grid))
        throw std::invalid_argument("derive: state shape does not match grid");
    const std::size_t n = static_cast<std::size_t>(grid.n);
    DerivedFields out;
    out.pi_s.resize(n);
    out.mu_s.resize(n);
    out.omega_t.resize(n);
    const Field drho = d_ds(state.rho, grid);
    parallel::parallel_for(n, 16384, [&](std::size_t b, std::size_t e) {
        for (std::size_t j = b; j < e; ++j) {
            out.omega_t[j] =
                params.inertia_i.apply_inverse(state.mu_t[j] - state.rho[j].cross(state.pi_t[j]));
            out.pi_s[j] = drho[j] - state.rho[j].cross(state.omega_s[j]);
            out.mu_s[j] =
                state.rho[j].cross(out.pi_s[j]) - params.inertia_j.apply(state.omega_s[j]);
        }
    });
    return out;
}

double SolutionSeries::snapshot_spacing() const {
    if (snapshots.size() < 2) return 0.0;
    const double spacing = snapshots[1].t - snapshots[0].t;
    if (!(spacing > 0.0)) throw std::runtime_error("series: snapshots not increasing in t");
    const double scale = std::fmax(1.0, std::fabs(snapshots.back().t));
    for (std::size_t k = 1; k < snapshots.size(); ++k) {
        const double d = snapshots[k].t - snapshots[k - 1].t;
        if (std::fabs(d - spacing) > 1e-12 * scale)
            throw std::runtime_error("series: non-uniform snapshot spacing");
    }
    return spacing;
}

} // namespace strand
