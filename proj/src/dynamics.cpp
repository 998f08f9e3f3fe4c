#include "strand/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "strand/parallel.hpp"
#include "strand/so3.hpp"

namespace strand {

double IntegratorConfig::cfl_step(const Grid1D& grid, const HamiltonianParams& params) const {
    if (dt) return *dt;
    const double v_max = std::fmax(1.0, params.v);
    return cfl_safety * grid.spacing() / v_max;
}

void IntegratorConfig::validate() const {
    if (dt) {
        if (!(*dt > 0.0)) throw std::invalid_argument("time.dt must be > 0");
    } else if (!(cfl_safety > 0.0) || cfl_safety > 1.0) {
        throw std::invalid_argument("time.cfl_safety must be in (0, 1]");
    }
    if (t_end < 0.0) throw std::invalid_argument("time.t_end must be >= 0");
    if (snapshot_stride < 1) throw std::invalid_argument("time.snapshot_stride must be >= 1");
    if (diagnostics_stride < 1)
        throw std::invalid_argument("time.diagnostics_stride must be >= 1");
}

StateDeriv rhs(const StrandState& state, const Grid1D& grid, const HamiltonianParams& params,
               int closure_sign) {
    if (!params.connection.flat())
        throw std::invalid_argument("rhs: dynamics supports the flat trivialization only");
    if (!state.shape_matches(grid)) throw std::invalid_argument("rhs: state/grid shape mismatch");

    const std::size_t n = static_cast<std::size_t>(grid.n);
    const DerivedFields der = derive(state, grid, params);
    const Field dpi_s = d_ds(der.pi_s, grid);
    const Field dmu_s = d_ds(der.mu_s, grid);
    const Field domega_t = d_ds(der.omega_t, grid);
    const double v2 = params.v * params.v;
    const double cs = static_cast<double>(closure_sign);

    StateDeriv out;
    out.rho.resize(n);
    out.pi_t.resize(n);
    out.mu_t.resize(n);
    out.omega_s.resize(n);
    parallel::parallel_for(n, 16384, [&](std::size_t b, std::size_t e) {
        for (std::size_t j = b; j < e; ++j) {
            const Vec3& om_s = state.omega_s[j];
            const Vec3& om_t = der.omega_t[j];
            out.rho[j] = -v2 * state.pi_t[j] + state.rho[j].cross(om_t);
            out.pi_t[j] = -dpi_s[j] + der.pi_s[j].cross(om_s) + state.pi_t[j].cross(om_t) -
                          potential_force(params.potential, state.rho[j]);
            out.mu_t[j] = -dmu_s[j] + der.mu_s[j].cross(om_s) + state.mu_t[j].cross(om_t);
            out.omega_s[j] = domega_t[j] + cs * om_s.cross(om_t);
        }
    });
    return out;
}

namespace {

void axpy(Field& y, double a, const Field& x) {
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += a * x[j];
}

StrandState offset(const StrandState& s, double a, const StateDeriv& d) {
    StrandState r = s;
    axpy(r.rho, a, d.rho);
    axpy(r.pi_t, a, d.pi_t);
    axpy(r.mu_t, a, d.mu_t);
    axpy(r.omega_s, a, d.omega_s);
    return r;
}

bool deriv_finite(const StateDeriv& d) {
    return all_finite(d.rho) && all_finite(d.pi_t) && all_finite(d.mu_t) &&
           all_finite(d.omega_s);
}

} // namespace

StrandState step_rk4(const StrandState& state, const Grid1D& grid,
                     const HamiltonianParams& params, double dt, int closure_sign) {
    if (!(dt > 0.0)) throw std::invalid_argument("step_rk4: dt must be > 0");
    const StateDeriv k1 = rhs(state, grid, params, closure_sign);
    if (!deriv_finite(k1)) throw BlowupError{state.t};
    const StateDeriv k2 = rhs(offset(state, 0.5 * dt, k1), grid, params, closure_sign);
    if (!deriv_finite(k2)) throw BlowupError{state.t};
    const StateDeriv k3 = rhs(offset(state, 0.5 * dt, k2), grid, params, closure_sign);
    if (!deriv_finite(k3)) throw BlowupError{state.t};
    const StateDeriv k4 = rhs(offset(state, dt, k3), grid, params, closure_sign);
    if (!deriv_finite(k4)) throw BlowupError{state.t};

    StrandState next = state;
    const double w = dt / 6.0;
    for (std::size_t j = 0; j < next.size(); ++j) {
        next.rho[j] += w * (k1.rho[j] + 2.0 * k2.rho[j] + 2.0 * k3.rho[j] + k4.rho[j]);
        next.pi_t[j] += w * (k1.pi_t[j] + 2.0 * k2.pi_t[j] + 2.0 * k3.pi_t[j] + k4.pi_t[j]);
        next.mu_t[j] += w * (k1.mu_t[j] + 2.0 * k2.mu_t[j] + 2.0 * k3.mu_t[j] + k4.mu_t[j]);
        next.omega_s[j] +=
            w * (k1.omega_s[j] + 2.0 * k2.omega_s[j] + 2.0 * k3.omega_s[j] + k4.omega_s[j]);
    }
    if (!next.finite()) throw BlowupError{state.t};
    return next;
}

RunResult run(const StrandState& initial, const Grid1D& grid, const HamiltonianParams& params,
              const IntegratorConfig& cfg, int closure_sign) {
    cfg.validate();
    params.validate();
    if (!initial.shape_matches(grid)) throw std::invalid_argument("run: state/grid mismatch");

    RunResult result;
    SolutionSeries& series = result.series;
    series.grid = grid;
    series.params = params;

    long n_steps = 0;
    double dt = 0.0;
    long stride = cfg.snapshot_stride;
    if (cfg.t_end > 0.0) {
        const double dt0 = cfg.cfl_step(grid, params);
        n_steps = static_cast<long>(std::ceil(cfg.t_end / dt0 * (1.0 - 1e-12)));
        if (n_steps < 1) n_steps = 1;
        stride = std::min<long>(stride, n_steps);
        n_steps = ((n_steps + stride - 1) / stride) * stride;
        dt = cfg.t_end / static_cast<double>(n_steps);
    }
    series.dt = dt;

    StrandState state = initial;
    state.t = 0.0;

    auto record_diag = [&](const StrandState& st) {
        const DerivedFields der = derive(st, grid, params);
        SolutionSeries::DiagRow row;
        row.t = st.t;
        row.energy = energy(st, der, grid, params);
        // spatial Legendre relations, recomputed: ~0 by construction
        const Field drho = d_ds(st.rho, grid);
        double lp = 0.0, lm = 0.0;
        for (std::size_t j = 0; j < st.size(); ++j) {
            const Vec3 dh_pi_s =
                deriv_pi_s(point_at(st, der, j), params); // equals d_ds rho on solutions
            lp = std::fmax(lp, (drho[j] - dh_pi_s).norm());
            const Vec3 om = -params.inertia_j.apply_inverse(der.mu_s[j] -
                                                            st.rho[j].cross(der.pi_s[j]));
            lm = std::fmax(lm, (om - st.omega_s[j]).norm());
        }
        row.legendre_pi = lp;
        row.legendre_mu = lm;
        series.diagnostics.push_back(row);
    };

    series.snapshots.push_back(state);
    record_diag(state);

    for (long step = 1; step <= n_steps; ++step) {
        try {
            state = step_rk4(state, grid, params, dt, closure_sign);
        } catch (const BlowupError& b) {
            result.blowup_time = b.t;
            break;
        }
        state.t = static_cast<double>(step) * dt;
        if (step % stride == 0) series.snapshots.push_back(state);
        if (step % cfg.diagnostics_stride == 0 || step == n_steps) record_diag(state);
    }

    if (series.snapshots.size() >= 2 && !result.blew_up())
        series.recon_defect = reconstruction_defect(series, params);
    return result;
}

std::vector<double> reconstruction_defect(const SolutionSeries& series,
                                          const HamiltonianParams& params) {
    const std::size_t snaps = series.snapshots.size();
    if (snaps < 2) throw std::invalid_argument("reconstruction_defect: need >= 2 snapshots");
    const double dt = series.snapshot_spacing();
    const Grid1D& grid = series.grid;
    const std::size_t n = static_cast<std::size_t>(grid.n);

    std::vector<Field> omega_t(snaps);
    for (std::size_t k = 0; k < snaps; ++k)
        omega_t[k] = derive(series.snapshots[k], grid, params).omega_t;

    std::vector<Mat3> rot(n, Mat3::identity());
    std::vector<double> defect(snaps, 0.0);

    auto measure = [&](std::size_t k) {
        // vee(R^T d_ds R) vs the stored omega_s, max over the grid
        double m = 0.0;
        const Field& om_s = series.snapshots[k].omega_s;
        const double inv2ds = 1.0 / (2.0 * grid.spacing());
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t jp = (j + 1 == n) ? 0 : j + 1;
            const std::size_t jm = (j == 0) ? n - 1 : j - 1;
            const Mat3 dr = (rot[jp] - rot[jm]) * inv2ds;
            const Vec3 rec = vee(rot[j].transpose() * dr);
            m = std::fmax(m, (rec - om_s[j]).norm());
        }
        return m;
    };

    defect[0] = measure(0);
    for (std::size_t k = 0; k + 1 < snaps; ++k) {
        parallel::parallel_for(n, 512, [&](std::size_t b, std::size_t e) {
            for (std::size_t j = b; j < e; ++j) {
                const Mat3 w0 = hat(omega_t[k][j]);
                const Mat3 w1 = hat(omega_t[k + 1][j]);
                const Mat3 wm = 0.5 * (w0 + w1); // linear interpolation at midpoint
                Mat3& r = rot[j];
                const Mat3 k1 = r * w0;
                const Mat3 k2 = (r + (0.5 * dt) * k1) * wm;
                const Mat3 k3 = (r + (0.5 * dt) * k2) * wm;
                const Mat3 k4 = (r + dt * k3) * w1;
                r = r + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                r = project_so3(r);
            }
        });
        defect[k + 1] = measure(k + 1);
    }
    return defect;
}

} // namespace strand
