#include "strand/brackets.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "strand/parallel.hpp"

namespace strand {

Vec3 FourierSection::eval(double s, double length) const {
    Vec3 v = constant;
    const double base = 2.0 * std::numbers::pi / length;
    for (const FourierMode& m : modes)
        v[m.component] += m.amplitude * std::sin(base * m.wavenumber * s + m.phase);
    return v;
}

Vec3 FourierSection::deriv(double s, double length) const {
    Vec3 v{};
    const double base = 2.0 * std::numbers::pi / length;
    for (const FourierMode& m : modes) {
        const double k = base * m.wavenumber;
        v[m.component] += m.amplitude * k * std::cos(k * s + m.phase);
    }
    return v;
}

double lie_poisson_bracket(const Vec3& xi, const Vec3& mu, const Vec3& dh_dmu) {
    return -mu.dot(xi.cross(dh_dmu));
}

double reduced_bracket(const FormValue& f, const StrandPoint& pt, const HamiltonianDerivs& dh) {
    const Vec3 df_dz{}; // xi, Y carry no fiber dependence
    double r = lie_poisson_bracket(f.xi, pt.mu_s, dh.mu_s) +
               lie_poisson_bracket(f.xi, pt.mu_t, dh.mu_t);
    r += df_dz.dot(dh.pi_s) + df_dz.dot(dh.pi_t);
    r -= f.y.dot(dh.rho);
    return r;
}

double full_bracket_invariant(const FormValue& f, const StrandPoint& pt,
                              const HamiltonianDerivs& dh, const StructureConstants& sc) {
    const Vec3 mu[2] = {pt.mu_s, pt.mu_t};
    const Vec3 dh_mu[2] = {dh.mu_s, dh.mu_t};
    // r = -1/2 mu^j_g c^g_{ba} (df^i/dmu^j_b)(dh/dmu^i_a)
    //     + (df^i/dmu^i_a) 1/2 mu^j_g c^g_{ba} (dh/dmu^j_b) + canonical E-terms,
    // with df^i/dmu^j_b = xi^b d^i_j contracted in the first term and the
    // diagonal value df^i/dmu^i_a = xi^a in the second.
    double r = 0.0;
    for (int j = 0; j < 2; ++j)
        for (int g = 0; g < 3; ++g)
            for (int b = 0; b < 3; ++b)
                for (int a = 0; a < 3; ++a)
                    r += -0.5 * mu[j][g] * sc(g, b, a) * f.xi[b] * dh_mu[j][a];
    for (int j = 0; j < 2; ++j)
        for (int g = 0; g < 3; ++g)
            for (int b = 0; b < 3; ++b)
                for (int a = 0; a < 3; ++a)
                    r += f.xi[a] * 0.5 * mu[j][g] * sc(g, b, a) * dh_mu[j][b];
    const Vec3 df_dz{};
    r += df_dz.dot(dh.pi_s) + df_dz.dot(dh.pi_t);
    r -= f.y.dot(dh.rho);
    return r;
}

double horizontal_differential(const FormValue& f, const StrandPoint& pt,
                               const ConnectionCoefficients& conn,
                               const StructureConstants& sc) {
    const Vec3 mu[2] = {pt.mu_s, pt.mu_t};
    const Vec3 pi[2] = {pt.pi_s, pt.pi_t};
    const double df_dx = 0.0; // df^i/dx^i: zero for spatially constant sections
    const Vec3 df_dz{};       // df^i/dz^A: zero, xi and Y carry no fiber dependence

    double q = df_dx;
    for (int i = 0; i < 2; ++i) {
        q += df_dz.dot(conn.lambda_e[i]);
        // xi-slot: -mu^i_g c^g_{ba} Lambda^b_i xi^a + Gamma corrections
        for (int a = 0; a < 3; ++a) {
            double coeff = 0.0;
            for (int g = 0; g < 3; ++g)
                for (int b = 0; b < 3; ++b) coeff -= mu[i][g] * sc(g, b, a) * conn.lambda_k[i][b];
            for (int k = 0; k < 2; ++k)
                coeff += conn.christoffel[i][i][k] * mu[k][a] -
                         conn.christoffel[k][i][k] * mu[i][a];
            q += f.xi[a] * coeff;
        }
        // Y-slot: -(dLambda^B_i/dz^A) pi^i_B - (dLambda^beta_i/dz^A) mu^i_beta
        // vanish identically for constant connection data; Gamma corrections remain.
        Vec3 yslot{};
        for (int k = 0; k < 2; ++k)
            yslot += conn.christoffel[i][i][k] * pi[k] - conn.christoffel[k][i][k] * pi[i];
        q += f.y.dot(yslot);
    }
    return q;
}

double ResidualField::max_abs() const {
    double m = 0.0;
    for (const auto& row : values)
        for (double v : row) m = std::fmax(m, std::fabs(v));
    return m;
}

ResidualField theorem_residual(const AffinePoissonForm& f, const SolutionSeries& series,
                               const HamiltonianParams& params, const StructureConstants& sc) {
    const std::size_t snaps = series.snapshots.size();
    if (snaps < 3) throw std::invalid_argument("theorem_residual: need >= 3 snapshots");
    const double dt_snap = series.snapshot_spacing();
    const Grid1D& grid = series.grid;
    const std::size_t n = static_cast<std::size_t>(grid.n);
    const double length = grid.length;

    // form values along the grid
    std::vector<FormValue> fv(n);
    std::vector<Vec3> xi_prime(n), y_prime(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double s = grid.point(static_cast<int>(j));
        fv[j] = FormValue{f.xi.eval(s, length), f.y.eval(s, length)};
        xi_prime[j] = f.xi.deriv(s, length);
        y_prime[j] = f.y.deriv(s, length);
    }

    // per snapshot: components f^s, f^t of f o (mu + pi) and phase points
    std::vector<std::vector<double>> fs(snaps, std::vector<double>(n));
    std::vector<std::vector<double>> ft(snaps, std::vector<double>(n));
    std::vector<std::vector<StrandPoint>> pts(snaps, std::vector<StrandPoint>(n));
    for (std::size_t k = 0; k < snaps; ++k) {
        const StrandState& st = series.snapshots[k];
        const DerivedFields der = derive(st, grid, params);
        for (std::size_t j = 0; j < n; ++j) {
            const StrandPoint p = point_at(st, der, j);
            pts[k][j] = p;
            fs[k][j] = p.mu_s.dot(fv[j].xi) + p.pi_s.dot(fv[j].y) + f.omega_h[0] + f.upsilon[0];
            ft[k][j] = p.mu_t.dot(fv[j].xi) + p.pi_t.dot(fv[j].y) + f.omega_h[1] + f.upsilon[1];
        }
    }

    ResidualField out;
    out.times.resize(snaps - 2);
    out.values.assign(snaps - 2, std::vector<double>(n, 0.0));
    const double inv2ds = 1.0 / (2.0 * grid.spacing());
    const double inv2dt = 1.0 / (2.0 * dt_snap);
    parallel::parallel_for(snaps - 2, 4, [&](std::size_t kb, std::size_t ke) {
        for (std::size_t ki = kb; ki < ke; ++ki) {
            const std::size_t k = ki + 1;
            out.times[ki] = series.snapshots[k].t;
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t jp = (j + 1 == n) ? 0 : j + 1;
                const std::size_t jm = (j == 0) ? n - 1 : j - 1;
                const double d_exterior = (fs[k][jp] - fs[k][jm]) * inv2ds +
                                          (ft[k + 1][j] - ft[k - 1][j]) * inv2dt;
                const StrandPoint& p = pts[k][j];
                const HamiltonianDerivs dh = derivatives(p, params);
                const double dh_f = horizontal_differential(fv[j], p, params.connection, sc) +
                                    p.mu_s.dot(xi_prime[j]) + p.pi_s.dot(y_prime[j]);
                const double br = reduced_bracket(fv[j], p, dh);
                out.values[ki][j] = d_exterior - dh_f - br;
            }
        }
    });
    return out;
}

AffinePoissonForm random_form(SplitMix64& rng) {
    AffinePoissonForm f;
    f.xi.constant = rng.vec3();
    f.y.constant = rng.vec3();
    const int xi_modes = rng.uniform_int(0, 2);
    for (int m = 0; m < xi_modes; ++m)
        f.xi.modes.push_back(FourierMode{rng.uniform_int(0, 2), rng.uniform_int(1, 3),
                                         rng.uniform(-0.5, 0.5),
                                         rng.uniform(0.0, 2.0 * std::numbers::pi)});
    const int y_modes = rng.uniform_int(0, 2);
    for (int m = 0; m < y_modes; ++m)
        f.y.modes.push_back(FourierMode{rng.uniform_int(0, 2), rng.uniform_int(1, 3),
                                        rng.uniform(-0.5, 0.5),
                                        rng.uniform(0.0, 2.0 * std::numbers::pi)});
    f.omega_h = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    f.upsilon = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    return f;
}

} // namespace strand
