#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>

#include "strand/brackets.hpp"
#include "strand/convergence.hpp"
#include "strand/identity.hpp"
#include "strand/rng.hpp"

using namespace strand;

namespace {
const double pi = std::numbers::pi;
const Vec3 e1 = Vec3::basis(0);
const Vec3 e2 = Vec3::basis(1);
const Vec3 e3 = Vec3::basis(2);

StrandPoint random_point(SplitMix64& rng) {
    return StrandPoint{rng.vec3(), rng.vec3(), rng.vec3(), rng.vec3(), rng.vec3()};
}

HamiltonianDerivs random_partials(SplitMix64& rng) {
    return HamiltonianDerivs{rng.vec3(), rng.vec3(), rng.vec3(), rng.vec3(), rng.vec3()};
}

// The proof's un-simplified horizontal differential, with the
// half-antisymmetrized Lambda contraction written out verbatim.
double horizontal_differential_half_route(const FormValue& f, const StrandPoint& pt,
                                          const ConnectionCoefficients& conn,
                                          const StructureConstants& sc) {
    const Vec3 mu[2] = {pt.mu_s, pt.mu_t};
    const Vec3 pi_m[2] = {pt.pi_s, pt.pi_t};
    double q = 0.0;
    for (int i = 0; i < 2; ++i) {
        // + 1/2 mu^i_g c^g_{ba} xi^b Lambda^a_i
        for (int g = 0; g < 3; ++g)
            for (int b = 0; b < 3; ++b)
                for (int a = 0; a < 3; ++a)
                    q += 0.5 * mu[i][g] * sc(g, b, a) * f.xi[b] * conn.lambda_k[i][a];
        // + xi^a (-1/2 c^b_{ga} Lambda^g_i mu^i_b + Gamma terms)
        for (int a = 0; a < 3; ++a) {
            double coeff = 0.0;
            for (int b = 0; b < 3; ++b)
                for (int g = 0; g < 3; ++g)
                    coeff -= 0.5 * sc(b, g, a) * conn.lambda_k[i][g] * mu[i][b];
            for (int k = 0; k < 2; ++k)
                coeff += conn.christoffel[i][i][k] * mu[k][a] -
                         conn.christoffel[k][i][k] * mu[i][a];
            q += f.xi[a] * coeff;
        }
        Vec3 yslot{};
        for (int k = 0; k < 2; ++k)
            yslot += conn.christoffel[i][i][k] * pi_m[k] - conn.christoffel[k][i][k] * pi_m[i];
        q += f.y.dot(yslot);
    }
    return q;
}

} // namespace

TEST_CASE("lie_poisson_bracket examples and properties") {
    CHECK(lie_poisson_bracket(e1, e3, e2) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(lie_poisson_bracket(e2, Vec3{0.3, -1.0, 2.0}, 5.0 * e2) == 0.0);

    SplitMix64 rng(61);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 xi = rng.vec3(), mu = rng.vec3(), v = rng.vec3();
        // pairing route: -<mu, xi x v> = -<mu x xi, v> = -<ad*_xi mu, v>
        CHECK(std::fabs(lie_poisson_bracket(xi, mu, v) + ad_star(xi, mu).dot(v)) <= 1e-12);
        // antisymmetry in xi <-> dh slot
        CHECK(lie_poisson_bracket(xi, mu, v) == -lie_poisson_bracket(v, mu, xi));
    }
}

TEST_CASE("reduced_bracket: canonical hand cases") {
    // theta_xi with xi = e1; mu_t = e3, dh/dmu_t = e2, everything else zero
    FormValue f{e1, Vec3{}};
    StrandPoint pt{};
    pt.mu_t = e3;
    HamiltonianDerivs dh{};
    dh.mu_t = e2;
    CHECK(reduced_bracket(f, pt, dh) == doctest::Approx(-1.0).epsilon(1e-15));

    // theta_Y with Y = e1 against dh/drho = e1
    FormValue g{Vec3{}, e1};
    StrandPoint pt2{};
    HamiltonianDerivs dh2{};
    dh2.rho = e1;
    CHECK(reduced_bracket(g, pt2, dh2) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("full bracket invariant equals reduced bracket") {
    const StructureConstants sc = StructureConstants::so3();

    // hand expansion of the half-antisymmetrization
    FormValue f{e1, Vec3{}};
    StrandPoint pt{};
    pt.mu_t = e3;
    HamiltonianDerivs dh{};
    dh.mu_t = e2;
    CHECK(full_bracket_invariant(f, pt, dh, sc) == doctest::Approx(-1.0).epsilon(1e-15));

    // with all mu zero both reduce to the canonical terms
    SplitMix64 rng(67);
    for (int i = 0; i < 100; ++i) {
        FormValue h{rng.vec3(), rng.vec3()};
        StrandPoint p = random_point(rng);
        p.mu_s = p.mu_t = Vec3{};
        const HamiltonianDerivs d = random_partials(rng);
        CHECK(full_bracket_invariant(h, p, d, sc) == reduced_bracket(h, p, d));
    }

    CHECK(bracket_reduction_error(42, 1000, sc) <= 1e-12);
}

TEST_CASE("perturbed structure constants break the reduction identity") {
    StructureConstants sc = StructureConstants::so3();
    sc.at(2, 0, 1) += 1e-6;
    CHECK(bracket_reduction_error(42, 200, sc) > 1e-8);
}

TEST_CASE("horizontal differential: flat case vanishes exactly") {
    const StructureConstants sc = StructureConstants::so3();
    const ConnectionCoefficients flat{};
    SplitMix64 rng(71);
    for (int i = 0; i < 200; ++i) {
        const FormValue f{rng.vec3(), rng.vec3()};
        CHECK(horizontal_differential(f, random_point(rng), flat, sc) == 0.0);
    }
}

TEST_CASE("horizontal differential: constant-Lambda hand values") {
    const StructureConstants sc = StructureConstants::so3();

    // xi = e2, Lambda^b_s = e1, mu_s = e3: -e3.(e1 x e2) = -1
    {
        ConnectionCoefficients conn;
        conn.lambda_k[DIR_S] = e1;
        StrandPoint pt{};
        pt.mu_s = e3;
        const FormValue f{e2, Vec3{}};
        CHECK(horizontal_differential(f, pt, conn, sc) == doctest::Approx(-1.0).epsilon(1e-15));
    }
    // symmetric Gamma^s_{ss} = 1: the two Gamma terms cancel identically
    {
        ConnectionCoefficients conn;
        conn.christoffel[0][0][0] = 1.0;
        StrandPoint pt{};
        pt.mu_s = Vec3{0.4, 1.0, -2.0};
        pt.pi_s = Vec3{1.0, 0.0, 0.5};
        const FormValue f{Vec3{1, 2, 3}, Vec3{-1, 0.5, 2}};
        CHECK(horizontal_differential(f, pt, conn, sc) == 0.0);
    }
    // asymmetric Gamma^s_{st} = 1 fires <xi, mu_t> + <Y, pi_t>
    {
        ConnectionCoefficients conn;
        conn.christoffel[0][0][1] = 1.0;
        StrandPoint pt{};
        pt.mu_t = Vec3{0.5, 0.0, -0.25};
        pt.pi_t = Vec3{0.0, 2.0, 1.0};
        const FormValue f{Vec3{1.0, -1.0, 2.0}, Vec3{0.5, 0.5, 0.0}};
        const double expect = f.xi.dot(pt.mu_t) + f.y.dot(pt.pi_t);
        CHECK(horizontal_differential(f, pt, conn, sc) ==
              doctest::Approx(expect).epsilon(1e-15));
    }
}

TEST_CASE("horizontal differential: half-antisymmetrized route agrees") {
    const StructureConstants sc = StructureConstants::so3();
    SplitMix64 rng(73);
    for (int i = 0; i < 300; ++i) {
        ConnectionCoefficients conn;
        conn.lambda_k = {rng.vec3(), rng.vec3()};
        conn.lambda_e = {rng.vec3(), rng.vec3()};
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c) conn.christoffel[a][b][c] = rng.uniform(-1, 1);
        const FormValue f{rng.vec3(), rng.vec3()};
        const StrandPoint pt = random_point(rng);
        const double lhs = horizontal_differential(f, pt, conn, sc);
        const double rhs = horizontal_differential_half_route(f, pt, conn, sc);
        CHECK(std::fabs(lhs - rhs) <= 1e-14);
    }
}

TEST_CASE("theorem residual: zero solution gives zero residual") {
    const Grid1D grid(16, 2.0 * pi);
    HamiltonianParams params;
    SolutionSeries series;
    series.grid = grid;
    for (int k = 0; k < 4; ++k) {
        StrandState st = StrandState::zero(grid);
        st.t = 0.25 * k;
        series.snapshots.push_back(st);
    }
    AffinePoissonForm f; // zero coefficients
    CHECK(theorem_residual(f, series, params).max_abs() == 0.0);

    // constant omega / Upsilon coefficients also drop out exactly
    f.omega_h = {2.5, -1.0};
    f.upsilon = {0.7, 3.0};
    CHECK(theorem_residual(f, series, params).max_abs() == 0.0);
}

TEST_CASE("theorem residual: analytic standing wave, theta_Y, order >= 2") {
    // rho = A sin(ks) cos(kvt) e1, pi_t = -d_t rho / v^2, mu and omega zero.
    HamiltonianParams params;
    params.v = 1.0;
    const double amp = 0.4, wavenumber = 1.0;

    std::vector<std::pair<double, double>> pts;
    for (int n : {32, 64, 128}) {
        const Grid1D grid(n, 2.0 * pi);
        const double dt_snap = grid.spacing();
        const int snaps = 9;
        SolutionSeries series;
        series.grid = grid;
        for (int k = 0; k < snaps; ++k) {
            const double t = k * dt_snap;
            StrandState st = StrandState::zero(grid);
            st.t = t;
            for (int j = 0; j < n; ++j) {
                const double s = grid.point(j);
                st.rho[static_cast<std::size_t>(j)] =
                    amp * std::sin(wavenumber * s) * std::cos(wavenumber * t) * e1;
                st.pi_t[static_cast<std::size_t>(j)] =
                    amp * wavenumber * std::sin(wavenumber * s) * std::sin(wavenumber * t) * e1;
            }
            series.snapshots.push_back(st);
        }
        AffinePoissonForm f;
        f.y.constant = Vec3{1.0, 0.5, -0.25};
        pts.emplace_back(grid.spacing(), theorem_residual(f, series, params).max_abs());
    }
    const ConvergenceReport rep = estimate_order(pts, 2.0, 0.3);
    CHECK(rep.order >= 1.8);
    CHECK(rep.order <= 2.3);
}

TEST_CASE("theorem residual: insensitive to Upsilon, errors on bad series") {
    const Grid1D grid(16, 2.0 * pi);
    HamiltonianParams params;
    SolutionSeries series;
    series.grid = grid;
    SplitMix64 rng(79);
    for (int k = 0; k < 5; ++k) {
        StrandState st = StrandState::zero(grid);
        st.t = 0.1 * k;
        for (auto& v : st.rho) v = rng.vec3(-0.3, 0.3);
        for (auto& v : st.pi_t) v = rng.vec3(-0.3, 0.3);
        for (auto& v : st.mu_t) v = rng.vec3(-0.3, 0.3);
        for (auto& v : st.omega_s) v = rng.vec3(-0.3, 0.3);
        series.snapshots.push_back(st);
    }
    AffinePoissonForm f = random_form(rng);
    AffinePoissonForm g = f;
    g.upsilon = {17.0, -4.0};
    const ResidualField rf = theorem_residual(f, series, params);
    const ResidualField rg = theorem_residual(g, series, params);
    for (std::size_t k = 0; k < rf.values.size(); ++k)
        for (std::size_t j = 0; j < rf.values[k].size(); ++j)
            CHECK(std::fabs(rf.values[k][j] - rg.values[k][j]) <= 1e-12);

    SolutionSeries tiny;
    tiny.grid = grid;
    tiny.snapshots.assign(2, StrandState::zero(grid));
    tiny.snapshots[1].t = 0.1;
    CHECK_THROWS_AS(theorem_residual(f, tiny, params), std::invalid_argument);

    series.snapshots[3].t += 0.05; // non-uniform
    CHECK_THROWS_AS(theorem_residual(f, series, params), std::runtime_error);
}
