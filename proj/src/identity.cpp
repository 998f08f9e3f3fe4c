#include "strand/identity.hpp"

#include <cmath>
#include <numbers>

#include "strand/brackets.hpp"
#include "strand/hamiltonian.hpp"
#include "strand/rng.hpp"

namespace strand {

bool IdentityReport::all_pass() const {
    for (const CheckResult& c : checks)
        if (!c.pass) return false;
    return true;
}

const CheckResult* IdentityReport::find(const std::string& name) const {
    for (const CheckResult& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

HamiltonianParams identity_suite_params() {
    HamiltonianParams p;
    p.inertia_i = InertiaOperator::diagonal(1.0, 2.0, 0.5);
    p.inertia_j = InertiaOperator::diagonal(0.7, 1.3, 2.1);
    p.v = 1.3;
    p.potential = RadialPotential::quadratic(0.8, 0.0);
    return p;
}

namespace {

StrandPoint random_point(SplitMix64& rng) {
    return StrandPoint{rng.vec3(), rng.vec3(), rng.vec3(), rng.vec3(), rng.vec3()};
}

HamiltonianDerivs random_partials(SplitMix64& rng) {
    return HamiltonianDerivs{rng.vec3(), rng.vec3(), rng.vec3(), rng.vec3(), rng.vec3()};
}

double* coord(StrandPoint& p, int idx) {
    Vec3* fields[5] = {&p.mu_s, &p.mu_t, &p.rho, &p.pi_s, &p.pi_t};
    return &(*fields[idx / 3])[idx % 3];
}

} // namespace

double gradient_fd_error(std::uint64_t seed, int points, const HamiltonianParams& params) {
    SplitMix64 rng(seed);
    const double h = 1e-5;
    double worst = 0.0;
    for (int trial = 0; trial < points; ++trial) {
        StrandPoint p = random_point(rng);
        const HamiltonianDerivs d = derivatives(p, params);
        const Vec3* exact[5] = {&d.mu_s, &d.mu_t, &d.rho, &d.pi_s, &d.pi_t};
        for (int idx = 0; idx < 15; ++idx) {
            double* slot = coord(p, idx);
            const double saved = *slot;
            *slot = saved + h;
            const double hp = density(p, params);
            *slot = saved - h;
            const double hm = density(p, params);
            *slot = saved;
            const double fd = (hp - hm) / (2.0 * h);
            const double ex = (*exact[idx / 3])[idx % 3];
            worst = std::fmax(worst, std::fabs(fd - ex) / std::fmax(1.0, std::fabs(ex)));
        }
    }
    return worst;
}

double bracket_reduction_error(std::uint64_t seed, int trials, const StructureConstants& sc) {
    SplitMix64 rng(seed);
    double worst = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        const FormValue f{rng.vec3(), rng.vec3()};
        const StrandPoint pt = random_point(rng);
        const HamiltonianDerivs dh = random_partials(rng);
        worst = std::fmax(worst, std::fabs(full_bracket_invariant(f, pt, dh, sc) -
                                           reduced_bracket(f, pt, dh)));
    }
    return worst;
}

IdentityReport identity_suite(std::uint64_t seed, int trials, const StructureConstants& sc,
                              const std::map<std::string, double>& tol_overrides) {
    IdentityReport report;
    report.seed = seed;
    report.trials = trials;

    auto add = [&](const std::string& name, double err, double tol, int used_trials) {
        auto it = tol_overrides.find(name);
        if (it != tol_overrides.end()) tol = it->second;
        report.checks.push_back(CheckResult{name, err, tol, used_trials, err <= tol});
    };

    // --- algebra ---
    add("structure_constants_antisymmetry", sc.antisymmetry_defect(), 0.0, 1);
    add("structure_constants_jacobi", sc.jacobi_defect(), 0.0, 1);

    {
        SplitMix64 rng(seed ^ 0x01);
        double err = 0.0;
        for (int i = 0; i < trials; ++i) {
            const Vec3 x = rng.vec3(), y = rng.vec3();
            err = std::fmax(err, (bracket(x, y) - sc.contract(x, y)).max_abs());
        }
        add("bracket_matches_structure_constants", err, 1e-12, trials);
    }
    {
        SplitMix64 rng(seed ^ 0x02);
        double err = 0.0;
        for (int i = 0; i < trials; ++i) {
            const Vec3 xi = rng.vec3(), mu = rng.vec3(), eta = rng.vec3();
            err = std::fmax(err,
                            std::fabs(ad_star(xi, mu).dot(eta) - mu.dot(bracket(xi, eta))));
        }
        add("ad_star_pairing", err, 1e-12, trials);
    }
    {
        SplitMix64 rng(seed ^ 0x03);
        double err = 0.0;
        for (int i = 0; i < trials; ++i) {
            const Mat3 r = exp_so3(rng.vec3(-3.0, 3.0));
            err = std::fmax(err, (r.transpose() * r - Mat3::identity()).max_abs());
            err = std::fmax(err, std::fabs(r.det() - 1.0));
        }
        add("exp_so3_orthogonality", err, 1e-12, trials);
    }
    {
        SplitMix64 rng(seed ^ 0x04);
        double err = 0.0;
        for (int i = 0; i < trials; ++i) {
            const Vec3 w = rng.vec3(-10.0 / std::sqrt(3.0), 10.0 / std::sqrt(3.0));
            err = std::fmax(err, (exp_so3(w) * exp_so3(-w) - Mat3::identity()).max_abs());
        }
        add("exp_so3_inverse", err, 1e-10, trials);
    }

    // --- hamiltonian ---
    const HamiltonianParams params = identity_suite_params();
    add("hamiltonian_gradients_fd", gradient_fd_error(seed ^ 0x05, trials, params), 1e-6,
        trials);
    {
        HamiltonianParams iso;
        iso.inertia_i = InertiaOperator::diagonal(1.7, 1.7, 1.7);
        iso.inertia_j = InertiaOperator::diagonal(0.6, 0.6, 0.6);
        iso.v = 1.1;
        iso.potential = RadialPotential::quadratic(0.9, 0.0);
        SplitMix64 rng(seed ^ 0x06);
        double err = 0.0;
        for (int i = 0; i < trials; ++i) {
            const StrandPoint p = random_point(rng);
            const Mat3 r = exp_so3(rng.vec3(-std::numbers::pi, std::numbers::pi));
            const StrandPoint q{r * p.mu_s, r * p.mu_t, r * p.rho, r * p.pi_s, r * p.pi_t};
            err = std::fmax(err, std::fabs(density(q, iso) - density(p, iso)));
        }
        add("density_rotation_invariance", err, 1e-12, trials);
    }
    {
        SplitMix64 rng(seed ^ 0x07);
        double err = 0.0;
        for (int i = 0; i < trials; ++i) {
            StrandPoint p = random_point(rng);
            p.mu_s = p.mu_t = p.rho = Vec3{};
            const double expect = 0.5 * p.pi_s.dot(p.pi_s) -
                                  0.5 * params.v * params.v * p.pi_t.dot(p.pi_t) +
                                  params.potential.value(0.0);
            err = std::fmax(err, std::fabs(density(p, params) - expect));
        }
        add("density_sign_structure", err, 0.0, trials);
    }

    // --- brackets ---
    add("bracket_reduction_identity", bracket_reduction_error(seed ^ 0x08, trials, sc), 1e-12,
        trials);
    {
        SplitMix64 rng(seed ^ 0x09);
        double err = 0.0;
        for (int i = 0; i < trials; ++i) {
            const Vec3 xi = rng.vec3(), mu = rng.vec3(), v = rng.vec3();
            err = std::fmax(err, std::fabs(lie_poisson_bracket(xi, mu, v) +
                                           lie_poisson_bracket(v, mu, xi)));
        }
        add("lie_poisson_antisymmetry", err, 0.0, trials);
    }
    {
        SplitMix64 rng(seed ^ 0x0a);
        const ConnectionCoefficients flat{};
        double err = 0.0;
        for (int i = 0; i < trials; ++i) {
            const FormValue f{rng.vec3(), rng.vec3()};
            err = std::fmax(err,
                            std::fabs(horizontal_differential(f, random_point(rng), flat, sc)));
        }
        add("horizontal_differential_flat_zero", err, 0.0, trials);
    }
    {
        double err = 0.0;
        // -mu^s . (Lambda_s x xi) with xi = e2, Lambda^b_s = e1, mu^s = e3
        {
            ConnectionCoefficients conn;
            conn.lambda_k[DIR_S] = Vec3::basis(0);
            StrandPoint pt{};
            pt.mu_s = Vec3::basis(2);
            const FormValue f{Vec3::basis(1), Vec3{}};
            err = std::fmax(err, std::fabs(horizontal_differential(f, pt, conn, sc) - (-1.0)));
        }
        // diagonal Christoffel Gamma^s_{ss} = 1 cancels identically
        {
            ConnectionCoefficients conn;
            conn.christoffel[0][0][0] = 1.0;
            StrandPoint pt{};
            pt.mu_s = Vec3{0.3, -0.2, 0.9};
            pt.pi_s = Vec3{-1.1, 0.4, 0.2};
            const FormValue f{Vec3{1, 1, 1}, Vec3{1, 1, 1}};
            err = std::fmax(err, std::fabs(horizontal_differential(f, pt, conn, sc)));
        }
        // asymmetric Gamma^s_{st} = 1 fires <xi, mu^t> + <Y, pi^t>
        {
            ConnectionCoefficients conn;
            conn.christoffel[0][0][1] = 1.0;
            StrandPoint pt{};
            pt.mu_t = Vec3{0.5, 0.0, -0.25};
            pt.pi_t = Vec3{0.0, 2.0, 1.0};
            const FormValue f{Vec3{1.0, -1.0, 2.0}, Vec3{0.5, 0.5, 0.0}};
            const double expect = f.xi.dot(pt.mu_t) + f.y.dot(pt.pi_t);
            err = std::fmax(err, std::fabs(horizontal_differential(f, pt, conn, sc) - expect));
        }
        add("horizontal_differential_constant_lambda", err, 1e-12, 3);
    }
    {
        SplitMix64 rng(seed ^ 0x0b);
        double err = 0.0;
        for (int i = 0; i < trials; ++i) {
            ConnectionCoefficients conn;
            conn.lambda_k = {rng.vec3(), rng.vec3()};
            conn.lambda_e = {rng.vec3(), rng.vec3()};
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    for (int c = 0; c < 2; ++c) conn.christoffel[a][b][c] = rng.uniform(-1, 1);
            const StrandPoint pt = random_point(rng);
            const FormValue f1{rng.vec3(), rng.vec3()};
            const FormValue f2{rng.vec3(), rng.vec3()};
            const double alpha = rng.uniform();
            const FormValue mix{alpha * f1.xi + (1.0 - alpha) * f2.xi,
                                alpha * f1.y + (1.0 - alpha) * f2.y};
            const double lhs = horizontal_differential(mix, pt, conn, sc);
            const double rhs = alpha * horizontal_differential(f1, pt, conn, sc) +
                               (1.0 - alpha) * horizontal_differential(f2, pt, conn, sc);
            err = std::fmax(err, std::fabs(lhs - rhs));
        }
        add("horizontal_differential_linearity", err, 1e-12, trials);
    }

    return report;
}

} // namespace strand
