#include "strand/hamiltonian.hpp"

namespace strand {

double density(const StrandPoint& p, const HamiltonianParams& params) {
    const Vec3 u = p.mu_t - p.rho.cross(p.pi_t);
    const Vec3 w = p.mu_s - p.rho.cross(p.pi_s);
    return 0.5 * p.pi_s.dot(p.pi_s) - 0.5 * params.v * params.v * p.pi_t.dot(p.pi_t) +
           params.potential.value(p.rho.norm()) +
           0.5 * u.dot(params.inertia_i.apply_inverse(u)) -
           0.5 * w.dot(params.inertia_j.apply_inverse(w));
}

HamiltonianDerivs derivatives(const StrandPoint& p, const HamiltonianParams& params) {
    const Vec3 iu = params.inertia_i.apply_inverse(p.mu_t - p.rho.cross(p.pi_t));
    const Vec3 jw = params.inertia_j.apply_inverse(p.mu_s - p.rho.cross(p.pi_s));
    HamiltonianDerivs d;
    d.mu_s = -jw;
    d.mu_t = iu;
    d.pi_s = p.pi_s - p.rho.cross(jw);
    d.pi_t = -(params.v * params.v) * p.pi_t + p.rho.cross(iu);
    d.rho = p.pi_s.cross(jw) - p.pi_t.cross(iu) + potential_force(params.potential, p.rho);
    return d;
}

Vec3 deriv_mu_s(const StrandPoint& p, const HamiltonianParams& params) {
    return derivatives(p, params).mu_s;
}
Vec3 deriv_mu_t(const StrandPoint& p, const HamiltonianParams& params) {
    return derivatives(p, params).mu_t;
}
Vec3 deriv_pi_s(const StrandPoint& p, const HamiltonianParams& params) {
    return derivatives(p, params).pi_s;
}
Vec3 deriv_pi_t(const StrandPoint& p, const HamiltonianParams& params) {
    return derivatives(p, params).pi_t;
}
Vec3 deriv_rho(const StrandPoint& p, const HamiltonianParams& params) {
    return derivatives(p, params).rho;
}

StrandPoint point_at(const StrandState& state, const DerivedFields& derived, std::size_t j) {
    return StrandPoint{derived.mu_s[j], state.mu_t[j], state.rho[j], derived.pi_s[j],
                       state.pi_t[j]};
}

double energy(const StrandState& state, const DerivedFields& derived, const Grid1D& grid,
              const HamiltonianParams& params) {
    // serial sum: keeps output bit-identical across thread counts
    double acc = 0.0;
    for (std::size_t j = 0; j < state.size(); ++j) {
        const StrandPoint p = point_at(state, derived, j);
        const HamiltonianDerivs d = derivatives(p, params);
        acc += density(p, params) - p.pi_s.dot(d.pi_s) - p.mu_s.dot(d.mu_s);
    }
    return acc * grid.spacing();
}

double energy(const StrandState& state, const Grid1D& grid, const HamiltonianParams& params) {
    return energy(state, derive(state, grid, params), grid, params);
}

} // namespace strand
