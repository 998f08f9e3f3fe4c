// Python bindings for the main operations: algebra, Hamiltonian,
// dynamics, wave oracle and the identity suite.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <stdexcept>

#include "strand/brackets.hpp"
#include "strand/dynamics.hpp"
#include "strand/identity.hpp"
#include "strand/io.hpp"
#include "strand/so3.hpp"
#include "strand/wave.hpp"

namespace py = pybind11;
using namespace strand;

namespace {

using PyVec = std::array<double, 3>;
using PyMat = std::array<std::array<double, 3>, 3>;

Vec3 to_vec(const PyVec& v) { return Vec3{v[0], v[1], v[2]}; }
PyVec from_vec(const Vec3& v) { return {v.x, v.y, v.z}; }

PyMat from_mat(const Mat3& m) {
    PyMat out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
    return out;
}

Field to_field(const std::vector<PyVec>& v) {
    Field f(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) f[i] = to_vec(v[i]);
    return f;
}

std::vector<PyVec> from_field(const Field& f) {
    std::vector<PyVec> v(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) v[i] = from_vec(f[i]);
    return v;
}

HamiltonianParams make_params(const PyVec& inertia_i, const PyVec& inertia_j, double v,
                              double potential_k) {
    HamiltonianParams p;
    p.inertia_i = InertiaOperator::diagonal(inertia_i[0], inertia_i[1], inertia_i[2]);
    p.inertia_j = InertiaOperator::diagonal(inertia_j[0], inertia_j[1], inertia_j[2]);
    p.v = v;
    p.potential = RadialPotential::quadratic(potential_k, 0.0);
    return p;
}

StrandPoint make_point(const PyVec& mu_s, const PyVec& mu_t, const PyVec& rho,
                       const PyVec& pi_s, const PyVec& pi_t) {
    return StrandPoint{to_vec(mu_s), to_vec(mu_t), to_vec(rho), to_vec(pi_s), to_vec(pi_t)};
}

} // namespace

PYBIND11_MODULE(affinestrand, m) {
    m.doc() = "Reduced covariant Hamiltonian molecular-strand toolkit";

    m.def("bracket",
          [](const PyVec& x, const PyVec& y) { return from_vec(bracket(to_vec(x), to_vec(y))); },
          "Lie bracket on so(3) ~ R^3 (cross product)");
    m.def("ad_star",
          [](const PyVec& xi, const PyVec& mu) {
              return from_vec(ad_star(to_vec(xi), to_vec(mu)));
          },
          "coadjoint action: ad*_xi mu = mu x xi");
    m.def("exp_so3",
          [](const PyVec& omega) { return from_mat(exp_so3(to_vec(omega))); },
          "Rodrigues exponential");

    m.def(
        "density",
        [](const PyVec& mu_s, const PyVec& mu_t, const PyVec& rho, const PyVec& pi_s,
           const PyVec& pi_t, const PyVec& inertia_i, const PyVec& inertia_j, double v,
           double potential_k) {
            return density(make_point(mu_s, mu_t, rho, pi_s, pi_t),
                           make_params(inertia_i, inertia_j, v, potential_k));
        },
        py::arg("mu_s"), py::arg("mu_t"), py::arg("rho"), py::arg("pi_s"), py::arg("pi_t"),
        py::kw_only(), py::arg("inertia_i") = PyVec{1, 1, 1},
        py::arg("inertia_j") = PyVec{1, 1, 1}, py::arg("v") = 1.0,
        py::arg("potential_k") = 0.0, "strand Hamiltonian density");

    m.def(
        "derivatives",
        [](const PyVec& mu_s, const PyVec& mu_t, const PyVec& rho, const PyVec& pi_s,
           const PyVec& pi_t, const PyVec& inertia_i, const PyVec& inertia_j, double v,
           double potential_k) {
            const HamiltonianDerivs d =
                derivatives(make_point(mu_s, mu_t, rho, pi_s, pi_t),
                            make_params(inertia_i, inertia_j, v, potential_k));
            py::dict out;
            out["mu_s"] = from_vec(d.mu_s);
            out["mu_t"] = from_vec(d.mu_t);
            out["pi_s"] = from_vec(d.pi_s);
            out["pi_t"] = from_vec(d.pi_t);
            out["rho"] = from_vec(d.rho);
            return out;
        },
        py::arg("mu_s"), py::arg("mu_t"), py::arg("rho"), py::arg("pi_s"), py::arg("pi_t"),
        py::kw_only(), py::arg("inertia_i") = PyVec{1, 1, 1},
        py::arg("inertia_j") = PyVec{1, 1, 1}, py::arg("v") = 1.0,
        py::arg("potential_k") = 0.0, "the five functional derivatives of density");

    m.def(
        "run_strand",
        [](const std::vector<PyVec>& rho, const std::vector<PyVec>& pi_t,
           const std::vector<PyVec>& mu_t, const std::vector<PyVec>& omega_s, double length,
           double t_end, double cfl_safety, int snapshot_stride, const PyVec& inertia_i,
           const PyVec& inertia_j, double v, double potential_k) {
            const Grid1D grid(static_cast<int>(rho.size()), length);
            StrandState st = StrandState::zero(grid);
            st.rho = to_field(rho);
            st.pi_t = to_field(pi_t);
            st.mu_t = to_field(mu_t);
            st.omega_s = to_field(omega_s);
            IntegratorConfig cfg;
            cfg.cfl_safety = cfl_safety;
            cfg.t_end = t_end;
            cfg.snapshot_stride = snapshot_stride;
            const RunResult r = run(st, grid, make_params(inertia_i, inertia_j, v, potential_k),
                                    cfg);
            if (r.blew_up()) throw std::runtime_error("blow-up during run");
            py::dict out;
            std::vector<double> times;
            std::vector<std::vector<PyVec>> rhos;
            for (const StrandState& snap : r.series.snapshots) {
                times.push_back(snap.t);
                rhos.push_back(from_field(snap.rho));
            }
            std::vector<double> energies;
            for (const auto& row : r.series.diagnostics) energies.push_back(row.energy);
            out["times"] = times;
            out["rho"] = rhos;
            out["energy"] = energies;
            out["final_mu_t"] = from_field(r.series.snapshots.back().mu_t);
            out["final_omega_s"] = from_field(r.series.snapshots.back().omega_s);
            out["reconstruction_defect"] = r.series.recon_defect;
            return out;
        },
        py::arg("rho"), py::arg("pi_t"), py::arg("mu_t"), py::arg("omega_s"),
        py::arg("length"), py::arg("t_end"), py::kw_only(), py::arg("cfl_safety") = 0.5,
        py::arg("snapshot_stride") = 1, py::arg("inertia_i") = PyVec{1, 1, 1},
        py::arg("inertia_j") = PyVec{1, 1, 1}, py::arg("v") = 1.0,
        py::arg("potential_k") = 0.0, "method-of-lines integration of the reduced equations");

    m.def(
        "wave_oracle",
        [](const std::vector<PyVec>& rho0, const std::vector<PyVec>& rho_t0, double length,
           double v, double potential_k, double dt, double t_end) {
            const Grid1D grid(static_cast<int>(rho0.size()), length);
            const WaveSolution sol =
                wave_oracle(to_field(rho0), to_field(rho_t0), grid, v,
                            RadialPotential::quadratic(potential_k, 0.0), dt, t_end, 1 << 30);
            return from_field(sol.final_rho());
        },
        py::arg("rho0"), py::arg("rho_t0"), py::arg("length"), py::kw_only(),
        py::arg("v") = 1.0, py::arg("potential_k") = 0.0, py::arg("dt"), py::arg("t_end"),
        "leapfrog pure-string oracle; returns rho at t_end");

    m.def(
        "identity_suite",
        [](std::uint64_t seed, int trials) {
            const IdentityReport rep = identity_suite(seed, trials);
            py::list checks;
            for (const CheckResult& c : rep.checks) {
                py::dict d;
                d["name"] = c.name;
                d["max_error"] = c.max_error;
                d["tolerance"] = c.tolerance;
                d["pass"] = c.pass;
                checks.append(d);
            }
            py::dict out;
            out["all_pass"] = rep.all_pass();
            out["checks"] = checks;
            return out;
        },
        py::arg("seed") = 42, py::arg("trials") = 100,
        "seeded identity suite over the algebra/hamiltonian/bracket properties");

    m.def(
        "reduced_bracket",
        [](const PyVec& xi, const PyVec& y, const PyVec& mu_s, const PyVec& mu_t,
           const PyVec& dh_mu_s, const PyVec& dh_mu_t, const PyVec& dh_rho) {
            StrandPoint pt{};
            pt.mu_s = to_vec(mu_s);
            pt.mu_t = to_vec(mu_t);
            HamiltonianDerivs dh{};
            dh.mu_s = to_vec(dh_mu_s);
            dh.mu_t = to_vec(dh_mu_t);
            dh.rho = to_vec(dh_rho);
            return reduced_bracket(FormValue{to_vec(xi), to_vec(y)}, pt, dh);
        },
        "reduced covariant bracket {f, h} at a phase point");
}
