#include "strand/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace strand::io {

namespace fs = std::filesystem;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", x);
    return buf;
}

namespace {

const char* kSnapshotHeader =
    "s,rho_x,rho_y,rho_z,pi_t_x,pi_t_y,pi_t_z,mu_t_x,mu_t_y,mu_t_z,"
    "omega_s_x,omega_s_y,omega_s_z";

std::vector<double> split_doubles(const std::string& line) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        const std::size_t comma = line.find(',', pos);
        const std::string tok =
            line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::size_t used = 0;
        out.push_back(std::stod(tok, &used));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

json vec3_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec3_from_json(const json& j) {
    return Vec3{j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

json mat3_to_json(const Mat3& m) {
    json a = json::array();
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) a.push_back(m(i, k));
    return a;
}

Mat3 mat3_from_json(const json& j) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) m(i, k) = j.at(i * 3 + k).get<double>();
    return m;
}

json section_to_json(const FourierSection& s) {
    json modes = json::array();
    for (const FourierMode& m : s.modes)
        modes.push_back(json::array({m.component, m.wavenumber, m.amplitude, m.phase}));
    return json{{"constant", vec3_to_json(s.constant)}, {"modes", modes}};
}

FourierSection section_from_json(const json& j) {
    FourierSection s;
    s.constant = vec3_from_json(j.at("constant"));
    for (const auto& row : j.at("modes"))
        s.modes.push_back(FourierMode{row.at(0).get<int>(), row.at(1).get<int>(),
                                      row.at(2).get<double>(), row.at(3).get<double>()});
    return s;
}

} // namespace

void write_snapshot_csv(const fs::path& path, const StrandState& state, const Grid1D& grid) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << kSnapshotHeader << "\n";
    for (int j = 0; j < grid.n; ++j) {
        const std::size_t k = static_cast<std::size_t>(j);
        out << fmt17(grid.point(j));
        const Vec3* fields[4] = {&state.rho[k], &state.pi_t[k], &state.mu_t[k],
                                 &state.omega_s[k]};
        for (const Vec3* f : fields)
            out << ',' << fmt17(f->x) << ',' << fmt17(f->y) << ',' << fmt17(f->z);
        out << '\n';
    }
}

StrandState read_snapshot_csv(const fs::path& path, const Grid1D& grid) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != kSnapshotHeader)
        throw std::runtime_error("bad snapshot header in " + path.string());
    StrandState state = StrandState::zero(grid);
    for (int j = 0; j < grid.n; ++j) {
        if (!std::getline(in, line))
            throw std::runtime_error("truncated snapshot " + path.string());
        const std::vector<double> v = split_doubles(line);
        if (v.size() != 13)
            throw std::runtime_error("bad snapshot row in " + path.string());
        const std::size_t k = static_cast<std::size_t>(j);
        state.rho[k] = {v[1], v[2], v[3]};
        state.pi_t[k] = {v[4], v[5], v[6]};
        state.mu_t[k] = {v[7], v[8], v[9]};
        state.omega_s[k] = {v[10], v[11], v[12]};
    }
    return state;
}

json params_to_json(const HamiltonianParams& p) {
    json pot;
    if (p.potential.kind() == RadialPotential::Kind::Quadratic)
        pot = json{{"type", "quadratic"}, {"k", p.potential.stiffness()},
                   {"r0", p.potential.rest_radius()}};
    else
        pot = json{{"type", "poly_r2"}, {"coeffs", p.potential.coeffs()}};
    json christoffel = json::array();
    for (int i = 0; i < 2; ++i) {
        json row = json::array();
        for (int a = 0; a < 2; ++a)
            row.push_back(json::array(
                {p.connection.christoffel[i][a][0], p.connection.christoffel[i][a][1]}));
        christoffel.push_back(row);
    }
    return json{{"v", p.v},
                {"inertia_i", mat3_to_json(p.inertia_i.matrix())},
                {"inertia_j", mat3_to_json(p.inertia_j.matrix())},
                {"potential", pot},
                {"connection",
                 {{"lambda_k", json::array({vec3_to_json(p.connection.lambda_k[0]),
                                            vec3_to_json(p.connection.lambda_k[1])})},
                  {"lambda_e", json::array({vec3_to_json(p.connection.lambda_e[0]),
                                            vec3_to_json(p.connection.lambda_e[1])})},
                  {"christoffel", christoffel}}}};
}

HamiltonianParams params_from_json(const json& j) {
    HamiltonianParams p;
    p.v = j.at("v").get<double>();
    p.inertia_i = InertiaOperator(mat3_from_json(j.at("inertia_i")));
    p.inertia_j = InertiaOperator(mat3_from_json(j.at("inertia_j")));
    const json& pot = j.at("potential");
    if (pot.at("type") == "quadratic")
        p.potential = RadialPotential::quadratic(pot.at("k").get<double>(),
                                                 pot.at("r0").get<double>());
    else if (pot.at("type") == "poly_r2")
        p.potential = RadialPotential::poly_r2(pot.at("coeffs").get<std::vector<double>>());
    else
        throw std::runtime_error("unknown potential type in manifest");
    const json& conn = j.at("connection");
    p.connection.lambda_k = {vec3_from_json(conn.at("lambda_k").at(0)),
                             vec3_from_json(conn.at("lambda_k").at(1))};
    p.connection.lambda_e = {vec3_from_json(conn.at("lambda_e").at(0)),
                             vec3_from_json(conn.at("lambda_e").at(1))};
    for (int i = 0; i < 2; ++i)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                p.connection.christoffel[i][a][b] =
                    conn.at("christoffel").at(i).at(a).at(b).get<double>();
    return p;
}

json form_to_json(const AffinePoissonForm& f) {
    return json{{"xi", section_to_json(f.xi)},
                {"y", section_to_json(f.y)},
                {"omega", json::array({f.omega_h[0], f.omega_h[1]})},
                {"upsilon", json::array({f.upsilon[0], f.upsilon[1]})}};
}

AffinePoissonForm form_from_json(const json& j) {
    AffinePoissonForm f;
    f.xi = section_from_json(j.at("xi"));
    f.y = section_from_json(j.at("y"));
    f.omega_h = {j.at("omega").at(0).get<double>(), j.at("omega").at(1).get<double>()};
    f.upsilon = {j.at("upsilon").at(0).get<double>(), j.at("upsilon").at(1).get<double>()};
    return f;
}

std::vector<AffinePoissonForm> forms_from_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read forms file " + path.string());
    json doc = json::parse(in);
    std::vector<AffinePoissonForm> forms;
    for (const auto& entry : doc) forms.push_back(form_from_json(entry));
    return forms;
}

json identity_report_to_json(const IdentityReport& report) {
    json checks = json::array();
    for (const CheckResult& c : report.checks)
        checks.push_back(json{{"name", c.name},
                              {"max_error", c.max_error},
                              {"tolerance", c.tolerance},
                              {"trials", c.trials},
                              {"pass", c.pass}});
    return json{{"seed", report.seed},
                {"trials", report.trials},
                {"all_pass", report.all_pass()},
                {"checks", checks}};
}

json convergence_report_to_json(const ConvergenceReport& report) {
    return json{{"resolutions", report.resolutions}, {"errors", report.errors},
                {"order", report.order},           {"target", report.target},
                {"tolerance", report.tolerance},   {"pass", report.pass}};
}

void write_series(const fs::path& dir, const SolutionSeries& series) {
    fs::create_directories(dir);
    json snaps = json::array();
    std::vector<std::string> files = {"manifest.json", "diagnostics.csv", "plot.gp"};
    char name[32];
    for (std::size_t k = 0; k < series.snapshots.size(); ++k) {
        std::snprintf(name, sizeof(name), "snap_%06zu.csv", k);
        write_snapshot_csv(dir / name, series.snapshots[k], series.grid);
        snaps.push_back(json{{"t", series.snapshots[k].t}, {"file", name}});
        files.emplace_back(name);
    }

    {
        std::ofstream diag(dir / "diagnostics.csv");
        diag << "t,energy,legendre_pi,legendre_mu\n";
        for (const auto& row : series.diagnostics)
            diag << fmt17(row.t) << ',' << fmt17(row.energy) << ',' << fmt17(row.legendre_pi)
                 << ',' << fmt17(row.legendre_mu) << '\n';
    }

    {
        std::ofstream plot(dir / "plot.gp");
        std::snprintf(name, sizeof(name), "snap_%06zu.csv", series.snapshots.size() - 1);
        const double e0 =
            series.diagnostics.empty() ? 0.0 : series.diagnostics.front().energy;
        plot << "set datafile separator ','\n"
             << "set terminal pngcairo size 1200,800\n"
             << "set output 'strand.png'\n"
             << "set multiplot layout 2,1\n"
             << "set xlabel 's'\nset ylabel 'rho'\n"
             << "plot 'snap_000000.csv' skip 1 using 1:2 with lines title 'rho_x(0)', \\\n"
             << "     'snap_000000.csv' skip 1 using 1:3 with lines title 'rho_y(0)', \\\n"
             << "     '" << name << "' skip 1 using 1:2 with lines title 'rho_x(T)', \\\n"
             << "     '" << name << "' skip 1 using 1:3 with lines title 'rho_y(T)'\n"
             << "set xlabel 't'\nset ylabel 'energy drift'\n"
             << "plot 'diagnostics.csv' skip 1 using 1:($2-(" << fmt17(e0)
             << ")) with lines title 'E(t)-E(0)'\n"
             << "unset multiplot\n";
    }

    json diag_rows = json::array();
    for (const auto& row : series.diagnostics)
        diag_rows.push_back(json{{"t", row.t},
                                 {"energy", row.energy},
                                 {"legendre_pi", row.legendre_pi},
                                 {"legendre_mu", row.legendre_mu}});
    json manifest{{"grid", {{"n", series.grid.n}, {"length", series.grid.length}}},
                  {"dt", series.dt},
                  {"seed", series.seed},
                  {"params", params_to_json(series.params)},
                  {"snapshots", snaps},
                  {"diagnostics", diag_rows},
                  {"reconstruction_defect", series.recon_defect},
                  {"config", series.config_text},
                  {"files", files}};
    std::ofstream out(dir / "manifest.json");
    out << manifest.dump(2) << '\n';
}

SolutionSeries load_series(const fs::path& dir) {
    const fs::path manifest_path = dir / "manifest.json";
    std::ifstream in(manifest_path);
    if (!in) throw std::runtime_error("missing manifest: " + manifest_path.string());
    json manifest;
    try {
        manifest = json::parse(in);
    } catch (const std::exception& e) {
        throw std::runtime_error("malformed manifest " + manifest_path.string() + ": " +
                                 e.what());
    }
    SolutionSeries series;
    series.grid = Grid1D(manifest.at("grid").at("n").get<int>(),
                         manifest.at("grid").at("length").get<double>());
    series.dt = manifest.at("dt").get<double>();
    series.seed = manifest.at("seed").get<std::uint64_t>();
    series.params = params_from_json(manifest.at("params"));
    series.config_text = manifest.value("config", std::string{});
    for (const auto& entry : manifest.at("snapshots")) {
        StrandState st =
            read_snapshot_csv(dir / entry.at("file").get<std::string>(), series.grid);
        st.t = entry.at("t").get<double>();
        series.snapshots.push_back(std::move(st));
    }
    for (const auto& row : manifest.at("diagnostics"))
        series.diagnostics.push_back(SolutionSeries::DiagRow{
            row.at("t").get<double>(), row.at("energy").get<double>(),
            row.at("legendre_pi").get<double>(), row.at("legendre_mu").get<double>()});
    if (manifest.contains("reconstruction_defect"))
        series.recon_defect = manifest.at("reconstruction_defect").get<std::vector<double>>();
    return series;
}

} // namespace strand::io
