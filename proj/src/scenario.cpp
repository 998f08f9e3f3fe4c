#include "strand/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

#include "strand/dynamics.hpp"
#include "strand/io.hpp"
#include "strand/rng.hpp"

namespace strand {

namespace fs = std::filesystem;

namespace {

bool potential_is_zero(const RadialPotential& u) {
    if (u.kind() == RadialPotential::Kind::Quadratic) return u.stiffness() == 0.0;
    for (std::size_t m = 1; m < u.coeffs().size(); ++m)
        if (u.coeffs()[m] != 0.0) return false;
    return true;
}

} // namespace

int simulate_command(const fs::path& config_path, const fs::path& out_dir, std::ostream& out,
                     std::ostream& err) {
    ScenarioConfig cfg;
    try {
        cfg = ScenarioConfig::from_file(config_path);
        if (!cfg.params.connection.flat())
            throw ConfigError("connection must be zero for simulate "
                              "(dynamics supports the flat trivialization only)");
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return EXIT_CONFIG;
    }

    try {
        const Grid1D grid = cfg.grid();
        const RunResult result =
            run(cfg.initial_state(), grid, cfg.params, cfg.integrator());
        SolutionSeries series = result.series;
        series.seed = cfg.seed;
        series.config_text = cfg.source_text;
        io::write_series(out_dir, series);
        if (result.blew_up()) {
            err << "blow-up detected at t = " << *result.blowup_time
                << "; partial series written to " << out_dir.string() << "\n";
            return EXIT_BLOWUP;
        }
        out << "wrote " << series.snapshots.size() << " snapshots to " << out_dir.string()
            << "\n";
        return EXIT_OK;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return EXIT_CONFIG;
    }
}

int verify_command(std::uint64_t seed, int trials,
                   const std::map<std::string, double>& tol_overrides,
                   const std::optional<fs::path>& report_path, std::ostream& out,
                   std::ostream& err) {
    if (trials < 1) {
        err << "error: trials must be >= 1\n";
        return EXIT_CONFIG;
    }
    const IdentityReport report = identity_suite(seed, trials,
                                                 StructureConstants::so3(), tol_overrides);
    for (const CheckResult& c : report.checks)
        out << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  max_error=" << c.max_error
            << "  tol=" << c.tolerance << "\n";
    out << (report.all_pass() ? "all checks passed" : "some checks FAILED") << "\n";
    if (report_path) {
        std::ofstream f(*report_path);
        if (!f) {
            err << "error: cannot write report " << report_path->string() << "\n";
            return EXIT_CONFIG;
        }
        f << io::identity_report_to_json(report).dump(2) << "\n";
    }
    return report.all_pass() ? EXIT_OK : EXIT_VERIFY_FAILED;
}

int residual_command(const ResidualOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        if (opts.series_dirs.empty()) throw ConfigError("residual: no series directories given");
        if (opts.refine && opts.series_dirs.size() < 3)
            throw ConfigError("residual --refine needs >= 3 series directories");

        std::vector<AffinePoissonForm> forms;
        if (opts.forms_file) {
            forms = io::forms_from_file(*opts.forms_file);
        } else {
            SplitMix64 rng(opts.seed);
            for (int i = 0; i < opts.random_forms; ++i) forms.push_back(random_form(rng));
        }
        if (forms.empty()) throw ConfigError("residual: no forms to evaluate");

        std::vector<SolutionSeries> series;
        for (const fs::path& dir : opts.series_dirs) series.push_back(io::load_series(dir));

        io::json report;
        report["seed"] = opts.seed;
        report["series"] = io::json::array();
        // residual max-norm per (series, form)
        std::vector<std::vector<double>> norms(series.size());
        for (std::size_t si = 0; si < series.size(); ++si) {
            io::json entry;
            entry["dir"] = opts.series_dirs[si].string();
            entry["spacing"] = series[si].grid.spacing();
            io::json per_form = io::json::array();
            for (const AffinePoissonForm& f : forms) {
                const double norm =
                    theorem_residual(f, series[si], series[si].params).max_abs();
                norms[si].push_back(norm);
                per_form.push_back(norm);
            }
            entry["residual_max"] = per_form;
            report["series"].push_back(entry);
            out << opts.series_dirs[si].string() << ": max residual over forms = "
                << *std::max_element(norms[si].begin(), norms[si].end()) << "\n";
        }

        if (opts.refine) {
            io::json orders = io::json::array();
            double min_order = 1e300;
            for (std::size_t fi = 0; fi < forms.size(); ++fi) {
                std::vector<std::pair<double, double>> pts;
                for (std::size_t si = 0; si < series.size(); ++si)
                    pts.emplace_back(series[si].grid.spacing(), norms[si][fi]);
                const ConvergenceReport cr = estimate_order(pts, 2.0, 0.3);
                orders.push_back(cr.order);
                min_order = std::min(min_order, cr.order);
            }
            report["orders"] = orders;
            report["min_order"] = min_order;
            out << "min estimated order over forms: " << min_order << "\n";
        }

        if (opts.report_path) {
            std::ofstream f(*opts.report_path);
            if (!f) throw ConfigError("cannot write report " + opts.report_path->string());
            f << report.dump(2) << "\n";
        }
        return EXIT_OK;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return EXIT_CONFIG;
    }
}

Field analytic_wave_rho(const ScenarioConfig& cfg, const Grid1D& grid, double t) {
    if (!potential_is_zero(cfg.params.potential))
        throw ConfigError("analytic oracle requires U = 0");
    if (!cfg.init_pi_t.is_constant() || cfg.init_pi_t.constant.max_abs() != 0.0 ||
        !cfg.init_mu_t.is_constant() || cfg.init_mu_t.constant.max_abs() != 0.0 ||
        !cfg.init_omega_s.is_constant() || cfg.init_omega_s.constant.max_abs() != 0.0)
        throw ConfigError("analytic oracle requires zero pi_t, mu_t and omega_s initial data");
    int component = -1;
    for (const FourierMode& m : cfg.init_rho.modes) {
        if (component == -1) component = m.component;
        if (m.component != component)
            throw ConfigError("analytic oracle requires single-component rho modes");
    }
    for (int c = 0; c < 3; ++c)
        if (cfg.init_rho.constant[c] != 0.0 && c != component && component != -1)
            throw ConfigError("analytic oracle requires the rho offset on the mode component");

    // rho(s,t) = const + sum_m A sin(k s + phi) cos(k v t), k = 2 pi w / L
    Field rho(static_cast<std::size_t>(grid.n), cfg.init_rho.constant);
    const double base = 2.0 * std::numbers::pi / grid.length;
    for (int j = 0; j < grid.n; ++j) {
        const double s = grid.point(j);
        Vec3& r = rho[static_cast<std::size_t>(j)];
        for (const FourierMode& m : cfg.init_rho.modes) {
            const double k = base * m.wavenumber;
            r[m.component] +=
                m.amplitude * std::sin(k * s + m.phase) * std::cos(k * cfg.params.v * t);
        }
    }
    return rho;
}

int convergence_command(const ConvergenceOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        if (opts.levels < 3) throw ConfigError("levels must be >= 3");
        if (opts.oracle != "self" && opts.oracle != "wave")
            throw ConfigError("oracle must be 'self' or 'wave'");
        const ScenarioConfig base = ScenarioConfig::from_file(opts.config_path);
        if (!base.params.connection.flat())
            throw ConfigError("connection must be zero for convergence runs");

        const int extra = (opts.oracle == "self") ? 1 : 0; // reference level
        std::vector<Field> finals;
        std::vector<Grid1D> grids;
        for (int level = 0; level < opts.levels + extra; ++level) {
            const ScenarioConfig cfg = base.refined(level);
            const Grid1D grid = cfg.grid();
            const RunResult result =
                run(cfg.initial_state(), grid, cfg.params, cfg.integrator());
            if (result.blew_up()) {
                err << "blow-up at level " << level << ", t = " << *result.blowup_time << "\n";
                return EXIT_BLOWUP;
            }
            finals.push_back(result.series.snapshots.back().rho);
            grids.push_back(grid);
        }

        std::vector<std::pair<double, double>> pts;
        for (int level = 0; level < opts.levels; ++level) {
            double e = 0.0;
            if (opts.oracle == "wave") {
                const ScenarioConfig cfg = base.refined(level);
                const Field exact = analytic_wave_rho(cfg, grids[level], base.t_end);
                for (std::size_t j = 0; j < exact.size(); ++j)
                    e = std::fmax(e, (finals[level][j] - exact[j]).norm());
            } else {
                const Field& ref = finals.back();
                const int skip = 1 << (opts.levels + extra - 1 - level);
                for (std::size_t j = 0; j < finals[level].size(); ++j)
                    e = std::fmax(e, (finals[level][j] - ref[j * skip]).norm());
            }
            pts.emplace_back(grids[level].spacing(), e);
            out << "level " << level << ": n = " << grids[level].n << ", error = " << e << "\n";
        }

        const ConvergenceReport report = estimate_order(pts, 2.0, 0.3);
        out << "estimated order: " << report.order << (report.pass ? " (pass)" : " (fail)")
            << "\n";
        if (opts.report_path) {
            std::ofstream f(*opts.report_path);
            if (!f) throw ConfigError("cannot write report " + opts.report_path->string());
            f << io::convergence_report_to_json(report).dump(2) << "\n";
        }
        return EXIT_OK;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return EXIT_CONFIG;
    }
}

} // namespace strand
