#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "strand/scenario.hpp"

namespace {

std::map<std::string, double> parse_tol_overrides(const std::vector<std::string>& raw,
                                                  std::ostream& err, bool& ok) {
    std::map<std::string, double> overrides;
    ok = true;
    for (const std::string& item : raw) {
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos) {
            err << "error: --tol expects name=value, got '" << item << "'\n";
            ok = false;
            break;
        }
        try {
            overrides[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
        } catch (...) {
            err << "error: bad --tol value in '" << item << "'\n";
            ok = false;
            break;
        }
    }
    return overrides;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"affine-strand: reduced covariant Hamiltonian molecular-strand toolkit"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "run a scenario and write a series directory");
    std::string sim_config, sim_out;
    sim->add_option("--config", sim_config, "scenario TOML file")->required();
    sim->add_option("--out", sim_out, "output directory")->required();

    // verify
    auto* ver = app.add_subcommand("verify", "run the seeded identity suite");
    std::uint64_t ver_seed = 42;
    int ver_trials = 1000;
    std::string ver_report;
    std::vector<std::string> ver_tols;
    ver->add_option("--seed", ver_seed, "rng seed");
    ver->add_option("--trials", ver_trials, "samples per randomized check");
    ver->add_option("--report", ver_report, "write the JSON report here");
    ver->add_option("--tol", ver_tols, "tolerance override name=value (repeatable)");

    // residual
    auto* res = app.add_subcommand("residual", "theorem residual of stored series");
    std::vector<std::string> res_dirs;
    std::string res_forms, res_report;
    std::uint64_t res_seed = 42;
    int res_count = 10;
    bool res_refine = false;
    res->add_option("--in", res_dirs, "series directories (repeatable)")->required();
    res->add_option("--forms", res_forms, "JSON file with affine Poisson forms");
    res->add_option("--random-forms", res_count, "number of seeded random forms");
    res->add_option("--seed", res_seed, "seed for random forms");
    res->add_flag("--refine", res_refine, "estimate convergence order across the inputs");
    res->add_option("--report", res_report, "write the JSON report here");

    // convergence
    auto* conv = app.add_subcommand("convergence", "grid-refinement study of a scenario");
    std::string conv_config, conv_oracle = "self", conv_report;
    int conv_levels = 3;
    conv->add_option("--config", conv_config, "base scenario TOML file")->required();
    conv->add_option("--levels", conv_levels, "number of refinement levels");
    conv->add_option("--oracle", conv_oracle, "'self' (finest run) or 'wave' (analytic)");
    conv->add_option("--report", conv_report, "write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : strand::EXIT_CONFIG;
    }

    if (sim->parsed()) return strand::simulate_command(sim_config, sim_out, std::cout, std::cerr);

    if (ver->parsed()) {
        bool ok = false;
        const auto overrides = parse_tol_overrides(ver_tols, std::cerr, ok);
        if (!ok) return strand::EXIT_CONFIG;
        std::optional<std::filesystem::path> report;
        if (!ver_report.empty()) report = ver_report;
        return strand::verify_command(ver_seed, ver_trials, overrides, report, std::cout,
                                      std::cerr);
    }

    if (res->parsed()) {
        strand::ResidualOptions opts;
        for (const std::string& d : res_dirs) opts.series_dirs.emplace_back(d);
        if (!res_forms.empty()) opts.forms_file = res_forms;
        opts.random_forms = res_count;
        opts.seed = res_seed;
        opts.refine = res_refine;
        if (!res_report.empty()) opts.report_path = res_report;
        return strand::residual_command(opts, std::cout, std::cerr);
    }

    strand::ConvergenceOptions opts;
    opts.config_path = conv_config;
    opts.levels = conv_levels;
    opts.oracle = conv_oracle;
    if (!conv_report.empty()) opts.report_path = conv_report;
    return strand::convergence_command(opts, std::cout, std::cerr);
}
