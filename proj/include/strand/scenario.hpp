#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "strand/config.hpp"
#include "strand/convergence.hpp"

namespace strand {

/// Exit codes shared with the CLI: 0 success, 1 usage/config/IO,
/// 2 blow-up, 3 verification failure.
enum ExitCode : int {
    EXIT_OK = 0,
    EXIT_CONFIG = 1,
    EXIT_BLOWUP = 2,
    EXIT_VERIFY_FAILED = 3,
};

int simulate_command(const std::filesystem::path& config_path,
                     const std::filesystem::path& out_dir, std::ostream& out,
                     std::ostream& err);

int verify_command(std::uint64_t seed, int trials,
                   const std::map<std::string, double>& tol_overrides,
                   const std::optional<std::filesystem::path>& report_path, std::ostream& out,
                   std::ostream& err);

struct ResidualOptions {
    std::vector<std::filesystem::path> series_dirs;
    std::optional<std::filesystem::path> forms_file;
    int random_forms = 10;
    std::uint64_t seed = 42;
    bool refine = false;
    std::optional<std::filesystem::path> report_path;
};

int residual_command(const ResidualOptions& opts, std::ostream& out, std::ostream& err);

struct ConvergenceOptions {
    std::filesystem::path config_path;
    int levels = 3;
    std::string oracle = "self"; // "self" | "wave"
    std::optional<std::filesystem::path> report_path;
};

int convergence_command(const ConvergenceOptions& opts, std::ostream& out, std::ostream& err);

/// Exact standing-wave evaluation for pure-string single-component configs
/// with U = 0 and zero initial velocity; throws ConfigError otherwise.
Field analytic_wave_rho(const ScenarioConfig& cfg, const Grid1D& grid, double t);

} // namespace strand
