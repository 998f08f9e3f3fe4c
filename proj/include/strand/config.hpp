#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "strand/brackets.hpp"
#include "strand/dynamics.hpp"
#include "strand/params.hpp"
#include "strand/state.hpp"

namespace strand {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace toml {

/// Minimal strict TOML subset: [section.sub] headers, key = value lines with
/// strings, booleans, numbers and (nested) single- or multi-line arrays.
/// Unknown syntax is an error, duplicate keys are an error.
struct Value {
    enum class Type { Integer, Float, String, Boolean, Array };
    Type type = Type::Integer;
    std::int64_t integer = 0;
    double real = 0.0;
    std::string str;
    bool boolean = false;
    std::vector<Value> array;

    double as_number() const;
};

/// Flat document: fully dotted key -> value.
std::map<std::string, Value> parse(const std::string& text);

} // namespace toml

/// Scenario configuration (strict parsing, unknown keys rejected).
struct ScenarioConfig {
    std::uint64_t seed = 0;
    int grid_n = 0;
    double grid_length = 0.0;
    std::optional<double> dt;
    std::optional<double> cfl_safety;
    double t_end = 0.0;
    int snapshot_stride = 1;
    int diagnostics_stride = 1;
    HamiltonianParams params;
    FourierSection init_rho, init_pi_t, init_mu_t, init_omega_s;
    std::string source_text;

    static ScenarioConfig from_string(const std::string& text);
    static ScenarioConfig from_file(const std::filesystem::path& path);

    Grid1D grid() const { return Grid1D(grid_n, grid_length); }
    IntegratorConfig integrator() const;
    StrandState initial_state() const;

    /// Same scenario at grid_n * 2^level with CFL-consistent time step.
    ScenarioConfig refined(int level) const;
};

} // namespace strand
