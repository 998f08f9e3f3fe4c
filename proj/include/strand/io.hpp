#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "strand/brackets.hpp"
#include "strand/convergence.hpp"
#include "strand/identity.hpp"
#include "strand/state.hpp"

namespace strand::io {

using json = nlohmann::json;

/// 17 significant digits, scientific; round-trips binary64 exactly.
std::string fmt17(double x);

/// Snapshot CSV: header s,rho_x,...,omega_s_z, one row per grid point in
/// ascending s. The time stamp lives in the series manifest.
void write_snapshot_csv(const std::filesystem::path& path, const StrandState& state,
                        const Grid1D& grid);
StrandState read_snapshot_csv(const std::filesystem::path& path, const Grid1D& grid);

json params_to_json(const HamiltonianParams& params);
HamiltonianParams params_from_json(const json& j);

json form_to_json(const AffinePoissonForm& form);
AffinePoissonForm form_from_json(const json& j);
std::vector<AffinePoissonForm> forms_from_file(const std::filesystem::path& path);

json identity_report_to_json(const IdentityReport& report);
json convergence_report_to_json(const ConvergenceReport& report);

/// Writes snapshots, diagnostics CSV, gnuplot script and manifest.json into
/// dir. Every emitted file is listed in the manifest; the manifest records
/// the config verbatim.
void write_series(const std::filesystem::path& dir, const SolutionSeries& series);

/// Loads a series directory; throws with the offending path on a missing or
/// malformed manifest.
SolutionSeries load_series(const std::filesystem::path& dir);

} // namespace strand::io
