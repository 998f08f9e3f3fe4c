#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "strand/params.hpp"
#include "strand/so3.hpp"

namespace strand {

struct CheckResult {
    std::string name;
    double max_error = 0.0;
    double tolerance = 0.0;
    int trials = 0;
    bool pass = false;
};

struct IdentityReport {
    std::uint64_t seed = 0;
    int trials = 0;
    std::vector<CheckResult> checks;

    bool all_pass() const;
    const CheckResult* find(const std::string& name) const;
};

/// Fixed anisotropic parameter set used by the seeded checks.
HamiltonianParams identity_suite_params();

/// Max scaled relative error between the five closed-form derivatives and
/// central finite differences of density (step 1e-5) at `points` seeded
/// random phase points.
double gradient_fd_error(std::uint64_t seed, int points, const HamiltonianParams& params);

/// Max |full_bracket_invariant - reduced_bracket| over seeded random forms
/// and phase points.
double bracket_reduction_error(std::uint64_t seed, int trials, const StructureConstants& sc);

/// Runs every algebra / hamiltonian / brackets property with the given seed.
/// The structure-constants argument is a test hook: perturbed constants must
/// make the Jacobi and reduction-identity checks fail.
IdentityReport identity_suite(std::uint64_t seed, int trials,
                              const StructureConstants& sc = StructureConstants::so3(),
                              const std::map<std::string, double>& tol_overrides = {});

} // namespace strand
