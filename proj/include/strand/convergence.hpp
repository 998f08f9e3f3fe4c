#pragma once

#include <utility>
#include <vector>

namespace strand {

/// Least-squares convergence-order estimate on log(error) vs log(spacing).
struct ConvergenceReport {
    std::vector<double> resolutions; // 1/spacing, strictly increasing
    std::vector<double> errors;      // matching error norms, positive
    double order = 0.0;
    double target = 0.0;
    double tolerance = 0.0;
    bool pass = false; // |order - target| <= tolerance
};

/// Input pairs are (spacing, error). Throws below 3 pairs or on
/// non-positive errors.
ConvergenceReport estimate_order(const std::vector<std::pair<double, double>>& spacing_error,
                                 double target, double tolerance = 0.3);

} // namespace strand
