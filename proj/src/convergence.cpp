#include "strand/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace strand {

ConvergenceReport estimate_order(const std::vector<std::pair<double, double>>& spacing_error,
                                 double target, double tolerance) {
    if (spacing_error.size() < 3)
        throw std::invalid_argument("estimate_order: need >= 3 (resolution, error) pairs");
    auto pairs = spacing_error;
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    ConvergenceReport rep;
    rep.target = target;
    rep.tolerance = tolerance;
    double sx = 0.0, sy = 0.0;
    for (const auto& [spacing, err] : pairs) {
        if (!(spacing > 0.0)) throw std::invalid_argument("estimate_order: spacing must be > 0");
        if (!(err > 0.0)) throw std::invalid_argument("estimate_order: errors must be positive");
        if (!rep.resolutions.empty() && 1.0 / spacing <= rep.resolutions.back())
            throw std::invalid_argument("estimate_order: resolutions must be strictly increasing");
        rep.resolutions.push_back(1.0 / spacing);
        rep.errors.push_back(err);
        sx += std::log(spacing);
        sy += std::log(err);
    }
    const double n = static_cast<double>(pairs.size());
    const double mx = sx / n, my = sy / n;
    double num = 0.0, den = 0.0;
    for (const auto& [spacing, err] : pairs) {
        const double dx = std::log(spacing) - mx;
        num += dx * (std::log(err) - my);
        den += dx * dx;
    }
    rep.order = num / den;
    rep.pass = std::fabs(rep.order - target) <= tolerance;
    return rep;
}

} // namespace strand
