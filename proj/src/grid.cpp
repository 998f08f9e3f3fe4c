#include "strand/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "strand/parallel.hpp"

namespace strand {

Grid1D::Grid1D(int n_, double length_) : n(n_), length(length_) {
    if (n < 8) throw std::invalid_argument("grid.n must be >= 8");
    if (!(length > 0.0) || !std::isfinite(length))
        throw std::invalid_argument("grid.length must be > 0");
}

Field d_ds(const Field& field, const Grid1D& grid) {
    const std::size_t n = static_cast<std::size_t>(grid.n);
    if (field.size() != n) throw std::invalid_argument("d_ds: field length != grid.n");
    Field out(n);
    const double inv2ds = 1.0 / (2.0 * grid.spacing());
    parallel::parallel_for(n, 16384, [&](std::size_t b, std::size_t e) {
        for (std::size_t j = b; j < e; ++j) {
            const std::size_t jp = (j + 1 == n) ? 0 : j + 1;
            const std::size_t jm = (j == 0) ? n - 1 : j - 1;
            out[j] = (field[jp] - field[jm]) * inv2ds;
        }
    });
    return out;
}

double max_norm(const Field& field) {
    double m = 0.0;
    for (const Vec3& v : field) m = std::fmax(m, v.norm());
    return m;
}

bool all_finite(const Field& field) {
    for (const Vec3& v : field)
        if (!v.finite()) return false;
    return true;
}

} // namespace strand
