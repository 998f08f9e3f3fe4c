#pragma once

#include <vector>

#include "strand/vec3.hpp"

namespace strand {

/// Periodic 1-D spatial lattice: N points s_j = j L/N, j = 0..N-1.
struct Grid1D {
    int n = 8;
    double length = 1.0;

    Grid1D() = default;
    Grid1D(int n_, double length_);

    double spacing() const { return length / n; }
    double point(int j) const { return j * spacing(); }
};

using Field = std::vector<Vec3>;

/// Second-order central difference with periodic wraparound:
/// (f[j+1] - f[j-1]) / (2 ds). Throws on length mismatch.
Field d_ds(const Field& field, const Grid1D& grid);

double max_norm(const Field& field);
bool all_finite(const Field& field);

} // namespace strand
