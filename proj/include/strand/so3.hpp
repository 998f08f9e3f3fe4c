#pragma once

#include <array>

#include "strand/vec3.hpp"

namespace strand {

/// Structure constants c^gamma_{beta alpha} of a 3-dimensional Lie algebra,
/// stored densely. The so(3) constructor fills in the Levi-Civita symbol in
/// the basis convention [e_alpha, e_beta] = eps_{alpha beta gamma} e_gamma,
/// so the bracket is the cross product. Every other module reuses this index
/// placement verbatim.
struct StructureConstants {
    static constexpr int dim = 3;
    std::array<double, 27> c{}; // c[gamma][beta][alpha]

    double& at(int gamma, int beta, int alpha) {
        return c[static_cast<std::size_t>((gamma * 3 + beta) * 3 + alpha)];
    }
    double operator()(int gamma, int beta, int alpha) const {
        return c[static_cast<std::size_t>((gamma * 3 + beta) * 3 + alpha)];
    }

    static StructureConstants so3();

    /// max |c^g_{ba} + c^g_{ab}| over all index triples
    double antisymmetry_defect() const;
    /// max |sum_s (c^s_{ab} c^t_{sg} + c^s_{bg} c^t_{sa} + c^s_{ga} c^t_{sb})|
    double jacobi_defect() const;

    /// Contraction (x bracket y)^gamma = c^gamma_{alpha beta} x^alpha y^beta.
    Vec3 contract(const Vec3& x, const Vec3& y) const;
};

/// Levi-Civita symbol eps_{ijk}.
double levi_civita(int i, int j, int k);

/// Lie bracket on so(3) ~= R^3: [x, y] = x cross y.
inline Vec3 bracket(const Vec3& x, const Vec3& y) { return x.cross(y); }

/// Coadjoint action on so(3)* ~= R^3 under the dot-product pairing:
/// <ad*_xi mu, eta> = <mu, [xi, eta]>, i.e. ad*_xi mu = mu cross xi.
inline Vec3 ad_star(const Vec3& xi, const Vec3& mu) { return mu.cross(xi); }

/// hat(x) y = x cross y
Mat3 hat(const Vec3& x);
/// inverse of hat on the skew part of A
Vec3 vee(const Mat3& a);

/// Rodrigues exponential, series branch below ||omega|| = 1e-4.
Mat3 exp_so3(const Vec3& omega);

namespace detail {
Mat3 exp_so3_rodrigues(const Vec3& omega);
Mat3 exp_so3_series(const Vec3& omega);
} // namespace detail

/// Nearest-rotation projection of an almost-orthogonal matrix
/// (Newton iteration for the polar factor).
Mat3 project_so3(const Mat3& a);

} // namespace strand
