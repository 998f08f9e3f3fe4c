#pragma once

#include <array>

#include "strand/inertia.hpp"
#include "strand/potential.hpp"

namespace strand {

/// Base directions are ordered (s, t); index 0 = s, 1 = t.
enum : int { DIR_S = 0, DIR_T = 1 };

/// Constant-coefficient connection data: Lambda^beta_i (k-valued),
/// Lambda^A_i (E-valued) and Christoffel symbols Gamma^i_{jk} of a linear
/// connection on the base. Field-dependent connections are out of scope, so
/// every dLambda/dz slot vanishes identically.
struct ConnectionCoefficients {
    std::array<Vec3, 2> lambda_k{};              // per base direction
    std::array<Vec3, 2> lambda_e{};              // per base direction
    double christoffel[2][2][2] = {{{0, 0}, {0, 0}}, {{0, 0}, {0, 0}}}; // [i][j][k]

    bool flat() const {
        for (int i = 0; i < 2; ++i) {
            if (lambda_k[i].max_abs() != 0.0 || lambda_e[i].max_abs() != 0.0) return false;
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    if (christoffel[i][j][k] != 0.0) return false;
        }
        return true;
    }
};

/// Parameters of the strand Hamiltonian: rotational inertia I, strain
/// inertia J, wave speed v of the Minkowski base metric, radial potential U,
/// and connection coefficients (zero in the flat trivialization).
struct HamiltonianParams {
    InertiaOperator inertia_i = InertiaOperator::identity();
    InertiaOperator inertia_j = InertiaOperator::identity();
    double v = 1.0;
    RadialPotential potential = RadialPotential::zero();
    ConnectionCoefficients connection{};

    void validate() const;
};

} // namespace strand
