#pragma once

#include <array>
#include <vector>

#include "strand/hamiltonian.hpp"
#include "strand/rng.hpp"
#include "strand/so3.hpp"
#include "strand/state.hpp"

namespace strand {

/// One Fourier mode of a section component:
/// value += amplitude * sin(2 pi wavenumber s / L + phase) on `component`.
struct FourierMode {
    int component = 0;
    int wavenumber = 0;
    double amplitude = 0.0;
    double phase = 0.0;
};

/// R^3-valued section of the base circle: constant part plus a finite
/// Fourier series per component.
struct FourierSection {
    Vec3 constant{};
    std::vector<FourierMode> modes;

    Vec3 eval(double s, double length) const;
    Vec3 deriv(double s, double length) const;
    bool is_constant() const { return modes.empty(); }
};

/// Affine Poisson (n-1)-form f = theta_xi + theta_Y + omega + Upsilon on the
/// reduced space. xi is a section of the adjoint bundle, y a section of E;
/// omega_h and upsilon hold the constant coefficients (a, b) of a dt - b ds.
/// Upsilon is closed because its coefficients are constant.
struct AffinePoissonForm {
    FourierSection xi;
    FourierSection y;
    std::array<double, 2> omega_h{0.0, 0.0};
    std::array<double, 2> upsilon{0.0, 0.0};
};

/// Pointwise values of the section parts of an affine Poisson form.
struct FormValue {
    Vec3 xi;
    Vec3 y;
};

/// Per-direction summand of the Lie-Poisson bracket on the k* factor:
/// -<mu, [xi, dh/dmu]> = -mu . (xi x dh_dmu).
double lie_poisson_bracket(const Vec3& xi, const Vec3& mu, const Vec3& dh_dmu);

/// Local expression of {f, h} from the reduction proof:
///   -sum_j mu^j_g c^g_{ab} xi^a (dh/dmu^j)^b
///   + sum_j (df/dz).(dh/dpi^j) - Y.(dh/drho)
/// assembled with df^i/dmu^j = xi d^i_j and df^i/dpi^j = Y d^i_j. The df/dz
/// slot vanishes for the supported family (xi, Y independent of the fiber)
/// but is kept explicit. Evaluated through the cross product.
double reduced_bracket(const FormValue& f, const StrandPoint& pt, const HamiltonianDerivs& dh);

/// The un-simplified K-invariance expression r with the half-antisymmetrized
/// structure-constant contraction; must equal reduced_bracket exactly for
/// antisymmetric c. Evaluated through the given structure constants.
double full_bracket_invariant(const FormValue& f, const StrandPoint& pt,
                              const HamiltonianDerivs& dh, const StructureConstants& sc);

/// Horizontal differential d^h f at a phase point for spatially constant
/// (xi, Y), with constant connection data (all dLambda/dz slots vanish and
/// are kept explicit). The explicit-x-dependence term of Fourier sections is
/// handled separately by theorem_residual.
double horizontal_differential(const FormValue& f, const StrandPoint& pt,
                               const ConnectionCoefficients& conn,
                               const StructureConstants& sc);

/// Scalar residual of {f,h} v = d(f o (mu + pi)) - d^h f o (mu + pi) on the
/// interior space-time points of a stored series; exterior derivative by
/// central differences in s and t.
struct ResidualField {
    std::vector<double> times;               // interior snapshot times
    std::vector<std::vector<double>> values; // [interior snapshot][grid point]

    double max_abs() const;
};

ResidualField theorem_residual(const AffinePoissonForm& f, const SolutionSeries& series,
                               const HamiltonianParams& params,
                               const StructureConstants& sc = StructureConstants::so3());

/// Seeded random form: constant + a few Fourier modes per section, random
/// omega/Upsilon coefficients.
AffinePoissonForm random_form(SplitMix64& rng);

} // namespace strand
