#pragma once

#include <vector>

#include "strand/vec3.hpp"

namespace strand {

/// Radial potential U(||rho||). Two families:
///   quadratic:  U(r) = k/2 (r - r0)^2
///   poly_r2:    U(r) = sum_m coeffs[m] * (r^2)^m
/// For the smooth family (r0 = 0 quadratic, any poly_r2) the force term
/// U'(r) rho/r is a smooth function of r^2 times rho; at rho = 0 the force
/// is 0 for every admissible potential.
class RadialPotential {
  public:
    enum class Kind { Quadratic, PolyR2 };

    static RadialPotential quadratic(double k, double r0 = 0.0);
    static RadialPotential poly_r2(std::vector<double> coeffs);
    static RadialPotential zero() { return quadratic(0.0, 0.0); }

    double value(double r) const;
    double slope(double r) const; // U'(r)

    Kind kind() const { return kind_; }
    double stiffness() const { return k_; }
    double rest_radius() const { return r0_; }
    const std::vector<double>& coeffs() const { return coeffs_; }

  private:
    RadialPotential() = default;
    Kind kind_ = Kind::Quadratic;
    double k_ = 0.0;
    double r0_ = 0.0;
    std::vector<double> coeffs_;
};

/// U'(||rho||) rho/||rho||, evaluated through the r^2-smooth form where the
/// family allows it; exactly 0 at rho = 0.
Vec3 potential_force(const RadialPotential& u, const Vec3& rho);

} // namespace strand
