#include "strand/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace strand {

RadialPotential RadialPotential::quadratic(double k, double r0) {
    if (!std::isfinite(k) || !std::isfinite(r0) || r0 < 0.0)
        throw std::invalid_argument("potential: quadratic needs finite k and r0 >= 0");
    RadialPotential u;
    u.kind_ = Kind::Quadratic;
    u.k_ = k;
    u.r0_ = r0;
    return u;
}

RadialPotential RadialPotential::poly_r2(std::vector<double> coeffs) {
    for (double c : coeffs)
        if (!std::isfinite(c)) throw std::invalid_argument("potential: non-finite coefficient");
    RadialPotential u;
    u.kind_ = Kind::PolyR2;
    u.coeffs_ = std::move(coeffs);
    return u;
}

double RadialPotential::value(double r) const {
    if (kind_ == Kind::Quadratic) {
        const double d = r - r0_;
        return 0.5 * k_ * d * d;
    }
    const double r2 = r * r;
    double v = 0.0, p = 1.0;
    for (double c : coeffs_) {
        v += c * p;
        p *= r2;
    }
    return v;
}

double RadialPotential::slope(double r) const {
    if (kind_ == Kind::Quadratic) return k_ * (r - r0_);
    // U' = sum_m 2 m coeffs[m] r (r^2)^(m-1)
    const double r2 = r * r;
    double s = 0.0, p = 1.0;
    for (std::size_t m = 1; m < coeffs_.size(); ++m) {
        s += 2.0 * static_cast<double>(m) * coeffs_[m] * p;
        p *= r2;
    }
    return s * r;
}

Vec3 potential_force(const RadialPotential& u, const Vec3& rho) {
    if (u.kind() == RadialPotential::Kind::PolyR2) {
        const double r2 = rho.norm2();
        double s = 0.0, p = 1.0;
        const auto& c = u.coeffs();
        for (std::size_t m = 1; m < c.size(); ++m) {
            s += 2.0 * static_cast<double>(m) * c[m] * p;
            p *= r2;
        }
        return s * rho;
    }
    if (u.rest_radius() == 0.0) return u.stiffness() * rho;
    const double r = rho.norm();
    if (r == 0.0) return Vec3{};
    return (u.stiffness() * (1.0 - u.rest_radius() / r)) * rho;
}

} // namespace strand
