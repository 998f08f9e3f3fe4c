#pragma once

#include "strand/vec3.hpp"

namespace strand {

/// Symmetric positive-definite inertia tensor with a precomputed inverse.
/// Construction rejects non-symmetric or non-SPD input and verifies
/// apply(apply_inverse(e_i)) = e_i to 1e-12 on the basis.
class InertiaOperator {
  public:
    InertiaOperator() : InertiaOperator(Mat3::identity()) {}
    explicit InertiaOperator(const Mat3& matrix);

    static InertiaOperator identity() { return InertiaOperator(Mat3::identity()); }
    static InertiaOperator diagonal(double a, double b, double c) {
        return InertiaOperator(Mat3::diagonal(a, b, c));
    }

    Vec3 apply(const Vec3& v) const { return mat_ * v; }
    Vec3 apply_inverse(const Vec3& v) const { return inv_ * v; }

    const Mat3& matrix() const { return mat_; }
    const Mat3& inverse_matrix() const { return inv_; }

    bool isotropic() const;

  private:
    Mat3 mat_;
    Mat3 inv_;
};

} // namespace strand
