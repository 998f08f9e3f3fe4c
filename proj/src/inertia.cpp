#include "strand/inertia.hpp"

#include <cmath>
#include <stdexcept>

namespace strand {

namespace {

// Cholesky with positive pivots == SPD test.
bool spd(const Mat3& a) {
    double l[3][3] = {};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = a(i, j);
            for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
            if (i == j) {
                if (s <= 0.0) return false;
                l[i][i] = std::sqrt(s);
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    return true;
}

} // namespace

InertiaOperator::InertiaOperator(const Mat3& matrix) : mat_(matrix) {
    if (!matrix.finite()) throw std::invalid_argument("inertia: non-finite entries");
    const double scale = std::fmax(1.0, matrix.max_abs());
    const Mat3 asym = matrix - matrix.transpose();
    if (asym.max_abs() > 1e-12 * scale)
        throw std::invalid_argument("inertia: matrix must be symmetric");
    if (!spd(matrix))
        throw std::invalid_argument("inertia: matrix must be positive definite");
    inv_ = matrix.inverse();
    const Mat3 round_trip = mat_ * inv_;
    if ((round_trip - Mat3::identity()).max_abs() > 1e-12)
        throw std::invalid_argument("inertia: inverse verification failed");
}

bool InertiaOperator::isotropic() const {
    const double a = mat_(0, 0);
    return (mat_ - Mat3::diagonal(a, a, a)).max_abs() <= 1e-14 * std::fmax(1.0, std::fabs(a));
}

} // namespace strand
