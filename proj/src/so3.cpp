#include "strand/so3.hpp"

#include <cmath>
#include <ostream>

namespace strand {

std::ostream& operator<<(std::ostream& os, const Vec3& v) {
    return os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
}

Mat3 Mat3::inverse() const {
    const double d = det();
    Mat3 r;
    r.m[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / d;
    r.m[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / d;
    r.m[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / d;
    r.m[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / d;
    r.m[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / d;
    r.m[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / d;
    r.m[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / d;
    r.m[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / d;
    r.m[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / d;
    return r;
}

double levi_civita(int i, int j, int k) {
    if (i == j || j == k || i == k) return 0.0;
    // even permutations of (0,1,2)
    if ((i == 0 && j == 1 && k == 2) || (i == 1 && j == 2 && k == 0) ||
        (i == 2 && j == 0 && k == 1))
        return 1.0;
    return -1.0;
}

StructureConstants StructureConstants::so3() {
    StructureConstants sc;
    for (int g = 0; g < 3; ++g)
        for (int b = 0; b < 3; ++b)
            for (int a = 0; a < 3; ++a) sc.at(g, b, a) = levi_civita(b, a, g);
    return sc;
}

double StructureConstants::antisymmetry_defect() const {
    double d = 0.0;
    for (int g = 0; g < 3; ++g)
        for (int b = 0; b < 3; ++b)
            for (int a = 0; a < 3; ++a)
                d = std::fmax(d, std::fabs((*this)(g, b, a) + (*this)(g, a, b)));
    return d;
}

double StructureConstants::jacobi_defect() const {
    double d = 0.0;
    for (int t = 0; t < 3; ++t)
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                for (int g = 0; g < 3; ++g) {
                    double s = 0.0;
                    for (int sig = 0; sig < 3; ++sig)
                        s += (*this)(sig, a, b) * (*this)(t, sig, g) +
                             (*this)(sig, b, g) * (*this)(t, sig, a) +
                             (*this)(sig, g, a) * (*this)(t, sig, b);
                    d = std::fmax(d, std::fabs(s));
                }
    return d;
}

Vec3 StructureConstants::contract(const Vec3& x, const Vec3& y) const {
    Vec3 r;
    for (int g = 0; g < 3; ++g) {
        double s = 0.0;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) s += (*this)(g, a, b) * x[a] * y[b];
        r[g] = s;
    }
    return r;
}

Mat3 hat(const Vec3& x) {
    Mat3 a;
    a.m[0][1] = -x.z;
    a.m[0][2] = x.y;
    a.m[1][0] = x.z;
    a.m[1][2] = -x.x;
    a.m[2][0] = -x.y;
    a.m[2][1] = x.x;
    return a;
}

Vec3 vee(const Mat3& a) {
    return {0.5 * (a(2, 1) - a(1, 2)), 0.5 * (a(0, 2) - a(2, 0)),
            0.5 * (a(1, 0) - a(0, 1))};
}

namespace detail {

Mat3 exp_so3_rodrigues(const Vec3& omega) {
    const double theta = omega.norm();
    const Mat3 w = hat(omega);
    const double c1 = std::sin(theta) / theta;
    const double c2 = (1.0 - std::cos(theta)) / (theta * theta);
    return Mat3::identity() + c1 * w + c2 * (w * w);
}

Mat3 exp_so3_series(const Vec3& omega) {
    const double t2 = omega.norm2();
    const Mat3 w = hat(omega);
    const double c1 = 1.0 - t2 / 6.0 * (1.0 - t2 / 20.0);
    const double c2 = 0.5 * (1.0 - t2 / 12.0 * (1.0 - t2 / 30.0));
    return Mat3::identity() + c1 * w + c2 * (w * w);
}

} // namespace detail

Mat3 exp_so3(const Vec3& omega) {
    // branch threshold: both expansions agree to 1e-14 at ||omega|| = 1e-4
    if (omega.norm() < 1e-4) return detail::exp_so3_series(omega);
    return detail::exp_so3_rodrigues(omega);
}

Mat3 project_so3(const Mat3& a) {
    Mat3 q = a;
    for (int it = 0; it < 3; ++it) q = 0.5 * (q + q.transpose().inverse());
    return q;
}

} // namespace strand
