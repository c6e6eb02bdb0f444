#include "deflekt/symmetric_eigen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "deflekt/constants.hpp"

namespace deflekt::linalg {

namespace {

constexpr double kOffDiagonalTol = 1e-13;

void sort_ascending(SymmetricEigen& out) {
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int x, int y) { return out.values(x) < out.values(y); });
    const Vec3 values = out.values;
    const Mat3 vectors = out.vectors;
    for (int k = 0; k < 3; ++k) {
        out.values(k) = values(idx[k]);
        out.vectors.col(k) = vectors.col(idx[k]);
    }
}

// Null vector of (m - lambda I) from the best-conditioned cross product of its rows.
Vec3 null_vector(const Mat3& m, double lambda) {
    const Mat3 s = m - lambda * Mat3::Identity();
    const Vec3 r0 = s.row(0).transpose(), r1 = s.row(1).transpose(), r2 = s.row(2).transpose();
    const std::array<Vec3, 3> c{r0.cross(r1), r0.cross(r2), r1.cross(r2)};
    int best = 0;
    for (int k = 1; k < 3; ++k) {
        if (c[k].squaredNorm() > c[best].squaredNorm()) best = k;
    }
    const double n = c[best].norm();
    return n > 0.0 ? Vec3(c[best] / n) : Vec3::Zero();
}

}  // namespace

SymmetricEigen jacobi_eigen(const Mat3& m) {
    Mat3 a = m;
    Mat3 v = Mat3::Identity();
    const double scale = std::max(m.norm(), 1e-300);
    for (int sweep = 0; sweep < 100; ++sweep) {
        const double off = std::sqrt(2.0 * (a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2)));
        if (off <= kOffDiagonalTol * scale) break;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                if (a(p, q) == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                Mat3 j = Mat3::Identity();
                j(p, p) = c;
                j(q, q) = c;
                j(p, q) = s;
                j(q, p) = -s;
                a = j.transpose() * a * j;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                v = v * j;
            }
        }
    }
    SymmetricEigen out;
    out.values = a.diagonal();
    out.vectors = v;
    out.jacobi = true;
    sort_ascending(out);
    return out;
}

SymmetricEigen symmetric_eigen(const Mat3& m) {
    const double scale = m.cwiseAbs().maxCoeff();
    if (scale == 0.0) return {};
    const Mat3 a = m / scale;

    const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    Vec3 lambda;
    if (p1 == 0.0) {
        lambda = a.diagonal();
    } else {
        const double q = a.trace() / 3.0;
        const double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) +
                          (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * p1;
        const double p = std::sqrt(p2 / 6.0);
        const Mat3 b = (a - q * Mat3::Identity()) / p;
        const double r = std::clamp(b.determinant() / 2.0, -1.0, 1.0);
        const double phi = std::acos(r) / 3.0;
        lambda(2) = q + 2.0 * p * std::cos(phi);
        lambda(0) = q + 2.0 * p * std::cos(phi + 2.0 * kPi / 3.0);
        lambda(1) = 3.0 * q - lambda(0) - lambda(2);
    }
    std::sort(lambda.data(), lambda.data() + 3);

    // Nearly repeated eigenvalues make the cross products ill-conditioned.
    const double spread = std::max(std::abs(lambda(0)), std::abs(lambda(2)));
    const double gap = std::min(lambda(1) - lambda(0), lambda(2) - lambda(1));
    if (gap <= 1e-6 * spread) return jacobi_eigen(m);

    SymmetricEigen out;
    out.values = lambda * scale;
    out.vectors.col(2) = null_vector(a, lambda(2));
    out.vectors.col(0) = null_vector(a, lambda(0));
    if (out.vectors.col(2).squaredNorm() == 0.0 || out.vectors.col(0).squaredNorm() == 0.0) {
        return jacobi_eigen(m);
    }
    out.vectors.col(1) = out.vectors.col(2).cross(out.vectors.col(0)).normalized();

    for (int k = 0; k < 3; ++k) {
        const double residual = (a * out.vectors.col(k) - lambda(k) * out.vectors.col(k)).norm();
        if (residual > 1e-9) return jacobi_eigen(m);
    }
    // The cubic's roots lose absolute accuracy when one eigenvalue dominates;
    // Rayleigh quotients of the (accurate) vectors recover it.
    for (int k = 0; k < 3; ++k) out.values(k) = out.vectors.col(k).dot(m * out.vectors.col(k));
    sort_ascending(out);
    return out;
}

}  // namespace deflekt::linalg
