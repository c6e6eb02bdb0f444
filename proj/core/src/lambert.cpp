#include "deflekt/lambert.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>

#include "deflekt/constants.hpp"
#include "deflekt/errors.hpp"

namespace deflekt::mission {

namespace {

double stumpff_c(double z) {
    if (z > 1e-3) {
        const double h = std::sin(0.5 * std::sqrt(z));
        return 2.0 * h * h / z;
    }
    if (z < -1e-3) return (std::cosh(std::sqrt(-z)) - 1.0) / (-z);
    return 0.5 - z / 24.0 + z * z / 720.0 - z * z * z / 40320.0;
}

double stumpff_s(double z) {
    if (z > 1e-3) {
        const double s = std::sqrt(z);
        return (s - std::sin(s)) / (s * s * s);
    }
    if (z < -1e-3) {
        const double s = std::sqrt(-z);
        return (std::sinh(s) - s) / (s * s * s);
    }
    return 1.0 / 6.0 - z / 120.0 + z * z / 5040.0 - z * z * z / 362880.0;
}

}  // namespace

LambertSolution lambert_arc(const Vec3& r1, const Vec3& r2, double tof, double mu, bool prograde) {
    if (!(tof > 0.0)) throw InvalidInput("lambert_arc: time of flight must be positive");
    const double n1 = r1.norm(), n2 = r2.norm();
    const Vec3 c12 = r1.cross(r2);
    if (!(n1 > 0.0 && n2 > 0.0) || c12.norm() <= 1e-10 * n1 * n2) {
        throw InvalidInput("lambert_arc: collinear endpoints leave the transfer plane undefined");
    }
    const double cos_dnu = std::clamp(r1.dot(r2) / (n1 * n2), -1.0, 1.0);
    double dnu = std::acos(cos_dnu);
    if ((c12.z() >= 0.0) != prograde) dnu = kTwoPi - dnu;
    const double a = std::sin(dnu) * std::sqrt(n1 * n2 / (1.0 - cos_dnu));

    auto y_of = [&](double z) {
        return n1 + n2 + a * (z * stumpff_s(z) - 1.0) / std::sqrt(stumpff_c(z));
    };
    auto tof_of = [&](double z) {
        const double y = y_of(z);
        const double c = stumpff_c(z);
        const double x = std::sqrt(y / c);
        return (x * x * x * stumpff_s(z) + a * std::sqrt(y)) / std::sqrt(mu);
    };

    // Upper end: just below the first full revolution, where tof diverges.
    const double z_max = 4.0 * kPi * kPi * (1.0 - 1e-10);
    double z_lo = -4.0 * kPi * kPi;
    // For a > 0, y(z) increases with z and must stay positive; tof -> 0 as y -> 0.
    if (a > 0.0 && y_of(z_lo) <= 0.0) {
        double bad = z_lo, good = z_max;
        for (int k = 0; k < 200 && good - bad > 1e-14 * (1.0 + std::abs(good)); ++k) {
            const double mid = 0.5 * (bad + good);
            (y_of(mid) > 0.0 ? good : bad) = mid;
        }
        z_lo = good;
    }
    int guard = 0;
    while (tof_of(z_lo) > tof) {
        const double next = 2.0 * z_lo - 1.0;
        if (++guard > 60 || y_of(next) <= 0.0) throw NumericalError("lambert_arc: cannot bracket time of flight");
        z_lo = next;
    }
    if (tof_of(z_max) < tof) throw NumericalError("lambert_arc: transfer needs more than one revolution");

    boost::uintmax_t iters = 200;
    const auto [lo, hi] = boost::math::tools::toms748_solve(
        [&](double z) { return tof_of(z) - tof; }, z_lo, z_max,
        boost::math::tools::eps_tolerance<double>(52), iters);
    const double z = 0.5 * (lo + hi);

    const double y = y_of(z);
    const double f = 1.0 - y / n1;
    const double g = a * std::sqrt(y / mu);
    const double gdot = 1.0 - y / n2;
    LambertSolution out;
    out.v1 = (r2 - f * r1) / g;
    out.v2 = (gdot * r2 - r1) / g;
    out.iterations = static_cast<int>(iters);
    return out;
}

}  // namespace deflekt::mission
