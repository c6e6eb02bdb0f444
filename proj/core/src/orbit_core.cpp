#include "deflekt/orbit_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "deflekt/errors.hpp"

namespace deflekt::orbit {

double OrbitalElements::eta() const { return std::sqrt(1.0 - e * e); }

double OrbitalElements::mean_motion() const { return std::sqrt(mu / (a * a * a)); }

double OrbitalElements::angular_momentum() const { return std::sqrt(mu * semi_latus_rectum()); }

double OrbitalElements::mean_anomaly_at(double t) const {
    return normalize_angle(mean_anomaly + mean_motion() * seconds_from_days(t - epoch));
}

double OrbitalElements::radius_at(double theta) const {
    return semi_latus_rectum() / (1.0 + e * std::cos(theta));
}

double OrbitalElements::speed_at(double theta) const {
    return std::sqrt(mu * (2.0 / radius_at(theta) - 1.0 / a));
}

void OrbitalElements::validate() const {
    const bool finite = std::isfinite(a) && std::isfinite(e) && std::isfinite(i) &&
                        std::isfinite(raan) && std::isfinite(argp) &&
                        std::isfinite(mean_anomaly) && std::isfinite(epoch) && std::isfinite(mu);
    if (!finite) throw InvalidInput("orbital elements contain non-finite values");
    if (!(a > 0.0)) throw InvalidInput("semi-major axis must be positive");
    if (!(e >= 0.0 && e < 1.0)) throw InvalidInput("eccentricity must lie in [0, 1)");
    if (!(i >= 0.0 && i <= kPi)) throw InvalidInput("inclination must lie in [0, pi]");
    if (!(mu > 0.0)) throw InvalidInput("gravitational parameter must be positive");
}

double normalize_angle(double angle) {
    double r = std::fmod(angle, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

double normalize_angle_signed(double angle) {
    double r = normalize_angle(angle);
    if (r > kPi) r -= kTwoPi;
    return r;
}

double solve_kepler(double mean_anomaly, double e) {
    if (!(e >= 0.0 && e < 1.0)) throw InvalidInput("solve_kepler: eccentricity must lie in [0, 1)");
    if (!std::isfinite(mean_anomaly)) throw InvalidInput("solve_kepler: non-finite mean anomaly");
    const double m = normalize_angle(mean_anomaly);
    if (m == 0.0) return 0.0;

    auto residual = [&](double ecc) { return ecc - e * std::sin(ecc) - m; };

    double ecc = m + e * std::sin(m);
    for (int iter = 0; iter < 50; ++iter) {
        const double f = residual(ecc);
        const double df = 1.0 - e * std::cos(ecc);
        const double step = f / df;
        ecc -= step;
        if (std::abs(step) < 1e-15 || std::abs(residual(ecc)) < 1e-14) {
            if (ecc >= 0.0 && ecc <= kTwoPi && std::abs(residual(ecc)) < 1e-12) {
                return ecc >= kTwoPi ? 0.0 : ecc;
            }
            break;
        }
    }

    // f is monotone on [0, 2pi] for e < 1.
    double lo = 0.0;
    double hi = kTwoPi;
    for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (residual(mid) > 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    const double root = 0.5 * (lo + hi);
    if (std::abs(residual(root)) > 1e-12) throw NumericalError("solve_kepler: no convergence");
    return root;
}

double true_from_eccentric(double eccentric_anomaly, double e) {
    const double half = eccentric_anomaly / 2.0;
    return normalize_angle(
        2.0 * std::atan2(std::sqrt(1.0 + e) * std::sin(half), std::sqrt(1.0 - e) * std::cos(half)));
}

double eccentric_from_true(double true_anomaly, double e) {
    const double half = true_anomaly / 2.0;
    return normalize_angle(
        2.0 * std::atan2(std::sqrt(1.0 - e) * std::sin(half), std::sqrt(1.0 + e) * std::cos(half)));
}

double mean_from_true(double true_anomaly, double e) {
    const double ecc = eccentric_from_true(true_anomaly, e);
    return normalize_angle(ecc - e * std::sin(ecc));
}

double true_from_mean(double mean_anomaly, double e) {
    return true_from_eccentric(solve_kepler(mean_anomaly, e), e);
}

double true_anomaly_at(const OrbitalElements& el, double t) {
    return true_from_mean(el.mean_anomaly_at(t), el.e);
}

namespace {

// Perifocal unit vectors P (towards pericentre) and Q in the inertial frame.
std::pair<Vec3, Vec3> perifocal_axes(const OrbitalElements& el) {
    const double co = std::cos(el.raan), so = std::sin(el.raan);
    const double cw = std::cos(el.argp), sw = std::sin(el.argp);
    const double ci = std::cos(el.i), si = std::sin(el.i);
    Vec3 p(co * cw - so * sw * ci, so * cw + co * sw * ci, sw * si);
    Vec3 q(-co * sw - so * cw * ci, -so * sw + co * cw * ci, cw * si);
    return {p, q};
}

}  // namespace

CartesianState state_at_true_anomaly(const OrbitalElements& el, double theta) {
    const auto [p_axis, q_axis] = perifocal_axes(el);
    const double p = el.semi_latus_rectum();
    const double r = p / (1.0 + el.e * std::cos(theta));
    const double vscale = std::sqrt(el.mu / p);
    CartesianState s;
    s.position = r * (std::cos(theta) * p_axis + std::sin(theta) * q_axis);
    s.velocity = vscale * (-std::sin(theta) * p_axis + (el.e + std::cos(theta)) * q_axis);
    return s;
}

CartesianState elements_to_state(const OrbitalElements& el, double t) {
    return state_at_true_anomaly(el, true_anomaly_at(el, t));
}

OrbitalElements state_to_elements(const CartesianState& state, double t, double mu) {
    const Vec3& r = state.position;
    const Vec3& v = state.velocity;
    const double rn = r.norm();
    if (!(rn > 0.0) || !r.allFinite() || !v.allFinite()) {
        throw InvalidInput("state_to_elements: degenerate state");
    }
    const Vec3 h = r.cross(v);
    const double hn = h.norm();
    if (!(hn > 0.0)) throw InvalidInput("state_to_elements: rectilinear state");

    const double energy = v.squaredNorm() / 2.0 - mu / rn;
    if (!(energy < 0.0)) throw InvalidInput("state_to_elements: state is not elliptic");

    const Vec3 e_vec = ((v.squaredNorm() - mu / rn) * r - r.dot(v) * v) / mu;
    OrbitalElements el;
    el.mu = mu;
    el.epoch = t;
    el.a = -mu / (2.0 * energy);
    el.e = e_vec.norm();
    el.i = std::acos(std::clamp(h.z() / hn, -1.0, 1.0));

    const Vec3 h_hat = h / hn;
    Vec3 node = Vec3::UnitZ().cross(h);
    Vec3 node_hat;
    if (node.norm() < 1e-14 * hn) {
        el.raan = 0.0;
        node_hat = Vec3::UnitX();
    } else {
        node_hat = node.normalized();
        el.raan = normalize_angle(std::atan2(node_hat.y(), node_hat.x()));
    }
    const Vec3 node_perp = h_hat.cross(node_hat);

    const double arg_lat = std::atan2(r.dot(node_perp), r.dot(node_hat));
    double theta = 0.0;
    if (el.e < 1e-14) {
        el.argp = 0.0;
        theta = arg_lat;
    } else {
        el.argp = normalize_angle(std::atan2(e_vec.dot(node_perp), e_vec.dot(node_hat)));
        theta = arg_lat - el.argp;
    }
    el.mean_anomaly = mean_from_true(normalize_angle(theta), el.e);
    return el;
}

namespace {

void stumpff(double z, double& c, double& s) {
    if (z > 1e-3) {
        const double sz = std::sqrt(z);
        c = (1.0 - std::cos(sz)) / z;
        s = (sz - std::sin(sz)) / (z * sz);
    } else if (z < -1e-3) {
        const double sz = std::sqrt(-z);
        c = (std::cosh(sz) - 1.0) / (-z);
        s = (std::sinh(sz) - sz) / (-z * sz);
    } else {
        c = 1.0 / 2.0 - z / 24.0 + z * z / 720.0 - z * z * z / 40320.0;
        s = 1.0 / 6.0 - z / 120.0 + z * z / 5040.0 - z * z * z / 362880.0;
    }
}

}  // namespace

CartesianState kepler_propagate(const CartesianState& state, double dt_seconds, double mu) {
    const Vec3& r0v = state.position;
    const Vec3& v0v = state.velocity;
    const double r0 = r0v.norm();
    if (!(r0 > 0.0)) throw InvalidInput("kepler_propagate: zero radius");
    if (dt_seconds == 0.0) return state;

    const double sqrt_mu = std::sqrt(mu);
    const double vr0 = r0v.dot(v0v) / r0;
    const double alpha = 2.0 / r0 - v0v.squaredNorm() / mu;  // 1/a

    double dt = dt_seconds;
    if (alpha > 0.0) {
        const double period = kTwoPi / std::sqrt(mu * alpha * alpha * alpha);
        dt = std::fmod(dt, period);
    }

    auto time_of = [&](double chi) {
        double c, s;
        const double z = alpha * chi * chi;
        stumpff(z, c, s);
        return (r0 * vr0 / sqrt_mu * chi * chi * c + (1.0 - alpha * r0) * chi * chi * chi * s +
                r0 * chi) / sqrt_mu;
    };
    auto radius_of = [&](double chi) {
        double c, s;
        const double z = alpha * chi * chi;
        stumpff(z, c, s);
        return chi * chi * c + r0 * vr0 / sqrt_mu * chi * (1.0 - z * s) + r0 * (1.0 - z * c);
    };

    // time_of is strictly increasing in chi (derivative r/sqrt(mu) > 0).
    double chi = sqrt_mu * std::abs(alpha) * dt;
    if (alpha <= 0.0 || !std::isfinite(chi)) chi = sqrt_mu * dt / r0;
    double lo = chi, hi = chi;
    double step = std::max(std::abs(chi), 1.0);
    while (time_of(lo) > dt) { lo -= step; step *= 2.0; }
    step = std::max(std::abs(chi), 1.0);
    while (time_of(hi) < dt) { hi += step; step *= 2.0; }

    for (int iter = 0; iter < 200; ++iter) {
        const double f = time_of(chi) - dt;
        if (f > 0.0) hi = chi; else lo = chi;
        const double df = radius_of(chi) / sqrt_mu;
        double next = chi - f / df;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - chi) <= 1e-14 * std::max(1.0, std::abs(chi))) {
            chi = next;
            break;
        }
        chi = next;
    }

    double c, s;
    const double z = alpha * chi * chi;
    stumpff(z, c, s);
    const double f = 1.0 - chi * chi / r0 * c;
    const double g = dt - chi * chi * chi * s / sqrt_mu;
    CartesianState out;
    out.position = f * r0v + g * v0v;
    const double r = out.position.norm();
    const double fdot = sqrt_mu / (r * r0) * (alpha * chi * chi * chi * s - chi);
    const double gdot = 1.0 - chi * chi / r * c;
    out.velocity = fdot * r0v + gdot * v0v;
    return out;
}

Mat3 rtn_basis(const CartesianState& state) {
    const Vec3 r_hat = state.position.normalized();
    const Vec3 h_hat = state.position.cross(state.velocity).normalized();
    Mat3 basis;
    basis.col(0) = r_hat;
    basis.col(1) = h_hat.cross(r_hat);
    basis.col(2) = h_hat;
    return basis;
}

Mat3 tnh_basis(const CartesianState& state) {
    const Vec3 t_hat = state.velocity.normalized();
    const Vec3 h_hat = state.position.cross(state.velocity).normalized();
    Mat3 basis;
    basis.col(0) = t_hat;
    basis.col(1) = h_hat.cross(t_hat);
    basis.col(2) = h_hat;
    return basis;
}

Planet planet_from_name(std::string_view name) {
    if (name == "earth" || name == "Earth") return Planet::Earth;
    if (name == "venus" || name == "Venus") return Planet::Venus;
    throw InvalidInput("unknown planet: " + std::string(name));
}

std::string_view planet_name(Planet planet) {
    switch (planet) {
        case Planet::Earth: return "Earth";
        case Planet::Venus: return "Venus";
    }
    return "unknown";
}

namespace {

// J2000 mean elements and centennial rates: a [AU], e, I [deg], L [deg],
// longitude of perihelion [deg], longitude of node [deg].
struct MeanElementRow {
    std::array<double, 6> value;
    std::array<double, 6> rate;
};

constexpr MeanElementRow kEarthMoonBarycentre{
    {1.00000261, 0.01671123, -0.00001531, 100.46457166, 102.93768193, 0.0},
    {0.00000562, -0.00004392, -0.01294668, 35999.37244981, 0.32327364, 0.0}};

constexpr MeanElementRow kVenus{
    {0.72333566, 0.00677672, 3.39467605, 181.97909950, 131.60246718, 76.67984255},
    {0.00000390, -0.00004107, -0.00078890, 58517.81538729, 0.00268329, -0.27769418}};

}  // namespace

OrbitalElements planet_ephemeris(Planet planet, double t) {
    if (!std::isfinite(t) || std::abs(t) > kDaysPerJulianCentury) {
        throw InvalidInput("planet_ephemeris: epoch outside the +/-100 year validity range");
    }
    const MeanElementRow& row = planet == Planet::Earth ? kEarthMoonBarycentre : kVenus;
    const double centuries = t / kDaysPerJulianCentury;
    std::array<double, 6> v{};
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = row.value[k] + row.rate[k] * centuries;

    double inc = v[2] * kDegToRad;
    double node = v[5] * kDegToRad;
    const double peri_longitude = v[4] * kDegToRad;
    const double mean_longitude = v[3] * kDegToRad;
    // A negative tabulated inclination is the same plane seen with the node
    // rotated by pi; the longitude of perihelion is unchanged.
    if (inc < 0.0) {
        inc = -inc;
        node += kPi;
    }

    OrbitalElements el;
    el.a = v[0] * kAuKm;
    el.e = v[1];
    el.i = inc;
    el.raan = normalize_angle(node);
    el.argp = normalize_angle(peri_longitude - node);
    el.mean_anomaly = normalize_angle(mean_longitude - peri_longitude);
    el.epoch = t;
    el.mu = kMuSun;
    return el;
}

}  // namespace deflekt::orbit
