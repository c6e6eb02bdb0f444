#include "deflekt/deviation_model.hpp"

#include <cmath>
#include <limits>

#include "deflekt/errors.hpp"

namespace deflekt::deviation {

namespace {

constexpr double kPlanarSinI = 1e-12;

struct PointGeometry {
    double r, v, c, s, arg_lat;
};

PointGeometry geometry_at(const OrbitalElements& el, double theta) {
    const double r = el.radius_at(theta);
    return {r, el.speed_at(theta), std::cos(theta), std::sin(theta), theta + el.argp};
}

double drift_coefficient(const OrbitalElements& el, double dt_seconds) {
    return -1.5 * std::sqrt(el.mu) / std::pow(el.a, 2.5) * dt_seconds;
}

}  // namespace

ElementVector ElementDelta::vector() const {
    ElementVector v;
    v << d_a, d_e, d_i, d_raan, d_argp, d_M;
    return v;
}

ElementDelta ElementDelta::from_vector(const ElementVector& v) {
    return {v(0), v(1), v(2), v(3), v(4), v(5)};
}

double time_to_impact_seconds(double t_d, double t_moid) { return seconds_from_days(t_moid - t_d); }

GaussMatrix gauss_matrix(const OrbitalElements& el, double theta_d) {
    el.validate();
    if (el.e < kEccentricityFloor) {
        throw InvalidInput("gauss_matrix: eccentricity below the singular-row floor");
    }
    const auto [r, v, c, s, arg_lat] = geometry_at(el, theta_d);
    const double a = el.a, e = el.e, mu = el.mu;
    const double h = el.angular_momentum();
    const double p = el.semi_latus_rectum();
    const double b = el.semi_minor_axis();
    const double si = std::sin(el.i), ci = std::cos(el.i);

    GaussMatrix g = GaussMatrix::Zero();
    g(0, 0) = 2.0 * a * a * v / mu;
    g(1, 0) = 2.0 * (e + c) / v;
    g(1, 1) = -r / (a * v) * s;
    g(2, 2) = r * std::cos(arg_lat) / h;
    g(4, 0) = 2.0 * s / (e * v);
    g(4, 1) = (2.0 * e + r / a * c) / (e * v);
    g(5, 0) = -b / (e * a * v) * 2.0 * (1.0 + e * e * r / p) * s;
    g(5, 1) = -b / (e * a * v) * (r / a) * c;
    if (std::abs(si) > kPlanarSinI) {
        const double node = r * std::sin(arg_lat) / (h * si);
        g(3, 2) = node;
        g(4, 2) = -node * ci;
    }
    return g;
}

double mean_motion_drift(const OrbitalElements& el, double d_a, double dt_seconds,
                         DriftModel model) {
    if (model == DriftModel::Linearized) return drift_coefficient(el, dt_seconds) * d_a;
    const double a1 = el.a + d_a;
    const double dn = std::sqrt(el.mu / (a1 * a1 * a1)) - std::sqrt(el.mu / (el.a * el.a * el.a));
    return dn * dt_seconds;
}

ProximalMatrix proximal_matrix(const OrbitalElements& el, double theta_moid, double dt_seconds) {
    el.validate();
    const double r = el.radius_at(theta_moid);
    const double c = std::cos(theta_moid), s = std::sin(theta_moid);
    const double a = el.a, e = el.e, eta = el.eta();
    const double arg_lat = theta_moid + el.argp;
    const double k = drift_coefficient(el, dt_seconds);
    const double along = r / (eta * eta * eta) * (1.0 + e * c) * (1.0 + e * c);

    ProximalMatrix m = ProximalMatrix::Zero();
    // ds_r
    m(0, 0) = r / a + a * e * s / eta * k;
    m(0, 1) = -a * c;
    m(0, 5) = a * e * s / eta;
    // ds_theta
    m(1, 0) = along * k;
    m(1, 1) = r * s / (eta * eta) * (2.0 + e * c);
    m(1, 3) = r * std::cos(el.i);
    m(1, 4) = r;
    m(1, 5) = along;
    // ds_h
    m(2, 2) = r * std::sin(arg_lat);
    m(2, 3) = -r * std::cos(arg_lat) * std::sin(el.i);
    return m;
}

namespace {

// Rows (a, e, i, raan, argp + M, e*M); every entry is regular as e -> 0.
GaussMatrix combined_gauss_matrix(const OrbitalElements& el, double theta_d) {
    const auto [r, v, c, s, arg_lat] = geometry_at(el, theta_d);
    const double a = el.a, e = el.e, mu = el.mu, eta = el.eta();
    const double h = el.angular_momentum();
    const double p = el.semi_latus_rectum();
    GaussMatrix g = GaussMatrix::Zero();
    g(0, 0) = 2.0 * a * a * v / mu;
    g(1, 0) = 2.0 * (e + c) / v;
    g(1, 1) = -r / (a * v) * s;
    g(2, 2) = r * std::cos(arg_lat) / h;
    g(4, 0) = 2.0 * s / v * e * (1.0 / (1.0 + eta) - eta * r / p);
    g(4, 1) = (2.0 + r / a * c * e / (1.0 + eta)) / v;
    g(5, 0) = -eta / v * 2.0 * (1.0 + e * e * r / p) * s;
    g(5, 1) = -eta / v * (r / a) * c;
    const double si = std::sin(el.i);
    if (std::abs(si) > kPlanarSinI) {
        const double node = r * std::sin(arg_lat) / (h * si);
        g(3, 2) = node;
        g(4, 2) = -node * std::cos(el.i);
    }
    return g;
}

ProximalMatrix combined_proximal_matrix(const OrbitalElements& el, double theta_moid,
                                        double dt_seconds) {
    ProximalMatrix m = proximal_matrix(el, theta_moid, dt_seconds);
    const double r = el.radius_at(theta_moid);
    const double c = std::cos(theta_moid), s = std::sin(theta_moid);
    const double e = el.e, eta = el.eta();
    const double eta3 = eta * eta * eta;
    // ((1 + e c)^2 / eta^3 - 1) / e without the 1/e.
    const double q = (2.0 * c + e * c * c + e * (1.0 + eta + eta * eta) / (1.0 + eta)) / eta3;
    m(0, 4) = 0.0;
    m(0, 5) = el.a * s / eta;
    m(1, 4) = r;
    m(1, 5) = r * q;
    return m;
}

}  // namespace

TransitionMatrix transition_matrix(const OrbitalElements& el, double theta_d, double t_d,
                                   double theta_moid, double t_moid) {
    el.validate();
    if (!(t_moid >= t_d)) throw InvalidInput("transition_matrix: t_moid must not precede t_d");

    TransitionMatrix tm;
    tm.dt_seconds = time_to_impact_seconds(t_d, t_moid);
    tm.drift_per_da = drift_coefficient(el, tm.dt_seconds);
    tm.combined_rows = el.e < kEccentricityFloor;
    tm.planar = std::abs(std::sin(el.i)) <= kPlanarSinI;
    if (tm.combined_rows) {
        tm.G = combined_gauss_matrix(el, theta_d);
        tm.A = combined_proximal_matrix(el, theta_moid, tm.dt_seconds);
    } else {
        tm.G = gauss_matrix(el, theta_d);
        tm.A = proximal_matrix(el, theta_moid, tm.dt_seconds);
    }

    tm.T.leftCols<2>() = tm.A * tm.G.leftCols<2>();
    const double r_m = el.radius_at(theta_moid);
    const double r_d = el.radius_at(theta_d);
    const double u_m = theta_moid + el.argp;
    const double u_d = theta_d + el.argp;
    tm.T(0, 2) = 0.0;
    tm.T(1, 2) = 0.0;
    tm.T(2, 2) = r_m * r_d / el.angular_momentum() * std::sin(u_m - u_d);
    return tm;
}

DeviationResult evaluate_deviation(const TransitionMatrix& tm, const ImpulseVector& dv) {
    const Vec3 ds = tm.T * dv.vector();
    ElementVector raw = tm.G * dv.vector();
    DeviationResult out;
    out.ds_r = ds.x();
    out.ds_theta = ds.y();
    out.ds_h = ds.z();
    out.magnitude = ds.norm();
    out.dt_to_impact = days_from_seconds(tm.dt_seconds);
    ElementDelta d = ElementDelta::from_vector(raw);
    if (tm.combined_rows) {
        // raw(4) = d_argp + d_M, raw(5) = e * d_M; the split is singular at e = 0.
        d.d_M = std::numeric_limits<double>::quiet_NaN();
        d.d_argp = std::numeric_limits<double>::quiet_NaN();
    }
    d.d_M += tm.drift_per_da * d.d_a;
    out.delta = d;
    return out;
}

double deviated_moid_objective(const Vec3& delta_r, const TransitionMatrix& tm,
                               const ImpulseVector& dv) {
    return (delta_r + tm.T * dv.vector()).squaredNorm();
}

}  // namespace deflekt::deviation
