#include "deflekt/bplane.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>

#include "deflekt/errors.hpp"

namespace deflekt::bplane {

Mat3 BPlaneFrame::rotation() const {
    Mat3 r;
    r.row(0) = xi_hat.transpose();
    r.row(1) = eta_hat.transpose();
    r.row(2) = zeta_hat.transpose();
    return r;
}

BPlaneFrame build_frame(const Vec3& v_neo, const Vec3& v_earth) {
    const Vec3 u = v_neo - v_earth;
    const double un = u.norm();
    if (!(un > 0.0)) throw InvalidInput("build_frame: zero relative velocity");
    BPlaneFrame f;
    f.u_rel = u;
    f.v_earth = v_earth;
    f.eta_hat = u / un;
    const Vec3 proj = v_earth - v_earth.dot(f.eta_hat) * f.eta_hat;
    const double pn = proj.norm();
    if (!(pn > 1e-12 * v_earth.norm())) {
        throw InvalidInput("build_frame: relative velocity parallel to the Earth velocity");
    }
    f.zeta_hat = -proj / pn;
    f.xi_hat = f.eta_hat.cross(f.zeta_hat).normalized();
    return f;
}

BPlaneFrame build_frame(const OrbitalElements& neo, const OrbitalElements& earth, double t_moid) {
    const orbit::CartesianState sn = orbit::elements_to_state(neo, t_moid);
    const orbit::CartesianState se = orbit::elements_to_state(earth, t_moid);
    return build_frame(sn.velocity, se.velocity);
}

double hyperbolic_periapsis(double b, double v_inf, double mu_planet) {
    const double k = mu_planet / (v_inf * v_inf);
    const double x = b / k;
    // k (sqrt(1 + x^2) - 1) without cancellation for small x.
    return k * x * x / (std::sqrt(1.0 + x * x) + 1.0);
}

BPlaneCoordinates project(const BPlaneFrame& frame, const Vec3& local_deviation,
                          const Mat3& local_basis, double mu_planet) {
    const Vec3 b = frame.rotation() * (local_basis * local_deviation);
    BPlaneCoordinates c;
    c.xi = b.x();
    c.eta = b.y();
    c.zeta = b.z();
    c.b_star = std::hypot(c.xi, c.zeta);
    c.periapsis_estimate = hyperbolic_periapsis(c.b_star, frame.u_rel.norm(), mu_planet);
    return c;
}

BPlaneCoordinates project_deviation(const BPlaneFrame& frame, const DeviationResult& deviation,
                                    const Mat3& local_basis, double mu_planet) {
    return project(frame, deviation.vector(), local_basis, mu_planet);
}

impulse::OptimalDirection bstar_optimal_direction(const TransitionMatrix& tm,
                                                  const BPlaneFrame& frame,
                                                  const Mat3& local_basis) {
    const Mat3 full = frame.rotation() * local_basis * tm.T;
    Eigen::Matrix<double, Eigen::Dynamic, 3> in_plane(2, 3);
    in_plane.row(0) = full.row(0);
    in_plane.row(1) = full.row(2);
    return impulse::optimal_direction(in_plane);
}

namespace {

// Signed distance of the Earth from the asteroid's orbital plane.
double plane_offset(const Vec3& normal, double t) {
    const auto earth = orbit::planet_ephemeris(orbit::Planet::Earth, t);
    return normal.dot(orbit::elements_to_state(earth, t).position);
}

}  // namespace

ZeroMoidShift zero_moid_shift(const OrbitalElements& neo, double t_ref) {
    neo.validate();
    const double si = std::sin(neo.i);
    if (std::abs(si) < 1e-9) throw InvalidInput("zero_moid_shift: orbit plane coincides with the ecliptic");
    const Vec3 normal(std::sin(neo.raan) * si, -std::cos(neo.raan) * si, std::cos(neo.i));
    const Vec3 node(std::cos(neo.raan), std::sin(neo.raan), 0.0);
    const Vec3 in_plane = normal.cross(node);
    const double p = neo.semi_latus_rectum();

    ZeroMoidShift best;
    double best_change = std::numeric_limits<double>::infinity();
    int crossings = 0;
    double prev_t = t_ref;
    double prev_f = plane_offset(normal, prev_t);
    for (double t = t_ref + 1.0; t <= t_ref + 800.0 && crossings < 2; t += 1.0) {
        const double f = plane_offset(normal, t);
        if ((prev_f < 0.0) != (f < 0.0)) {
            ++crossings;
            boost::uintmax_t iters = 100;
            const auto [lo, hi] = boost::math::tools::toms748_solve(
                [&](double x) { return plane_offset(normal, x); }, prev_t, t, prev_f, f,
                boost::math::tools::eps_tolerance<double>(50), iters);
            const double t_cross = 0.5 * (lo + hi);
            const auto earth = orbit::planet_ephemeris(orbit::Planet::Earth, t_cross);
            const Vec3 pos = orbit::elements_to_state(earth, t_cross).position;
            const double u = std::atan2(pos.dot(in_plane), pos.dot(node));
            const double cos_theta = (p / pos.norm() - 1.0) / neo.e;
            if (neo.e > 0.0 && std::abs(cos_theta) <= 1.0) {
                for (double sign : {1.0, -1.0}) {
                    const double theta = orbit::normalize_angle(sign * std::acos(cos_theta));
                    const double change = orbit::normalize_angle_signed(u - theta - neo.argp);
                    if (std::abs(change) < best_change) {
                        best_change = std::abs(change);
                        best.elements = neo;
                        best.elements.argp = orbit::normalize_angle(neo.argp + change);
                        const double m_target = orbit::mean_from_true(theta, neo.e);
                        best.elements.mean_anomaly = orbit::normalize_angle(
                            m_target - neo.mean_motion() * seconds_from_days(t_cross - neo.epoch));
                        best.t_moid = t_cross;
                        best.theta_moid = theta;
                        best.d_argp = change;
                    }
                }
            }
        }
        prev_t = t;
        prev_f = f;
    }
    if (!std::isfinite(best_change)) {
        throw InvalidInput("zero_moid_shift: orbit does not reach the Earth's distance at the nodes");
    }
    return best;
}

Encounter make_encounter(const OrbitalElements& neo, double t_moid) {
    Encounter enc;
    enc.neo = neo;
    enc.t_moid = t_moid;
    enc.theta_moid = orbit::true_anomaly_at(neo, t_moid);
    const orbit::CartesianState s = orbit::elements_to_state(neo, t_moid);
    const auto earth = orbit::planet_ephemeris(orbit::Planet::Earth, t_moid);
    enc.frame = build_frame(s.velocity, orbit::elements_to_state(earth, t_moid).velocity);
    enc.local_basis = orbit::rtn_basis(s);
    return enc;
}

}  // namespace deflekt::bplane
