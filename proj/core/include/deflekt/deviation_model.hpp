// First-order mapping from an impulsive velocity change at the deflection
// point to the displacement of the asteroid at the MOID crossing.
#pragma once

#include <Eigen/Dense>

#include "deflekt/orbit_core.hpp"
#include "deflekt/vec.hpp"

namespace deflekt::deviation {

using orbit::OrbitalElements;
using GaussMatrix = Eigen::Matrix<double, 6, 3>;
using ProximalMatrix = Eigen::Matrix<double, 3, 6>;
using ElementVector = Eigen::Matrix<double, 6, 1>;

/// Below this eccentricity the 1/e rows are replaced by the combined
/// (omega + M, e*M) formulation.
inline constexpr double kEccentricityFloor = 1e-4;

/// Impulse in the {t, n, h} frame at the deflection point [km/s].
struct ImpulseVector {
    double dv_t = 0.0;
    double dv_n = 0.0;
    double dv_h = 0.0;

    Vec3 vector() const { return {dv_t, dv_n, dv_h}; }
    double norm() const { return vector().norm(); }
    static ImpulseVector from_vector(const Vec3& v) { return {v.x(), v.y(), v.z()}; }
    ImpulseVector operator-() const { return {-dv_t, -dv_n, -dv_h}; }
    ImpulseVector operator*(double s) const { return {dv_t * s, dv_n * s, dv_h * s}; }
};

/// Element differences; d_a in km, angles in rad.
struct ElementDelta {
    double d_a = 0.0;
    double d_e = 0.0;
    double d_i = 0.0;
    double d_raan = 0.0;
    double d_argp = 0.0;
    double d_M = 0.0;

    ElementVector vector() const;
    static ElementDelta from_vector(const ElementVector& v);
};

/// Displacement at the MOID crossing in the radial / transverse / normal frame.
struct DeviationResult {
    double ds_r = 0.0;
    double ds_theta = 0.0;
    double ds_h = 0.0;
    double magnitude = 0.0;   // km
    ElementDelta delta;       // d_M includes the mean-motion drift
    double dt_to_impact = 0.0;  // days

    Vec3 vector() const { return {ds_r, ds_theta, ds_h}; }
};

struct TransitionMatrix {
    Mat3 T = Mat3::Zero();
    ProximalMatrix A = ProximalMatrix::Zero();
    GaussMatrix G = GaussMatrix::Zero();
    double dt_seconds = 0.0;
    double drift_per_da = 0.0;   // d(delta M_n)/d(delta a) [rad/km]
    bool combined_rows = false;  // e below kEccentricityFloor: rows are (a, e, i, raan, argp+M, e*M)
    bool planar = false;         // sin i ~ 0: node rows of G carry no out-of-plane entries
};

enum class DriftModel { Linearized, Exact };

/// Seconds between the deflection epoch and the MOID epoch (both MJD2000 days).
double time_to_impact_seconds(double t_d, double t_moid);

/// Gauss variational matrix at true anomaly theta_d. Rows: a, e, i, raan, argp,
/// instantaneous M. Throws InvalidInput for e < kEccentricityFloor.
GaussMatrix gauss_matrix(const OrbitalElements& el, double theta_d);

/// Mean-anomaly shift caused by a semi-major-axis change d_a over dt seconds.
double mean_motion_drift(const OrbitalElements& el, double d_a, double dt_seconds,
                         DriftModel model = DriftModel::Linearized);

/// Proximal-motion matrix at theta_moid with the linearised drift folded into the d_a column.
ProximalMatrix proximal_matrix(const OrbitalElements& el, double theta_moid, double dt_seconds);

/// T = A * G with dt = t_moid - t_d. The out-of-plane column is assembled in its
/// reduced form (the omega and raan contributions to ds_theta cancel identically),
/// so T stays finite for planar orbits.
TransitionMatrix transition_matrix(const OrbitalElements& el, double theta_d, double t_d,
                                   double theta_moid, double t_moid);

DeviationResult evaluate_deviation(const TransitionMatrix& tm, const ImpulseVector& dv);

/// J = |delta_r + T dv|^2 with delta_r in the asteroid RTN frame at the MOID [km^2].
double deviated_moid_objective(const Vec3& delta_r, const TransitionMatrix& tm,
                               const ImpulseVector& dv);

}  // namespace deflekt::deviation
