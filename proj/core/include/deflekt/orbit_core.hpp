// Keplerian two-body kernel: anomalies, element/state conversion, analytic
// planetary ephemerides and minimum orbit intersection distance.
#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "deflekt/constants.hpp"
#include "deflekt/vec.hpp"

namespace deflekt::orbit {

/// Keplerian elements of an elliptic orbit. Lengths in km, angles in rad,
/// epoch in days (MJD2000), mu in km^3/s^2.
struct OrbitalElements {
    double a = 0.0;
    double e = 0.0;
    double i = 0.0;
    double raan = 0.0;
    double argp = 0.0;
    double mean_anomaly = 0.0;  // at epoch
    double epoch = 0.0;
    double mu = kMuSun;

    double semi_latus_rectum() const { return a * (1.0 - e * e); }
    double semi_minor_axis() const { return a * eta(); }
    double eta() const;
    double mean_motion() const;       // rad/s
    double angular_momentum() const;  // km^2/s
    double period_seconds() const { return kTwoPi / mean_motion(); }
    double period_days() const { return days_from_seconds(period_seconds()); }
    double perihelion() const { return a * (1.0 - e); }
    double aphelion() const { return a * (1.0 + e); }

    /// Mean anomaly at time t [days], normalised to [0, 2pi).
    double mean_anomaly_at(double t) const;
    /// Radius on the conic at true anomaly theta.
    double radius_at(double theta) const;
    /// Vis-viva speed at true anomaly theta.
    double speed_at(double theta) const;

    /// Throws InvalidInput unless a > 0, 0 <= e < 1, 0 <= i <= pi and mu > 0.
    void validate() const;
};

struct CartesianState {
    Vec3 position = Vec3::Zero();  // km, heliocentric ecliptic J2000
    Vec3 velocity = Vec3::Zero();  // km/s
};

double normalize_angle(double angle);         // [0, 2pi)
double normalize_angle_signed(double angle);  // (-pi, pi]

/// Eccentric anomaly in [0, 2pi) from the mean anomaly. Newton seeded with
/// M + e sin M, bisection fallback; residual below 1e-12 rad.
double solve_kepler(double mean_anomaly, double e);

double true_from_eccentric(double eccentric_anomaly, double e);
double eccentric_from_true(double true_anomaly, double e);
double mean_from_true(double true_anomaly, double e);
double true_from_mean(double mean_anomaly, double e);

/// True anomaly at time t [days].
double true_anomaly_at(const OrbitalElements& el, double t);

/// Heliocentric state on the orbit at true anomaly theta.
CartesianState state_at_true_anomaly(const OrbitalElements& el, double theta);
CartesianState elements_to_state(const OrbitalElements& el, double t);

/// Osculating elements of an elliptic state; the returned epoch is t.
OrbitalElements state_to_elements(const CartesianState& state, double t, double mu);

/// Universal-variable two-body propagation by dt seconds; valid for every conic.
CartesianState kepler_propagate(const CartesianState& state, double dt_seconds, double mu);

/// Columns: radial, transverse (h x r), orbit normal.
Mat3 rtn_basis(const CartesianState& state);
/// Columns: tangential (along v), in-plane normal (h x t), orbit normal.
Mat3 tnh_basis(const CartesianState& state);

enum class Planet { Earth, Venus };

Planet planet_from_name(std::string_view name);
std::string_view planet_name(Planet planet);

/// Mean ecliptic J2000 elements with linear centennial rates. Valid for
/// |t| <= 100 years around J2000.
OrbitalElements planet_ephemeris(Planet planet, double t);

struct MoidResult {
    double distance = 0.0;                       // km
    Vec3 delta_r_vec = Vec3::Zero();             // neo - planet, neo RTN frame at the MOID point
    Vec3 delta_r_cartesian = Vec3::Zero();       // same vector, heliocentric frame
    double theta_moid = 0.0;                     // neo true anomaly
    double theta_planet = 0.0;                   // planet true anomaly
    std::vector<double> t_moid_candidates;       // neo crossings within one period of its epoch
};

/// Global minimum of the distance between two elliptic orbits as curves.
MoidResult compute_moid(const OrbitalElements& neo, const OrbitalElements& planet);

/// Every epoch in [t_lo, t_hi) at which the neo passes true anomaly theta_moid.
std::vector<double> moid_crossing_times(const OrbitalElements& neo, double theta_moid,
                                        double t_lo, double t_hi);
std::vector<double> moid_crossing_times(const OrbitalElements& neo, const MoidResult& moid,
                                        double t_lo, double t_hi);

}  // namespace deflekt::orbit
