// Encounter (b-plane) geometry for a deflected asteroid at its MOID crossing.
#pragma once

#include "deflekt/deviation_model.hpp"
#include "deflekt/impulse_optimizer.hpp"

namespace deflekt::bplane {

using deviation::DeviationResult;
using deviation::TransitionMatrix;
using orbit::OrbitalElements;

/// eta_hat along the unperturbed asteroid velocity relative to the Earth,
/// zeta_hat opposite to the projection of the Earth's heliocentric velocity on
/// the b-plane, xi_hat = eta_hat x zeta_hat, so (xi, eta, zeta) is right-handed.
struct BPlaneFrame {
    Vec3 xi_hat = Vec3::UnitX();
    Vec3 eta_hat = Vec3::UnitY();
    Vec3 zeta_hat = Vec3::UnitZ();
    Vec3 u_rel = Vec3::Zero();    // km/s
    Vec3 v_earth = Vec3::Zero();  // km/s

    /// Rows xi_hat, eta_hat, zeta_hat: x_bplane = rotation() * x_cartesian.
    Mat3 rotation() const;
};

struct BPlaneCoordinates {
    double xi = 0.0;    // km
    double eta = 0.0;   // km
    double zeta = 0.0;  // km
    double b_star = 0.0;            // sqrt(xi^2 + zeta^2) [km]
    double periapsis_estimate = 0.0;  // hyperbolic periapsis for impact parameter b_star [km]
};

/// Throws InvalidInput when u_rel vanishes or is parallel to v_earth.
BPlaneFrame build_frame(const Vec3& v_neo, const Vec3& v_earth);
/// Frame from the nominal heliocentric velocities of both bodies at t_moid.
BPlaneFrame build_frame(const OrbitalElements& neo, const OrbitalElements& earth, double t_moid);

/// local_basis columns are the asteroid's radial / transverse / normal axes at the MOID.
BPlaneCoordinates project(const BPlaneFrame& frame, const Vec3& local_deviation,
                          const Mat3& local_basis, double mu_planet = kMuEarth);
BPlaneCoordinates project_deviation(const BPlaneFrame& frame, const DeviationResult& deviation,
                                    const Mat3& local_basis, double mu_planet = kMuEarth);

/// Periapsis of a hyperbola with impact parameter b and excess speed v_inf.
double hyperbolic_periapsis(double b, double v_inf, double mu_planet);

/// Maximises the (xi, zeta) part of the deviation instead of its full norm.
impulse::OptimalDirection bstar_optimal_direction(const TransitionMatrix& tm,
                                                  const BPlaneFrame& frame,
                                                  const Mat3& local_basis);

/// Asteroid orbit re-phased so that it meets the Earth: argp and M at epoch are
/// changed, every other element is kept.
struct ZeroMoidShift {
    OrbitalElements elements;
    double t_moid = 0.0;      // epoch at which both bodies coincide [MJD2000 d]
    double theta_moid = 0.0;  // asteroid true anomaly there
    double d_argp = 0.0;      // applied change [rad], in (-pi, pi]
};

/// Picks the first two Earth crossings of the asteroid's orbital plane after
/// t_ref and, among the points of the asteroid orbit at the Earth's distance,
/// the one needing the smallest change of argp. Throws InvalidInput when the
/// orbit never reaches the Earth's distance at those crossings.
ZeroMoidShift zero_moid_shift(const OrbitalElements& neo, double t_ref);

/// Everything needed to look at the encounter of a (shifted) asteroid.
struct Encounter {
    OrbitalElements neo;
    double t_moid = 0.0;
    double theta_moid = 0.0;
    BPlaneFrame frame;
    Mat3 local_basis = Mat3::Identity();
};

Encounter make_encounter(const OrbitalElements& neo, double t_moid);

}  // namespace deflekt::bplane
