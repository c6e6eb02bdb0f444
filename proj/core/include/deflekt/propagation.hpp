// Numerical reference propagators: Sun-only and Sun + Earth point masses.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "deflekt/catalog_io.hpp"
#include "deflekt/deviation_model.hpp"
#include "deflekt/errors.hpp"

namespace deflekt::propagation {

using deviation::ImpulseVector;
using orbit::CartesianState;
using orbit::OrbitalElements;

/// Embedded Runge-Kutta-Fehlberg 7(8) with step control. With include_earth the
/// Earth (analytic ephemeris) perturbs the heliocentric motion, indirect term included.
struct PropagationConfig {
    double rel_tol = 1e-12;
    double abs_tol = 1e-9;       // km (and km/s)
    double max_step_days = 1.0;
    bool include_earth = false;
    double mu_sun = kMuSun;
    double mu_earth = kMuEarth;
    double collision_radius = kEarthRadius;  // km; three-body runs stop inside it

    static PropagationConfig two_body() { return {}; }
    static PropagationConfig three_body() {
        PropagationConfig c;
        c.include_earth = true;
        return c;
    }
    void validate() const;
};

/// The trajectory came within collision_radius of the Earth's centre.
class CollisionDetected : public NumericalError {
public:
    CollisionDetected(double t, double distance);
    double t;         // MJD2000 d
    double distance;  // km
};

/// State at t1 [MJD2000 d] starting from state at t0. Throws NumericalError on
/// step-size underflow and CollisionDetected on entering the Earth.
CartesianState propagate(const CartesianState& state, double t0, double t1,
                         const PropagationConfig& config = {});

/// States at each of the ascending epochs in `times` (all >= t0).
std::vector<CartesianState> propagate_to(const CartesianState& state, double t0,
                                         std::span<const double> times,
                                         const PropagationConfig& config = {});

struct DeviationError {
    double e_r = 0.0;
    Vec3 propagated = Vec3::Zero();  // kicked - nominal at t_moid, nominal RTN frame [km]
    Vec3 estimated = Vec3::Zero();   // T dv
};

/// Relative error of the linear estimate against two-body propagation of the
/// kicked and nominal orbits (integrated together so both see the same steps).
/// Throws InvalidInput when the propagated deviation vanishes.
DeviationError deviation_error(const OrbitalElements& el, const ImpulseVector& dv, double t_d,
                               double t_moid, const PropagationConfig& config = {});

struct ThreeBodyResult {
    double min_distance = 0.0;  // km
    double t_min = 0.0;         // MJD2000 d
    double t_offset = 0.0;      // t_min - t_moid [d]
    bool collided = false;      // min_distance is the point the trajectory entered the Earth
};

/// Minimum Earth distance over [t_d, t_moid + 0.1 period]: 1-day samples, then
/// 0.01-day samples around the best one, then golden-section refinement.
ThreeBodyResult closest_approach(const CartesianState& kicked_at_td, double t_d, double t_moid,
                                 double period_days,
                                 const PropagationConfig& config = PropagationConfig::three_body());

/// State at t_d on the Sun + Earth trajectory through the two-body state of `el`
/// at the last epoch, at least two days before t_moid, that is 0.01 AU or more from
/// the Earth (integrated backwards). Over long arcs the Earth's pull moves a
/// two-body impact orbit off the Earth; this keeps the nominal an impact.
/// Returns the two-body state when t_d is past that epoch or without the Earth.
CartesianState impact_nominal(const OrbitalElements& el, double t_d, double t_moid,
                              const PropagationConfig& config = PropagationConfig::three_body());

struct CatalogErrorRow {
    int id = 0;
    std::string name;
    double e = 0.0;
    double max_e_r = 0.0;
    double dt_at_max = 0.0;  // days
};

/// Largest e_r over dt in (0, dt_max] (uniform grid) with the optimal impulse
/// direction, targeting the first MOID crossing after epoch + dt_max.
std::vector<CatalogErrorRow> max_error_catalog_sweep(std::span<const catalog::AsteroidRecord> catalog,
                                                     double dt_max_days = 15.0 * kDaysPerJulianYear,
                                                     double dv_mag = 2e-3, int grid_points = 60,
                                                     const PropagationConfig& config = {});

}  // namespace deflekt::propagation
