// Kinetic-impactor missions: transfer legs, spacecraft mass and the deflection they buy.
#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "deflekt/catalog_io.hpp"
#include "deflekt/deviation_model.hpp"
#include "deflekt/lambert.hpp"

namespace deflekt::mission {

using orbit::OrbitalElements;

struct MissionConfig {
    double isp = 315.0;              // s
    double g0 = 9.81e-3;             // km/s^2
    double gamma = 1.0;              // momentum enhancement
    double m0_base = 1000.0;         // kg
    double v_escape = 2.5;           // km/s delivered by the launcher
    double structure_fraction = 0.2;
    double tank_fraction = 0.1;

    double exhaust_velocity() const { return g0 * isp; }  // km/s
    void validate() const;
};

struct MassBudget {
    double launch_mass = 0.0;   // kg
    double m_at_impact = 0.0;   // kg
    double margin = 0.0;        // (1 + tank) e^{-dv/c} - (structure + tank); feasible iff > 0
    bool feasible = false;      // C_m
};

/// Launch mass grows as 1000 e^{(2.5 - dv)/c} when dv < 2.5 km/s (unused launcher
/// capability); the residual-mass constraint is 1.1 e^{-dv/c} - 0.3 > 0.
MassBudget mass_at_impact(double dv_tot, const MissionConfig& config = {});

/// Velocity change of the asteroid after a perfectly inelastic impact.
Vec3 impact_deltav(const Vec3& dv_rel, double m_s, double m_a, double gamma);

/// Turn angle of the v-infinity vector for a hyperbolic flyby with periapsis rp.
double flyby_turn_angle(double v_inf, double rp, double mu);
/// v_inf_in rotated by turn_angle; plane_angle picks the rotation plane around
/// v_inf_in, zero meaning the plane containing the planet velocity.
Vec3 flyby_outgoing(const Vec3& v_inf_in, const Vec3& v_planet, double turn_angle, double plane_angle);

/// Asteroid with its nominal MOID against the Earth orbit at t = 0.
struct Target {
    int id = 0;
    std::string name;
    OrbitalElements elements;
    double mass = 0.0;  // kg
    orbit::MoidResult moid;
};

/// Where the magnitude of the nominal MOID vector comes from. The direction is
/// always the computed one; Listed rescales it to the catalog's moid_km.
enum class MoidSource { Computed, Listed };

/// Listed requires the record to carry moid_km.
Target make_target(const catalog::AsteroidRecord& record, MoidSource source = MoidSource::Computed);
Target make_target(const OrbitalElements& elements, double mass, int id = 0, std::string name = {});

enum class Route { Direct, VenusSwingby };
std::string_view route_name(Route route);

/// Venus swing-by leg parameters.
struct SwingbyParams {
    double tof1 = 0.0;           // Earth -> Venus [d]
    double tof2 = 0.0;           // Venus -> asteroid [d]
    double plane_angle = 0.0;    // flyby plane orientation [rad]
    double rp_ratio = 1.05;      // flyby periapsis in Venus radii, >= 1.05
    double dsm_fraction = 0.5;   // deep-space manoeuvre epoch as a fraction of tof2, in (0, 1)
};

struct MissionSolution {
    Route route = Route::Direct;
    double t0 = 0.0;      // launch [MJD2000 d]
    double tof = 0.0;     // total flight time [d]
    double t_d = 0.0;     // impact
    double t_moid = 0.0;  // targeted MOID crossing
    double t_w = 0.0;     // warning time t_moid - t0 [d]
    double dv_tot = 0.0;  // km/s
    double v_inf_launch = 0.0;  // km/s
    double dsm = 0.0;           // km/s
    double launch_mass = 0.0;
    double m_at_impact = 0.0;
    double mass_margin = 0.0;
    bool feasible = false;      // residual-mass constraint
    Vec3 rel_velocity = Vec3::Zero();  // spacecraft - asteroid at impact, asteroid {t, n, h} [km/s]
    Vec3 impulse = Vec3::Zero();       // asteroid velocity change, {t, n, h} [km/s]
    Vec3 deviation_vec = Vec3::Zero();  // at the MOID, asteroid RTN [km]
    double deviation = 0.0;     // km
    double moid_before = 0.0;   // km
    double moid_after = 0.0;    // km
    double moid_change = 0.0;   // km
    double objective = 0.0;     // |dr_moid + dr|^2 [km^2]
    std::optional<SwingbyParams> swingby;
};

/// Lambert transfer Earth(t0) -> asteroid(t0 + tof). Requires t0 + tof < t_moid.
MissionSolution evaluate_direct_mission(double t0, double tof, const Target& target, double t_moid,
                                        const MissionConfig& config = {});

/// Earth -> Venus Lambert arc, unpowered flyby, coast, one deep-space manoeuvre,
/// Lambert arc to the asteroid.
MissionSolution evaluate_swingby_mission(double t0, const SwingbyParams& params, const Target& target,
                                         double t_moid, const MissionConfig& config = {});

}  // namespace deflekt::mission
