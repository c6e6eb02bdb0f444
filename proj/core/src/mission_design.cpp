#include "deflekt/mission_design.hpp"

#include <cmath>
#include <string>

#include "deflekt/errors.hpp"

namespace deflekt::mission {

void MissionConfig::validate() const {
    for (double v : {isp, g0, gamma, m0_base, v_escape, structure_fraction, tank_fraction}) {
        if (!(v > 0.0)) throw InvalidInput("MissionConfig: parameters must be positive");
    }
}

MassBudget mass_at_impact(double dv_tot, const MissionConfig& config) {
    config.validate();
    if (!(dv_tot >= 0.0)) throw InvalidInput("mass_at_impact: dv_tot must be non-negative");
    const double c = config.exhaust_velocity();
    MassBudget out;
    out.launch_mass = dv_tot < config.v_escape
                          ? config.m0_base * std::exp((config.v_escape - dv_tot) / c)
                          : config.m0_base;
    const double ratio = std::exp(-dv_tot / c);
    out.m_at_impact = out.launch_mass * ratio;
    out.margin = (1.0 + config.tank_fraction) * ratio - (config.structure_fraction + config.tank_fraction);
    out.feasible = out.margin > 0.0;
    return out;
}

Vec3 impact_deltav(const Vec3& dv_rel, double m_s, double m_a, double gamma) {
    if (!(m_a > 0.0)) throw InvalidInput("impact_deltav: asteroid mass must be positive");
    return gamma * (m_s / m_a) * dv_rel;
}

double flyby_turn_angle(double v_inf, double rp, double mu) {
    if (!(v_inf > 0.0) || !(rp > 0.0)) throw InvalidInput("flyby_turn_angle: bad flyby geometry");
    return 2.0 * std::asin(1.0 / (1.0 + rp * v_inf * v_inf / mu));
}

Vec3 flyby_outgoing(const Vec3& v_inf_in, const Vec3& v_planet, double turn_angle, double plane_angle) {
    const double v = v_inf_in.norm();
    const Vec3 i = v_inf_in / v;
    Vec3 j = i.cross(v_planet);
    if (j.norm() < 1e-12 * v_planet.norm()) j = i.unitOrthogonal();
    j.normalize();
    const Vec3 k = i.cross(j);
    return v * (std::cos(turn_angle) * i +
                std::sin(turn_angle) * (std::cos(plane_angle) * j + std::sin(plane_angle) * k));
}

Target make_target(const OrbitalElements& elements, double mass, int id, std::string name) {
    elements.validate();
    if (!(mass > 0.0)) throw InvalidInput("make_target: mass must be positive");
    Target t;
    t.id = id;
    t.name = std::move(name);
    t.elements = elements;
    t.mass = mass;
    t.moid = orbit::compute_moid(elements, orbit::planet_ephemeris(orbit::Planet::Earth, 0.0));
    return t;
}

Target make_target(const catalog::AsteroidRecord& record, MoidSource source) {
    Target t = make_target(record.elements, record.mass_kg, record.id, record.name);
    if (source == MoidSource::Listed) {
        if (!record.moid_km || !(*record.moid_km > 0.0)) {
            throw InvalidInput("make_target: record " + std::to_string(record.id) + " has no listed MOID");
        }
        const double k = *record.moid_km / t.moid.distance;
        t.moid.distance = *record.moid_km;
        t.moid.delta_r_vec *= k;
        t.moid.delta_r_cartesian *= k;
    }
    return t;
}

std::string_view route_name(Route route) {
    return route == Route::Direct ? "direct" : "venus_swingby";
}

namespace {

orbit::CartesianState body_state(orbit::Planet planet, double t) {
    return orbit::elements_to_state(orbit::planet_ephemeris(planet, t), t);
}

// Impact, deflection and bookkeeping shared by both routes.
void finish(MissionSolution& sol, const Vec3& v_sc_arrival, const orbit::CartesianState& neo_at_td,
            const Target& target, const MissionConfig& config) {
    const Mat3 tnh = orbit::tnh_basis(neo_at_td);
    sol.rel_velocity = tnh.transpose() * (v_sc_arrival - neo_at_td.velocity);
    const MassBudget mass = mass_at_impact(sol.dv_tot, config);
    sol.launch_mass = mass.launch_mass;
    sol.m_at_impact = mass.m_at_impact;
    sol.mass_margin = mass.margin;
    sol.feasible = mass.feasible;
    const double effective_mass = mass.feasible ? mass.m_at_impact : 0.0;
    sol.impulse = impact_deltav(sol.rel_velocity, effective_mass, target.mass, config.gamma);

    const OrbitalElements& el = target.elements;
    const auto tm = deviation::transition_matrix(el, orbit::true_anomaly_at(el, sol.t_d), sol.t_d,
                                                 target.moid.theta_moid, sol.t_moid);
    sol.deviation_vec = tm.T * sol.impulse;
    sol.deviation = sol.deviation_vec.norm();
    sol.moid_before = target.moid.delta_r_vec.norm();
    const Vec3 after = target.moid.delta_r_vec + sol.deviation_vec;
    sol.objective = after.squaredNorm();
    sol.moid_after = after.norm();
    sol.moid_change = sol.moid_after - sol.moid_before;
    sol.t_w = sol.t_moid - sol.t0;
}

}  // namespace

MissionSolution evaluate_direct_mission(double t0, double tof, const Target& target, double t_moid,
                                        const MissionConfig& config) {
    if (!(tof > 0.0)) throw InvalidInput("evaluate_direct_mission: tof must be positive");
    if (!(t0 + tof < t_moid)) throw InvalidInput("evaluate_direct_mission: impact after the MOID crossing");
    MissionSolution sol;
    sol.route = Route::Direct;
    sol.t0 = t0;
    sol.tof = tof;
    sol.t_d = t0 + tof;
    sol.t_moid = t_moid;

    const orbit::CartesianState earth = body_state(orbit::Planet::Earth, t0);
    const orbit::CartesianState neo = orbit::elements_to_state(target.elements, sol.t_d);
    const LambertSolution arc =
        lambert_arc(earth.position, neo.position, seconds_from_days(tof), kMuSun);
    sol.v_inf_launch = (arc.v1 - earth.velocity).norm();
    sol.dv_tot = sol.v_inf_launch;
    finish(sol, arc.v2, neo, target, config);
    return sol;
}

MissionSolution evaluate_swingby_mission(double t0, const SwingbyParams& p, const Target& target,
                                         double t_moid, const MissionConfig& config) {
    if (!(p.tof1 > 0.0) || !(p.tof2 > 0.0)) throw InvalidInput("evaluate_swingby_mission: legs must be positive");
    if (!(p.rp_ratio >= 1.05)) throw InvalidInput("evaluate_swingby_mission: flyby periapsis below 1.05 Venus radii");
    if (!(p.dsm_fraction > 0.0 && p.dsm_fraction < 1.0)) {
        throw InvalidInput("evaluate_swingby_mission: DSM fraction must lie in (0, 1)");
    }
    MissionSolution sol;
    sol.route = Route::VenusSwingby;
    sol.t0 = t0;
    sol.tof = p.tof1 + p.tof2;
    sol.t_d = t0 + sol.tof;
    sol.t_moid = t_moid;
    sol.swingby = p;
    if (!(sol.t_d < t_moid)) throw InvalidInput("evaluate_swingby_mission: impact after the MOID crossing");

    const double t_venus = t0 + p.tof1;
    const orbit::CartesianState earth = body_state(orbit::Planet::Earth, t0);
    const orbit::CartesianState venus = body_state(orbit::Planet::Venus, t_venus);
    const LambertSolution leg1 =
        lambert_arc(earth.position, venus.position, seconds_from_days(p.tof1), kMuSun);
    sol.v_inf_launch = (leg1.v1 - earth.velocity).norm();

    const Vec3 v_inf_in = leg1.v2 - venus.velocity;
    const double turn = flyby_turn_angle(v_inf_in.norm(), p.rp_ratio * kVenusRadius, kMuVenus);
    const Vec3 v_out = venus.velocity + flyby_outgoing(v_inf_in, venus.velocity, turn, p.plane_angle);

    const double coast = p.dsm_fraction * p.tof2;
    const orbit::CartesianState at_dsm =
        orbit::kepler_propagate({venus.position, v_out}, seconds_from_days(coast), kMuSun);
    const orbit::CartesianState neo = orbit::elements_to_state(target.elements, sol.t_d);
    const LambertSolution leg2 =
        lambert_arc(at_dsm.position, neo.position, seconds_from_days(p.tof2 - coast), kMuSun);
    sol.dsm = (leg2.v1 - at_dsm.velocity).norm();
    sol.dv_tot = sol.v_inf_launch + sol.dsm;
    finish(sol, leg2.v2, neo, target, config);
    return sol;
}

}  // namespace deflekt::mission
