#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "deflekt/catalog_io.hpp"
#include "deflekt/errors.hpp"
#include "deflekt/mission_design.hpp"
#include "oracles.hpp"

using namespace deflekt;
using namespace deflekt::mission;

namespace {

const std::vector<catalog::AsteroidRecord>& records() {
    static const auto r = catalog::load_builtin_catalog();
    return r;
}

constexpr double kC = 9.81e-3 * 315.0;

}  // namespace

TEST(Mass, ClosedFormValues) {
    const MassBudget zero = mass_at_impact(0.0);
    EXPECT_NEAR(zero.m_at_impact, 1000.0 * std::exp(2.5 / kC), 1e-12 * zero.m_at_impact);
    EXPECT_NEAR(zero.launch_mass, zero.m_at_impact, 1e-9);
    EXPECT_TRUE(zero.feasible);
    const MassBudget mid = mass_at_impact(1.2);
    EXPECT_NEAR(mid.launch_mass, 1000.0 * std::exp(1.3 / kC), 1e-12 * mid.launch_mass);
    EXPECT_NEAR(mid.m_at_impact, mid.launch_mass * std::exp(-1.2 / kC), 1e-12 * mid.m_at_impact);
    const MassBudget high = mass_at_impact(3.0);
    EXPECT_DOUBLE_EQ(high.launch_mass, 1000.0);
    EXPECT_NEAR(high.m_at_impact, 1000.0 * std::exp(-3.0 / kC), 1e-12 * high.m_at_impact);
    EXPECT_FALSE(mass_at_impact(10.0).feasible);
    EXPECT_THROW(mass_at_impact(-1.0), InvalidInput);
}

TEST(Mass, FeasibilityBoundary) {
    const double boundary = kC * std::log(11.0 / 3.0);
    EXPECT_NEAR(boundary, 4.014, 1e-3);
    EXPECT_TRUE(mass_at_impact(boundary - 1e-9).feasible);
    EXPECT_FALSE(mass_at_impact(boundary + 1e-9).feasible);
}

TEST(Mass, MonotoneInDeltaV) {
    double prev = INFINITY;
    for (double dv = 0.0; dv < 8.0; dv += 0.01) {
        const double m = mass_at_impact(dv).m_at_impact;
        EXPECT_LE(m, prev);
        EXPECT_LE(m, mass_at_impact(dv).launch_mass);
        prev = m;
    }
}

TEST(Impact, MomentumTransfer) {
    EXPECT_EQ(impact_deltav(Vec3(10, 0, 0), 0.0, 4.6e10, 1.0).norm(), 0.0);
    const Vec3 d = impact_deltav(Vec3(6, 8, 0), 1000.0, 4.6e10, 1.0);
    EXPECT_NEAR(d.norm(), 2.1739e-7, 1e-11);
    EXPECT_LT((impact_deltav(Vec3(6, 8, 0), 1000.0, 4.6e10, 2.0) - 2.0 * d).norm(), 1e-20);
    EXPECT_THROW(impact_deltav(Vec3(1, 0, 0), 1.0, 0.0, 1.0), InvalidInput);
}

TEST(Flyby, TurnAngleAndSpeedBound) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 500; ++k) {
        const double v_inf = 1.0 + 10.0 * u(rng);
        const double rp = (1.05 + 5.0 * u(rng)) * kVenusRadius;
        const double turn = flyby_turn_angle(v_inf, rp, kMuVenus);
        const double e = 1.0 + rp * v_inf * v_inf / kMuVenus;
        EXPECT_NEAR(std::sin(turn / 2), 1.0 / e, 1e-14);
        const Vec3 vin = v_inf * oracle::random_unit(rng);
        const Vec3 vp = 35.0 * oracle::random_unit(rng);
        const Vec3 vout = flyby_outgoing(vin, vp, turn, kTwoPi * u(rng));
        EXPECT_NEAR(vout.norm(), v_inf, 1e-12 * v_inf);
        EXPECT_NEAR(std::acos(std::clamp(vin.dot(vout) / (v_inf * v_inf), -1.0, 1.0)), turn, 1e-7);
        EXPECT_LE(std::abs((vp + vout).norm() - (vp + vin).norm()), 2.0 * v_inf + 1e-12);
    }
    EXPECT_THROW(flyby_turn_angle(0.0, kVenusRadius, kMuVenus), InvalidInput);
}

TEST(Flyby, ZeroTurnKeepsDirection) {
    const Vec3 vin(3, 1, 0.5);
    EXPECT_LT((flyby_outgoing(vin, Vec3(0, 35, 0), 0.0, 1.0) - vin).norm(), 1e-14);
}

TEST(DirectMission, ConsistencyWithRawPieces) {
    const Target tg = make_target(catalog::find_record(records(), 7));
    int feasible = 0;
    for (double t0 = 3700.0; t0 < 5400.0; t0 += 37.0) {
        for (double tof = 60.0; tof < 600.0; tof += 71.0) {
            const MissionSolution s = evaluate_direct_mission(t0, tof, tg, 6000.0);
            EXPECT_DOUBLE_EQ(s.t_d, t0 + tof);
            EXPECT_DOUBLE_EQ(s.t_w, 6000.0 - t0);
            EXPECT_LE(s.m_at_impact, s.launch_mass);
            const double j = (tg.moid.delta_r_vec + s.deviation_vec).squaredNorm();
            EXPECT_NEAR(s.objective, j, 1e-9 * j);
            EXPECT_LE(s.moid_change, s.deviation + 1e-9);
            EXPECT_NEAR(s.moid_before, tg.moid.distance, 1e-6);
            // Frame rotation of the relative velocity preserves its length.
            const auto neo = orbit::elements_to_state(tg.elements, s.t_d);
            const auto earth = orbit::elements_to_state(orbit::planet_ephemeris(orbit::Planet::Earth, t0), t0);
            const auto arc = lambert_arc(earth.position, neo.position, seconds_from_days(tof), kMuSun);
            EXPECT_NEAR(s.rel_velocity.norm(), (arc.v2 - neo.velocity).norm(), 1e-12 * s.rel_velocity.norm());
            EXPECT_NEAR(s.dv_tot, (arc.v1 - earth.velocity).norm(), 1e-12);
            if (s.feasible) {
                ++feasible;
                const Vec3 imp = s.m_at_impact / tg.mass * s.rel_velocity;
                EXPECT_LT((s.impulse - imp).norm(), 1e-12 * imp.norm());
            } else {
                EXPECT_EQ(s.deviation, 0.0);
            }
        }
    }
    EXPECT_GT(feasible, 0);
}

TEST(DirectMission, DeviationLinearInGamma) {
    const Target tg = make_target(catalog::find_record(records(), 13));
    MissionConfig twice;
    twice.gamma = 2.0;
    const MissionSolution a = evaluate_direct_mission(4872.0, 466.0, tg, 5935.0);
    const MissionSolution b = evaluate_direct_mission(4872.0, 466.0, tg, 5935.0, twice);
    ASSERT_TRUE(a.feasible);
    EXPECT_NEAR(b.deviation, 2.0 * a.deviation, 1e-12 * b.deviation);
}

TEST(DirectMission, Preconditions) {
    const Target tg = make_target(catalog::find_record(records(), 7));
    EXPECT_THROW(evaluate_direct_mission(4000.0, 0.0, tg, 6000.0), InvalidInput);
    EXPECT_THROW(evaluate_direct_mission(4000.0, 300.0, tg, 4200.0), InvalidInput);
    EXPECT_THROW(make_target(tg.elements, 0.0), InvalidInput);
}

TEST(Target, ListedMoidKeepsDirection) {
    const auto& rec = catalog::find_record(records(), 15);
    const Target computed = make_target(rec);
    const Target listed = make_target(rec, MoidSource::Listed);
    EXPECT_NEAR(listed.moid.distance, *rec.moid_km, 1e-9);
    EXPECT_NEAR(listed.moid.delta_r_vec.norm(), *rec.moid_km, 1e-6);
    EXPECT_LT((listed.moid.delta_r_vec.normalized() - computed.moid.delta_r_vec.normalized()).norm(), 1e-12);
    catalog::AsteroidRecord bare = rec;
    bare.moid_km.reset();
    EXPECT_THROW(make_target(bare, MoidSource::Listed), InvalidInput);
}

TEST(SwingbyMission, LegsAndBookkeeping) {
    const Target tg = make_target(catalog::find_record(records(), 26));
    SwingbyParams p;
    p.tof1 = 150.0;
    p.tof2 = 400.0;
    p.plane_angle = 0.3;
    p.rp_ratio = 2.0;
    p.dsm_fraction = 0.4;
    const MissionSolution s = evaluate_swingby_mission(4000.0, p, tg, 6000.0);
    EXPECT_EQ(s.route, Route::VenusSwingby);
    EXPECT_DOUBLE_EQ(s.tof, 550.0);
    EXPECT_NEAR(s.dv_tot, s.v_inf_launch + s.dsm, 1e-12);
    EXPECT_LE(s.moid_change, s.deviation + 1e-9);
    ASSERT_TRUE(s.swingby.has_value());
    p.rp_ratio = 1.0;
    EXPECT_THROW(evaluate_swingby_mission(4000.0, p, tg, 6000.0), InvalidInput);
    p.rp_ratio = 2.0;
    p.dsm_fraction = 1.0;
    EXPECT_THROW(evaluate_swingby_mission(4000.0, p, tg, 6000.0), InvalidInput);
}

TEST(SwingbyMission, DegenerateFlybyMatchesPatchedArcs) {
    // With the arrival leg aimed where the coasting spacecraft would be anyway,
    // the DSM vanishes.
    const Target tg = make_target(catalog::find_record(records(), 26));
    const double t0 = 4000.0, tof1 = 150.0;
    const auto earth = orbit::elements_to_state(orbit::planet_ephemeris(orbit::Planet::Earth, t0), t0);
    const auto venus = orbit::elements_to_state(orbit::planet_ephemeris(orbit::Planet::Venus, t0 + tof1), t0 + tof1);
    const auto leg = lambert_arc(earth.position, venus.position, seconds_from_days(tof1), kMuSun);
    const Vec3 v_inf = leg.v2 - venus.velocity;
    // The largest periapsis makes the turn nearly zero.
    const double turn = flyby_turn_angle(v_inf.norm(), 1e11, kMuVenus);
    EXPECT_LT(turn, 1e-6);
    const Vec3 out = venus.velocity + flyby_outgoing(v_inf, venus.velocity, turn, 0.0);
    EXPECT_LT((out - leg.v2).norm(), 1e-5);
}
