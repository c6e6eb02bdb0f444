#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "deflekt/campaign.hpp"
#include "deflekt/catalog_io.hpp"
#include "deflekt/errors.hpp"
#include "oracles.hpp"

using namespace deflekt;
using namespace deflekt::campaign;

namespace {

const Target& target(int id) {
    static const auto recs = catalog::load_builtin_catalog();
    static std::map<int, Target> cache;
    auto it = cache.find(id);
    if (it == cache.end()) it = cache.emplace(id, mission::make_target(catalog::find_record(recs, id))).first;
    return it->second;
}

CampaignOptions small(std::size_t budget) {
    CampaignOptions o;
    o.budget = budget;
    return o;
}

}  // namespace

TEST(Scenario, ParsingAndCaps) {
    EXPECT_EQ(parse_scenario("5y"), Scenario::FiveYears);
    EXPECT_EQ(parse_scenario("15y"), Scenario::FifteenYears);
    EXPECT_THROW(parse_scenario("20y"), InvalidInput);
    EXPECT_EQ(scenario_name(Scenario::TenYears), "10y");
    EXPECT_EQ(latest_launch(Scenario::FiveYears), 5475.0);
    EXPECT_EQ(latest_launch(Scenario::TenYears), 7300.0);
    EXPECT_EQ(latest_launch(Scenario::FifteenYears), 9125.0);
}

TEST(Scenario, TargetEpochIsFirstCrossingAfterCap) {
    for (int id : {7, 13, 15, 19}) {
        const Target& tg = target(id);
        for (Scenario s : {Scenario::FiveYears, Scenario::TenYears, Scenario::FifteenYears}) {
            const double t = target_moid_epoch(tg, s);
            EXPECT_GE(t, latest_launch(s));
            EXPECT_LT(t, latest_launch(s) + tg.elements.period_days());
            EXPECT_LT(std::abs(orbit::normalize_angle_signed(orbit::true_anomaly_at(tg.elements, t) - tg.moid.theta_moid)),
                      1e-9);
        }
    }
}

TEST(Space, Bounds) {
    const auto direct = mission_space(Scenario::TenYears, Route::Direct);
    ASSERT_EQ(direct.dimension(), 2u);
    EXPECT_EQ(direct.lower[0], kEarliestLaunch);
    EXPECT_EQ(direct.upper[0], 7300.0);
    const auto venus = mission_space(Scenario::FiveYears, Route::VenusSwingby);
    ASSERT_EQ(venus.dimension(), 6u);
    EXPECT_GE(venus.lower[4], 1.05);
    EXPECT_GT(venus.lower[5], 0.0);
    EXPECT_LT(venus.upper[5], 1.0);
    EXPECT_NO_THROW(venus.validate());
}

TEST(Campaign, SingleObjectiveRowsAreConsistent) {
    const Target& tg = target(13);
    const CampaignResult r = optimize_single(tg, Scenario::FiveYears, Route::Direct, small(3000));
    EXPECT_LE(r.evaluations, 3000u);
    ASSERT_FALSE(r.optima.empty());
    for (std::size_t k = 0; k < r.optima.size(); ++k) {
        const MissionSolution& s = r.optima[k];
        EXPECT_TRUE(s.feasible);
        EXPECT_LE(s.moid_change, s.deviation + 1e-9);
        EXPECT_LE(s.t0, latest_launch(Scenario::FiveYears));
        EXPECT_GE(s.t0, kEarliestLaunch);
        EXPECT_LT(s.t_d, r.t_moid);
        EXPECT_EQ(s.t_moid, r.t_moid);
        if (k > 0) EXPECT_GE(r.optima[k - 1].objective, s.objective);
        const std::vector<double> x{s.t0, s.tof};
        const MissionSolution again = evaluate_decision(x, tg, r.t_moid, Route::Direct, {});
        EXPECT_EQ(again.objective, s.objective);
    }
}

TEST(Campaign, ObjectiveReportsInfeasibility) {
    const Target& tg = target(13);
    const double t_moid = target_moid_epoch(tg, Scenario::FiveYears);
    const auto obj = mission_objective(tg, t_moid, Route::Direct, {});
    const std::vector<double> late{5400.0, 1400.0};
    const auto e = obj(late);
    EXPECT_FALSE(e.feasible);
    EXPECT_GT(e.violation, 0.0);
    const std::vector<double> ok{4872.0, 466.0};
    const auto f = obj(ok);
    EXPECT_TRUE(f.feasible);
    EXPECT_NEAR(f.secondary, t_moid - 4872.0, 1e-9);
}

TEST(Campaign, ParetoFrontIsNonDominated) {
    const Target& tg = target(7);
    const CampaignResult r = optimize_pareto(tg, Scenario::FiveYears, Route::Direct, small(10000));
    ASSERT_GE(r.pareto.size(), 2u);
    EXPECT_TRUE(oracle::mutually_non_dominated(r.pareto, [](const MissionSolution& s) { return s.objective; },
                                               [](const MissionSolution& s) { return s.t_w; }));
    for (std::size_t k = 1; k < r.pareto.size(); ++k) EXPECT_GE(r.pareto[k - 1].t_w, r.pareto[k].t_w);
    for (const auto& s : r.pareto) {
        EXPECT_TRUE(s.feasible);
        EXPECT_LE(s.moid_change, s.deviation + 1e-9);
    }
}

TEST(Campaign, SwingbyRouteRuns) {
    const Target& tg = target(26);
    const CampaignResult r = optimize_single(tg, Scenario::FiveYears, Route::VenusSwingby, small(3000));
    EXPECT_EQ(r.route, Route::VenusSwingby);
    for (const auto& s : r.optima) {
        EXPECT_TRUE(s.feasible);
        ASSERT_TRUE(s.swingby.has_value());
        EXPECT_NEAR(s.tof, s.swingby->tof1 + s.swingby->tof2, 1e-9);
    }
}

TEST(Campaign, Deterministic) {
    const Target& tg = target(19);
    const auto a = optimize_single(tg, Scenario::FiveYears, Route::Direct, small(2000));
    const auto b = optimize_single(tg, Scenario::FiveYears, Route::Direct, small(2000));
    ASSERT_EQ(a.optima.size(), b.optima.size());
    for (std::size_t k = 0; k < a.optima.size(); ++k) EXPECT_EQ(a.optima[k].objective, b.optima[k].objective);
}
