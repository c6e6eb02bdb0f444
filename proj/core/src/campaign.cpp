#include "deflekt/campaign.hpp"

#include <cmath>
#include <string>

#include "deflekt/errors.hpp"

namespace deflekt::campaign {

Scenario parse_scenario(std::string_view text) {
    if (text == "5y") return Scenario::FiveYears;
    if (text == "10y") return Scenario::TenYears;
    if (text == "15y") return Scenario::FifteenYears;
    throw InvalidInput("unknown scenario '" + std::string(text) + "' (expected 5y, 10y or 15y)");
}

std::string_view scenario_name(Scenario s) {
    switch (s) {
        case Scenario::FiveYears: return "5y";
        case Scenario::TenYears: return "10y";
        case Scenario::FifteenYears: return "15y";
    }
    return "?";
}

double latest_launch(Scenario s) {
    switch (s) {
        case Scenario::FiveYears: return 5475.0;
        case Scenario::TenYears: return 7300.0;
        case Scenario::FifteenYears: return 9125.0;
    }
    return 0.0;
}

double target_moid_epoch(const Target& target, Scenario s) {
    const double lo = latest_launch(s);
    const auto crossings = orbit::moid_crossing_times(target.elements, target.moid.theta_moid, lo,
                                                      lo + target.elements.period_days() + 1.0);
    return crossings.front();
}

search::SearchSpace mission_space(Scenario s, Route route) {
    search::SearchSpace space;
    const double hi = latest_launch(s);
    const int t0_cells = static_cast<int>(std::ceil((hi - kEarliestLaunch) / 150.0));
    if (route == Route::Direct) {
        space.lower = {kEarliestLaunch, 30.0};
        space.upper = {hi, 1500.0};
        space.splits = {t0_cells, 3};
    } else {
        space.lower = {kEarliestLaunch, 30.0, 30.0, -kPi, 1.05, 0.05};
        space.upper = {hi, 500.0, 1000.0, kPi, 10.0, 0.95};
        space.splits = {t0_cells, 1, 2, 1, 1, 1};
    }
    return space;
}

MissionSolution evaluate_decision(std::span<const double> x, const Target& target, double t_moid,
                                  Route route, const mission::MissionConfig& config) {
    if (route == Route::Direct) {
        if (x.size() != 2) throw InvalidInput("evaluate_decision: direct route takes (t0, tof)");
        return mission::evaluate_direct_mission(x[0], x[1], target, t_moid, config);
    }
    if (x.size() != 6) throw InvalidInput("evaluate_decision: swing-by route takes six variables");
    mission::SwingbyParams p;
    p.tof1 = x[1];
    p.tof2 = x[2];
    p.plane_angle = x[3];
    p.rp_ratio = x[4];
    p.dsm_fraction = x[5];
    return mission::evaluate_swingby_mission(x[0], p, target, t_moid, config);
}

search::Objective mission_objective(const Target& target, double t_moid, Route route,
                                    const mission::MissionConfig& config) {
    return [&target, t_moid, route, config](std::span<const double> x) {
        search::Evaluation ev;
        double tof = x[1];
        if (route == Route::VenusSwingby) tof += x[2];
        const double late = x[0] + tof - t_moid;
        if (late >= 0.0) {
            ev.violation = 1e3 + late;
            return ev;
        }
        try {
            const MissionSolution sol = evaluate_decision(x, target, t_moid, route, config);
            ev.feasible = sol.feasible;
            ev.value = sol.objective;
            ev.violation = sol.feasible ? 0.0 : -sol.mass_margin;
            ev.secondary = sol.t_w;
        } catch (const std::exception&) {
            ev.violation = 1e6;
        }
        return ev;
    };
}

namespace {

search::SearchOptions search_options(const CampaignOptions& o) {
    search::SearchOptions so;
    so.budget = o.budget;
    so.seed = o.seed;
    so.dedup_radius = {5.0, 5.0};
    return so;
}

}  // namespace

CampaignResult optimize_single(const Target& target, Scenario s, Route route, const CampaignOptions& options) {
    CampaignResult out;
    out.scenario = s;
    out.route = route;
    out.t_moid = target_moid_epoch(target, s);
    const auto objective = mission_objective(target, out.t_moid, route, options.mission);
    const auto res = search::optimize_single(mission_space(s, route), objective, search_options(options));
    for (const auto& c : res.optima) {
        out.optima.push_back(evaluate_decision(c.x, target, out.t_moid, route, options.mission));
    }
    out.evaluations = res.evaluations;
    return out;
}

CampaignResult optimize_pareto(const Target& target, Scenario s, Route route, const CampaignOptions& options) {
    CampaignResult out;
    out.scenario = s;
    out.route = route;
    out.t_moid = target_moid_epoch(target, s);
    const auto objective = mission_objective(target, out.t_moid, route, options.mission);
    const auto res = search::optimize_pareto(mission_space(s, route), objective, search_options(options));
    for (const auto& c : res.search.optima) {
        out.optima.push_back(evaluate_decision(c.x, target, out.t_moid, route, options.mission));
    }
    for (const auto& p : res.front) {
        out.pareto.push_back(evaluate_decision(p.x, target, out.t_moid, route, options.mission));
    }
    out.evaluations = res.search.evaluations;
    return out;
}

}  // namespace deflekt::campaign
