// Launch-window optimisation campaigns for one asteroid: direct or Venus
// swing-by route, single-objective or deviation / warning-time Pareto search.
#pragma once

#include <string_view>
#include <vector>

#include "deflekt/global_search.hpp"
#include "deflekt/mission_design.hpp"

namespace deflekt::campaign {

using mission::MissionSolution;
using mission::Route;
using mission::Target;

/// Latest launch date of the three warning-time scenarios.
enum class Scenario { FiveYears, TenYears, FifteenYears };

Scenario parse_scenario(std::string_view text);  // "5y", "10y", "15y"
std::string_view scenario_name(Scenario s);

inline constexpr double kEarliestLaunch = 3650.0;  // MJD2000 d
double latest_launch(Scenario s);                   // 5475, 7300 or 9125

/// First MOID crossing of the asteroid at or after the latest launch date.
double target_moid_epoch(const Target& target, Scenario s);

/// Direct: (t0, tof). Swing-by: (t0, tof1, tof2, plane angle, rp / R_venus, DSM fraction).
search::SearchSpace mission_space(Scenario s, Route route);

struct CampaignOptions {
    std::size_t budget = 100000;
    std::uint64_t seed = 1;
    mission::MissionConfig mission;
};

struct CampaignResult {
    Scenario scenario = Scenario::FiveYears;
    Route route = Route::Direct;
    double t_moid = 0.0;
    std::vector<MissionSolution> optima;  // distinct local optima, best first, all feasible
    std::vector<MissionSolution> pareto;  // Pareto runs only: decreasing warning time
    std::size_t evaluations = 0;
};

/// Objective used by the campaigns: value = |dr_moid + dr|^2, secondary = warning time.
search::Objective mission_objective(const Target& target, double t_moid, Route route,
                                    const mission::MissionConfig& config);

/// Re-evaluates a decision vector of mission_space(.., route).
MissionSolution evaluate_decision(std::span<const double> x, const Target& target, double t_moid,
                                  Route route, const mission::MissionConfig& config);

CampaignResult optimize_single(const Target& target, Scenario s, Route route, const CampaignOptions& options);
CampaignResult optimize_pareto(const Target& target, Scenario s, Route route, const CampaignOptions& options);

}  // namespace deflekt::campaign
