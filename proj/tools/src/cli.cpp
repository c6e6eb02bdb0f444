#include "deflekt_cli/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "deflekt/bplane.hpp"
#include "deflekt/campaign.hpp"
#include "deflekt/catalog_io.hpp"
#include "deflekt/impulse_optimizer.hpp"
#include "deflekt/parallel.hpp"
#include "deflekt/propagation.hpp"

namespace deflekt::cli {

namespace {

constexpr const char* kSchemaLine = "# deflekt-schema v1";
constexpr std::size_t kMinSingleBudget = 1000;
constexpr std::size_t kMinParetoBudget = 10000;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string cell_text(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return catalog::format_double(*d);
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    return std::get<std::string>(c);
}

void write_csv(std::ostream& os, const Table& t) {
    os << kSchemaLine << '\n';
    for (std::size_t k = 0; k < t.columns.size(); ++k) os << (k ? "," : "") << t.columns[k];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << cell_text(row[k]);
        os << '\n';
    }
}

void write_json(std::ostream& os, const std::string& command, const Table& t) {
    nlohmann::json j;
    j["schema"] = "deflekt-schema v1";
    j["command"] = command;
    j["columns"] = t.columns;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : t.rows) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& c : row) std::visit([&](const auto& v) { r.push_back(v); }, c);
        j["rows"].push_back(std::move(r));
    }
    os << j.dump(1) << '\n';
}

struct Common {
    std::string out_path;
    std::string catalog_file;
    bool json = false;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--out", c.out_path, "Write the table to this file instead of stdout");
    cmd->add_option("--catalog-file", c.catalog_file, "Asteroid catalog CSV (default: built-in table)");
    cmd->add_flag("--json", c.json, "Emit JSON instead of CSV");
}

std::vector<catalog::AsteroidRecord> load_catalog(const Common& c) {
    return c.catalog_file.empty() ? catalog::load_builtin_catalog() : catalog::read_catalog_file(c.catalog_file);
}

void emit(const Common& c, const std::string& command, const Table& t, std::ostream& out) {
    auto write = [&](std::ostream& os) { c.json ? write_json(os, command, t) : write_csv(os, t); };
    if (c.out_path.empty()) {
        write(out);
        return;
    }
    std::ofstream f(c.out_path);
    if (!f) throw UsageError("cannot open output file " + c.out_path);
    write(f);
}

const orbit::OrbitalElements& earth_at_j2000() {
    static const orbit::OrbitalElements earth = orbit::planet_ephemeris(orbit::Planet::Earth, 0.0);
    return earth;
}

double first_crossing_after(const orbit::OrbitalElements& el, double theta, double t) {
    return orbit::moid_crossing_times(el, theta, t, t + el.period_days() + 1.0).front();
}

// ---------------------------------------------------------------- sweep
struct SweepArgs {
    int id = 0;
    double dv_ms = 0.07;
    double dt_max = 3.0;
    int points_per_period = 1000;
    std::string strategy = "all";
    bool bplane = false;
    Common common;
};

Table run_sweep(const SweepArgs& a) {
    if (!(a.dv_ms > 0.0)) throw UsageError("--dv must be positive");
    const auto records = load_catalog(a.common);
    const auto& rec = catalog::find_record(records, a.id);
    const double dv = a.dv_ms * 1e-3;

    orbit::OrbitalElements el = rec.elements;
    double theta_moid = 0.0;
    bplane::Encounter enc;
    if (a.bplane) {
        const auto shift = bplane::zero_moid_shift(el, 0.0);
        el = shift.elements;
        enc = bplane::make_encounter(el, shift.t_moid);
        theta_moid = enc.theta_moid;
    } else {
        theta_moid = orbit::compute_moid(el, earth_at_j2000()).theta_moid;
    }
    const auto points = impulse::points_before_moid(el, theta_moid, a.dt_max, a.points_per_period);
    const auto rows = impulse::strategy_sweep(el, theta_moid, points, dv);

    const bool all = a.strategy == "all";
    Table t;
    t.columns = {"dt_over_T", "dvopt_t", "dvopt_n", "dvopt_h"};
    for (const char* s : {"opt", "t", "n", "h"}) {
        if (all || a.strategy == s) t.columns.push_back(std::string("dr_") + s);
    }
    if (a.bplane) {
        for (const char* s : {"opt", "t", "n", "h"}) {
            if (all || a.strategy == s) t.columns.push_back(std::string("bstar_") + s);
        }
        for (const char* c : {"bstar_max", "bopt_t", "bopt_n", "bopt_h", "xi", "zeta", "eta"}) t.columns.push_back(c);
    }

    t.rows.resize(rows.size());
    parallel_for(rows.size(), [&](std::size_t k) {
        const auto& r = rows[k];
        const Vec3 opt = r.optimal.unit_vector.vector();
        std::vector<Cell> row{r.dt_over_period, opt.x(), opt.y(), opt.z()};
        const std::pair<const char*, double> dr[] = {{"opt", r.dr_opt}, {"t", r.dr_t}, {"n", r.dr_n}, {"h", r.dr_h}};
        for (const auto& [name, value] : dr) {
            if (all || a.strategy == name) row.emplace_back(value);
        }
        if (a.bplane) {
            const auto tm = deviation::transition_matrix(el, r.theta_d, 0.0, theta_moid, r.dt_days);
            auto coords = [&](const Vec3& dir) {
                return bplane::project(enc.frame, tm.T * (dir * dv), enc.local_basis);
            };
            const std::pair<const char*, Vec3> dirs[] = {
                {"opt", opt}, {"t", Vec3::UnitX()}, {"n", Vec3::UnitY()}, {"h", Vec3::UnitZ()}};
            for (const auto& [name, dir] : dirs) {
                if (all || a.strategy == name) row.emplace_back(coords(dir).b_star);
            }
            const auto best = bplane::bstar_optimal_direction(tm, enc.frame, enc.local_basis);
            const Vec3 b = best.unit_vector.vector();
            row.emplace_back(coords(b).b_star);
            row.emplace_back(b.x());
            row.emplace_back(b.y());
            row.emplace_back(b.z());
            // Encounter coordinates follow the chosen strategy; "all" reports the tangential one.
            Vec3 chosen = Vec3::UnitX();
            for (const auto& [name, dir] : dirs) {
                if (!all && a.strategy == name) chosen = dir;
            }
            const auto c = coords(chosen);
            row.emplace_back(c.xi);
            row.emplace_back(c.zeta);
            row.emplace_back(c.eta);
        }
        t.rows[k] = std::move(row);
    });
    return t;
}

// ---------------------------------------------------------------- accuracy
struct AccuracyArgs {
    int id = 0;
    bool catalog = false;
    double dv_ms = 0.07;
    double dt_max = 3.0;
    int points_per_period = 1000;
    double dt_years = 15.0;
    int grid = 60;
    Common common;
};

Table run_accuracy(const AccuracyArgs& a) {
    if (!(a.dv_ms > 0.0)) throw UsageError("--dv must be positive");
    const auto records = load_catalog(a.common);
    const double dv = a.dv_ms * 1e-3;
    Table t;
    if (a.catalog) {
        const auto rows = propagation::max_error_catalog_sweep(records, a.dt_years * kDaysPerJulianYear, dv, a.grid);
        t.columns = {"id", "name", "e", "max_e_r", "dt_at_max_days"};
        for (const auto& r : rows) t.rows.push_back({static_cast<long long>(r.id), r.name, r.e, r.max_e_r, r.dt_at_max});
        return t;
    }
    if (a.id <= 0) throw UsageError("accuracy needs an asteroid id or --catalog");
    const auto& el = catalog::find_record(records, a.id).elements;
    const double theta_moid = orbit::compute_moid(el, earth_at_j2000()).theta_moid;
    const double period = el.period_days();
    const double t_moid = first_crossing_after(el, theta_moid, el.epoch + a.dt_max * period);
    const int n = static_cast<int>(std::floor(a.dt_max * a.points_per_period + 1e-9));
    if (n <= 0) throw UsageError("empty sweep");
    t.columns = {"dt_over_T", "e_r", "dr_propagated", "dr_estimated"};
    t.rows.resize(static_cast<std::size_t>(n));
    parallel_for(t.rows.size(), [&](std::size_t k) {
        const double dt = period * static_cast<double>(k + 1) / a.points_per_period;
        const double t_d = t_moid - dt;
        const auto tm = deviation::transition_matrix(el, orbit::true_anomaly_at(el, t_d), t_d,
                                                     orbit::true_anomaly_at(el, t_moid), t_moid);
        const auto dir = impulse::optimal_direction(tm).unit_vector * dv;
        const auto res = propagation::deviation_error(el, dir, t_d, t_moid);
        t.rows[k] = {dt / period, res.e_r, res.propagated.norm(), res.estimated.norm()};
    });
    return t;
}

// ---------------------------------------------------------------- optimize
struct OptimizeArgs {
    int id = 0;
    std::string scenario = "5y";
    std::string route = "direct";
    std::string mode = "single";
    std::string moid = "computed";
    std::size_t budget = 100000;
    std::uint64_t seed = 1;
    std::size_t limit = 20;
    Common common;
};

Table run_optimize(const OptimizeArgs& a) {
    const bool pareto = a.mode == "pareto";
    const std::size_t min_budget = pareto ? kMinParetoBudget : kMinSingleBudget;
    if (a.budget < min_budget) {
        throw UsageError("--budget must be at least " + std::to_string(min_budget) + " for " + a.mode + " mode");
    }
    const auto records = load_catalog(a.common);
    const auto target = mission::make_target(
        catalog::find_record(records, a.id),
        a.moid == "listed" ? mission::MoidSource::Listed : mission::MoidSource::Computed);
    const auto scenario = campaign::parse_scenario(a.scenario);
    const auto route = a.route == "venus" ? mission::Route::VenusSwingby : mission::Route::Direct;
    campaign::CampaignOptions opts;
    opts.budget = a.budget;
    opts.seed = a.seed;
    const auto result = pareto ? campaign::optimize_pareto(target, scenario, route, opts)
                               : campaign::optimize_single(target, scenario, route, opts);

    Table t;
    t.columns = {"id", "t0", "tof", "t_moid", "t_w", "m_impact", "dvt", "dvn", "dvh", "dev_km", "moid_change_km"};
    const auto& sols = pareto ? result.pareto : result.optima;
    const std::size_t n = pareto ? sols.size() : std::min(sols.size(), a.limit);
    for (std::size_t k = 0; k < n; ++k) {
        const auto& s = sols[k];
        t.rows.push_back({static_cast<long long>(a.id), s.t0, s.tof, s.t_moid, s.t_w, s.m_at_impact,
                          s.rel_velocity.x(), s.rel_velocity.y(), s.rel_velocity.z(), s.deviation,
                          s.moid_change});
    }
    return t;
}

// ---------------------------------------------------------------- threebody
struct ThreeBodyArgs {
    int id = 0;
    double dv_ms = 2.0;
    std::string strategy = "dr";
    double dt_max = 2.0;
    int points = 40;
    Common common;
};

Table run_threebody(const ThreeBodyArgs& a) {
    if (!(a.dv_ms > 0.0)) throw UsageError("--dv must be positive");
    if (a.points <= 0) throw UsageError("--points must be positive");
    const auto records = load_catalog(a.common);
    const auto shift = bplane::zero_moid_shift(catalog::find_record(records, a.id).elements, 0.0);
    const auto& el = shift.elements;
    const auto enc = bplane::make_encounter(el, shift.t_moid);
    const double period = el.period_days();
    const double dv = a.dv_ms * 1e-3;

    Table t;
    t.columns = {"dt_over_T", "dr_2body", "bplane_projection", "dr_min_3b", "t_offset_days", "eta_km", "collided"};
    t.rows.resize(static_cast<std::size_t>(a.points));
    parallel_for(t.rows.size(), [&](std::size_t k) {
        const double dt = a.dt_max * period * static_cast<double>(k + 1) / a.points;
        const double t_d = shift.t_moid - dt;
        const auto tm = deviation::transition_matrix(el, orbit::true_anomaly_at(el, t_d), t_d, enc.theta_moid,
                                                     shift.t_moid);
        const auto dir = a.strategy == "bstar" ? bplane::bstar_optimal_direction(tm, enc.frame, enc.local_basis)
                                               : impulse::optimal_direction(tm);
        const Vec3 kick = dir.unit_vector.vector() * dv;
        const Vec3 dr = tm.T * kick;
        const auto proj = bplane::project(enc.frame, dr, enc.local_basis);
        orbit::CartesianState s = propagation::impact_nominal(el, t_d, shift.t_moid);
        s.velocity += orbit::tnh_basis(s) * kick;
        const auto res = propagation::closest_approach(s, t_d, shift.t_moid, period);
        t.rows[k] = {dt / period, dr.norm(), proj.b_star, res.min_distance, res.t_offset, proj.eta,
                     static_cast<long long>(res.collided)};
    });
    return t;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Optimal impulsive deflection of near-Earth asteroids", "deflekt"};
    app.require_subcommand(1);

    SweepArgs sweep;
    auto* c_sweep = app.add_subcommand("sweep", "Deviation vs time-to-impact for the impulse strategies");
    c_sweep->add_option("id", sweep.id, "Asteroid id")->required();
    c_sweep->add_option("--dv", sweep.dv_ms, "Impulse magnitude [m/s]");
    c_sweep->add_option("--dt-max", sweep.dt_max, "Largest time-to-impact [orbital periods]");
    c_sweep->add_option("--points-per-period", sweep.points_per_period, "Grid density")->check(CLI::PositiveNumber);
    c_sweep->add_option("--strategy", sweep.strategy, "opt, t, n, h or all")
        ->check(CLI::IsMember({"opt", "t", "n", "h", "all"}));
    c_sweep->add_flag("--bplane", sweep.bplane, "Re-phase the asteroid onto the Earth and add b-plane columns");
    add_common(c_sweep, sweep.common);

    AccuracyArgs acc;
    auto* c_acc = app.add_subcommand("accuracy", "Linear model vs numerical propagation");
    c_acc->add_option("id", acc.id, "Asteroid id");
    c_acc->add_flag("--catalog", acc.catalog, "Maximum error for every catalog asteroid");
    c_acc->add_option("--dv", acc.dv_ms, "Impulse magnitude [m/s]");
    c_acc->add_option("--dt-max", acc.dt_max, "Largest time-to-impact [orbital periods]");
    c_acc->add_option("--points-per-period", acc.points_per_period, "Grid density")->check(CLI::PositiveNumber);
    c_acc->add_option("--dt-years", acc.dt_years, "Catalog mode: largest time-to-impact [years]");
    c_acc->add_option("--grid", acc.grid, "Catalog mode: time-to-impact samples")->check(CLI::PositiveNumber);
    add_common(c_acc, acc.common);

    OptimizeArgs opt;
    auto* c_opt = app.add_subcommand("optimize", "Search launch opportunities for a kinetic impactor");
    c_opt->add_option("id", opt.id, "Asteroid id")->required();
    c_opt->add_option("--scenario", opt.scenario, "Latest launch: 5y, 10y or 15y")
        ->check(CLI::IsMember({"5y", "10y", "15y"}));
    c_opt->add_option("--route", opt.route, "direct or venus")->check(CLI::IsMember({"direct", "venus"}));
    c_opt->add_option("--mode", opt.mode, "single or pareto")->check(CLI::IsMember({"single", "pareto"}));
    c_opt->add_option("--moid", opt.moid, "Nominal MOID magnitude: computed or listed (catalog moid_km)")
        ->check(CLI::IsMember({"computed", "listed"}));
    c_opt->add_option("--budget", opt.budget, "Objective evaluations");
    c_opt->add_option("--seed", opt.seed, "Random seed");
    c_opt->add_option("--limit", opt.limit, "Single mode: number of local optima to print");
    add_common(c_opt, opt.common);

    ThreeBodyArgs tb;
    auto* c_tb = app.add_subcommand("threebody", "Sun-Earth propagation of the deflected asteroid");
    c_tb->add_option("id", tb.id, "Asteroid id")->required();
    c_tb->add_option("--dv", tb.dv_ms, "Impulse magnitude [m/s]");
    c_tb->add_option("--strategy", tb.strategy, "dr or bstar")->check(CLI::IsMember({"dr", "bstar"}));
    c_tb->add_option("--dt-max", tb.dt_max, "Largest time-to-impact [orbital periods]");
    c_tb->add_option("--points", tb.points, "Time-to-impact samples");
    add_common(c_tb, tb.common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (c_sweep->parsed()) {
            emit(sweep.common, "sweep", run_sweep(sweep), out);
        } else if (c_acc->parsed()) {
            emit(acc.common, "accuracy", run_accuracy(acc), out);
        } else if (c_opt->parsed()) {
            emit(opt.common, "optimize", run_optimize(opt), out);
        } else if (c_tb->parsed()) {
            emit(tb.common, "threebody", run_threebody(tb), out);
        }
    } catch (const UsageError& e) {
        err << "deflekt: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidInput& e) {
        err << "deflekt: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "deflekt: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace deflekt::cli
