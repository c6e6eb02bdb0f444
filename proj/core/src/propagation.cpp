#include "deflekt/propagation.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <limits>

#include "deflekt/impulse_optimizer.hpp"
#include "deflekt/parallel.hpp"

namespace deflekt::propagation {

namespace odeint = boost::numeric::odeint;

void PropagationConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(max_step_days > 0.0)) {
        throw InvalidInput("PropagationConfig: tolerances and step bound must be positive");
    }
    if (!(mu_sun > 0.0) || mu_earth < 0.0) throw InvalidInput("PropagationConfig: bad mu");
}

CollisionDetected::CollisionDetected(double t_, double distance_)
    : NumericalError("trajectory entered the Earth"), t(t_), distance(distance_) {}

namespace {

template <std::size_t N>
using State = std::array<double, N>;

Vec3 earth_position(double t_days) {
    const auto earth = orbit::planet_ephemeris(orbit::Planet::Earth, t_days);
    return orbit::elements_to_state(earth, t_days).position;
}

// Heliocentric acceleration for one body; `t0` anchors integration seconds to MJD2000.
// sign = -1 runs time backwards from t0.
struct Dynamics {
    const PropagationConfig& cfg;
    double t0;
    double sign = 1.0;

    void accel(const double* x, double t_s, double* dvdt) const {
        const Vec3 r(x[0], x[1], x[2]);
        const double rn = r.norm();
        Vec3 a = -cfg.mu_sun / (rn * rn * rn) * r;
        if (cfg.include_earth) {
            const double t = t0 + sign * days_from_seconds(t_s);
            const Vec3 re = earth_position(t);
            const Vec3 d = re - r;
            const double dn = d.norm();
            if (dn < cfg.collision_radius) throw CollisionDetected(t, dn);
            const double ren = re.norm();
            a += cfg.mu_earth * (d / (dn * dn * dn) - re / (ren * ren * ren));
        }
        dvdt[0] = a.x();
        dvdt[1] = a.y();
        dvdt[2] = a.z();
    }

    template <std::size_t N>
    void operator()(const State<N>& x, State<N>& dxdt, double t_s) const {
        for (std::size_t b = 0; b < N; b += 6) {
            dxdt[b] = sign * x[b + 3];
            dxdt[b + 1] = sign * x[b + 4];
            dxdt[b + 2] = sign * x[b + 5];
            accel(&x[b], t_s, &dxdt[b + 3]);
            for (std::size_t j = 3; j < 6; ++j) dxdt[b + j] *= sign;
        }
    }
};

template <std::size_t N>
class Integrator {
public:
    Integrator(const PropagationConfig& cfg, double t0, double sign = 1.0)
        : dyn_{cfg, t0, sign},
          stepper_(odeint::make_controlled(cfg.abs_tol, cfg.rel_tol, seconds_from_days(cfg.max_step_days),
                                           odeint::runge_kutta_fehlberg78<State<N>>())),
          dt_(600.0) {}

    // Advances x from t (seconds since t0) to t_end exactly.
    void advance(State<N>& x, double& t, double t_end) {
        int guard = 0;
        while (t < t_end) {
            double dt = std::min(dt_, t_end - t);
            const bool last = dt == t_end - t;
            if (stepper_.try_step(dyn_, x, t, dt) == odeint::success) {
                // try_step proposes the next step in dt; keep it unless we only
                // clipped the step to land on t_end.
                if (!last || dt > dt_) dt_ = dt;
                if (last) t = t_end;
                guard = 0;
            } else {
                dt_ = dt;
                if (dt < 1e-6 || ++guard > 500) {
                    throw NumericalError("propagate: step size underflow");
                }
            }
        }
    }

private:
    Dynamics dyn_;
    typename odeint::result_of::make_controlled<odeint::runge_kutta_fehlberg78<State<N>>>::type stepper_;
    double dt_;
};

State<6> pack(const CartesianState& s) {
    return {s.position.x(), s.position.y(), s.position.z(),
            s.velocity.x(), s.velocity.y(), s.velocity.z()};
}

CartesianState unpack(const double* x) {
    return {Vec3(x[0], x[1], x[2]), Vec3(x[3], x[4], x[5])};
}

}  // namespace

std::vector<CartesianState> propagate_to(const CartesianState& state, double t0,
                                         std::span<const double> times,
                                         const PropagationConfig& config) {
    config.validate();
    Integrator<6> integ(config, t0);
    State<6> x = pack(state);
    double t = 0.0;
    std::vector<CartesianState> out;
    out.reserve(times.size());
    for (double target : times) {
        if (!(target >= t0 + days_from_seconds(t) - 1e-12)) {
            throw InvalidInput("propagate: epochs must be ascending and not before t0");
        }
        integ.advance(x, t, seconds_from_days(target - t0));
        out.push_back(unpack(x.data()));
    }
    return out;
}

CartesianState propagate(const CartesianState& state, double t0, double t1,
                         const PropagationConfig& config) {
    if (!(t1 >= t0)) throw InvalidInput("propagate: t1 before t0");
    const double times[] = {t1};
    return propagate_to(state, t0, times, config).front();
}

DeviationError deviation_error(const OrbitalElements& el, const ImpulseVector& dv, double t_d,
                               double t_moid, const PropagationConfig& config) {
    config.validate();
    if (!(t_moid >= t_d)) throw InvalidInput("deviation_error: t_moid before t_d");
    const CartesianState nominal = orbit::elements_to_state(el, t_d);
    CartesianState kicked = nominal;
    kicked.velocity += orbit::tnh_basis(nominal) * dv.vector();

    State<12> x{};
    const State<6> a = pack(nominal), b = pack(kicked);
    std::copy(a.begin(), a.end(), x.begin());
    std::copy(b.begin(), b.end(), x.begin() + 6);
    PropagationConfig two_body = config;
    two_body.include_earth = false;
    Integrator<12> integ(two_body, t_d);
    double t = 0.0;
    integ.advance(x, t, seconds_from_days(t_moid - t_d));

    const CartesianState nom_end = unpack(x.data());
    const Vec3 diff = unpack(x.data() + 6).position - nom_end.position;

    DeviationError out;
    out.propagated = orbit::rtn_basis(nom_end).transpose() * diff;
    const auto tm = deviation::transition_matrix(el, orbit::true_anomaly_at(el, t_d), t_d,
                                                 orbit::true_anomaly_at(el, t_moid), t_moid);
    out.estimated = tm.T * dv.vector();
    const double norm = out.propagated.norm();
    if (!(norm > 0.0)) throw InvalidInput("deviation_error: propagated deviation is zero");
    out.e_r = (out.propagated - out.estimated).norm() / norm;
    return out;
}

ThreeBodyResult closest_approach(const CartesianState& kicked_at_td, double t_d, double t_moid,
                                 double period_days, const PropagationConfig& config) {
    config.validate();
    const double t_end = t_moid + 0.1 * period_days;
    if (!(t_end > t_d)) throw InvalidInput("closest_approach: empty interval");

    ThreeBodyResult res;
    auto distance = [](const CartesianState& s, double t) {
        return (s.position - earth_position(t)).norm();
    };

    // Samples the interval [a, b] with spacing h starting from state s at a.
    struct Sample {
        double t;
        CartesianState s;
        double d;
    };
    auto sample = [&](const CartesianState& s, double a, double b, double h) {
        std::vector<double> times;
        for (int k = 1;; ++k) {
            const double tk = a + k * h;
            if (tk >= b) break;
            times.push_back(tk);
        }
        times.push_back(b);
        std::vector<Sample> out{{a, s, distance(s, a)}};
        const auto states = propagate_to(s, a, times, config);
        for (std::size_t k = 0; k < times.size(); ++k) {
            out.push_back({times[k], states[k], distance(states[k], times[k])});
        }
        return out;
    };
    auto argmin = [](const std::vector<Sample>& v) {
        return static_cast<std::size_t>(std::min_element(v.begin(), v.end(), [](const Sample& x, const Sample& y) {
                                            return x.d < y.d;
                                        }) - v.begin());
    };

    try {
        const auto coarse = sample(kicked_at_td, t_d, t_end, 1.0);
        std::size_t k = argmin(coarse);
        const std::size_t k0 = k == 0 ? 0 : k - 1;
        const double fine_end = k + 1 < coarse.size() ? coarse[k + 1].t : coarse[k].t;
        const auto fine = sample(coarse[k0].s, coarse[k0].t, fine_end, 0.01);
        std::size_t j = argmin(fine);
        const std::size_t j0 = j == 0 ? 0 : j - 1;
        const std::size_t j1 = std::min(j + 1, fine.size() - 1);
        const Sample& anchor = fine[j0];

        auto dist_at = [&](double t) {
            if (t <= anchor.t) return anchor.d;
            return distance(propagate(anchor.s, anchor.t, t, config), t);
        };
        // Golden section on [anchor.t, fine[j1].t].
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        double lo = anchor.t, hi = fine[j1].t;
        double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
        double f1 = dist_at(x1), f2 = dist_at(x2);
        while (hi - lo > 1e-8) {
            if (f1 < f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - g * (hi - lo);
                f1 = dist_at(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + g * (hi - lo);
                f2 = dist_at(x2);
            }
        }
        res.t_min = f1 < f2 ? x1 : x2;
        res.min_distance = std::min(f1, f2);
        if (fine[j].d < res.min_distance) {
            res.t_min = fine[j].t;
            res.min_distance = fine[j].d;
        }
    } catch (const CollisionDetected& hit) {
        res.collided = true;
        res.t_min = hit.t;
        res.min_distance = hit.distance;
    }
    res.t_offset = res.t_min - t_moid;
    return res;
}

CartesianState impact_nominal(const OrbitalElements& el, double t_d, double t_moid,
                              const PropagationConfig& config) {
    config.validate();
    if (!(t_d < t_moid)) throw InvalidInput("impact_nominal: t_d must precede t_moid");
    // Aim point: outside about a Hill radius, where the Earth's pull is still a perturbation.
    double t_aim = t_moid - 2.0;
    while (t_aim > t_d && (orbit::elements_to_state(el, t_aim).position - earth_position(t_aim)).norm() < 0.01 * kAuKm) {
        t_aim -= 0.5;
    }
    if (!config.include_earth || t_d >= t_aim) return orbit::elements_to_state(el, t_d);
    State<6> x = pack(orbit::elements_to_state(el, t_aim));
    Integrator<6> integ(config, t_aim, -1.0);
    double t = 0.0;
    integ.advance(x, t, seconds_from_days(t_aim - t_d));
    return unpack(x.data());
}

std::vector<CatalogErrorRow> max_error_catalog_sweep(std::span<const catalog::AsteroidRecord> records,
                                                     double dt_max_days, double dv_mag, int grid_points,
                                                     const PropagationConfig& config) {
    if (records.empty()) throw InvalidInput("max_error_catalog_sweep: empty catalog");
    if (grid_points <= 0 || !(dt_max_days > 0.0)) throw InvalidInput("max_error_catalog_sweep: empty grid");
    const auto earth = orbit::planet_ephemeris(orbit::Planet::Earth, 0.0);

    struct Target {
        OrbitalElements el;
        double t_moid;
    };
    std::vector<Target> targets;
    for (const auto& rec : records) {
        const auto moid = orbit::compute_moid(rec.elements, earth);
        const double lo = rec.elements.epoch + dt_max_days;
        const auto crossings =
            orbit::moid_crossing_times(rec.elements, moid.theta_moid, lo, lo + rec.elements.period_days() + 1.0);
        targets.push_back({rec.elements, crossings.front()});
    }

    const std::size_t n = static_cast<std::size_t>(grid_points);
    std::vector<double> errors(records.size() * n);
    parallel_for(errors.size(), [&](std::size_t idx) {
        const Target& tg = targets[idx / n];
        const double dt = dt_max_days * static_cast<double>(idx % n + 1) / static_cast<double>(n);
        const double t_d = tg.t_moid - dt;
        const auto tm = deviation::transition_matrix(tg.el, orbit::true_anomaly_at(tg.el, t_d), t_d,
                                                     orbit::true_anomaly_at(tg.el, tg.t_moid), tg.t_moid);
        const auto dir = impulse::optimal_direction(tm).unit_vector * dv_mag;
        errors[idx] = deviation_error(tg.el, dir, t_d, tg.t_moid, config).e_r;
    });

    std::vector<CatalogErrorRow> rows;
    for (std::size_t a = 0; a < records.size(); ++a) {
        CatalogErrorRow row;
        row.id = records[a].id;
        row.name = records[a].name;
        row.e = records[a].elements.e;
        for (std::size_t k = 0; k < n; ++k) {
            if (errors[a * n + k] > row.max_e_r) {
                row.max_e_r = errors[a * n + k];
                row.dt_at_max = dt_max_days * static_cast<double>(k + 1) / static_cast<double>(n);
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace deflekt::propagation
