#include "deflekt/impulse_optimizer.hpp"

#include <cmath>

#include "deflekt/errors.hpp"
#include "deflekt/parallel.hpp"
#include "deflekt/symmetric_eigen.hpp"

namespace deflekt::impulse {

namespace {

constexpr double kTie = 1e-14;

Vec3 oriented(Vec3 v) {
    for (int k = 0; k < 3; ++k) {
        if (std::abs(v(k)) > kTie) return v(k) < 0.0 ? Vec3(-v) : v;
    }
    return v;
}

}  // namespace

OptimalDirection optimal_direction(const Eigen::Matrix<double, Eigen::Dynamic, 3>& m) {
    if (!m.allFinite()) throw InvalidInput("optimal_direction: non-finite matrix");
    const Mat3 q = m.transpose() * m;
    const linalg::SymmetricEigen eig = linalg::symmetric_eigen(q);
    OptimalDirection out;
    out.unit_vector = ImpulseVector::from_vector(oriented(eig.vectors.col(2)));
    out.eigenvalue = std::max(eig.values(2), 0.0);
    out.gain = std::sqrt(out.eigenvalue);
    out.degenerate = eig.values(2) - eig.values(1) <= 1e-9 * std::abs(eig.values(2));
    return out;
}

OptimalDirection optimal_direction(const TransitionMatrix& tm) { return optimal_direction(tm.T); }

double anomaly_before(const OrbitalElements& el, double theta, double dt_days) {
    const double m = orbit::mean_from_true(theta, el.e) - el.mean_motion() * seconds_from_days(dt_days);
    return orbit::true_from_mean(orbit::normalize_angle(m), el.e);
}

double anomaly_after(const OrbitalElements& el, double theta, double dt_days) {
    return anomaly_before(el, theta, -dt_days);
}

std::vector<SweepPoint> points_before_moid(const OrbitalElements& el, double theta_moid,
                                           double dt_max_periods, int points_per_period) {
    if (!(dt_max_periods > 0.0) || points_per_period <= 0) {
        throw InvalidInput("points_before_moid: empty sweep");
    }
    const double period = el.period_days();
    const int n = static_cast<int>(std::floor(dt_max_periods * points_per_period + 1e-9));
    std::vector<SweepPoint> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        const double dt = period * k / points_per_period;
        pts.push_back({anomaly_before(el, theta_moid, dt), dt});
    }
    return pts;
}

std::vector<StrategyRow> strategy_sweep(const OrbitalElements& el, double theta_moid,
                                        const std::vector<SweepPoint>& points, double dv_mag) {
    if (!(dv_mag > 0.0)) throw InvalidInput("strategy_sweep: dv_mag must be positive");
    const double period = el.period_days();
    std::vector<StrategyRow> rows(points.size());
    parallel_for(points.size(), [&](std::size_t k) {
        const SweepPoint& pt = points[k];
        // Epochs only enter through their difference.
        const TransitionMatrix tm =
            deviation::transition_matrix(el, pt.theta_d, 0.0, theta_moid, pt.dt_days);
        StrategyRow& row = rows[k];
        row.dt_days = pt.dt_days;
        row.dt_over_period = pt.dt_days / period;
        row.theta_d = pt.theta_d;
        row.optimal = optimal_direction(tm);
        const Vec3 opt = row.optimal.unit_vector.vector() * dv_mag;
        row.dr_opt = (tm.T * opt).norm();
        row.dr_opt_flipped = (tm.T * (-opt)).norm();
        row.dr_t = (tm.T.col(0) * dv_mag).norm();
        row.dr_n = (tm.T.col(1) * dv_mag).norm();
        row.dr_h = (tm.T.col(2) * dv_mag).norm();
    });
    return rows;
}

std::vector<PeriApoRow> pericenter_apocenter_comparison(const OrbitalElements& el,
                                                        const std::vector<double>& dt_days,
                                                        double dv_mag) {
    if (el.e < deviation::kEccentricityFloor) {
        throw InvalidInput("pericenter_apocenter_comparison: eccentricity below floor");
    }
    std::vector<PeriApoRow> rows(dt_days.size());
    parallel_for(dt_days.size(), [&](std::size_t k) {
        const double dt = dt_days[k];
        auto best = [&](double theta_d) {
            const TransitionMatrix tm = deviation::transition_matrix(
                el, theta_d, 0.0, anomaly_after(el, theta_d, dt), dt);
            return optimal_direction(tm).gain * dv_mag;
        };
        PeriApoRow& row = rows[k];
        row.dt_days = dt;
        row.dr_pericenter = best(0.0);
        row.dr_apocenter = best(kPi);
        row.ratio = row.dr_pericenter / row.dr_apocenter;
    });
    return rows;
}

}  // namespace deflekt::impulse
