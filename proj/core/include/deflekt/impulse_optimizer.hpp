// Deviation-maximising impulse direction and the time-to-impact sweeps built on it.
#pragma once

#include <vector>

#include "deflekt/deviation_model.hpp"

namespace deflekt::impulse {

using deviation::ImpulseVector;
using deviation::TransitionMatrix;
using orbit::OrbitalElements;

struct OptimalDirection {
    ImpulseVector unit_vector;
    double eigenvalue = 0.0;  // largest eigenvalue of M^T M [(km per km/s)^2]
    double gain = 0.0;        // sqrt(eigenvalue) [km per km/s]
    bool degenerate = false;  // the two largest eigenvalues coincide
};

/// Unit maximiser of |M x| over the eigenvectors of M^T M, for any matrix with three
/// columns. Sign: tangential >= 0, then normal >= 0, then out-of-plane >= 0.
OptimalDirection optimal_direction(const Eigen::Matrix<double, Eigen::Dynamic, 3>& m);
OptimalDirection optimal_direction(const TransitionMatrix& tm);

/// One deflection scenario in a sweep: impulse at theta_d, dt_days before the MOID crossing.
struct SweepPoint {
    double theta_d = 0.0;
    double dt_days = 0.0;
};

/// Points with dt = k * T / points_per_period, k = 1 .. dt_max_periods * points_per_period;
/// theta_d is where the asteroid is dt before passing theta_moid.
std::vector<SweepPoint> points_before_moid(const OrbitalElements& el, double theta_moid,
                                           double dt_max_periods, int points_per_period = 1000);

/// True anomaly the asteroid had dt_days before it reaches theta.
double anomaly_before(const OrbitalElements& el, double theta, double dt_days);
/// True anomaly the asteroid reaches dt_days after theta.
double anomaly_after(const OrbitalElements& el, double theta, double dt_days);

struct StrategyRow {
    double dt_days = 0.0;
    double dt_over_period = 0.0;
    double theta_d = 0.0;
    OptimalDirection optimal;
    double dr_opt = 0.0;  // |T dv| for each strategy at the given magnitude [km]
    double dr_t = 0.0;
    double dr_n = 0.0;
    double dr_h = 0.0;
    double dr_opt_flipped = 0.0;
};

/// Deviation magnitude under optimal, +t, +n, +h and sign-flipped optimal impulses.
std::vector<StrategyRow> strategy_sweep(const OrbitalElements& el, double theta_moid,
                                        const std::vector<SweepPoint>& points, double dv_mag);

struct PeriApoRow {
    double dt_days = 0.0;
    double dr_pericenter = 0.0;
    double dr_apocenter = 0.0;
    double ratio = 0.0;  // pericenter / apocenter
};

/// Optimal-strategy deviation dt after an impulse at pericenter vs at apocenter.
/// Requires e >= kEccentricityFloor.
std::vector<PeriApoRow> pericenter_apocenter_comparison(const OrbitalElements& el,
                                                        const std::vector<double>& dt_days,
                                                        double dv_mag);

}  // namespace deflekt::impulse
