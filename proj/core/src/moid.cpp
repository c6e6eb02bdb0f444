#include <algorithm>
#include <cmath>
#include <vector>

#include "deflekt/errors.hpp"
#include "deflekt/orbit_core.hpp"

namespace deflekt::orbit {

namespace {

constexpr int kGrid = 360;
constexpr int kMaxRefined = 8;

// Position on a conic and its first two derivatives with respect to the true anomaly.
struct ConicPoint {
    Vec3 r, dr, ddr;
};

class Conic {
public:
    explicit Conic(const OrbitalElements& el) : p_(el.semi_latus_rectum()), e_(el.e) {
        const double co = std::cos(el.raan), so = std::sin(el.raan);
        const double cw = std::cos(el.argp), sw = std::sin(el.argp);
        const double ci = std::cos(el.i), si = std::sin(el.i);
        px_ = Vec3(co * cw - so * sw * ci, so * cw + co * sw * ci, sw * si);
        qx_ = Vec3(-co * sw - so * cw * ci, -so * sw + co * cw * ci, cw * si);
    }

    Vec3 position(double theta) const {
        const double c = std::cos(theta), s = std::sin(theta);
        return p_ / (1.0 + e_ * c) * (c * px_ + s * qx_);
    }

    ConicPoint point(double theta) const {
        const double c = std::cos(theta), s = std::sin(theta);
        const double k = 1.0 + e_ * c;
        const double rho = p_ / k;
        const double rho1 = rho * e_ * s / k;
        const double rho2 = rho1 * e_ * s / k + rho * e_ * c / k + rho * e_ * e_ * s * s / (k * k);
        const Vec3 u = c * px_ + s * qx_;
        const Vec3 w = -s * px_ + c * qx_;
        return {rho * u, rho1 * u + rho * w, rho2 * u + 2.0 * rho1 * w - rho * u};
    }

private:
    double p_, e_;
    Vec3 px_, qx_;
};

struct Candidate {
    double theta1, theta2, dist2;
};

// Damped Newton on f = |r1 - r2|^2 / 2 over both anomalies.
Candidate refine(const Conic& c1, const Conic& c2, Candidate start) {
    double t1 = start.theta1, t2 = start.theta2;
    auto f = [&](double a, double b) { return (c1.position(a) - c2.position(b)).squaredNorm(); };
    double fval = f(t1, t2);
    for (int iter = 0; iter < 100; ++iter) {
        const ConicPoint p1 = c1.point(t1);
        const ConicPoint p2 = c2.point(t2);
        const Vec3 d = p1.r - p2.r;
        const double g1 = d.dot(p1.dr);
        const double g2 = -d.dot(p2.dr);
        const double h11 = p1.dr.squaredNorm() + d.dot(p1.ddr);
        const double h22 = p2.dr.squaredNorm() - d.dot(p2.ddr);
        const double h12 = -p1.dr.dot(p2.dr);
        const double det = h11 * h22 - h12 * h12;

        double s1, s2;
        if (h11 > 0.0 && det > 0.0) {
            s1 = -(h22 * g1 - h12 * g2) / det;
            s2 = -(-h12 * g1 + h11 * g2) / det;
        } else {
            const double scale = std::max({std::abs(h11), std::abs(h22), 1.0});
            s1 = -g1 / scale;
            s2 = -g2 / scale;
        }
        // Keep steps local to the basin found on the grid.
        const double limit = 0.05;
        const double big = std::max(std::abs(s1), std::abs(s2));
        if (big > limit) {
            s1 *= limit / big;
            s2 *= limit / big;
        }

        double lambda = 1.0;
        bool improved = false;
        for (int k = 0; k < 40; ++k) {
            const double trial = f(t1 + lambda * s1, t2 + lambda * s2);
            if (trial <= fval) {
                t1 += lambda * s1;
                t2 += lambda * s2;
                improved = trial < fval || lambda * big < 1e-15;
                fval = trial;
                break;
            }
            lambda *= 0.5;
        }
        const double gnorm = std::hypot(g1, g2) / std::max(std::sqrt(fval), 1e-300);
        // Stationarity: distance gradient below 1e-6 km per rad.
        if (!improved || gnorm < 1e-6 || lambda * big < 1e-15) break;
    }
    return {normalize_angle(t1), normalize_angle(t2), fval};
}

}  // namespace

MoidResult compute_moid(const OrbitalElements& neo, const OrbitalElements& planet) {
    neo.validate();
    planet.validate();
    const Conic c1(neo);
    const Conic c2(planet);

    std::vector<Vec3> ring1(kGrid), ring2(kGrid);
    for (int k = 0; k < kGrid; ++k) {
        const double th = kTwoPi * k / kGrid;
        ring1[k] = c1.position(th);
        ring2[k] = c2.position(th);
    }
    std::vector<double> dist2(static_cast<std::size_t>(kGrid) * kGrid);
    auto at = [&](int a, int b) -> double& {
        return dist2[static_cast<std::size_t>((a + kGrid) % kGrid) * kGrid + (b + kGrid) % kGrid];
    };
    for (int a = 0; a < kGrid; ++a) {
        for (int b = 0; b < kGrid; ++b) at(a, b) = (ring1[a] - ring2[b]).squaredNorm();
    }

    std::vector<Candidate> minima;
    for (int a = 0; a < kGrid; ++a) {
        for (int b = 0; b < kGrid; ++b) {
            const double v = at(a, b);
            bool is_min = true;
            for (int da = -1; da <= 1 && is_min; ++da) {
                for (int db = -1; db <= 1; ++db) {
                    if ((da || db) && at(a + da, b + db) < v) {
                        is_min = false;
                        break;
                    }
                }
            }
            if (is_min) minima.push_back({kTwoPi * a / kGrid, kTwoPi * b / kGrid, v});
        }
    }
    std::sort(minima.begin(), minima.end(),
              [](const Candidate& x, const Candidate& y) { return x.dist2 < y.dist2; });
    if (minima.size() > static_cast<std::size_t>(kMaxRefined)) minima.resize(kMaxRefined);

    Candidate best{0.0, 0.0, INFINITY};
    for (const Candidate& start : minima) {
        const Candidate c = refine(c1, c2, start);
        if (c.dist2 < best.dist2) best = c;
    }

    MoidResult out;
    const CartesianState s1 = state_at_true_anomaly(neo, best.theta1);
    const Vec3 r2 = c2.position(best.theta2);
    out.theta_moid = best.theta1;
    out.theta_planet = best.theta2;
    out.delta_r_cartesian = s1.position - r2;
    out.distance = out.delta_r_cartesian.norm();
    out.delta_r_vec = rtn_basis(s1).transpose() * out.delta_r_cartesian;
    out.t_moid_candidates =
        moid_crossing_times(neo, best.theta1, neo.epoch, neo.epoch + neo.period_days());
    if (out.t_moid_candidates.size() > 1) out.t_moid_candidates.resize(1);
    return out;
}

std::vector<double> moid_crossing_times(const OrbitalElements& neo, double theta_moid,
                                        double t_lo, double t_hi) {
    if (!(t_hi >= t_lo)) throw InvalidInput("moid_crossing_times: empty window");
    const double period = neo.period_days();
    const double m_target = mean_from_true(normalize_angle(theta_moid), neo.e);
    const double m_lo = neo.mean_anomaly_at(t_lo);
    // First crossing at or after t_lo; the window is half-open at t_hi.
    double dm = normalize_angle(m_target - m_lo);
    const double t_first = t_lo + days_from_seconds(dm / neo.mean_motion());
    if (!std::isfinite(t_first) || !(period > 0.0)) throw NumericalError("moid_crossing_times: non-finite epoch");
    std::vector<double> out;
    for (int k = 0;; ++k) {
        const double t = t_first + k * period;
        if (t >= t_hi) break;
        out.push_back(t);
    }
    return out;
}

std::vector<double> moid_crossing_times(const OrbitalElements& neo, const MoidResult& moid,
                                        double t_lo, double t_hi) {
    return moid_crossing_times(neo, moid.theta_moid, t_lo, t_hi);
}

}  // namespace deflekt::orbit
