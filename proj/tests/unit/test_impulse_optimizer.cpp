#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "deflekt/catalog_io.hpp"
#include "deflekt/errors.hpp"
#include "deflekt/impulse_optimizer.hpp"
#include "deflekt/orbit_core.hpp"
#include "deflekt/symmetric_eigen.hpp"
#include "oracles.hpp"

using namespace deflekt;
using namespace deflekt::impulse;

namespace {

const std::vector<catalog::AsteroidRecord>& records() {
    static const auto r = catalog::load_builtin_catalog();
    return r;
}

const OrbitalElements& asteroid(int id) { return catalog::find_record(records(), id).elements; }

double moid_anomaly(int id) {
    return orbit::compute_moid(asteroid(id), orbit::planet_ephemeris(orbit::Planet::Earth, 0.0)).theta_moid;
}

Mat3 random_symmetric(std::mt19937_64& rng, double spread) {
    std::normal_distribution<double> n(0.0, 1.0);
    Mat3 q;
    for (int c = 0; c < 3; ++c) q.col(c) = oracle::random_unit(rng);
    q = Eigen::HouseholderQR<Mat3>(q).householderQ();
    const Vec3 lam(n(rng), n(rng) * spread, n(rng) * spread * spread);
    return q * lam.asDiagonal() * q.transpose();
}

}  // namespace

TEST(SymmetricEigen, AgreesWithReferenceSolver) {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 2000; ++k) {
        const Mat3 m = random_symmetric(rng, std::pow(10.0, k % 7));
        const linalg::SymmetricEigen ours = linalg::symmetric_eigen(m);
        const Eigen::SelfAdjointEigenSolver<Mat3> ref(m);
        const double scale = m.norm();
        EXPECT_LT((ours.values - ref.eigenvalues()).norm(), 1e-11 * scale) << k;
        EXPECT_LT((ours.vectors.transpose() * ours.vectors - Mat3::Identity()).norm(), 1e-10) << k;
        EXPECT_LT((m * ours.vectors - ours.vectors * ours.values.asDiagonal()).norm(), 1e-10 * scale) << k;
    }
}

TEST(SymmetricEigen, RepeatedEigenvaluesFallBackCleanly) {
    const Mat3 m = Vec3(2.0, 2.0, 5.0).asDiagonal();
    const linalg::SymmetricEigen e = linalg::symmetric_eigen(m);
    EXPECT_NEAR(e.values(2), 5.0, 1e-13);
    EXPECT_NEAR(std::abs(e.vectors(2, 2)), 1.0, 1e-13);
    EXPECT_LT((m * e.vectors - e.vectors * e.values.asDiagonal()).norm(), 1e-12);
    const linalg::SymmetricEigen z = linalg::symmetric_eigen(Mat3::Zero());
    EXPECT_EQ(z.values.norm(), 0.0);
    const linalg::SymmetricEigen j = linalg::jacobi_eigen(Vec3(3.0, 1.0, 2.0).asDiagonal());
    EXPECT_NEAR(j.values(0), 1.0, 1e-14);
    EXPECT_NEAR(j.values(2), 3.0, 1e-14);
}

TEST(OptimalDirection, DiagonalPicksLargestAxis) {
    Eigen::Matrix<double, Eigen::Dynamic, 3> m = Vec3(1.0, 2.0, 3.0).asDiagonal() * 1e4;
    const OptimalDirection d = optimal_direction(m);
    EXPECT_NEAR(d.unit_vector.dv_h, 1.0, 1e-14);
    EXPECT_NEAR(d.gain, 3e4, 1e-8);
    EXPECT_FALSE(d.degenerate);
}

TEST(OptimalDirection, DegenerateSpectrumIsFlagged) {
    Eigen::Matrix<double, Eigen::Dynamic, 3> m = Vec3(3.0, 3.0, 1.0).asDiagonal();
    const OptimalDirection d = optimal_direction(m);
    EXPECT_TRUE(d.degenerate);
    EXPECT_NEAR((m * d.unit_vector.vector()).norm(), 3.0, 1e-12);
}

TEST(OptimalDirection, BeatsBruteForceSearch) {
    std::mt19937_64 rng(13);
    for (int id : {2, 6, 7, 17, 23}) {
        const OrbitalElements& el = asteroid(id);
        const auto pts = points_before_moid(el, moid_anomaly(id), 3.0, 10);
        for (std::size_t k = 0; k < pts.size(); k += 3) {
            const auto tm = deviation::transition_matrix(el, pts[k].theta_d, 0.0, moid_anomaly(id), pts[k].dt_days);
            const OptimalDirection d = optimal_direction(tm);
            const double ours = (tm.T * d.unit_vector.vector()).norm();
            EXPECT_NEAR(ours * ours, d.eigenvalue, 1e-10 * d.eigenvalue);
            EXPECT_GE(ours, oracle::brute_force_max_gain(tm.T, 10000, rng) * (1 - 1e-12));
        }
    }
}

TEST(OptimalDirection, SignConvention) {
    const OrbitalElements& el = asteroid(6);
    const auto pts = points_before_moid(el, moid_anomaly(6), 2.0, 50);
    for (const auto& p : pts) {
        const auto tm = deviation::transition_matrix(el, p.theta_d, 0.0, moid_anomaly(6), p.dt_days);
        const ImpulseVector u = optimal_direction(tm).unit_vector;
        EXPECT_NEAR(u.norm(), 1.0, 1e-12);
        EXPECT_TRUE(u.dv_t > 0.0 || (std::abs(u.dv_t) <= 1e-14 && u.dv_n >= 0.0));
    }
}

TEST(StrategySweep, InPlaneAndDominance2000SG344) {
    const OrbitalElements& el = asteroid(7);
    const auto rows = strategy_sweep(el, moid_anomaly(7), points_before_moid(el, moid_anomaly(7), 3.0), 7e-5);
    ASSERT_EQ(rows.size(), 3000u);
    for (const auto& r : rows) {
        EXPECT_LT(std::abs(r.optimal.unit_vector.dv_h), 1e-12);
        EXPECT_GE(r.dr_opt, r.dr_t * (1 - 1e-9));
        EXPECT_GE(r.dr_opt, r.dr_n * (1 - 1e-9));
        EXPECT_GE(r.dr_opt, r.dr_h * (1 - 1e-9));
        EXPECT_NEAR(r.dr_opt, r.dr_opt_flipped, 1e-12 * r.dr_opt);
        if (r.dt_over_period > 1.0) {
            EXPECT_GT(std::abs(r.optimal.unit_vector.dv_t), std::abs(r.optimal.unit_vector.dv_n)) << r.dt_over_period;
        }
    }
}

TEST(StrategySweep, NormalComponentVanishesOncePerPeriod) {
    const OrbitalElements& el = asteroid(7);
    const auto rows = strategy_sweep(el, moid_anomaly(7), points_before_moid(el, moid_anomaly(7), 3.0), 7e-5);
    // Local minima of |n| (optimal direction) and of the normal-strategy deviation.
    std::vector<double> zeros;
    for (std::size_t k = 1; k + 1 < rows.size(); ++k) {
        const double n = std::abs(rows[k].optimal.unit_vector.dv_n);
        if (n <= std::abs(rows[k - 1].optimal.unit_vector.dv_n) && n <= std::abs(rows[k + 1].optimal.unit_vector.dv_n) &&
            n < 1e-6) {
            zeros.push_back(rows[k].dt_over_period);
            EXPECT_LT(rows[k].dr_n, 1e-6 * rows[k].dr_opt);
        }
    }
    ASSERT_EQ(zeros.size(), 2u);  // 1T and 2T; 3T is the last grid point
    EXPECT_NEAR(zeros[1] - zeros[0], 1.0, 0.01);
    EXPECT_NEAR(zeros[0], 1.0, 0.01);
}

TEST(StrategySweep, RejectsNonPositiveMagnitude) {
    const OrbitalElements& el = asteroid(7);
    EXPECT_THROW(strategy_sweep(el, 1.0, points_before_moid(el, 1.0, 1.0, 10), 0.0), InvalidInput);
    EXPECT_THROW(points_before_moid(el, 1.0, 0.0, 10), InvalidInput);
}

TEST(SweepPoints, AnomaliesAreConsistentWithKepler) {
    const OrbitalElements& el = asteroid(6);
    const double theta = 2.0;
    for (const auto& p : points_before_moid(el, theta, 1.5, 20)) {
        EXPECT_LT(std::abs(orbit::normalize_angle_signed(anomaly_after(el, p.theta_d, p.dt_days) - theta)), 1e-9);
    }
}

// Literal half-period grid. With equal time-to-impact, an impulse at pericenter
// seen at apocenter and one at apocenter seen at pericenter are mirror images of
// each other, so the two deviations coincide and this strict comparison fails.
TEST(PeriApo, PericenterWinsAtHalfPeriodOffsets) {
    const OrbitalElements& el = asteroid(6);
    const double period = el.period_days();
    std::vector<double> dts;
    for (int k = 0; k < 4; ++k) dts.push_back((k + 0.5) * period);
    for (const auto& r : pericenter_apocenter_comparison(el, dts, 7e-5)) {
        EXPECT_GT(r.dr_pericenter, r.dr_apocenter) << r.dt_days / period;
    }
}

TEST(PeriApo, HalfPeriodOffsetsAreMirrorSymmetric) {
    for (int id : {6, 7, 13, 17}) {
        const OrbitalElements& el = asteroid(id);
        const double period = el.period_days();
        for (const auto& r : pericenter_apocenter_comparison(el, {0.5 * period, 1.5 * period, 2.5 * period}, 7e-5)) {
            EXPECT_NEAR(r.ratio, 1.0, 1e-9) << id;
        }
    }
}

TEST(PeriApo, PericenterWinsForEccentricOrbit) {
    const OrbitalElements& el = asteroid(6);
    const double period = el.period_days();
    std::vector<double> dts;
    for (int k = 0; k < 4; ++k) {
        for (double f : {0.0, 0.25, 0.75}) {
            if (k + f > 0.0) dts.push_back((k + f) * period);
        }
    }
    for (const auto& r : pericenter_apocenter_comparison(el, dts, 7e-5)) {
        EXPECT_GT(r.dr_pericenter, r.dr_apocenter) << r.dt_days / period;
    }
    // Whole periods: both impulses are seen where they were given, so the along-track
    // drift scales with ((1 + e) / (1 - e))^2.
    const auto whole = pericenter_apocenter_comparison(el, {2.0 * period}, 7e-5);
    EXPECT_NEAR(whole.front().ratio, std::pow((1 + el.e) / (1 - el.e), 2), 1e-3 * whole.front().ratio);
}

TEST(PeriApo, CircularLimitIsSymmetric) {
    OrbitalElements el = asteroid(7);
    el.e = deviation::kEccentricityFloor;
    const double period = el.period_days();
    for (const auto& r : pericenter_apocenter_comparison(el, {0.75 * period, 1.0 * period, 2.25 * period}, 7e-5)) {
        EXPECT_NEAR(r.ratio, 1.0, 0.05);
    }
}

TEST(PeriApo, RatioGrowsWithEccentricityAcrossCatalog) {
    std::vector<double> e, ratio;
    for (const auto& rec : records()) {
        const double period = rec.elements.period_days();
        const auto rows = pericenter_apocenter_comparison(rec.elements, {2.0 * period}, 7e-5);
        e.push_back(rec.e);
        ratio.push_back(rows.front().ratio);
    }
    EXPECT_GT(oracle::spearman(e, ratio), 0.8);
}
