#pragma once

#include "deflekt/vec.hpp"

namespace deflekt::mission {

struct LambertSolution {
    Vec3 v1 = Vec3::Zero();  // km/s at r1
    Vec3 v2 = Vec3::Zero();  // km/s at r2
    int iterations = 0;
};

/// Zero-revolution Lambert arc from r1 to r2 in tof seconds (universal
/// variables, bracketed root of the monotone time-of-flight function).
/// `prograde` picks the transfer whose angular momentum has a positive z
/// component. Throws InvalidInput for tof <= 0 or collinear endpoints and
/// NumericalError if the root cannot be bracketed.
LambertSolution lambert_arc(const Vec3& r1, const Vec3& r2, double tof, double mu,
                            bool prograde = true);

}  // namespace deflekt::mission
