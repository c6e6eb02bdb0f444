#pragma once

#include <numbers>

namespace deflekt {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kDegToRad = std::numbers::pi / 180.0;
inline constexpr double kRadToDeg = 180.0 / std::numbers::pi;

inline constexpr double kAuKm = 1.495978707e8;
inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kDaysPerJulianYear = 365.25;
inline constexpr double kDaysPerJulianCentury = 36525.0;

/// Offset between MJD and the internal MJD2000 time scale (t = 0 at 2000-01-01 12:00).
inline constexpr double kMjdToMjd2000 = 51544.5;

inline constexpr double kMuSun = 1.32712440018e11;    // km^3/s^2
inline constexpr double kMuEarth = 398600.4418;       // km^3/s^2
inline constexpr double kMuVenus = 324858.59;         // km^3/s^2
inline constexpr double kEarthRadius = 6378.137;      // km
inline constexpr double kVenusRadius = 6051.8;        // km

inline constexpr double seconds_from_days(double days) { return days * kSecondsPerDay; }
inline constexpr double days_from_seconds(double seconds) { return seconds / kSecondsPerDay; }

}  // namespace deflekt
