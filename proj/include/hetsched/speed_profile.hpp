#pragma once

#include <optional>
#include <vector>

namespace hetsched {

struct SpeedPoint {
  double speed = 0.0;
  double power = 0.0;  // active power at that speed, mW
};

// Lower convex hull of measured (speed, power) points, ascending by speed.
// Endpoints always survive; collinear interior points are dropped. Throws on an
// empty table or duplicate speeds.
std::vector<SpeedPoint> lower_hull(std::vector<SpeedPoint> points);

// A time-mix of two adjacent hull speeds realizing an average speed exactly.
// `low_fraction` (lambda) is the share of active time spent at `low`; when the
// demand sits below the slowest level the profile runs the slowest level for
// `active_fraction` of the interval and idles for the rest, so
//    active_fraction * (lambda*low.speed + (1-lambda)*high.speed) == demand
// holds in every regime.
struct TwoSpeedProfile {
  SpeedPoint low, high;
  double low_fraction = 1.0;
  double active_fraction = 1.0;

  double average_speed() const {
    return active_fraction * (low_fraction * low.speed + (1.0 - low_fraction) * high.speed);
  }
  // Mean active power over the active part of the interval; any idle gap is
  // priced by the caller, which knows the platform's idle power.
  double mean_active_power() const {
    return low_fraction * low.power + (1.0 - low_fraction) * high.power;
  }
  // Active energy (mJ) over an interval of `duration` seconds.
  double active_energy(double duration) const {
    return duration * active_fraction * mean_active_power();
  }
};

// Cheapest profile meeting `demand` (time-average speed over the interval).
// Returns the empty optional for zero demand; throws "infeasible demand" above
// the top speed. Ties among collinear brackets resolve toward the smaller high
// speed.
std::optional<TwoSpeedProfile> two_speed_for_demand(const std::vector<SpeedPoint>& table,
                                                    double demand);

struct ProfileSegment {
  double duration = 0.0;  // seconds
  double speed = 0.0;     // must be one of the table speeds
};

// Collapses a piecewise-constant speed profile into a two-speed profile over the
// same total duration: the work integral is preserved exactly and the active
// energy never increases. Throws when a segment speed is not in the table or
// the profile is empty.
TwoSpeedProfile compress_profile(const std::vector<ProfileSegment>& profile,
                                 const std::vector<SpeedPoint>& table);

// Exact power lookup; throws when `speed` is not a table entry.
double table_power(const std::vector<SpeedPoint>& table, double speed);

// Active energy of a piecewise profile priced from the table.
double profile_energy(const std::vector<ProfileSegment>& profile,
                      const std::vector<SpeedPoint>& table);

}  // namespace hetsched
