#include "hetsched/speed_profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hetsched {

namespace {

double cross(const SpeedPoint& o, const SpeedPoint& a, const SpeedPoint& b) {
  return (a.speed - o.speed) * (b.power - o.power) - (a.power - o.power) * (b.speed - o.speed);
}

std::vector<SpeedPoint> sorted_table(std::vector<SpeedPoint> points) {
  if (points.empty()) throw std::invalid_argument("speed table is empty");
  std::sort(points.begin(), points.end(),
            [](const SpeedPoint& x, const SpeedPoint& y) { return x.speed < y.speed; });
  for (size_t i = 1; i < points.size(); ++i)
    if (std::abs(points[i].speed - points[i - 1].speed) <= 1e-12)
      throw std::invalid_argument("duplicate speed in table");
  for (const auto& p : points)
    if (p.speed <= 0.0) throw std::invalid_argument("speeds must be positive");
  return points;
}

}  // namespace

std::vector<SpeedPoint> lower_hull(std::vector<SpeedPoint> points) {
  auto pts = sorted_table(std::move(points));
  std::vector<SpeedPoint> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0.0)
      hull.pop_back();
    hull.push_back(p);
  }
  return hull;
}

double table_power(const std::vector<SpeedPoint>& table, double speed) {
  for (const auto& p : table)
    if (std::abs(p.speed - speed) <= 1e-9) return p.power;
  throw std::invalid_argument("speed " + std::to_string(speed) + " is not a table entry");
}

std::optional<TwoSpeedProfile> two_speed_for_demand(const std::vector<SpeedPoint>& table,
                                                    double demand) {
  auto pts = sorted_table(table);
  if (demand == 0.0) return std::nullopt;
  if (demand < 0.0) throw std::invalid_argument("negative demand");
  if (demand > pts.back().speed + 1e-12) throw std::domain_error("infeasible demand");
  demand = std::min(demand, pts.back().speed);

  TwoSpeedProfile out;
  if (demand < pts.front().speed) {
    // Below the slowest level: run it long enough and idle for the remainder.
    out.low = out.high = pts.front();
    out.low_fraction = 1.0;
    out.active_fraction = demand / pts.front().speed;
    return out;
  }

  auto hull = lower_hull(pts);
  // Exact hit on a hull vertex: a single-speed profile.
  for (const auto& h : hull) {
    if (std::abs(h.speed - demand) <= 1e-12) {
      out.low = out.high = h;
      out.low_fraction = 1.0;
      return out;
    }
  }
  size_t k = 0;
  while (k + 1 < hull.size() && hull[k + 1].speed < demand) ++k;
  const SpeedPoint edge_lo = hull[k], edge_hi = hull[k + 1];
  SpeedPoint lo = edge_lo, hi = edge_hi;

  // Collinear table points on the hull edge allow narrower brackets with the
  // same cost; prefer the smallest feasible high speed, then the tightest low.
  auto on_edge = [&](const SpeedPoint& p) {
    double t = (p.speed - edge_lo.speed) / (edge_hi.speed - edge_lo.speed);
    double line = edge_lo.power + t * (edge_hi.power - edge_lo.power);
    return std::abs(p.power - line) <= 1e-12 * std::max(1.0, std::abs(line));
  };
  for (const auto& p : pts) {
    if (p.speed <= edge_lo.speed || p.speed >= edge_hi.speed || !on_edge(p)) continue;
    if (p.speed > demand && p.speed < hi.speed) hi = p;
    if (p.speed < demand && p.speed > lo.speed) lo = p;
  }

  out.low = lo;
  out.high = hi;
  out.low_fraction = (hi.speed - demand) / (hi.speed - lo.speed);
  out.active_fraction = 1.0;
  return out;
}

TwoSpeedProfile compress_profile(const std::vector<ProfileSegment>& profile,
                                 const std::vector<SpeedPoint>& table) {
  double total = 0.0, work = 0.0;
  for (const auto& seg : profile) {
    if (seg.duration < 0.0) throw std::invalid_argument("negative segment duration");
    table_power(table, seg.speed);  // membership check
    total += seg.duration;
    work += seg.duration * seg.speed;
  }
  if (total <= 0.0) throw std::invalid_argument("profile has no positive duration");
  double demand = work / total;
  auto prof = two_speed_for_demand(table, demand);
  if (!prof) throw std::invalid_argument("profile carries no work");
  return *prof;
}

double profile_energy(const std::vector<ProfileSegment>& profile,
                      const std::vector<SpeedPoint>& table) {
  double e = 0.0;
  for (const auto& seg : profile) e += seg.duration * table_power(table, seg.speed);
  return e;
}

}  // namespace hetsched
