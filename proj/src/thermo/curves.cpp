#include <algorithm>
#include <cmath>
#include <limits>

#include "hypflow/error.hpp"
#include "hypflow/thermo.hpp"

namespace hypflow {

void check_convex(const PressureCurve& curve) {
  const auto& p = curve.samples;
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    const double h1 = p[i].first - p[i - 1].first, h2 = p[i + 1].first - p[i].first;
    const double slope1 = (p[i].second - p[i - 1].second) / h1;
    const double slope2 = (p[i + 1].second - p[i].second) / h2;
    if (slope2 - slope1 < -1e-6) throw Error(Errc::InvalidArgument, "pressure curve is not convex");
  }
}

RateFunction legendre_rate(const PressureCurve& curve, std::span<const double> t_grid, BoundaryPolicy policy) {
  const auto& p = curve.samples;
  if (p.size() < 3) throw Error(Errc::InvalidArgument, "pressure curve needs at least three samples");
  for (std::size_t i = 0; i < p.size(); ++i)
    if (std::abs(p[i].first + p[p.size() - 1 - i].first) > 1e-12)
      throw Error(Errc::InvalidArgument, "s grid must be symmetric");
  const std::size_t n = p.size();
  auto zero = std::find_if(p.begin(), p.end(), [](const auto& q) { return q.first == 0.0; });
  if (zero == p.end()) throw Error(Errc::InvalidArgument, "s grid must contain 0");
  const double theta0 = zero->second;

  RateFunction out;
  double best_i = std::numeric_limits<double>::infinity();
  for (double t : t_grid) {
    // value at grid s_j: t s_j - theta(-s_j), where theta(-s_j) sits at index n-1-j
    auto value = [&](std::size_t j) { return t * p[j].first - p[n - 1 - j].second; };
    std::size_t arg = 0;
    for (std::size_t j = 1; j < n; ++j)
      if (value(j) > value(arg)) arg = j;
    double sup = value(arg);
    if (arg == 0 || arg == n - 1) {
      if (policy == BoundaryPolicy::Throw)
        throw Error(Errc::SupremumOnBoundary, "supremum at the edge of the s grid; widen it");
    } else {
      const double x0 = p[arg - 1].first, x1 = p[arg].first, x2 = p[arg + 1].first;
      const double y0 = value(arg - 1), y1 = sup, y2 = value(arg + 1);
      const double d1 = (y1 - y0) / (x1 - x0), d2 = (y2 - y1) / (x2 - x1);
      const double a = (d2 - d1) / (x2 - x0);
      if (a < 0.0) {
        const double b = d1 - a * (x0 + x1);
        const double xv = std::clamp(-b / (2.0 * a), x0, x2);
        sup = std::max(sup, y0 + (xv - x0) * (d1 + a * (xv - x1)));
      }
    }
    const double rate = sup + theta0;
    out.grid.push_back({t, rate});
    if (std::abs(rate) < best_i) {
      best_i = std::abs(rate);
      out.zero_location = t;
    }
  }
  return out;
}

}  // namespace hypflow
