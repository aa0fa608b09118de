#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "hypflow/error.hpp"
#include "hypflow/replin.hpp"

namespace hypflow {
namespace {

// Counterclockwise distance from a to b on the projective circle, in [0, pi).
double ccw(double a, double b) {
  double d = std::fmod(b - a, M_PI);
  if (d < 0.0) d += M_PI;
  return d;
}

double wrap(double a) {
  double t = std::fmod(a, M_PI);
  if (t < 0.0) t += M_PI;
  return t;
}

void check_interval(const AngleInterval& i) {
  if (!std::isfinite(i.lo) || !std::isfinite(i.hi) || i.lo < 0.0 || i.lo >= M_PI || i.hi < 0.0 || i.hi > M_PI)
    throw Error(Errc::DegenerateInterval, "interval endpoints must lie in [0, pi)");
  if (i.lo == i.hi) throw Error(Errc::DegenerateInterval, "interval has zero length");
}

AngleInterval image_of(const Eigen::Matrix2d& g, const AngleInterval& i) {
  const double a = projective_image(g, i.lo);
  const double b = projective_image(g, i.hi);
  if (i.length() >= M_PI) return {0.0, M_PI};
  return g.determinant() > 0.0 ? AngleInterval{a, b} : AngleInterval{b, a};
}

// How far `inner` sits inside `outer`; negative when it sticks out.
double inset(const AngleInterval& inner, const AngleInterval& outer) {
  const double off = ccw(outer.lo, inner.lo);
  return std::min(off, outer.length() - off - inner.length());
}

AngleInterval pad(const AngleInterval& i, double delta) {
  if (i.length() + 2 * delta >= M_PI) return {0.0, M_PI};
  return {wrap(i.lo - delta), wrap(i.hi + delta)};
}

// Merge overlapping arcs; returns nullopt once the union covers the circle.
std::optional<std::vector<AngleInterval>> merge(std::vector<AngleInterval> arcs) {
  if (arcs.empty()) return arcs;
  for (const auto& a : arcs)
    if (a.length() >= M_PI) return std::nullopt;
  std::sort(arcs.begin(), arcs.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
  struct Run {
    double lo, len;
  };
  std::vector<Run> runs;
  for (const auto& a : arcs) {
    if (!runs.empty()) {
      auto& r = runs.back();
      const double off = a.lo - r.lo;
      if (off <= r.len) {
        r.len = std::max(r.len, off + a.length());
        continue;
      }
    }
    runs.push_back({a.lo, a.length()});
  }
  // wraparound: the last run may reach past pi into the first ones
  while (runs.size() > 1) {
    auto& last = runs.back();
    auto& first = runs.front();
    const double off = first.lo + M_PI - last.lo;
    if (off > last.len) break;
    last.len = std::max(last.len, off + first.len);
    runs.erase(runs.begin());
  }
  std::vector<AngleInterval> out;
  for (const auto& r : runs) {
    if (r.len >= M_PI) return std::nullopt;
    out.push_back({r.lo, wrap(r.lo + r.len)});
  }
  return out;
}

double attracting_angle(const Eigen::Matrix2d& g) {
  Eigen::EigenSolver<Eigen::Matrix2d> es(g);
  const auto ev = es.eigenvalues();
  const int k = std::abs(ev(0)) >= std::abs(ev(1)) ? 0 : 1;
  const Eigen::Vector2d v = es.eigenvectors().col(k).real();
  return wrap(std::atan2(v(1), v(0)));
}

}  // namespace

double AngleInterval::length() const {
  if (hi > lo) return hi - lo;
  return hi - lo + M_PI;
}

MulticoneReport multicone_check(const Representation& rho, const Multicone& cones, const Automaton& a, double eps) {
  if (rho.dimension() != 2) throw Error(Errc::InvalidArgument, "multicones need a 2x2 representation");
  if (cones.size() != a.state_count()) throw Error(Errc::InvalidArgument, "one cone per state required");
  for (const auto& u : cones)
    for (const auto& i : u) check_interval(i);

  MulticoneReport report;
  report.min_margin = std::numeric_limits<double>::infinity();
  for (EdgeId id = 0; id < a.edges().size(); ++id) {
    const Edge& e = a.edges()[id];
    double edge_margin = std::numeric_limits<double>::infinity();
    for (const auto& i : cones[e.origin]) {
      const AngleInterval img = image_of(rho.image2(e.label), i);
      double best = -std::numeric_limits<double>::infinity();
      for (const auto& j : cones[e.target]) best = std::max(best, inset(img, j));
      edge_margin = std::min(edge_margin, best);
    }
    if (edge_margin < eps) report.violations.push_back(id);
    report.min_margin = std::min(report.min_margin, edge_margin);
  }
  report.pass = report.violations.empty() && std::isfinite(report.min_margin);
  return report;
}

std::optional<Multicone> multicone_search(const Representation& rho, const Automaton& a, double delta,
                                          int max_rounds) {
  if (rho.dimension() != 2) throw Error(Errc::InvalidArgument, "multicones need a 2x2 representation");
  const std::size_t n = a.state_count();
  for (; delta > 1e-5; delta *= 0.5) {
    Multicone seed(n);
    for (const auto& e : a.edges()) {
      const double t = attracting_angle(rho.image2(e.label));
      seed[e.target].push_back({wrap(t - delta), wrap(t + delta)});
    }
    Multicone cur(n);
    bool failed = false;
    for (std::size_t v = 0; v < n && !failed; ++v) {
      auto m = merge(seed[v]);
      if (!m) failed = true;
      else cur[v] = std::move(*m);
    }
    for (int round = 0; round < max_rounds && !failed; ++round) {
      if (multicone_check(rho, cur, a, 1e-6).pass) return cur;
      Multicone next = seed;
      for (const auto& e : a.edges())
        for (const auto& i : cur[e.origin]) next[e.target].push_back(pad(image_of(rho.image2(e.label), i), delta));
      for (std::size_t v = 0; v < n && !failed; ++v) {
        auto m = merge(std::move(next[v]));
        if (!m) failed = true;
        else cur[v] = std::move(*m);
      }
    }
  }
  return std::nullopt;
}

std::string multicone_to_json(const Multicone& cones, const std::string& representation,
                              const std::string& automaton) {
  nlohmann::ordered_json j;
  j["representation"] = representation;
  j["automaton"] = automaton;
  nlohmann::ordered_json states = nlohmann::ordered_json::array();
  for (const auto& u : cones) {
    nlohmann::ordered_json arcs = nlohmann::ordered_json::array();
    for (const auto& i : u) arcs.push_back({i.lo, i.hi});
    states.push_back(arcs);
  }
  j["cones"] = states;
  return j.dump(2);
}

Multicone multicone_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    Multicone out;
    for (const auto& u : j.at("cones")) {
      std::vector<AngleInterval> arcs;
      for (const auto& i : u) arcs.push_back({i.at(0).get<double>(), i.at(1).get<double>()});
      out.push_back(std::move(arcs));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

}  // namespace hypflow
