#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "hypflow/error.hpp"
#include "hypflow/replin.hpp"

namespace hypflow {
namespace {

constexpr int kFitMinLength = 3;

// Key for a matrix up to sign, rounded well above accumulated error.
std::string projective_key(const SquareMatrix& m) {
  double flip = 1.0;
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    if (std::abs(m.data()[i]) > 1e-9) {
      flip = m.data()[i] < 0.0 ? -1.0 : 1.0;
      break;
    }
  }
  std::string key;
  char buf[32];
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    double v = flip * m.data()[i];
    if (std::abs(v) < 5e-8) v = 0.0;
    std::snprintf(buf, sizeof buf, "%.7e;", v);
    key += buf;
  }
  return key;
}

}  // namespace

DominationFit domination_fit(const Representation& rho, const Presentation& p, int radius) {
  if (radius > kDefaultBallCap) throw Error(Errc::RadiusTooLarge, "radius exceeds the ball cap");
  const Ball ball = bfs_ball(p, radius);
  const auto m = static_cast<Eigen::Index>(rho.dimension());

  std::vector<SquareMatrix> images(ball.size());
  images[0] = SquareMatrix::Identity(m, m);
  std::vector<double> xs, ys;
  std::unordered_set<std::string> seen;
  seen.insert(projective_key(images[0]));
  for (std::size_t e = 1; e < ball.size(); ++e) {
    images[e] = images[ball.parent(e)] * rho.image(ball.last_letter(e));
    if (!seen.insert(projective_key(images[e])).second) continue;
    const int n = ball.length(e);
    if (n < kFitMinLength) continue;
    const auto s = singular_values(images[e]);
    xs.push_back(n);
    ys.push_back(std::log(s[0]) - std::log(s[1]));
  }

  DominationFit fit;
  fit.radius = radius;
  fit.points = xs.size();
  if (xs.size() < 2) return fit;
  const double k = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
  mx /= k;
  my /= k;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx <= 0.0) return fit;
  fit.c = sxy / sxx;
  fit.intercept = my - fit.c * mx;
  fit.fit_quality = syy > 0.0 ? sxy * sxy / (sxx * syy) : 0.0;
  // smallest log C with -log(s2/s1) >= c|x| - log C at every point
  fit.log_C = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xs.size(); ++i) fit.log_C = std::max(fit.log_C, fit.c * xs[i] - ys[i]);
  fit.C = std::exp(fit.log_C);
  fit.pass = fit.c > 1e-9 && fit.c * radius - fit.log_C > 0.0;
  return fit;
}

double displacement_identity_check(const Representation& rho, const std::vector<Word>& words) {
  if (rho.dimension() != 2) throw Error(Errc::InvalidArgument, "displacement needs a 2x2 representation");
  double worst = 0.0;
  for (const auto& w : words) {
    Eigen::Matrix2d g = Eigen::Matrix2d::Identity();
    double det = 1.0;
    for (Letter x : w) {
      g = g * rho.image2(x);
      det *= rho.image2(x).determinant();
    }
    const double d = disk_displacement(g, det);
    worst = std::max(worst, std::abs(d - 2.0 * std::log(sigma1_2x2(g))));
  }
  return worst;
}

}  // namespace hypflow
