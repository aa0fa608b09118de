#include <algorithm>
#include <cmath>
#include <complex>

#include <boost/math/distributions/chi_squared.hpp>

#include "hypflow/error.hpp"
#include "hypflow/montecarlo.hpp"
#include "montecarlo/parallel.hpp"

namespace hypflow {
namespace {

// Mean and standard error, summed in sample order.
Estimate summarize(const std::vector<double>& xs, std::size_t steps) {
  Estimate e;
  e.n_samples = xs.size();
  e.n_steps = steps;
  long double s = 0.0L;
  for (double x : xs) s += x;
  const long double mean = s / xs.size();
  long double ss = 0.0L;
  for (double x : xs) ss += (x - mean) * (x - mean);
  e.mean = static_cast<double>(mean);
  e.std_error = static_cast<double>(std::sqrt(ss / (xs.size() - 1)) / std::sqrt(static_cast<long double>(xs.size())));
  return e;
}

void need_samples(std::size_t samples) {
  if (samples < 2) throw Error(Errc::InvalidArgument, "at least two samples required");
}

double log_sigma1(const Representation& rho, std::span<const Letter> w) {
  if (rho.dimension() == 2) {
    Product2 p;
    for (Letter x : w) p.multiply_right(rho.image2(x));
    return p.log_sigma1();
  }
  return evaluate(rho, w).log_norm();
}

double disk_angle(const Representation& rho, std::span<const Letter> w) {
  const auto m = evaluate(rho, w).matrix;
  return std::arg(mobius_act(m, 0.0));
}

}  // namespace

Estimate estimate_parry(const MarkovChain& chain, const Automaton& a, const Component& c, std::size_t n,
                        std::size_t samples, const Seed& seed, const std::function<double(const Word&)>& f,
                        unsigned workers) {
  need_samples(samples);
  std::vector<double> xs(samples);
  detail::parallel_for(samples, workers, [&](std::size_t i) {
    Engine g = make_engine(seed, i);
    xs[i] = f(sample_parry_word(chain, a, c, n, g));
  });
  return summarize(xs, n);
}

Estimate estimate_tau_ps(const Representation& rho, const MarkovChain& chain, const Automaton& a,
                         const Component& c, std::size_t n, std::size_t samples, const Seed& seed, unsigned workers) {
  return estimate_parry(
      chain, a, c, n, samples, seed,
      [&](const Word& w) { return log_sigma1(rho, w) / static_cast<double>(n); }, workers);
}

Estimate estimate_escape_rate(const Presentation& p, std::size_t steps, std::size_t samples, const Seed& seed,
                              unsigned workers) {
  need_samples(samples);
  std::vector<double> xs(samples);
  detail::parallel_for(samples, workers, [&](std::size_t i) {
    Engine g = make_engine(seed, i);
    xs[i] = static_cast<double>(srw_endpoint(p, steps, g).size()) / static_cast<double>(steps);
  });
  return summarize(xs, steps);
}

Estimate estimate_tau_harmonic(const Representation& rho, const Presentation& p, std::size_t steps,
                               std::size_t samples, const Seed& seed, unsigned workers) {
  need_samples(samples);
  std::vector<double> xs(samples);
  std::vector<std::size_t> redraws(samples, 0);
  detail::parallel_for(samples, workers, [&](std::size_t i) {
    Engine g = make_engine(seed, i);
    Word w = srw_endpoint(p, steps, g);
    while (w.empty()) {
      ++redraws[i];
      w = srw_endpoint(p, steps, g);
    }
    xs[i] = log_sigma1(rho, w) / static_cast<double>(w.size());
  });
  Estimate e = summarize(xs, steps);
  for (auto r : redraws) e.resampled += r;
  return e;
}

GrowthFit estimate_v_rho(const Representation& rho, const Presentation& p, int radius, double window) {
  if (radius > kDefaultBallCap) throw Error(Errc::RadiusTooLarge, "radius exceeds the ball cap");
  if (window < 1.0) throw Error(Errc::InvalidArgument, "window must be at least 1");
  const Ball ball = bfs_ball(p, radius);
  const auto m = static_cast<Eigen::Index>(rho.dimension());
  std::vector<SquareMatrix> images(ball.size());
  std::vector<double> ell(ball.size(), 0.0);
  images[0] = SquareMatrix::Identity(m, m);
  for (std::size_t e = 1; e < ball.size(); ++e) {
    images[e] = images[ball.parent(e)] * rho.image(ball.last_letter(e));
    ell[e] = std::log(singular_values(images[e]).front());
  }
  // norms beyond the ball are taken to be at least those on the outer sphere
  double outer = INFINITY;
  for (std::size_t e = ball.sphere_begin(radius); e < ball.sphere_end(radius); ++e) outer = std::min(outer, ell[e]);
  GrowthFit fit;
  fit.n_lo = window;
  fit.n_hi = outer - window;
  constexpr double step = 0.25;
  std::vector<double> xs, ys;
  std::sort(ell.begin(), ell.end());
  for (double n = fit.n_lo; n <= fit.n_hi + 1e-12; n += step) {
    const auto lo = std::lower_bound(ell.begin(), ell.end(), n - window);
    const auto hi = std::upper_bound(ell.begin(), ell.end(), n + window);
    const auto count = static_cast<std::size_t>(hi - lo);
    fit.counts.push_back({n, count});
    if (count == 0) continue;
    xs.push_back(n);
    ys.push_back(std::log(static_cast<double>(count)));
  }
  if (xs.size() < 3) throw Error(Errc::InsufficientRange, "log-norms do not cover enough of a range to fit");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
  mx /= xs.size();
  my /= xs.size();
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  fit.slope = sxy / sxx;
  return fit;
}

Histogram angle_histogram(const Representation& rho, Sampler sampler, std::size_t bins, std::size_t steps,
                          std::size_t samples, const Seed& seed, const Presentation& p, const MarkovChain* chain,
                          const Automaton* a, const Component* c, unsigned workers) {
  if (bins < 2) throw Error(Errc::InvalidArgument, "at least two bins required");
  if (rho.dimension() != 2) throw Error(Errc::InvalidArgument, "angles need a 2x2 representation");
  if (sampler == Sampler::Parry && (!chain || !a || !c))
    throw Error(Errc::InvalidArgument, "Parry sampling needs a chain and its component");
  std::vector<std::size_t> which(samples);
  detail::parallel_for(samples, workers, [&](std::size_t i) {
    Engine g = make_engine(seed, i);
    const Word w = sampler == Sampler::Parry ? sample_parry_word(*chain, *a, *c, steps, g) : srw_endpoint(p, steps, g);
    const double t = disk_angle(rho, w);
    const auto b = static_cast<std::size_t>((t + M_PI) / (2.0 * M_PI) * static_cast<double>(bins));
    which[i] = std::min(b, bins - 1);
  });
  Histogram h;
  h.counts.assign(bins, 0);
  for (auto b : which) ++h.counts[b];
  return h;
}

ChiSquared chi_squared_two_sample(const Histogram& x, const Histogram& y) {
  if (x.counts.size() != y.counts.size()) throw Error(Errc::InvalidArgument, "histograms need the same bins");
  double nx = 0, ny = 0;
  for (std::size_t i = 0; i < x.counts.size(); ++i) nx += x.counts[i], ny += y.counts[i];
  if (nx == 0 || ny == 0) throw Error(Errc::InvalidArgument, "empty histogram");
  const double kx = std::sqrt(ny / nx), ky = std::sqrt(nx / ny);
  ChiSquared out;
  std::size_t used = 0;
  for (std::size_t i = 0; i < x.counts.size(); ++i) {
    const double a = x.counts[i], b = y.counts[i];
    if (a + b == 0) continue;
    ++used;
    out.statistic += (kx * a - ky * b) * (kx * a - ky * b) / (a + b);
  }
  out.dof = used > 1 ? used - 1 : 1;
  boost::math::chi_squared dist(static_cast<double>(out.dof));
  out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
  out.quantile99 = boost::math::quantile(dist, 0.99);
  return out;
}

}  // namespace hypflow
