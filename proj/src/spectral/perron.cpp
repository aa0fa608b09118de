#include <algorithm>
#include <cmath>
#include <numeric>

#include "hypflow/error.hpp"
#include "hypflow/spectral.hpp"

namespace hypflow {
namespace {

struct Solve {
  double eigenvalue;
  std::vector<double> vec;
  std::size_t iterations;
};

// Power iteration for m^period restricted to cyclic class 0, then the vector
// is spread over the other classes with h = sum_j rho^-j m^j x.
Solve solve(const SparseMatrix& m, int period, const std::vector<int>& classes, const std::vector<double>* start,
            const PerronOptions& options, std::vector<double>* history) {
  const std::size_t n = m.n;
  std::vector<double> x(n, 0.0), y(n), prev(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (classes[i] != 0) continue;
    x[i] = start && start->size() == n && (*start)[i] > 0.0 ? (*start)[i] : 1.0;
  }
  const double target = std::max(options.tol * 1e-2, 4e-16);
  double rho_p = 0.0;
  std::size_t it = 0;
  for (;;) {
    if (it >= options.max_iters) throw Error(Errc::NoConvergence, "power iteration budget exhausted");
    ++it;
    prev = x;
    for (int k = 0; k < period; ++k) {
      m.multiply(x.data(), y.data());
      x.swap(y);
    }
    double lo = INFINITY, hi = 0.0, top = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (classes[i] != 0) continue;
      if (!(x[i] > 0.0)) throw Error(Errc::NotIrreducible, "iterate lost positivity");
      double r = x[i] / prev[i];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      top = std::max(top, x[i]);
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = classes[i] == 0 ? x[i] / top : 0.0;
    rho_p = 0.5 * (lo + hi);
    const double gap = (hi - lo) / hi;
    if (history) history->push_back(gap);
    if (gap <= target) break;
  }
  const double rho = std::pow(rho_p, 1.0 / period);
  std::vector<double> h = x, cur = x;
  for (int j = 1; j < period; ++j) {
    m.multiply(cur.data(), y.data());
    for (std::size_t i = 0; i < n; ++i) {
      cur[i] = y[i] / rho;
      h[i] += cur[i];
    }
  }
  return {rho, std::move(h), it};
}

}  // namespace

PerronData perron(const SparseMatrix& m, int period, const PerronOptions& options) {
  std::vector<int> own;
  if (!options.classes) {
    if (!is_irreducible(m)) throw Error(Errc::NotIrreducible, "matrix is not irreducible");
    const int p = matrix_period(m, &own);
    if (period < 1) period = p;
    if (p % period != 0 && period % p != 0) throw Error(Errc::InvalidArgument, "period does not match the matrix");
    period = p;
  }
  const std::vector<int>& classes = options.classes ? *options.classes : own;

  PerronData d;
  auto right = solve(m, period, classes, options.initial_right, options, options.record_history ? &d.history : nullptr);
  d.eigenvalue = right.eigenvalue;
  d.iterations = right.iterations;
  d.right = std::move(right.vec);
  const double sr = std::accumulate(d.right.begin(), d.right.end(), 0.0);
  for (auto& v : d.right) v /= sr;
  if (options.compute_left) {
    const SparseMatrix t = m.transposed();
    auto left = solve(t, period, classes, options.initial_left, options, nullptr);
    d.iterations += left.iterations;
    d.left = std::move(left.vec);
    double dot = 0.0;
    for (std::size_t i = 0; i < m.n; ++i) dot += d.left[i] * d.right[i];
    for (auto& v : d.left) v /= dot;
  }
  std::vector<double> y(m.n);
  m.multiply(d.right.data(), y.data());
  d.residual = 0.0;
  for (std::size_t i = 0; i < m.n; ++i) d.residual = std::max(d.residual, std::abs(y[i] - d.eigenvalue * d.right[i]));
  return d;
}

double growth_rate(const Automaton& a, const PerronOptions& options) {
  auto comps = scc_decompose(a);
  if (comps.empty()) throw Error(Errc::NoCycles, "automaton graph has no cycles");
  double best = 0.0;
  for (const auto& c : comps) best = std::max(best, perron(c.adjacency, c.period, options).eigenvalue);
  return std::log(best);
}

std::vector<Component> maximal_components(const Automaton& a, double rel_tol, const PerronOptions& options) {
  auto comps = scc_decompose(a);
  if (comps.empty()) throw Error(Errc::NoCycles, "automaton graph has no cycles");
  std::vector<double> rho;
  for (const auto& c : comps) rho.push_back(perron(c.adjacency, c.period, options).eigenvalue);
  const double best = *std::max_element(rho.begin(), rho.end());
  std::vector<Component> out;
  for (std::size_t i = 0; i < comps.size(); ++i)
    if (rho[i] >= best * (1.0 - rel_tol)) out.push_back(std::move(comps[i]));
  return out;
}

}  // namespace hypflow
