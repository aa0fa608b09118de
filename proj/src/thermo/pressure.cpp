#include <cmath>
#include <limits>

#include <boost/math/tools/roots.hpp>

#include "hypflow/error.hpp"
#include "hypflow/thermo.hpp"

namespace hypflow {

double pressure(const Automaton& a, const Component& c, const EdgePotential& psi) {
  BlockRecoding r(a, c, {psi});
  const double one = 1.0;
  return r.pressure({&one, 1});
}

MarkovChain equilibrium_markov(const Automaton& a, const Component& c, const EdgePotential& psi) {
  const int k = psi.block_length();
  SparseMatrix w;
  if (k == 1) {
    w = c.adjacency;
    for (std::size_t i = 0; i < w.n; ++i)
      for (std::size_t t = w.row_ptr[i]; t < w.row_ptr[i + 1]; ++t) {
        const EdgeId block[1] = {c.edges[w.col[t]]};
        w.val[t] = std::exp(psi(a, block));
      }
  } else {
    const auto paths = block_paths(a, c, k);
    std::map<std::vector<EdgeId>, std::uint32_t> index;
    for (const auto& p : paths) index.emplace(p, static_cast<std::uint32_t>(index.size()));
    std::vector<bool> inside(a.edges().size(), false);
    for (EdgeId e : c.edges) inside[e] = true;
    w.n = paths.size();
    w.row_ptr.assign(1, 0);
    for (const auto& p : paths) {
      std::vector<std::pair<std::uint32_t, double>> row;
      for (EdgeId e : a.out_edges(a.edges()[p.back()].target)) {
        if (!inside[e]) continue;
        std::vector<EdgeId> next(p.begin() + 1, p.end());
        next.push_back(e);
        row.push_back({index.at(next), std::exp(psi(a, next))});
      }
      std::sort(row.begin(), row.end());
      for (const auto& [j, v] : row) {
        w.col.push_back(j);
        w.val.push_back(v);
      }
      w.row_ptr.push_back(w.col.size());
    }
  }
  return markov_from_perron(w, perron(w, c.period));
}

double entropy(const MarkovChain& m) {
  const auto& p = m.transition;
  double h = 0.0;
  for (std::size_t i = 0; i < p.n; ++i)
    for (std::size_t t = p.row_ptr[i]; t < p.row_ptr[i + 1]; ++t)
      if (p.val[t] > 0.0) h -= m.stationary[i] * p.val[t] * std::log(p.val[t]);
  return h;
}

double manhattan_theta(const Automaton& a, const Component& c, const EdgePotential& psi_star, double s) {
  BlockRecoding r(a, c, {psi_star});
  const double coeff = -s;
  return r.pressure({&coeff, 1});
}

ManhattanSolver::ManhattanSolver(const Automaton& a, const Component& c, EdgePotential psi_star, EdgePotential psi)
    : recoding_(a, c, {std::move(psi_star), std::move(psi)}) {}

double ManhattanSolver::theta(double s) {
  auto f = [&](double t) {
    const double coeffs[2] = {-s, -t};
    return recoding_.pressure(coeffs);
  };
  const double width = last_ ? 0.05 : 10.0;
  double lo = last_ ? *last_ - width : -width, hi = last_ ? *last_ + width : width;
  double flo = f(lo), fhi = f(hi);
  for (int i = 0; i < 60 && flo <= 0.0; ++i) {
    hi = lo, fhi = flo;
    lo -= width * std::ldexp(1.0, std::min(i, 30));
    flo = f(lo);
  }
  for (int i = 0; i < 60 && fhi >= 0.0; ++i) {
    lo = hi, flo = fhi;
    hi += width * std::ldexp(1.0, std::min(i, 30));
    fhi = f(hi);
  }
  if (!(flo > 0.0 && fhi < 0.0)) throw Error(Errc::NoBracketing, "pressure does not change sign in t");
  if (flo == 0.0) return last_.emplace(lo);
  std::uintmax_t iters = 100;
  auto tol = [](double x, double y) { return std::abs(y - x) <= 1e-13 * std::max(1.0, std::abs(x)); };
  auto [r0, r1] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
  return last_.emplace(0.5 * (r0 + r1));
}

double ManhattanSolver::derivative_at_zero() {
  auto central = [&](double h) {
    const double up = theta(h);
    const double down = theta(-h);
    return (up - down) / (2.0 * h);
  };
  const double d1 = central(1e-3), d2 = central(1e-4);
  return (100.0 * d2 - d1) / 99.0;
}

double ManhattanSolver::exact_derivative_at_zero() {
  const double t0 = theta(0.0);
  const double coeffs[2] = {0.0, -t0};
  const auto means = recoding_.equilibrium_means(coeffs);
  return -means[0] / means[1];
}

ManhattanValue manhattan_rep(const Automaton& a, const Component& c, const Representation& rho,
                             const Representation& rho_star, double s, int k, bool with_diagnostic) {
  ManhattanValue out;
  out.k = k;
  if (with_diagnostic && k > 1) {
    ManhattanSolver coarse(a, c, rep_potential(rho_star, k - 1), rep_potential(rho, k - 1));
    out.previous = coarse.theta(s);
  }
  ManhattanSolver solver(a, c, rep_potential(rho_star, k), rep_potential(rho, k));
  if (out.previous) solver.hint(*out.previous);
  out.theta = solver.theta(s);
  return out;
}

}  // namespace hypflow
