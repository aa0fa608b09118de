#include <algorithm>

#include "hypflow/error.hpp"
#include "hypflow/montecarlo.hpp"

namespace hypflow {
namespace {

std::size_t pick(const std::vector<double>& cumulative, double u) {
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u * cumulative.back());
  return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

}  // namespace

Word sample_parry_word(const MarkovChain& chain, const Automaton& a, const Component& c, std::size_t n, Engine& g) {
  if (n < 1) throw Error(Errc::InvalidArgument, "word length must be at least 1");
  const auto& p = chain.transition;
  if (p.n != c.edges.size()) throw Error(Errc::InvalidArgument, "chain does not match the component");
  std::vector<double> cum(chain.stationary.size());
  double run = 0.0;
  for (std::size_t i = 0; i < cum.size(); ++i) cum[i] = run += chain.stationary[i];
  std::size_t e = pick(cum, uniform01(g));
  Word w;
  w.reserve(n);
  w.push_back(a.edges()[c.edges[e]].label);
  while (w.size() < n) {
    double u = uniform01(g);
    std::size_t t = p.row_ptr[e];
    const std::size_t end = p.row_ptr[e + 1];
    for (; t + 1 < end; ++t) {
      if (u < p.val[t]) break;
      u -= p.val[t];
    }
    e = p.col[t];
    w.push_back(a.edges()[c.edges[e]].label);
  }
  return w;
}

Word sample_parry_word(const MarkovChain& chain, const Automaton& a, const Component& c, std::size_t n,
                       const Seed& seed) {
  Engine g = make_engine(seed, 0);
  return sample_parry_word(chain, a, c, n, g);
}

Word srw_endpoint(const Presentation& p, std::size_t steps, Engine& g) {
  if (steps < 1) throw Error(Errc::InvalidArgument, "walk needs at least one step");
  p.engine();
  const auto letters = static_cast<double>(p.letter_count());
  Word w;
  for (std::size_t i = 0; i < steps; ++i) {
    const auto code = static_cast<std::uint16_t>(std::min(uniform01(g) * letters, letters - 1));
    multiply_normal_in_place(w, Letter(code), p);
  }
  return w;
}

Word srw_endpoint(const Presentation& p, std::size_t steps, const Seed& seed) {
  Engine g = make_engine(seed, 0);
  return srw_endpoint(p, steps, g);
}

}  // namespace hypflow
