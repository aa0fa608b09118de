#include <numeric>

#include "hypflow/spectral.hpp"

namespace hypflow {

MarkovChain markov_from_perron(const SparseMatrix& w, const PerronData& d) {
  MarkovChain mc;
  mc.transition = w;
  auto& p = mc.transition;
  for (std::size_t i = 0; i < p.n; ++i) {
    double row = 0.0;
    for (std::size_t k = p.row_ptr[i]; k < p.row_ptr[i + 1]; ++k) {
      p.val[k] = w.val[k] * d.right[p.col[k]] / (d.eigenvalue * d.right[i]);
      row += p.val[k];
    }
    for (std::size_t k = p.row_ptr[i]; k < p.row_ptr[i + 1]; ++k) p.val[k] /= row;
  }
  mc.stationary.resize(p.n);
  for (std::size_t i = 0; i < p.n; ++i) mc.stationary[i] = d.left[i] * d.right[i];
  const double s = std::accumulate(mc.stationary.begin(), mc.stationary.end(), 0.0);
  for (auto& v : mc.stationary) v /= s;
  return mc;
}

MarkovChain parry_chain(const Component& c, const PerronOptions& options) {
  return markov_from_perron(c.adjacency, perron(c.adjacency, c.period, options));
}

}  // namespace hypflow
