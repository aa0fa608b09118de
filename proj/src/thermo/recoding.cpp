#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

#include "hypflow/error.hpp"
#include "hypflow/thermo.hpp"

namespace hypflow {
namespace {

// Flat transition list; values holds feature_count entries per transition.
struct Transitions {
  std::size_t feature_count = 0;
  std::vector<std::uint32_t> from, to;
  std::vector<double> values;

  void add(std::uint32_t f, std::uint32_t t, std::span<const double> v) {
    from.push_back(f);
    to.push_back(t);
    values.insert(values.end(), v.begin(), v.end());
  }
};

SparseMatrix to_csr(std::size_t n, const Transitions& ts, std::vector<std::vector<double>>& features) {
  const std::size_t m = ts.from.size(), nf = ts.feature_count;
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return ts.from[x] < ts.from[y]; });
  SparseMatrix g;
  g.n = n;
  g.row_ptr.assign(n + 1, 0);
  g.col.reserve(m);
  g.val.assign(m, 1.0);
  features.assign(nf, std::vector<double>(m));
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t t = order[j];
    ++g.row_ptr[ts.from[t] + 1];
    g.col.push_back(ts.to[t]);
    for (std::size_t i = 0; i < nf; ++i) features[i][j] = ts.values[t * nf + i];
  }
  for (std::size_t i = 0; i < n; ++i) g.row_ptr[i + 1] += g.row_ptr[i];
  return g;
}

void guard(std::size_t count) {
  if (count > kMaxRecodedBlocks) throw Error(Errc::MemoryGuard, "block recoding exceeds the size limit");
}

}  // namespace

BlockRecoding::BlockRecoding(const Automaton& a, const Component& c, std::vector<EdgePotential> features) {
  if (features.empty()) throw Error(Errc::InvalidArgument, "no potentials given");
  bool labels = true;
  for (const auto& f : features) {
    k_ = std::max(k_, f.block_length());
    labels = labels && f.label_only();
  }
  const std::size_t nf = features.size();
  std::vector<bool> inside(a.edges().size(), false);
  for (EdgeId e : c.edges) inside[e] = true;

  auto values_for_labels = [&](const Word& w) {
    std::vector<double> v(nf);
    for (std::size_t i = 0; i < nf; ++i)
      v[i] = features[i].of_labels(std::span<const Letter>(w).last(static_cast<std::size_t>(features[i].block_length())));
    return v;
  };

  Transitions ts;
  ts.feature_count = nf;
  std::size_t nodes = 0;
  if (k_ == 1) {
    // states of c, one transition per edge
    std::unordered_map<StateId, std::uint32_t> index;
    for (StateId v : c.states) index.emplace(v, static_cast<std::uint32_t>(index.size()));
    nodes = index.size();
    for (EdgeId e : c.edges) {
      const Edge& ed = a.edges()[e];
      std::vector<double> v(nf);
      const EdgeId block[1] = {e};
      for (std::size_t i = 0; i < nf; ++i) v[i] = features[i](a, block);
      ts.add(index.at(ed.origin), index.at(ed.target), v);
    }
  } else if (labels) {
    // node = (end state, last k-1 labels); label-only potentials cannot tell merged paths apart
    auto key = [](StateId v, std::span<const Letter> w) {
      std::string s(reinterpret_cast<const char*>(&v), sizeof v);
      for (Letter x : w) s.push_back(static_cast<char>(x.code()));
      return s;
    };
    std::vector<std::pair<StateId, Word>> level;
    for (StateId v : c.states) level.push_back({v, {}});
    for (int j = 1; j < k_; ++j) {
      std::unordered_map<std::string, std::size_t> seen;
      std::vector<std::pair<StateId, Word>> next;
      for (const auto& [v, w] : level)
        for (EdgeId e : a.out_edges(v)) {
          if (!inside[e]) continue;
          Word w2 = w;
          w2.push_back(a.edges()[e].label);
          if (seen.emplace(key(a.edges()[e].target, w2), next.size()).second) {
            next.push_back({a.edges()[e].target, std::move(w2)});
            guard(next.size());
          }
        }
      level = std::move(next);
    }
    std::unordered_map<std::string, std::uint32_t> index;
    index.reserve(level.size());
    for (const auto& [v, w] : level) index.emplace(key(v, w), static_cast<std::uint32_t>(index.size()));
    nodes = level.size();
    for (std::uint32_t i = 0; i < level.size(); ++i) {
      const auto& [v, w] = level[i];
      for (EdgeId e : a.out_edges(v)) {
        if (!inside[e]) continue;
        Word block = w;
        block.push_back(a.edges()[e].label);
        const auto to = index.at(key(a.edges()[e].target, std::span<const Letter>(block).subspan(1)));
        ts.add(i, to, values_for_labels(block));
        guard(ts.from.size());
      }
    }
  } else {
    auto paths = block_paths(a, c, k_ - 1);
    std::map<std::vector<EdgeId>, std::uint32_t> index;
    for (const auto& p : paths) index.emplace(p, static_cast<std::uint32_t>(index.size()));
    nodes = paths.size();
    for (std::uint32_t i = 0; i < paths.size(); ++i)
      for (EdgeId e : a.out_edges(a.edges()[paths[i].back()].target)) {
        if (!inside[e]) continue;
        std::vector<EdgeId> block = paths[i];
        block.push_back(e);
        std::vector<double> v(nf);
        for (std::size_t f = 0; f < nf; ++f) v[f] = features[f](a, block);
        const auto to = index.at(std::vector<EdgeId>(block.begin() + 1, block.end()));
        ts.add(i, to, v);
        guard(ts.from.size());
      }
  }
  graph_ = to_csr(nodes, ts, features_);
  if (!is_irreducible(graph_)) throw Error(Errc::NotIrreducible, "recoded graph is not irreducible");
  period_ = matrix_period(graph_, &classes_);
}

void BlockRecoding::fill(std::span<const double> coeffs, double& shift) {
  if (coeffs.size() != features_.size()) throw Error(Errc::InvalidArgument, "one coefficient per potential required");
  const std::size_t m = graph_.nonzeros();
  std::vector<double>& x = graph_.val;
  std::fill(x.begin(), x.end(), 0.0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0.0) continue;
    const auto& f = features_[i];
    for (std::size_t t = 0; t < m; ++t) x[t] += coeffs[i] * f[t];
  }
  shift = *std::max_element(x.begin(), x.end());
  for (auto& v : x) v = std::exp(v - shift);
}

double BlockRecoding::pressure(std::span<const double> coeffs) {
  double shift = 0.0;
  fill(coeffs, shift);
  PerronOptions o;
  o.classes = &classes_;
  o.compute_left = false;
  o.initial_right = warm_right_.empty() ? nullptr : &warm_right_;
  auto d = perron(graph_, period_, o);
  warm_right_ = std::move(d.right);
  return std::log(d.eigenvalue) + shift;
}

std::vector<double> BlockRecoding::equilibrium_means(std::span<const double> coeffs) {
  double shift = 0.0;
  fill(coeffs, shift);
  PerronOptions o;
  o.classes = &classes_;
  o.initial_right = warm_right_.empty() ? nullptr : &warm_right_;
  o.initial_left = warm_left_.empty() ? nullptr : &warm_left_;
  auto d = perron(graph_, period_, o);
  std::vector<double> means(features_.size(), 0.0);
  for (std::size_t u = 0; u < graph_.n; ++u)
    for (std::size_t t = graph_.row_ptr[u]; t < graph_.row_ptr[u + 1]; ++t) {
      const double w = d.left[u] * graph_.val[t] * d.right[graph_.col[t]] / d.eigenvalue;
      for (std::size_t i = 0; i < means.size(); ++i) means[i] += w * features_[i][t];
    }
  warm_right_ = std::move(d.right);
  warm_left_ = std::move(d.left);
  return means;
}

}  // namespace hypflow
