#include <deque>
#include <string>
#include <unordered_map>

#include "hypflow/error.hpp"
#include "hypflow/thermo.hpp"

namespace hypflow {

EdgePotential EdgePotential::constant(double c) {
  return from_labels(1, [c](std::span<const Letter>) { return c; });
}

EdgePotential EdgePotential::per_edge(std::vector<double> weights) {
  EdgePotential p;
  p.per_edge_ = std::move(weights);
  return p;
}

EdgePotential EdgePotential::from_blocks(int k, std::map<std::vector<EdgeId>, double> weights) {
  if (k < 1) throw Error(Errc::InvalidArgument, "block length must be at least 1");
  EdgePotential p;
  p.k_ = k;
  p.blocks_ = std::move(weights);
  return p;
}

EdgePotential EdgePotential::from_labels(int k, LabelFunction f) {
  if (k < 1) throw Error(Errc::InvalidArgument, "block length must be at least 1");
  EdgePotential p;
  p.k_ = k;
  p.labels_ = std::move(f);
  return p;
}

double EdgePotential::operator()(const Automaton& a, std::span<const EdgeId> block) const {
  if (block.size() < static_cast<std::size_t>(k_)) throw Error(Errc::InvalidArgument, "block too short");
  block = block.last(static_cast<std::size_t>(k_));
  if (labels_) {
    Word w;
    for (EdgeId e : block) w.push_back(a.edges()[e].label);
    return labels_(w);
  }
  if (k_ == 1 && !per_edge_.empty()) {
    if (block[0] >= per_edge_.size()) throw Error(Errc::MissingBlockWeight, "no weight for edge");
    return per_edge_[block[0]];
  }
  auto it = blocks_.find(std::vector<EdgeId>(block.begin(), block.end()));
  if (it == blocks_.end()) throw Error(Errc::MissingBlockWeight, "no weight for block");
  return it->second;
}

std::vector<std::vector<EdgeId>> block_paths(const Automaton& a, const Component& c, int len) {
  std::vector<bool> inside(a.edges().size(), false);
  for (EdgeId e : c.edges) inside[e] = true;
  std::vector<std::vector<EdgeId>> level;
  for (EdgeId e : c.edges) level.push_back({e});
  for (int j = 1; j < len; ++j) {
    std::vector<std::vector<EdgeId>> next;
    for (const auto& p : level)
      for (EdgeId e : a.out_edges(a.edges()[p.back()].target)) {
        if (!inside[e]) continue;
        next.push_back(p);
        next.back().push_back(e);
        if (next.size() > kMaxRecodedBlocks) throw Error(Errc::MemoryGuard, "too many blocks");
      }
    level = std::move(next);
  }
  return level;
}

EdgePotential rep_potential(const Representation& rho, int k) {
  auto log_norm = [rho](std::span<const Letter> w) {
    if (rho.dimension() == 2) {
      Product2 p;
      for (Letter x : w) p.multiply_right(rho.image2(x));
      return p.log_sigma1();
    }
    return evaluate(rho, w).log_norm();
  };
  return EdgePotential::from_labels(
      k, [log_norm](std::span<const Letter> w) { return log_norm(w) - log_norm(w.subspan(1)); });
}

namespace {

std::string key_of(std::span<const Letter> w) {
  std::string s;
  for (Letter x : w) s.push_back(static_cast<char>(x.code()));
  return s;
}

}  // namespace

EdgePotential word_metric_potential(const Presentation& p, const std::vector<Word>& extra, int k) {
  p.engine();
  std::vector<Word> gens;
  for (std::size_t c = 0; c < p.letter_count(); ++c) gens.push_back({Letter(static_cast<std::uint16_t>(c))});
  for (const auto& w : extra) {
    gens.push_back(dehn_reduce(w, p));
    gens.push_back(dehn_reduce(inverse(w), p));
  }
  // breadth-first search in the enlarged Cayley graph, elements keyed by normal form
  auto dist = std::make_shared<std::unordered_map<std::string, int>>();
  std::deque<Word> queue{Word{}};
  (*dist)[""] = 0;
  while (!queue.empty()) {
    Word g = std::move(queue.front());
    queue.pop_front();
    const int d = dist->at(key_of(g));
    if (d == k) continue;
    for (const auto& s : gens) {
      Word h = g;
      for (Letter x : s) multiply_normal_in_place(h, x, p);
      auto [it, fresh] = dist->emplace(key_of(h), d + 1);
      if (fresh) queue.push_back(std::move(h));
    }
    if (dist->size() > kMaxRecodedBlocks) throw Error(Errc::MemoryGuard, "enlarged ball too large");
  }
  auto length = [dist, p](std::span<const Letter> w) {
    auto it = dist->find(key_of(dehn_reduce(w, p)));
    if (it == dist->end()) throw Error(Errc::InvalidArgument, "word longer than the block length");
    return static_cast<double>(it->second);
  };
  return EdgePotential::from_labels(
      k, [length](std::span<const Letter> w) { return length(w) - length(w.subspan(1)); });
}

}  // namespace hypflow
