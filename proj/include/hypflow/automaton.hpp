#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hypflow/words.hpp"

namespace hypflow {

using StateId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  StateId origin;
  StateId target;
  Letter label;

  friend bool operator==(const Edge&, const Edge&) = default;
};

class Automaton {
 public:
  Automaton() = default;
  // Edges are sorted by (origin, label). Throws NondeterministicLabel. An
  // initial state with incoming edges gets a fresh copy spliced in front.
  Automaton(std::string name, std::vector<std::string> generators, std::size_t state_count, StateId initial,
            std::vector<Edge> edges);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& generator_names() const { return generators_; }
  std::size_t state_count() const { return state_count_; }
  StateId initial_state() const { return initial_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  // Outgoing edge ids of a state, in label order.
  std::span<const EdgeId> out_edges(StateId v) const;
  std::optional<EdgeId> step(StateId v, Letter x) const;
  std::optional<StateId> run(std::span<const Letter> w) const;
  bool accepts(std::span<const Letter> w) const { return run(w).has_value(); }

  std::vector<bool> reachable() const;
  // Number of accepted words of each length 0..max_length.
  std::vector<std::uint64_t> path_counts(int max_length) const;

  std::string to_text() const;
  std::string format(Letter x) const;
  std::string format(std::span<const Letter> w) const;

  // Same automaton with labels recoded to the presentation's generator order.
  Automaton relabeled(const Presentation& p) const;

  friend bool operator==(const Automaton&, const Automaton&) = default;

 private:
  std::string name_;
  std::vector<std::string> generators_;
  std::size_t state_count_ = 0;
  StateId initial_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> out_offsets_;
  std::vector<EdgeId> out_ids_;
};

// Throws ParseError, NondeterministicLabel, UnreachableState.
Automaton load_automaton(std::string_view text);
Automaton load_automaton_file(const std::filesystem::path& path);
void save_automaton_file(const Automaton& a, const std::filesystem::path& path);

struct ValidationReport {
  int max_verified_radius = 0;
  bool condition1_ok = false;
  bool condition2_ok = false;
  bool condition3_ok = false;
  std::optional<Word> counterexample;
  std::string detail;
  std::vector<std::uint64_t> path_counts;
  std::vector<std::size_t> sphere_sizes;

  bool ok() const { return condition1_ok && condition2_ok && condition3_ok; }
};

ValidationReport validate(const Automaton& a, const Presentation& p, int radius);

Automaton build_freeproduct_automaton(int p, int q);

// States are classes of normal forms with equal sets of normal-form
// extensions of length <= k.
Automaton build_conetype_automaton(const Presentation& p, int k, int cap = kDefaultBallCap);

}  // namespace hypflow
