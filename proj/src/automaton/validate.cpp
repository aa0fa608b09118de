#include "hypflow/automaton.hpp"
#include "hypflow/error.hpp"

namespace hypflow {

ValidationReport validate(const Automaton& input, const Presentation& p, int radius) {
  ValidationReport r;
  r.max_verified_radius = radius;
  const Automaton a = input.relabeled(p);

  auto seen = a.reachable();
  r.condition1_ok = true;
  for (std::size_t v = 0; v < seen.size(); ++v) {
    if (!seen[v]) {
      r.condition1_ok = false;
      r.detail += "state " + std::to_string(v) + " unreachable; ";
      break;
    }
  }

  const Ball ball = bfs_ball(p, radius);
  r.sphere_sizes = ball.sphere_sizes();
  r.path_counts = a.path_counts(radius);
  r.condition2_ok = true;
  r.condition3_ok = true;
  std::vector<bool> hit(ball.size(), false);

  struct Frame {
    StateId state;
    std::size_t next;
  };
  std::vector<Frame> stack{{a.initial_state(), 0}};
  Word w;
  auto visit = [&]() {
    const std::size_t n = w.size();
    if (geodesic_length(w, p) != n) {
      if (r.condition2_ok) {
        r.detail += "path word is not geodesic; ";
        if (!r.counterexample) r.counterexample = w;
      }
      r.condition2_ok = false;
    }
    auto e = ball.find(w);
    if (!e || static_cast<std::size_t>(ball.length(*e)) != n) {
      if (r.condition2_ok) r.detail += "path word is not geodesic in the ball; ";
      if (!r.counterexample) r.counterexample = w;
      r.condition2_ok = false;
      return;
    }
    if (hit[*e]) {
      if (r.condition3_ok) r.detail += "two paths reach the same element; ";
      if (!r.counterexample) r.counterexample = w;
      r.condition3_ok = false;
    }
    hit[*e] = true;
  };
  visit();
  while (!stack.empty()) {
    Frame& f = stack.back();
    auto out = a.out_edges(f.state);
    if (w.size() == static_cast<std::size_t>(radius) || f.next == out.size()) {
      stack.pop_back();
      if (!w.empty() && !stack.empty()) w.pop_back();
      continue;
    }
    const Edge& e = a.edge(out[f.next++]);
    w.push_back(e.label);
    stack.push_back({e.target, 0});
    visit();
  }
  for (std::size_t e = 0; e < ball.size(); ++e) {
    if (!hit[e]) {
      if (r.condition3_ok) r.detail += "element of length " + std::to_string(ball.length(e)) + " has no path; ";
      if (!r.counterexample) r.counterexample = ball.word(e);
      r.condition3_ok = false;
      break;
    }
  }
  if (!r.ok() && !r.counterexample) r.counterexample = Word{};
  return r;
}

}  // namespace hypflow
