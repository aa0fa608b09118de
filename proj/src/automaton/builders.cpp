#include <deque>
#include <functional>
#include <map>

#include "hypflow/automaton.hpp"
#include "hypflow/error.hpp"

namespace hypflow {

Automaton build_freeproduct_automaton(int p, int q) {
  if (p < 2 || q < 2) throw Error(Errc::InvalidOrder, "orders must be >= 2");
  const int order[2] = {p, q};
  // Syllable states: x^j for j <= floor(n/2), x^-j for j <= ceil(n/2) - 1.
  int pos_count[2], neg_count[2], pos_base[2], neg_base[2];
  int next = 1;
  for (int g = 0; g < 2; ++g) {
    pos_count[g] = order[g] / 2;
    neg_count[g] = (order[g] + 1) / 2 - 1;
    pos_base[g] = next;
    next += pos_count[g];
    neg_base[g] = next;
    next += neg_count[g];
  }
  std::vector<Edge> edges;
  auto enter = [&](StateId from, int g) {
    edges.push_back({from, static_cast<StateId>(pos_base[g]), Letter::generator(g)});
    if (neg_count[g] > 0) edges.push_back({from, static_cast<StateId>(neg_base[g]), Letter::generator(g, true)});
  };
  enter(0, 0);
  enter(0, 1);
  for (int g = 0; g < 2; ++g) {
    for (int j = 0; j < pos_count[g]; ++j) {
      auto v = static_cast<StateId>(pos_base[g] + j);
      if (j + 1 < pos_count[g]) edges.push_back({v, v + 1, Letter::generator(g)});
      enter(v, 1 - g);
    }
    for (int j = 0; j < neg_count[g]; ++j) {
      auto v = static_cast<StateId>(neg_base[g] + j);
      if (j + 1 < neg_count[g]) edges.push_back({v, v + 1, Letter::generator(g, true)});
      enter(v, 1 - g);
    }
  }
  return Automaton("z" + std::to_string(p) + "z" + std::to_string(q), {"s1", "s2"}, static_cast<std::size_t>(next), 0,
                   std::move(edges));
}

Automaton build_conetype_automaton(const Presentation& p, int k, int cap) {
  if (k > cap) throw Error(Errc::RadiusTooLarge, "cone depth exceeds cap");
  if (k < 1) throw Error(Errc::InvalidArgument, "cone depth must be >= 1");
  const auto letters = p.letter_count();
  auto is_normal = [&](const Word& w) { return dehn_reduce(w, p) == w; };

  std::function<void(Word&, int, std::string&)> extend = [&](Word& w, int depth, std::string& sig) {
    for (std::size_t c = 0; c < letters; ++c) {
      Letter x(static_cast<std::uint16_t>(c));
      if (!w.empty() && w.back() == x.inverse()) continue;
      w.push_back(x);
      if (is_normal(w)) {
        sig += static_cast<char>('A' + c);
        if (depth + 1 < k) extend(w, depth + 1, sig);
        sig += '.';
      }
      w.pop_back();
    }
  };
  auto signature = [&](Word w) {
    std::string sig;
    extend(w, 0, sig);
    return sig;
  };

  std::map<std::string, StateId> types;
  std::vector<Word> reps{Word{}};
  types.emplace(signature(Word{}), 0);
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < reps.size(); ++v) {
    for (std::size_t c = 0; c < letters; ++c) {
      Letter x(static_cast<std::uint16_t>(c));
      Word u = reps[v];
      u.push_back(x);
      if (!is_normal(u)) continue;
      auto [it, fresh] = types.emplace(signature(u), static_cast<StateId>(reps.size()));
      if (fresh) reps.push_back(u);
      edges.push_back({static_cast<StateId>(v), it->second, x});
    }
  }
  return Automaton("conetype", p.generator_names(), reps.size(), 0, std::move(edges));
}

}  // namespace hypflow
