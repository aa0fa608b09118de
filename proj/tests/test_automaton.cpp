#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <random>
#include <set>

#include "hypflow/automaton.hpp"
#include "hypflow/error.hpp"
#include "hypflow/spectral.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace hypflow;
using testing_support::octagon;
using testing_support::octagon_aut;
using testing_support::z4z6;
using testing_support::z4z6_aut;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::InvalidArgument;
}

// Accepted words up to a length, by walking the automaton.
std::set<Word> language(const Automaton& a, int max_length) {
  std::set<Word> out;
  Word w;
  auto walk = [&](auto&& self, StateId v) -> void {
    out.insert(w);
    if (static_cast<int>(w.size()) == max_length) return;
    for (EdgeId e : a.out_edges(v)) {
      w.push_back(a.edge(e).label);
      self(self, a.edge(e).target);
      w.pop_back();
    }
  };
  walk(walk, a.initial_state());
  return out;
}

}  // namespace

TEST_CASE("bundled automata load") {
  const auto& a = octagon_aut();
  CHECK(a.state_count() == 37);
  CHECK(a.generator_names() == octagon().generator_names());
  const auto& z = z4z6_aut();
  CHECK(z == build_freeproduct_automaton(4, 6));
  CHECK(load_automaton(z.to_text()) == z);
  CHECK(load_automaton(a.to_text()) == a);

  const auto path = std::filesystem::temp_directory_path() / "hypflow_roundtrip.aut";
  save_automaton_file(a, path);
  CHECK(load_automaton_file(path) == a);
  std::filesystem::remove(path);
}

TEST_CASE("determinism and parse errors") {
  const std::string head = "name: t\ngenerators: a\nstates: 2\ninitial: 0\n";
  CHECK(code_of([&] { load_automaton(head + "edge: 0 1 a\nedge: 0 0 a\n"); }) == Errc::NondeterministicLabel);
  CHECK(code_of([&] { load_automaton(head + "edge: 0 0 a\n"); }) == Errc::UnreachableState);
  CHECK(code_of([&] { load_automaton(head + "edge: 0 1 b\n"); }) == Errc::ParseError);
  CHECK(code_of([&] { load_automaton("name: t\nstates: x\n"); }) == Errc::ParseError);
  CHECK(code_of([] { load_automaton_file("/nonexistent/file.aut"); }) == Errc::ParseError);

  for (const Automaton* a : {&octagon_aut(), &z4z6_aut()})
    for (StateId v = 0; v < a->state_count(); ++v) {
      std::set<Letter> labels;
      for (EdgeId e : a->out_edges(v)) CHECK(labels.insert(a->edge(e).label).second);
    }
}

TEST_CASE("an initial state with incoming edges gets a fresh copy") {
  const auto a = load_automaton("name: loop\ngenerators: a\nstates: 1\ninitial: 0\nedge: 0 0 a\n");
  CHECK(a.state_count() == 2);
  for (const auto& e : a.edges()) CHECK(e.target != a.initial_state());
  CHECK(a.path_counts(5) == std::vector<std::uint64_t>{1, 1, 1, 1, 1, 1});
  CHECK(a.accepts(Word{}));
}

TEST_CASE("path counts equal sphere sizes") {
  const auto cannon = oracle::surface_sphere_sizes(2, 8);
  const auto oc = octagon_aut().path_counts(8);
  for (int n = 0; n <= 8; ++n) CHECK(static_cast<long long>(oc[n]) == cannon[n]);

  const auto fp = oracle::free_product_sphere_sizes(4, 6, 8);
  const auto zc = build_freeproduct_automaton(4, 6).path_counts(8);
  CHECK(zc[0] == 1);
  for (int n = 0; n <= 8; ++n) CHECK(static_cast<long long>(zc[n]) == fp[n]);

  const auto dihedral = build_freeproduct_automaton(2, 2).path_counts(10);
  for (int n = 1; n <= 10; ++n) CHECK(dihedral[n] == 2);
  const auto dball = bfs_ball(Presentation::free_product(2, 2), 8).sphere_sizes();
  for (int n = 1; n <= 8; ++n) CHECK(dball[n] == 2);

  CHECK(code_of([] { build_freeproduct_automaton(1, 3); }) == Errc::InvalidOrder);
}

TEST_CASE("accepted words are the shortlex normal forms") {
  const auto words = language(octagon_aut(), 6);
  long long total = 0;
  for (long long x : oracle::surface_sphere_sizes(2, 6)) total += x;
  CHECK(static_cast<long long>(words.size()) == total);
  for (const Word& w : words) {
    CHECK(dehn_reduce(w, octagon()) == w);
  }
  for (const Word& w : language(z4z6_aut(), 8)) {
    CHECK(dehn_reduce(w, z4z6()) == w);
  }
}

TEST_CASE("validate accepts the bundled automata") {
  const auto z = validate(z4z6_aut(), z4z6(), 8);
  INFO(z.detail);
  CHECK(z.ok());
  CHECK(z.max_verified_radius == 8);
  CHECK(z.path_counts.size() == z.sphere_sizes.size());

  const auto o = validate(octagon_aut(), octagon(), 8);
  INFO(o.detail);
  CHECK(o.ok());
  for (std::size_t n = 0; n < o.path_counts.size(); ++n) CHECK(o.path_counts[n] == o.sphere_sizes[n]);
}

TEST_CASE("validate rejects a broken automaton") {
  const auto& z = z4z6_aut();
  auto edges = z.edges();
  edges.erase(edges.begin() + 5);
  const Automaton broken("broken", z.generator_names(), z.state_count(), z.initial_state(), edges);
  const auto r = validate(broken, z4z6(), 6);
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.condition3_ok);
  REQUIRE(r.counterexample.has_value());
  CHECK_FALSE(broken.accepts(*r.counterexample));
}

TEST_CASE("cone-type construction") {
  const auto z = build_conetype_automaton(z4z6(), 4);
  CHECK(language(z, 8) == language(build_freeproduct_automaton(4, 6), 8));
  CHECK(validate(z, z4z6(), 8).ok());

  const auto o = build_conetype_automaton(octagon(), 5);
  CHECK(o.state_count() == 37);
  const auto r = validate(o, octagon(), 7);
  INFO(r.detail);
  CHECK(r.ok());
  const auto comps = scc_decompose(o);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].states.size() == 36);

  // Depth 1 is below the relator half-length, so cone types get merged wrongly.
  const auto shallow = build_conetype_automaton(octagon(), 1);
  CHECK_FALSE(validate(shallow, octagon(), 6).ok());
  CHECK(code_of([] { build_conetype_automaton(octagon(), 0); }) == Errc::InvalidArgument);
}

TEST_CASE("relabeling to the presentation order keeps the language") {
  const auto& a = octagon_aut();
  const auto r = a.relabeled(octagon());
  CHECK(r.path_counts(6) == a.path_counts(6));
  for (const Word& w : language(a, 4)) CHECK(r.accepts(w));
}
