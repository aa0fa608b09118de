// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "hypflow/automaton.hpp"
#include "hypflow/montecarlo.hpp"
#include "hypflow/replin.hpp"
#include "hypflow/spectral.hpp"
#include "hypflow/thermo.hpp"
#include "hypflow/words.hpp"
#include "properties.hpp"
#include "support.hpp"

using namespace hypflow;
using testing_support::data;
using testing_support::octagon;
using testing_support::octagon_aut;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int failures = 0;

void report(int id, const std::string& name, const std::function<Verdict()>& check) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = check();
  } catch (const std::exception& e) {
    v = {false, std::string("threw ") + e.what()};
  }
  if (!v.pass) ++failures;
  std::printf("%s %d %s: %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", id, name.c_str(), v.detail.c_str(),
              seconds_since(t0));
  std::fflush(stdout);
}

template <class... T>
std::string fmt(const T&... xs) {
  std::ostringstream s;
  s.precision(8);
  (s << ... << xs);
  return s.str();
}

const Component& octagon_component() {
  static const Component c = maximal_components(octagon_aut()).front();
  return c;
}

const MarkovChain& octagon_chain() {
  static const MarkovChain m = parry_chain(octagon_component());
  return m;
}

Estimate tau_ps() {
  static const Estimate e = estimate_tau_ps(octagon_rep(), octagon_chain(), octagon_aut(), octagon_component(), 1000,
                                            10000, Seed{7, 0});
  return e;
}

Estimate tau_harm() {
  static const Estimate e = estimate_tau_harmonic(octagon_rep(), octagon(), 1000, 10000, Seed{7, 1});
  return e;
}

}  // namespace

int main() {
  report(1, "growth rate", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto a = load_automaton_file(data("octagon.aut"));
    const double v = growth_rate(a);
    const double t = seconds_since(t0);
    return Verdict{std::abs(v - 1.94303) <= 1e-4 && t < 1.0, fmt("v_S = ", v, " in ", t, " s")};
  });

  report(2, "automaton structure", [] {
    const auto& a = octagon_aut();
    const auto comps = scc_decompose(a);
    std::size_t recurrent = 0, size = 0;
    for (const auto& c : comps) {
      if (c.edges.empty()) continue;
      ++recurrent;
      size = c.states.size();
    }
    return Verdict{a.state_count() == 37 && recurrent == 1 && size == 36,
                   fmt(a.state_count(), " states, ", recurrent, " recurrent component(s), size ", size)};
  });

  report(3, "tau_ps", [] {
    const auto e = tau_ps();
    return Verdict{std::abs(e.mean - 1.13837) <= 0.01, fmt("tau_ps = ", e.mean, " +- ", e.std_error)};
  });

  report(4, "tau_harm", [] {
    const auto h = tau_harm();
    const auto p = tau_ps();
    const double sep = std::abs(p.mean - h.mean) / std::hypot(p.std_error, h.std_error);
    return Verdict{std::abs(h.mean - 1.12909) <= 0.01 && sep > 3.0,
                   fmt("tau_harm = ", h.mean, " +- ", h.std_error, ", separation ", sep, " stderr")};
  });

  report(5, "representation growth", [] {
    const auto fit = estimate_v_rho(octagon_rep(), octagon(), 8, 1.5);
    const double v8 =
        manhattan_rep(octagon_aut(), octagon_component(), octagon_rep(), octagon_rep(), 0.0, 8, false).theta;
    return Verdict{std::abs(fit.slope - 2.0) <= 0.2 && std::abs(v8 - 2.0) <= 0.05,
                   fmt("ball slope ", fit.slope, ", k=8 pressure root ", v8)};
  });

  report(6, "displacement identity", [] {
    std::mt19937_64 g(0x5eed);
    std::vector<Word> words;
    for (int i = 0; i < 1000; ++i) words.push_back(testing_support::random_word(8, 1 + g() % 200, g));
    const double worst = displacement_identity_check(octagon_rep(), words);
    return Verdict{worst <= 1e-6, fmt("max deviation ", worst)};
  });

  report(7, "property suite", [] {
    struct Item {
      const char* name;
      std::function<properties::Outcome()> run;
    };
    const Item items[] = {
        {"variational", [] { return properties::variational_principle(); }},
        {"gibbs", [] { return properties::gibbs_bounds(6); }},
        {"manhattan-trivial", [] { return properties::manhattan_trivial(); }},
        {"legendre", [] { return properties::legendre_zero(4); }},
        {"word-problem-octagon", [] { return properties::octagon_word_problem(8); }},
        {"word-problem-z4z6", [] { return properties::z4z6_word_problem(8); }},
        {"k-convergence", [] { return properties::k_convergence(8); }},
    };
    Verdict v{true, ""};
    for (const auto& item : items) {
      const auto o = item.run();
      v.pass = v.pass && o.pass;
      v.detail += fmt(v.detail.empty() ? "" : "; ", item.name, o.pass ? " ok " : " FAILED ", o.value);
      if (!o.pass && !o.detail.empty()) v.detail += " (" + o.detail + ")";
    }
    return v;
  });

  report(8, "domination certificate", [] {
    const auto rho = octagon_rep();
    const auto fit = domination_fit(rho, octagon(), 7);
    const auto found = multicone_search(rho, octagon_aut());
    const auto searched = found ? multicone_check(rho, *found, octagon_aut()) : MulticoneReport{};
    const auto bundled = multicone_check(rho, multicone_from_json(testing_support::read_file(data("octagon.multicone.json"))),
                                         octagon_aut());
    return Verdict{fit.pass && fit.c > 0.0 && searched.pass && bundled.pass && bundled.min_margin > 0.0,
                   fmt("c = ", fit.c, ", log C = ", fit.log_C, ", searched margin ", searched.min_margin,
                       ", bundled margin ", bundled.min_margin)};
  });

  return failures == 0 ? 0 : 1;
}
