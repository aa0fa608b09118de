#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "hypflow/error.hpp"
#include "hypflow/spectral.hpp"
#include "hypflow/thermo.hpp"

namespace hypflow::cli {
namespace {

struct Options {
  std::string automaton = "octagon.aut";
  std::string presentation = "octagon.grp";
  std::string rep = "octagon";
  std::string rep_star;
  std::string potential = "zero";
  std::string out;
  std::string seed;
  std::string name;
  std::string cones;
  std::string sampler = "parry";
  std::string s_grid;
  std::string t_grid;
  std::vector<std::string> extra;
  bool word_metric = false;
  double s = 0.0;
  double window = 1.5;
  int radius = 7;
  int k = 8;
  int p = 4;
  int q = 6;
  int bins = 64;
  int words = 1000;
  int length = 50;
  std::size_t n = 1000;
  std::size_t samples = 10000;
  unsigned workers = 1;
  double tol = 1e-10;
  std::size_t max_iters = 100000;
  bool convergence = false;
};

PerronOptions perron_options(const Options& o) {
  PerronOptions p;
  p.tol = o.tol;
  p.max_iters = o.max_iters;
  return p;
}

void add_perron_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--tol", o.tol, "Perron tolerance")->capture_default_str();
  cmd->add_option("--max-iters", o.max_iters, "power iteration budget")->capture_default_str();
}

Json components_json(const Automaton& a, const PerronOptions& po = {}) {
  Json list = Json::array();
  const auto comps = scc_decompose(a);
  const auto best = maximal_components(a, 1e-8, po);
  for (std::size_t id = 0; id < comps.size(); ++id) {
    const auto& c = comps[id];
    const auto d = perron(c.adjacency, c.period, po);
    Json j;
    j["id"] = id;
    j["states"] = c.states.size();
    j["edges"] = c.edges.size();
    j["period"] = c.period;
    j["perron_root"] = num(d.eigenvalue);
    j["log_perron_root"] = num(std::log(d.eigenvalue));
    bool maximal = false;
    for (const auto& b : best) maximal = maximal || b.edges == c.edges;
    j["maximal"] = maximal;
    list.push_back(j);
  }
  return list;
}

// The automaton relabeled to the presentation, with the representation checked against it.
struct RepSetup {
  Presentation p;
  Automaton a;
  Component c;
  Representation rho;
};

RepSetup rep_setup(Run& run, const Options& o, bool need_automaton) {
  RepSetup s;
  s.p = run.presentation(o.presentation);
  s.rho = run.representation(o.rep);
  if (s.rho.generator_names() != s.p.generator_names())
    throw Error(Errc::InvalidArgument, "representation generators do not match the presentation");
  if (need_automaton) {
    s.a = run.automaton(o.automaton).relabeled(s.p);
    s.c = maximal_components(s.a).front();
  }
  return s;
}

EdgePotential parse_potential(Run& run, const std::string& spec) {
  if (spec == "zero") return EdgePotential::constant(0.0);
  if (spec.starts_with("constant:")) return EdgePotential::constant(std::stod(spec.substr(9)));
  if (spec.starts_with("rep:")) {
    const auto colon = spec.rfind(':');
    if (colon <= 4) throw Error(Errc::InvalidArgument, "expected rep:<name>:<k>");
    return rep_potential(run.representation(spec.substr(4, colon - 4)), std::stoi(spec.substr(colon + 1)));
  }
  if (spec.starts_with("edges:")) {
    std::ifstream in(run.input(spec.substr(6)));
    std::vector<double> w;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line.starts_with("edge")) continue;
      std::istringstream row(line);
      std::size_t id = 0;
      char comma = 0;
      double v = 0;
      if (!(row >> id >> comma >> v) || comma != ',') throw Error(Errc::ParseError, "bad edge weight row: " + line);
      if (w.size() <= id) w.resize(id + 1, NAN);
      w[id] = v;
    }
    return EdgePotential::per_edge(std::move(w));
  }
  throw Error(Errc::InvalidArgument, "unknown potential '" + spec + "'");
}

Json estimate_json(const Estimate& e) {
  Json j;
  j["mean"] = num(e.mean);
  j["stderr"] = num(e.std_error);
  j["n_samples"] = e.n_samples;
  j["n_steps"] = e.n_steps;
  return j;
}

void estimate_csv(const Options& o, const Estimate& e, std::uint64_t seed) {
  if (o.out.empty()) return;
  write_csv(o.out, "mean,stderr,n_samples,n_steps,seed",
            {{fmt(e.mean), fmt(e.std_error), std::to_string(e.n_samples), std::to_string(e.n_steps),
              std::to_string(seed)}});
}

// Manhattan curve setup shared by `manhattan` and `rate-function`.
struct CurveSetup {
  std::unique_ptr<ManhattanSolver> solver;
  std::string mode;
};

CurveSetup curve_setup(Run& run, const Options& o) {
  CurveSetup cs;
  auto p = run.presentation(o.presentation);
  auto a = run.automaton(o.automaton).relabeled(p);
  auto c = maximal_components(a).front();
  if (o.word_metric || !o.extra.empty()) {
    std::vector<Word> extra;
    for (const auto& w : o.extra) extra.push_back(p.parse_word(w));
    cs.solver = std::make_unique<ManhattanSolver>(a, c, word_metric_potential(p, extra, o.k), EdgePotential::constant(1.0));
    cs.mode = "word-metric";
    return cs;
  }
  auto checked = [&](const std::string& spec) {
    auto rho = run.representation(spec);
    if (rho.generator_names() != p.generator_names())
      throw Error(Errc::InvalidArgument, "representation generators do not match the presentation");
    return rho;
  };
  if (run.app->count("--rep") > 0) {
    auto rho = checked(o.rep);
    auto rho_star = o.rep_star.empty() ? rho : checked(o.rep_star);
    cs.solver = std::make_unique<ManhattanSolver>(a, c, rep_potential(rho_star, o.k), rep_potential(rho, o.k));
    cs.mode = "rep-pair";
  } else {
    auto rho_star = checked(o.rep_star.empty() ? o.rep : o.rep_star);
    cs.solver = std::make_unique<ManhattanSolver>(a, c, rep_potential(rho_star, o.k), EdgePotential::constant(1.0));
    cs.mode = "rep-over-word-metric";
  }
  return cs;
}

std::vector<double> s_values(const Options& o) {
  if (!o.s_grid.empty()) return parse_grid(o.s_grid);
  return {o.s};
}

void add_rep_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--rep", o.rep, "representation: octagon, freeproduct:<u> or a JSON file")->capture_default_str();
  cmd->add_option("--presentation", o.presentation, "presentation file")->capture_default_str();
}

void add_sampling_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--n", o.n, "steps per sample")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--samples", o.samples, "number of samples")->capture_default_str()->check(CLI::Range(2ul, 1ul << 40));
  cmd->add_option("--seed", o.seed, "root seed (falls back to HYPFLOW_SEED)");
  cmd->add_option("--workers", o.workers, "sampler threads; 0 uses every core")->capture_default_str();
  cmd->add_option("--out", o.out, "CSV output path");
}

}  // namespace

void register_commands(CLI::App& app, Run& run, std::function<Json()>& action) {
  auto o = std::make_shared<Options>();
  auto bind = [&run, &action](CLI::App* cmd, std::string name, std::function<Json()> f) {
    cmd->callback([&run, &action, cmd, name, f] {
      run.command = name;
      run.app = cmd;
      action = f;
    });
  };

  auto* aut = app.add_subcommand("automaton", "automaton files: validate, inspect, build")->require_subcommand(1);

  o = std::make_shared<Options>();
  auto* validate_cmd = aut->add_subcommand("validate", "check an automaton against a presentation by BFS");
  validate_cmd->add_option("--automaton", o->automaton, "automaton file")->required();
  validate_cmd->add_option("--presentation", o->presentation, "presentation file")->required();
  validate_cmd->add_option("--radius", o->radius, "BFS radius")->capture_default_str();
  bind(validate_cmd, "automaton validate", [&run, o] {
    auto p = run.presentation(o->presentation);
    auto a = run.automaton(o->automaton).relabeled(p);
    auto r = validate(a, p, o->radius);
    Json j;
    j["ok"] = r.ok();
    j["max_verified_radius"] = r.max_verified_radius;
    j["condition1_ok"] = r.condition1_ok;
    j["condition2_ok"] = r.condition2_ok;
    j["condition3_ok"] = r.condition3_ok;
    j["counterexample"] = r.counterexample ? Json(p.format(*r.counterexample)) : Json(nullptr);
    j["detail"] = r.detail;
    j["path_counts"] = r.path_counts;
    j["sphere_sizes"] = r.sphere_sizes;
    if (!r.ok()) throw ValidationFailure{j};
    return j;
  });

  o = std::make_shared<Options>();
  auto* info_cmd = aut->add_subcommand("info", "states, edges and recurrent components");
  info_cmd->add_option("--automaton", o->automaton, "automaton file")->required();
  bind(info_cmd, "automaton info", [&run, o] {
    auto a = run.automaton(o->automaton);
    Json j;
    j["name"] = a.name();
    j["generators"] = a.generator_names();
    j["states"] = a.state_count();
    j["edges"] = a.edge_count();
    j["initial"] = a.initial_state();
    j["components"] = components_json(a);
    return j;
  });

  o = std::make_shared<Options>();
  auto* bfp = aut->add_subcommand("build-freeproduct", "geodesic automaton of Z/p * Z/q");
  bfp->add_option("--p", o->p, "order of s1")->capture_default_str();
  bfp->add_option("--q", o->q, "order of s2")->capture_default_str();
  bfp->add_option("--out", o->out, "output automaton file")->required();
  bind(bfp, "automaton build-freeproduct", [o] {
    auto a = build_freeproduct_automaton(o->p, o->q);
    save_automaton_file(a, o->out);
    Json j;
    j["name"] = a.name();
    j["states"] = a.state_count();
    j["edges"] = a.edge_count();
    j["out"] = o->out;
    return j;
  });

  o = std::make_shared<Options>();
  auto* bct = aut->add_subcommand("build-conetype", "cone-type geodesic automaton from a presentation");
  bct->add_option("--presentation", o->presentation, "presentation file")->required();
  bct->add_option("--k", o->k, "extension depth used to separate cone types")->capture_default_str();
  bct->add_option("--name", o->name, "automaton name");
  bct->add_option("--out", o->out, "output automaton file")->required();
  bind(bct, "automaton build-conetype", [&run, o] {
    auto p = run.presentation(o->presentation);
    auto a = build_conetype_automaton(p, o->k);
    if (!o->name.empty()) a = Automaton(o->name, a.generator_names(), a.state_count(), a.initial_state(), a.edges());
    save_automaton_file(a, o->out);
    Json j;
    j["name"] = a.name();
    j["states"] = a.state_count();
    j["edges"] = a.edge_count();
    j["components"] = components_json(a);
    j["out"] = o->out;
    return j;
  });

  o = std::make_shared<Options>();
  auto* growth_cmd = app.add_subcommand("growth", "exponential growth rate of the accepted language");
  growth_cmd->add_option("--automaton", o->automaton, "automaton file")->capture_default_str();
  add_perron_options(growth_cmd, *o);
  bind(growth_cmd, "growth", [&run, o] {
    auto a = run.automaton(o->automaton);
    const auto t0 = std::chrono::steady_clock::now();
    const double v = growth_rate(a, perron_options(*o));
    Json j;
    j["growth_rate"] = num(v);
    j["perron_root"] = num(std::exp(v));
    j["seconds"] = num(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return j;
  });

  o = std::make_shared<Options>();
  auto* comp_cmd = app.add_subcommand("components", "strongly connected components and their periods");
  comp_cmd->add_option("--automaton", o->automaton, "automaton file")->capture_default_str();
  add_perron_options(comp_cmd, *o);
  bind(comp_cmd, "components", [&run, o] {
    Json j;
    j["components"] = components_json(run.automaton(o->automaton), perron_options(*o));
    return j;
  });

  o = std::make_shared<Options>();
  auto* ps_cmd = app.add_subcommand("parry-sample", "geodesic words from the Parry chain");
  ps_cmd->add_option("--automaton", o->automaton, "automaton file")->capture_default_str();
  add_sampling_options(ps_cmd, *o);
  bind(ps_cmd, "parry-sample", [&run, o] {
    auto a = run.automaton(o->automaton);
    auto c = maximal_components(a).front();
    auto chain = parry_chain(c);
    const Seed seed{seed_value(o->seed), 0};
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < o->samples; ++i) {
      Engine g = make_engine(seed, i);
      rows.push_back({std::to_string(i), a.format(sample_parry_word(chain, a, c, o->n, g))});
    }
    if (!o->out.empty()) write_csv(o->out, "index,word", rows);
    Json j;
    j["samples"] = o->samples;
    j["length"] = o->n;
    j["first"] = rows.empty() ? "" : rows.front()[1];
    j["out"] = o->out;
    return j;
  });

  o = std::make_shared<Options>();
  auto* pr_cmd = app.add_subcommand("pressure", "pressure, equilibrium entropy and mean of a potential");
  pr_cmd->add_option("--automaton", o->automaton, "automaton file")->capture_default_str();
  pr_cmd->add_option("--presentation", o->presentation, "presentation used to relabel the automaton")
      ->capture_default_str();
  pr_cmd->add_option("--potential", o->potential, "zero | constant:<c> | rep:<name>:<k> | edges:<csv>")
      ->capture_default_str();
  bind(pr_cmd, "pressure", [&run, o] {
    auto p = run.presentation(o->presentation);
    auto a = run.automaton(o->automaton).relabeled(p);
    auto c = maximal_components(a).front();
    auto psi = parse_potential(run, o->potential);
    BlockRecoding r(a, c, {psi});
    const double one = 1.0;
    const double pr = r.pressure({&one, 1});
    const double mean = r.equilibrium_means({&one, 1})[0];
    Json j;
    j["pressure"] = num(pr);
    j["mean"] = num(mean);
    j["entropy"] = num(pr - mean);
    j["block_length"] = psi.block_length();
    j["blocks"] = r.block_count();
    if (psi.block_length() <= 3) {
      const auto mc = equilibrium_markov(a, c, psi);
      const double h = entropy(mc);
      j["entropy_from_chain"] = num(h);
      j["variational_gap"] = num(pr - h - mean);
    }
    return j;
  });

  o = std::make_shared<Options>();
  auto* mh_cmd = app.add_subcommand("manhattan", "Manhattan curve theta(s) for a pair of length functions");
  mh_cmd->add_option("--automaton", o->automaton, "automaton file")->capture_default_str();
  mh_cmd->add_option("--presentation", o->presentation, "presentation file")->capture_default_str();
  mh_cmd->add_option("--rep", o->rep, "rep-pair mode: the representation in the t slot");
  mh_cmd->add_option("--rep-star", o->rep_star, "representation in the s slot (defaults to --rep)");
  mh_cmd->add_flag("--word-metric", o->word_metric, "compare the word metric with an enlarged generating set");
  mh_cmd->add_option("--extra", o->extra, "extra generators for --word-metric, as words");
  mh_cmd->add_option("--s", o->s, "single s value")->capture_default_str();
  mh_cmd->add_option("--s-grid", o->s_grid, "lo:hi:count");
  mh_cmd->add_option("--k", o->k, "block length")->capture_default_str()->check(CLI::Range(1, 12));
  mh_cmd->add_option("--out", o->out, "CSV output path (s,theta)");
  mh_cmd->add_flag("--convergence", o->convergence, "also solve at k - 1 and report the largest change");
  bind(mh_cmd, "manhattan", [&run, o] {
    auto cs = curve_setup(run, *o);
    std::vector<std::vector<std::string>> rows;
    Json samples = Json::array();
    PressureCurve curve;
    curve.k_used = o->k;
    for (double s : s_values(*o)) {
      const double th = cs.solver->theta(s);
      curve.samples.push_back({s, th});
      samples.push_back({num(s), num(th)});
      rows.push_back({fmt(s), fmt(th)});
    }
    if (!o->out.empty()) write_csv(o->out, "s,theta", rows);
    Json j;
    j["mode"] = cs.mode;
    j["k_used"] = o->k;
    j["blocks"] = cs.solver->block_count();
    j["samples"] = samples;
    if (curve.samples.size() == 1) j["theta"] = num(curve.samples[0].second);
    j["theta_at_zero"] = num(cs.solver->theta(0.0));
    j["derivative_at_zero"] = num(cs.solver->derivative_at_zero());
    j["exact_derivative_at_zero"] = num(cs.solver->exact_derivative_at_zero());
    if (o->convergence && o->k > 1) {
      Options coarse = *o;
      coarse.k = o->k - 1;
      auto cs2 = curve_setup(run, coarse);
      double worst = 0.0;
      for (const auto& [s, th] : curve.samples) worst = std::max(worst, std::abs(th - cs2.solver->theta(s)));
      j["convergence"] = {{"k_previous", coarse.k}, {"max_difference", num(worst)}};
    }
    if (curve.samples.size() >= 3) {
      bool convex = true;
      try {
        check_convex(curve);
      } catch (const Error&) {
        convex = false;
      }
      j["convex"] = convex;
    }
    return j;
  });

  o = std::make_shared<Options>();
  auto* rf_cmd = app.add_subcommand("rate-function", "Legendre transform of the Manhattan curve");
  rf_cmd->add_option("--automaton", o->automaton, "automaton file")->capture_default_str();
  rf_cmd->add_option("--presentation", o->presentation, "presentation file")->capture_default_str();
  rf_cmd->add_option("--rep", o->rep, "rep-pair mode: the representation in the t slot");
  rf_cmd->add_option("--rep-star", o->rep_star, "representation in the s slot");
  rf_cmd->add_flag("--word-metric", o->word_metric, "compare the word metric with an enlarged generating set");
  rf_cmd->add_option("--extra", o->extra, "extra generators for --word-metric");
  rf_cmd->add_option("--s-grid", o->s_grid, "symmetric lo:hi:count grid")->default_val("-3:3:121");
  rf_cmd->add_option("--t-grid", o->t_grid, "lo:hi:count grid of rates");
  rf_cmd->add_option("--k", o->k, "block length")->default_val(6)->check(CLI::Range(1, 12));
  rf_cmd->add_option("--out", o->out, "CSV output path (t,I)");
  bind(rf_cmd, "rate-function", [&run, o] {
    auto cs = curve_setup(run, *o);
    PressureCurve curve;
    curve.k_used = o->k;
    for (double s : parse_grid(o->s_grid)) curve.samples.push_back({s, cs.solver->theta(s)});
    check_convex(curve);
    curve.derivative_at_zero = cs.solver->derivative_at_zero();
    const double tau = -curve.derivative_at_zero;
    std::vector<double> ts;
    if (o->t_grid.empty()) {
      for (int i = -20; i <= 20; ++i) ts.push_back(tau + 0.005 * i);
    } else {
      ts = parse_grid(o->t_grid);
    }
    auto rate = legendre_rate(curve, ts);
    std::vector<std::vector<std::string>> rows;
    for (const auto& [t, v] : rate.grid) rows.push_back({fmt(t), fmt(v)});
    if (!o->out.empty()) write_csv(o->out, "t,I", rows);
    Json j;
    j["mode"] = cs.mode;
    j["k_used"] = o->k;
    j["derivative_at_zero"] = num(curve.derivative_at_zero);
    j["zero_location"] = num(rate.zero_location);
    double lowest = INFINITY;
    for (const auto& g : rate.grid) lowest = std::min(lowest, g.second);
    j["min_rate"] = num(lowest);
    return j;
  });

  o = std::make_shared<Options>();
  auto* rep = app.add_subcommand("rep", "matrix representations")->require_subcommand(1);

  o = std::make_shared<Options>();
  auto* check_cmd = rep->add_subcommand("check", "relator images, determinants and the displacement identity");
  add_rep_options(check_cmd, *o);
  check_cmd->add_option("--words", o->words, "number of seeded words")->capture_default_str();
  check_cmd->add_option("--length", o->length, "maximal word length")->capture_default_str();
  check_cmd->add_option("--seed", o->seed, "root seed (falls back to HYPFLOW_SEED)");
  bind(check_cmd, "rep check", [&run, o] {
    auto s = rep_setup(run, *o, false);
    const double defect = relator_defect(s.rho, s.p);
    const Seed seed{seed_value(o->seed), 1};
    std::vector<Word> words;
    for (int i = 0; i < o->words; ++i) {
      Engine g = make_engine(seed, static_cast<std::uint64_t>(i));
      const auto len = static_cast<std::size_t>(uniform01(g) * o->length);
      Word w;
      for (std::size_t t = 0; t < len; ++t)
        w.push_back(Letter(static_cast<std::uint16_t>(uniform01(g) * s.p.letter_count())));
      words.push_back(std::move(w));
    }
    double det_dev = 0.0;
    for (std::size_t g = 0; g < s.rho.generator_count(); ++g)
      det_dev = std::max(det_dev, std::abs(s.rho.image(Letter::generator(g)).determinant() - 1.0));
    Json j;
    j["representation"] = s.rho.name();
    j["relator_defect"] = num(defect);
    j["max_det_deviation"] = num(det_dev);
    const bool two = s.rho.dimension() == 2;
    const double disp = two ? displacement_identity_check(s.rho, words) : 0.0;
    if (two) j["displacement_deviation"] = num(disp);
    j["ok"] = defect <= 1e-9 && disp <= 1e-6;
    if (!j["ok"].get<bool>()) throw ValidationFailure{j};
    return j;
  });

  o = std::make_shared<Options>();
  auto* dom_cmd = rep->add_subcommand("domination", "singular value gap fit over a ball");
  add_rep_options(dom_cmd, *o);
  dom_cmd->add_option("--radius", o->radius, "ball radius")->capture_default_str();
  bind(dom_cmd, "rep domination", [&run, o] {
    auto s = rep_setup(run, *o, false);
    auto f = domination_fit(s.rho, s.p, o->radius);
    Json j;
    j["c"] = num(f.c);
    j["C"] = num(f.C);
    j["log_C"] = num(f.log_C);
    j["fit_quality"] = num(f.fit_quality);
    j["points"] = f.points;
    j["radius"] = f.radius;
    j["pass"] = f.pass;
    if (!f.pass) throw ValidationFailure{j};
    return j;
  });

  o = std::make_shared<Options>();
  auto* mc_cmd = rep->add_subcommand("multicone", "search for or verify a strictly invariant multicone family");
  add_rep_options(mc_cmd, *o);
  mc_cmd->add_option("--automaton", o->automaton, "automaton file")->capture_default_str();
  mc_cmd->add_option("--cones", o->cones, "multicone JSON to verify; searched for when absent");
  mc_cmd->add_option("--out", o->out, "write the multicone family found by the search");
  bind(mc_cmd, "rep multicone", [&run, o] {
    auto s = rep_setup(run, *o, true);
    Multicone cones;
    Json j;
    if (!o->cones.empty()) {
      std::ifstream in(run.input(o->cones));
      std::stringstream ss;
      ss << in.rdbuf();
      cones = multicone_from_json(ss.str());
      j["source"] = o->cones;
    } else {
      auto found = multicone_search(s.rho, s.a);
      if (!found) {
        j["pass"] = false;
        j["detail"] = "search did not converge";
        throw ValidationFailure{j};
      }
      cones = *found;
      j["source"] = "search";
      if (!o->out.empty()) std::ofstream(o->out) << multicone_to_json(cones, s.rho.name(), s.a.name()) << '\n';
    }
    auto r = multicone_check(s.rho, cones, s.a);
    std::size_t arcs = 0;
    for (const auto& u : cones) arcs += u.size();
    j["pass"] = r.pass;
    j["min_margin"] = num(r.min_margin);
    j["intervals"] = arcs;
    j["violations"] = r.violations;
    if (!r.pass) throw ValidationFailure{j};
    return j;
  });

  o = std::make_shared<Options>();
  auto* tps = app.add_subcommand("tau-ps", "intersection number along Parry-chain geodesics");
  add_rep_options(tps, *o);
  tps->add_option("--automaton", o->automaton, "automaton file")->capture_default_str();
  add_sampling_options(tps, *o);
  bind(tps, "tau-ps", [&run, o] {
    auto s = rep_setup(run, *o, true);
    auto chain = parry_chain(s.c);
    const std::uint64_t seed = seed_value(o->seed);
    auto e = estimate_tau_ps(s.rho, chain, s.a, s.c, o->n, o->samples, Seed{seed, 0}, o->workers);
    estimate_csv(*o, e, seed);
    return estimate_json(e);
  });

  o = std::make_shared<Options>();
  auto* th = app.add_subcommand("tau-harmonic", "intersection number along simple random walks");
  add_rep_options(th, *o);
  add_sampling_options(th, *o);
  bind(th, "tau-harmonic", [&run, o] {
    auto s = rep_setup(run, *o, false);
    const std::uint64_t seed = seed_value(o->seed);
    auto e = estimate_tau_harmonic(s.rho, s.p, o->n, o->samples, Seed{seed, 0}, o->workers);
    estimate_csv(*o, e, seed);
    Json j = estimate_json(e);
    j["resampled"] = e.resampled;
    return j;
  });

  o = std::make_shared<Options>();
  auto* vr = app.add_subcommand("v-rho", "growth rate of log-norms by counting over a ball");
  add_rep_options(vr, *o);
  vr->add_option("--radius", o->radius, "ball radius")->default_val(8);
  vr->add_option("--window", o->window, "half-width L of the log-norm window")->capture_default_str();
  vr->add_option("--out", o->out, "CSV output path (n,count)");
  bind(vr, "v-rho", [&run, o] {
    auto s = rep_setup(run, *o, false);
    auto f = estimate_v_rho(s.rho, s.p, o->radius, o->window);
    std::vector<std::vector<std::string>> rows;
    for (const auto& [n, cnt] : f.counts) rows.push_back({fmt(n), std::to_string(cnt)});
    if (!o->out.empty()) write_csv(o->out, "n,count", rows);
    Json j;
    j["v_rho"] = num(f.slope);
    j["n_lo"] = num(f.n_lo);
    j["n_hi"] = num(f.n_hi);
    j["points"] = f.counts.size();
    return j;
  });

  o = std::make_shared<Options>();
  auto* hist = app.add_subcommand("histogram", "angles of rho(w).0 in the disk");
  add_rep_options(hist, *o);
  hist->add_option("--automaton", o->automaton, "automaton file")->capture_default_str();
  hist->add_option("--sampler", o->sampler, "parry or srw")->capture_default_str()->check(CLI::IsMember({"parry", "srw"}));
  hist->add_option("--bins", o->bins, "number of bins")->capture_default_str()->check(CLI::Range(2, 1 << 20));
  add_sampling_options(hist, *o);
  bind(hist, "histogram", [&run, o] {
    const bool parry = o->sampler == "parry";
    auto s = rep_setup(run, *o, parry);
    MarkovChain chain;
    if (parry) chain = parry_chain(s.c);
    const std::uint64_t seed = seed_value(o->seed);
    auto h = angle_histogram(s.rho, parry ? Sampler::Parry : Sampler::Srw, static_cast<std::size_t>(o->bins), o->n,
                             o->samples, Seed{seed, 0}, s.p, parry ? &chain : nullptr, parry ? &s.a : nullptr,
                             parry ? &s.c : nullptr, o->workers);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < h.counts.size(); ++i) rows.push_back({fmt(h.bin_left(i)), std::to_string(h.counts[i])});
    if (!o->out.empty()) write_csv(o->out, "bin_left,count", rows);
    Json j;
    j["sampler"] = o->sampler;
    j["bins"] = h.counts.size();
    std::size_t total = 0;
    for (auto cnt : h.counts) total += cnt;
    j["total"] = total;
    j["counts"] = h.counts;
    return j;
  });
}

}  // namespace hypflow::cli
