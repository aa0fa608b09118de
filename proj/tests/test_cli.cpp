#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
  int status = -1;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("hypflow_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the CLI from the data directory; env is a prefix such as "HYPFLOW_SEED=7".
Result run(const std::string& args, const std::string& env = "") {
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = "cd '" + std::string(HYPFLOW_DATA_DIR) + "' && " + env + " '" + HYPFLOW_CLI + "' " + args +
                          " 2>'" + err.string() + "'";
  Result r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err);
  return r;
}

nlohmann::json parse(const Result& r) {
  INFO(r.err);
  return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_CASE("growth") {
  const auto r = run("growth --automaton octagon.aut");
  REQUIRE(r.status == 0);
  const auto j = parse(r);
  CHECK(std::abs(j["growth_rate"].get<double>() - 1.94303) <= 1e-4);
  const auto& m = j["manifest"];
  CHECK(m["command"] == "growth");
  CHECK(m.contains("seed"));
  CHECK(m.contains("version"));
  CHECK(m.contains("wall_clock_seconds"));
  REQUIRE(m["inputs"].size() == 1);
  CHECK(m["inputs"]["octagon.aut"].get<std::string>().size() == 64);

  const auto loose = parse(run("growth --tol 1e-6 --max-iters 500"));
  CHECK(std::abs(loose["growth_rate"].get<double>() - 1.94303) <= 1e-4);
}

TEST_CASE("automaton commands") {
  auto r = run("automaton validate --automaton z4z6.aut --presentation z4z6.grp --radius 8");
  CHECK(r.status == 0);
  CHECK(parse(r)["ok"] == true);

  r = run("automaton info --automaton octagon.aut");
  REQUIRE(r.status == 0);
  auto j = parse(r);
  CHECK(j["states"] == 37);
  CHECK(j["components"].size() == 1);
  CHECK(j["components"][0]["states"] == 36);

  const auto out = scratch() / "z.aut";
  r = run("automaton build-freeproduct --p 4 --q 6 --out '" + out.string() + "'");
  CHECK(r.status == 0);
  CHECK(slurp(out) == slurp(fs::path(HYPFLOW_DATA_DIR) / "z4z6.aut"));

  // A deleted edge breaks the bijection with the sphere.
  std::string text = slurp(fs::path(HYPFLOW_DATA_DIR) / "z4z6.aut");
  const std::string edge = "edge: 0 4 s2\n";
  const auto cut = text.find(edge);
  REQUIRE(cut != std::string::npos);
  text.erase(cut, edge.size());
  std::ofstream(scratch() / "broken.aut") << text;
  r = run("automaton validate --automaton '" + (scratch() / "broken.aut").string() + "' --presentation z4z6.grp --radius 5");
  CHECK(r.status == 2);
  CHECK(parse(r)["ok"] == false);
}

TEST_CASE("exit codes and diagnostics") {
  auto r = run("growth --no-such-flag");
  CHECK(r.status == 1);
  CHECK(r.out.empty());
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);

  r = run("no-such-command");
  CHECK(r.status == 1);

  r = run("growth --automaton /nonexistent.aut");
  CHECK(r.status == 1);
  CHECK(r.err.find("not found") != std::string::npos);

  r = run("rep domination --rep freeproduct:0 --presentation z4z6.grp --radius 6");
  CHECK(r.status == 2);
  CHECK(parse(r)["pass"] == false);

  r = run("v-rho --rep freeproduct:0 --presentation z4z6.grp --radius 6");
  CHECK(r.status == 1);
  CHECK(r.err.find("InsufficientRange") != std::string::npos);

  for (const char* sub : {"automaton validate", "automaton info", "automaton build-freeproduct",
                          "automaton build-conetype", "growth", "components", "parry-sample", "pressure", "manhattan",
                          "rate-function", "rep check", "rep domination", "rep multicone", "tau-ps", "tau-harmonic",
                          "v-rho", "histogram"}) {
    r = run(std::string(sub) + " --help");
    INFO(sub);
    CHECK(r.status == 0);
    CHECK(r.out.find("Usage") != std::string::npos);
  }
}

TEST_CASE("pressure and manhattan") {
  auto j = parse(run("pressure --potential constant:0.5"));
  CHECK(j["pressure"].get<double>() == doctest::Approx(1.94302538916 + 0.5).epsilon(1e-10));
  j = parse(run("pressure --potential rep:octagon:2"));
  CHECK(std::abs(j["pressure"].get<double>() - j["entropy"].get<double>() - j["mean"].get<double>()) < 1e-8);

  j = parse(run("manhattan --word-metric --s-grid -1:1:5 --k 1"));
  CHECK(j["mode"] == "word-metric");
  for (const auto& p : j["samples"])
    CHECK(p[1].get<double>() == doctest::Approx(1.94302538916 - p[0].get<double>()).epsilon(1e-9));

  j = parse(run("manhattan --rep octagon --s 0 --k 4 --convergence"));
  CHECK(j["mode"] == "rep-pair");
  CHECK(std::abs(j["theta"].get<double>() - 2.0) < 0.05);
  CHECK(j["convergence"]["k_previous"] == 3);

  const auto csv = scratch() / "rate.csv";
  const auto r = run("rate-function --rep-star octagon --k 3 --out '" + csv.string() + "'");
  REQUIRE(r.status == 0);
  j = parse(r);
  CHECK(slurp(csv).rfind("t,I\n", 0) == 0);
  CHECK(std::abs(j["zero_location"].get<double>() + j["derivative_at_zero"].get<double>()) <= 0.005 + 1e-12);
}

TEST_CASE("representation commands") {
  auto r = run("rep check --rep octagon");
  CHECK(r.status == 0);
  r = run("rep multicone --rep octagon --cones octagon.multicone.json");
  CHECK(r.status == 0);
  const auto j = parse(r);
  CHECK(j["pass"] == true);
  CHECK(j["min_margin"].get<double>() > 0.0);
}

TEST_CASE("sampling commands") {
  auto r = run("tau-ps --rep octagon --n 1000 --samples 10000 --seed 7");
  REQUIRE(r.status == 0);
  auto j = parse(r);
  CHECK(std::abs(j["mean"].get<double>() - 1.13837) <= 0.01);
  CHECK(j["manifest"]["seed"] == 7);

  // The seed falls back to the environment; the worker count does not matter.
  const auto a = parse(run("tau-ps --n 100 --samples 200 --seed 7"));
  const auto b = parse(run("tau-ps --n 100 --samples 200 --workers 3", "HYPFLOW_SEED=7"));
  CHECK(a["mean"] == b["mean"]);
  CHECK(a["stderr"] == b["stderr"]);
  CHECK(b["manifest"]["seed"] == 7);

  j = parse(run("parry-sample --n 12 --samples 3 --seed 2"));
  CHECK(j["samples"] == 3);
  const auto first = j["first"].get<std::string>();
  CHECK(std::count(first.begin(), first.end(), ' ') == 11);
}

TEST_CASE("identical runs write identical CSV") {
  for (const std::string cmd : {"histogram --sampler srw --n 200 --samples 500 --bins 16 --seed 3",
                                "tau-harmonic --n 200 --samples 300 --seed 3",
                                "manhattan --rep octagon --s-grid -1:1:9 --k 2"}) {
    const auto x = scratch() / "x.csv", y = scratch() / "y.csv";
    REQUIRE(run(cmd + " --out '" + x.string() + "'").status == 0);
    REQUIRE(run(cmd + " --workers 2 --out '" + y.string() + "'").status == (cmd.starts_with("manhattan") ? 1 : 0));
    if (cmd.starts_with("manhattan")) REQUIRE(run(cmd + " --out '" + y.string() + "'").status == 0);
    CHECK(!slurp(x).empty());
    CHECK(slurp(x) == slurp(y));
  }
  const auto h = scratch() / "h.csv";
  run("histogram --sampler srw --n 50 --samples 100 --bins 4 --seed 1 --out '" + h.string() + "'");
  CHECK(slurp(h).rfind("bin_left,count\n", 0) == 0);
  const auto t = scratch() / "t.csv";
  run("tau-ps --n 50 --samples 20 --seed 1 --out '" + t.string() + "'");
  CHECK(slurp(t).rfind("mean,stderr,n_samples,n_steps,seed\n", 0) == 0);
}
