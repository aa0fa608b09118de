#include "common.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "hypflow/error.hpp"

namespace hypflow::cli {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(fmt(x));
}

std::filesystem::path resolve_input(const std::string& name) {
  std::filesystem::path p(name);
  if (std::filesystem::exists(p)) return p;
  const char* env = std::getenv("HYPFLOW_DATA_DIR");
  std::filesystem::path dir = env ? env : HYPFLOW_DATA_DIR;
  if (p.is_relative() && std::filesystem::exists(dir / p)) return dir / p;
  throw Error(Errc::InvalidArgument, "input file not found: " + name);
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string data = ss.str();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::filesystem::path Run::input(const std::string& name) {
  auto p = resolve_input(name);
  inputs[p.string()] = sha256_file(p);
  return p;
}

Automaton Run::automaton(const std::string& name) { return load_automaton_file(input(name)); }

Presentation Run::presentation(const std::string& name) { return Presentation::load(input(name)); }

Representation Run::representation(const std::string& spec) {
  if (spec == "octagon" || spec.starts_with("freeproduct")) return representation_by_name(spec);
  return representation_by_name(input(spec).string());
}

Json Run::manifest(std::uint64_t seed) const {
  Json m;
  m["command"] = command;
  m["argv"] = argv;
  Json params = Json::object();
  for (const CLI::Option* opt : app->get_options()) {
    if (opt->get_name() == "--help" || opt->get_name() == "-h") continue;
    const auto& res = opt->results();
    std::string name = opt->get_single_name();
    if (!res.empty()) {
      params[name] = res.size() == 1 ? Json(res[0]) : Json(res);
    } else if (!opt->get_default_str().empty()) {
      params[name] = opt->get_default_str();
    }
  }
  m["parameters"] = params;
  m["seed"] = seed;
  m["version"] = HYPFLOW_VERSION;
  m["inputs"] = inputs;
  m["wall_clock_seconds"] =
      num(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return m;
}

std::uint64_t seed_value(const std::string& flag) {
  std::string text = flag;
  if (text.empty()) {
    const char* env = std::getenv("HYPFLOW_SEED");
    if (!env) return kDefaultSeed;
    text = env;
  }
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used, 0);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::InvalidArgument, "seed must be an unsigned integer: " + text);
  }
}

std::vector<double> parse_grid(const std::string& text) {
  double lo = 0, hi = 0;
  long count = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' || count < 1 || !in.eof())
    throw Error(Errc::InvalidArgument, "grid must look like lo:hi:count");
  std::vector<double> out;
  for (long i = 0; i < count; ++i) out.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (count - 1));
  return out;
}

void write_csv(const std::string& path, const std::string& header, const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path);
  out << header << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << '\n';
  }
}

}  // namespace hypflow::cli
