#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypflow/automaton.hpp"
#include "hypflow/montecarlo.hpp"
#include "hypflow/replin.hpp"
#include "hypflow/words.hpp"

namespace hypflow::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInvalid = 2;

// Thrown by commands whose check ran but did not pass; carries the report.
struct ValidationFailure {
  Json report;
};

// Decimal value with 12 significant digits.
Json num(double x);

// Bare names are looked up in the working directory, then in the data directory.
std::filesystem::path resolve_input(const std::string& name);
std::string sha256_file(const std::filesystem::path& path);

struct Run {
  std::string command;
  std::vector<std::string> argv;
  CLI::App* app = nullptr;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  Json inputs = Json::object();

  std::filesystem::path input(const std::string& name);
  Automaton automaton(const std::string& name);
  Presentation presentation(const std::string& name);
  Representation representation(const std::string& spec);
  Json manifest(std::uint64_t seed) const;
};

// --seed, else HYPFLOW_SEED, else the default.
std::uint64_t seed_value(const std::string& flag);

// Parses "lo:hi:count" into count evenly spaced values.
std::vector<double> parse_grid(const std::string& text);

void write_csv(const std::string& path, const std::string& header, const std::vector<std::vector<std::string>>& rows);
std::string fmt(double x);

}  // namespace hypflow::cli
