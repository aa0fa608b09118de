#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "hypflow/automaton.hpp"
#include "hypflow/words.hpp"

namespace testing_support {

inline std::filesystem::path data(const std::string& name) { return std::filesystem::path(HYPFLOW_DATA_DIR) / name; }

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline const hypflow::Presentation& octagon() {
  static const auto p = hypflow::Presentation::load(data("octagon.grp"));
  return p;
}
inline const hypflow::Presentation& z4z6() {
  static const auto p = hypflow::Presentation::load(data("z4z6.grp"));
  return p;
}
inline const hypflow::Automaton& octagon_aut() {
  static const auto a = hypflow::load_automaton_file(data("octagon.aut"));
  return a;
}
inline const hypflow::Automaton& z4z6_aut() {
  static const auto a = hypflow::load_automaton_file(data("z4z6.aut"));
  return a;
}

inline hypflow::Word random_word(std::size_t letters, std::size_t length, std::mt19937_64& g) {
  hypflow::Word w(length);
  for (auto& x : w) x = hypflow::Letter(static_cast<std::uint16_t>(g() % letters));
  return w;
}

}  // namespace testing_support
