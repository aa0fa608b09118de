#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "hypflow/automaton.hpp"
#include "hypflow/error.hpp"

namespace hypflow {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void parse_fail(std::size_t line, std::size_t column, const std::string& msg) {
  throw Error(Errc::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg);
}

// s2 < s10: compare a trailing integer numerically when prefixes agree.
bool natural_less(const std::string& a, const std::string& b) {
  auto split = [](const std::string& s) {
    std::size_t i = s.size();
    while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) --i;
    long n = i < s.size() ? std::stol(s.substr(i)) : -1;
    return std::make_pair(s.substr(0, i), n);
  };
  auto [pa, na] = split(a);
  auto [pb, nb] = split(b);
  if (pa != pb) return pa < pb;
  if (na != nb) return na < nb;
  return a < b;
}

}  // namespace

Automaton::Automaton(std::string name, std::vector<std::string> generators, std::size_t state_count,
                     StateId initial, std::vector<Edge> edges)
    : name_(std::move(name)), generators_(std::move(generators)), state_count_(state_count), initial_(initial) {
  if (initial >= state_count) throw Error(Errc::InvalidArgument, "initial state out of range");
  for (const auto& e : edges) {
    if (e.origin >= state_count || e.target >= state_count)
      throw Error(Errc::InvalidArgument, "edge endpoint out of range");
    if (e.label.generator_index() >= generators_.size()) throw Error(Errc::InvalidArgument, "edge label out of range");
  }
  bool enters_initial = std::any_of(edges.begin(), edges.end(), [&](const Edge& e) { return e.target == initial; });
  if (enters_initial) {
    const auto fresh = static_cast<StateId>(state_count_++);
    std::vector<Edge> copies;
    for (const auto& e : edges)
      if (e.origin == initial) copies.push_back({fresh, e.target, e.label});
    edges.insert(edges.end(), copies.begin(), copies.end());
    initial_ = fresh;
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.origin != b.origin ? a.origin < b.origin : a.label != b.label ? a.label < b.label : a.target < b.target;
  });
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i].origin == edges[i - 1].origin && edges[i].label == edges[i - 1].label)
      throw Error(Errc::NondeterministicLabel, "state " + std::to_string(edges[i].origin) + " has two edges labeled " +
                                                   format(edges[i].label));
  edges_ = std::move(edges);
  out_offsets_.assign(state_count_ + 1, 0);
  for (const auto& e : edges_) ++out_offsets_[e.origin + 1];
  for (std::size_t v = 0; v < state_count_; ++v) out_offsets_[v + 1] += out_offsets_[v];
  out_ids_.resize(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) out_ids_[i] = static_cast<EdgeId>(i);
}

std::span<const EdgeId> Automaton::out_edges(StateId v) const {
  return std::span<const EdgeId>(out_ids_).subspan(out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]);
}

std::optional<EdgeId> Automaton::step(StateId v, Letter x) const {
  for (EdgeId e : out_edges(v))
    if (edges_[e].label == x) return e;
  return std::nullopt;
}

std::optional<StateId> Automaton::run(std::span<const Letter> w) const {
  StateId v = initial_;
  for (Letter x : w) {
    auto e = step(v, x);
    if (!e) return std::nullopt;
    v = edges_[*e].target;
  }
  return v;
}

std::vector<bool> Automaton::reachable() const {
  std::vector<bool> seen(state_count_, false);
  std::vector<StateId> stack{initial_};
  seen[initial_] = true;
  while (!stack.empty()) {
    StateId v = stack.back();
    stack.pop_back();
    for (EdgeId e : out_edges(v)) {
      StateId t = edges_[e].target;
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

std::vector<std::uint64_t> Automaton::path_counts(int max_length) const {
  std::vector<std::uint64_t> counts;
  std::vector<std::uint64_t> cur(state_count_, 0), next(state_count_);
  cur[initial_] = 1;
  for (int n = 0; n <= max_length; ++n) {
    std::uint64_t total = 0;
    for (auto c : cur) total += c;
    counts.push_back(total);
    std::fill(next.begin(), next.end(), 0);
    for (const auto& e : edges_) next[e.target] += cur[e.origin];
    cur.swap(next);
  }
  return counts;
}

std::string Automaton::format(Letter x) const {
  std::string s = generators_.at(x.generator_index());
  if (x.inverted()) s += "^-1";
  return s;
}

std::string Automaton::format(std::span<const Letter> w) const {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += format(w[i]);
  }
  return s;
}

std::string Automaton::to_text() const {
  std::string out;
  if (!name_.empty()) out += "name: " + name_ + "\n";
  out += "generators:";
  for (const auto& g : generators_) out += " " + g;
  out += "\nstates: " + std::to_string(state_count_) + "\ninitial: " + std::to_string(initial_) + "\n";
  for (const auto& e : edges_)
    out += "edge: " + std::to_string(e.origin) + " " + std::to_string(e.target) + " " + format(e.label) + "\n";
  return out;
}

Automaton Automaton::relabeled(const Presentation& p) const {
  std::vector<Letter> map(2 * generators_.size());
  for (std::size_t g = 0; g < generators_.size(); ++g) {
    Letter x = p.parse_letter(generators_[g]);
    map[2 * g] = x;
    map[2 * g + 1] = x.inverse();
  }
  std::vector<Edge> edges = edges_;
  for (auto& e : edges) e.label = map[e.label.code()];
  return Automaton(name_, p.generator_names(), state_count_, initial_, std::move(edges));
}

Automaton load_automaton(std::string_view text) {
  std::string name;
  std::vector<std::string> generators;
  std::optional<std::size_t> states;
  std::optional<StateId> initial;
  struct RawEdge {
    StateId o, t;
    std::string label;
    std::size_t line, column;
  };
  std::vector<RawEdge> raw;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto number = [&](std::string_view s, std::size_t col) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      parse_fail(line_no, col, "expected a nonnegative integer, got '" + std::string(s) + "'");
    return v;
  };
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view rawline = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    std::string_view line = trim(rawline);
    if (!line.empty() && line.front() != '#') {
      std::size_t colon = line.find(':');
      if (colon == std::string_view::npos) parse_fail(line_no, 1, "expected 'key: value'");
      std::string_view key = trim(line.substr(0, colon));
      std::string_view value = trim(line.substr(colon + 1));
      const std::size_t vcol = static_cast<std::size_t>(value.data() - rawline.data()) + 1;
      std::vector<std::pair<std::string_view, std::size_t>> toks;
      for (std::size_t i = 0; i < value.size();) {
        while (i < value.size() && (value[i] == ' ' || value[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < value.size() && value[j] != ' ' && value[j] != '\t') ++j;
        if (j > i) toks.emplace_back(value.substr(i, j - i), vcol + i);
        i = j;
      }
      if (key == "name") {
        name = std::string(value);
      } else if (key == "generators") {
        for (auto [t, c] : toks) generators.emplace_back(t);
      } else if (key == "states") {
        if (toks.size() != 1) parse_fail(line_no, vcol, "expected one integer");
        states = number(toks[0].first, toks[0].second);
      } else if (key == "initial") {
        if (toks.size() != 1) parse_fail(line_no, vcol, "expected one integer");
        initial = static_cast<StateId>(number(toks[0].first, toks[0].second));
      } else if (key == "edge") {
        if (toks.size() != 3) parse_fail(line_no, vcol, "expected 'edge: origin target label'");
        raw.push_back({static_cast<StateId>(number(toks[0].first, toks[0].second)),
                       static_cast<StateId>(number(toks[1].first, toks[1].second)), std::string(toks[2].first),
                       line_no, toks[2].second});
      } else {
        parse_fail(line_no, 1, "unknown key '" + std::string(key) + "'");
      }
    }
    if (end == text.size()) break;
  }
  if (!states) parse_fail(line_no, 1, "missing states line");
  if (!initial) parse_fail(line_no, 1, "missing initial line");
  if (*initial >= *states) parse_fail(line_no, 1, "initial state out of range");
  auto base = [](const std::string& l) { return l.size() > 3 && l.ends_with("^-1") ? l.substr(0, l.size() - 3) : l; };
  if (generators.empty()) {
    for (const auto& e : raw) {
      std::string b = base(e.label);
      if (std::find(generators.begin(), generators.end(), b) == generators.end()) generators.push_back(b);
    }
    std::sort(generators.begin(), generators.end(), natural_less);
  }
  std::vector<Edge> edges;
  for (const auto& e : raw) {
    if (e.o >= *states || e.t >= *states) parse_fail(e.line, 1, "edge endpoint out of range");
    std::string b = base(e.label);
    auto it = std::find(generators.begin(), generators.end(), b);
    if (it == generators.end()) parse_fail(e.line, e.column, "unknown label '" + e.label + "'");
    edges.push_back({e.o, e.t, Letter::generator(static_cast<std::size_t>(it - generators.begin()), b != e.label)});
  }
  Automaton a(name, generators, *states, *initial, std::move(edges));
  auto seen = a.reachable();
  for (std::size_t v = 0; v < seen.size(); ++v)
    if (!seen[v]) throw Error(Errc::UnreachableState, "state " + std::to_string(v) + " is not reachable");
  return a;
}

Automaton load_automaton_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return load_automaton(ss.str());
}

void save_automaton_file(const Automaton& a, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path.string());
  out << a.to_text();
}

}  // namespace hypflow
