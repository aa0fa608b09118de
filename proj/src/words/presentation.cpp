#include <charconv>
#include <fstream>
#include <sstream>

#include "hypflow/error.hpp"
#include "hypflow/words.hpp"
#include "words/engine.hpp"

namespace hypflow {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::pair<std::string_view, std::size_t>> tokens(std::string_view s) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i), i);
    i = j;
  }
  return out;
}

[[noreturn]] void parse_fail(std::size_t line, std::size_t column, const std::string& msg) {
  throw Error(Errc::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg);
}

}  // namespace

Presentation Presentation::parse(std::string_view text) {
  Presentation p;
  bool have_family = false;
  bool have_generators = false;
  std::vector<std::pair<std::string, std::size_t>> relator_lines;
  std::vector<std::pair<std::string, std::size_t>> torsion_lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) parse_fail(line_no, 1, "expected 'key: value'");
    std::string_view key = trim(line.substr(0, colon));
    std::string_view value = trim(line.substr(colon + 1));
    std::size_t value_col = static_cast<std::size_t>(value.data() - raw.data()) + 1;
    if (key == "family") {
      if (value == "free-product")
        p.family_ = Family::FreeProduct;
      else if (value == "dehn" || value == "dehn-small-cancellation")
        p.family_ = Family::Dehn;
      else if (value == "free")
        p.family_ = Family::Free;
      else
        parse_fail(line_no, value_col, "unknown family '" + std::string(value) + "'");
      have_family = true;
    } else if (key == "generators") {
      if (have_generators) parse_fail(line_no, 1, "duplicate generators line");
      for (auto [tok, col] : tokens(value)) {
        for (const auto& n : p.names_)
          if (n == tok) parse_fail(line_no, value_col + col, "duplicate generator");
        if (tok.find('^') != std::string_view::npos) parse_fail(line_no, value_col + col, "'^' in generator name");
        p.names_.emplace_back(tok);
      }
      if (p.names_.empty()) parse_fail(line_no, value_col, "no generators");
      have_generators = true;
    } else if (key == "torsion") {
      torsion_lines.emplace_back(std::string(value), line_no);
    } else if (key == "relator") {
      relator_lines.emplace_back(std::string(value), line_no);
    } else {
      parse_fail(line_no, 1, "unknown key '" + std::string(key) + "'");
    }
    if (end == text.size()) break;
  }
  if (!have_generators) parse_fail(line_no, 1, "missing generators line");
  if (!have_family) parse_fail(line_no, 1, "missing family line");
  p.torsion_.assign(p.names_.size(), 0);
  for (const auto& [value, ln] : torsion_lines) {
    auto toks = tokens(value);
    if (toks.size() != 2) parse_fail(ln, 1, "expected 'torsion: generator order'");
    std::size_t g = p.names_.size();
    for (std::size_t i = 0; i < p.names_.size(); ++i)
      if (p.names_[i] == toks[0].first) g = i;
    if (g == p.names_.size()) parse_fail(ln, 1, "unknown generator in torsion line");
    int order = 0;
    auto [ptr, ec] = std::from_chars(toks[1].first.data(), toks[1].first.data() + toks[1].first.size(), order);
    if (ec != std::errc() || ptr != toks[1].first.data() + toks[1].first.size() || order < 2)
      parse_fail(ln, 1, "torsion order must be an integer >= 2");
    p.torsion_[g] = order;
  }
  for (const auto& [value, ln] : relator_lines) {
    Word w;
    try {
      w = p.parse_word(value);
    } catch (const Error& e) {
      parse_fail(ln, 1, e.what());
    }
    if (w.empty() || free_reduce(w) != w) parse_fail(ln, 1, "relator must be nonempty and freely reduced");
    p.relators_.push_back(std::move(w));
  }
  if (p.family_ == Family::FreeProduct) {
    std::vector<Word> expected;
    for (std::size_t g = 0; g < p.names_.size(); ++g)
      if (p.torsion_[g] > 0) expected.push_back(Word(static_cast<std::size_t>(p.torsion_[g]), Letter::generator(g)));
    if (!p.relators_.empty() && p.relators_ != expected)
      parse_fail(line_no, 1, "free-product relators must be exactly the torsion relators");
    p.relators_ = expected;
  } else if (!torsion_lines.empty()) {
    parse_fail(torsion_lines.front().second, 1, "torsion lines require family free-product");
  }
  p.finish();
  return p;
}

Presentation Presentation::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

Presentation Presentation::free_product(int p, int q) {
  if (p < 2 || q < 2) throw Error(Errc::InvalidOrder, "torsion orders must be >= 2");
  return parse("family: free-product\ngenerators: s1 s2\ntorsion: s1 " + std::to_string(p) + "\ntorsion: s2 " +
               std::to_string(q) + "\n");
}

Presentation Presentation::free_group(std::size_t rank) {
  std::string text = "family: free\ngenerators:";
  for (std::size_t i = 1; i <= rank; ++i) text += " s" + std::to_string(i);
  return parse(text + "\n");
}

// Relator s_{2g}^-1 ... s_1^-1 s_{2g} ... s_1.
Presentation Presentation::surface(std::size_t genus) {
  std::size_t n = 2 * genus;
  std::string text = "family: dehn\ngenerators:";
  for (std::size_t i = 1; i <= n; ++i) text += " s" + std::to_string(i);
  text += "\nrelator:";
  for (std::size_t i = n; i >= 1; --i) text += " s" + std::to_string(i) + "^-1";
  for (std::size_t i = n; i >= 1; --i) text += " s" + std::to_string(i);
  return parse(text + "\n");
}

void Presentation::finish() {
  engine_.reset();
  if (family_ == Family::Free) {
    if (relators_.empty()) engine_ = std::make_shared<detail::FreeProductEngine>(std::vector<int>(names_.size(), 0));
  } else if (family_ == Family::FreeProduct) {
    engine_ = std::make_shared<detail::FreeProductEngine>(torsion_);
  } else if (relators_.size() == 1) {
    engine_ = detail::SurfaceEngine::create(letter_count(), relators_.front());
  }
}

std::string Presentation::to_text() const {
  std::string out = "family: ";
  out += family_ == Family::FreeProduct ? "free-product" : family_ == Family::Dehn ? "dehn" : "free";
  out += "\ngenerators:";
  for (const auto& n : names_) out += " " + n;
  out += "\n";
  if (family_ == Family::FreeProduct) {
    for (std::size_t g = 0; g < names_.size(); ++g)
      if (torsion_[g] > 0) out += "torsion: " + names_[g] + " " + std::to_string(torsion_[g]) + "\n";
  } else {
    for (const auto& r : relators_) out += "relator: " + format(r) + "\n";
  }
  return out;
}

std::size_t Presentation::relator_half_length() const {
  std::size_t m = 0;
  for (const auto& r : relators_) m = std::max(m, r.size());
  return m / 2;
}

const detail::GroupEngine& Presentation::engine() const {
  if (!engine_) throw Error(Errc::UnsupportedPresentation, "no exact word-problem engine for this presentation");
  return *engine_;
}

Letter Presentation::parse_letter(std::string_view symbol) const {
  bool inv = false;
  if (symbol.size() > 3 && symbol.substr(symbol.size() - 3) == "^-1") {
    inv = true;
    symbol.remove_suffix(3);
  }
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == symbol) return Letter::generator(i, inv);
  throw Error(Errc::ParseError, "unknown letter '" + std::string(symbol) + "'");
}

Word Presentation::parse_word(std::string_view text) const {
  Word w;
  for (auto [tok, col] : tokens(text)) {
    std::size_t caret = tok.find('^');
    std::string_view name = tok.substr(0, caret);
    int exponent = 1;
    if (caret != std::string_view::npos) {
      std::string_view e = tok.substr(caret + 1);
      auto [ptr, ec] = std::from_chars(e.data(), e.data() + e.size(), exponent);
      if (ec != std::errc() || ptr != e.data() + e.size() || exponent == 0)
        throw Error(Errc::ParseError, "bad exponent in '" + std::string(tok) + "'");
    }
    Letter x = parse_letter(name);
    if (exponent < 0) x = x.inverse();
    for (int k = 0; k < std::abs(exponent); ++k) w.push_back(x);
  }
  return w;
}

std::string Presentation::format(Letter x) const {
  std::string s = names_.at(x.generator_index());
  if (x.inverted()) s += "^-1";
  return s;
}

std::string Presentation::format(std::span<const Letter> w) const {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += format(w[i]);
  }
  return s;
}

}  // namespace hypflow
