#include <algorithm>

#include "hypflow/error.hpp"
#include "hypflow/words.hpp"
#include "words/engine.hpp"

namespace hypflow {

Word dehn_reduce(std::span<const Letter> w, const Presentation& p) { return p.engine().normal_form(w); }

std::size_t geodesic_length(std::span<const Letter> w, const Presentation& p) {
  return p.engine().geodesic_length(w);
}

Word multiply_normal(std::span<const Letter> w, Letter a, const Presentation& p) {
  Word out(w.begin(), w.end());
  p.engine().append(out, a);
  return out;
}

void multiply_normal_in_place(Word& w, Letter a, const Presentation& p) { p.engine().append(w, a); }

bool represents_identity(std::span<const Letter> w, const Presentation& p) { return p.engine().is_identity(w); }

StableLength stable_length(std::span<const Letter> w, const Presentation& p, std::size_t n_max) {
  if (n_max < 2) throw Error(Errc::InvalidArgument, "n_max must be >= 2");
  constexpr std::size_t kMaxLetters = 1u << 22;
  const auto& engine = p.engine();
  StableLength out;
  Word x = engine.normal_form(w);
  std::size_t n = 1;
  out.sequence.push_back(static_cast<double>(x.size()));
  while (2 * n <= n_max && 2 * x.size() <= kMaxLetters && !x.empty()) {
    x = engine.normal_form(concat(x, x));
    n *= 2;
    out.sequence.push_back(static_cast<double>(x.size()) / static_cast<double>(n));
  }
  for (std::size_t i = 1; i < out.sequence.size(); ++i)
    if (out.sequence[i] > out.sequence[i - 1] + 1e-12) out.monotone = false;
  out.power = n;
  out.value = out.sequence.back();
  return out;
}

}  // namespace hypflow
