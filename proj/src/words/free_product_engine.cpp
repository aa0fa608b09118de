#include "words/engine.hpp"

namespace hypflow::detail {

void FreeProductEngine::append(Word& nf, Letter a) const {
  const std::size_t g = a.generator_index();
  std::size_t j = 0;
  while (j < nf.size() && nf[nf.size() - 1 - j].generator_index() == g) ++j;
  long e = j == 0 ? 0 : (nf.back().inverted() ? -static_cast<long>(j) : static_cast<long>(j));
  e += a.inverted() ? -1 : 1;
  const long p = orders_[g];
  if (p > 0) {
    e = ((e % p) + p) % p;
    if (e > p / 2) e -= p;
  }
  nf.resize(nf.size() - j);
  Letter x = Letter::generator(g, e < 0);
  for (long k = 0; k < (e < 0 ? -e : e); ++k) nf.push_back(x);
}

Word FreeProductEngine::normal_form(std::span<const Letter> w) const {
  Word nf;
  for (Letter x : w) append(nf, x);
  return nf;
}

std::size_t FreeProductEngine::geodesic_length(std::span<const Letter> w) const { return normal_form(w).size(); }

bool FreeProductEngine::is_identity(std::span<const Letter> w) const { return normal_form(w).empty(); }

}  // namespace hypflow::detail
