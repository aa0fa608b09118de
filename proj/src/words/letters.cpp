#include <algorithm>

#include "hypflow/error.hpp"
#include "hypflow/words.hpp"

namespace hypflow {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::ParseError: return "ParseError";
    case Errc::NondeterministicLabel: return "NondeterministicLabel";
    case Errc::UnreachableState: return "UnreachableState";
    case Errc::UnsupportedPresentation: return "UnsupportedPresentation";
    case Errc::RadiusTooLarge: return "RadiusTooLarge";
    case Errc::InvalidOrder: return "InvalidOrder";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::NoCycles: return "NoCycles";
    case Errc::MissingBlockWeight: return "MissingBlockWeight";
    case Errc::MemoryGuard: return "MemoryGuard";
    case Errc::NoBracketing: return "NoBracketing";
    case Errc::SupremumOnBoundary: return "SupremumOnBoundary";
    case Errc::DegenerateInterval: return "DegenerateInterval";
    case Errc::InsufficientRange: return "InsufficientRange";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

Word inverse(std::span<const Letter> w) {
  Word out(w.rbegin(), w.rend());
  for (auto& x : out) x = x.inverse();
  return out;
}

Word concat(std::span<const Letter> a, std::span<const Letter> b) {
  Word out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word power(std::span<const Letter> w, std::size_t n) {
  Word out;
  out.reserve(w.size() * n);
  for (std::size_t i = 0; i < n; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

Word free_reduce(std::span<const Letter> w) {
  Word out;
  out.reserve(w.size());
  for (Letter x : w) {
    if (!out.empty() && out.back() == x.inverse())
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

}  // namespace hypflow
