#pragma once

#include <stdexcept>
#include <string>

namespace hypflow {

enum class Errc {
  ParseError,
  NondeterministicLabel,
  UnreachableState,
  UnsupportedPresentation,
  RadiusTooLarge,
  InvalidOrder,
  NotIrreducible,
  NoConvergence,
  NoCycles,
  MissingBlockWeight,
  MemoryGuard,
  NoBracketing,
  SupremumOnBoundary,
  DegenerateInterval,
  InsufficientRange,
  InvalidArgument,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hypflow
