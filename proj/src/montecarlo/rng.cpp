#include "hypflow/montecarlo.hpp"

namespace hypflow {

Engine make_engine(const Seed& seed, std::uint64_t sample) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed.root), hi(seed.root), lo(seed.stream), hi(seed.stream), lo(sample), hi(sample)};
  return Engine(seq);
}

double uniform01(Engine& g) { return static_cast<double>(g() >> 11) * 0x1p-53; }

}  // namespace hypflow
