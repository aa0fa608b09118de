#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "hypflow/automaton.hpp"
#include "hypflow/replin.hpp"
#include "hypflow/spectral.hpp"

namespace hypflow {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed;

struct Seed {
  std::uint64_t root = kDefaultSeed;
  std::uint64_t stream = 0;
};

using Engine = std::mt19937_64;

// Independent engine for one sample of one stream; the same triple always gives the same draws.
Engine make_engine(const Seed& seed, std::uint64_t sample);
double uniform01(Engine& g);

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  std::size_t n_steps = 0;
  std::size_t resampled = 0;  // walks that ended at the identity and were redrawn
};

// Chain over the local edges of c, as returned by parry_chain(c).
Word sample_parry_word(const MarkovChain& chain, const Automaton& a, const Component& c, std::size_t n, Engine& g);
Word sample_parry_word(const MarkovChain& chain, const Automaton& a, const Component& c, std::size_t n,
                       const Seed& seed);

// Mean of f over independent Parry words of length n. workers = 0 uses every core.
Estimate estimate_parry(const MarkovChain& chain, const Automaton& a, const Component& c, std::size_t n,
                        std::size_t samples, const Seed& seed, const std::function<double(const Word&)>& f,
                        unsigned workers = 1);

// Mean of log sigma_1(rho(w)) / n over Parry words. Throws InvalidArgument when samples < 2.
Estimate estimate_tau_ps(const Representation& rho, const MarkovChain& chain, const Automaton& a,
                         const Component& c, std::size_t n, std::size_t samples, const Seed& seed,
                         unsigned workers = 1);

// Normal form of a simple random walk after `steps` uniform letters.
Word srw_endpoint(const Presentation& p, std::size_t steps, Engine& g);
Word srw_endpoint(const Presentation& p, std::size_t steps, const Seed& seed);

// Mean of geodesic length / steps.
Estimate estimate_escape_rate(const Presentation& p, std::size_t steps, std::size_t samples, const Seed& seed,
                              unsigned workers = 1);

// Mean of log sigma_1(rho(w)) / |w| at the walk's endpoint; identity endpoints are redrawn.
Estimate estimate_tau_harmonic(const Representation& rho, const Presentation& p, std::size_t steps,
                               std::size_t samples, const Seed& seed, unsigned workers = 1);

struct GrowthFit {
  double slope = 0.0;
  double n_lo = 0.0;
  double n_hi = 0.0;
  std::vector<std::pair<double, std::size_t>> counts;  // (n, #{x : |log|rho(x)| - n| <= L})
};

// Slope of the log count of ball elements with log-norm within L of n. Throws RadiusTooLarge, InsufficientRange.
GrowthFit estimate_v_rho(const Representation& rho, const Presentation& p, int radius, double window);

enum class Sampler { Parry, Srw };

struct Histogram {
  double lo = -M_PI;
  double hi = M_PI;
  std::vector<std::size_t> counts;
  double bin_left(std::size_t i) const { return lo + (hi - lo) * static_cast<double>(i) / counts.size(); }
};

// Angles of rho(w).0 in the disk. The Parry sampler needs chain, a and c.
Histogram angle_histogram(const Representation& rho, Sampler sampler, std::size_t bins, std::size_t steps,
                          std::size_t samples, const Seed& seed, const Presentation& p, const MarkovChain* chain,
                          const Automaton* a, const Component* c, unsigned workers = 1);

struct ChiSquared {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
  double quantile99 = 0.0;
};

// Two-sample homogeneity test on histograms with the same bins.
ChiSquared chi_squared_two_sample(const Histogram& x, const Histogram& y);

}  // namespace hypflow
