#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "hypflow/automaton.hpp"
#include "hypflow/replin.hpp"
#include "hypflow/spectral.hpp"

namespace hypflow {

inline constexpr std::size_t kMaxRecodedBlocks = 10'000'000;

// Locally constant potential on k-edge blocks. A block is listed oldest edge first;
// the weight of a transition is the potential of the block it completes.
class EdgePotential {
 public:
  using LabelFunction = std::function<double(std::span<const Letter>)>;

  static EdgePotential constant(double c);
  // Indexed by automaton edge id.
  static EdgePotential per_edge(std::vector<double> weights);
  static EdgePotential from_blocks(int k, std::map<std::vector<EdgeId>, double> weights);
  // Depends only on the labels of the block.
  static EdgePotential from_labels(int k, LabelFunction f);

  int block_length() const { return k_; }
  bool label_only() const { return static_cast<bool>(labels_); }
  // Throws MissingBlockWeight.
  double operator()(const Automaton& a, std::span<const EdgeId> block) const;
  double of_labels(std::span<const Letter> labels) const { return labels_(labels); }

 private:
  int k_ = 1;
  LabelFunction labels_;
  std::vector<double> per_edge_;
  std::map<std::vector<EdgeId>, double> blocks_;
};

// All length-len edge paths inside c, in lexicographic order of local edge index.
std::vector<std::vector<EdgeId>> block_paths(const Automaton& a, const Component& c, int len);

// Graph whose transitions are the k-blocks of c, each carrying the values of a
// fixed list of potentials, so that pressures of linear combinations are cheap.
class BlockRecoding {
 public:
  // Throws MemoryGuard when the recoding has more than kMaxRecodedBlocks transitions.
  BlockRecoding(const Automaton& a, const Component& c, std::vector<EdgePotential> features);

  std::size_t node_count() const { return graph_.n; }
  std::size_t block_count() const { return graph_.nonzeros(); }
  int block_length() const { return k_; }
  int period() const { return period_; }

  // log Perron root of the matrix with entries exp(sum_i coeffs[i] * feature_i).
  double pressure(std::span<const double> coeffs);
  // Mean of each feature under the equilibrium state of the given combination.
  std::vector<double> equilibrium_means(std::span<const double> coeffs);

 private:
  void fill(std::span<const double> coeffs, double& shift);

  int k_ = 1;
  int period_ = 1;
  SparseMatrix graph_;
  std::vector<int> classes_;
  std::vector<std::vector<double>> features_;  // per feature, per transition
  std::vector<double> warm_right_, warm_left_;
};

double pressure(const Automaton& a, const Component& c, const EdgePotential& psi);

// Chain over k-blocks ordered as block_paths(a, c, k); for k = 1 that is the local edge order of c.
MarkovChain equilibrium_markov(const Automaton& a, const Component& c, const EdgePotential& psi);

double entropy(const MarkovChain& m);

// theta(s) = Pr(-s psi_star).
double manhattan_theta(const Automaton& a, const Component& c, const EdgePotential& psi_star, double s);

// psi(w0..w_{k-1}) = log|rho(w0..w_{k-1})| - log|rho(w1..w_{k-1})|.
EdgePotential rep_potential(const Representation& rho, int k);

// Increments of word length for the generating set enlarged by `extra` words.
EdgePotential word_metric_potential(const Presentation& p, const std::vector<Word>& extra, int k);

// Root t of Pr(-s psi_star - t psi) = 0 for a fixed pair of potentials.
class ManhattanSolver {
 public:
  ManhattanSolver(const Automaton& a, const Component& c, EdgePotential psi_star, EdgePotential psi);

  // Throws NoBracketing.
  double theta(double s);
  // Centre of the first bracket; later calls start from the previous root.
  void hint(double t) { last_ = t; }
  // Centered differences at h = 1e-3 and 1e-4 combined by Richardson extrapolation.
  double derivative_at_zero();
  // -(mean psi_star)/(mean psi) under the equilibrium state of -theta(0) psi.
  double exact_derivative_at_zero();
  std::size_t block_count() const { return recoding_.block_count(); }

 private:
  BlockRecoding recoding_;
  std::optional<double> last_;
};

struct ManhattanValue {
  double theta = 0.0;
  int k = 0;
  std::optional<double> previous;  // value at k - 1
};

ManhattanValue manhattan_rep(const Automaton& a, const Component& c, const Representation& rho,
                             const Representation& rho_star, double s, int k, bool with_diagnostic = true);

struct PressureCurve {
  std::vector<std::pair<double, double>> samples;
  int k_used = 1;
  double derivative_at_zero = 0.0;
};

// Throws InvalidArgument unless the samples are convex to 1e-6.
void check_convex(const PressureCurve& curve);

struct RateFunction {
  std::vector<std::pair<double, double>> grid;
  double zero_location = 0.0;
};

enum class BoundaryPolicy { Throw, Clamp };

// I(t) = sup_s {t s - theta(-s)} + theta(0). Throws SupremumOnBoundary under BoundaryPolicy::Throw.
RateFunction legendre_rate(const PressureCurve& curve, std::span<const double> t_grid,
                           BoundaryPolicy policy = BoundaryPolicy::Throw);

}  // namespace hypflow
