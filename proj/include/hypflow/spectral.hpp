#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hypflow/automaton.hpp"

namespace hypflow {

// Compressed-row nonnegative matrix. Row i holds the successors of i.
struct SparseMatrix {
  std::size_t n = 0;
  std::vector<std::size_t> row_ptr{0};
  std::vector<std::uint32_t> col;
  std::vector<double> val;

  static SparseMatrix from_dense(const std::vector<std::vector<double>>& m);
  std::vector<std::vector<double>> to_dense() const;
  SparseMatrix transposed() const;
  void multiply(const double* x, double* y) const;
  std::size_t nonzeros() const { return col.size(); }
};

struct Component {
  std::vector<EdgeId> edges;    // sorted automaton edge ids
  std::vector<StateId> states;  // states of the underlying state-graph component
  int period = 1;
  SparseMatrix adjacency;       // over local edge indices: e -> e' when target(e) = origin(e')
};

struct PerronOptions {
  double tol = 1e-10;
  std::size_t max_iters = 100000;
  const std::vector<double>* initial_right = nullptr;
  const std::vector<double>* initial_left = nullptr;
  bool record_history = false;
  bool compute_left = true;
  // Cyclic classes from matrix_period; when given, the irreducibility and
  // period checks are skipped.
  const std::vector<int>* classes = nullptr;
};

struct PerronData {
  double eigenvalue = 0.0;
  std::vector<double> right;  // sums to 1
  std::vector<double> left;   // left . right = 1
  double residual = 0.0;      // max |M h - eigenvalue h|
  std::size_t iterations = 0;
  std::vector<double> history;  // Collatz-Wielandt gap per iteration of the right solve
};

// Throws NotIrreducible, NoConvergence.
PerronData perron(const SparseMatrix& m, int period, const PerronOptions& options = {});

bool is_irreducible(const SparseMatrix& m);
// Period of an irreducible matrix and the cyclic class of each index.
int matrix_period(const SparseMatrix& m, std::vector<int>* classes = nullptr);

std::vector<Component> scc_decompose(const Automaton& a);

// Throws NoCycles.
double growth_rate(const Automaton& a, const PerronOptions& options = {});
std::vector<Component> maximal_components(const Automaton& a, double rel_tol = 1e-8,
                                          const PerronOptions& options = {});

struct MarkovChain {
  SparseMatrix transition;
  std::vector<double> stationary;
};

// P(i,j) = W(i,j) h(j) / (rho h(i)), pi(i) = l(i) h(i).
MarkovChain markov_from_perron(const SparseMatrix& weighted, const PerronData& data);
MarkovChain parry_chain(const Component& c, const PerronOptions& options = {});

}  // namespace hypflow
