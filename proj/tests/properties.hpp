#pragma once

// Checks shared by the unit tests and the acceptance binary.

#include <string>

namespace properties {

struct Outcome {
  bool pass = false;
  double value = 0.0;  // worst deviation, or the quantity being checked
  std::string detail;
};

// Every word of length <= radius over the octagon letters: Dehn reduction is
// empty exactly when the matrix image is +-identity, and the reduced length
// equals the distance found by a breadth-first search on matrices.
Outcome octagon_word_problem(int radius);
// Same for Z/4 * Z/6 against syllable reduction.
Outcome z4z6_word_problem(int radius);

// |Pr - (h + mean psi)| over random edge potentials on z4z6 and rep potentials on the octagon.
Outcome variational_principle();

// Largest ratio c2/c1 of cylinder measure to exp(S_n psi - n Pr) over cylinders
// of length <= max_length on z4z6, plus agreement with a dense-eigensolver measure.
Outcome gibbs_bounds(int max_length);

// theta(s) = v_S - s for psi* = 1 on the octagon, s in [-2, 2].
Outcome manhattan_trivial();

// Rate function of the octagon representation over the word metric: nonnegative,
// zero within one t-grid cell of -theta'(0).
Outcome legendre_zero(int k);

// v_rho at block lengths 1..k_max; successive differences shrink from k = 3 on.
Outcome k_convergence(int k_max);

}  // namespace properties
