#pragma once

// Reference computations used by the tests. None of them calls into the
// library code they check.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// Singular values of a 2x2 matrix by cyclic Jacobi sweeps on g^T g.
std::array<double, 2> jacobi_singular_values(const Eigen::Matrix2d& g);

// log of the largest singular value of a product of 2x2 matrices, multiplied
// out in 50-digit floating point.
double extended_log_sigma1(std::span<const Eigen::Matrix2d> factors);

// Coefficients of the power series p/q up to degree n (q[0] != 0).
std::vector<long long> series_quotient(const std::vector<long long>& p, const std::vector<long long>& q, int n);

// Sphere sizes of the genus-g surface group with one 4g-gon relator, from
// Cannon's rational growth series.
std::vector<long long> surface_sphere_sizes(int genus, int radius);

// Sphere sizes of Z/p * Z/q over {a, a^-1, b, b^-1}, from 1/f = 1/f_p + 1/f_q - 1.
std::vector<long long> free_product_sphere_sizes(int p, int q, int radius);

// Syllable normal form in Z/p * Z/q. Letters use the library's coding: 0,1 are
// a and a^-1, 2,3 are b and b^-1. Each syllable is (generator, exponent mod order).
struct Syllable {
  int generator;
  int exponent;
};
std::vector<Syllable> syllable_reduce(std::span<const std::uint16_t> letters, int p, int q);
int syllable_length(const std::vector<Syllable>& s, int p, int q);

// Largest-modulus eigenvalue of a nonnegative matrix by a dense eigensolver.
double dense_spectral_radius(const Eigen::MatrixXd& m);

// Left and right Perron vectors from a dense eigensolver, normalized so that
// right sums to 1 and left.right = 1.
struct DensePerron {
  double eigenvalue;
  Eigen::VectorXd left;
  Eigen::VectorXd right;
};
DensePerron dense_perron(const Eigen::MatrixXd& m);

// Group elements of a 2x2 matrix group found by breadth-first search on the
// matrices themselves; +-g are identified.
class MatrixBall {
 public:
  MatrixBall(std::span<const Eigen::Matrix2d> letters, int radius);

  const std::vector<long long>& sphere_sizes() const { return spheres_; }
  // Distance of g from the identity, or -1 outside the ball.
  int distance(const Eigen::Matrix2d& g) const;

 private:
  struct Entry {
    Eigen::Matrix2d m;
    int distance;
  };
  std::int64_t lookup(const Eigen::Matrix2d& g) const;
  void insert(const Eigen::Matrix2d& g, int distance);

  static constexpr std::uint32_t kNone = 0xffffffffu;
  double grid_ = 1e-4;
  std::vector<Entry> entries_;
  std::vector<std::uint32_t> head_, next_;
  std::vector<long long> spheres_;
};

// True when g is +-identity to the given tolerance.
bool is_plus_minus_identity(const Eigen::Matrix2d& g, double tol = 1e-8);

}  // namespace oracle
