#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hypflow/automaton.hpp"
#include "hypflow/words.hpp"

namespace hypflow {

using SquareMatrix = Eigen::MatrixXd;

// true matrix = 2^exponent2 * matrix.
struct LogScaledMatrix {
  SquareMatrix matrix;
  std::int64_t exponent2 = 0;

  double log_scale() const;
  // log of the operator norm of the true matrix.
  double log_norm() const;
};

inline constexpr double kRescaleThreshold = 0x1p128;

class Representation {
 public:
  Representation() = default;
  // Throws InvalidArgument on a singular or non-square image.
  Representation(std::string name, std::vector<std::string> generators, std::vector<SquareMatrix> images);

  const std::string& name() const { return name_; }
  std::size_t dimension() const { return dimension_; }
  const std::vector<std::string>& generator_names() const { return generators_; }
  std::size_t generator_count() const { return generators_.size(); }
  const SquareMatrix& image(Letter x) const { return images_[x.code()]; }
  // 2x2 fast path; only valid when dimension() == 2.
  const Eigen::Matrix2d& image2(Letter x) const { return images2_[x.code()]; }

  std::string to_json() const;
  static Representation from_json(const std::string& text);

 private:
  std::string name_;
  std::size_t dimension_ = 0;
  std::vector<std::string> generators_;
  std::vector<SquareMatrix> images_;
  std::vector<Eigen::Matrix2d> images2_;
};

Eigen::Matrix2d rotation(double t);
Eigen::Matrix2d axis_translation(double u);  // diag(e^u, e^-u)

double octagon_u();
Representation octagon_rep();
Representation freeproduct_rep(double u);
// Throws InvalidArgument for unknown names. Accepts "octagon", "freeproduct:<u>" and JSON files.
Representation representation_by_name(const std::string& spec);

// Largest deviation of a relator image from +-identity, and of x x^-1 from identity.
double relator_defect(const Representation& rho, const Presentation& p);

LogScaledMatrix evaluate(const Representation& rho, std::span<const Letter> w);

// Running 2x2 product with power-of-two rescaling.
class Product2 {
 public:
  void multiply_right(const Eigen::Matrix2d& g);
  const Eigen::Matrix2d& matrix() const { return m_; }
  std::int64_t exponent2() const { return e_; }
  double log_sigma1() const;

 private:
  Eigen::Matrix2d m_ = Eigen::Matrix2d::Identity();
  std::int64_t e_ = 0;
};

std::vector<double> singular_values(const SquareMatrix& g);
double sigma1_2x2(const Eigen::Matrix2d& g);
double spectral_radius_elem(const SquareMatrix& g);

std::complex<double> mobius_act(const SquareMatrix& g, std::complex<double> z);
double disk_distance(std::complex<double> z, std::complex<double> w);
// d_H(0, g.0) from the disk form of g; stable for long words. Pass det when it is known
// exactly, since recomputing it from large entries cancels badly.
double disk_displacement(const SquareMatrix& g, std::optional<double> det = std::nullopt);

struct DominationFit {
  double c = 0.0;
  double C = 0.0;
  double log_C = 0.0;
  double intercept = 0.0;
  double fit_quality = 0.0;
  std::size_t points = 0;
  int radius = 0;
  bool pass = false;
};

DominationFit domination_fit(const Representation& rho, const Presentation& p, int radius);

double displacement_identity_check(const Representation& rho, const std::vector<Word>& words);

// Closed projective interval from lo counterclockwise to hi, angles in [0, pi).
struct AngleInterval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const;
};

using Multicone = std::vector<std::vector<AngleInterval>>;  // one union per state

struct MulticoneReport {
  bool pass = false;
  double min_margin = 0.0;
  std::vector<EdgeId> violations;
};

// Throws DegenerateInterval.
MulticoneReport multicone_check(const Representation& rho, const Multicone& cones, const Automaton& a,
                                double eps = 1e-6);

// Grows unions of delta-neighbourhoods from the attracting directions of the
// generators until the family maps into itself. Returns nullopt on failure.
std::optional<Multicone> multicone_search(const Representation& rho, const Automaton& a, double delta = 1e-3,
                                          int max_rounds = 2000);

std::string multicone_to_json(const Multicone& cones, const std::string& representation, const std::string& automaton);
Multicone multicone_from_json(const std::string& text);

double projective_image(const Eigen::Matrix2d& g, double angle);

}  // namespace hypflow
