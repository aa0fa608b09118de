#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "hypflow/replin.hpp"

namespace hypflow {
namespace {

constexpr double kLn2 = 0.69314718055994530942;

// Scale so the largest entry lies in [1, 2); returns the exponent removed.
template <class M>
std::int64_t normalize(M& m) {
  const double top = m.cwiseAbs().maxCoeff();
  if (!(top > 0.0) || !std::isfinite(top)) return 0;
  int e = 0;
  std::frexp(top, &e);
  m *= std::ldexp(1.0, 1 - e);
  return e - 1;
}

}  // namespace

Eigen::Matrix2d rotation(double t) {
  Eigen::Matrix2d r;
  r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return r;
}

Eigen::Matrix2d axis_translation(double u) {
  Eigen::Matrix2d a;
  a << std::exp(u), 0.0, 0.0, std::exp(-u);
  return a;
}

double LogScaledMatrix::log_scale() const { return static_cast<double>(exponent2) * kLn2; }

double LogScaledMatrix::log_norm() const { return log_scale() + std::log(singular_values(matrix).front()); }

void Product2::multiply_right(const Eigen::Matrix2d& g) {
  m_ = m_ * g;
  if (m_.cwiseAbs().maxCoeff() > kRescaleThreshold) e_ += normalize(m_);
}

double Product2::log_sigma1() const { return static_cast<double>(e_) * kLn2 + std::log(sigma1_2x2(m_)); }

double sigma1_2x2(const Eigen::Matrix2d& g) {
  const double a = g(0, 0), b = g(0, 1), c = g(1, 0), d = g(1, 1);
  return 0.5 * (std::hypot(a + d, b - c) + std::hypot(a - d, b + c));
}

std::vector<double> singular_values(const SquareMatrix& g) {
  if (g.rows() == 2 && g.cols() == 2) {
    const double s1 = sigma1_2x2(g);
    const double det = std::abs(g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0));
    return {s1, s1 > 0.0 ? det / s1 : 0.0};
  }
  Eigen::JacobiSVD<SquareMatrix> svd(g);
  auto s = svd.singularValues();
  std::vector<double> out(s.data(), s.data() + s.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double spectral_radius_elem(const SquareMatrix& g) {
  if (g.rows() == 2 && g.cols() == 2) {
    const double tr = g(0, 0) + g(1, 1);
    const double det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
    const double disc = tr * tr - 4.0 * det;
    if (disc >= 0.0) return 0.5 * (std::abs(tr) + std::sqrt(disc));
    return std::sqrt(std::abs(det));
  }
  Eigen::EigenSolver<SquareMatrix> es(g, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

namespace {

// Disk form C g C^-1 with C = [[1, -i], [1, i]].
Eigen::Matrix2cd disk_form(const SquareMatrix& g) {
  using C = std::complex<double>;
  const C i(0.0, 1.0);
  Eigen::Matrix2cd c, cinv;
  c << 1.0, -i, 1.0, i;
  cinv << i, i, -1.0, 1.0;
  cinv /= 2.0 * i;
  Eigen::Matrix2cd gc = g.cast<C>();
  return c * gc * cinv;
}

}  // namespace

std::complex<double> mobius_act(const SquareMatrix& g, std::complex<double> z) {
  auto m = disk_form(g);
  return (m(0, 0) * z + m(0, 1)) / (m(1, 0) * z + m(1, 1));
}

double disk_distance(std::complex<double> z, std::complex<double> w) {
  const double r = std::abs(z - w) / std::abs(1.0 - std::conj(z) * w);
  return 2.0 * std::atanh(r);
}

double disk_displacement(const SquareMatrix& g, std::optional<double> det) {
  auto m = disk_form(g);
  const double d = det ? *det : g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  return 2.0 * std::log((std::abs(m(0, 0)) + std::abs(m(0, 1))) / std::sqrt(d));
}

LogScaledMatrix evaluate(const Representation& rho, std::span<const Letter> w) {
  LogScaledMatrix out;
  if (rho.dimension() == 2) {
    Product2 p;
    for (Letter x : w) p.multiply_right(rho.image2(x));
    Eigen::Matrix2d m = p.matrix();
    out.exponent2 = p.exponent2();
    if (m.cwiseAbs().maxCoeff() < 1.0) out.exponent2 += normalize(m);
    out.matrix = m;
    return out;
  }
  SquareMatrix m = SquareMatrix::Identity(static_cast<Eigen::Index>(rho.dimension()),
                                          static_cast<Eigen::Index>(rho.dimension()));
  for (Letter x : w) {
    m = m * rho.image(x);
    if (m.cwiseAbs().maxCoeff() > kRescaleThreshold) out.exponent2 += normalize(m);
  }
  if (m.cwiseAbs().maxCoeff() < 1.0) out.exponent2 += normalize(m);
  out.matrix = std::move(m);
  return out;
}

double projective_image(const Eigen::Matrix2d& g, double angle) {
  const double x = g(0, 0) * std::cos(angle) + g(0, 1) * std::sin(angle);
  const double y = g(1, 0) * std::cos(angle) + g(1, 1) * std::sin(angle);
  double t = std::atan2(y, x);
  if (t < 0.0) t += M_PI;
  if (t >= M_PI) t -= M_PI;
  return t;
}

}  // namespace hypflow
