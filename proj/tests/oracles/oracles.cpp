#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

std::array<double, 2> jacobi_singular_values(const Eigen::Matrix2d& g) {
  Eigen::Matrix2d s = g.transpose() * g;
  for (int sweep = 0; sweep < 50 && std::abs(s(0, 1)) > 1e-300; ++sweep) {
    const double tau = (s(1, 1) - s(0, 0)) / (2.0 * s(0, 1));
    const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double sn = t * c;
    Eigen::Matrix2d j;
    j << c, sn, -sn, c;
    s = j.transpose() * s * j;
    s(0, 1) = s(1, 0) = 0.0;
  }
  double a = std::sqrt(std::max(0.0, s(0, 0)));
  double b = std::sqrt(std::max(0.0, s(1, 1)));
  if (a < b) std::swap(a, b);
  return {a, b};
}

double extended_log_sigma1(std::span<const Eigen::Matrix2d> factors) {
  using Big = boost::multiprecision::cpp_bin_float_50;
  Big m[2][2] = {{1, 0}, {0, 1}};
  for (const auto& f : factors) {
    Big r[2][2];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r[i][j] = m[i][0] * Big(f(0, j)) + m[i][1] * Big(f(1, j));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m[i][j] = r[i][j];
  }
  // sigma1^2 is the larger root of x^2 - |m|_F^2 x + det^2.
  const Big fro = m[0][0] * m[0][0] + m[0][1] * m[0][1] + m[1][0] * m[1][0] + m[1][1] * m[1][1];
  const Big det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const Big disc = fro * fro - 4 * det * det;
  const Big s2 = (fro + sqrt(disc > 0 ? disc : Big(0))) / 2;
  return static_cast<double>(log(s2) / 2);
}

std::vector<long long> series_quotient(const std::vector<long long>& p, const std::vector<long long>& q, int n) {
  if (q.empty() || q[0] == 0) throw std::invalid_argument("series_quotient: q[0] = 0");
  std::vector<long long> out(n + 1, 0);
  for (int i = 0; i <= n; ++i) {
    long long v = i < static_cast<int>(p.size()) ? p[i] : 0;
    for (int j = 1; j <= i && j < static_cast<int>(q.size()); ++j) v -= q[j] * out[i - j];
    if (v % q[0] != 0) throw std::runtime_error("series_quotient: not integral");
    out[i] = v / q[0];
  }
  return out;
}

std::vector<long long> surface_sphere_sizes(int genus, int radius) {
  // (1 + 2z + ... + 2z^{2g-1} + z^{2g}) / (1 + (2-4g)z + ... + (2-4g)z^{2g-1} + z^{2g})
  const int d = 2 * genus;
  std::vector<long long> num(d + 1, 2), den(d + 1, 2 - 4 * genus);
  num[0] = num[d] = 1;
  den[0] = den[d] = 1;
  return series_quotient(num, den, radius);
}

namespace {

// Growth polynomial of Z/n over {x, x^-1}.
std::vector<long long> cyclic_growth(int n) {
  std::vector<long long> f(n / 2 + 1, 0);
  for (int e = 0; e < n; ++e) ++f[std::min(e, n - e)];
  return f;
}

std::vector<long long> poly_mul(const std::vector<long long>& a, const std::vector<long long>& b) {
  std::vector<long long> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

}  // namespace

std::vector<long long> free_product_sphere_sizes(int p, int q, int radius) {
  // f = fp fq / (fp + fq - fp fq)
  const auto fp = cyclic_growth(p);
  const auto fq = cyclic_growth(q);
  auto num = poly_mul(fp, fq);
  std::vector<long long> den(num.size(), 0);
  for (std::size_t i = 0; i < fp.size(); ++i) den[i] += fp[i];
  for (std::size_t i = 0; i < fq.size(); ++i) den[i] += fq[i];
  for (std::size_t i = 0; i < num.size(); ++i) den[i] -= num[i];
  return series_quotient(num, den, radius);
}

std::vector<Syllable> syllable_reduce(std::span<const std::uint16_t> letters, int p, int q) {
  std::vector<Syllable> s;
  for (auto code : letters) {
    const int gen = code >> 1;
    const int order = gen == 0 ? p : q;
    const int step = (code & 1) ? order - 1 : 1;
    if (!s.empty() && s.back().generator == gen) {
      s.back().exponent = (s.back().exponent + step) % order;
      if (s.back().exponent == 0) s.pop_back();
    } else {
      s.push_back({gen, step});
    }
  }
  return s;
}

int syllable_length(const std::vector<Syllable>& s, int p, int q) {
  int n = 0;
  for (const auto& x : s) {
    const int order = x.generator == 0 ? p : q;
    n += std::min(x.exponent, order - x.exponent);
  }
  return n;
}

double dense_spectral_radius(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  double r = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) r = std::max(r, std::abs(es.eigenvalues()[i]));
  return r;
}

namespace {

Eigen::VectorXd perron_vector(const Eigen::MatrixXd& m, double& eigenvalue) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, true);
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < es.eigenvalues().size(); ++i) {
    const auto& l = es.eigenvalues()[i];
    const auto& b = es.eigenvalues()[best];
    // Prefer the real eigenvalue when the peripheral spectrum has several points.
    if (l.real() > b.real() + 1e-9 * std::abs(b)) best = i;
  }
  eigenvalue = es.eigenvalues()[best].real();
  Eigen::VectorXd v = es.eigenvectors().col(best).real();
  if (v.sum() < 0) v = -v;
  return v;
}

}  // namespace

DensePerron dense_perron(const Eigen::MatrixXd& m) {
  DensePerron d{};
  double lt = 0.0;
  d.right = perron_vector(m, d.eigenvalue);
  d.left = perron_vector(m.transpose(), lt);
  d.right /= d.right.sum();
  d.left /= d.left.dot(d.right);
  return d;
}

bool is_plus_minus_identity(const Eigen::Matrix2d& g, double tol) {
  const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
  return (g - id).cwiseAbs().maxCoeff() < tol || (g + id).cwiseAbs().maxCoeff() < tol;
}

namespace {

constexpr std::size_t kTableBits = 24;

std::uint64_t cell_hash(std::int64_t x, std::int64_t y) {
  std::uint64_t h = static_cast<std::uint64_t>(x) * 0x9e3779b97f4a7c15ULL;
  h ^= static_cast<std::uint64_t>(y) + 0x632be59bd9b4e019ULL + (h << 6) + (h >> 2);
  return (h * 0xbf58476d1ce4e5b9ULL) >> (64 - kTableBits);
}

bool close(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b) {
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - b).cwiseAbs().maxCoeff() < 1e-7 * scale;
}

}  // namespace

MatrixBall::MatrixBall(std::span<const Eigen::Matrix2d> letters, int radius) {
  head_.assign(std::size_t{1} << kTableBits, kNone);
  insert(Eigen::Matrix2d::Identity(), 0);
  spheres_.push_back(1);
  std::size_t begin = 0;
  for (int r = 1; r <= radius; ++r) {
    const std::size_t end = entries_.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (const auto& x : letters) {
        const Eigen::Matrix2d g = entries_[i].m * x;
        if (lookup(g) < 0) insert(g, r);
      }
    }
    spheres_.push_back(static_cast<long long>(entries_.size() - end));
    begin = end;
  }
}

void MatrixBall::insert(const Eigen::Matrix2d& g, int distance) {
  const auto x = static_cast<std::int64_t>(std::floor(g(0, 0) / grid_));
  const auto y = static_cast<std::int64_t>(std::floor(g(0, 1) / grid_));
  auto& h = head_[cell_hash(x, y)];
  next_.push_back(h);
  h = static_cast<std::uint32_t>(entries_.size());
  entries_.push_back({g, distance});
}

std::int64_t MatrixBall::lookup(const Eigen::Matrix2d& g) const {
  for (int sign : {1, -1}) {
    const Eigen::Matrix2d h = sign * g;
    const double margin = 1e-10 * std::max(1.0, h.cwiseAbs().maxCoeff());
    const auto x0 = static_cast<std::int64_t>(std::floor((h(0, 0) - margin) / grid_));
    const auto x1 = static_cast<std::int64_t>(std::floor((h(0, 0) + margin) / grid_));
    const auto y0 = static_cast<std::int64_t>(std::floor((h(0, 1) - margin) / grid_));
    const auto y1 = static_cast<std::int64_t>(std::floor((h(0, 1) + margin) / grid_));
    for (auto x = x0; x <= x1; ++x)
      for (auto y = y0; y <= y1; ++y)
        for (auto id = head_[cell_hash(x, y)]; id != kNone; id = next_[id])
          if (close(entries_[id].m, h)) return id;
  }
  return -1;
}

int MatrixBall::distance(const Eigen::Matrix2d& g) const {
  const auto id = lookup(g);
  return id < 0 ? -1 : entries_[id].distance;
}

}  // namespace oracle
