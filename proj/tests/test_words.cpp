#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hypflow/error.hpp"
#include "hypflow/replin.hpp"
#include "hypflow/words.hpp"
#include "oracles.hpp"
#include "properties.hpp"
#include "support.hpp"

using namespace hypflow;
using testing_support::octagon;
using testing_support::random_word;
using testing_support::z4z6;

namespace {

Eigen::Matrix2d image(const Representation& rho, std::span<const Letter> w) {
  Eigen::Matrix2d m = Eigen::Matrix2d::Identity();
  for (Letter x : w) m = m * rho.image2(x);
  return m;
}

std::vector<std::uint16_t> codes(const Word& w) {
  std::vector<std::uint16_t> c;
  for (Letter x : w) c.push_back(x.code());
  return c;
}

}  // namespace

TEST_CASE("letters pair with their inverses") {
  const Letter a = Letter::generator(2, false);
  CHECK(a.code() == 4);
  CHECK(a.inverse().code() == 5);
  CHECK(a.inverse().inverse() == a);
  CHECK(a.inverse().inverted());
  CHECK(a.generator_index() == 2);
}

TEST_CASE("free_reduce") {
  const auto& p = octagon();
  CHECK(free_reduce(p.parse_word("s1 s1^-1")).empty());
  CHECK(free_reduce(Word{}).empty());
  CHECK(free_reduce(p.parse_word("s1 s2 s2^-1 s1")) == p.parse_word("s1 s1"));

  std::mt19937_64 g(1);
  for (int i = 0; i < 500; ++i) {
    const Word w = random_word(8, 30, g);
    const Word r = free_reduce(w);
    CHECK(free_reduce(r) == r);
    for (std::size_t j = 1; j < r.size(); ++j) CHECK(r[j] != r[j - 1].inverse());
  }
}

TEST_CASE("presentation parsing") {
  const auto& p = octagon();
  CHECK(p.generator_count() == 4);
  CHECK(p.relators().size() == 1);
  CHECK(p.relator_half_length() == 4);
  CHECK(p.format(p.parse_word("s1^-1 s2^2")) == "s1^-1 s2 s2");
  CHECK(Presentation::parse(p.to_text()).to_text() == p.to_text());
  CHECK(z4z6().torsion_order(0) == 4);
  CHECK(z4z6().torsion_order(1) == 6);

  CHECK_THROWS_AS(p.parse_word("s9"), Error);
  try {
    Presentation::parse("family: dehn\ngenerators: a b\nrelator: a b c\n");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
  }
  try {
    Presentation::free_product(1, 6);
    FAIL("expected InvalidOrder");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidOrder);
  }
  const auto two = Presentation::parse("family: dehn\ngenerators: a b\nrelator: a a\nrelator: b b b\n");
  CHECK_FALSE(two.supported());
  try {
    dehn_reduce(two.parse_word("a"), two);
    FAIL("expected UnsupportedPresentation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnsupportedPresentation);
  }
}

TEST_CASE("dehn_reduce on relator pieces") {
  const auto& p = octagon();
  const auto rho = octagon_rep();
  const Word r = p.relators().front();
  CHECK(r.size() == 8);
  CHECK(dehn_reduce(r, p).empty());
  CHECK(dehn_reduce(inverse(r), p).empty());
  for (const Word& base : {r, inverse(r)}) {
    for (std::size_t shift = 0; shift < 8; ++shift) {
      Word c(8);
      for (std::size_t i = 0; i < 8; ++i) c[i] = base[(i + shift) % 8];
      const Word five(c.begin(), c.begin() + 5);
      const Word three(c.begin() + 5, c.end());
      const Word nf = dehn_reduce(five, p);
      CHECK(nf.size() == 3);
      CHECK(nf == dehn_reduce(inverse(three), p));
      CHECK(geodesic_length(five, p) == 3);
      CHECK(oracle::is_plus_minus_identity(image(rho, nf).inverse() * image(rho, five)));
    }
  }
  CHECK(dehn_reduce(z4z6().parse_word("s1^4"), z4z6()).empty());
  CHECK(dehn_reduce(z4z6().parse_word("s2^6"), z4z6()).empty());
}

TEST_CASE("geodesic_length basics") {
  for (const Presentation* p : {&octagon(), &z4z6()}) {
    CHECK(geodesic_length(Word{}, *p) == 0);
    for (std::size_t c = 0; c < p->letter_count(); ++c) {
      const Word w{Letter(static_cast<std::uint16_t>(c))};
      CHECK(geodesic_length(w, *p) == 1);
    }
  }
}

TEST_CASE("reductions are idempotent and multiply_normal agrees with them") {
  std::mt19937_64 g(3);
  for (const Presentation* p : {&octagon(), &z4z6()}) {
    for (int trial = 0; trial < 1000; ++trial) {
      const Word w = random_word(p->letter_count(), 50, g);
      const Word nf = dehn_reduce(w, *p);
      CHECK(dehn_reduce(nf, *p) == nf);
      Word chained, in_place;
      for (Letter x : w) {
        chained = multiply_normal(chained, x, *p);
        multiply_normal_in_place(in_place, x, *p);
      }
      CHECK(chained == nf);
      CHECK(in_place == nf);
      CHECK(nf.size() <= w.size());
    }
    const Word w = dehn_reduce(random_word(p->letter_count(), 20, g), *p);
    if (!w.empty()) {
      Word shorter(w.begin(), w.end() - 1);
      CHECK(multiply_normal(w, w.back().inverse(), *p) == shorter);
    }
    CHECK(multiply_normal(Word{}, Letter(1), *p) == Word{Letter(1)});
  }
}

TEST_CASE("normal forms match the matrix and syllable oracles on long words") {
  std::mt19937_64 g(4);
  const auto rho = octagon_rep();
  for (int trial = 0; trial < 300; ++trial) {
    const Word w = random_word(8, 40, g);
    const Eigen::Matrix2d m = image(rho, w), n = image(rho, dehn_reduce(w, octagon()));
    const double scale = m.cwiseAbs().maxCoeff();
    CHECK(std::min((m - n).cwiseAbs().maxCoeff(), (m + n).cwiseAbs().maxCoeff()) < 1e-9 * scale);
    const Word v = random_word(4, 60, g);
    const auto syl = oracle::syllable_reduce(codes(v), 4, 6);
    CHECK(static_cast<int>(geodesic_length(v, z4z6())) == oracle::syllable_length(syl, 4, 6));
  }
}

TEST_CASE("triangle inequality under concatenation") {
  std::mt19937_64 g(5);
  for (const Presentation* p : {&octagon(), &z4z6()}) {
    for (int trial = 0; trial < 1000; ++trial) {
      const Word x = random_word(p->letter_count(), 1 + g() % 30, g);
      const Word y = random_word(p->letter_count(), 1 + g() % 30, g);
      CHECK(geodesic_length(concat(x, y), *p) <= geodesic_length(x, *p) + geodesic_length(y, *p));
    }
  }
}

TEST_CASE("stable_length") {
  const auto& p = z4z6();
  CHECK(stable_length(p.parse_word("s1"), p, 64).value == 0.0);
  const auto s = stable_length(p.parse_word("s1 s2"), p, 64);
  CHECK(s.value == doctest::Approx(2.0));
  CHECK(s.monotone);
  for (int n = 1; n <= 4; ++n) {
    const Word w = power(p.parse_word("s1 s2"), n);
    CHECK(oracle::syllable_length(oracle::syllable_reduce(codes(w), 4, 6), 4, 6) == 2 * n);
  }
  const auto& q = octagon();
  const Word x = q.parse_word("s1 s2 s3");
  const Word y = q.parse_word("s4 s2^-1");
  const std::size_t n = 256;
  const double a = stable_length(x, q, n).value;
  const double b = stable_length(concat(concat(y, x), inverse(y)), q, n).value;
  CHECK(std::abs(a - b) <= 2.0 * y.size() / n + 1e-12);
  CHECK_THROWS_AS(stable_length(x, q, 1), Error);
}

TEST_CASE("sphere sizes match the growth series") {
  const auto cannon = oracle::surface_sphere_sizes(2, 8);
  CHECK(cannon[1] == 8);
  CHECK(cannon[2] == 56);
  CHECK(cannon[3] == 392);

  const Ball ball = bfs_ball(octagon(), 8);
  const auto sizes = ball.sphere_sizes();
  REQUIRE(sizes.size() == 9);
  for (int r = 0; r <= 8; ++r) CHECK(static_cast<long long>(sizes[r]) == cannon[r]);

  // Every stored word is a fixed point of the reduction and is found again.
  std::mt19937_64 g(6);
  for (int i = 0; i < 20000; ++i) {
    const std::size_t e = g() % ball.size();
    const Word w = ball.word(e);
    CHECK(static_cast<int>(w.size()) == ball.length(e));
    CHECK(dehn_reduce(w, octagon()) == w);
    CHECK(ball.find(w) == e);
    if (e > 0) CHECK(ball.word(ball.parent(e)).size() + 1 == w.size());
  }
  CHECK_FALSE(ball.find(power(octagon().parse_word("s1"), 9)).has_value());

  const auto fp = oracle::free_product_sphere_sizes(4, 6, 8);
  CHECK(fp[1] == 4);
  const auto zs = bfs_ball(z4z6(), 8).sphere_sizes();
  for (int r = 0; r <= 8; ++r) CHECK(static_cast<long long>(zs[r]) == fp[r]);
  CHECK(zs[2] == testing_support::z4z6_aut().path_counts(2)[2]);

  try {
    bfs_ball(octagon(), 9);
    FAIL("expected RadiusTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::RadiusTooLarge);
  }
}

TEST_CASE("exhaustive word problem to radius 8") {
  const auto z = properties::z4z6_word_problem(8);
  INFO(z.detail);
  CHECK(z.pass);
  const auto o = properties::octagon_word_problem(8);
  INFO(o.detail);
  CHECK(o.pass);
}
