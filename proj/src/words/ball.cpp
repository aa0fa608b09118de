#include <algorithm>
#include <numeric>
#include <random>

#include "hypflow/error.hpp"
#include "hypflow/words.hpp"
#include "words/engine.hpp"

namespace hypflow {
namespace {

using Perm = std::vector<std::uint8_t>;

Perm inverse_perm(const Perm& p) {
  Perm q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<std::uint8_t>(i);
  return q;
}

std::vector<std::vector<std::size_t>> cycles(const Perm& p) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> c;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      c.push_back(j);
    }
    out.push_back(std::move(c));
  }
  return out;
}

// Permutation whose cycle lengths all divide `order` (any permutation if 0).
Perm random_perm(std::size_t n, int order, std::mt19937_64& rng) {
  std::vector<std::size_t> pts(n);
  std::iota(pts.begin(), pts.end(), 0);
  std::shuffle(pts.begin(), pts.end(), rng);
  Perm p(n);
  if (order == 0) {
    for (std::size_t i = 0; i < n; ++i) p[pts[i]] = static_cast<std::uint8_t>(pts[(i + 1) % n]);
    std::shuffle(pts.begin(), pts.end(), rng);
    Perm q(n);
    for (std::size_t i = 0; i < n; ++i) q[i] = p[pts[i]];
    return q;
  }
  std::vector<int> divisors;
  for (int d = 1; d <= order; ++d)
    if (order % d == 0) divisors.push_back(d);
  std::size_t i = 0;
  while (i < n) {
    int len = order;
    if (rng() % 4 == 0) len = divisors[rng() % divisors.size()];
    while (static_cast<std::size_t>(len) > n - i) len = divisors[rng() % divisors.size()];
    for (int j = 0; j < len; ++j) p[pts[i + j]] = static_cast<std::uint8_t>(pts[i + (j + 1) % len]);
    i += static_cast<std::size_t>(len);
  }
  return p;
}

}  // namespace

// Images of each letter under a few homomorphisms onto permutation groups.
// Equal elements have equal images, so the images give a hash key; equality
// is always confirmed by the word problem.
struct Ball::Index {
  std::size_t degree = 0;
  std::size_t count = 0;
  std::vector<Perm> letter_images;  // [quotient * letters + code]
  std::vector<std::pair<std::uint64_t, std::uint32_t>> sorted;

  std::size_t width() const { return degree * count; }

  void identity(std::uint8_t* out) const {
    for (std::size_t k = 0; k < count; ++k)
      for (std::size_t i = 0; i < degree; ++i) out[k * degree + i] = static_cast<std::uint8_t>(i);
  }
  void apply(const std::uint8_t* in, Letter x, std::uint8_t* out, std::size_t letters) const {
    for (std::size_t k = 0; k < count; ++k) {
      const Perm& g = letter_images[k * letters + x.code()];
      for (std::size_t i = 0; i < degree; ++i) out[k * degree + i] = g[in[k * degree + i]];
    }
  }
  std::uint64_t hash(const std::uint8_t* img) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < width(); ++i) h = (h ^ img[i]) * 1099511628211ull;
    h ^= h >> 31;
    h *= 0x9e3779b97f4a7c15ull;
    return h ^ (h >> 29);
  }
};

namespace {

bool satisfies(const std::vector<Perm>& images, const Presentation& p, std::size_t degree) {
  for (const auto& r : p.relators()) {
    Perm cur(degree);
    std::iota(cur.begin(), cur.end(), 0);
    for (Letter x : r)
      for (auto& v : cur) v = images[x.code()][v];
    for (std::size_t i = 0; i < degree; ++i)
      if (cur[i] != i) return false;
  }
  return true;
}

std::vector<Perm> find_quotient(const Presentation& p, std::size_t degree, std::mt19937_64& rng) {
  const std::size_t gens = p.generator_count();
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<Perm> images(2 * gens);
    if (p.family() != Family::Dehn) {
      for (std::size_t g = 0; g < gens; ++g) {
        images[2 * g] = random_perm(degree, p.torsion_order(g), rng);
        images[2 * g + 1] = inverse_perm(images[2 * g]);
      }
    } else {
      // Surface relator x^-1 A x B: choose the others freely, then x
      // conjugates the image of A onto the inverse image of B.
      const Word& r = p.relators().front();
      const Letter x = r.front().inverse();
      const std::size_t xg = x.generator_index();
      for (std::size_t g = 0; g < gens; ++g) {
        if (g == xg) continue;
        images[2 * g] = random_perm(degree, 0, rng);
        images[2 * g + 1] = inverse_perm(images[2 * g]);
      }
      std::size_t split = 1;
      while (split < r.size() && r[split] != x) ++split;
      auto eval = [&](std::size_t from, std::size_t to) {
        Perm cur(degree);
        std::iota(cur.begin(), cur.end(), 0);
        for (std::size_t i = from; i < to; ++i)
          for (auto& v : cur) v = images[r[i].code()][v];
        return cur;
      };
      Perm a = eval(1, split);
      Perm b = inverse_perm(eval(split + 1, r.size()));
      auto ca = cycles(a);
      auto cb = cycles(b);
      auto by_len = [](const auto& u, const auto& v) { return u.size() < v.size(); };
      std::sort(ca.begin(), ca.end(), by_len);
      std::sort(cb.begin(), cb.end(), by_len);
      if (ca.size() != cb.size()) continue;
      bool same = true;
      for (std::size_t i = 0; i < ca.size() && same; ++i) same = ca[i].size() == cb[i].size();
      if (!same) continue;
      Perm xi(degree);
      for (std::size_t i = 0; i < ca.size(); ++i) {
        std::size_t off = rng() % ca[i].size();
        for (std::size_t j = 0; j < ca[i].size(); ++j)
          xi[ca[i][j]] = static_cast<std::uint8_t>(cb[i][(j + off) % cb[i].size()]);
      }
      images[2 * xg] = xi;
      images[2 * xg + 1] = inverse_perm(xi);
    }
    if (satisfies(images, p, degree)) return images;
  }
  throw Error(Errc::UnsupportedPresentation, "no permutation quotient found");
}

Word element_word(const std::vector<std::uint32_t>& parent, const std::vector<Letter>& last, std::size_t e) {
  Word w;
  while (e != 0) {
    w.push_back(last[e]);
    e = parent[e];
  }
  std::reverse(w.begin(), w.end());
  return w;
}

}  // namespace

std::vector<std::size_t> Ball::sphere_sizes() const {
  std::vector<std::size_t> out;
  for (int r = 0; r <= radius_; ++r) out.push_back(sphere_size(r));
  return out;
}

int Ball::length(std::size_t element) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), element);
  return static_cast<int>(it - offsets_.begin()) - 1;
}

Word Ball::word(std::size_t element) const { return element_word(parent_, last_, element); }

std::optional<std::size_t> Ball::find(std::span<const Letter> w) const {
  std::vector<std::uint8_t> a(index_->width()), b(index_->width());
  index_->identity(a.data());
  for (Letter x : w) {
    index_->apply(a.data(), x, b.data(), presentation_.letter_count());
    a.swap(b);
  }
  const std::uint64_t h = index_->hash(a.data());
  auto it = std::lower_bound(index_->sorted.begin(), index_->sorted.end(), std::make_pair(h, std::uint32_t{0}));
  for (; it != index_->sorted.end() && it->first == h; ++it) {
    Word v = word(it->second);
    if (represents_identity(concat(inverse(v), w), presentation_)) return it->second;
  }
  return std::nullopt;
}

Ball bfs_ball(const Presentation& p, int radius, int cap) {
  if (radius < 0 || radius > cap)
    throw Error(Errc::RadiusTooLarge, "radius " + std::to_string(radius) + " exceeds cap " + std::to_string(cap));
  p.engine();
  const std::size_t letters = p.letter_count();

  auto index = std::make_shared<Ball::Index>();
  index->degree = 11;
  index->count = 4;
  std::mt19937_64 rng(0x5eedULL);
  for (std::size_t k = 0; k < index->count; ++k) {
    auto q = find_quotient(p, index->degree, rng);
    index->letter_images.insert(index->letter_images.end(), q.begin(), q.end());
  }
  const std::size_t width = index->width();

  Ball ball;
  ball.radius_ = radius;
  ball.presentation_ = p;
  ball.parent_.push_back(0);
  ball.last_.push_back(Letter());
  ball.offsets_ = {0, 1};

  std::vector<std::uint8_t> images(width);
  index->identity(images.data());
  using Keyed = std::vector<std::pair<std::uint64_t, std::uint32_t>>;
  Keyed previous;
  Keyed current{{index->hash(images.data()), std::uint32_t{0}}};
  Keyed all = current;

  auto same = [&](std::size_t e, Letter x, std::size_t f) {
    Word u = ball.word(e);
    u.push_back(x);
    return represents_identity(concat(inverse(ball.word(f)), u), p);
  };
  auto member = [&](const Keyed& sphere, std::uint64_t h, std::size_t e, Letter x) {
    auto it = std::lower_bound(sphere.begin(), sphere.end(), std::make_pair(h, std::uint32_t{0}));
    for (; it != sphere.end() && it->first == h; ++it)
      if (same(e, x, it->second)) return true;
    return false;
  };

  struct Candidate {
    std::uint64_t hash;
    std::uint32_t parent;
    Letter letter;
  };
  std::vector<std::uint8_t> child(width);
  for (int r = 0; r < radius; ++r) {
    const std::size_t begin = ball.offsets_[r];
    const std::size_t end = ball.offsets_[r + 1];
    std::vector<Candidate> cand;
    for (std::size_t e = begin; e < end; ++e) {
      const std::uint8_t* img = images.data() + (e - begin) * width;
      for (std::size_t c = 0; c < letters; ++c) {
        Letter x(static_cast<std::uint16_t>(c));
        if (e != 0 && x == ball.last_[e].inverse()) continue;
        index->apply(img, x, child.data(), letters);
        const std::uint64_t h = index->hash(child.data());
        if (member(previous, h, e, x) || member(current, h, e, x)) continue;
        cand.push_back({h, static_cast<std::uint32_t>(e), x});
      }
    }
    std::vector<std::uint32_t> order(cand.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return cand[a].hash < cand[b].hash; });
    std::vector<bool> keep(cand.size(), false);
    for (std::size_t i = 0; i < order.size();) {
      std::size_t j = i;
      while (j < order.size() && cand[order[j]].hash == cand[order[i]].hash) ++j;
      std::vector<std::uint32_t> reps;
      for (std::size_t k = i; k < j; ++k) {
        const Candidate& c = cand[order[k]];
        bool dup = false;
        for (auto rep : reps) {
          Word u = ball.word(cand[rep].parent);
          u.push_back(cand[rep].letter);
          Word v = ball.word(c.parent);
          v.push_back(c.letter);
          if (represents_identity(concat(inverse(u), v), p)) {
            dup = true;
            break;
          }
        }
        if (!dup) {
          reps.push_back(order[k]);
          keep[order[k]] = true;
        }
      }
      i = j;
    }
    Keyed next;
    std::vector<std::uint8_t> next_images;
    const bool need_images = r + 1 < radius;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (!keep[i]) continue;
      const auto id = static_cast<std::uint32_t>(ball.parent_.size());
      ball.parent_.push_back(cand[i].parent);
      ball.last_.push_back(cand[i].letter);
      next.emplace_back(cand[i].hash, id);
      if (need_images) {
        next_images.resize(next_images.size() + width);
        index->apply(images.data() + (cand[i].parent - begin) * width, cand[i].letter,
                     next_images.data() + next_images.size() - width, letters);
      }
    }
    ball.offsets_.push_back(ball.parent_.size());
    std::sort(next.begin(), next.end());
    all.insert(all.end(), next.begin(), next.end());
    previous = std::move(current);
    current = std::move(next);
    images = std::move(next_images);
  }
  std::sort(all.begin(), all.end());
  index->sorted = std::move(all);
  ball.index_ = std::move(index);
  return ball;
}

}  // namespace hypflow
