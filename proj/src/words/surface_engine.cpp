#include <algorithm>

#include "hypflow/error.hpp"
#include "words/engine.hpp"

namespace hypflow::detail {

std::unique_ptr<SurfaceEngine> SurfaceEngine::create(std::size_t letters, const Word& relator) {
  const std::size_t n = relator.size();
  if (n != letters || n < 8 || n % 4 != 0) return nullptr;
  std::vector<int> position(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    auto c = relator[i].code();
    if (c >= n || position[c] >= 0) return nullptr;
    position[c] = static_cast<int>(i);
  }
  std::vector<Letter> succ(n);
  for (std::size_t c = 0; c < n; ++c) succ[c] = relator[(position[c] + 1) % n];
  // The link of the vertex: z -> succ(inverse z).
  auto rot = [&](Letter z) { return succ[z.inverse().code()]; };
  Letter z = Letter(0);
  for (std::size_t k = 1; k <= n; ++k) {
    z = rot(z);
    if (z == Letter(0) && k < n) return nullptr;
  }
  if (z != Letter(0)) return nullptr;

  std::unique_ptr<SurfaceEngine> e(new SurfaceEngine());
  e->letters_ = static_cast<int>(n);
  e->half_ = static_cast<int>(n / 2);
  e->turn_.assign(n * n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    Letter y = Letter(static_cast<std::uint16_t>(x)).inverse();
    for (std::size_t k = 0; k < n; ++k) {
      e->turn_[x * n + y.code()] = static_cast<std::uint8_t>(k);
      y = rot(y);
    }
  }
  Word rinv = inverse(relator);
  std::vector<int> inv_position(n);
  for (std::size_t i = 0; i < n; ++i) inv_position[rinv[i].code()] = static_cast<int>(i);
  for (int side = 0; side < 2; ++side) e->face_[side].resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      e->face_[0][c].push_back(relator[(position[c] + i) % n]);
      e->face_[1][c].push_back(rinv[(inv_position[c] + i) % n]);
    }
  }
  return e;
}

void GeodesicStack::push(Letter x) {
  pending_.push_back(x);
  while (!pending_.empty()) {
    Letter y = pending_.back();
    pending_.pop_back();
    step(y);
  }
}

void GeodesicStack::step(Letter x) {
  const std::size_t n = frames_.size();
  if (n == 0) {
    frames_.push_back(Frame{x, {}});
    return;
  }
  const Frame& top = frames_.back();
  if (top.letter == x.inverse()) {
    frames_.pop_back();
    return;
  }
  const int L = engine_->letters();
  const int half = engine_->half();
  const int t = engine_->turn(top.letter, x);
  Frame f{x, {}};
  for (int side = 0; side < 2; ++side) {
    const int tt = side == 0 ? t : L - t;
    const Side& prev = top.side[side];
    Side& cur = f.side[side];
    if (tt == 1) {
      const int run = prev.run + 1;
      if (run == half) {
        rewrite(n - half, x, side, false);
        return;
      }
      if (chains_ && prev.open && run == half - 1) {
        rewrite(prev.chain_start, x, side, true);
        return;
      }
      cur.run = static_cast<std::uint16_t>(run);
      cur.open = prev.open;
      cur.chain_start = prev.chain_start;
    } else if (chains_ && tt == 2) {
      if (prev.run == half - 1) {
        cur.open = true;
        cur.chain_start = static_cast<std::uint32_t>(n - half);
      } else if (prev.open && prev.run == half - 2) {
        cur.open = true;
        cur.chain_start = prev.chain_start;
      }
    }
  }
  frames_.push_back(f);
}

void GeodesicStack::rewrite(std::size_t start, Letter x, int side, bool chain) {
  const int L = engine_->letters();
  scratch_.clear();
  for (std::size_t i = start; i < frames_.size(); ++i) scratch_.push_back(frames_[i].letter);
  scratch_.push_back(x);
  frames_.resize(start);

  auto complement = [&](std::size_t from, std::size_t to, Word& out) {
    const Word& face = engine_->face(side, scratch_[from]);
    const std::size_t m = to - from;
    for (std::size_t i = static_cast<std::size_t>(L); i-- > m;) out.push_back(face[i].inverse());
  };

  Word replacement;
  if (!chain) {
    complement(0, scratch_.size(), replacement);
  } else {
    std::vector<std::size_t> cuts{0};
    for (std::size_t j = 1; j < scratch_.size(); ++j) {
      int t = engine_->turn(scratch_[j - 1], scratch_[j]);
      if ((side == 0 ? t : L - t) == 2) cuts.push_back(j);
    }
    cuts.push_back(scratch_.size());
    const std::size_t pieces = cuts.size() - 1;
    Word c;
    for (std::size_t i = 0; i < pieces; ++i) {
      c.clear();
      complement(cuts[i], cuts[i + 1], c);
      auto b = c.begin() + (i > 0 ? 1 : 0);
      auto e = c.end() - (i + 1 < pieces ? 1 : 0);
      replacement.insert(replacement.end(), b, e);
    }
  }
  for (auto it = replacement.rbegin(); it != replacement.rend(); ++it) pending_.push_back(*it);
}

bool GeodesicStack::shortens(Letter x) const {
  if (frames_.empty()) return false;
  const Frame& top = frames_.back();
  if (top.letter == x.inverse()) return true;
  const int L = engine_->letters();
  const int half = engine_->half();
  const int t = engine_->turn(top.letter, x);
  for (int side = 0; side < 2; ++side) {
    const int tt = side == 0 ? t : L - t;
    if (tt != 1) continue;
    const Side& prev = top.side[side];
    if (prev.run + 1 == half) return true;
    if (chains_ && prev.open && prev.run + 1 == half - 1) return true;
  }
  return false;
}

Word GeodesicStack::word() const {
  Word w;
  w.reserve(frames_.size());
  for (const auto& f : frames_) w.push_back(f.letter);
  return w;
}

Word SurfaceEngine::normal_form(std::span<const Letter> w) const {
  GeodesicStack s(*this);
  for (auto it = w.rbegin(); it != w.rend(); ++it) s.push(it->inverse());
  // s now holds a geodesic for the inverse; peel off least first letters.
  const std::size_t n = s.size();
  Word out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < letters_; ++c) {
      Letter x(static_cast<std::uint16_t>(c));
      if (s.shortens(x)) {
        s.push(x);
        out.push_back(x);
        break;
      }
    }
  }
  return out;
}

std::size_t SurfaceEngine::geodesic_length(std::span<const Letter> w) const {
  GeodesicStack s(*this);
  for (Letter x : w) s.push(x);
  return s.size();
}

bool SurfaceEngine::is_identity(std::span<const Letter> w) const {
  GeodesicStack s(*this, false);
  for (Letter x : w) s.push(x);
  return s.size() == 0;
}

// Only vertices of nf next to the wall crossed by the new edge can change
// their least geodesic letter. Those vertices form a trailing run reached by
// walking back along the wall, either across it or around a face that it
// bisects.
void SurfaceEngine::append(Word& nf, Letter a) const {
  std::size_t i = nf.size();
  std::size_t q = i;
  Letter y = a;
  while (i > 0) {
    Letter b = nf[i - 1].inverse();
    if (b == y) {
      --i;
      y = y.inverse();
      q = i;
      continue;
    }
    const int t = turn(y.inverse(), b);
    int side = t == 1 ? 0 : t == letters_ - 1 ? 1 : -1;
    if (side < 0) break;
    const Word& f = face(side, b);
    const std::size_t hug = static_cast<std::size_t>(half_ - 1);
    if (i < hug) break;
    bool ok = true;
    for (std::size_t j = 0; j < hug && ok; ++j) ok = nf[i - 1 - j] == f[j].inverse();
    if (!ok) break;
    i -= hug;
    y = f[hug];
    q = i;
  }
  Word tail(nf.begin() + static_cast<std::ptrdiff_t>(q), nf.end());
  tail.push_back(a);
  nf.resize(q);
  Word t = normal_form(tail);
  nf.insert(nf.end(), t.begin(), t.end());
}

}  // namespace hypflow::detail
