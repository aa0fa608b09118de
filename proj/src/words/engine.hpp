#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hypflow/words.hpp"

namespace hypflow::detail {

class GroupEngine {
 public:
  virtual ~GroupEngine() = default;

  virtual Word normal_form(std::span<const Letter> w) const = 0;
  virtual std::size_t geodesic_length(std::span<const Letter> w) const = 0;
  virtual void append(Word& nf, Letter a) const = 0;
  virtual bool is_identity(std::span<const Letter> w) const = 0;
};

// Genus g >= 2 surface group with one relator of length 4g in which every
// letter occurs exactly once and the link is a single cycle.
class SurfaceEngine final : public GroupEngine {
 public:
  static std::unique_ptr<SurfaceEngine> create(std::size_t letters, const Word& relator);

  Word normal_form(std::span<const Letter> w) const override;
  std::size_t geodesic_length(std::span<const Letter> w) const override;
  void append(Word& nf, Letter a) const override;
  bool is_identity(std::span<const Letter> w) const override;

  int letters() const { return letters_; }
  int half() const { return half_; }
  int turn(Letter x, Letter y) const { return turn_[x.code() * letters_ + y.code()]; }
  // Cyclic conjugate of the relator (side 0) or its inverse (side 1) starting at x.
  const Word& face(int side, Letter x) const { return face_[side][x.code()]; }

 private:
  SurfaceEngine() = default;

  int letters_ = 0;
  int half_ = 0;
  std::vector<std::uint8_t> turn_;
  std::vector<Word> face_[2];
};

// Geodesic rewriting stack. With chains disabled it is the classical Dehn
// algorithm (long pieces only).
class GeodesicStack {
 public:
  GeodesicStack(const SurfaceEngine& engine, bool chains = true) : engine_(&engine), chains_(chains) {}

  void push(Letter x);
  bool shortens(Letter x) const;
  std::size_t size() const { return frames_.size(); }
  Word word() const;

 private:
  struct Side {
    std::uint16_t run = 0;
    bool open = false;
    std::uint32_t chain_start = 0;
  };
  struct Frame {
    Letter letter;
    Side side[2];
  };

  void step(Letter x);
  void rewrite(std::size_t start, Letter x, int side, bool chain);

  const SurfaceEngine* engine_;
  bool chains_;
  std::vector<Frame> frames_;
  std::vector<Letter> pending_;
  Word scratch_;
};

class FreeProductEngine final : public GroupEngine {
 public:
  explicit FreeProductEngine(std::vector<int> orders) : orders_(std::move(orders)) {}

  Word normal_form(std::span<const Letter> w) const override;
  std::size_t geodesic_length(std::span<const Letter> w) const override;
  void append(Word& nf, Letter a) const override;
  bool is_identity(std::span<const Letter> w) const override;

 private:
  std::vector<int> orders_;  // 0 = infinite
};

}  // namespace hypflow::detail
