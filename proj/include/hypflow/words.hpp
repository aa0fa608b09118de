#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hypflow {

// Letters are coded 0..2g-1; code 2i is generator i, 2i+1 its inverse.
class Letter {
 public:
  constexpr Letter() = default;
  constexpr explicit Letter(std::uint16_t code) : code_(code) {}

  static constexpr Letter generator(std::size_t index, bool inverted = false) {
    return Letter(static_cast<std::uint16_t>(2 * index + (inverted ? 1 : 0)));
  }

  constexpr std::uint16_t code() const { return code_; }
  constexpr std::size_t generator_index() const { return code_ >> 1; }
  constexpr bool inverted() const { return (code_ & 1) != 0; }
  constexpr Letter inverse() const { return Letter(code_ ^ 1); }

  friend constexpr auto operator<=>(Letter, Letter) = default;

 private:
  std::uint16_t code_ = 0;
};

using Word = std::vector<Letter>;

Word inverse(std::span<const Letter> w);
Word concat(std::span<const Letter> a, std::span<const Letter> b);
Word power(std::span<const Letter> w, std::size_t n);

enum class Family { FreeProduct, Dehn, Free };

namespace detail {
class GroupEngine;
}

class Presentation {
 public:
  static Presentation parse(std::string_view text);
  static Presentation load(const std::filesystem::path& path);
  static Presentation free_product(int p, int q);
  static Presentation free_group(std::size_t rank);
  static Presentation surface(std::size_t genus);

  std::string to_text() const;

  std::size_t generator_count() const { return names_.size(); }
  std::size_t letter_count() const { return 2 * names_.size(); }
  const std::vector<std::string>& generator_names() const { return names_; }
  // 0 means the generator has infinite order.
  int torsion_order(std::size_t generator) const { return torsion_[generator]; }
  const std::vector<Word>& relators() const { return relators_; }
  Family family() const { return family_; }

  // Half of the longest relator, rounded down.
  std::size_t relator_half_length() const;

  Letter parse_letter(std::string_view symbol) const;
  Word parse_word(std::string_view text) const;
  std::string format(Letter x) const;
  std::string format(std::span<const Letter> w) const;

  bool supported() const { return engine_ != nullptr; }
  // Throws UnsupportedPresentation when no exact engine exists.
  const detail::GroupEngine& engine() const;

 private:
  void finish();

  std::vector<std::string> names_;
  std::vector<int> torsion_;
  std::vector<Word> relators_;
  Family family_ = Family::Free;
  std::shared_ptr<const detail::GroupEngine> engine_;
};

Word free_reduce(std::span<const Letter> w);

// Shortlex normal form: the least geodesic word under the letter order.
Word dehn_reduce(std::span<const Letter> w, const Presentation& p);

std::size_t geodesic_length(std::span<const Letter> w, const Presentation& p);

// Normal form of w*a for w already in normal form.
Word multiply_normal(std::span<const Letter> w, Letter a, const Presentation& p);
// Same, rewriting only a bounded suffix of w.
void multiply_normal_in_place(Word& w, Letter a, const Presentation& p);

// Classical rewriting word problem; independent of the normal form code.
bool represents_identity(std::span<const Letter> w, const Presentation& p);

struct StableLength {
  double value = 0.0;
  std::size_t power = 0;
  bool monotone = true;
  std::vector<double> sequence;
};

StableLength stable_length(std::span<const Letter> w, const Presentation& p, std::size_t n_max);

// Exhaustive ball; elements are listed sphere by sphere in shortlex order, so
// each stored word is the shortlex least geodesic of its element.
class Ball {
 public:
  int radius() const { return radius_; }
  std::size_t size() const { return parent_.size(); }
  std::size_t sphere_size(int r) const { return offsets_[r + 1] - offsets_[r]; }
  std::vector<std::size_t> sphere_sizes() const;
  std::size_t sphere_begin(int r) const { return offsets_[r]; }
  std::size_t sphere_end(int r) const { return offsets_[r + 1]; }
  int length(std::size_t element) const;
  Word word(std::size_t element) const;
  // element = parent(element) * last_letter(element); the identity is its own parent.
  std::size_t parent(std::size_t element) const { return parent_[element]; }
  Letter last_letter(std::size_t element) const { return last_[element]; }
  std::optional<std::size_t> find(std::span<const Letter> w) const;

 private:
  friend Ball bfs_ball(const Presentation&, int, int);
  struct Index;

  int radius_ = 0;
  Presentation presentation_;
  std::vector<std::uint32_t> parent_;
  std::vector<Letter> last_;
  std::vector<std::size_t> offsets_;
  std::shared_ptr<const Index> index_;
};

inline constexpr int kDefaultBallCap = 8;

Ball bfs_ball(const Presentation& p, int radius, int cap = kDefaultBallCap);

}  // namespace hypflow
