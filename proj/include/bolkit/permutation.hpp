#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "bolkit/error.hpp"

namespace bolkit {

// A bijection of {0..n-1} stored as its image array. Mappings act on the
// left: (p * q)(x) == p(q(x)).
class Permutation {
 public:
  Permutation() = default;

  // Throws Errc::invalid_argument unless `images` is a bijection.
  explicit Permutation(std::vector<Element> images);

  static Permutation identity(std::size_t degree);

  // Builds a permutation from disjoint cycles, e.g. {{0, 1, 2, 3}}.
  static Permutation from_cycles(std::size_t degree,
                                 std::initializer_list<std::initializer_list<Element>> cycles);

  std::size_t degree() const noexcept { return images_.size(); }
  Element operator()(Element x) const { return images_[x]; }
  std::span<const Element> images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  Permutation inverse() const;
  // Smallest point not fixed; degree() when the permutation is the identity.
  Element first_moved_point() const noexcept;

  friend Permutation operator*(const Permutation& lhs, const Permutation& rhs);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

  // Cycle notation, "()" for the identity.
  std::string to_string() const;

 private:
  struct unchecked_t {};
  Permutation(unchecked_t, std::vector<Element> images) : images_(std::move(images)) {}

  std::vector<Element> images_;
};

// g * p * g^-1
Permutation conjugate(const Permutation& g, const Permutation& p);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

}  // namespace bolkit
