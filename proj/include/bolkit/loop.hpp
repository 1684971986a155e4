#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "bolkit/parallel.hpp"
#include "bolkit/permutation.hpp"

namespace bolkit {

// A finite loop given by its Cayley table on elements 0..n-1. Only
// validate_loop() builds one, so every instance is a Latin square with a
// two-sided identity. The identity need not be element 0.
class CayleyTable {
 public:
  std::size_t order() const noexcept { return order_; }
  Element identity() const noexcept { return identity_; }
  Element operator()(Element x, Element y) const { return cells_[x * order_ + y]; }
  std::span<const Element> row(Element x) const {
    return std::span<const Element>(cells_).subspan(x * order_, order_);
  }
  std::span<const Element> cells() const noexcept { return cells_; }

  // x^r with x * x^r = e, and x^l with x^l * x = e.
  Element right_inverse(Element x) const { return right_inv_[x]; }
  Element left_inverse(Element x) const { return left_inv_[x]; }
  // Two-sided inverse if the left and right inverses agree.
  std::optional<Element> inverse(Element x) const;

  std::vector<std::vector<Element>> rows() const;

  friend bool operator==(const CayleyTable& a, const CayleyTable& b) {
    return a.order_ == b.order_ && a.cells_ == b.cells_;
  }

 private:
  friend CayleyTable validate_loop(std::size_t, std::vector<Element>);
  CayleyTable() = default;

  std::size_t order_ = 0;
  Element identity_ = 0;
  std::vector<Element> cells_;
  std::vector<Element> right_inv_;
  std::vector<Element> left_inv_;
};

// Throws Errc::bad_table (shape or range), Errc::not_latin_square (with the
// offending coordinates), Errc::no_identity.
CayleyTable validate_loop(std::size_t order, std::vector<Element> cells);
CayleyTable validate_loop(const std::vector<std::vector<Element>>& rows);

// Result of an exhaustive identity scan; `witness` is the lexicographically
// smallest failing tuple.
template <std::size_t Arity>
struct IdentityCheck {
  bool holds = true;
  std::optional<std::array<Element, Arity>> witness;
  explicit operator bool() const noexcept { return holds; }
};

// x(y(xz)) == (x(yx))z
IdentityCheck<3> is_left_bol(const CayleyTable& loop, ExecPolicy policy = ExecPolicy::parallel);
// (xy)(zx) == x((yz)x)
IdentityCheck<3> is_moufang(const CayleyTable& loop, ExecPolicy policy = ExecPolicy::parallel);
// (xy)z == x(yz)
IdentityCheck<3> is_associative(const CayleyTable& loop, ExecPolicy policy = ExecPolicy::parallel);
// (xy)^-1 == x^-1 y^-1. Throws Errc::no_inverse if some element lacks a
// two-sided inverse.
IdentityCheck<2> has_aip(const CayleyTable& loop, ExecPolicy policy = ExecPolicy::parallel);

// y -> xy
Permutation left_translation(const CayleyTable& loop, Element x);
// lambda_{xy}^-1 lambda_x lambda_y; always fixes the identity.
Permutation inner_mapping(const CayleyTable& loop, Element x, Element y);

// A subset of a loop's elements stored as a bitmask.
class SubloopMask {
 public:
  SubloopMask() = default;
  SubloopMask(std::size_t parent_order, std::span<const Element> members);

  std::size_t parent_order() const noexcept { return bits_.size(); }
  bool contains(Element x) const { return bits_[x]; }
  std::size_t size() const noexcept;
  std::vector<Element> elements() const;

  friend bool operator==(const SubloopMask&, const SubloopMask&) = default;
  friend auto operator<=>(const SubloopMask& a, const SubloopMask& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    return a.elements() <=> b.elements();
  }

 private:
  std::vector<bool> bits_;
};

// Closed under the product and contains the identity. For a finite loop
// this already forces closure under both divisions.
bool is_subloop(const CayleyTable& loop, const SubloopMask& set);

// Smallest subloop containing `generators` and the identity.
SubloopMask subloop_generated(const CayleyTable& loop, std::span<const Element> generators);

struct NormalityCheck {
  bool normal = true;
  std::optional<std::array<Element, 2>> witness;  // (a, b) with differing cosets
  explicit operator bool() const noexcept { return normal; }
};

// (ab)N == a(bN) == (aN)b for all a, b. Throws Errc::not_a_subloop.
NormalityCheck is_normal_subloop(const CayleyTable& loop, const SubloopMask& sub,
                                 ExecPolicy policy = ExecPolicy::parallel);

struct LoopHom {
  CayleyTable source;
  CayleyTable target;
  std::vector<Element> map;

  Element operator()(Element x) const { return map[x]; }
};

// Throws Errc::not_a_homomorphism with the first failing pair, or when the
// identity is not preserved.
LoopHom make_hom(CayleyTable source, CayleyTable target, std::vector<Element> map);

struct FactorLoop {
  CayleyTable quotient;
  LoopHom projection;
};

// Cosets are labelled in order of their smallest element. Throws Errc::not_normal.
FactorLoop factor_loop(const CayleyTable& loop, const SubloopMask& sub);

// {x : h(x) = e}. Re-verifies h and throws Errc::not_a_homomorphism.
SubloopMask hom_kernel(const LoopHom& h);

inline constexpr std::size_t kDefaultSubloopOrderBound = 16;

// Every normal subloop, {e} and the loop included, sorted by size then
// elements. Throws Errc::order_bound_exceeded above `order_bound`.
std::vector<SubloopMask> normal_subloops(const CayleyTable& loop,
                                         std::size_t order_bound = kDefaultSubloopOrderBound,
                                         ExecPolicy policy = ExecPolicy::parallel);

// Every subloop, sorted the same way.
std::vector<SubloopMask> all_subloops(const CayleyTable& loop,
                                      std::size_t order_bound = kDefaultSubloopOrderBound);

}  // namespace bolkit
