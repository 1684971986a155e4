#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bolkit/loop.hpp"
#include "bolkit/perm_group.hpp"

namespace bolkit {

// Group generated by all left translations. Acts transitively.
PermutationGroup mlt_group(const CayleyTable& loop);

// Group generated by all inner mappings delta_{x,y}.
PermutationGroup inner_mapping_group(const CayleyTable& loop);

// Stabilizer of the identity in Mlt(L), cross-checked against the group the
// inner mappings generate. Throws Errc::inner_mismatch if they differ.
PermutationGroup inner_group(const CayleyTable& loop);

// {alpha in Mlt(L) : alpha(x) in Nx for all x}, by filtering the full
// enumeration of Mlt(L). Sorted.
std::vector<Permutation> l_of_n_elements(const CayleyTable& loop, const SubloopMask& sub,
                                         std::uint64_t bound = kDefaultEnumerationBound);
PermutationGroup l_of_n(const CayleyTable& loop, const SubloopMask& sub,
                        std::uint64_t bound = kDefaultEnumerationBound);

// The epimorphism Mlt(L) -> Mlt(L/N) induced by the projection L -> L/N,
// sending lambda_a to lambda_{theta(a)}.
class InducedEpimorphism {
 public:
  // Builds the map by a breadth-first walk of the Cayley graph of Mlt(L),
  // extending multiplicatively from the generators and checking every edge
  // for consistency, then compares each image with theta(alpha(x)) on every
  // coset representative. Throws Errc::not_normal,
  // Errc::order_bound_exceeded, or Errc::not_a_homomorphism.
  InducedEpimorphism(const CayleyTable& loop, const SubloopMask& sub,
                     std::uint64_t bound = kDefaultEnumerationBound);

  const FactorLoop& factor() const noexcept { return factor_; }
  const PermutationGroup& source() const noexcept { return source_; }
  const PermutationGroup& target() const noexcept { return target_; }

  // theta_*(alpha), defined by theta_*(alpha)(theta(x)) = theta(alpha(x)).
  Permutation operator()(const Permutation& alpha) const;

  // Sorted elements of Mlt(L) and of the kernel.
  const std::vector<Permutation>& source_elements() const noexcept { return elements_; }
  const std::vector<Permutation>& kernel_elements() const noexcept { return kernel_; }
  PermutationGroup kernel() const;

  // Number of distinct images; equals |Mlt(L/N)| for an epimorphism.
  std::uint64_t image_order() const noexcept { return image_order_; }

 private:
  FactorLoop factor_;
  PermutationGroup source_;
  PermutationGroup target_;
  std::vector<Permutation> elements_;
  std::vector<Permutation> kernel_;
  std::uint64_t image_order_ = 0;
};

struct KernelCorrespondenceReport {
  std::uint64_t mlt_order = 0;
  std::uint64_t quotient_mlt_order = 0;
  std::uint64_t l_of_n_order = 0;
  bool kernel_equals_l_of_n = false;
  bool l_of_n_normal = false;
  bool order_product_holds = false;
  bool properness_equivalent = false;

  bool all_pass() const noexcept {
    return kernel_equals_l_of_n && l_of_n_normal && order_product_holds && properness_equivalent;
  }
};

KernelCorrespondenceReport check_kernel_correspondence(const CayleyTable& loop, const SubloopMask& sub,
                          std::uint64_t bound = kDefaultEnumerationBound);

struct QdElement {
  Element x;
  Permutation alpha;
  friend bool operator==(const QdElement&, const QdElement&) = default;
};

struct QuasidirectReport {
  std::size_t size = 0;
  std::uint64_t mlt_order = 0;
  bool identity_neutral = false;
  bool closed = false;
  bool associative = false;
  bool exhaustive_associativity = false;
  bool bijective = false;
  bool homomorphism = false;
  // First pair (p, q), by element index, where phi(pq) != phi(p) phi(q).
  std::optional<std::array<std::size_t, 2>> homomorphism_witness;

  bool is_isomorphism() const noexcept {
    return identity_neutral && closed && associative && bijective && homomorphism;
  }
};

// L x Delta(L) with (x, a)(y, b) = (x a(y), delta_{x, a(y)} a b), together
// with the map (x, a) -> lambda_x a into Mlt(L).
class QuasidirectProduct {
 public:
  explicit QuasidirectProduct(const CayleyTable& loop,
                              std::uint64_t bound = kDefaultEnumerationBound);

  std::size_t size() const noexcept { return loop_.order() * inner_.size(); }
  const std::vector<Permutation>& inner_elements() const noexcept { return inner_; }

  QdElement identity() const;
  QdElement multiply(const QdElement& p, const QdElement& q) const;
  Permutation to_mlt(const QdElement& p) const;

  // Elements ordered by (x, index of alpha in inner_elements()).
  QdElement element(std::size_t index) const;

  // Full verification. Associativity is checked on every triple when size()
  // is at most `exhaustive_bound`, otherwise on `spot_checks` triples drawn
  // with the fixed `seed`. The homomorphism check covers every pair.
  QuasidirectReport verify(std::size_t exhaustive_bound = 128, std::size_t spot_checks = 10'000,
                           std::uint64_t seed = 0x5eed,
                           ExecPolicy policy = ExecPolicy::parallel) const;

 private:
  CayleyTable loop_;
  PermutationGroup mlt_;
  std::vector<Permutation> inner_;
};

}  // namespace bolkit
