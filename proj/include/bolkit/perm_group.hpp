#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bolkit/parallel.hpp"
#include "bolkit/permutation.hpp"

namespace bolkit {

inline constexpr std::uint64_t kDefaultEnumerationBound = 1'000'000;

// A permutation group on {0..degree-1} with a base and strong generating set
// built by the deterministic Schreier-Sims algorithm. Immutable once built.
//
// Base points: an optional caller-supplied prefix, then for each new level
// the smallest point moved by the residue that forced the level. Transversal
// entries are never replaced once set, so a sift is reproducible.
class PermutationGroup {
 public:
  PermutationGroup(std::size_t degree, std::vector<Permutation> generators,
                   std::vector<Element> base_prefix = {});

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  std::vector<Element> base() const;

  // Throws Errc::order_bound_exceeded if the order does not fit in 64 bits.
  std::uint64_t order() const;
  bool is_trivial() const noexcept { return levels_.empty(); }

  // Exact membership by sifting. Throws Errc::degree_mismatch.
  bool contains(const Permutation& p) const;

  // Strong generators fixing base points 0..level-1.
  const std::vector<Permutation>& strong_generators(std::size_t level) const;
  std::size_t depth() const noexcept { return levels_.size(); }

  // Orbit of `point` under the whole group, sorted.
  std::vector<Element> orbit(Element point) const;

  // Every element, sorted lexicographically by image array. Computed on each
  // call. Throws Errc::order_bound_exceeded when order() > bound.
  std::vector<Permutation> elements(std::uint64_t bound = kDefaultEnumerationBound) const;

 private:
  struct Level {
    Element base;
    std::vector<Permutation> gens;
    std::vector<std::optional<Permutation>> transversal;  // by point
    std::vector<Element> orbit;
  };
  struct SiftResult {
    Permutation residue;
    std::size_t level;  // first level where the sift stopped; depth() if none
  };

  void rebuild_orbit(Level& level) const;
  SiftResult sift(Permutation h, std::size_t from) const;
  void schreier_sims();

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::vector<Level> levels_;
};

PermutationGroup group_from_generators(std::vector<Permutation> gens, std::size_t degree);

// Smallest subgroup containing `elems`; only elements not already present
// are added as generators.
PermutationGroup subgroup_from_elements(std::size_t degree, const std::vector<Permutation>& elems);

PermutationGroup point_stabilizer(const PermutationGroup& group, Element point);

// Throws Errc::element_not_in_group if some member of `seeds` is not in `group`.
PermutationGroup normal_closure(const PermutationGroup& group, const std::vector<Permutation>& seeds);

// H <= G with every generator of H conjugated by every generator of G staying in H.
bool is_normal_subgroup(const PermutationGroup& group, const PermutationGroup& sub);

// Same group: equal orders and each generating set inside the other.
bool same_group(const PermutationGroup& a, const PermutationGroup& b);

struct SimplicityResult {
  bool simple;
  // Proper nontrivial normal subgroup when `simple` is false.
  std::optional<PermutationGroup> witness;
  // Element whose normal closure is the witness.
  std::optional<Permutation> witness_seed;
};

// Decides simplicity by normal closures of conjugacy class representatives,
// scanned in element enumeration order; the witness reported is the one for
// the smallest such element. Throws Errc::invalid_argument on the trivial
// group and Errc::order_bound_exceeded when order() > bound.
SimplicityResult is_simple_group(const PermutationGroup& group,
                                 std::uint64_t bound = kDefaultEnumerationBound,
                                 ExecPolicy policy = ExecPolicy::parallel);

bool is_prime(std::uint64_t n) noexcept;

}  // namespace bolkit
