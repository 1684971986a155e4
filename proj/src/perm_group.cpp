#include "bolkit/perm_group.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace bolkit {

namespace {

void check_degree(const Permutation& p, std::size_t degree) {
  if (p.degree() != degree)
    throw Error(Errc::degree_mismatch, "permutation of degree " + std::to_string(p.degree()) +
                                           " used with degree " + std::to_string(degree));
}

}  // namespace

PermutationGroup::PermutationGroup(std::size_t degree, std::vector<Permutation> generators,
                                   std::vector<Element> base_prefix)
    : degree_(degree) {
  for (auto& g : generators) {
    check_degree(g, degree_);
    if (g.is_identity()) continue;
    if (std::find(generators_.begin(), generators_.end(), g) == generators_.end())
      generators_.push_back(std::move(g));
  }
  for (Element b : base_prefix) {
    if (b >= degree_) throw Error(Errc::invalid_argument, "base point out of range");
    levels_.push_back(Level{b, {}, {}, {}});
  }
  schreier_sims();
  // Trailing prefix levels with trivial orbits carry no information.
  while (!levels_.empty() && levels_.back().orbit.size() == 1 && levels_.back().gens.empty())
    levels_.pop_back();
}

void PermutationGroup::rebuild_orbit(Level& level) const {
  level.transversal.assign(degree_, std::nullopt);
  level.orbit.clear();
  level.transversal[level.base] = Permutation::identity(degree_);
  level.orbit.push_back(level.base);
  for (std::size_t i = 0; i < level.orbit.size(); ++i) {
    const Element p = level.orbit[i];
    for (const auto& s : level.gens) {
      const Element q = s(p);
      if (!level.transversal[q]) {
        level.transversal[q] = s * *level.transversal[p];
        level.orbit.push_back(q);
      }
    }
  }
}

PermutationGroup::SiftResult PermutationGroup::sift(Permutation h, std::size_t from) const {
  for (std::size_t i = from; i < levels_.size(); ++i) {
    const Element p = h(levels_[i].base);
    const auto& u = levels_[i].transversal[p];
    if (!u) return {std::move(h), i};
    h = u->inverse() * h;
  }
  return {std::move(h), levels_.size()};
}

void PermutationGroup::schreier_sims() {
  // Make sure no generator fixes every base point.
  for (const auto& g : generators_) {
    bool fixes_all = true;
    for (const auto& lv : levels_)
      if (g(lv.base) != lv.base) fixes_all = false;
    if (fixes_all) levels_.push_back(Level{g.first_moved_point(), {}, {}, {}});
  }
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    for (const auto& g : generators_) {
      bool fixes_prefix = true;
      for (std::size_t j = 0; j < i; ++j)
        if (g(levels_[j].base) != levels_[j].base) fixes_prefix = false;
      if (fixes_prefix) levels_[i].gens.push_back(g);
    }
    rebuild_orbit(levels_[i]);
  }

  auto i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
  while (i >= 0) {
    bool complete = true;
    const auto lvl = static_cast<std::size_t>(i);
    const std::vector<Element> orbit = levels_[lvl].orbit;
    const std::vector<Permutation> gens = levels_[lvl].gens;
    for (std::size_t oi = 0; oi < orbit.size() && complete; ++oi) {
      const Element p = orbit[oi];
      for (const auto& s : gens) {
        const Permutation& up = *levels_[lvl].transversal[p];
        const Permutation& usp = *levels_[lvl].transversal[s(p)];
        SiftResult r = sift(usp.inverse() * s * up, lvl + 1);
        if (r.residue.is_identity()) continue;
        if (r.level == levels_.size()) {
          levels_.push_back(Level{r.residue.first_moved_point(), {}, {}, {}});
          rebuild_orbit(levels_.back());
        }
        for (std::size_t l = lvl + 1; l <= r.level; ++l) {
          levels_[l].gens.push_back(r.residue);
          rebuild_orbit(levels_[l]);
        }
        i = static_cast<std::ptrdiff_t>(r.level);
        complete = false;
        break;
      }
    }
    if (complete) --i;
  }
}

std::vector<Element> PermutationGroup::base() const {
  std::vector<Element> out;
  for (const auto& lv : levels_) out.push_back(lv.base);
  return out;
}

std::uint64_t PermutationGroup::order() const {
  std::uint64_t n = 1;
  for (const auto& lv : levels_)
    if (__builtin_mul_overflow(n, static_cast<std::uint64_t>(lv.orbit.size()), &n))
      throw Error(Errc::order_bound_exceeded, "group order does not fit in 64 bits");
  return n;
}

bool PermutationGroup::contains(const Permutation& p) const {
  check_degree(p, degree_);
  return sift(p, 0).residue.is_identity();
}

const std::vector<Permutation>& PermutationGroup::strong_generators(std::size_t level) const {
  static const std::vector<Permutation> none;
  return level < levels_.size() ? levels_[level].gens : none;
}

std::vector<Element> PermutationGroup::orbit(Element point) const {
  std::vector<bool> seen(degree_, false);
  std::vector<Element> out{point};
  seen[point] = true;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : generators_) {
      const Element q = g(out[i]);
      if (!seen[q]) {
        seen[q] = true;
        out.push_back(q);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Permutation> PermutationGroup::elements(std::uint64_t bound) const {
  const std::uint64_t n = order();
  if (n > bound)
    throw Error(Errc::order_bound_exceeded, "group order " + std::to_string(n) +
                                                " exceeds enumeration bound " +
                                                std::to_string(bound));
  std::vector<Permutation> out{Permutation::identity(degree_)};
  out.reserve(n);
  // Products u_0 * u_1 * ... * u_{k-1}, built from the deepest level up.
  for (auto lv = levels_.rbegin(); lv != levels_.rend(); ++lv) {
    std::vector<Permutation> next;
    next.reserve(out.size() * lv->orbit.size());
    for (Element p : lv->orbit)
      for (const auto& tail : out) next.push_back(*lv->transversal[p] * tail);
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

PermutationGroup group_from_generators(std::vector<Permutation> gens, std::size_t degree) {
  return PermutationGroup(degree, std::move(gens));
}

PermutationGroup subgroup_from_elements(std::size_t degree, const std::vector<Permutation>& elems) {
  PermutationGroup group(degree, {});
  std::vector<Permutation> gens;
  for (const auto& e : elems) {
    if (group.contains(e)) continue;
    gens.push_back(e);
    group = PermutationGroup(degree, gens);
  }
  return group;
}

PermutationGroup point_stabilizer(const PermutationGroup& group, Element point) {
  if (point >= group.degree()) throw Error(Errc::invalid_argument, "point out of range");
  const PermutationGroup rebased(group.degree(), group.generators(), {point});
  // Level 0 of `rebased` is `point` unless the prefix level was dropped as trivial,
  // which only happens for the trivial group.
  if (rebased.is_trivial() || rebased.base().front() != point) return group;
  return PermutationGroup(group.degree(), rebased.strong_generators(1));
}

PermutationGroup normal_closure(const PermutationGroup& group,
                                const std::vector<Permutation>& seeds) {
  for (const auto& s : seeds)
    if (!group.contains(s))
      throw Error(Errc::element_not_in_group, s.to_string() + " is not in the group");
  std::vector<Permutation> gens;
  for (const auto& s : seeds)
    if (!s.is_identity()) gens.push_back(s);
  PermutationGroup closure(group.degree(), gens);
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<Permutation> current = closure.generators();
    for (const auto& g : group.generators()) {
      for (const auto& n : current) {
        Permutation c = conjugate(g, n);
        if (closure.contains(c)) continue;
        gens.push_back(std::move(c));
        closure = PermutationGroup(group.degree(), gens);
        grew = true;
      }
    }
  }
  return closure;
}

bool is_normal_subgroup(const PermutationGroup& group, const PermutationGroup& sub) {
  for (const auto& h : sub.generators())
    if (!group.contains(h)) return false;
  for (const auto& g : group.generators())
    for (const auto& h : sub.generators())
      if (!sub.contains(conjugate(g, h))) return false;
  return true;
}

bool same_group(const PermutationGroup& a, const PermutationGroup& b) {
  if (a.degree() != b.degree() || a.order() != b.order()) return false;
  for (const auto& g : a.generators())
    if (!b.contains(g)) return false;
  for (const auto& g : b.generators())
    if (!a.contains(g)) return false;
  return true;
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

SimplicityResult is_simple_group(const PermutationGroup& group, std::uint64_t bound,
                                 ExecPolicy policy) {
  const std::uint64_t order = group.order();
  if (order == 1) throw Error(Errc::invalid_argument, "the trivial group is neither simple nor not");
  if (order > bound)
    throw Error(Errc::order_bound_exceeded,
                "group order " + std::to_string(order) + " exceeds bound " + std::to_string(bound));
  if (is_prime(order)) return {true, std::nullopt, std::nullopt};

  const auto elems = group.elements(bound);
  std::unordered_map<Permutation, std::size_t, PermutationHash> index;
  index.reserve(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], i);

  // Conjugacy classes share a normal closure; keep the smallest member of each.
  std::vector<std::size_t> reps;
  std::vector<bool> seen(elems.size(), false);
  std::vector<Permutation> gen_inverses;
  for (const auto& g : group.generators()) gen_inverses.push_back(g.inverse());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (seen[i] || elems[i].is_identity()) continue;
    reps.push_back(i);
    seen[i] = true;
    std::vector<std::size_t> queue{i};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const Permutation& x = elems[queue[q]];
      for (std::size_t k = 0; k < gen_inverses.size(); ++k) {
        const std::size_t j = index.at(group.generators()[k] * x * gen_inverses[k]);
        if (!seen[j]) {
          seen[j] = true;
          queue.push_back(j);
        }
      }
    }
  }

  std::vector<char> proper(reps.size(), 0);
  const auto count = static_cast<std::ptrdiff_t>(reps.size());
  if (policy == ExecPolicy::serial) {
    for (std::ptrdiff_t r = 0; r < count; ++r) {
      proper[r] = normal_closure(group, {elems[reps[r]]}).order() < order;
      if (proper[r]) break;
    }
  } else {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t r = 0; r < count; ++r)
      proper[r] = normal_closure(group, {elems[reps[r]]}).order() < order;
  }
  for (std::size_t r = 0; r < reps.size(); ++r)
    if (proper[r]) {
      const Permutation& seed = elems[reps[r]];
      return {false, normal_closure(group, {seed}), seed};
    }
  return {true, std::nullopt, std::nullopt};
}

}  // namespace bolkit
