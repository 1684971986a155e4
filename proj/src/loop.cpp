#include "bolkit/loop.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>

namespace bolkit {

namespace {

std::string coord(std::size_t r, std::size_t c) {
  return "(" + std::to_string(r) + "," + std::to_string(c) + ")";
}

using Words = std::vector<std::uint64_t>;

void set_bit(Words& w, Element x) { w[x >> 6] |= std::uint64_t{1} << (x & 63); }

}  // namespace

CayleyTable validate_loop(std::size_t order, std::vector<Element> cells) {
  if (order == 0) throw Error(Errc::bad_table, "empty table");
  if (cells.size() != order * order)
    throw Error(Errc::bad_table, "expected " + std::to_string(order * order) + " entries, got " +
                                     std::to_string(cells.size()));
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i] >= order)
      throw Error(Errc::bad_table,
                  "entry " + std::to_string(cells[i]) + " out of range at " +
                      coord(i / order, i % order));

  for (std::size_t r = 0; r < order; ++r) {
    std::vector<std::size_t> where(order, order);
    for (std::size_t c = 0; c < order; ++c) {
      const Element v = cells[r * order + c];
      if (where[v] != order)
        throw Error(Errc::not_latin_square, "row " + std::to_string(r) + " repeats " +
                                                std::to_string(v) + " at " + coord(r, where[v]) +
                                                " and " + coord(r, c));
      where[v] = c;
    }
  }
  for (std::size_t c = 0; c < order; ++c) {
    std::vector<std::size_t> where(order, order);
    for (std::size_t r = 0; r < order; ++r) {
      const Element v = cells[r * order + c];
      if (where[v] != order)
        throw Error(Errc::not_latin_square, "column " + std::to_string(c) + " repeats " +
                                                std::to_string(v) + " at " + coord(where[v], c) +
                                                " and " + coord(r, c));
      where[v] = r;
    }
  }

  std::vector<Element> identities;
  for (Element e = 0; e < order; ++e) {
    bool ok = true;
    for (Element x = 0; x < order && ok; ++x)
      ok = cells[e * order + x] == x && cells[x * order + e] == x;
    if (ok) identities.push_back(e);
  }
  if (identities.empty()) throw Error(Errc::no_identity, "no two-sided identity element");
  if (identities.size() > 1)
    throw Error(Errc::multiple_identities, "several identity elements in a Latin square");

  CayleyTable t;
  t.order_ = order;
  t.identity_ = identities.front();
  t.cells_ = std::move(cells);
  t.right_inv_.resize(order);
  t.left_inv_.resize(order);
  for (Element x = 0; x < order; ++x)
    for (Element y = 0; y < order; ++y) {
      if (t(x, y) == t.identity_) t.right_inv_[x] = y;
      if (t(y, x) == t.identity_) t.left_inv_[x] = y;
    }
  return t;
}

CayleyTable validate_loop(const std::vector<std::vector<Element>>& rows) {
  std::vector<Element> cells;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size())
      throw Error(Errc::bad_table, "row " + std::to_string(r) + " has " +
                                       std::to_string(rows[r].size()) + " entries, expected " +
                                       std::to_string(rows.size()));
    cells.insert(cells.end(), rows[r].begin(), rows[r].end());
  }
  return validate_loop(rows.size(), std::move(cells));
}

std::optional<Element> CayleyTable::inverse(Element x) const {
  if (left_inv_[x] != right_inv_[x]) return std::nullopt;
  return right_inv_[x];
}

std::vector<std::vector<Element>> CayleyTable::rows() const {
  std::vector<std::vector<Element>> out;
  for (Element x = 0; x < order_; ++x) out.emplace_back(row(x).begin(), row(x).end());
  return out;
}

IdentityCheck<3> is_left_bol(const CayleyTable& L, ExecPolicy policy) {
  auto w = par::first_failing_triple(policy, L.order(), [&](Element x, Element y, Element z) {
    return L(x, L(y, L(x, z))) == L(L(x, L(y, x)), z);
  });
  return {!w, w};
}

IdentityCheck<3> is_moufang(const CayleyTable& L, ExecPolicy policy) {
  auto w = par::first_failing_triple(policy, L.order(), [&](Element x, Element y, Element z) {
    return L(L(x, y), L(z, x)) == L(x, L(L(y, z), x));
  });
  return {!w, w};
}

IdentityCheck<3> is_associative(const CayleyTable& L, ExecPolicy policy) {
  auto w = par::first_failing_triple(policy, L.order(), [&](Element x, Element y, Element z) {
    return L(L(x, y), z) == L(x, L(y, z));
  });
  return {!w, w};
}

IdentityCheck<2> has_aip(const CayleyTable& L, ExecPolicy policy) {
  std::vector<Element> inv(L.order());
  for (Element x = 0; x < L.order(); ++x) {
    auto i = L.inverse(x);
    if (!i) throw Error(Errc::no_inverse, "element " + std::to_string(x) +
                                              " has no two-sided inverse");
    inv[x] = *i;
  }
  auto w = par::first_failing_pair(policy, L.order(), [&](Element x, Element y) {
    return inv[L(x, y)] == L(inv[x], inv[y]);
  });
  return {!w, w};
}

Permutation left_translation(const CayleyTable& L, Element x) {
  const auto r = L.row(x);
  return Permutation(std::vector<Element>(r.begin(), r.end()));
}

Permutation inner_mapping(const CayleyTable& L, Element x, Element y) {
  return left_translation(L, L(x, y)).inverse() * left_translation(L, x) * left_translation(L, y);
}

SubloopMask::SubloopMask(std::size_t parent_order, std::span<const Element> members)
    : bits_(parent_order, false) {
  for (Element m : members) {
    if (m >= parent_order) throw Error(Errc::invalid_argument, "member out of range");
    bits_[m] = true;
  }
}

std::size_t SubloopMask::size() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<Element> SubloopMask::elements() const {
  std::vector<Element> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(static_cast<Element>(i));
  return out;
}

bool is_subloop(const CayleyTable& L, const SubloopMask& set) {
  if (set.parent_order() != L.order() || !set.contains(L.identity())) return false;
  const auto members = set.elements();
  for (Element a : members)
    for (Element b : members)
      if (!set.contains(L(a, b))) return false;
  return true;
}

SubloopMask subloop_generated(const CayleyTable& L, std::span<const Element> generators) {
  std::vector<bool> in(L.order(), false);
  std::vector<Element> members;
  auto add = [&](Element x) {
    if (!in[x]) {
      in[x] = true;
      members.push_back(x);
    }
  };
  add(L.identity());
  for (Element g : generators) {
    if (g >= L.order()) throw Error(Errc::invalid_argument, "generator out of range");
    add(g);
  }
  // Every pair is multiplied once the later of its two members is reached.
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Element a = members[i];
    for (std::size_t j = 0; j <= i; ++j) {
      const Element b = members[j];
      add(L(a, b));
      add(L(b, a));
    }
  }
  return SubloopMask(L.order(), members);
}

NormalityCheck is_normal_subloop(const CayleyTable& L, const SubloopMask& N, ExecPolicy policy) {
  if (!is_subloop(L, N)) throw Error(Errc::not_a_subloop, "set is not a subloop");
  const auto members = N.elements();
  const std::size_t words = (L.order() + 63) / 64;
  auto w = par::first_failing_pair(policy, L.order(), [&](Element a, Element b) {
    Words left(words), middle(words), right(words);
    const Element ab = L(a, b);
    for (Element n : members) {
      set_bit(left, L(ab, n));
      set_bit(middle, L(a, L(b, n)));
      set_bit(right, L(L(a, n), b));
    }
    return left == middle && middle == right;
  });
  return {!w, w};
}

LoopHom make_hom(CayleyTable source, CayleyTable target, std::vector<Element> map) {
  if (map.size() != source.order())
    throw Error(Errc::not_a_homomorphism, "map length differs from the source order");
  for (Element v : map)
    if (v >= target.order()) throw Error(Errc::not_a_homomorphism, "image out of range");
  if (map[source.identity()] != target.identity())
    throw Error(Errc::not_a_homomorphism, "identity not preserved");
  auto w = par::first_failing_pair_serial(source.order(), [&](Element x, Element y) {
    return map[source(x, y)] == target(map[x], map[y]);
  });
  if (w)
    throw Error(Errc::not_a_homomorphism, "fails at pair (" + std::to_string((*w)[0]) + "," +
                                              std::to_string((*w)[1]) + ")");
  return LoopHom{std::move(source), std::move(target), std::move(map)};
}

FactorLoop factor_loop(const CayleyTable& L, const SubloopMask& N) {
  if (!is_normal_subloop(L, N)) throw Error(Errc::not_normal, "subloop is not normal");
  const std::size_t n = L.order();
  const auto members = N.elements();
  constexpr Element unset = ~Element{0};
  std::vector<Element> label(n, unset);
  Element cosets = 0;
  for (Element x = 0; x < n; ++x) {
    if (label[x] != unset) continue;
    for (Element m : members) label[L(x, m)] = cosets;
    ++cosets;
  }
  std::vector<Element> cells(std::size_t{cosets} * cosets, unset);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      Element& cell = cells[label[a] * cosets + label[b]];
      const Element v = label[L(a, b)];
      if (cell == unset) cell = v;
      else if (cell != v)
        throw Error(Errc::not_normal, "coset product is not well defined");
    }
  CayleyTable quotient = validate_loop(cosets, std::move(cells));
  LoopHom projection = make_hom(L, quotient, label);
  return FactorLoop{std::move(quotient), std::move(projection)};
}

SubloopMask hom_kernel(const LoopHom& h) {
  const LoopHom checked = make_hom(h.source, h.target, h.map);
  std::vector<Element> ker;
  for (Element x = 0; x < checked.source.order(); ++x)
    if (checked.map[x] == checked.target.identity()) ker.push_back(x);
  return SubloopMask(checked.source.order(), ker);
}

std::vector<SubloopMask> all_subloops(const CayleyTable& L, std::size_t order_bound) {
  if (L.order() > order_bound)
    throw Error(Errc::order_bound_exceeded, "loop order " + std::to_string(L.order()) +
                                                " exceeds subloop enumeration bound " +
                                                std::to_string(order_bound));
  std::set<std::vector<Element>> seen;
  std::vector<SubloopMask> found;
  auto add = [&](SubloopMask s) {
    if (seen.insert(s.elements()).second) found.push_back(std::move(s));
  };
  add(subloop_generated(L, {}));
  for (Element x = 0; x < L.order(); ++x) {
    const Element g[] = {x};
    add(subloop_generated(L, g));
  }
  // Joins of pairs reach every subloop: each is the join of the subloops its
  // elements generate.
  for (std::size_t i = 0; i < found.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      auto gens = found[i].elements();
      const auto more = found[j].elements();
      gens.insert(gens.end(), more.begin(), more.end());
      add(subloop_generated(L, gens));
    }
  std::sort(found.begin(), found.end());
  return found;
}

std::vector<SubloopMask> normal_subloops(const CayleyTable& L, std::size_t order_bound,
                                         ExecPolicy policy) {
  const auto subs = all_subloops(L, order_bound);
  std::vector<char> normal(subs.size(), 0);
  const auto count = static_cast<std::ptrdiff_t>(subs.size());
  if (policy == ExecPolicy::serial) {
    for (std::ptrdiff_t i = 0; i < count; ++i)
      normal[i] = static_cast<bool>(is_normal_subloop(L, subs[i], ExecPolicy::serial));
  } else {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i)
      normal[i] = static_cast<bool>(is_normal_subloop(L, subs[i], ExecPolicy::serial));
  }
  std::vector<SubloopMask> out;
  for (std::size_t i = 0; i < subs.size(); ++i)
    if (normal[i]) out.push_back(subs[i]);
  return out;
}

}  // namespace bolkit
