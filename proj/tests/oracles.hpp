#pragma once
// Brute-force reference implementations. They work on plain nested vectors
// and std::set and share no code with the library paths they check.

#include <algorithm>
#include <array>
#include <deque>
#include <optional>
#include <set>
#include <vector>

#include "bolkit/loop.hpp"

namespace oracle {

using Table = std::vector<std::vector<unsigned>>;
using Triple = std::array<unsigned, 3>;
using Perm = std::vector<unsigned>;

inline Table plain(const bolkit::CayleyTable& t) {
  Table out(t.order(), std::vector<unsigned>(t.order()));
  for (unsigned x = 0; x < t.order(); ++x)
    for (unsigned y = 0; y < t.order(); ++y) out[x][y] = t(x, y);
  return out;
}

inline unsigned identity_of(const Table& t) {
  for (unsigned e = 0; e < t.size(); ++e) {
    bool ok = true;
    for (unsigned x = 0; x < t.size(); ++x) ok = ok && t[e][x] == x && t[x][e] == x;
    if (ok) return e;
  }
  return ~0u;
}

template <class Lhs, class Rhs>
std::optional<Triple> first_triple_violation(const Table& t, Lhs lhs, Rhs rhs) {
  const unsigned n = static_cast<unsigned>(t.size());
  for (unsigned x = 0; x < n; ++x)
    for (unsigned y = 0; y < n; ++y)
      for (unsigned z = 0; z < n; ++z)
        if (lhs(t, x, y, z) != rhs(t, x, y, z)) return Triple{x, y, z};
  return std::nullopt;
}

inline std::optional<Triple> bol_violation(const Table& t) {
  return first_triple_violation(
      t, [](const Table& m, unsigned x, unsigned y, unsigned z) { return m[x][m[y][m[x][z]]]; },
      [](const Table& m, unsigned x, unsigned y, unsigned z) {
        const unsigned yx = m[y][x];
        const unsigned xyx = m[x][yx];
        return m[xyx][z];
      });
}

// The four classical Moufang identities.
inline std::array<bool, 4> moufang_variants(const Table& t) {
  auto holds = [&](auto lhs, auto rhs) { return !first_triple_violation(t, lhs, rhs); };
  using M = const Table&;
  return {
      holds([](M m, unsigned x, unsigned y, unsigned z) { return m[m[x][y]][m[z][x]]; },
            [](M m, unsigned x, unsigned y, unsigned z) { return m[x][m[m[y][z]][x]]; }),
      holds([](M m, unsigned x, unsigned y, unsigned z) { return m[z][m[x][m[z][y]]]; },
            [](M m, unsigned x, unsigned y, unsigned z) { return m[m[m[z][x]][z]][y]; }),
      holds([](M m, unsigned x, unsigned y, unsigned z) { return m[x][m[z][m[y][z]]]; },
            [](M m, unsigned x, unsigned y, unsigned z) { return m[m[m[x][z]][y]][z]; }),
      holds([](M m, unsigned x, unsigned y, unsigned z) { return m[m[z][x]][m[y][z]]; },
            [](M m, unsigned x, unsigned y, unsigned z) { return m[m[z][m[x][y]]][z]; }),
  };
}

inline bool associative(const Table& t) {
  return !first_triple_violation(
      t, [](const Table& m, unsigned x, unsigned y, unsigned z) { return m[m[x][y]][z]; },
      [](const Table& m, unsigned x, unsigned y, unsigned z) { return m[x][m[y][z]]; });
}

// ---- permutations and groups by closure -------------------------------

inline Perm compose(const Perm& p, const Perm& q) {
  Perm r(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
  return r;
}

inline Perm invert(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<unsigned>(i);
  return r;
}

inline Perm identity_perm(std::size_t n) {
  Perm r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<unsigned>(i);
  return r;
}

// Breadth-first closure of the generators under composition.
inline std::set<Perm> closure(const std::vector<Perm>& gens, std::size_t degree) {
  std::set<Perm> seen{identity_perm(degree)};
  std::deque<Perm> queue{identity_perm(degree)};
  while (!queue.empty()) {
    const Perm p = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      Perm q = compose(g, p);
      if (seen.insert(q).second) queue.push_back(std::move(q));
    }
  }
  return seen;
}

inline std::set<Perm> normal_closure(const std::set<Perm>& group, const Perm& x) {
  std::vector<Perm> conjugates;
  for (const auto& g : group) conjugates.push_back(compose(compose(g, x), invert(g)));
  return closure(conjugates, x.size());
}

// Simple iff every nonidentity element normally generates the group.
inline bool simple(const std::set<Perm>& group) {
  if (group.size() < 2) return false;
  for (const auto& x : group) {
    if (x == identity_perm(x.size())) continue;
    if (normal_closure(group, x).size() != group.size()) return false;
  }
  return true;
}

inline std::vector<Perm> translations(const Table& t) {
  std::vector<Perm> out;
  for (const auto& row : t) out.push_back(row);
  return out;
}

// ---- subloops by subset enumeration -----------------------------------

using Subset = std::set<unsigned>;

inline bool closed(const Table& t, const Subset& s) {
  for (unsigned a : s)
    for (unsigned b : s)
      if (!s.count(t[a][b])) return false;
  return true;
}

// Every subloop (subset containing e closed under the product). n <= 12.
inline std::vector<Subset> subloops(const Table& t) {
  const unsigned n = static_cast<unsigned>(t.size());
  const unsigned e = identity_of(t);
  std::vector<Subset> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (!((mask >> e) & 1)) continue;
    Subset s;
    for (unsigned i = 0; i < n; ++i)
      if ((mask >> i) & 1) s.insert(i);
    if (closed(t, s)) out.push_back(s);
  }
  return out;
}

inline std::optional<std::array<unsigned, 2>> normality_violation(const Table& t, const Subset& N) {
  const unsigned n = static_cast<unsigned>(t.size());
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b) {
      Subset left, middle, right;
      for (unsigned m : N) {
        left.insert(t[t[a][b]][m]);
        middle.insert(t[a][t[b][m]]);
        right.insert(t[t[a][m]][b]);
      }
      if (left != middle || middle != right) return std::array<unsigned, 2>{a, b};
    }
  return std::nullopt;
}

inline std::vector<Subset> normal_subloops(const Table& t) {
  std::vector<Subset> out;
  for (const auto& s : subloops(t))
    if (!normality_violation(t, s)) out.push_back(s);
  return out;
}

inline std::vector<unsigned> as_vector(const Subset& s) { return {s.begin(), s.end()}; }

// Normalized Latin squares (row 0 and column 0 the identity) of order n.
inline std::vector<Table> normalized_latin_squares(unsigned n) {
  std::vector<Table> out;
  Table rows{identity_perm(n)};
  auto rec = [&](auto&& self) -> void {
    const unsigned r = static_cast<unsigned>(rows.size());
    if (r == n) {
      out.push_back(rows);
      return;
    }
    Perm p = identity_perm(n);
    do {
      if (p[0] != r) continue;
      bool ok = true;
      for (unsigned k = 0; k < r && ok; ++k)
        for (unsigned c = 0; c < n && ok; ++c) ok = rows[k][c] != p[c];
      if (!ok) continue;
      rows.push_back(p);
      self(self);
      rows.pop_back();
    } while (std::next_permutation(p.begin(), p.end()));
  };
  rec(rec);
  return out;
}

}  // namespace oracle
