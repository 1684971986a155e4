#pragma once
// Group tables and the cached search_bol fixture set used across suites.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "bolkit/bol_search.hpp"
#include "bolkit/loop.hpp"

namespace fixtures {

using bolkit::CayleyTable;
using bolkit::Element;

inline CayleyTable from_rule(std::size_t n, auto&& mul) {
  std::vector<Element> cells;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) cells.push_back(static_cast<Element>(mul(a, b)));
  return bolkit::validate_loop(n, std::move(cells));
}

inline CayleyTable cyclic(std::size_t n) {
  return from_rule(n, [n](std::size_t a, std::size_t b) { return (a + b) % n; });
}

// Z_2^k with xor.
inline CayleyTable elementary_abelian(std::size_t k) {
  return from_rule(std::size_t{1} << k, [](std::size_t a, std::size_t b) { return a ^ b; });
}

// D_n of order 2n: index a + n b stands for r^a s^b.
inline CayleyTable dihedral(std::size_t n) {
  return from_rule(2 * n, [n](std::size_t p, std::size_t q) {
    const std::size_t a = p % n, b = p / n, c = q % n, d = q / n;
    const std::size_t rot = b == 0 ? (a + c) % n : (a + n - c) % n;
    return rot + n * ((b + d) % 2);
  });
}

inline CayleyTable direct_product(const CayleyTable& x, const CayleyTable& y) {
  const std::size_t m = y.order();
  return from_rule(x.order() * m, [&](std::size_t p, std::size_t q) {
    return x(static_cast<Element>(p / m), static_cast<Element>(q / m)) * m +
           y(static_cast<Element>(p % m), static_cast<Element>(q % m));
  });
}

// Q_8: index 2u + s is (-1)^s times unit u in {1, i, j, k}.
inline CayleyTable quaternion() {
  // unit product: {sign, unit}
  static constexpr std::array<std::array<std::array<int, 2>, 4>, 4> units{{
      {{{0, 0}, {0, 1}, {0, 2}, {0, 3}}},
      {{{0, 1}, {1, 0}, {0, 3}, {1, 2}}},
      {{{0, 2}, {1, 3}, {1, 0}, {0, 1}}},
      {{{0, 3}, {0, 2}, {1, 1}, {1, 0}}},
  }};
  return from_rule(8, [](std::size_t p, std::size_t q) {
    const auto [s, u] = units[p / 2][q / 2];
    const std::size_t sign = (p % 2 + q % 2 + static_cast<std::size_t>(s)) % 2;
    return 2 * static_cast<std::size_t>(u) + sign;
  });
}

// S_3 on sorted image tuples of {0,1,2}, product p∘q.
inline CayleyTable symmetric3() {
  static const std::vector<std::array<int, 3>> perms{{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                                     {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  return from_rule(6, [](std::size_t p, std::size_t q) {
    std::array<int, 3> r{};
    for (int i = 0; i < 3; ++i) r[i] = perms[p][perms[q][i]];
    for (std::size_t k = 0; k < perms.size(); ++k)
      if (perms[k] == r) return k;
    return std::size_t{0};
  });
}

// An order-5 loop that fails the left Bol identity, drawn at random (fixed
// seed) from the 50 non-associative normalized Latin squares of order 5.
// First failing Bol triple: (1, 0, 1); first failing Moufang triple: (1, 1, 0).
inline CayleyTable nonbol5() {
  return bolkit::validate_loop(
      {{0, 1, 2, 3, 4}, {1, 2, 3, 4, 0}, {2, 0, 4, 1, 3}, {3, 4, 1, 0, 2}, {4, 3, 0, 2, 1}});
}

// Every group table of order <= 8 named in the acceptance criteria.
inline std::vector<std::pair<std::string, CayleyTable>> named_groups() {
  std::vector<std::pair<std::string, CayleyTable>> out;
  for (std::size_t n = 2; n <= 8; ++n) out.emplace_back("Z" + std::to_string(n), cyclic(n));
  out.emplace_back("Z2^2", elementary_abelian(2));
  out.emplace_back("Z2^3", elementary_abelian(3));
  out.emplace_back("Z4xZ2", direct_product(cyclic(4), cyclic(2)));
  out.emplace_back("S3", symmetric3());
  out.emplace_back("D3", dihedral(3));
  out.emplace_back("D4", dihedral(4));
  out.emplace_back("Q8", quaternion());
  return out;
}

// search_bol(order) for 1 <= order <= 8, computed once per process.
inline const std::vector<bolkit::BolFixture>& bol_fixtures(std::size_t order) {
  static std::map<std::size_t, std::vector<bolkit::BolFixture>> cache;
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, bolkit::search_bol(order)).first;
  return it->second;
}

// All fixtures of orders 2..8, in search order.
inline std::vector<const bolkit::BolFixture*> all_bol_fixtures() {
  std::vector<const bolkit::BolFixture*> out;
  for (std::size_t n = 2; n <= 8; ++n)
    for (const auto& f : bol_fixtures(n)) out.push_back(&f);
  return out;
}

// First order-8 fixture with the given flags.
inline const bolkit::BolFixture& first_order8(bool group, bool moufang, bool aip) {
  for (const auto& f : bol_fixtures(8))
    if (f.group == group && f.moufang == moufang && f.aip == aip) return f;
  throw std::runtime_error("no such order-8 fixture");
}

}  // namespace fixtures
