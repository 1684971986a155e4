#pragma once
//
// Scan kernels shared by the identity checkers. Each kernel has an OpenMP
// version and a serial reference; both report the lexicographically
// smallest failing tuple, so results never depend on the thread schedule.
//

#include <array>
#include <atomic>
#include <cstddef>
#include <optional>
#include <vector>

#ifdef BOLKIT_HAVE_OPENMP
#include <omp.h>
#endif

#include "bolkit/error.hpp"

namespace bolkit {

enum class ExecPolicy { parallel, serial };

namespace par {

using Triple = std::array<Element, 3>;
using Pair = std::array<Element, 2>;

template <class Holds>
std::optional<Triple> first_failing_triple_serial(std::size_t n, Holds&& holds) {
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z)
        if (!holds(x, y, z)) return Triple{x, y, z};
  return std::nullopt;
}

// Partitions the outer index across threads. Rows above the best failing
// row found so far are skipped; the minimum is taken at the end.
template <class Holds>
std::optional<Triple> first_failing_triple(std::size_t n, Holds&& holds) {
  std::vector<std::optional<Triple>> per_row(n);
  std::atomic<std::size_t> best{n};
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto x = static_cast<Element>(i);
    if (static_cast<std::size_t>(x) > best.load(std::memory_order_relaxed)) continue;
    for (Element y = 0; y < n && !per_row[x]; ++y)
      for (Element z = 0; z < n; ++z)
        if (!holds(x, y, z)) {
          per_row[x] = Triple{x, y, z};
          std::size_t seen = best.load();
          while (x < seen && !best.compare_exchange_weak(seen, x)) {
          }
          break;
        }
  }
  for (const auto& r : per_row)
    if (r) return r;
  return std::nullopt;
}

template <class Holds>
std::optional<Pair> first_failing_pair_serial(std::size_t n, Holds&& holds) {
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      if (!holds(x, y)) return Pair{x, y};
  return std::nullopt;
}

template <class Holds>
std::optional<Pair> first_failing_pair(std::size_t n, Holds&& holds) {
  std::vector<std::optional<Pair>> per_row(n);
  std::atomic<std::size_t> best{n};
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto x = static_cast<Element>(i);
    if (static_cast<std::size_t>(x) > best.load(std::memory_order_relaxed)) continue;
    for (Element y = 0; y < n; ++y)
      if (!holds(x, y)) {
        per_row[x] = Pair{x, y};
        std::size_t seen = best.load();
        while (x < seen && !best.compare_exchange_weak(seen, x)) {
        }
        break;
      }
  }
  for (const auto& r : per_row)
    if (r) return r;
  return std::nullopt;
}

template <class Holds>
std::optional<Triple> first_failing_triple(ExecPolicy policy, std::size_t n, Holds&& holds) {
  return policy == ExecPolicy::serial ? first_failing_triple_serial(n, holds)
                                      : first_failing_triple(n, holds);
}

template <class Holds>
std::optional<Pair> first_failing_pair(ExecPolicy policy, std::size_t n, Holds&& holds) {
  return policy == ExecPolicy::serial ? first_failing_pair_serial(n, holds)
                                      : first_failing_pair(n, holds);
}

inline int max_threads() {
#ifdef BOLKIT_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace par
}  // namespace bolkit
