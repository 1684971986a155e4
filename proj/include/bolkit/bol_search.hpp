#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "bolkit/loop.hpp"

namespace bolkit {

inline constexpr std::size_t kMaxSearchOrder = 8;

struct BolFixture {
  CayleyTable table;
  bool group = false;
  bool moufang = false;
  bool aip = false;

  // "group=no bol=yes moufang=no aip=yes"
  std::string flags() const;
};

// Every left Bol loop table of the given order with identity 0, as literal
// tables (no isomorphism reduction), sorted by the flattened table.
//
// Rows are filled one at a time. Whenever rows x and y are both known the
// identity lambda_x lambda_y lambda_x = lambda_{x(yx)} fixes the row of
// x(yx), which is either checked or filled in; a branch dies on the first
// conflict. Each result is re-checked with is_left_bol.
//
// Throws Errc::order_bound_exceeded above kMaxSearchOrder.
std::vector<BolFixture> search_bol(std::size_t order, ExecPolicy policy = ExecPolicy::parallel);

BolFixture classify(CayleyTable table);

void write_fixtures(std::ostream& out, const std::vector<BolFixture>& fixtures);

}  // namespace bolkit
