#include "bolkit/bol_search.hpp"
#include "bolkit/loop_io.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

namespace bolkit {

namespace {

constexpr int kMax = static_cast<int>(kMaxSearchOrder);
using Row = std::array<std::int8_t, kMax>;

struct SearchState {
  int n = 0;
  std::array<Row, kMax> cell{};
  std::uint16_t filled = 0;                     // rows fully known
  std::array<std::uint16_t, kMax> col_used{};   // values present in each column
  std::array<std::uint16_t, kMax> pair_done{};  // [x] bit y: rows x, y already propagated

  bool is_filled(int r) const { return (filled >> r) & 1; }

  bool assign_row(int r, const Row& values) {
    for (int c = 1; c < n; ++c)
      if ((col_used[c] >> values[c]) & 1) return false;
    for (int c = 1; c < n; ++c) {
      cell[r][c] = values[c];
      col_used[c] |= static_cast<std::uint16_t>(1u << values[c]);
    }
    filled |= static_cast<std::uint16_t>(1u << r);
    return true;
  }

  // Apply lambda_x lambda_y lambda_x = lambda_{x(yx)} to every pair of known
  // rows until nothing changes.
  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int x = 0; x < n; ++x) {
        if (!is_filled(x)) continue;
        for (int y = 0; y < n; ++y) {
          if (!is_filled(y) || ((pair_done[x] >> y) & 1)) continue;
          pair_done[x] |= static_cast<std::uint16_t>(1u << y);
          const int w = cell[x][cell[y][x]];
          Row forced{};
          for (int z = 0; z < n; ++z) forced[z] = cell[x][cell[y][cell[x][z]]];
          if (is_filled(w)) {
            for (int z = 0; z < n; ++z)
              if (cell[w][z] != forced[z]) return false;
          } else {
            if (!assign_row(w, forced)) return false;
            changed = true;
          }
        }
      }
    }
    return true;
  }

  int first_open_row() const {
    for (int r = 0; r < n; ++r)
      if (!is_filled(r)) return r;
    return -1;
  }
};

SearchState initial_state(int n) {
  SearchState s;
  s.n = n;
  for (int r = 0; r < n; ++r) {
    s.cell[r].fill(-1);
    s.cell[r][0] = static_cast<std::int8_t>(r);
  }
  s.col_used[0] = static_cast<std::uint16_t>((1u << n) - 1);
  Row id{};
  for (int c = 0; c < n; ++c) id[c] = static_cast<std::int8_t>(c);
  s.assign_row(0, id);
  return s;
}

// All Latin-compatible rows for row r with cell[r][0] = r.
void candidate_rows(const SearchState& s, int r, std::vector<Row>& out) {
  Row row{};
  row[0] = static_cast<std::int8_t>(r);
  auto fill = [&](auto&& self, int c, std::uint16_t used) -> void {
    if (c == s.n) {
      out.push_back(row);
      return;
    }
    for (int v = 0; v < s.n; ++v) {
      const std::uint16_t bit = static_cast<std::uint16_t>(1u << v);
      if ((used & bit) || (s.col_used[c] & bit)) continue;
      row[c] = static_cast<std::int8_t>(v);
      self(self, c + 1, static_cast<std::uint16_t>(used | bit));
    }
  };
  fill(fill, 1, static_cast<std::uint16_t>(1u << r));
}

void extend(const SearchState& s, std::vector<SearchState>& done) {
  const int r = s.first_open_row();
  if (r < 0) {
    done.push_back(s);
    return;
  }
  std::vector<Row> rows;
  candidate_rows(s, r, rows);
  for (const auto& row : rows) {
    SearchState next = s;
    if (next.assign_row(r, row) && next.propagate()) extend(next, done);
  }
}

CayleyTable to_table(const SearchState& s) {
  std::vector<Element> cells;
  for (int r = 0; r < s.n; ++r)
    for (int c = 0; c < s.n; ++c) cells.push_back(static_cast<Element>(s.cell[r][c]));
  return validate_loop(static_cast<std::size_t>(s.n), std::move(cells));
}

}  // namespace

std::string BolFixture::flags() const {
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  return std::string("group=") + yn(group) + " bol=yes moufang=" + yn(moufang) + " aip=" + yn(aip);
}

BolFixture classify(CayleyTable table) {
  BolFixture f{std::move(table)};
  f.group = static_cast<bool>(is_associative(f.table, ExecPolicy::serial));
  f.moufang = static_cast<bool>(is_moufang(f.table, ExecPolicy::serial));
  try {
    f.aip = static_cast<bool>(has_aip(f.table, ExecPolicy::serial));
  } catch (const Error&) {
    f.aip = false;
  }
  return f;
}

std::vector<BolFixture> search_bol(std::size_t order, ExecPolicy policy) {
  if (order == 0 || order > kMaxSearchOrder)
    throw Error(Errc::order_bound_exceeded, "search_bol supports orders 1.." +
                                                std::to_string(kMaxSearchOrder) + ", got " +
                                                std::to_string(order));
  const int n = static_cast<int>(order);
  SearchState root = initial_state(n);
  std::vector<SearchState> finished;
  if (!root.propagate()) return {};

  const int r = root.first_open_row();
  if (r < 0) {
    finished.push_back(root);
  } else {
    // Branches over the first open row are independent.
    std::vector<Row> rows;
    candidate_rows(root, r, rows);
    std::vector<std::vector<SearchState>> per_branch(rows.size());
    const auto count = static_cast<std::ptrdiff_t>(rows.size());
#pragma omp parallel for schedule(dynamic) if (policy == ExecPolicy::parallel)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      SearchState next = root;
      if (next.assign_row(r, rows[i]) && next.propagate()) extend(next, per_branch[i]);
    }
    for (auto& b : per_branch) finished.insert(finished.end(), b.begin(), b.end());
  }

  std::vector<BolFixture> out;
  out.reserve(finished.size());
  for (const auto& s : finished) {
    CayleyTable t = to_table(s);
    if (!is_left_bol(t, ExecPolicy::serial))
      throw Error(Errc::numerical_failure, "search produced a table failing the Bol identity");
    out.push_back(classify(std::move(t)));
  }
  std::sort(out.begin(), out.end(), [](const BolFixture& a, const BolFixture& b) {
    return std::lexicographical_compare(a.table.cells().begin(), a.table.cells().end(),
                                        b.table.cells().begin(), b.table.cells().end());
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const BolFixture& a, const BolFixture& b) { return a.table == b.table; }),
            out.end());
  return out;
}

void write_fixtures(std::ostream& out, const std::vector<BolFixture>& fixtures) {
  for (std::size_t i = 0; i < fixtures.size(); ++i)
    write_loop(out, fixtures[i].table,
               "fixture " + std::to_string(i) + " order=" + std::to_string(fixtures[i].table.order()) +
                   " " + fixtures[i].flags());
}

}  // namespace bolkit
