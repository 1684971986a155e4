#include "bolkit/loop_io.hpp"

#include <charconv>
#include <optional>
#include <sstream>
#include <string>

namespace bolkit {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw Error(Errc::parse_error, "line " + std::to_string(line) + ": " + msg);
}

std::optional<unsigned long long> parse_uint(const std::string& tok) {
  unsigned long long v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) return std::nullopt;
  return v;
}

}  // namespace

std::vector<CayleyTable> read_loops(std::istream& in) {
  std::vector<CayleyTable> out;
  std::string raw;
  std::size_t line_no = 0;
  std::size_t order = 0;
  std::vector<Element> cells;
  bool in_table = false;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::istringstream tokens(line);
    if (!in_table) {
      std::string word, n_tok, extra;
      tokens >> word >> n_tok;
      if (word != "loop" || n_tok.empty() || (tokens >> extra))
        fail(line_no, "expected header 'loop <n>'");
      const auto n = parse_uint(n_tok);
      if (!n || *n == 0 || *n > 4096) fail(line_no, "bad loop order '" + n_tok + "'");
      order = static_cast<std::size_t>(*n);
      cells.clear();
      in_table = true;
      continue;
    }
    std::string tok;
    std::size_t count = 0;
    while (tokens >> tok) {
      const auto v = parse_uint(tok);
      if (!v) fail(line_no, "'" + tok + "' is not a non-negative integer");
      if (*v >= order) fail(line_no, "entry " + tok + " out of range for order " + std::to_string(order));
      cells.push_back(static_cast<Element>(*v));
      ++count;
    }
    if (count != order)
      fail(line_no, "row has " + std::to_string(count) + " entries, expected " + std::to_string(order));
    if (cells.size() == order * order) {
      out.push_back(validate_loop(order, std::move(cells)));
      cells = {};
      in_table = false;
    }
  }
  if (in_table) fail(line_no, "table ends after " + std::to_string(cells.size() / order) + " rows");
  return out;
}

CayleyTable read_loop(std::istream& in) {
  auto loops = read_loops(in);
  if (loops.size() != 1)
    throw Error(Errc::parse_error, "expected exactly one loop, found " + std::to_string(loops.size()));
  return std::move(loops.front());
}

void write_loop(std::ostream& out, const CayleyTable& L, std::string_view comment) {
  if (!comment.empty()) out << "# " << comment << '\n';
  out << "loop " << L.order() << '\n';
  for (Element x = 0; x < L.order(); ++x) {
    const auto r = L.row(x);
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? " " : "") << r[i];
    out << '\n';
  }
}

}  // namespace bolkit
