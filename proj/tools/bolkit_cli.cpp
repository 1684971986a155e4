// bolkit: command-line front end.
//
//   bolkit validate [--props] PATH
//   bolkit certify PATH
//   bolkit matrix-check [--field real|complex] [--n N] [--samples K] [--seed S]
//   bolkit search-bol --order N
//
// PATH may be "-" for standard input. Exit codes: 0 success, 1 domain
// error, 2 parse error, 3 bound exceeded, 4 numerical failure, 64 usage.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "bolkit/bol_search.hpp"
#include "bolkit/certificate.hpp"
#include "bolkit/loop_io.hpp"
#include "bolkit/polar.hpp"

namespace {

enum Exit : int { ok = 0, domain = 1, parse = 2, bound = 3, numerical = 4, usage = 64 };

int exit_code(const bolkit::Error& e) {
  using bolkit::Errc;
  switch (e.code()) {
    case Errc::parse_error:
    case Errc::bad_table: return parse;
    case Errc::order_bound_exceeded: return bound;
    case Errc::ill_conditioned:
    case Errc::numerical_failure: return numerical;
    default: return domain;
  }
}

std::vector<bolkit::CayleyTable> load(const std::string& path) {
  if (path == "-") return bolkit::read_loops(std::cin);
  std::ifstream in(path);
  if (!in) throw bolkit::Error(bolkit::Errc::parse_error, "cannot open '" + path + "'");
  return bolkit::read_loops(in);
}

const char* yn(bool b) { return b ? "yes" : "no"; }

int run_validate(const std::string& path, bool props) {
  for (const auto& loop : load(path)) {
    std::cout << "identity=" << loop.identity();
    if (props) {
      std::cout << " bol=" << yn(static_cast<bool>(bolkit::is_left_bol(loop)))
                << " moufang=" << yn(static_cast<bool>(bolkit::is_moufang(loop)));
      try {
        std::cout << " aip=" << yn(static_cast<bool>(bolkit::has_aip(loop)));
      } catch (const bolkit::Error& e) {
        if (e.code() != bolkit::Errc::no_inverse) throw;
        std::cout << " aip=undefined";
      }
    }
    std::cout << '\n';
  }
  return ok;
}

int run_certify(const std::string& path) {
  for (const auto& loop : load(path)) {
    const auto cert = bolkit::certify_simplicity(loop);
    std::cout << bolkit::to_json(cert) << '\n';
    if (cert.converse_gap())
      std::cerr << "note: Mlt(L) is not simple but L is simple\n";
  }
  return ok;
}

int run_matrix_check(const std::string& field_name, std::size_t n, std::size_t samples,
                     std::uint64_t seed, double spread) {
  const auto field = bolkit::polar::parse_field(field_name);
  bolkit::polar::SampleOptions options;
  options.spread = spread;
  const auto check = bolkit::polar::run_matrix_check(*field, n, samples, seed, options);
  auto report = check.identities;
  report.pass = check.pass();
  std::cout << bolkit::polar::to_json(report) << '\n';
  std::cerr << "phi: loop_part=" << check.phi.residual_loop_part
            << " inner_part=" << check.phi.residual_inner_part << " pass=" << yn(check.phi.pass)
            << "\ndelta: residual=" << check.delta.residual << " pass=" << yn(check.delta.pass)
            << "\nkernel: central=" << check.kernel.central_residual
            << " noncentral_min=" << check.kernel.noncentral_min_displacement
            << " pass=" << yn(check.kernel.pass) << '\n';
  return report.pass ? ok : domain;
}

int run_search(std::size_t order) {
  bolkit::write_fixtures(std::cout, bolkit::search_bol(order));
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bolkit: finite loops, left multiplication groups and matrix K-loops"};
  app.require_subcommand(1);

  std::string path;
  bool props = false;
  auto* validate = app.add_subcommand("validate", "Check a loop file and report its identity");
  validate->add_option("path", path, "Loop file, or - for stdin")->required();
  validate->add_flag("--props", props, "Also report bol, moufang and aip");

  auto* certify = app.add_subcommand("certify", "Emit a simplicity certificate per loop");
  certify->add_option("path", path, "Loop file, or - for stdin")->required();

  std::string field = "real";
  std::size_t n = 2, samples = 1000;
  std::uint64_t seed = 42;
  double spread = bolkit::polar::SampleOptions{}.spread;
  auto* matrix = app.add_subcommand("matrix-check", "Sampled checks of the matrix K-loop");
  matrix->add_option("--field", field, "real or complex")->check(CLI::IsMember({"real", "complex"}));
  matrix->add_option("--n", n, "Matrix dimension (2..8)")->check(CLI::Range(2, 8));
  matrix->add_option("--samples", samples, "Number of samples")->check(CLI::Range(1, 100'000'000));
  matrix->add_option("--seed", seed, "Sampling seed");
  matrix->add_option("--spread", spread, "Log-eigenvalue half-width")->check(CLI::Range(0.0, 3.0));

  std::size_t order = 0;
  auto* search = app.add_subcommand("search-bol", "Enumerate left Bol loop tables of an order");
  search->add_option("--order", order, "Loop order (1..8)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  try {
    if (*validate) return run_validate(path, props);
    if (*certify) return run_certify(path);
    if (*matrix) return run_matrix_check(field, n, samples, seed, spread);
    if (*search) return run_search(order);
  } catch (const bolkit::Error& e) {
    std::cerr << "error: " << e.what();
    if (!e.stage().empty()) std::cerr << " (stage: " << e.stage() << ")";
    std::cerr << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return domain;
  }
  return usage;
}
