#include "bolkit/polar.hpp"

#include <algorithm>
#include <array>
#include <exception>
#include <numbers>
#include <vector>

#include <json.hpp>

namespace bolkit::polar {

std::string_view to_string(Field f) noexcept { return f == Field::real ? "real" : "complex"; }

std::optional<Field> parse_field(std::string_view s) noexcept {
  if (s == "real") return Field::real;
  if (s == "complex") return Field::complex;
  return std::nullopt;
}

Rng sample_rng(std::uint64_t seed, std::uint64_t index, std::uint64_t attempt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    static_cast<std::uint32_t>(attempt)};
  return Rng(seq);
}

namespace {

// Runs `body(i, rng)` for each sample, returning per-sample residual rows.
// Ill-conditioned samples are redrawn from a fresh stream up to
// options.retries times. Exceptions are carried out of the parallel region
// and the one from the lowest sample index is rethrown.
template <std::size_t K, class Body>
std::vector<std::array<double, K>> run_samples(std::size_t samples, std::uint64_t seed,
                                               const SampleOptions& options, Body&& body) {
  std::vector<std::array<double, K>> rows(samples);
  std::vector<std::exception_ptr> errors(samples);
  const auto count = static_cast<std::ptrdiff_t>(samples);
  auto one = [&](std::ptrdiff_t i) {
    for (int attempt = 0;; ++attempt) {
      try {
        Rng rng = sample_rng(seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(attempt));
        rows[i] = body(rng);
        return;
      } catch (const Error& e) {
        if (e.code() != Errc::ill_conditioned || attempt >= options.retries) {
          errors[i] = std::current_exception();
          return;
        }
      } catch (...) {
        errors[i] = std::current_exception();
        return;
      }
    }
  };
  if (options.policy == ExecPolicy::serial) {
    for (std::ptrdiff_t i = 0; i < count; ++i) one(i);
  } else {
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < count; ++i) one(i);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

template <std::size_t K>
std::array<double, K> column_max(const std::vector<std::array<double, K>>& rows) {
  std::array<double, K> out{};
  for (const auto& r : rows)
    for (std::size_t k = 0; k < K; ++k) out[k] = std::max(out[k], r[k]);
  return out;
}

template <class S>
struct ConditionTracker {
  double worst = 1;
  const HermitianPD<S>& operator()(const HermitianPD<S>& a) {
    worst = std::max(worst, a.condition());
    return a;
  }
};

template <class S>
IdentityReport identities_impl(std::size_t n, std::size_t samples, std::uint64_t seed,
                               const SampleOptions& opt) {
  const auto id = HermitianPD<S>::identity(n);
  auto rows = run_samples<6>(samples, seed, opt, [&](Rng& rng) {
    ConditionTracker<S> track;
    const auto a = track(sample_lg<S>(n, opt.spread, rng));
    const auto b = track(sample_lg<S>(n, opt.spread, rng));
    const auto c = track(sample_lg<S>(n, opt.spread, rng));

    const auto ac = track(compose(a, c));
    const auto bol_lhs = track(compose(a, track(compose(b, ac))));
    const auto aba = track(compose(a, track(compose(b, a))));
    const auto bol_rhs = track(compose(aba, c));
    const double bol = relative_residual(bol_lhs.matrix(), bol_rhs.matrix());

    const auto ab = track(compose(a, b));
    const double aip = relative_residual(ab.inverse().matrix(),
                                         compose(a.inverse(), b.inverse()).matrix());
    const double left_inverse = relative_residual(compose(a.inverse(), ab).matrix(), b.matrix());
    const double identity = std::max(relative_residual(compose(id, a).matrix(), a.matrix()),
                                     relative_residual(compose(a, id).matrix(), a.matrix()));

    // The root must be a member of L_G in its own right, so it is
    // re-validated from its matrix alone.
    const auto root = HermitianPD<S>::from_matrix(a.sqrt().matrix(), opt.tol);
    const double sqrt_residual = relative_residual(compose(root, root).matrix(), a.matrix());
    return std::array<double, 6>{bol, aip, left_inverse, identity, sqrt_residual, track.worst};
  });
  const auto m = column_max(rows);
  IdentityReport r;
  r.n = n;
  r.samples = samples;
  r.seed = seed;
  r.residual_bol = m[0];
  r.residual_aip = m[1];
  r.residual_left_inverse = m[2];
  r.residual_identity = m[3];
  r.residual_sqrt = m[4];
  r.max_condition_number = m[5];
  r.pass = std::max({m[0], m[1], m[2], m[3], m[4]}) <= opt.tol.identity &&
           m[5] <= opt.tol.report_condition;
  return r;
}

template <class S>
PhiReport phi_impl(std::size_t n, std::size_t samples, std::uint64_t seed, const SampleOptions& opt) {
  auto rows = run_samples<3>(samples, seed, opt, [&](Rng& rng) {
    const Matrix<S> g = sample_sl<S>(n, opt.spread, rng);
    const Matrix<S> h = sample_sl<S>(n, opt.spread, rng);
    const auto direct = phi_map<S>(g * h, opt.tol);
    const auto pg = phi_map<S>(g, opt.tol);
    const auto ph = phi_map<S>(h, opt.tol);
    // (A, w)(B, w') = (A o w(B), delta_{A, w(B)} w w')
    const auto moved = omega_action(pg.unitary, ph.positive);
    const auto prod = loop_op(pg.positive, moved, opt.tol);
    const Matrix<S> inner = prod.defect.matrix() * pg.unitary.matrix() * ph.unitary.matrix();
    ConditionTracker<S> track;
    track(direct.positive);
    track(pg.positive);
    track(ph.positive);
    track(prod.product);
    return std::array<double, 3>{
        relative_residual(direct.positive.matrix(), prod.product.matrix()),
        relative_residual(direct.unitary.matrix(), inner), track.worst};
  });
  const auto m = column_max(rows);
  PhiReport r;
  r.residual_loop_part = m[0];
  r.residual_inner_part = m[1];
  r.max_condition_number = m[2];
  r.pass = std::max(m[0], m[1]) <= opt.tol.identity && m[2] <= opt.tol.report_condition;
  return r;
}

template <class S>
DeltaReport delta_impl(std::size_t n, std::size_t samples, std::uint64_t seed, const SampleOptions& opt) {
  auto rows = run_samples<2>(samples, seed, opt, [&](Rng& rng) {
    ConditionTracker<S> track;
    const auto a = track(sample_lg<S>(n, opt.spread, rng));
    const auto b = track(sample_lg<S>(n, opt.spread, rng));
    const auto c = track(sample_lg<S>(n, opt.spread, rng));
    const auto ab = loop_op(a, b, opt.tol);
    track(ab.product);
    // lambda_{A o B}^-1 lambda_A lambda_B (C)
    const auto walked = left_divide(ab.product, track(compose(a, track(compose(b, c)))));
    const auto conjugated = omega_action(ab.defect, c);
    return std::array<double, 2>{relative_residual(walked.matrix(), conjugated.matrix()), track.worst};
  });
  const auto m = column_max(rows);
  DeltaReport r;
  r.residual = m[0];
  r.max_condition_number = m[1];
  r.pass = m[0] <= opt.tol.identity && m[1] <= opt.tol.report_condition;
  return r;
}

template <class S>
std::vector<Matrix<S>> central_elements(std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(n);
  const Matrix<S> id = Matrix<S>::Identity(dim, dim);
  std::vector<Matrix<S>> out;
  if constexpr (std::is_same_v<S, Complex>) {
    for (std::size_t k = 0; k < n; ++k)
      out.push_back(id * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) /
                                             static_cast<double>(n)));
  } else {
    out.push_back(id);
    if (n % 2 == 0) out.push_back(-id);
  }
  return out;
}

template <class S>
KernelReport kernel_impl(std::size_t n, std::size_t samples, std::uint64_t seed,
                         const SampleOptions& opt) {
  constexpr std::size_t probes = 8;
  std::vector<HermitianPD<S>> probe;
  for (std::size_t i = 0; i < probes; ++i) {
    Rng rng = sample_rng(seed, i, 1u << 16);
    probe.push_back(sample_lg<S>(n, opt.spread, rng));
  }
  KernelReport r;
  const auto central = central_elements<S>(n);
  r.central_elements = central.size();
  for (const auto& z : central) {
    const auto w = OmegaElement<S>::from_matrix(z, opt.tol);
    for (const auto& a : probe)
      r.central_residual =
          std::max(r.central_residual, relative_residual(omega_action(w, a).matrix(), a.matrix()));
  }
  auto rows = run_samples<1>(samples, seed, opt, [&](Rng& rng) {
    const auto w = sample_omega<S>(n, rng);
    double moved = 0;
    for (const auto& a : probe)
      moved = std::max(moved, relative_residual(omega_action(w, a).matrix(), a.matrix()));
    return std::array<double, 1>{moved};
  });
  r.noncentral_min_displacement = rows.empty() ? 0.0 : rows.front()[0];
  for (const auto& row : rows) r.noncentral_min_displacement = std::min(r.noncentral_min_displacement, row[0]);
  r.pass = r.central_residual <= opt.tol.identity &&
           (rows.empty() || r.noncentral_min_displacement > 100 * opt.tol.identity);
  return r;
}

}  // namespace

IdentityReport check_identities(Field field, std::size_t n, std::size_t samples, std::uint64_t seed,
                                const SampleOptions& options) {
  detail::check_dim(n);
  IdentityReport r = field == Field::real ? identities_impl<Real>(n, samples, seed, options)
                                          : identities_impl<Complex>(n, samples, seed, options);
  r.field = field;
  return r;
}

PhiReport check_phi_homomorphism(Field field, std::size_t n, std::size_t samples, std::uint64_t seed,
                                 const SampleOptions& options) {
  detail::check_dim(n);
  return field == Field::real ? phi_impl<Real>(n, samples, seed, options)
                              : phi_impl<Complex>(n, samples, seed, options);
}

DeltaReport check_delta_realization(Field field, std::size_t n, std::size_t samples,
                                    std::uint64_t seed, const SampleOptions& options) {
  detail::check_dim(n);
  return field == Field::real ? delta_impl<Real>(n, samples, seed, options)
                              : delta_impl<Complex>(n, samples, seed, options);
}

KernelReport kernel_spot_check(Field field, std::size_t n, std::size_t samples, std::uint64_t seed,
                               const SampleOptions& options) {
  detail::check_dim(n);
  return field == Field::real ? kernel_impl<Real>(n, samples, seed, options)
                              : kernel_impl<Complex>(n, samples, seed, options);
}

MatrixCheck run_matrix_check(Field field, std::size_t n, std::size_t samples, std::uint64_t seed,
                             const SampleOptions& options) {
  MatrixCheck m;
  m.identities = check_identities(field, n, samples, seed, options);
  m.phi = check_phi_homomorphism(field, n, samples, seed, options);
  m.delta = check_delta_realization(field, n, samples, seed, options);
  m.kernel = kernel_spot_check(field, n, samples, seed, options);
  return m;
}

std::string to_json(const IdentityReport& r) {
  nlohmann::ordered_json j;
  j["field"] = std::string(to_string(r.field));
  j["n"] = r.n;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["residual_bol"] = r.residual_bol;
  j["residual_aip"] = r.residual_aip;
  j["residual_left_inverse"] = r.residual_left_inverse;
  j["residual_identity"] = r.residual_identity;
  j["residual_sqrt"] = r.residual_sqrt;
  j["max_condition_number"] = r.max_condition_number;
  j["pass"] = r.pass;
  return j.dump();
}

IdentityReport identity_report_from_json(std::string_view text) {
  static constexpr std::string_view keys[] = {
      "field",          "n",                  "samples",
      "seed",           "residual_bol",       "residual_aip",
      "residual_left_inverse", "residual_identity", "residual_sqrt",
      "max_condition_number",  "pass"};
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, std::string("report is not JSON: ") + e.what());
  }
  if (!j.is_object() || j.size() != std::size(keys))
    throw Error(Errc::parse_error, "report must be an object with 11 keys");
  std::size_t i = 0;
  for (auto it = j.begin(); it != j.end(); ++it, ++i)
    if (it.key() != keys[i]) throw Error(Errc::parse_error, "unexpected key '" + it.key() + "'");
  try {
    IdentityReport r;
    const auto field = parse_field(j.at("field").get<std::string>());
    if (!field) throw Error(Errc::parse_error, "unknown field");
    r.field = *field;
    r.n = j.at("n").get<std::size_t>();
    r.samples = j.at("samples").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.residual_bol = j.at("residual_bol").get<double>();
    r.residual_aip = j.at("residual_aip").get<double>();
    r.residual_left_inverse = j.at("residual_left_inverse").get<double>();
    r.residual_identity = j.at("residual_identity").get<double>();
    r.residual_sqrt = j.at("residual_sqrt").get<double>();
    r.max_condition_number = j.at("max_condition_number").get<double>();
    r.pass = j.at("pass").get<bool>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, std::string("bad report field: ") + e.what());
  }
}

}  // namespace bolkit::polar
