#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <numbers>

#include "bolkit/polar.hpp"

using namespace bolkit;
using namespace bolkit::polar;

namespace {

using RMat = Matrix<Real>;
using CMat = Matrix<Complex>;

RMat rotation(double theta) {
  RMat r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

RMat diag2(double a, double b) {
  RMat m = RMat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

HermitianPD<Real> pd(const RMat& m) { return HermitianPD<Real>::from_matrix(m); }

// Square root by matrix logarithm and scaling-and-squaring exponential.
template <class S>
Matrix<S> sqrt_by_log(const Matrix<S>& m) {
  const Matrix<S> half_log = m.log() * S(0.5);
  return half_log.exp();
}

template <class S>
double dist(const Matrix<S>& a, const Matrix<S>& b) {
  return (a - b).norm();
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected bolkit::Error");
  return Errc::invalid_argument;
}

}  // namespace

TEST_SUITE("polar_part") {
  TEST_CASE("hermitian positive definite input is its own positive part") {
    const RMat a = rotation(0.3) * diag2(4.0, 0.25) * rotation(0.3).transpose();
    const auto parts = polar_part<Real>(a);
    CHECK(dist<Real>(parts.positive.matrix(), a) < 1e-12);
    CHECK(dist<Real>(parts.unitary.matrix(), RMat::Identity(2, 2)) < 1e-12);
  }

  TEST_CASE("rotations have trivial positive part") {
    Rng rng = sample_rng(1, 0);
    for (std::size_t n = 2; n <= 5; ++n) {
      const auto w = sample_omega<Real>(n, rng);
      const auto parts = polar_part<Real>(w.matrix());
      CHECK(dist<Real>(parts.positive.matrix(), RMat::Identity(n, n)) < 1e-10);
      CHECK(dist<Real>(parts.unitary.matrix(), w.matrix()) < 1e-10);
    }
  }

  TEST_CASE("exp(S) R is split back into exp(S) and R") {
    for (std::uint64_t i = 0; i < 50; ++i) {
      Rng rng = sample_rng(11, i);
      const std::size_t n = 2 + i % 4;
      const RMat g = gaussian_matrix<Real>(n, rng);
      RMat s = (g + g.transpose()) * 0.25;
      s -= RMat::Identity(n, n) * (s.trace() / static_cast<double>(n));
      const RMat expected_a = s.exp();
      const auto r = sample_omega<Real>(n, rng);
      const auto parts = polar_part<Real>(expected_a * r.matrix());
      CHECK(dist<Real>(parts.positive.matrix(), expected_a) < 1e-8);
      CHECK(dist<Real>(parts.unitary.matrix(), r.matrix()) < 1e-8);
    }
  }

  TEST_CASE("complex input") {
    Rng rng = sample_rng(12, 0);
    const auto a = sample_lg<Complex>(3, 1.0, rng);
    const auto w = sample_omega<Complex>(3, rng);
    const auto parts = polar_part<Complex>(a.matrix() * w.matrix());
    CHECK(dist<Complex>(parts.positive.matrix(), a.matrix()) < 1e-9);
    CHECK(dist<Complex>(parts.unitary.matrix(), w.matrix()) < 1e-9);
  }

  TEST_CASE("errors") {
    CHECK(code_of([] { polar_part<Real>(RMat::Identity(2, 2) * 2.0); }) == Errc::not_unimodular);
    CHECK(code_of([] { polar_part<Real>(diag2(1e5, 1e-5)); }) == Errc::ill_conditioned);
    CHECK(code_of([] { polar_part<Real>(RMat::Identity(1, 1)); }) == Errc::invalid_argument);
    CHECK(code_of([] { polar_part<Real>(RMat::Identity(9, 9)); }) == Errc::invalid_argument);
    CHECK(code_of([] { polar_part<Real>(RMat::Identity(2, 3)); }) == Errc::invalid_argument);
  }

  TEST_CASE("HermitianPD validation") {
    CHECK(code_of([] { pd(diag2(2.0, 1.0)); }) == Errc::not_unimodular);
    CHECK(code_of([] { pd(diag2(-1.0, -1.0)); }) == Errc::invalid_argument);
    RMat skew(2, 2);
    skew << 1, 1, 0, 1;
    CHECK(code_of([&] { pd(skew); }) == Errc::invalid_argument);
    CHECK(code_of([] { OmegaElement<Real>::from_matrix(diag2(1.0, -1.0)); }) == Errc::not_unimodular);
    CHECK(code_of([] { OmegaElement<Real>::from_matrix(diag2(2.0, 0.5)); }) == Errc::invalid_argument);
  }
}

TEST_SUITE("loop operation") {
  TEST_CASE("commuting diagonal factors") {
    const auto r = loop_op(pd(diag2(2, 0.5)), pd(diag2(3, 1.0 / 3)));
    CHECK(dist<Real>(r.product.matrix(), diag2(6, 1.0 / 6)) < 1e-12);
    CHECK(dist<Real>(r.defect.matrix(), RMat::Identity(2, 2)) < 1e-12);
  }

  TEST_CASE("A o A^-1 = I") {
    const auto a = pd(rotation(0.7) * diag2(5, 0.2) * rotation(0.7).transpose());
    const auto r = loop_op(a, a.inverse());
    CHECK(dist<Real>(r.product.matrix(), RMat::Identity(2, 2)) < 1e-12);
    CHECK(dist<Real>(r.defect.matrix(), RMat::Identity(2, 2)) < 1e-12);
  }

  TEST_CASE("non-commuting pair against a log/exp square root") {
    const RMat a = diag2(2, 0.5);
    const RMat b = rotation(std::numbers::pi / 4) * diag2(2, 0.5) * rotation(std::numbers::pi / 4).transpose();
    const auto r = loop_op(pd(a), pd(b));
    const RMat oracle_c = sqrt_by_log<Real>(a * b * b * a);
    CHECK(relative_residual<Real>(r.product.matrix(), oracle_c) < 1e-10);
    const RMat oracle_d = oracle_c.inverse() * a * b;
    CHECK(relative_residual<Real>(r.defect.matrix(), oracle_d) < 1e-10);
    CHECK(dist<Real>(r.defect.matrix(), RMat::Identity(2, 2)) > 1e-2);
  }

  TEST_CASE("sampled products stay in the set and reconstruct A B") {
    for (std::uint64_t i = 0; i < 200; ++i) {
      Rng rng = sample_rng(21, i);
      const std::size_t n = 2 + i % 7;
      const auto a = sample_lg<Complex>(n, 1.0, rng);
      const auto b = sample_lg<Complex>(n, 1.0, rng);
      const auto r = loop_op(a, b);
      // revalidate both factors from their raw matrices
      CHECK_NOTHROW(HermitianPD<Complex>::from_matrix(r.product.matrix()));
      CHECK_NOTHROW(OmegaElement<Complex>::from_matrix(r.defect.matrix()));
      const CMat ab = a.matrix() * b.matrix();
      CHECK(relative_residual<Complex>(r.product.matrix() * r.defect.matrix(), ab) < 1e-10);
      // the factorization is the polar one, so it is unique
      CHECK(relative_residual<Complex>(polar_part<Complex>(ab).positive.matrix(), r.product.matrix()) < 1e-9);
      CHECK(relative_residual<Complex>(r.product.matrix(), sqrt_by_log<Complex>(ab * ab.adjoint())) < 1e-9);
    }
  }

  TEST_CASE("left division undoes the product") {
    for (std::uint64_t i = 0; i < 100; ++i) {
      Rng rng = sample_rng(22, i);
      const auto a = sample_lg<Real>(3, 1.0, rng);
      const auto b = sample_lg<Real>(3, 1.0, rng);
      CHECK(relative_residual<Real>(left_divide(a, compose(a, b)).matrix(), b.matrix()) < 1e-10);
    }
  }

  TEST_CASE("dimension mismatch") {
    CHECK(code_of([] { loop_op(HermitianPD<Real>::identity(2), HermitianPD<Real>::identity(3)); }) ==
          Errc::degree_mismatch);
  }

  TEST_CASE("diagonal samples: identities hold to rounding") {
    for (std::uint64_t i = 0; i < 100; ++i) {
      Rng rng = sample_rng(23, i);
      std::uniform_real_distribution<double> t(-1.0, 1.0);
      auto diag = [&] {
        const double x = t(rng), y = t(rng);
        return pd(diag2(std::exp(x - y), std::exp(y - x)));
      };
      const auto a = diag(), b = diag(), c = diag();
      const double bol = relative_residual<Real>(compose(a, compose(b, compose(a, c))).matrix(),
                                                 compose(compose(a, compose(b, a)), c).matrix());
      CHECK(bol < 1e-14);
      CHECK(associator_defect(a, b, c) < 1e-14);
      CHECK(dist<Real>(inner_delta(a, b).matrix(), RMat::Identity(2, 2)) < 1e-14);
    }
  }
}

TEST_SUITE("omega action and inner mappings") {
  TEST_CASE("identity rotation and identity matrix") {
    const auto a = pd(rotation(0.2) * diag2(3, 1.0 / 3) * rotation(0.2).transpose());
    CHECK(dist<Real>(omega_action(OmegaElement<Real>::identity(2), a).matrix(), a.matrix()) < 1e-14);
    Rng rng = sample_rng(31, 0);
    const auto w = sample_omega<Real>(2, rng);
    CHECK(dist<Real>(omega_action(w, HermitianPD<Real>::identity(2)).matrix(), RMat::Identity(2, 2)) < 1e-14);
  }

  TEST_CASE("quarter turn swaps diagonal entries") {
    const auto w = OmegaElement<Real>::from_matrix(rotation(std::numbers::pi / 2));
    const auto r = omega_action(w, pd(diag2(4, 0.25)));
    CHECK(dist<Real>(r.matrix(), diag2(0.25, 4)) < 1e-14);
  }

  TEST_CASE("the action is conjugation and an automorphism") {
    for (std::uint64_t i = 0; i < 100; ++i) {
      Rng rng = sample_rng(32, i);
      const auto w = sample_omega<Complex>(3, rng);
      const auto a = sample_lg<Complex>(3, 1.0, rng);
      const auto b = sample_lg<Complex>(3, 1.0, rng);
      CHECK(relative_residual<Complex>(omega_action(w, a).matrix(),
                                       w.matrix() * a.matrix() * w.matrix().adjoint()) < 1e-12);
      CHECK(relative_residual<Complex>(omega_action(w, compose(a, b)).matrix(),
                                       compose(omega_action(w, a), omega_action(w, b)).matrix()) < 1e-10);
    }
  }

  TEST_CASE("d is trivial for commuting factors and for A o A") {
    const auto a = pd(rotation(0.4) * diag2(3, 1.0 / 3) * rotation(0.4).transpose());
    CHECK(dist<Real>(inner_delta(a, a).matrix(), RMat::Identity(2, 2)) < 1e-12);
    const auto b = pd(rotation(0.4) * diag2(1.5, 1.0 / 1.5) * rotation(0.4).transpose());
    CHECK(dist<Real>(inner_delta(a, b).matrix(), RMat::Identity(2, 2)) < 1e-12);
  }

  TEST_CASE("delta_{A,B} acts as conjugation by d_{A,B}") {
    Rng rng = sample_rng(33, 0);
    const auto a = sample_lg<Real>(3, 1.0, rng);
    const auto b = sample_lg<Real>(3, 1.0, rng);
    const auto d = inner_delta(a, b);
    double worst = 0;
    for (int k = 0; k < 100; ++k) {
      const auto c = sample_lg<Real>(3, 1.0, rng);
      const auto delta_c = left_divide(compose(a, b), compose(a, compose(b, c)));
      worst = std::max(worst, relative_residual<Real>(delta_c.matrix(), omega_action(d, c).matrix()));
    }
    CHECK(worst < 1e-8);
  }
}

TEST_SUITE("Phi") {
  TEST_CASE("g in Omega and g positive") {
    Rng rng = sample_rng(41, 0);
    const auto w = sample_omega<Real>(3, rng);
    const auto pw = phi_map<Real>(w.matrix());
    CHECK(dist<Real>(pw.positive.matrix(), RMat::Identity(3, 3)) < 1e-10);
    CHECK(dist<Real>(pw.unitary.matrix(), w.matrix()) < 1e-10);
    const auto a = sample_lg<Real>(3, 1.0, rng);
    const auto pa = phi_map<Real>(a.matrix());
    CHECK(dist<Real>(pa.positive.matrix(), a.matrix()) < 1e-10);
    CHECK(dist<Real>(pa.unitary.matrix(), RMat::Identity(3, 3)) < 1e-10);
  }

  TEST_CASE("Phi(g g') agrees with the quasidirect product of Phi(g), Phi(g')") {
    for (std::uint64_t i = 0; i < 200; ++i) {
      Rng rng = sample_rng(42, i);
      const RMat g = sample_sl<Real>(2, 1.0, rng);
      const RMat h = sample_sl<Real>(2, 1.0, rng);
      const auto [a, w] = phi_map<Real>(g);
      const auto [b, v] = phi_map<Real>(h);
      const auto wb = omega_action(w, b);
      const auto prod = loop_op(a, wb);
      const auto direct = phi_map<Real>(g * h);
      CHECK(relative_residual<Real>(direct.positive.matrix(), prod.product.matrix()) < 1e-8);
      CHECK(relative_residual<Real>(direct.unitary.matrix(),
                                    prod.defect.matrix() * w.matrix() * v.matrix()) < 1e-8);
    }
  }
}

TEST_SUITE("sampling") {
  TEST_CASE("spread 0 gives the identity") {
    Rng rng = sample_rng(51, 0);
    CHECK(dist<Real>(sample_lg<Real>(4, 0.0, rng).matrix(), RMat::Identity(4, 4)) < 1e-12);
  }

  TEST_CASE("samples satisfy the set's invariants") {
    for (std::uint64_t i = 0; i < 200; ++i) {
      Rng rng = sample_rng(52, i);
      const std::size_t n = 2 + i % 7;
      const double spread = 0.25 * static_cast<double>(i % 9);
      const auto a = sample_lg<Complex>(n, spread, rng);
      CHECK_NOTHROW(HermitianPD<Complex>::from_matrix(a.matrix()));
      CHECK(a.condition() <= std::exp(2 * spread) * (1 + 1e-12));
      const auto w = sample_omega<Complex>(n, rng);
      CHECK_NOTHROW(OmegaElement<Complex>::from_matrix(w.matrix()));
    }
  }

  TEST_CASE("different seeds give different matrices, equal seeds equal ones") {
    Rng r1 = sample_rng(1, 0), r2 = sample_rng(2, 0), r3 = sample_rng(1, 0);
    const auto a = sample_lg<Real>(3, 1.0, r1).matrix();
    CHECK(a != sample_lg<Real>(3, 1.0, r2).matrix());
    CHECK(a == sample_lg<Real>(3, 1.0, r3).matrix());
    Rng r4 = sample_rng(1, 1);
    CHECK(a != sample_lg<Real>(3, 1.0, r4).matrix());
  }
}

TEST_SUITE("sampled reports") {
  TEST_CASE("real n = 2") {
    const auto r = check_identities(Field::real, 2, 1000, 7);
    CHECK(r.pass);
    CHECK(r.samples == 1000);
    CHECK(r.residual_bol <= 1e-8);
    CHECK(r.residual_aip <= 1e-8);
    CHECK(r.residual_left_inverse <= 1e-8);
    CHECK(r.residual_identity <= 1e-8);
    CHECK(r.residual_sqrt <= 1e-8);
    CHECK(r.max_condition_number <= 1e6);
  }

  TEST_CASE("complex n = 2") {
    const auto r = check_identities(Field::complex, 2, 1000, 7);
    CHECK(r.pass);
    CHECK(r.residual_bol <= 1e-8);
    CHECK(r.residual_aip <= 1e-8);
  }

  TEST_CASE("serial and parallel reports are identical") {
    SampleOptions serial;
    serial.policy = ExecPolicy::serial;
    CHECK(check_identities(Field::real, 3, 200, 5, serial) == check_identities(Field::real, 3, 200, 5));
    CHECK(to_json(check_identities(Field::complex, 2, 200, 5, serial)) ==
          to_json(check_identities(Field::complex, 2, 200, 5)));
  }

  TEST_CASE("Phi, delta and kernel reports pass") {
    for (auto field : {Field::real, Field::complex}) {
      CHECK(check_phi_homomorphism(field, 2, 300, 3).pass);
      CHECK(check_delta_realization(field, 3, 300, 3).pass);
    }
    for (std::size_t n : {2, 3, 4}) {
      const auto k = kernel_spot_check(Field::real, n, 50, 3);
      CHECK(k.pass);
      CHECK(k.central_elements == (n % 2 == 0 ? 2u : 1u));
    }
    const auto kc = kernel_spot_check(Field::complex, 3, 50, 3);
    CHECK(kc.pass);
    CHECK(kc.central_elements == 3);
    CHECK(kc.central_residual < 1e-12);
  }

  TEST_CASE("bad dimensions are rejected") {
    CHECK(code_of([] { check_identities(Field::real, 1, 10, 1); }) == Errc::invalid_argument);
    CHECK(code_of([] { check_identities(Field::real, 9, 10, 1); }) == Errc::invalid_argument);
  }

  TEST_CASE("JSON layout and round trip") {
    const auto r = check_identities(Field::complex, 2, 50, 42);
    const auto text = to_json(r);
    CHECK(text.rfind(R"({"field":"complex","n":2,"samples":50,"seed":42,"residual_bol":)", 0) == 0);
    CHECK(text.find(R"("max_condition_number":)") < text.find(R"("pass":true})"));
    CHECK(identity_report_from_json(text) == r);
    CHECK_THROWS_AS(identity_report_from_json(R"({"field":"real"})"), Error);
  }

  TEST_CASE("field names") {
    CHECK(parse_field("real") == Field::real);
    CHECK(parse_field("complex") == Field::complex);
    CHECK_FALSE(parse_field("quaternion").has_value());
    CHECK(to_string(Field::complex) == "complex");
  }
}
