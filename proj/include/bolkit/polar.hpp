#pragma once
//
// The K-loop of positive definite determinant-1 matrices over R or C.
//
// Every g in SL(n, F) factors uniquely as g = A w with A hermitian positive
// definite (det 1) and w in SO(n) resp. SU(n). For A, B in that set the
// product AB factors as (A o B) d_{A,B}, which defines the loop operation
// A o B = sqrt(A B^2 A). Square roots are taken through the eigendecomposition
// of a hermitian positive definite matrix, never by general polar iteration.
//

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <type_traits>

#include "bolkit/error.hpp"
#include "bolkit/parallel.hpp"

namespace bolkit::polar {

enum class Field { real, complex };

std::string_view to_string(Field f) noexcept;
std::optional<Field> parse_field(std::string_view s) noexcept;

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
using Real = double;
using Complex = std::complex<double>;

inline constexpr std::size_t kMinDim = 2;
inline constexpr std::size_t kMaxDim = 8;

struct Tolerances {
  double hermitian = 1e-10;       // ||M - M*||_F <= tol ||M||_F
  double positivity = 1e-8;       // smallest eigenvalue must exceed this
  double determinant = 1e-8;      // |det - 1|
  double unitarity = 1e-10;       // ||w* w - I||_F
  double reconstruction = 1e-9;   // ||A w - g||_F <= tol ||g||_F
  double identity = 1e-8;         // sampled identity residuals (relative)
  double max_condition = 1e8;     // accepted by polar_part
  double report_condition = 1e6;  // ceiling for sampled reports
};

namespace detail {

template <class S>
Matrix<S> hermitize(const Matrix<S>& m) {
  return (m + m.adjoint()) * S(0.5);
}

template <class S>
Matrix<S> spectral(const Matrix<S>& vectors, const Eigen::VectorXd& values) {
  return hermitize<S>(vectors * values.cast<S>().asDiagonal() * vectors.adjoint());
}

inline double frobenius_rel(double diff, double ref) { return ref > 0 ? diff / ref : diff; }

inline void check_dim(std::size_t n) {
  if (n < kMinDim || n > kMaxDim)
    throw Error(Errc::invalid_argument,
                "dimension " + std::to_string(n) + " outside 2.." + std::to_string(kMaxDim));
}

}  // namespace detail

template <class S>
double relative_residual(const Matrix<S>& value, const Matrix<S>& reference) {
  return detail::frobenius_rel((value - reference).norm(), reference.norm());
}

// An element of L_G: hermitian, positive definite, determinant 1. The
// eigendecomposition is kept alongside the matrix.
template <class S>
class HermitianPD {
 public:
  // Throws Errc::invalid_argument (shape, not hermitian, not positive
  // definite) or Errc::not_unimodular.
  static HermitianPD from_matrix(const Matrix<S>& m, const Tolerances& tol = {}) {
    if (m.rows() != m.cols()) throw Error(Errc::invalid_argument, "matrix is not square");
    detail::check_dim(static_cast<std::size_t>(m.rows()));
    if (!m.allFinite()) throw Error(Errc::invalid_argument, "matrix has non-finite entries");
    if ((m - m.adjoint()).norm() > tol.hermitian * m.norm())
      throw Error(Errc::invalid_argument, "matrix is not hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix<S>> eig(detail::hermitize<S>(m));
    if (eig.info() != Eigen::Success) throw Error(Errc::numerical_failure, "eigensolver failed");
    return from_spectral(eig.eigenvectors(), eig.eigenvalues(), tol);
  }

  // Q diag(values) Q* for unitary Q.
  static HermitianPD from_spectral(const Matrix<S>& vectors, const Eigen::VectorXd& values,
                                   const Tolerances& tol = {}) {
    if (values.minCoeff() <= tol.positivity)
      throw Error(Errc::invalid_argument, "matrix is not positive definite");
    const double det = values.prod();
    if (std::abs(det - 1.0) > tol.determinant)
      throw Error(Errc::not_unimodular, "determinant " + std::to_string(det) + " is not 1");
    HermitianPD a;
    a.vectors_ = vectors;
    a.values_ = values;
    a.matrix_ = detail::spectral<S>(vectors, values);
    return a;
  }

  static HermitianPD identity(std::size_t n) {
    detail::check_dim(n);
    const auto dim = static_cast<Eigen::Index>(n);
    return from_spectral(Matrix<S>::Identity(dim, dim), Eigen::VectorXd::Ones(dim));
  }

  const Matrix<S>& matrix() const noexcept { return matrix_; }
  const Matrix<S>& eigenvectors() const noexcept { return vectors_; }
  const Eigen::VectorXd& eigenvalues() const noexcept { return values_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  double condition() const { return values_.maxCoeff() / values_.minCoeff(); }

  HermitianPD inverse() const { return from_spectral(vectors_, values_.cwiseInverse()); }
  // The unique positive definite square root; again an element of L_G.
  HermitianPD sqrt() const { return from_spectral(vectors_, values_.cwiseSqrt()); }

 private:
  HermitianPD() = default;
  Matrix<S> matrix_;
  Matrix<S> vectors_;
  Eigen::VectorXd values_;
};

// An element of SO(n) or SU(n).
template <class S>
class OmegaElement {
 public:
  // Throws Errc::invalid_argument (not unitary) or Errc::not_unimodular.
  static OmegaElement from_matrix(const Matrix<S>& m, const Tolerances& tol = {}) {
    if (m.rows() != m.cols()) throw Error(Errc::invalid_argument, "matrix is not square");
    detail::check_dim(static_cast<std::size_t>(m.rows()));
    const auto id = Matrix<S>::Identity(m.rows(), m.cols());
    if ((m.adjoint() * m - id).norm() > tol.unitarity)
      throw Error(Errc::invalid_argument, "matrix is not orthogonal/unitary");
    if (std::abs(m.determinant() - S(1)) > tol.determinant)
      throw Error(Errc::not_unimodular, "unitary part does not have determinant 1");
    OmegaElement w;
    w.matrix_ = m;
    return w;
  }

  static OmegaElement identity(std::size_t n) {
    detail::check_dim(n);
    const auto dim = static_cast<Eigen::Index>(n);
    return from_matrix(Matrix<S>::Identity(dim, dim));
  }

  const Matrix<S>& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  OmegaElement inverse() const {
    OmegaElement w;
    w.matrix_ = matrix_.adjoint();
    return w;
  }

 private:
  OmegaElement() = default;
  Matrix<S> matrix_;
};

template <class S>
struct PolarParts {
  HermitianPD<S> positive;
  OmegaElement<S> unitary;
};

// g = A w with A = (g g*)^{1/2}. Throws Errc::not_unimodular if |det g - 1|
// is too large, Errc::ill_conditioned above tol.max_condition.
template <class S>
PolarParts<S> polar_part(const Matrix<S>& g, const Tolerances& tol = {}) {
  if (g.rows() != g.cols()) throw Error(Errc::invalid_argument, "matrix is not square");
  detail::check_dim(static_cast<std::size_t>(g.rows()));
  if (!g.allFinite()) throw Error(Errc::invalid_argument, "matrix has non-finite entries");
  if (std::abs(g.determinant() - S(1)) > tol.determinant)
    throw Error(Errc::not_unimodular, "det g is not 1");
  Eigen::SelfAdjointEigenSolver<Matrix<S>> eig(detail::hermitize<S>(g * g.adjoint()));
  if (eig.info() != Eigen::Success) throw Error(Errc::numerical_failure, "eigensolver failed");
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  if (lambda.minCoeff() <= 0 || std::sqrt(lambda.maxCoeff() / lambda.minCoeff()) > tol.max_condition)
    throw Error(Errc::ill_conditioned, "condition number exceeds " + std::to_string(tol.max_condition));
  const Eigen::VectorXd s = lambda.cwiseSqrt();
  const Matrix<S>& q = eig.eigenvectors();
  HermitianPD<S> a = HermitianPD<S>::from_spectral(q, s, tol);
  const Matrix<S> w = detail::spectral<S>(q, s.cwiseInverse()) * g;
  if ((a.matrix() * w - g).norm() > tol.reconstruction * g.norm())
    throw Error(Errc::numerical_failure, "polar reconstruction residual too large");
  return {std::move(a), OmegaElement<S>::from_matrix(w, tol)};
}

template <class S>
struct LoopProduct {
  HermitianPD<S> product;  // A o B
  OmegaElement<S> defect;  // d_{A,B}
};

// AB = (A o B) d_{A,B}. The square root's spectrum is rescaled to product 1
// so iterated products stay in L_G.
template <class S>
LoopProduct<S> loop_op(const HermitianPD<S>& a, const HermitianPD<S>& b, const Tolerances& tol = {}) {
  if (a.dim() != b.dim()) throw Error(Errc::degree_mismatch, "dimension mismatch in loop_op");
  const Matrix<S> ab = a.matrix() * b.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix<S>> eig(detail::hermitize<S>(ab * ab.adjoint()));
  if (eig.info() != Eigen::Success) throw Error(Errc::numerical_failure, "eigensolver failed");
  if (eig.eigenvalues().minCoeff() <= 0)
    throw Error(Errc::ill_conditioned, "A B^2 A lost positive definiteness");
  Eigen::VectorXd s = eig.eigenvalues().cwiseSqrt();
  s /= std::exp(s.array().log().mean());
  const Matrix<S>& q = eig.eigenvectors();
  HermitianPD<S> c = HermitianPD<S>::from_spectral(q, s, tol);
  const Matrix<S> d = detail::spectral<S>(q, s.cwiseInverse()) * ab;
  if ((c.matrix() * d - ab).norm() > tol.reconstruction * ab.norm())
    throw Error(Errc::numerical_failure, "transversal residual too large");
  return {std::move(c), OmegaElement<S>::from_matrix(d, tol)};
}

template <class S>
HermitianPD<S> compose(const HermitianPD<S>& a, const HermitianPD<S>& b) {
  return loop_op(a, b).product;
}

// The X with a o X = b, i.e. a^-1 o b.
template <class S>
HermitianPD<S> left_divide(const HermitianPD<S>& a, const HermitianPD<S>& b) {
  return loop_op(a.inverse(), b).product;
}

// w A w^-1
template <class S>
HermitianPD<S> omega_action(const OmegaElement<S>& w, const HermitianPD<S>& a) {
  if (w.dim() != a.dim()) throw Error(Errc::degree_mismatch, "dimension mismatch in omega_action");
  return HermitianPD<S>::from_spectral(w.matrix() * a.eigenvectors(), a.eigenvalues());
}

template <class S>
OmegaElement<S> inner_delta(const HermitianPD<S>& a, const HermitianPD<S>& b) {
  return loop_op(a, b).defect;
}

// Phi(g) = (A, action of w) for g = A w; the action is carried by w itself.
template <class S>
PolarParts<S> phi_map(const Matrix<S>& g, const Tolerances& tol = {}) {
  return polar_part(g, tol);
}

template <class S>
double associator_defect(const HermitianPD<S>& a, const HermitianPD<S>& b, const HermitianPD<S>& c) {
  return relative_residual(compose(compose(a, b), c).matrix(), compose(a, compose(b, c)).matrix());
}

// ---- sampling ---------------------------------------------------------

using Rng = std::mt19937_64;

// Independent stream for sample `index`, so batches can be split across
// threads without changing any value.
Rng sample_rng(std::uint64_t seed, std::uint64_t index, std::uint64_t attempt = 0);

template <class S>
Matrix<S> gaussian_matrix(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto dim = static_cast<Eigen::Index>(n);
  Matrix<S> m(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) {
      if constexpr (std::is_same_v<S, Complex>) {
        const double re = normal(rng);
        m(i, j) = Complex(re, normal(rng));
      } else {
        m(i, j) = normal(rng);
      }
    }
  return m;
}

// Haar-distributed element of SO(n) / SU(n): QR of a gaussian matrix with
// the phases of R's diagonal moved into Q, then the determinant fixed on
// the first column.
template <class S>
OmegaElement<S> sample_omega(std::size_t n, Rng& rng) {
  detail::check_dim(n);
  const Matrix<S> g = gaussian_matrix<S>(n, rng);
  Eigen::HouseholderQR<Matrix<S>> qr(g);
  Matrix<S> q = qr.householderQ();
  const Matrix<S> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < q.cols(); ++i) {
    const S diag = r(i, i);
    if (std::abs(diag) > 0) q.col(i) *= diag / std::abs(diag);
  }
  const S det = q.determinant();
  if constexpr (std::is_same_v<S, Complex>) q.col(0) *= std::conj(det) / std::abs(det);
  else if (det < 0) q.col(0) = -q.col(0);
  return OmegaElement<S>::from_matrix(q);
}

// Q diag(exp(t_1) .. exp(t_n)) Q*, t_i uniform in [-spread, spread] and then
// centred, so the condition number is at most exp(2 spread).
template <class S>
HermitianPD<S> sample_lg(std::size_t n, double spread, Rng& rng) {
  const OmegaElement<S> q = sample_omega<S>(n, rng);
  std::uniform_real_distribution<double> unif(-spread, spread);
  Eigen::VectorXd t(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < t.size(); ++i) t(i) = spread > 0 ? unif(rng) : 0.0;
  t.array() -= t.mean();
  return HermitianPD<S>::from_spectral(q.matrix(), t.array().exp().matrix());
}

// A random element of SL(n, F) as sample_lg * sample_omega.
template <class S>
Matrix<S> sample_sl(std::size_t n, double spread, Rng& rng) {
  const HermitianPD<S> a = sample_lg<S>(n, spread, rng);
  return a.matrix() * sample_omega<S>(n, rng).matrix();
}

// ---- sampled reports --------------------------------------------------

struct SampleOptions {
  double spread = 1.0;
  Tolerances tol{};
  ExecPolicy policy = ExecPolicy::parallel;
  int retries = 3;  // resamples allowed per sample on Errc::ill_conditioned
};

struct IdentityReport {
  Field field = Field::real;
  std::size_t n = 2;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double residual_bol = 0;
  double residual_aip = 0;
  double residual_left_inverse = 0;
  double residual_identity = 0;
  double residual_sqrt = 0;
  double max_condition_number = 1;
  bool pass = false;

  friend bool operator==(const IdentityReport&, const IdentityReport&) = default;
};

// Max residuals over sampled triples of: left Bol, automorphic inverse,
// left inverse, two-sided identity, and square root in L_G.
IdentityReport check_identities(Field field, std::size_t n, std::size_t samples, std::uint64_t seed,
                                const SampleOptions& options = {});

struct PhiReport {
  double residual_loop_part = 0;   // Phi(gg') vs A o w(B)
  double residual_inner_part = 0;  // vs d_{A, w(B)} w w'
  double max_condition_number = 1;
  bool pass = false;
};

// Phi(g g') against Phi(g) Phi(g') over sampled pairs in SL(n, F).
PhiReport check_phi_homomorphism(Field field, std::size_t n, std::size_t samples,
                                 std::uint64_t seed, const SampleOptions& options = {});

struct DeltaReport {
  double residual = 0;  // (A o B) \ (A o (B o C)) vs d C d^-1
  double max_condition_number = 1;
  bool pass = false;
};

DeltaReport check_delta_realization(Field field, std::size_t n, std::size_t samples,
                                    std::uint64_t seed, const SampleOptions& options = {});

struct KernelReport {
  std::size_t central_elements = 0;
  double central_residual = 0;             // max displacement by central w
  double noncentral_min_displacement = 0;  // min over sampled w of max displacement
  bool pass = false;
};

// Central w (scalar matrices in SO(n) / SU(n)) fix every sampled A; random
// w move some sampled A by more than 100 x tol.identity.
KernelReport kernel_spot_check(Field field, std::size_t n, std::size_t samples, std::uint64_t seed,
                               const SampleOptions& options = {});

struct MatrixCheck {
  IdentityReport identities;
  PhiReport phi;
  DeltaReport delta;
  KernelReport kernel;
  bool pass() const noexcept { return identities.pass && phi.pass && delta.pass && kernel.pass; }
};

MatrixCheck run_matrix_check(Field field, std::size_t n, std::size_t samples, std::uint64_t seed,
                             const SampleOptions& options = {});

// Single-line JSON with keys field, n, samples, seed, residual_bol,
// residual_aip, residual_left_inverse, residual_identity, residual_sqrt,
// max_condition_number, pass.
std::string to_json(const IdentityReport& report);
IdentityReport identity_report_from_json(std::string_view text);

}  // namespace bolkit::polar
