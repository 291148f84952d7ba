#pragma once

// Max-times semiring over the nonnegative reals: oplus = max, otimes = *.
// All routines work on dense Eigen matrices of any floating-point scalar and
// treat ordinary zero as the semiring zero.

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

#include "tropahp/error.hpp"

namespace tropahp {

using Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

using MatrixXt = Matrix<double>;
using VectorXt = Vector<double>;

struct Tolerance {
  double rel_eq = 1e-9;   // scalar equality
  double tie_tol = 1e-7;  // ranking ties on normalized scores

  void check() const {
    if (!(rel_eq > 0.0 && rel_eq < tie_tol && tie_tol < 1.0)) {
      throw Error(ErrorCode::InvalidArgument,
                  "tolerances must satisfy 0 < rel_eq < tie_tol < 1");
    }
  }
};

// (k, l) witness pair, 0-based: column k, row l.
struct IndexPair {
  Index k = 0;
  Index l = 0;
  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

// A solution set described by generators. For single-cone problems the set
// is span(generators). For the maximization problems the set is the union of
// span(piece) over `pieces` (one piece per witness pair), and `generators` is
// the concatenation of the pieces with collinear duplicates removed.
template <typename Scalar>
struct SolutionCone {
  Scalar optimum{};
  Matrix<Scalar> generators;
  std::vector<IndexPair> witness_pairs;
  std::vector<Matrix<Scalar>> pieces;
};

// ---------------------------------------------------------------------------
// Scalars

namespace detail {
template <typename T>
concept NotEigen = !std::is_base_of_v<Eigen::EigenBase<T>, T>;
}  // namespace detail

template <detail::NotEigen Scalar>
constexpr Scalar oplus(Scalar a, Scalar b) {
  return a < b ? b : a;
}

template <detail::NotEigen Scalar>
constexpr Scalar otimes(Scalar a, Scalar b) {
  return a * b;
}

// a = b iff |a - b| <= rel * max(a, b).
template <typename Scalar>
bool approx_equal(Scalar a, Scalar b, double rel) {
  using std::abs;
  return abs(a - b) <= Scalar(rel) * std::max(abs(a), abs(b));
}

template <typename Scalar>
bool approx_leq(Scalar a, Scalar b, double rel) {
  using std::abs;
  return a <= b + Scalar(rel) * std::max(abs(a), abs(b));
}

// ---------------------------------------------------------------------------
// Predicates and argument checks

template <typename Derived>
bool is_positive(const Eigen::MatrixBase<Derived>& a) {
  return a.size() > 0 && (a.array() > 0).all() && a.allFinite();
}

template <typename Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& a) {
  return (a.array() == 0).all();
}

template <typename Derived>
bool is_nonnegative(const Eigen::MatrixBase<Derived>& a) {
  return a.allFinite() && (a.array() >= 0).all();
}

namespace detail {

template <typename Derived>
void require_nonnegative(const Eigen::MatrixBase<Derived>& a, const char* what) {
  if (a.size() == 0) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " is empty");
  }
  if (!is_nonnegative(a)) {
    throw Error(ErrorCode::NegativeEntry,
                std::string(what) + " must be finite and nonnegative");
  }
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* what) {
  require_nonnegative(a, what);
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::NotSquare, std::string(what) + " must be square");
  }
}

template <typename Derived>
void require_positive(const Eigen::MatrixBase<Derived>& a, const char* what) {
  require_nonnegative(a, what);
  if (!is_positive(a)) {
    throw Error(ErrorCode::NonPositive,
                std::string(what) + " must be entrywise positive");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Matrix operations

template <typename DA, typename DB>
Matrix<typename DA::Scalar> oplus(const Eigen::MatrixBase<DA>& a,
                                  const Eigen::MatrixBase<DB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "oplus: shapes differ");
  }
  return a.cwiseMax(b);
}

template <typename DA, typename DB>
Matrix<typename DA::Scalar> mat_mul(const Eigen::MatrixBase<DA>& a,
                                    const Eigen::MatrixBase<DB>& b) {
  using Scalar = typename DA::Scalar;
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "mat_mul: inner dimensions " + std::to_string(a.cols()) +
                    " and " + std::to_string(b.rows()) + " differ");
  }
  Matrix<Scalar> out(a.rows(), b.cols());
  for (Index j = 0; j < b.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      Scalar acc(0);
      for (Index k = 0; k < a.cols(); ++k) acc = oplus<Scalar>(acc, a(i, k) * b(k, j));
      out(i, j) = acc;
    }
  }
  return out;
}

template <typename Derived>
Matrix<typename Derived::Scalar> conjugate_transpose(
    const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  detail::require_nonnegative(a, "conjugate_transpose argument");
  if (is_zero(a)) {
    throw Error(ErrorCode::ZeroMatrix, "conjugate transpose of a zero matrix");
  }
  Matrix<Scalar> out(a.cols(), a.rows());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out(j, i) = a(i, j) != Scalar(0) ? Scalar(1) / a(i, j) : Scalar(0);
  return out;
}

template <typename Derived>
Matrix<typename Derived::Scalar> trop_power(const Eigen::MatrixBase<Derived>& a,
                                            unsigned p) {
  using Scalar = typename Derived::Scalar;
  detail::require_square(a, "trop_power argument");
  Matrix<Scalar> out = Matrix<Scalar>::Identity(a.rows(), a.cols());
  for (unsigned m = 0; m < p; ++m) out = mat_mul(out, a);
  return out;
}

// Tropical trace: the largest diagonal entry.
template <typename Derived>
typename Derived::Scalar trace(const Eigen::MatrixBase<Derived>& a) {
  return a.diagonal().maxCoeff();
}

// Tr(A) = tr A + tr A^2 + ... + tr A^n (tropically).
template <typename Derived>
typename Derived::Scalar tr_sum(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  detail::require_square(a, "tr_sum argument");
  Matrix<Scalar> power = a;
  Scalar acc = trace(power);
  for (Index m = 2; m <= a.rows(); ++m) {
    power = mat_mul(power, a);
    acc = oplus<Scalar>(acc, trace(power));
  }
  return acc;
}

// Maximum cycle geometric mean, evaluated as max_m tr(A^m)^(1/m).
template <typename Derived>
typename Derived::Scalar spectral_radius(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  using std::pow;
  detail::require_square(a, "spectral_radius argument");
  Matrix<Scalar> power = a;
  Scalar acc = trace(power);
  for (Index m = 2; m <= a.rows(); ++m) {
    power = mat_mul(power, a);
    const Scalar t = trace(power);
    if (t > Scalar(0)) acc = oplus<Scalar>(acc, pow(t, Scalar(1) / Scalar(m)));
  }
  return acc;
}

// A^* = I + A + ... + A^(n-1); requires Tr(A) <= 1 within rel_eq.
template <typename Derived>
Matrix<typename Derived::Scalar> kleene_star(const Eigen::MatrixBase<Derived>& a,
                                             const Tolerance& tol = {}) {
  using Scalar = typename Derived::Scalar;
  const Scalar tr = tr_sum(a);
  if (!approx_leq(tr, Scalar(1), tol.rel_eq)) {
    throw Error(ErrorCode::TrExceedsOne,
                "Kleene star undefined: Tr(A) = " + std::to_string(double(tr)) +
                    " > 1");
  }
  const Index n = a.rows();
  Matrix<Scalar> star = Matrix<Scalar>::Identity(n, n);
  Matrix<Scalar> power = Matrix<Scalar>::Identity(n, n);
  for (Index m = 1; m < n; ++m) {
    power = mat_mul(power, a);
    star = star.cwiseMax(power);
  }
  return star;
}

// Positive solutions of A x <= x: x = A^* u, u > 0.
template <typename Derived>
SolutionCone<typename Derived::Scalar> solve_subeigen(
    const Eigen::MatrixBase<Derived>& a, const Tolerance& tol = {}) {
  using Scalar = typename Derived::Scalar;
  const Scalar tr = tr_sum(a);
  if (!approx_leq(tr, Scalar(1), tol.rel_eq)) {
    throw Error(ErrorCode::NoPositiveSolution,
                "A x <= x has no positive solution: Tr(A) = " +
                    std::to_string(double(tr)));
  }
  SolutionCone<Scalar> cone;
  cone.optimum = tr;
  cone.generators = kleene_star(a, tol);
  cone.pieces.push_back(cone.generators);
  return cone;
}

// x^- A x = max_ij a_ij x_j / x_i.
template <typename DA, typename DX>
typename DA::Scalar quad_form(const Eigen::MatrixBase<DA>& a,
                              const Eigen::MatrixBase<DX>& x) {
  using Scalar = typename DA::Scalar;
  detail::require_square(a, "quad_form matrix");
  detail::require_positive(x, "quad_form vector");
  if (x.size() != a.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "quad_form: vector size");
  }
  Scalar acc(0);
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      acc = oplus<Scalar>(acc, a(i, j) * x(j) / x(i));
  return acc;
}

// Tropical matrix-vector product A x.
template <typename DA, typename DX>
Vector<typename DA::Scalar> apply(const Eigen::MatrixBase<DA>& a,
                                  const Eigen::MatrixBase<DX>& x) {
  return mat_mul(a, x);
}

}  // namespace tropahp
