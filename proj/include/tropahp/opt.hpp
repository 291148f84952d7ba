#pragma once

// Tropical pseudo-quadratic optimization and Hilbert seminorm extremes over
// tropical column spans.

#include <span>
#include <vector>

#include "tropahp/core.hpp"
#include "tropahp/span.hpp"

namespace tropahp {

// min_x x^- A x. Optimum is the spectral radius; solutions (A / lambda)^* u.
template <typename Derived>
SolutionCone<typename Derived::Scalar> min_pseudo_quadratic(
    const Eigen::MatrixBase<Derived>& a, const Tolerance& tol = {}) {
  using Scalar = typename Derived::Scalar;
  const Scalar lambda = spectral_radius(a);
  if (!(lambda > Scalar(0))) {
    throw Error(ErrorCode::ZeroSpectralRadius,
                "min_pseudo_quadratic: spectral radius is zero");
  }
  SolutionCone<Scalar> cone;
  cone.optimum = lambda;
  cone.generators = kleene_star((a / lambda).eval(), tol);
  cone.pieces.push_back(cone.generators);
  return cone;
}

template <typename Scalar>
struct WeightedSolution {
  SolutionCone<Scalar> cone;
  Matrix<Scalar> combined;  // B = w_1 A_1 + ... + w_m A_m (tropically)
};

// Weighted entrywise maximum of equally sized square matrices.
template <typename Scalar>
Matrix<Scalar> weighted_max(std::span<const Matrix<Scalar>> matrices,
                            std::span<const Scalar> weights) {
  if (matrices.empty() || matrices.size() != weights.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "weighted_max: need one positive weight per matrix");
  }
  const Index n = matrices.front().rows();
  Matrix<Scalar> out = Matrix<Scalar>::Zero(n, n);
  for (std::size_t k = 0; k < matrices.size(); ++k) {
    const auto& m = matrices[k];
    detail::require_square(m, "weighted_max matrix");
    if (m.rows() != n) {
      throw Error(ErrorCode::DimensionMismatch, "weighted_max: matrix sizes differ");
    }
    if (!(weights[k] > Scalar(0)) || !std::isfinite(double(weights[k]))) {
      throw Error(ErrorCode::NonPositive, "weighted_max: weights must be positive");
    }
    out = out.cwiseMax(weights[k] * m);
  }
  return out;
}

template <typename Scalar>
WeightedSolution<Scalar> min_weighted_pseudo_quadratic(
    std::span<const Matrix<Scalar>> matrices, std::span<const Scalar> weights,
    const Tolerance& tol = {}) {
  WeightedSolution<Scalar> out;
  out.combined = weighted_max(matrices, weights);
  out.cone = min_pseudo_quadratic(out.combined, tol);
  return out;
}

// max_x q^- x (A x)^- p for positive A, nonzero p and positive q.
//
// The optimum is q^- A^- p. Every optimal x lies in span(I + A_lk^- A) for
// some pair (k, l) with q_k^-1 a_lk^-1 p_l equal to the optimum; one piece is
// returned per such pair. Rows of A where p vanishes are dropped first.
template <typename DA, typename DP, typename DQ>
SolutionCone<typename DA::Scalar> max_ratio(const Eigen::MatrixBase<DA>& a,
                                            const Eigen::MatrixBase<DP>& p,
                                            const Eigen::MatrixBase<DQ>& q,
                                            const Tolerance& tol = {}) {
  using Scalar = typename DA::Scalar;
  detail::require_positive(a, "max_ratio matrix");
  detail::require_nonnegative(p, "max_ratio p");
  detail::require_positive(q, "max_ratio q");
  if (p.size() != a.rows() || q.size() != a.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "max_ratio: vector sizes");
  }
  if (is_zero(p)) throw Error(ErrorCode::ZeroMatrix, "max_ratio: p is zero");

  std::vector<Index> rows;
  for (Index i = 0; i < p.size(); ++i)
    if (p(i) > Scalar(0)) rows.push_back(i);

  const Index n = a.cols();
  auto value = [&](Index k, Index l) { return p(l) / (q(k) * a(l, k)); };

  Scalar delta(0);
  for (Index k = 0; k < n; ++k)
    for (Index l : rows) delta = oplus(delta, value(k, l));

  SolutionCone<Scalar> cone;
  cone.optimum = delta;
  Matrix<Scalar> all(n, 0);
  for (Index k = 0; k < n; ++k) {
    for (Index l : rows) {
      if (!approx_equal(value(k, l), delta, tol.rel_eq)) continue;
      cone.witness_pairs.push_back({k, l});
      Matrix<Scalar> block = Matrix<Scalar>::Identity(n, n);
      for (Index j = 0; j < n; ++j) {
        block(k, j) = oplus(block(k, j), a(l, j) / a(l, k));
      }
      cone.pieces.push_back(remove_collinear(block, tol));
      Matrix<Scalar> grown(n, all.cols() + block.cols());
      grown << all, block;
      all = std::move(grown);
    }
  }
  cone.generators = remove_collinear(all, tol);
  return cone;
}

// Maximum of the Hilbert seminorm over span(S): max_ratio with q^- = 1^T S
// and p = 1, mapped back into the span. The optimum is 1^T S S^- 1.
template <typename Derived>
SolutionCone<typename Derived::Scalar> max_hilbert_over_span(
    const Eigen::MatrixBase<Derived>& s, const Tolerance& tol = {}) {
  using Scalar = typename Derived::Scalar;
  detail::require_positive(s, "max_hilbert_over_span matrix");
  const Vector<Scalar> q = s.colwise().maxCoeff().transpose().cwiseInverse();
  const Vector<Scalar> p = Vector<Scalar>::Ones(s.rows());
  SolutionCone<Scalar> x_space = max_ratio(s, p, q, tol);

  SolutionCone<Scalar> cone;
  cone.optimum = x_space.optimum;
  cone.witness_pairs = x_space.witness_pairs;
  Matrix<Scalar> all(s.rows(), 0);
  for (const auto& piece : x_space.pieces) {
    Matrix<Scalar> image = remove_collinear(mat_mul(s, piece), tol);
    Matrix<Scalar> grown(s.rows(), all.cols() + image.cols());
    grown << all, image;
    all = std::move(grown);
    cone.pieces.push_back(std::move(image));
  }
  cone.generators = remove_collinear(all, tol);
  return cone;
}

// min_x q^- x x^- p subject to A x <= x, for Tr(A) <= 1, nonzero p, positive
// q. Optimum q^- A^* p; solutions (p q^- / delta + A)^* u.
template <typename DA, typename DP, typename DQ>
SolutionCone<typename DA::Scalar> min_hilbert_constrained(
    const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DP>& p,
    const Eigen::MatrixBase<DQ>& q, const Tolerance& tol = {}) {
  using Scalar = typename DA::Scalar;
  const Matrix<Scalar> star = kleene_star(a, tol);
  detail::require_nonnegative(p, "min_hilbert_constrained p");
  detail::require_positive(q, "min_hilbert_constrained q");
  if (p.size() != a.rows() || q.size() != a.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "min_hilbert_constrained: vector sizes");
  }
  if (is_zero(p)) throw Error(ErrorCode::ZeroMatrix, "min_hilbert_constrained: p is zero");

  const RowVector<Scalar> q_conj = q.transpose().cwiseInverse();
  const Scalar delta = mat_mul(mat_mul(q_conj, star), p)(0, 0);
  const Matrix<Scalar> rank_one = (p * q_conj) / delta;

  SolutionCone<Scalar> cone;
  cone.optimum = delta;
  cone.generators = kleene_star(rank_one.cwiseMax(a), tol);
  cone.pieces.push_back(cone.generators);
  return cone;
}

// Minimum of the Hilbert seminorm over span((A / lambda)^*).
template <typename Derived>
SolutionCone<typename Derived::Scalar> min_hilbert_over_kleene_cone(
    const Eigen::MatrixBase<Derived>& a, const Tolerance& tol = {}) {
  using Scalar = typename Derived::Scalar;
  const Scalar lambda = spectral_radius(a);
  if (!(lambda > Scalar(0))) {
    throw Error(ErrorCode::ZeroSpectralRadius,
                "min_hilbert_over_kleene_cone: spectral radius is zero");
  }
  const Vector<Scalar> ones = Vector<Scalar>::Ones(a.rows());
  return min_hilbert_constrained((a / lambda).eval(), ones, ones, tol);
}

}  // namespace tropahp
