#pragma once

// Geometry of tropical column spans: Hilbert seminorm, collinearity,
// generator reduction and plane sections for three-dimensional cones.

#include <algorithm>
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "tropahp/core.hpp"

namespace tropahp {

// (max_i x_i) / (min_j x_j); the Hilbert seminorm without the logarithm.
template <typename Derived>
typename Derived::Scalar hilbert_seminorm(const Eigen::MatrixBase<Derived>& x) {
  detail::require_positive(x, "hilbert_seminorm argument");
  return x.maxCoeff() / x.minCoeff();
}

namespace detail {

// Collinearity for nonnegative vectors: same support and a constant ratio on
// it. Zero vectors are collinear only with zero vectors.
template <typename DX, typename DY>
bool same_ray(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y,
              double rel) {
  using Scalar = typename DX::Scalar;
  Scalar lo(0), hi(0);
  bool seen = false;
  for (Index i = 0; i < x.size(); ++i) {
    const bool xz = x(i) == Scalar(0);
    const bool yz = y(i) == Scalar(0);
    if (xz != yz) return false;
    if (xz) continue;
    const Scalar r = x(i) / y(i);
    if (!seen) {
      lo = hi = r;
      seen = true;
    } else {
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  return !seen || approx_equal(hi, lo, rel);
}

// Indices of columns kept after dropping collinear duplicates, first
// occurrence wins.
template <typename Derived>
std::vector<Index> distinct_rays(const Eigen::MatrixBase<Derived>& s, double rel) {
  std::vector<Index> kept;
  for (Index j = 0; j < s.cols(); ++j) {
    const bool dup = std::any_of(kept.begin(), kept.end(), [&](Index k) {
      return same_ray(s.col(j), s.col(k), rel);
    });
    if (!dup) kept.push_back(j);
  }
  return kept;
}

template <typename Derived>
Matrix<typename Derived::Scalar> select_columns(const Eigen::MatrixBase<Derived>& s,
                                                const std::vector<Index>& cols) {
  Matrix<typename Derived::Scalar> out(s.rows(), Index(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) out.col(Index(c)) = s.col(cols[c]);
  return out;
}

}  // namespace detail

template <typename DX, typename DY>
bool is_collinear(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y,
                  const Tolerance& tol = {}) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::DimensionMismatch, "is_collinear: sizes differ");
  }
  detail::require_positive(x, "is_collinear first argument");
  detail::require_positive(y, "is_collinear second argument");
  const auto ratio = (x.array() / y.array()).eval();
  return approx_equal(ratio.maxCoeff(), ratio.minCoeff(), tol.rel_eq);
}

// Drops collinear duplicates only; zero entries are allowed.
template <typename Derived>
Matrix<typename Derived::Scalar> remove_collinear(const Eigen::MatrixBase<Derived>& s,
                                                  const Tolerance& tol = {}) {
  detail::require_nonnegative(s, "remove_collinear argument");
  return detail::select_columns(s, detail::distinct_rays(s, tol.rel_eq));
}

// Residuation test: with y_j = min_i c_i / s_ij, c lies in span(S) iff S y = c.
template <typename DS, typename DC>
bool in_span(const Eigen::MatrixBase<DS>& s, const Eigen::MatrixBase<DC>& c,
             const Tolerance& tol = {}) {
  using Scalar = typename DS::Scalar;
  if (s.cols() == 0) return false;
  Vector<Scalar> y(s.cols());
  for (Index j = 0; j < s.cols(); ++j) {
    y(j) = (c.array() / s.col(j).array()).minCoeff();
  }
  const Vector<Scalar> image = mat_mul(s, y);
  for (Index i = 0; i < c.size(); ++i) {
    if (!approx_equal(image(i), c(i), tol.rel_eq)) return false;
  }
  return true;
}

// Minimal generating subset of the columns of a positive matrix: collinear
// duplicates go first, then every column that is a tropical combination of
// the remaining ones.
template <typename Derived>
Matrix<typename Derived::Scalar> reduce_generators(const Eigen::MatrixBase<Derived>& s,
                                                   const Tolerance& tol = {}) {
  detail::require_positive(s, "reduce_generators argument");
  std::vector<Index> kept = detail::distinct_rays(s, tol.rel_eq);
  for (std::size_t pos = 0; pos < kept.size() && kept.size() > 1;) {
    std::vector<Index> others = kept;
    others.erase(others.begin() + std::ptrdiff_t(pos));
    if (in_span(detail::select_columns(s, others), s.col(kept[pos]), tol)) {
      kept = std::move(others);
    } else {
      ++pos;
    }
  }
  return detail::select_columns(s, kept);
}

// Scales every column so that its largest entry is one.
template <typename Derived>
Matrix<typename Derived::Scalar> normalize_columns(const Eigen::MatrixBase<Derived>& s) {
  Matrix<typename Derived::Scalar> out = s;
  for (Index j = 0; j < out.cols(); ++j) {
    const auto top = out.col(j).maxCoeff();
    if (top > 0) out.col(j) /= top;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Plane sections {x : x_3 = 1}

struct Point2 {
  double x = 0;
  double y = 0;
};

struct Segment2 {
  Point2 from;
  Point2 to;
};

// Labels are parallel to points followed by segments:
// labels.size() == points.size() + segments.size().
struct SectionPlot {
  std::vector<Point2> points;
  std::vector<Segment2> segments;
  std::vector<std::string> labels;

  void append(const SectionPlot& other) {
    std::vector<std::string> merged(labels.begin(), labels.begin() + std::ptrdiff_t(points.size()));
    merged.insert(merged.end(), other.labels.begin(),
                  other.labels.begin() + std::ptrdiff_t(other.points.size()));
    merged.insert(merged.end(), labels.begin() + std::ptrdiff_t(points.size()), labels.end());
    merged.insert(merged.end(), other.labels.begin() + std::ptrdiff_t(other.points.size()),
                  other.labels.end());
    points.insert(points.end(), other.points.begin(), other.points.end());
    segments.insert(segments.end(), other.segments.begin(), other.segments.end());
    labels = std::move(merged);
  }
};

namespace detail {

inline bool same_point(const Point2& a, const Point2& b, double rel) {
  return approx_equal(a.x, b.x, rel) && approx_equal(a.y, b.y, rel);
}

// Vertices of the tropical segment between two points of the section plane,
// from a to b. The path max(t a, b) bends where t a_i = b_i.
inline std::vector<Point2> tropical_segment(const std::array<double, 3>& a,
                                            const std::array<double, 3>& b,
                                            double rel) {
  std::array<double, 3> taus{b[0] / a[0], b[1] / a[1], b[2] / a[2]};
  std::sort(taus.begin(), taus.end(), std::greater<>());
  std::vector<Point2> path{{a[0] / a[2], a[1] / a[2]}};
  for (double t : taus) {
    std::array<double, 3> p{};
    for (int i = 0; i < 3; ++i) p[i] = std::max(t * a[i], b[i]);
    const Point2 q{p[0] / p[2], p[1] / p[2]};
    if (!same_point(path.back(), q, rel)) path.push_back(q);
  }
  const Point2 end{b[0] / b[2], b[1] / b[2]};
  if (!same_point(path.back(), end, rel)) path.push_back(end);
  return path;
}

}  // namespace detail

// Section of span(S) by the plane x_3 = 1: the normalized generators plus the
// pieces of the tropical segments between every pair of generators.
template <typename Derived>
SectionPlot section_at_unit_last_coord(const Eigen::MatrixBase<Derived>& s,
                                       const std::string& tag = "span",
                                       const Tolerance& tol = {}) {
  if (s.rows() != 3) {
    throw Error(ErrorCode::DimensionMismatch,
                "section_at_unit_last_coord needs exactly 3 rows, got " +
                    std::to_string(s.rows()));
  }
  detail::require_positive(s, "section generators");
  const auto reduced = remove_collinear(s, tol);
  std::vector<std::array<double, 3>> gens;
  for (Index j = 0; j < reduced.cols(); ++j) {
    gens.push_back({double(reduced(0, j)), double(reduced(1, j)), double(reduced(2, j))});
  }

  SectionPlot plot;
  std::vector<std::string> seg_labels;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    plot.points.push_back({gens[j][0] / gens[j][2], gens[j][1] / gens[j][2]});
    plot.labels.push_back(tag + ":g" + std::to_string(j + 1));
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const auto path = detail::tropical_segment(gens[i], gens[j], tol.rel_eq);
      for (std::size_t p = 0; p + 1 < path.size(); ++p) {
        plot.segments.push_back({path[p], path[p + 1]});
        seg_labels.push_back(tag + ":g" + std::to_string(i + 1) + "-g" +
                             std::to_string(j + 1));
      }
    }
  }
  plot.labels.insert(plot.labels.end(), seg_labels.begin(), seg_labels.end());
  return plot;
}

}  // namespace tropahp
