#include "tropahp/ahp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace tropahp {

namespace {

std::string cell(Index i, Index j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

}  // namespace

ReciprocalCheck validate_reciprocal(const MatrixXt& m, const Tolerance& tol) {
  ReciprocalCheck check;
  if (m.rows() == 0 || m.rows() != m.cols()) {
    check.violation = ReciprocalViolation{0, 0, "matrix must be square and nonempty"};
    return check;
  }
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (!(m(i, j) > 0) || !std::isfinite(m(i, j))) {
        check.violation = ReciprocalViolation{i, j, "entry must be positive and finite"};
        return check;
      }
    }
  }
  for (Index i = 0; i < m.rows(); ++i) {
    if (!approx_equal(m(i, i), 1.0, tol.rel_eq)) {
      check.violation = ReciprocalViolation{i, i, "diagonal entry must be 1"};
      return check;
    }
  }
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = i + 1; j < m.cols(); ++j) {
      if (!approx_equal(m(i, j) * m(j, i), 1.0, tol.rel_eq)) {
        std::ostringstream msg;
        msg << "a" << cell(i, j) << " * a" << cell(j, i) << " = " << m(i, j) << " * "
            << m(j, i) << " != 1";
        check.violation = ReciprocalViolation{i, j, msg.str()};
        return check;
      }
    }
  }
  return check;
}

void validate_problem(const DecisionProblem& problem, const Tolerance& tol) {
  tol.check();
  const Index m = problem.criteria.rows();
  if (m < 1) throw ValidationError("at least one criterion is required");
  if (Index(problem.alternatives.size()) != m) {
    throw ValidationError("expected " + std::to_string(m) +
                          " alternative matrices, got " +
                          std::to_string(problem.alternatives.size()));
  }
  if (!problem.criteria_labels.empty() && Index(problem.criteria_labels.size()) != m) {
    throw ValidationError("criteria labels do not match the criteria matrix size");
  }
  const Index n = problem.alternative_count();
  if (n < 2) throw ValidationError("at least two alternatives are required");
  if (!problem.alternative_labels.empty() && Index(problem.alternative_labels.size()) != n) {
    throw ValidationError("alternative labels do not match the matrix size");
  }

  auto require = [&](const MatrixXt& mat, const std::string& name) {
    const auto check = validate_reciprocal(mat, tol);
    if (!check) {
      const auto& v = *check.violation;
      throw ValidationError(name + " " + cell(v.row, v.col) + ": " + v.reason);
    }
  };
  require(problem.criteria, "criteria_matrix");
  for (std::size_t k = 0; k < problem.alternatives.size(); ++k) {
    const auto& a = problem.alternatives[k];
    const std::string name = "alternative_matrices[" + std::to_string(k) + "]";
    if (a.rows() != n || a.cols() != n) {
      throw ValidationError(name + ": expected " + std::to_string(n) + "x" +
                            std::to_string(n));
    }
    require(a, name);
  }
}

double consistency_index(const MatrixXt& m, const Tolerance& tol) {
  const auto check = validate_reciprocal(m, tol);
  if (!check) {
    throw ValidationError("consistency_index: " + check.violation->reason);
  }
  return spectral_radius(m);
}

WeightCone derive_weight_cone(const MatrixXt& criteria, const Tolerance& tol) {
  const auto check = validate_reciprocal(criteria, tol);
  if (!check) throw ValidationError("criteria_matrix: " + check.violation->reason);
  const auto cone = min_pseudo_quadratic(criteria, tol);
  return WeightCone{cone.optimum, reduce_generators(cone.generators, tol)};
}

MatrixXt assemble_B(const VectorXt& weights, std::span<const MatrixXt> alternatives) {
  if (Index(alternatives.size()) != weights.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "assemble_B: " + std::to_string(weights.size()) + " weights for " +
                    std::to_string(alternatives.size()) + " matrices");
  }
  std::vector<double> w(weights.data(), weights.data() + weights.size());
  return weighted_max<double>(alternatives, w);
}

// ---------------------------------------------------------------------------
// Rankings

Ranking rank(const VectorXt& x, double tie_tol) {
  detail::require_positive(x, "rank argument");
  Ranking r;
  r.vector = x / x.maxCoeff();
  std::vector<Index> order(std::size_t(x.size()));
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return r.vector(a) > r.vector(b); });
  for (Index i : order) {
    if (!r.groups.empty()) {
      const double leader = r.vector(r.groups.back().front());
      if (r.vector(i) / leader >= 1.0 - tie_tol) {
        r.groups.back().push_back(i);
        continue;
      }
    }
    r.groups.push_back({i});
  }
  for (auto& g : r.groups) std::sort(g.begin(), g.end());
  return r;
}

namespace {

std::string label_of(Index i, std::span<const std::string> labels) {
  if (i < Index(labels.size())) return labels[std::size_t(i)];
  return "#" + std::to_string(i + 1);
}

}  // namespace

const char* to_string(Relation r) noexcept {
  switch (r) {
    case Relation::Better: return "≻";
    case Relation::WeaklyBetter: return "⪰";
    case Relation::Equivalent: return "≡";
    case Relation::Worse: return "≺";
    case Relation::WeaklyWorse: return "⪯";
    case Relation::Conflict: return "?";
  }
  return "?";
}

namespace {

Relation flip(Relation r) {
  switch (r) {
    case Relation::Better: return Relation::Worse;
    case Relation::WeaklyBetter: return Relation::WeaklyWorse;
    case Relation::Worse: return Relation::Better;
    case Relation::WeaklyWorse: return Relation::WeaklyBetter;
    default: return r;
  }
}

}  // namespace

std::string render_ranking(const Ranking& r, std::span<const std::string> labels) {
  std::string out;
  for (std::size_t g = 0; g < r.groups.size(); ++g) {
    if (g > 0) out += " ≻ ";
    for (std::size_t i = 0; i < r.groups[g].size(); ++i) {
      if (i > 0) out += " ≡ ";
      out += label_of(r.groups[g][i], labels);
    }
  }
  return out;
}

CombinedOrder combine_rankings(std::span<const Ranking> rankings,
                               std::span<const std::string> labels) {
  if (rankings.empty()) {
    throw Error(ErrorCode::InvalidArgument, "combine_rankings: no rankings");
  }
  const Index n = rankings.front().vector.size();
  std::vector<std::vector<std::size_t>> position;
  for (const auto& r : rankings) {
    if (r.vector.size() != n) {
      throw Error(ErrorCode::DimensionMismatch, "combine_rankings: sizes differ");
    }
    std::vector<std::size_t> pos(std::size_t(n), 0);
    for (std::size_t g = 0; g < r.groups.size(); ++g)
      for (Index i : r.groups[g]) pos[std::size_t(i)] = g;
    position.push_back(std::move(pos));
  }

  const std::size_t count = rankings.size();
  std::vector<Relation> table(std::size_t(n * n), Relation::Equivalent);
  auto at = [&](Index a, Index b) -> Relation& { return table[std::size_t(a * n + b)]; };

  CombinedOrder out;
  for (Index a = 0; a < n; ++a) {
    for (Index b = a + 1; b < n; ++b) {
      std::size_t a_wins = 0, b_wins = 0;
      for (const auto& pos : position) {
        if (pos[std::size_t(a)] < pos[std::size_t(b)]) ++a_wins;
        if (pos[std::size_t(b)] < pos[std::size_t(a)]) ++b_wins;
      }
      Relation rel = Relation::Equivalent;
      if (a_wins > 0 && b_wins > 0) rel = Relation::Conflict;
      else if (a_wins == count) rel = Relation::Better;
      else if (a_wins > 0) rel = Relation::WeaklyBetter;
      else if (b_wins == count) rel = Relation::Worse;
      else if (b_wins > 0) rel = Relation::WeaklyWorse;
      at(a, b) = rel;
      at(b, a) = flip(rel);
      out.relations.push_back({a, b, rel});
    }
  }

  std::vector<Index> seq(static_cast<std::size_t>(n));
  std::iota(seq.begin(), seq.end(), Index(0));
  std::vector<int> score(std::size_t(n), 0);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      if (a != b && (at(a, b) == Relation::Better || at(a, b) == Relation::WeaklyBetter))
        ++score[std::size_t(a)];
  std::stable_sort(seq.begin(), seq.end(), [&](Index a, Index b) {
    return score[std::size_t(a)] > score[std::size_t(b)];
  });

  out.total = true;
  for (std::size_t i = 0; i < seq.size() && out.total; ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      const Relation r = at(seq[i], seq[j]);
      if (r != Relation::Better && r != Relation::WeaklyBetter && r != Relation::Equivalent) {
        out.total = false;
        break;
      }
    }
  }

  if (out.total) {
    out.sequence = seq;
    out.text = label_of(seq.front(), labels);
    for (std::size_t i = 1; i < seq.size(); ++i) {
      out.text += std::string(" ") + to_string(at(seq[i - 1], seq[i])) + " " +
                  label_of(seq[i], labels);
    }
  } else {
    for (std::size_t i = 0; i < out.relations.size(); ++i) {
      const auto& pr = out.relations[i];
      if (i > 0) out.text += "; ";
      Index first = pr.a, second = pr.b;
      Relation rel = pr.relation;
      if (rel == Relation::Worse || rel == Relation::WeaklyWorse) {
        std::swap(first, second);
        rel = flip(rel);
      }
      out.text += label_of(first, labels) + " " + to_string(rel) + " " + label_of(second, labels);
    }
  }
  return out;
}

const char* to_string(SolveMode mode) noexcept {
  switch (mode) {
    case SolveMode::Most: return "most";
    case SolveMode::Least: return "least";
    case SolveMode::All: return "all";
  }
  return "all";
}

const char* to_string(WeightSearch search) noexcept {
  switch (search) {
    case WeightSearch::Fixed: return "fixed";
    case WeightSearch::Exact: return "exact";
    case WeightSearch::Sampled: return "sampled";
    case WeightSearch::Explicit: return "explicit";
  }
  return "fixed";
}

SolveMode parse_solve_mode(const std::string& text) {
  if (text == "most") return SolveMode::Most;
  if (text == "least") return SolveMode::Least;
  if (text == "all") return SolveMode::All;
  throw Error(ErrorCode::InvalidArgument, "unknown mode '" + text + "'");
}

// ---------------------------------------------------------------------------
// Branches at fixed weights

namespace {

void attach_rankings(Branch& branch, const DecisionProblem& problem, const Tolerance& tol) {
  for (Index j = 0; j < branch.solution_generators.cols(); ++j) {
    branch.rankings.push_back(rank(branch.solution_generators.col(j), tol.tie_tol));
  }
  branch.order = combine_rankings(branch.rankings, problem.alternative_labels);
}

Branch common_branch(const DecisionProblem& problem, const VectorXt& weights,
                     const Tolerance& tol) {
  detail::require_positive(weights, "weight vector");
  Branch branch;
  branch.weights = weights;
  branch.combined = assemble_B(weights, problem.alternatives);
  const auto cone = min_pseudo_quadratic(branch.combined, tol);
  branch.mu = cone.optimum;
  branch.priority_generators = normalize_columns(reduce_generators(cone.generators, tol));
  return branch;
}

}  // namespace

Branch most_differentiating(const DecisionProblem& problem, const VectorXt& weights,
                            const Tolerance& tol) {
  Branch branch = common_branch(problem, weights, tol);
  const auto cone = max_hilbert_over_span(branch.priority_generators, tol);
  branch.delta = cone.optimum;
  branch.witness_pairs = cone.witness_pairs;
  for (const auto& piece : cone.pieces) branch.pieces.push_back(normalize_columns(piece));
  branch.solution_generators = normalize_columns(cone.generators);
  attach_rankings(branch, problem, tol);
  return branch;
}

Branch least_differentiating(const DecisionProblem& problem, const VectorXt& weights,
                             const Tolerance& tol) {
  Branch branch = common_branch(problem, weights, tol);
  const auto cone = min_hilbert_over_kleene_cone(branch.combined, tol);
  branch.delta = cone.optimum;
  branch.solution_generators = normalize_columns(reduce_generators(cone.generators, tol));
  attach_rankings(branch, problem, tol);
  return branch;
}

namespace {

void finish_report(SolveReport& report, const DecisionProblem& problem,
                   const Tolerance& tol, const SolveOptions& options) {
  std::vector<Ranking> all;
  for (const auto* branch : {&report.most, &report.least}) {
    if (*branch) all.insert(all.end(), (*branch)->rankings.begin(), (*branch)->rankings.end());
  }
  report.combined = combine_rankings(all, problem.alternative_labels);
  if (options.baseline) report.baseline = classic_ahp_baseline(problem, tol);
}

SolveReport report_skeleton(const DecisionProblem& problem, const Tolerance& tol) {
  validate_problem(problem, tol);
  SolveReport report;
  report.weight_cone = derive_weight_cone(problem.criteria, tol);
  report.criteria_consistency = report.weight_cone.lambda_c;
  for (const auto& a : problem.alternatives) {
    report.alternative_consistency.push_back(spectral_radius(a));
  }
  return report;
}

bool wants_most(SolveMode m) { return m != SolveMode::Least; }
bool wants_least(SolveMode m) { return m != SolveMode::Most; }

}  // namespace

SolveReport solve_fixed_weights(const DecisionProblem& problem, const VectorXt& weights,
                                const Tolerance& tol, const SolveOptions& options) {
  SolveReport report = report_skeleton(problem, tol);
  report.search = WeightSearch::Explicit;
  if (wants_most(options.mode)) report.most = most_differentiating(problem, weights, tol);
  if (wants_least(options.mode)) report.least = least_differentiating(problem, weights, tol);
  finish_report(report, problem, tol, options);
  return report;
}

// ---------------------------------------------------------------------------
// Weight search over the weight cone

namespace {

// Δ_w and δ_w at one weight vector. Both are invariant under the choice of
// generating set, so the Kleene star is used without reduction.
struct Objective {
  double most = 0;
  double least = 0;
};

Objective evaluate(const DecisionProblem& problem, const VectorXt& w, const Tolerance& tol) {
  const MatrixXt b = assemble_B(w, problem.alternatives);
  const double mu = spectral_radius(b);
  const MatrixXt star = kleene_star((b / mu).eval(), tol);
  Objective obj;
  for (Index j = 0; j < star.cols(); ++j) {
    obj.most = std::max(obj.most, star.col(j).maxCoeff() / star.col(j).minCoeff());
  }
  obj.least = star.maxCoeff();
  return obj;
}

struct Incumbent {
  bool set = false;
  double value = 0;
  VectorXt coeffs;
};

class WeightSearcher {
 public:
  WeightSearcher(const DecisionProblem& problem, const MatrixXt& generators,
                 const Tolerance& tol)
      : problem_(problem), gens_(generators), tol_(tol) {}

  // Evaluates v and keeps it when strictly better than the incumbent.
  void consider(const VectorXt& v) {
    const VectorXt w = mat_mul(gens_, v);
    const Objective obj = evaluate(problem_, w, tol_);
    if (!most_.set || (obj.most > most_.value &&
                       !approx_equal(obj.most, most_.value, tol_.rel_eq))) {
      most_ = {true, obj.most, v};
    }
    if (!least_.set || (obj.least < least_.value &&
                        !approx_equal(obj.least, least_.value, tol_.rel_eq))) {
      least_ = {true, obj.least, v};
    }
  }

  // Range of v_j / v_ref over which the weight pattern can change, widened so
  // that the outermost samples are pure generators.
  std::pair<double, double> ratio_range(Index ref, Index j) const {
    const VectorXt r = gens_.col(ref).cwiseQuotient(gens_.col(j));
    return {r.minCoeff() / 4.0, r.maxCoeff() * 4.0};
  }

  // Geometric 2-D grid over v_a / v_ref and v_b / v_ref, other generators off.
  void grid(Index ref, Index a, Index b, int size) {
    const auto [alo, ahi] = ratio_range(ref, a);
    const auto [blo, bhi] = ratio_range(ref, b);
    const auto axis_a = geometric(alo, ahi, size);
    const auto axis_b = geometric(blo, bhi, size);
    for (double ta : axis_a) {
      for (double tb : axis_b) consider(coeffs(ref, a, b, ta, tb));
    }
  }

  // One finer pass around an incumbent found by grid().
  void refine(Index ref, Index a, Index b, const VectorXt& around, int coarse_size) {
    const auto [alo, ahi] = ratio_range(ref, a);
    const auto [blo, bhi] = ratio_range(ref, b);
    const double step_a = std::log(ahi / alo) / double(coarse_size - 1);
    const double step_b = std::log(bhi / blo) / double(coarse_size - 1);
    const double ta = around(a) / around(ref);
    const double tb = around(b) / around(ref);
    const int fine = 21;
    const auto axis_a = geometric(ta * std::exp(-step_a), ta * std::exp(step_a), fine);
    const auto axis_b = geometric(tb * std::exp(-step_b), tb * std::exp(step_b), fine);
    for (double x : axis_a)
      for (double y : axis_b) consider(coeffs(ref, a, b, x, y));
  }

  const Incumbent& most() const { return most_; }
  const Incumbent& least() const { return least_; }
  Index dim() const { return gens_.cols(); }

  static std::vector<double> geometric(double lo, double hi, int size) {
    std::vector<double> out;
    if (size <= 1) return {std::sqrt(lo * hi)};
    const double step = std::log(hi / lo) / double(size - 1);
    for (int i = 0; i < size; ++i) out.push_back(lo * std::exp(step * i));
    return out;
  }

 private:
  VectorXt coeffs(Index ref, Index a, Index b, double ta, double tb) const {
    VectorXt v = VectorXt::Zero(gens_.cols());
    v(ref) = 1.0;
    v(a) = ta;
    v(b) = tb;
    return v;
  }

  const DecisionProblem& problem_;
  const MatrixXt& gens_;
  Tolerance tol_;
  Incumbent most_;
  Incumbent least_;
};

// Ratios t = v_2 / v_1 where some weight or some entry of B switches between
// the two generators' contributions.
std::vector<double> pattern_breakpoints(const DecisionProblem& problem, const MatrixXt& g) {
  std::vector<double> ts;
  const Index m = g.rows();
  for (Index k = 0; k < m; ++k) ts.push_back(g(k, 0) / g(k, 1));
  const Index n = problem.alternative_count();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      for (Index k = 0; k < m; ++k) {
        for (Index k2 = 0; k2 < m; ++k2) {
          if (k == k2) continue;
          // g(k,1) t a_k = g(k2,0) a_k2
          ts.push_back(g(k2, 0) * problem.alternatives[std::size_t(k2)](i, j) /
                       (g(k, 1) * problem.alternatives[std::size_t(k)](i, j)));
        }
      }
    }
  }
  std::erase_if(ts, [](double t) { return !(t > 0) || !std::isfinite(t); });
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end(),
                       [](double a, double b) { return approx_equal(a, b, 1e-12); }),
           ts.end());
  return ts;
}

void search_two(WeightSearcher& searcher, const DecisionProblem& problem,
                const MatrixXt& g, int grid_size) {
  std::vector<double> ts = pattern_breakpoints(problem, g);
  const auto [lo, hi] = searcher.ratio_range(0, 1);
  std::vector<double> candidates{lo};
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i > 0) candidates.push_back(std::sqrt(ts[i - 1] * ts[i]));
    candidates.push_back(ts[i]);
  }
  const auto dense = WeightSearcher::geometric(lo, hi, grid_size);
  candidates.insert(candidates.end(), dense.begin(), dense.end());
  candidates.push_back(hi);
  std::sort(candidates.begin(), candidates.end());
  for (double t : candidates) {
    VectorXt v(2);
    v << 1.0, t;
    searcher.consider(v);
  }
}

}  // namespace

SolveReport solve(const DecisionProblem& problem, const Tolerance& tol,
                  const SolveOptions& options) {
  SolveReport report = report_skeleton(problem, tol);
  const MatrixXt& g = report.weight_cone.generators;
  const Index d = g.cols();

  VectorXt most_w = g.col(0);
  VectorXt least_w = g.col(0);
  if (d == 1) {
    report.search = WeightSearch::Fixed;
  } else {
    WeightSearcher searcher(problem, g, tol);
    if (d == 2) {
      report.search = WeightSearch::Exact;
      search_two(searcher, problem, g, options.grid_size);
    } else if (d == 3) {
      report.search = WeightSearch::Sampled;
      searcher.grid(0, 1, 2, options.grid_size);
      const VectorXt most_v = searcher.most().coeffs;
      const VectorXt least_v = searcher.least().coeffs;
      searcher.refine(0, 1, 2, most_v, options.grid_size);
      searcher.refine(0, 1, 2, least_v, options.grid_size);
    } else {
      report.search = WeightSearch::Sampled;
      for (Index r = 0; r < d; ++r)
        for (Index a = r + 1; a < d; ++a)
          for (Index b = a + 1; b < d; ++b) searcher.grid(r, a, b, options.slice_grid_size);
    }
    most_w = mat_mul(g, searcher.most().coeffs);
    least_w = mat_mul(g, searcher.least().coeffs);
  }

  if (wants_most(options.mode)) report.most = most_differentiating(problem, most_w, tol);
  if (wants_least(options.mode)) report.least = least_differentiating(problem, least_w, tol);
  finish_report(report, problem, tol, options);
  return report;
}

// ---------------------------------------------------------------------------
// Classic AHP

VectorXt perron_vector(const MatrixXt& m, double residual, int max_iterations) {
  detail::require_square(m, "perron_vector argument");
  VectorXt x = VectorXt::Constant(m.rows(), 1.0 / double(m.rows()));
  for (int it = 0; it < max_iterations; ++it) {
    VectorXt y = m * x;
    y /= y.sum();
    if ((y - x).cwiseAbs().maxCoeff() <= residual) return y;
    x = std::move(y);
  }
  throw Error(ErrorCode::NonConvergence,
              "power iteration did not converge in " + std::to_string(max_iterations) +
                  " iterations");
}

Ranking classic_ahp_baseline(const DecisionProblem& problem, const Tolerance& tol) {
  validate_problem(problem, tol);
  const VectorXt w = perron_vector(problem.criteria);
  VectorXt x = VectorXt::Zero(problem.alternative_count());
  for (std::size_t k = 0; k < problem.alternatives.size(); ++k) {
    x += w(Index(k)) * perron_vector(problem.alternatives[k]);
  }
  return rank(x, tol.tie_tol);
}

// ---------------------------------------------------------------------------
// Geometry

namespace {

std::string pair_tag(const IndexPair& p) {
  return "max(" + std::to_string(p.k + 1) + "," + std::to_string(p.l + 1) + ")";
}

}  // namespace

SectionPlot report_geometry(const SolveReport& report, const Tolerance& tol) {
  const Branch* base = report.most ? &*report.most : report.least ? &*report.least : nullptr;
  if (base == nullptr) throw Error(ErrorCode::InvalidArgument, "report has no branches");
  if (base->combined.rows() != 3) {
    throw Error(ErrorCode::DimensionMismatch, "geometry needs exactly 3 alternatives");
  }
  SectionPlot plot = section_at_unit_last_coord(base->priority_generators, "span", tol);
  if (report.least) {
    plot.append(section_at_unit_last_coord(report.least->solution_generators, "min", tol));
  }
  if (report.most) {
    for (std::size_t i = 0; i < report.most->pieces.size(); ++i) {
      plot.append(section_at_unit_last_coord(report.most->pieces[i],
                                             pair_tag(report.most->witness_pairs[i]), tol));
    }
  }
  return plot;
}

SpanGeometry span_geometry(const MatrixXt& a, const Tolerance& tol) {
  if (a.rows() != 3 || a.cols() != 3) {
    throw Error(ErrorCode::DimensionMismatch, "span geometry needs a 3x3 matrix");
  }
  detail::require_positive(a, "span geometry matrix");
  // Witness pairs refer to the columns of the unreduced star.
  const MatrixXt star = min_pseudo_quadratic(a, tol).generators;

  SpanGeometry geo;
  const auto low = min_hilbert_over_kleene_cone(a, tol);
  geo.delta_min = low.optimum;
  geo.min_generators = reduce_generators(low.generators, tol);
  const auto high = max_hilbert_over_span(star, tol);
  geo.delta_max = high.optimum;
  geo.witness_pairs = high.witness_pairs;
  geo.max_pieces = high.pieces;

  geo.section = section_at_unit_last_coord(reduce_generators(star, tol), "span", tol);
  geo.section.append(section_at_unit_last_coord(geo.min_generators, "min", tol));
  for (std::size_t i = 0; i < high.pieces.size(); ++i) {
    geo.section.append(section_at_unit_last_coord(high.pieces[i], pair_tag(high.witness_pairs[i]), tol));
  }
  return geo;
}

}  // namespace tropahp
