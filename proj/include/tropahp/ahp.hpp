#pragma once

// Tropical analytic hierarchy process: weights from the criteria matrix,
// weighted log-Chebyshev approximation of the alternative matrices, and the
// most / least differentiating priority vectors.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tropahp/core.hpp"
#include "tropahp/opt.hpp"
#include "tropahp/span.hpp"

namespace tropahp {

struct DecisionProblem {
  std::string name;
  std::vector<std::string> criteria_labels;
  std::vector<std::string> alternative_labels;
  MatrixXt criteria;                  // m x m
  std::vector<MatrixXt> alternatives;  // m matrices, n x n

  Index criteria_count() const { return criteria.rows(); }
  Index alternative_count() const {
    return alternatives.empty() ? 0 : alternatives.front().rows();
  }
};

struct ReciprocalViolation {
  Index row = 0;  // 0-based
  Index col = 0;
  std::string reason;
};

struct ReciprocalCheck {
  std::optional<ReciprocalViolation> violation;
  bool ok() const { return !violation.has_value(); }
  explicit operator bool() const { return ok(); }
};

// Positive entries, unit diagonal and a_ij a_ji = 1, each within rel_eq.
ReciprocalCheck validate_reciprocal(const MatrixXt& m, const Tolerance& tol = {});

// Throws ValidationError naming the offending matrix and 1-based cell.
void validate_problem(const DecisionProblem& problem, const Tolerance& tol = {});

// Spectral radius of a reciprocal matrix; 1 iff the matrix is consistent.
double consistency_index(const MatrixXt& m, const Tolerance& tol = {});

struct WeightCone {
  double lambda_c = 0;
  // Essential columns of (C / lambda_c)^*, unscaled: column j keeps the unit
  // entry from the identity term of the star.
  MatrixXt generators;

  Index essential_dim() const { return generators.cols(); }
};

WeightCone derive_weight_cone(const MatrixXt& criteria, const Tolerance& tol = {});

MatrixXt assemble_B(const VectorXt& weights, std::span<const MatrixXt> alternatives);

struct Ranking {
  std::vector<std::vector<Index>> groups;  // best group first, indices ascending
  VectorXt vector;                         // normalized to max entry 1
};

Ranking rank(const VectorXt& x, double tie_tol = Tolerance{}.tie_tol);

// "C ≡ S ≻ D ≻ Q"
std::string render_ranking(const Ranking& r, std::span<const std::string> labels);

enum class Relation { Better, WeaklyBetter, Equivalent, Worse, WeaklyWorse, Conflict };

// ≻ ⪰ ≡ ≺ ⪯, and "?" for a conflict.
const char* to_string(Relation r) noexcept;

struct PairRelation {
  Index a = 0;
  Index b = 0;
  Relation relation = Relation::Equivalent;
};

struct CombinedOrder {
  bool total = true;  // linear rendering available
  std::vector<Index> sequence;  // alternatives in rendered order when total
  std::vector<PairRelation> relations;  // a < b, every pair
  std::string text;
};

// Strict in every ranking: ≻; strict in some and tied in the rest: ⪰;
// tied everywhere: ≡. Opposite strict preferences make the pair a conflict
// and the order non-total.
CombinedOrder combine_rankings(std::span<const Ranking> rankings,
                               std::span<const std::string> labels);

enum class SolveMode { Most, Least, All };
enum class WeightSearch { Fixed, Exact, Sampled, Explicit };

const char* to_string(SolveMode mode) noexcept;
const char* to_string(WeightSearch search) noexcept;
SolveMode parse_solve_mode(const std::string& text);

struct Branch {
  VectorXt weights;
  MatrixXt combined;             // B
  double mu = 0;                 // spectral radius of B
  MatrixXt priority_generators;  // reduced (B / mu)^*, columns normalized
  double delta = 0;              // Δ for the most branch, δ for the least
  std::vector<IndexPair> witness_pairs;  // most branch only
  std::vector<MatrixXt> pieces;          // most branch: solution set per pair
  MatrixXt solution_generators;  // representatives, columns normalized
  std::vector<Ranking> rankings;  // one per representative
  CombinedOrder order;
};

struct SolveOptions {
  SolveMode mode = SolveMode::All;
  bool baseline = false;
  int grid_size = 200;        // per axis for three essential generators
  int slice_grid_size = 48;   // per axis on sampled slices (four or more)
};

struct SolveReport {
  WeightCone weight_cone;
  WeightSearch search = WeightSearch::Fixed;
  double criteria_consistency = 0;
  std::vector<double> alternative_consistency;
  std::optional<Branch> most;
  std::optional<Branch> least;
  CombinedOrder combined;
  std::optional<Ranking> baseline;
};

Branch most_differentiating(const DecisionProblem& problem, const VectorXt& weights,
                            const Tolerance& tol = {});
Branch least_differentiating(const DecisionProblem& problem, const VectorXt& weights,
                             const Tolerance& tol = {});

// Both branches at one explicit weight vector.
SolveReport solve_fixed_weights(const DecisionProblem& problem, const VectorXt& weights,
                                const Tolerance& tol = {}, const SolveOptions& options = {});

// Full pipeline; searches the weight cone when it has more than one
// essential generator.
SolveReport solve(const DecisionProblem& problem, const Tolerance& tol = {},
                  const SolveOptions& options = {});

// Normalized (sum one) Perron vector by power iteration.
VectorXt perron_vector(const MatrixXt& m, double residual = 1e-12, int max_iterations = 10000);

// Classic weighted-sum AHP, for comparison only.
Ranking classic_ahp_baseline(const DecisionProblem& problem, const Tolerance& tol = {});

// Section of the most-branch priority cone and of both solution sets by the
// plane x_3 = 1 (three alternatives only).
SectionPlot report_geometry(const SolveReport& report, const Tolerance& tol = {});

// Plane section of span((A / lambda)^*) for a 3 x 3 matrix, with the solution
// sets of minimum and maximum Hilbert seminorm over that span. When A is
// already a Kleene star with unit spectral radius the span is span(A).
struct SpanGeometry {
  double delta_min = 0;
  double delta_max = 0;
  std::vector<IndexPair> witness_pairs;
  MatrixXt min_generators;
  std::vector<MatrixXt> max_pieces;
  SectionPlot section;
};

SpanGeometry span_geometry(const MatrixXt& a, const Tolerance& tol = {});

}  // namespace tropahp
