#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "tropahp/ahp.hpp"
#include "tropahp/io.hpp"

using namespace tropahp;

namespace {

const double kRel = 1e-9;

MatrixXt fixture_matrix(const char* name) {
  return io::load_matrix(std::string(TROPAHP_FIXTURES) + "/" + name);
}

DecisionProblem fixture_problem(const char* name) {
  return io::load_problem(std::string(TROPAHP_FIXTURES) + "/" + name).problem;
}

// q^- x (A x)^- p
double ratio_objective(const MatrixXt& a, const VectorXt& p, const VectorXt& q, const VectorXt& x) {
  const VectorXt ax = oracle::mul(a, x);
  double top = 0, bottom = 0;
  for (Index i = 0; i < x.size(); ++i) top = std::max(top, x(i) / q(i));
  for (Index i = 0; i < ax.size(); ++i) bottom = std::max(bottom, p(i) / ax(i));
  return top * bottom;
}

std::vector<std::pair<Index, Index>> one_based(const std::vector<IndexPair>& pairs) {
  std::vector<std::pair<Index, Index>> out;
  for (const auto& p : pairs) out.emplace_back(p.k + 1, p.l + 1);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("weighted combination of the vacation matrices") {
  const auto p = fixture_problem("vacation.json");
  const double l = std::pow(5.0, 0.75);
  const std::vector<double> w{1, 5 / l, l * l / 5, l, 3 / l};
  const auto sol = min_weighted_pseudo_quadratic<double>(p.alternatives, w);
  MatrixXt shown(4, 4);
  shown << l, 7 * l * l / 5, 7 * l * l / 5, 9,
      25 / l, l, 6, 3 * l,
      4 * l, 2 * l, l, 3 * l,
      3 * l, 7 * l * l / 5, 7 * l * l / 5, l;
  CHECK(oracle::near(sol.combined, shown, kRel));
  const double mu = 2 * std::pow(5.0, 5.0 / 8) * std::sqrt(7.0);
  CHECK(oracle::near(sol.cone.optimum, mu, kRel));
  CHECK(oracle::near(sol.cone.optimum, oracle::max_cycle_mean(shown), kRel));
}

TEST_CASE("weighted combination of the school matrices") {
  const auto p = fixture_problem("school.json");
  const double l = std::sqrt(3.0) * std::pow(5.0, 0.25);
  const std::vector<double> w{l, 3 / l, 3.0 / 7, 1, l * l / 3, 3 / l};
  const MatrixXt b = weighted_max<double>(p.alternatives, w);
  MatrixXt shown(3, 3);
  shown << l, 9, 7,
      3 * l, l, 3 * l,
      2 * l, 5, l;
  CHECK(oracle::near(b, shown, kRel));
}

TEST_CASE("single weighted matrix reduces to the plain problem") {
  oracle::Random rnd(31);
  const MatrixXt a = rnd.positive(4, 4);
  const std::vector<MatrixXt> ms{a};
  const std::vector<double> w{1.0};
  const auto sol = min_weighted_pseudo_quadratic<double>(ms, w);
  const auto plain = min_pseudo_quadratic(a);
  CHECK(sol.cone.optimum == plain.optimum);
  CHECK(sol.cone.generators == plain.generators);

  const std::vector<double> bad{-1.0};
  CHECK_THROWS_AS(weighted_max<double>(ms, bad), Error);
  const std::vector<double> two{1.0, 2.0};
  CHECK_THROWS_AS(weighted_max<double>(ms, two), Error);
}

TEST_CASE("max_ratio on the all-ones matrix") {
  const VectorXt ones = VectorXt::Ones(3);
  const auto cone = max_ratio(MatrixXt::Ones(3, 3), ones, ones);
  CHECK(cone.optimum == doctest::Approx(1.0));
}

TEST_CASE("max_ratio bound and attainment on random instances") {
  oracle::Random rnd(32);
  for (int t = 0; t < 100; ++t) {
    const Index n = rnd.integer(2, 5);
    const MatrixXt a = rnd.positive(n, n);
    VectorXt p = rnd.positive_vec(n);
    if (rnd.integer(0, 2) == 0) p(rnd.integer(0, int(n) - 1)) = 0;
    const VectorXt q = rnd.positive_vec(n);
    const auto cone = max_ratio(a, p, q);
    CHECK_FALSE(cone.witness_pairs.empty());
    CHECK(cone.pieces.size() == cone.witness_pairs.size());
    for (int s = 0; s < 100; ++s) {
      CHECK(ratio_objective(a, p, q, rnd.positive_vec(n, 3)) <= cone.optimum * (1 + kRel));
    }
    for (const auto& piece : cone.pieces) {
      for (int s = 0; s < 5; ++s) {
        const VectorXt x = oracle::mul(piece, rnd.positive_vec(piece.cols()));
        CHECK(oracle::near(ratio_objective(a, p, q, x), cone.optimum, kRel));
      }
    }
  }
  CHECK_THROWS_AS(max_ratio(MatrixXt::Ones(2, 2), VectorXt::Zero(2), VectorXt::Ones(2)), Error);
  MatrixXt zero_entry = MatrixXt::Ones(2, 2);
  zero_entry(0, 1) = 0;
  CHECK_THROWS_AS(max_ratio(zero_entry, VectorXt::Ones(2), VectorXt::Ones(2)), Error);
}

TEST_CASE("max_hilbert_over_span on the two 3x3 examples") {
  const MatrixXt a1 = fixture_matrix("a_ex1.json");
  const auto c1 = max_hilbert_over_span(a1);
  CHECK(c1.optimum == doctest::Approx(2.0).epsilon(1e-12));
  bool first = false, second = false;
  for (Index j = 0; j < c1.generators.cols(); ++j) {
    const VectorXt g = c1.generators.col(j) / c1.generators(2, j);
    CHECK(oracle::hilbert(g) == doctest::Approx(2.0).epsilon(1e-12));
    first |= oracle::near(g(0), 1.5, 1e-12) && oracle::near(g(1), 2.0, 1e-12);
    second |= oracle::near(g(0), 0.5, 1e-12) && oracle::near(g(1), 2.0 / 3, 1e-12);
  }
  CHECK(first);
  CHECK(second);
  // Column 1 of A_ex1 is 4/3 times column 2, so (1,3) attains the optimum
  // alongside (2,3) and (3,1).
  CHECK(one_based(c1.witness_pairs) ==
        std::vector<std::pair<Index, Index>>{{1, 3}, {2, 3}, {3, 1}});

  const auto c2 = max_hilbert_over_span(fixture_matrix("a_ex2.json"));
  CHECK(c2.optimum == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(one_based(c2.witness_pairs) ==
        std::vector<std::pair<Index, Index>>{{1, 3}, {2, 3}, {3, 1}, {3, 2}});
}

TEST_CASE("max_hilbert_over_span on the vacation priority cone") {
  const auto p = fixture_problem("vacation.json");
  const double l = std::pow(5.0, 0.75);
  const double mu = 2 * std::pow(5.0, 5.0 / 8) * std::sqrt(7.0);
  MatrixXt s(4, 3);
  s << 1, mu / (4 * l), 0.75,
      3 * l / mu, 1, 3 * l / mu,
      4 * l / mu, 1, 3 * l / mu,
      1, mu / (4 * l), 1;
  const auto cone = max_hilbert_over_span(s);
  CHECK(oracle::near(cone.optimum, mu / (3 * l), kRel));
  CHECK(one_based(cone.witness_pairs) ==
        std::vector<std::pair<Index, Index>>{{1, 2}, {3, 2}, {3, 3}});
  for (Index j = 0; j < cone.generators.cols(); ++j) {
    CHECK(oracle::near(oracle::hilbert(cone.generators.col(j)), cone.optimum, kRel));
  }
}

TEST_CASE("min_hilbert_constrained small cases") {
  const VectorXt ones = VectorXt::Ones(3);
  const auto zero = min_hilbert_constrained(MatrixXt::Zero(3, 3), ones, ones);
  CHECK(zero.optimum == 1.0);
  for (Index j = 0; j < zero.generators.cols(); ++j) {
    CHECK(oracle::hilbert(zero.generators.col(j)) == 1.0);
  }

  const auto ex2 = min_hilbert_constrained(fixture_matrix("a_ex2.json"), ones, ones);
  CHECK(ex2.optimum == doctest::Approx(1.0));
  for (Index j = 0; j < ex2.generators.cols(); ++j) {
    CHECK(oracle::same_ray(ex2.generators.col(j), ones, kRel));
  }

  MatrixXt big = MatrixXt::Ones(2, 2) * 2;
  CHECK_THROWS_AS(min_hilbert_constrained(big, VectorXt::Ones(2), VectorXt::Ones(2)), Error);
}

TEST_CASE("min_hilbert_constrained post-conditions on random instances") {
  oracle::Random rnd(33);
  for (int t = 0; t < 100; ++t) {
    const Index n = rnd.integer(2, 5);
    MatrixXt a = rnd.integer(0, 1) ? rnd.sparse(n) : rnd.positive(n, n);
    a(0, 0) = std::max(a(0, 0), 1e-3);
    a /= oracle::max_cycle_mean(a) * rnd.uniform(1.0, 1.5);
    VectorXt p = rnd.positive_vec(n);
    if (rnd.integer(0, 2) == 0) p(0) = 0;
    const VectorXt q = rnd.positive_vec(n);
    const auto cone = min_hilbert_constrained(a, p, q);
    // Independent optimum q^- A^* p with the closure oracle.
    const MatrixXt star = oracle::closure(a);
    double expected = 0;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) expected = std::max(expected, star(i, j) * p(j) / q(i));
    CHECK(oracle::near(cone.optimum, expected, kRel));

    auto objective = [&](const VectorXt& x) {
      double top = 0, bottom = 0;
      for (Index i = 0; i < n; ++i) {
        top = std::max(top, x(i) / q(i));
        bottom = std::max(bottom, p(i) / x(i));
      }
      return top * bottom;
    };
    for (int s = 0; s < 5; ++s) {
      const VectorXt x = oracle::mul(cone.generators, rnd.positive_vec(n));
      const VectorXt ax = oracle::mul(a, x);
      for (Index i = 0; i < n; ++i) CHECK(ax(i) <= x(i) * (1 + kRel));
      CHECK(oracle::near(objective(x), cone.optimum, kRel));
      // Any feasible x is no better.
      const VectorXt y = oracle::mul(star, rnd.positive_vec(n, 3));
      CHECK(objective(y) >= cone.optimum * (1 - kRel));
    }
  }
}

TEST_CASE("min_hilbert_over_kleene_cone examples") {
  const auto ex1 = min_hilbert_over_kleene_cone(fixture_matrix("a_ex1.json"));
  CHECK(oracle::near(ex1.optimum, 4.0 / 3, kRel));

  const double l = std::pow(5.0, 0.75);
  const double mu = 2 * std::pow(5.0, 5.0 / 8) * std::sqrt(7.0);
  const auto p = fixture_problem("vacation.json");
  const std::vector<double> w{1, 5 / l, l * l / 5, l, 3 / l};
  const MatrixXt b = weighted_max<double>(p.alternatives, w);
  CHECK(oracle::near(min_hilbert_over_kleene_cone(b).optimum, mu / (4 * l), kRel));

  const auto school = fixture_problem("school.json");
  const double ls = std::sqrt(3.0) * std::pow(5.0, 0.25);
  const std::vector<double> ws{ls, 3 / ls, 3.0 / 7, 1, ls * ls / 3, 3 / ls};
  const MatrixXt bs = weighted_max<double>(school.alternatives, ws);
  CHECK(oracle::near(min_hilbert_over_kleene_cone(bs).optimum,
                     std::pow(3.0, 0.25) * std::pow(5.0, -0.125), kRel));

  CHECK_THROWS_AS(min_hilbert_over_kleene_cone(MatrixXt::Zero(3, 3)), Error);
}

TEST_CASE("sandwich: delta <= H(x) <= Delta on priority cones") {
  oracle::Random rnd(34);
  for (int t = 0; t < 100; ++t) {
    const Index n = rnd.integer(2, 5);
    const MatrixXt b = rnd.positive(n, n);
    const double mu = oracle::max_cycle_mean(b);
    const MatrixXt star = oracle::closure(b / mu);
    const MatrixXt s = reduce_generators(star);
    const double high = max_hilbert_over_span(s).optimum;
    const double low = min_hilbert_over_kleene_cone(b).optimum;
    CHECK(low <= high * (1 + kRel));
    for (int k = 0; k < 20; ++k) {
      const double h = oracle::hilbert(oracle::mul(star, rnd.positive_vec(n, 3)));
      CHECK(h >= low * (1 - kRel));
      CHECK(h <= high * (1 + kRel));
    }
  }
}

TEST_CASE("optima are invariant under rescaling generator columns") {
  oracle::Random rnd(35);
  for (int t = 0; t < 50; ++t) {
    const MatrixXt s = rnd.positive(4, 3);
    MatrixXt scaled = s;
    for (Index j = 0; j < 3; ++j) scaled.col(j) *= rnd.log_uniform(2);
    CHECK(oracle::near(max_hilbert_over_span(s).optimum, max_hilbert_over_span(scaled).optimum, kRel));
  }
}
