#include <doctest.h>

#include <cmath>
#include <random>

#include "../support/check_error.hpp"
#include "../support/oracles.hpp"
#include "glasso/lambda.hpp"
#include "glasso/solver.hpp"

using namespace glasso;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(v.size());
  Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

struct Problem {
  BlockDictionary x;
  Vector y;
  std::vector<double> lambdas;
};

Problem random_problem(std::mt19937_64& rng, Index n = 40, Index p = 60, double scale = 0.3) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const GroupPartition part = GroupPartition::from_sets(oracle::random_sets(p, 4, rng), p);
  Problem pr{BlockDictionary::from_dense(oracle::random_unit_columns(n, p, rng), part), Vector(n),
             {}};
  Vector beta = Vector::Zero(p);
  for (int k = 0; k < 3; ++k) beta(rng() % p) = 3.0 * gauss(rng);
  pr.y = pr.x.apply(beta);
  for (Index i = 0; i < n; ++i) pr.y(i) += 0.3 * gauss(rng);
  const Vector c = pr.x.apply_transpose(pr.y);
  for (Index g = 0; g < part.num_groups(); ++g) {
    double s = 0.0;
    for (Index j : part.group(g)) s += c(j) * c(j);
    pr.lambdas.push_back(scale * std::sqrt(s) + 0.05 * std::sqrt(double(part.group_size(g))));
  }
  return pr;
}

}  // namespace

TEST_CASE("block soft threshold examples") {
  CHECK(block_soft_threshold(vec({0.0, 0.0}), 1.0).norm() == 0.0);
  CHECK(block_soft_threshold(vec({0.9 * 0.6, 0.9 * 0.8}), 1.0).norm() == 0.0);
  const Vector out = block_soft_threshold(vec({3.0, 4.0}), 2.5);
  CHECK(out(0) == doctest::Approx(1.5));
  CHECK(out(1) == doctest::Approx(2.0));
  // Independent minimizer of the prox objective.
  std::mt19937_64 rng(1);
  const double ref = oracle::prox_pgd_minimum({3.0, 4.0}, 2.5, 20, rng);
  CHECK(oracle::prox_objective({out(0), out(1)}, {3.0, 4.0}, 2.5) <= ref + 1e-10);
}

TEST_CASE("prox output is a local minimum under random perturbations") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int c = 0; c < 50; ++c) {
    const int d = 1 + static_cast<int>(rng() % 6);
    oracle::Vec v(d);
    Vector ev(d);
    for (int i = 0; i < d; ++i) ev(i) = v[i] = gauss(rng);
    const double lambda = std::abs(gauss(rng));
    const Vector x = block_soft_threshold(ev, lambda);
    const oracle::Vec xs(x.data(), x.data() + d);
    const double f0 = oracle::prox_objective(xs, v, lambda);
    for (int k = 0; k < 20; ++k) {
      oracle::Vec delta(d);
      for (double& e : delta) e = gauss(rng);
      const double nd = oracle::norm2(delta);
      oracle::Vec moved = xs;
      for (int i = 0; i < d; ++i) moved[i] += 1e-4 * delta[i] / nd;
      CHECK(oracle::prox_objective(moved, v, lambda) >= f0 - 1e-15);
    }
  }
}

TEST_CASE("objective and KKT basics") {
  const BlockDictionary x = dirac_basis(4).with_partition(GroupPartition::contiguous(std::vector<Index>{2, 2}));
  const Vector beta = vec({1.0, 0.0, 0.0, 2.0});
  const std::vector<double> tiny = {1e-30, 1e-30};
  CHECK(objective(x, x.apply(beta), beta, tiny) == doctest::Approx(3e-30));

  const Vector y = vec({0.3, 0.4, 1.0, 0.0});
  const std::vector<double> big = {0.5, 1.0};
  const KktReport zero = kkt_check(x, y, Vector::Zero(4), big, 1e-12);
  CHECK(zero.residual == 0.0);
  CHECK(zero.satisfied);
  CHECK(zero.dual_slack[0] == doctest::Approx(1.0));
  CHECK(zero.support_full_rank);

  const std::vector<double> small = {0.1, 0.1};
  const KktReport bad = kkt_check(x, y, Vector::Zero(4), small, 1e-6);
  CHECK(bad.worst_group == 1);
  CHECK(bad.residual == doctest::Approx(9.0));
}

TEST_CASE("large lambdas give the zero solution") {
  std::mt19937_64 rng(3);
  Problem pr = random_problem(rng);
  for (double& l : pr.lambdas) l = 1e3;
  const SolverResult r = solve_group_lasso(pr.x, pr.y, pr.lambdas);
  CHECK(r.converged);
  CHECK(r.estimate.coefficients.cwiseAbs().maxCoeff() == 0.0);
  CHECK(r.estimate.support.empty());
}

TEST_CASE("converged results satisfy KKT at the declared tolerance") {
  std::mt19937_64 rng(4);
  for (StepRule rule : {StepRule::fixed, StepRule::backtracking}) {
    for (bool restart : {true, false}) {
      const Problem pr = random_problem(rng);
      SolverOptions o;
      o.step_rule = rule;
      o.restart = restart;
      o.max_iterations = 50000;
      const SolverResult r = solve_group_lasso(pr.x, pr.y, pr.lambdas, o);
      REQUIRE(r.converged);
      CHECK(kkt_check(pr.x, pr.y, r.estimate.coefficients, pr.lambdas, o.kkt_tolerance).satisfied);
      CHECK(r.final_objective ==
            doctest::Approx(objective(pr.x, pr.y, r.estimate.coefficients, pr.lambdas)));
    }
  }
}

TEST_CASE("homogeneity of degree one") {
  std::mt19937_64 rng(5);
  const Problem pr = random_problem(rng);
  SolverOptions o;
  o.kkt_tolerance = 1e-9;
  o.max_iterations = 100000;
  const SolverResult base = solve_group_lasso(pr.x, pr.y, pr.lambdas, o);
  for (double c : {0.25, 3.0}) {
    std::vector<double> scaled = pr.lambdas;
    for (double& l : scaled) l *= c;
    SolverOptions oc = o;
    oc.kkt_tolerance = o.kkt_tolerance * c;
    const SolverResult r = solve_group_lasso(pr.x, Vector(c * pr.y), scaled, oc);
    CHECK((r.estimate.coefficients - c * base.estimate.coefficients).cwiseAbs().maxCoeff() <=
          10.0 * o.kkt_tolerance * std::max(1.0, c));
  }
}

TEST_CASE("singleton groups reduce to the Lasso") {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> gauss(0.0, 1.0);
  SolverOptions o;
  o.kkt_tolerance = 1e-11;
  o.max_iterations = 200000;
  for (int c = 0; c < 5; ++c) {
    const Matrix m = oracle::random_unit_columns(20, 30, rng);
    const BlockDictionary x = BlockDictionary::from_dense(m, GroupPartition::singletons(30));
    Vector y(20);
    for (Index i = 0; i < 20; ++i) y(i) = gauss(rng);
    const std::vector<double> lambdas(30, 0.3);
    const SolverResult r = solve_group_lasso(x, y, lambdas, o);
    std::vector<oracle::Vec> cols(30, oracle::Vec(20));
    for (Index j = 0; j < 30; ++j)
      for (Index i = 0; i < 20; ++i) cols[j][i] = m(i, j);
    const oracle::Vec ref =
        oracle::lasso_cd(cols, oracle::Vec(y.data(), y.data() + 20), oracle::Vec(30, 0.3), 1e-15, 1000000);
    for (Index j = 0; j < 30; ++j) CHECK(std::abs(r.estimate.coefficients(j) - ref[j]) < 1e-8);
  }
}

TEST_CASE("FISTA objective trace is recorded per iteration") {
  std::mt19937_64 rng(7);
  const Problem pr = random_problem(rng);
  const SolverResult r = solve_group_lasso(pr.x, pr.y, pr.lambdas);
  CHECK(r.objective_trace.size() == r.iterations);
  CHECK(r.objective_trace.back() == doctest::Approx(r.final_objective));
}

TEST_CASE("solver input validation") {
  const BlockDictionary x = dirac_basis(3);
  CHECK_GLASSO_ERROR(solve_group_lasso(x, Vector::Zero(2), std::vector<double>(3, 1.0)),
                     ErrorCode::dimension_mismatch);
  CHECK_GLASSO_ERROR(solve_group_lasso(x, Vector::Zero(3), std::vector<double>{1.0, 0.0, 1.0}),
                     ErrorCode::invalid_argument);
  SolverOptions o;
  o.max_iterations = 0;
  CHECK_GLASSO_ERROR(solve_group_lasso(x, Vector::Zero(3), std::vector<double>(3, 1.0), o),
                     ErrorCode::invalid_argument);
}

TEST_CASE("demixing: zero input and a single smooth atom") {
  const DemixGeometry geo{8, 8, 2, 4};
  const DemixResult zero = solve_demix(Vector::Zero(128), geo, 1.0, 2.0);
  CHECK(zero.result.converged);
  CHECK(zero.result.iterations == 1);
  CHECK(zero.smooth.norm() == 0.0);
  CHECK(zero.anomaly.norm() == 0.0);

  // One DCT atom across both frames, far above lambda1; lambda2 large.
  const BlockDictionary x = demix_dictionary(8, 8, 2, 4);
  Vector beta = Vector::Zero(256);
  beta(5) = 40.0;
  beta(64 + 5) = 30.0;
  const Vector y = x.apply(beta);
  SolverOptions o;
  o.kkt_tolerance = 1e-10;
  const DemixResult r = solve_demix(y, geo, 1.0, 100.0, o);
  CHECK(r.result.converged);
  CHECK(r.anomaly.norm() == 0.0);
  CHECK(r.result.estimate.support == IndexList{5});
  const std::vector<double> lambdas = LambdaSchedule::two_level(64, 16, 1.0, 100.0).per_group;
  const SolverResult f = solve_group_lasso(x, y, lambdas, o);
  CHECK((f.estimate.coefficients - r.result.estimate.coefficients).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("demixing trace is non-increasing and the sweep order does not matter") {
  SceneConfig c;
  c.side = 8;
  c.T = 2;
  c.s1 = 3;
  c.s2 = 2;
  c.alpha = 10.0;
  c.seed = 8;
  const SyntheticInstance inst = build_demix_scene(c);
  const DemixGeometry geo{8, 8, 2, 4};
  SolverOptions o;
  o.kkt_tolerance = 1e-9;
  const DemixResult a = solve_demix(inst.observations, geo, 2.0, 4.0, o);
  REQUIRE(a.result.converged);
  for (Index i = 1; i < a.result.objective_trace.size(); ++i)
    CHECK(a.result.objective_trace[i] <= a.result.objective_trace[i - 1]);
  CHECK(a.result.objective_trace.size() == 2 * a.result.iterations);
  o.anomaly_first = true;
  const DemixResult b = solve_demix(inst.observations, geo, 2.0, 4.0, o);
  REQUIRE(b.result.converged);
  CHECK(std::abs(a.result.final_objective - b.result.final_objective) < 1e-8);
  const std::vector<double> lambdas = LambdaSchedule::two_level(64, 16, 2.0, 4.0).per_group;
  CHECK(kkt_check(inst.dictionary, inst.observations, a.result.estimate.coefficients, lambdas, 1e-9)
            .satisfied);
}

TEST_CASE("support declaration with the epsilon_p rule") {
  const GroupPartition part = GroupPartition::contiguous(std::vector<Index>{2, 2, 2});
  const GroupSparseSignal truth =
      GroupSparseSignal::from_coefficients(vec({1.0, 0.0, 0.0, 0.0, 0.0, 2.0}), part);
  SupportMatch m = extract_group_support(truth, truth);
  CHECK(m.exact_match);
  CHECK(m.precision == 1.0);
  CHECK(m.recall == 1.0);

  m = extract_group_support(GroupSparseSignal::zero(part), truth);
  CHECK(m.recall == 0.0);
  CHECK(m.precision == 1.0);

  // Spurious group at 1e-9 relative to the largest truth norm is suppressed.
  GroupSparseSignal est =
      GroupSparseSignal::from_coefficients(vec({1.0, 0.0, 2e-9, 0.0, 0.0, 2.0}), part);
  CHECK(extract_group_support(est, truth).exact_match);
  est = GroupSparseSignal::from_coefficients(vec({1.0, 0.0, 1e-3, 0.0, 0.0, 2.0}), part);
  m = extract_group_support(est, truth);
  CHECK_FALSE(m.exact_match);
  CHECK(m.precision == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("lambda schedules") {
  const GroupPartition part = GroupPartition::contiguous(std::vector<Index>{4, 1});
  const LambdaSchedule t = LambdaSchedule::theorem1(part, 1.0, 0.5);
  CHECK(t.per_group[0] == doctest::Approx(12.0));
  CHECK(t.per_group[1] == doctest::Approx(6.0));
  const LambdaSchedule e = LambdaSchedule::experiment(part, 5.0);
  CHECK(e.per_group[0] == doctest::Approx(2.0));
  CHECK(e.observation_scale == doctest::Approx(0.2));
  CHECK(e.raw_weights()[0] == doctest::Approx(10.0));
  CHECK(parse_lambda_mode("theorem1") == LambdaMode::theorem1);
  CHECK_GLASSO_ERROR(parse_lambda_mode("bogus"), ErrorCode::invalid_argument);
  const DemixWeights w = demix_weights(LambdaMode::theorem1, 100, 8, 4, 1.0, 1.0, 0.0, 0.0);
  CHECK(w.lambda2 / w.lambda1 == 2.0);
  CHECK(w.lambda1 == doctest::Approx(4.0 * (1.0 + demix_epsilon(100, 8)) * std::sqrt(8.0)));
}
