#include <gtest/gtest.h>

#include "support.hpp"
#include "tracediag/lab/oracles.hpp"
#include "tracediag/lab/random.hpp"
#include "tracediag/lab/verify.hpp"
#include "tracediag/library/builders.hpp"

using namespace tracediag;
using tracediag::testing::leibniz_det;

namespace {

std::vector<Scalar> ints(std::initializer_list<long> xs) {
  std::vector<Scalar> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST(Oracles, CharpolyExamples) {
  EXPECT_EQ(lab::charpoly_oracle(Matrix::identity(3)), ints({1, -3, 3, -1}));
  EXPECT_EQ(lab::charpoly_oracle(Matrix::from_rows({{1, 2}, {3, 4}})), ints({-2, -5, 1}));
  EXPECT_EQ(lab::charpoly_oracle(Matrix::from_rows({{0, 2}, {1, 5}})), ints({-2, -5, 1}));
}

TEST(Oracles, CharpolyAgreesWithDeterminantAtPoints) {
  auto rng = lab::trial_rng(5, 0);
  for (int t = 0; t < 3; ++t) {
    const Matrix a = lab::random_rational_matrix(rng, 4);
    const auto c = lab::charpoly_oracle(a);
    for (long x : {-2, -1, 0, 1, 3}) {
      const Matrix shifted = a - Matrix::identity(4) * Scalar(x);
      EXPECT_EQ(lab::polynomial_value(c, Scalar(x)), leibniz_det(shifted));
      EXPECT_EQ(lab::bareiss_determinant(shifted), leibniz_det(shifted));
    }
  }
}

TEST(Oracles, BareissHandlesZeroPivots) {
  EXPECT_EQ(lab::bareiss_determinant(Matrix::from_rows({{0, 1}, {1, 0}})), Scalar(-1));
  EXPECT_EQ(lab::bareiss_determinant(Matrix::from_rows({{0, 0}, {1, 0}})), Scalar(0));
  EXPECT_EQ(lab::bareiss_determinant(Matrix::from_rows({{0, 2, 1}, {0, 0, 3}, {4, 1, 1}})), Scalar(24));
}

TEST(Oracles, TwoByTwoDeterminantFromTraces) {
  auto rng = lab::trial_rng(6, 0);
  for (int t = 0; t < 5; ++t) {
    const Matrix a = lab::random_rational_matrix(rng, 2);
    EXPECT_EQ(lab::bareiss_determinant(a), (a.trace() * a.trace() - (a * a).trace()) / 2);
  }
}

TEST(Oracles, CayleyHamiltonPolynomialVanishes) {
  auto rng = lab::trial_rng(7, 0);
  for (int n : {1, 2, 3, 4}) {
    const Matrix a = lab::random_int_matrix(rng, n);
    EXPECT_TRUE(lab::cayley_hamilton_polynomial(a, n).is_zero()) << n;
    EXPECT_TRUE(lab::matrix_polynomial(lab::charpoly_oracle(a), a).is_zero()) << n;
  }
}

TEST(Oracles, PfaffianValues) {
  EXPECT_EQ(lab::pfaffian_oracle(Matrix::from_rows({{0, 3}, {-3, 0}})), Scalar(3));
  // a12 a34 - a13 a24 + a14 a23.
  const Matrix a = Matrix::from_rows({{0, 1, 2, 3}, {-1, 0, 4, 5}, {-2, -4, 0, 6}, {-3, -5, -6, 0}});
  EXPECT_EQ(lab::pfaffian_oracle(a), Scalar(1 * 6 - 2 * 5 + 3 * 4));
  EXPECT_THROW(lab::pfaffian_oracle(Matrix(3, 3)), std::exception);
  auto rng = lab::trial_rng(8, 0);
  for (int t = 0; t < 4; ++t) {
    const Matrix s = lab::random_skew_matrix(rng, 4);
    const Scalar pf = lab::pfaffian_oracle(s);
    EXPECT_EQ(pf * pf, leibniz_det(s));
  }
}

TEST(Oracles, VectorProducts) {
  EXPECT_EQ(lab::cross3(Vector{1, 0, 0}, Vector{0, 1, 0}), (Vector{0, 0, 1}));
  EXPECT_EQ(lab::dot(Vector{1, 2, 3}, Vector{4, 5, 6}), Scalar(32));
}

TEST(Polarize, SquareGivesSymmetricProduct) {
  const Matrix a1 = Matrix::from_rows({{1, 2}, {0, 1}});
  const Matrix a2 = Matrix::from_rows({{0, 1}, {3, -1}});
  const auto square = [](const Matrix& m) { return m * m; };
  EXPECT_EQ(lab::polarize(square, 2, {a1, a2}), (a1 * a2 + a2 * a1) * Scalar(1, 2));
  EXPECT_EQ(lab::polarize(square, 2, {a1, a1}), square(a1));
}

TEST(Polarize, TraceTimesMatrix) {
  const Matrix a1 = Matrix::from_rows({{1, 2}, {0, 1}});
  const Matrix a2 = Matrix::from_rows({{0, 1}, {3, -1}});
  const auto tau = [](const Matrix& m) { return m * m.trace(); };
  EXPECT_EQ(lab::polarize(tau, 2, {a1, a2}), (a2 * a1.trace() + a1 * a2.trace()) * Scalar(1, 2));
}

TEST(Polarize, HomogeneityDetectsMixedDegree) {
  const Matrix a = Matrix::from_rows({{1, 2}, {0, 1}});
  EXPECT_TRUE(lab::homogeneous_of_degree([](const Matrix& m) { return m * m; }, 2, a));
  EXPECT_FALSE(lab::homogeneous_of_degree([](const Matrix& m) { return m * m + m; }, 2, a));
}

TEST(Checks, CharpolyDiagrammaticMatchesOracle) {
  auto rng = lab::trial_rng(9, 0);
  for (int n : {1, 2, 3}) {
    const Matrix a = lab::random_int_matrix(rng, n);
    EXPECT_EQ(lab::charpoly_diagrammatic(a), lab::charpoly_oracle(a)) << n;
  }
}

TEST(Checks, SymmetrizerSumSmallK) {
  MatrixBinding b(Dimension(2));
  b.bind_matrix("A", Matrix::from_rows({{1, 2}, {3, 4}}));
  for (int k : {0, 1, 2}) EXPECT_TRUE(lab::symmetrizer_sum_check(k, b)) << k;
}

TEST(Checks, DetSumSpecialCases) {
  MatrixBinding b(Dimension(3));
  const Matrix a = Matrix::from_rows({{1, 2, 0}, {-1, 3, 1}, {2, 0, 1}});
  b.bind_matrix("A", a).bind_matrix("Z", Matrix(3, 3));
  EXPECT_TRUE(lab::det_sum_check(b, "A", "Z"));
  EXPECT_TRUE(lab::det_sum_check(b, "A", "A"));
  EXPECT_TRUE(lab::det_sum_check(b, "Z", "A"));
}

TEST(Checks, MultiplicityOnDeterminantDiagram) {
  MatrixBinding b(Dimension(3));
  b.bind_matrix("A", Matrix::from_rows({{1, 2, 0}, {-1, 3, 1}, {2, 0, 1}}));
  EXPECT_FALSE(lab::multiplicity_check(library::determinant_diagram(Dimension(3), "A"), "vb", "vt", b));
  EXPECT_FALSE(lab::multiplicity_check(library::two_node_antisym(Dimension(3), 1), "vb", "vt", b));
}

TEST(Reports, FailedTrialBecomesWitness) {
  std::vector<lab::TrialOutcome> outcomes(3);
  outcomes[1].ok = false;
  outcomes[1].binding = "A=[[1]]";
  outcomes[1].residual = "(0,0) = 1";
  const auto r = lab::merge_trials("x", 1, 42, outcomes);
  EXPECT_EQ(r.status, lab::Status::Failed);
  ASSERT_EQ(r.witnesses.size(), 1u);
  EXPECT_EQ(r.witnesses[0].seed, 42u);
  EXPECT_EQ(r.witnesses[0].trial, 1u);
  EXPECT_EQ(r.witnesses[0].binding, "A=[[1]]");
  EXPECT_TRUE(lab::merge_trials("x", 1, 42, std::vector<lab::TrialOutcome>(2)).ok());
  EXPECT_EQ(lab::merge_trials("x", 1, 42, {}).status, lab::Status::Inconclusive);
}

TEST(Reports, InlineForms) {
  EXPECT_EQ(lab::inline_matrix(Matrix::from_rows({{1, 2}, {3, 4}})), "[[1,2],[3,4]]");
  EXPECT_EQ(lab::inline_vector(Vector{Scalar(1, 2), -3}), "[1/2,-3]");
}

TEST(Drivers, EveryIdentityPassesAtItsDefaultDimension) {
  for (const auto& info : lab::identities()) {
    lab::TrialConfig cfg;
    cfg.dim = info.default_dim;
    cfg.trials = 2;
    cfg.seed = 17;
    const auto r = lab::run_identity(info.name, cfg);
    EXPECT_TRUE(r.ok()) << info.name;
    EXPECT_EQ(r.identity, info.name);
  }
  EXPECT_THROW(lab::run_identity("no-such-identity", {}), std::invalid_argument);
}

TEST(Drivers, WrongDimensionIsRejected) {
  lab::TrialConfig cfg;
  cfg.dim = 2;
  cfg.trials = 1;
  EXPECT_THROW(lab::verify_binor(cfg), std::invalid_argument);
  EXPECT_THROW(lab::verify_vector(cfg), std::invalid_argument);
  cfg.dim = 3;
  EXPECT_THROW(lab::verify_fricke(cfg), std::invalid_argument);
}

TEST(Drivers, ResultsDoNotDependOnJobs) {
  lab::TrialConfig one;
  one.dim = 3;
  one.trials = 6;
  one.seed = 123;
  lab::TrialConfig many = one;
  many.jobs = 4;
  for (const char* name : {"trace", "det-diagram", "charpoly"}) {
    const auto a = lab::run_identity(name, one);
    const auto b = lab::run_identity(name, many);
    ASSERT_EQ(a.outcomes.size(), b.outcomes.size());
    for (std::size_t i = 0; i < a.outcomes.size(); ++i) {
      EXPECT_EQ(a.outcomes[i].binding, b.outcomes[i].binding);
      EXPECT_EQ(a.outcomes[i].ok, b.outcomes[i].ok);
    }
    EXPECT_EQ(a.notes, b.notes);
  }
}

TEST(Drivers, SameSeedSameSamples) {
  lab::TrialConfig cfg;
  cfg.dim = 2;
  cfg.trials = 3;
  cfg.seed = 5;
  const auto a = lab::verify_trace(cfg);
  const auto b = lab::verify_trace(cfg);
  for (std::size_t i = 0; i < a.outcomes.size(); ++i) EXPECT_EQ(a.outcomes[i].binding, b.outcomes[i].binding);
  cfg.seed = 6;
  const auto c = lab::verify_trace(cfg);
  EXPECT_NE(a.outcomes[0].binding, c.outcomes[0].binding);
}

TEST(Drivers, PolarizationConstant) {
  lab::TrialConfig cfg;
  cfg.dim = 2;
  cfg.trials = 3;
  const auto r = lab::polarization_check(cfg);
  EXPECT_TRUE(r.ok());
  ASSERT_TRUE(r.constant);
  EXPECT_EQ(*r.constant, Scalar(1, 2));
}

TEST(Drivers, PfaffianScanIsConsistent) {
  lab::TrialConfig cfg;
  cfg.dim = 2;
  cfg.trials = 4;
  const auto s = lab::pfaffian_scan(cfg);
  EXPECT_TRUE(s.consistent);
  ASSERT_TRUE(s.constant);
  EXPECT_EQ(*s.constant, Scalar(-2));
  for (const auto& p : s.samples) EXPECT_NE(p.pfaffian, 0);
}
