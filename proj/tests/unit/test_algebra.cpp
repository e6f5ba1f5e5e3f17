#include <gtest/gtest.h>

#include "support.hpp"
#include "tracediag/algebra/algebra.hpp"
#include "tracediag/lab/random.hpp"
#include "tracediag/library/builders.hpp"

using namespace tracediag;
using tracediag::testing::int_matrix;

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return m;
}

MatrixBinding random_binding(std::mt19937_64& rng, int n) {
  MatrixBinding b{Dimension(n)};
  b.bind_matrix("A", int_matrix(rng, n)).bind_matrix("B", int_matrix(rng, n)).bind_matrix("C", int_matrix(rng, n));
  return b;
}

}  // namespace

TEST(Algebra, ComposeMultipliesMatrices) {
  std::mt19937_64 rng(1);
  const auto b = random_binding(rng, 3);
  const Dimension dim(3);
  const auto top = library::strand(dim, {"A"});
  const auto bottom = library::strand(dim, {"B", "C"});
  const auto c = algebra::compose(top, bottom);
  EXPECT_EQ(eval::as_function_matrix(c, b), b.matrix("A") * b.matrix("B") * b.matrix("C"));
  EXPECT_EQ(c.edges().size(), 1u);
}

TEST(Algebra, ComposeArityMismatchThrows) {
  const Dimension dim(2);
  EXPECT_THROW(algebra::compose(library::identity_strands(dim, 2), library::strand(dim, {"A"})), DiagramError);
}

TEST(Algebra, TensorIsKronecker) {
  std::mt19937_64 rng(2);
  const auto b = random_binding(rng, 2);
  const Dimension dim(2);
  const auto t = algebra::tensor(library::strand(dim, {"A"}), library::strand(dim, {"B"}));
  EXPECT_EQ(eval::as_function_matrix(t, b), kron(b.matrix("A"), b.matrix("B")));
  const auto e = algebra::tensor(algebra::empty_diagram(dim), library::strand(dim, {"A"}));
  EXPECT_EQ(eval::as_function_matrix(e, b), b.matrix("A"));
}

// Functoriality on random framed diagrams: matrix(top o bottom) = matrix(top) * matrix(bottom) and
// matrix(l (x) r) = matrix(l) (x) matrix(r).
TEST(Algebra, FunctorialityProperty) {
  for (std::uint64_t trial = 0; trial < 12; ++trial) {
    auto rng = lab::trial_rng(99, trial);
    const int n = 2 + static_cast<int>(trial % 2);
    const Dimension dim(n);
    MatrixBinding b(dim);
    b.bind_matrix("A", lab::random_int_matrix(rng, n, -3, 3)).bind_matrix("B", lab::random_int_matrix(rng, n, -3, 3));
    const std::size_t k = 1 + trial % 2;
    const auto bottom = lab::random_framed_diagram(rng, dim, k, {"A", "B"});
    const auto top = lab::random_framed_diagram(rng, dim, bottom.output_arity(), {"A", "B"});
    const Matrix mt = eval::as_function_matrix(top, b);
    const Matrix mb = eval::as_function_matrix(bottom, b);
    EXPECT_EQ(eval::as_function_matrix(algebra::compose(top, bottom), b), mt * mb) << "trial " << trial;
    EXPECT_EQ(eval::as_function_matrix(algebra::tensor(top, bottom), b), kron(mt, mb)) << "trial " << trial;
  }
}

TEST(Algebra, ReframeRejectsNonPartitions) {
  const Dimension dim(2);
  const auto s = library::strand(dim, {"A"});
  EXPECT_THROW(algebra::reframe(s, Framing{{"in1"}, {"in1"}}), DiagramError);
  EXPECT_THROW(algebra::reframe(s, Framing{{"in1"}, {}}), DiagramError);
  EXPECT_THROW(algebra::reframe(s, Framing{{"in1"}, {"nowhere"}}), DiagramError);
  EXPECT_NO_THROW(algebra::reframe(s, Framing{{"out1"}, {"in1"}}));
}

TEST(Algebra, ReversedFramingTransposes) {
  std::mt19937_64 rng(4);
  const auto b = random_binding(rng, 3);
  const auto s = library::strand(Dimension(3), {"A"});
  const auto r = algebra::reframe(s, Framing{{"out1"}, {"in1"}});
  EXPECT_EQ(eval::as_function_matrix(r, b), b.matrix("A").transpose());
}

TEST(Algebra, AllFramingsCount) {
  EXPECT_EQ(algebra::all_framings({}).size(), 1u);
  EXPECT_EQ(algebra::all_framings({"a"}).size(), 2u);
  EXPECT_EQ(algebra::all_framings({"a", "b"}).size(), 6u);
  // sum_k C(4,k) k! (4-k)! = 5 * 4!.
  EXPECT_EQ(algebra::all_framings({"a", "b", "c", "d"}).size(), 120u);
}

TEST(Algebra, CloseStrandTakesTrace) {
  std::mt19937_64 rng(5);
  const auto b = random_binding(rng, 3);
  const auto closed = algebra::close_strand(library::strand(Dimension(3), {"A", "B"}), 0, 0, {"C"});
  EXPECT_TRUE(closed.closed());
  EXPECT_EQ(eval::evaluate_closed(closed, b), (b.matrix("A") * b.matrix("B") * b.matrix("C")).trace());
}

TEST(Algebra, PartialTraceOfSwapIsIdentity) {
  const Dimension dim(3);
  const auto swap = library::permutation_diagram(dim, {1, 0});
  const auto closed = algebra::close_strand(swap, 1, 1);
  EXPECT_EQ(eval::as_function_matrix(closed, MatrixBinding(dim)), Matrix::identity(3));
  const auto id = algebra::close_strand(library::identity_strands(dim, 2), 1, 1);
  EXPECT_EQ(eval::as_function_matrix(id, MatrixBinding(dim)), Matrix::identity(3) * Scalar(3));
}

TEST(Algebra, JoinLeavesOrientation) {
  const Dimension dim(2);
  // Unmarked strands may be joined end to end in either direction: a cap on two inputs.
  const auto cap = algebra::join_leaves(library::identity_strands(dim, 2), "in1", "in2");
  EXPECT_EQ(cap.input_arity(), 0u);
  EXPECT_EQ(cap.output_arity(), 2u);
  EXPECT_EQ(eval::as_function_matrix(cap, MatrixBinding(dim)), Matrix(4, 1, {1, 0, 0, 1}));
  // Two marked strands meeting tail to tail cannot be fused.
  const auto marked = algebra::tensor(library::strand(dim, {"A"}), library::strand(dim, {"B"}));
  const auto leaves = marked.framing()->inputs;
  EXPECT_THROW(algebra::join_leaves(marked, leaves[0], leaves[1]), DiagramError);
  EXPECT_THROW(algebra::join_leaves(library::identity_strands(dim, 2), "missing", "in1"), DiagramError);
}

TEST(Algebra, CapLeafGivesMatrixVectorProduct) {
  const Dimension dim(3);
  MatrixBinding b(dim);
  b.bind_matrix("A", Matrix::from_rows({{1, 2, 0}, {0, 1, 3}, {4, 0, 1}}));
  b.bind_vector("u", Vector{1, -1, 2});
  const auto capped = algebra::cap_leaf(library::strand(dim, {"A"}), "in1", "u");
  const Matrix m = eval::as_function_matrix(capped, b);
  ASSERT_EQ(m.rows(), 3u);
  ASSERT_EQ(m.cols(), 1u);
  EXPECT_EQ(m(0, 0), Scalar(-1));
  EXPECT_EQ(m(1, 0), Scalar(5));
  EXPECT_EQ(m(2, 0), Scalar(6));
}

TEST(Algebra, IsRelationReportsResidual) {
  const Dimension dim(2);
  MatrixBinding b(dim);
  b.bind_matrix("A", Matrix::from_rows({{1, 2}, {3, 4}}));
  FormalSum zero(dim);
  zero.add_term(1, library::strand(dim, {"A"}));
  zero.add_term(-1, library::strand(dim, {"A"}));
  EXPECT_TRUE(algebra::is_relation(zero, b).holds);

  FormalSum nonzero(dim);
  nonzero.add_term(1, library::strand(dim, {"A"}));
  nonzero.add_term(-1, library::identity_strands(dim, 1));
  const auto check = algebra::is_relation(nonzero, b);
  EXPECT_FALSE(check.holds);
  ASSERT_TRUE(check.residual);
  // A - I = [[0,2],[3,3]]: the largest numerator is 3, first at (1,0).
  EXPECT_EQ(check.residual->value, Scalar(3));
  EXPECT_EQ(check.residual->row, 1u);
  EXPECT_EQ(check.residual->col, 0u);
  EXPECT_FALSE(check.residual->where.empty());
}

TEST(Algebra, AllBasesIgnoresFraming) {
  const Dimension dim(2);
  MatrixBinding b(dim);
  FormalSum rel(dim);
  rel.add_term(1, library::identity_strands(dim, 1));
  rel.add_term(-1, algebra::reframe(library::identity_strands(dim, 1), Framing{{"out1"}, {"in1"}}));
  EXPECT_TRUE(algebra::is_relation(rel, b, algebra::RelationMode::AllBases).holds);
}

TEST(Algebra, BinorHoldsUnderEveryFraming) {
  const Dimension dim(3);
  std::mt19937_64 rng(8);
  auto b = random_binding(rng, 3);
  const auto rel = algebra::compose(library::binor_relation(dim),
                                    FormalSum(algebra::tensor(library::strand(dim, {"A"}), library::strand(dim, {"B"}))));
  const auto leaves = rel.terms().front().diagram.open_leaves();
  ASSERT_EQ(leaves.size(), 4u);
  const auto framings = algebra::all_framings(leaves);
  ASSERT_EQ(framings.size(), 120u);
  for (const auto& f : framings) {
    EXPECT_TRUE(algebra::is_relation(algebra::reframe(rel, f), b).holds);
  }
}
