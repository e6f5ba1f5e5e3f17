#include <gtest/gtest.h>

#include "support.hpp"
#include "tracediag/eval/engine.hpp"
#include "tracediag/library/builders.hpp"

using namespace tracediag;
using tracediag::testing::brute_matrix;
using tracediag::testing::brute_weight;
using tracediag::testing::int_matrix;

namespace {

MatrixBinding bind_a(int n, const Matrix& a) {
  MatrixBinding b{Dimension(n)};
  b.bind_matrix("A", a);
  return b;
}

}  // namespace

TEST(Eval, TraceLoop) {
  const auto b = bind_a(2, Matrix::from_rows({{1, 2}, {3, 4}}));
  EXPECT_EQ(eval::evaluate_closed(library::trace_loop(Dimension(2), {"A"}), b), Scalar(5));
  EXPECT_EQ(eval::evaluate_closed(library::trace_loop(Dimension(2), {"A", "A"}), b), Scalar(29));
  EXPECT_EQ(eval::evaluate_closed(library::trace_loop(Dimension(2), {}), b), Scalar(2));
}

TEST(Eval, DeterminantDiagramSmallCases) {
  // Brute force over both colorings of the identity: each contributes -1.
  EXPECT_EQ(eval::evaluate_closed(library::determinant_diagram(Dimension(2), "A"), bind_a(2, Matrix::identity(2))),
            Scalar(-2));
  const Scalar d3 = eval::evaluate_closed(library::determinant_diagram(Dimension(3), "A"),
                                          bind_a(3, Matrix::diagonal(std::vector<Scalar>{1, 2, 3})));
  EXPECT_EQ(d3, Scalar(-36));
  EXPECT_EQ(eval::evaluate_closed(library::determinant_diagram(Dimension(2), "A"),
                                  bind_a(2, Matrix::from_rows({{1, 1}, {1, 1}}))),
            Scalar(0));
}

TEST(Eval, ColoringsOfDeterminantDiagram) {
  const auto d = library::determinant_diagram(Dimension(2), "A");
  const auto colorings = eval::enumerate_colorings(d, {});
  // Two labels at each end of each of the two edges, distinct per vertex: 2 x 2 choices.
  EXPECT_EQ(colorings.size(), 4u);
  const auto b = bind_a(2, Matrix::identity(2));
  Scalar sum = 0;
  for (const auto& c : colorings) {
    EXPECT_NO_THROW(eval::check_admissible(d, c));
    sum += eval::signature(d, c) * eval::coefficient(d, c, b);
  }
  EXPECT_EQ(sum, Scalar(-2));
}

TEST(Eval, InadmissibleColoringIsRejected) {
  const auto d = library::determinant_diagram(Dimension(2), "A");
  Coloring c;
  c.labels["c1"] = {1, 1};
  c.labels["c2"] = {1, 2};
  EXPECT_THROW(eval::check_admissible(d, c), EvalError);
}

TEST(Eval, WeightNeedsTotalLeafColoring) {
  const auto d = library::strand(Dimension(2), {"A"});
  const auto b = bind_a(2, Matrix::from_rows({{1, 2}, {3, 4}}));
  EXPECT_THROW(eval::weight(d, LeafColoring{{{"in1", 1}}}, b), EvalError);
  // Entry (row = head label, column = tail label).
  EXPECT_EQ(eval::weight(d, LeafColoring{{{"in1", 1}, {"out1", 2}}}, b), Scalar(3));
}

TEST(Eval, StrandIsTheMatrix) {
  const Matrix a = Matrix::from_rows({{1, 2}, {3, 4}});
  const Matrix c = Matrix::from_rows({{0, -1}, {5, 2}});
  MatrixBinding b{Dimension(2)};
  b.bind_matrix("A", a).bind_matrix("C", c);
  EXPECT_EQ(eval::as_function_matrix(library::strand(Dimension(2), {"A"}), b), a);
  EXPECT_EQ(eval::as_function_matrix(library::strand(Dimension(2), {"A", "C"}), b), a * c);
}

TEST(Eval, ErrorsForWrongShape) {
  const auto b = bind_a(2, Matrix::identity(2));
  EXPECT_THROW(eval::evaluate_closed(library::strand(Dimension(2), {"A"}), b), EvalError);
  const auto unframed = library::strand(Dimension(2), {"A"}).with_framing(std::nullopt);
  EXPECT_THROW(eval::as_function_matrix(unframed, b), EvalError);
  EXPECT_THROW(eval::evaluate_fast_closed(library::determinant_diagram(Dimension(2), "A"), b), EvalError);
  EXPECT_THROW(eval::evaluate_closed(library::trace_loop(Dimension(2), {"B"}), b), BindingError);
  EXPECT_THROW(eval::evaluate_closed(library::trace_loop(Dimension(3), {"A"}), b), BindingError);
}

TEST(Eval, InternalDegreeErrorSurfaces) {
  const auto bad = library::epsilon_node(Dimension(3), 1, 2).with_framing(std::nullopt);
  const TraceDiagram d(Dimension(2), bad.vertices(), bad.edges(), Framing{{"in1"}, {"out1", "out2"}});
  EXPECT_THROW(eval::as_function_matrix(d, MatrixBinding(Dimension(2))), DiagramError);
}

TEST(Eval, BasisIndexRoundTrip) {
  for (std::size_t idx = 0; idx < 27; ++idx) {
    const auto labels = eval::basis_labels(idx, 3, 3);
    EXPECT_EQ(eval::basis_index(labels, 3), idx);
  }
  EXPECT_EQ(eval::basis_labels(5, 2, 3), (std::vector<int>{2, 3}));
}

TEST(Eval, MatchesBruteForceOnLibraryDiagrams) {
  std::mt19937_64 rng(7);
  for (int n : {2, 3}) {
    const Dimension dim(n);
    MatrixBinding b(dim);
    b.bind_matrix("A", int_matrix(rng, n));
    b.bind_matrix("B", int_matrix(rng, n));
    std::vector<TraceDiagram> framed{library::epsilon_node(dim, 1, n - 1), library::two_node_antisym(dim, 1),
                                     library::two_vertex(dim, 1, std::vector<std::vector<std::string>>(n - 1, {"A"})),
                                     library::permutation_diagram(dim, {1, 0})};
    for (const auto& d : framed) EXPECT_EQ(eval::as_function_matrix(d, b), brute_matrix(d, b));
    std::vector<TraceDiagram> closed{library::determinant_diagram(dim, "A"), library::det_sum_term(dim, 1, "A", "B"),
                                     library::char_coeff_diagram(dim, 1, "A")};
    for (const auto& d : closed) EXPECT_EQ(eval::evaluate_closed(d, b), brute_weight(d, b, {}));
  }
}

TEST(Eval, PruningAndThreadsDoNotChangeResults) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const Dimension dim(3);
    MatrixBinding b(dim);
    Matrix a = int_matrix(rng, 3, -1, 1);
    b.bind_matrix("A", a);
    const auto d = library::two_vertex(dim, 1, {{"A"}, {"A"}});
    eval::EvalOptions plain;
    plain.zero_pruning = false;
    eval::EvalOptions threaded;
    threaded.jobs = 4;
    const Matrix ref = eval::as_function_matrix(d, b);
    EXPECT_EQ(eval::as_function_matrix(d, b, plain), ref);
    EXPECT_EQ(eval::as_function_matrix(d, b, threaded), ref);
  }
}

TEST(Eval, FastPathAgreesOnLoopsAndPairings) {
  std::mt19937_64 rng(3);
  const Dimension dim(3);
  MatrixBinding b(dim);
  b.bind_matrix("A", int_matrix(rng, 3)).bind_matrix("B", int_matrix(rng, 3));
  b.bind_vector("u", Vector{1, -2, 3}).bind_vector("v", Vector{0, 5, Scalar(1, 2)});
  const auto d = DiagramBuilder(dim)
                     .loop("l1", {"A", "B"})
                     .loop("l2", {"B"})
                     .vector_leaf("p", "u")
                     .vector_leaf("q", "v")
                     .edge("e", {"p", 0}, {"q", 0}, {"A"})
                     .build();
  const Scalar expected = (b.matrix("A") * b.matrix("B")).trace() * b.matrix("B").trace() *
                          [&] {
                            // Edge tail at u, head at v: sum_ij v_i A_ij u_j.
                            Scalar s = 0;
                            for (int i = 0; i < 3; ++i)
                              for (int j = 0; j < 3; ++j) s += b.vector("v")[i] * b.matrix("A")(i, j) * b.vector("u")[j];
                            return s;
                          }();
  EXPECT_EQ(eval::evaluate_fast_closed(d, b), expected);
  EXPECT_EQ(eval::evaluate_closed(d, b), expected);
}

TEST(Eval, FormalSumIsLinear) {
  const Dimension dim(2);
  const auto b = bind_a(2, Matrix::from_rows({{1, 2}, {3, 4}}));
  FormalSum s(dim);
  s.add_term(2, library::trace_loop(dim, {"A"}));
  s.add_term(Scalar(-1, 2), library::trace_loop(dim, {"A", "A"}));
  EXPECT_EQ(eval::evaluate_closed(s, b), Scalar(10) - Scalar(29, 2));
}
