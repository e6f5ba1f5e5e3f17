#include <gtest/gtest.h>

#include "support.hpp"
#include "tracediag/algebra/algebra.hpp"
#include "tracediag/library/builders.hpp"

using namespace tracediag;
using tracediag::testing::brute_matrix;
using tracediag::testing::int_matrix;
using tracediag::testing::leibniz_det;

namespace {

long fact(long n) { return n <= 1 ? 1 : n * fact(n - 1); }

Scalar det_constant(int n) { return Scalar((n / 2) % 2 == 0 ? 1 : -1) * Scalar(fact(n)); }

/// Permutation matrix on (C^n)^{(x)k} sending e_{i_1..i_k} to the tensor with factor i_j in position sigma[j].
Matrix permutation_matrix(int n, const std::vector<int>& sigma) {
  const std::size_t k = sigma.size();
  std::size_t size = 1;
  for (std::size_t i = 0; i < k; ++i) size *= n;
  Matrix m(size, size);
  for (std::size_t col = 0; col < size; ++col) {
    const auto in = eval::basis_labels(col, k, n);
    std::vector<int> out(k);
    for (std::size_t j = 0; j < k; ++j) out[sigma[j]] = in[j];
    m(eval::basis_index(out, n), col) = 1;
  }
  return m;
}

}  // namespace

TEST(Library, PermutationsAreLexicographic) {
  const auto p = library::permutations(3);
  ASSERT_EQ(p.size(), 6u);
  EXPECT_EQ(p.front(), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(p.back(), (std::vector<int>{2, 1, 0}));
  EXPECT_EQ(library::permutations(0).size(), 1u);
}

TEST(Library, PermutationDiagramsMatchPermutationMatrices) {
  for (int n : {2, 3}) {
    const Dimension dim(n);
    for (const auto& sigma : library::permutations(3)) {
      EXPECT_EQ(eval::as_function_matrix(library::permutation_diagram(dim, sigma), MatrixBinding(dim)),
                permutation_matrix(n, sigma));
    }
  }
}

TEST(Library, PermutationCompositionIsAGroupProduct) {
  const Dimension dim(2);
  const MatrixBinding b(dim);
  for (const auto& s : library::permutations(3)) {
    for (const auto& t : library::permutations(3)) {
      // Apply t first, then s.
      std::vector<int> st(3);
      for (int i = 0; i < 3; ++i) st[i] = s[t[i]];
      const auto composed = algebra::compose(library::permutation_diagram(dim, s), library::permutation_diagram(dim, t));
      EXPECT_EQ(eval::as_function_matrix(composed, b), permutation_matrix(2, st));
    }
  }
}

TEST(Library, AntisymmetrizerActsOnTwoStrands) {
  const Dimension dim(2);
  const Matrix m = eval::as_function_matrix(library::antisymmetrizer(dim, 2), MatrixBinding(dim));
  // e1 (x) e2 -> e1 (x) e2 - e2 (x) e1.
  EXPECT_EQ(m(1, 1), Scalar(1));
  EXPECT_EQ(m(2, 1), Scalar(-1));
  EXPECT_EQ(m(0, 0), Scalar(0));
  EXPECT_EQ(m(3, 3), Scalar(0));
}

TEST(Library, AntisymmetrizerVanishesPastDimension) {
  for (int n : {1, 2, 3}) {
    const Dimension dim(n);
    EXPECT_TRUE(eval::as_function_matrix(library::antisymmetrizer(dim, n + 1), MatrixBinding(dim)).is_zero()) << n;
  }
}

TEST(Library, AntisymmetrizerSquaresToFactorialMultiple) {
  for (std::size_t k : {1u, 2u, 3u}) {
    const Dimension dim(3);
    const Matrix m = eval::as_function_matrix(library::antisymmetrizer(dim, k), MatrixBinding(dim));
    EXPECT_EQ(m * m, m * Scalar(fact(static_cast<long>(k)))) << k;
  }
}

TEST(Library, EpsilonNodeIsTheLeviCivitaSymbol) {
  const Dimension dim(3);
  const MatrixBinding b(dim);
  const Matrix m = eval::as_function_matrix(library::epsilon_node(dim, 3, 0), b);
  ASSERT_EQ(m.rows(), 1u);
  ASSERT_EQ(m.cols(), 27u);
  for (std::size_t c = 0; c < 27; ++c) {
    const auto l = eval::basis_labels(c, 3, 3);
    const bool distinct = l[0] != l[1] && l[1] != l[2] && l[0] != l[2];
    const Scalar expected = distinct ? Scalar(permutation_sign(l)) : Scalar(0);
    EXPECT_EQ(m(0, c), expected);
  }
  EXPECT_EQ(eval::as_function_matrix(library::epsilon_node(dim, 1, 2), b), brute_matrix(library::epsilon_node(dim, 1, 2), b));
}

TEST(Library, DeterminantDiagramAgainstLeibniz) {
  std::mt19937_64 rng(21);
  for (int n : {1, 2, 3, 4}) {
    for (int t = 0; t < 3; ++t) {
      const Dimension dim(n);
      MatrixBinding b(dim);
      const Matrix a = int_matrix(rng, n, -4, 4);
      b.bind_matrix("A", a);
      EXPECT_EQ(eval::evaluate_closed(library::determinant_diagram(dim, "A"), b), det_constant(n) * leibniz_det(a))
          << "n=" << n;
    }
  }
}

TEST(Library, SingularMatrixGivesZero) {
  const Dimension dim(3);
  MatrixBinding b(dim);
  b.bind_matrix("A", Matrix::from_rows({{1, 2, 3}, {2, 4, 6}, {0, 1, 5}}));
  EXPECT_EQ(eval::evaluate_closed(library::determinant_diagram(dim, "A"), b), Scalar(0));
}

// Two vertices sharing n-k unmarked edges equal (-1)^floor(n/2) (n-k)! times the antisymmetrizer on k strands.
TEST(Library, TwoNodeAntisymmetrizer) {
  for (int n : {2, 3, 4}) {
    const Dimension dim(n);
    const MatrixBinding b(dim);
    const Scalar sign = (n / 2) % 2 == 0 ? 1 : -1;
    for (int k = 0; k <= n; ++k) {
      const Matrix lhs = eval::as_function_matrix(library::two_node_antisym(dim, k), b) * sign;
      const Matrix rhs = eval::as_function_matrix(library::antisymmetrizer(dim, k), b) * Scalar(fact(n - k));
      EXPECT_EQ(lhs, rhs) << "n=" << n << " k=" << k;
    }
  }
}

TEST(Library, CharCoeffCiliationVariantHasSameMagnitude) {
  const Dimension dim(3);
  MatrixBinding b(dim);
  b.bind_matrix("A", Matrix::from_rows({{2, 1, 0}, {0, -1, 3}, {1, 1, 1}}));
  for (int i = 0; i <= 3; ++i) {
    const auto d = library::char_coeff_diagram(dim, i, "A");
    // Reverse the ciliation at the top vertex.
    std::map<std::string, Vertex> vs = d.vertices();
    std::map<std::string, Edge> es = d.edges();
    for (auto& [id, e] : es) {
      if (e.head && e.head->vertex == "vt") e.head->slot = 2 - e.head->slot;
      if (e.tail && e.tail->vertex == "vt") e.tail->slot = 2 - e.tail->slot;
    }
    const TraceDiagram flipped(dim, vs, es, std::nullopt);
    const Scalar v = eval::evaluate_closed(d, b);
    const Scalar w = eval::evaluate_closed(flipped, b);
    EXPECT_EQ(abs(v), abs(w)) << i;
  }
}

TEST(Library, ChDiagramForOneByOne) {
  // m = 1: e1 = in1, antisymmetrizer on two strands with the second closed through A: tr(A) I - A.
  const Dimension dim(3);
  MatrixBinding b(dim);
  const Matrix a = Matrix::from_rows({{1, 2, 0}, {0, 3, 1}, {4, 0, 2}});
  b.bind_matrix("A", a);
  const Matrix m = eval::as_function_matrix(library::ch_diagram(dim, {"A"}), b);
  EXPECT_EQ(m, Matrix::identity(3) * a.trace() - a);
}

TEST(Library, ChDiagramVanishesAtDimension) {
  std::mt19937_64 rng(31);
  for (int n : {1, 2, 3}) {
    const Dimension dim(n);
    MatrixBinding b(dim);
    b.bind_matrix("A", int_matrix(rng, n));
    const std::vector<std::string> labels(n, "A");
    EXPECT_TRUE(eval::as_function_matrix(library::ch_diagram(dim, labels), b).is_zero()) << n;
  }
}

TEST(Library, PfaffianDiagramForTwoByTwo) {
  const Dimension dim(2);
  for (int a : {1, 2, 3}) {
    MatrixBinding b(dim);
    b.bind_matrix("A", Matrix::from_rows({{0, a}, {-a, 0}}));
    // One arc from slot 0 to slot 1: sum over distinct labels of sgn * A[head, tail].
    EXPECT_EQ(eval::evaluate_closed(library::pfaffian_diagram(dim, "A"), b), Scalar(-2 * a));
  }
  EXPECT_THROW(library::pfaffian_diagram(Dimension(3), "A"), DiagramError);
}

TEST(Library, VectorDiagramsNeedThreeDimensions) {
  EXPECT_THROW(library::cross_product(Dimension(2), "u", "v"), DiagramError);
  EXPECT_THROW(library::binor_lhs(Dimension(4)), DiagramError);
  EXPECT_THROW(library::fricke_diagrams(Dimension(3), "A", "B", "C"), DiagramError);
}

TEST(Library, CrossProductMatchesComponents) {
  const Dimension dim(3);
  MatrixBinding b(dim);
  b.bind_vector("u", Vector{1, 2, 3}).bind_vector("v", Vector{-1, 0, 4});
  const Matrix m = eval::as_function_matrix(library::cross_product(dim, "u", "v"), b);
  // u x v = (2*4 - 3*0, 3*(-1) - 1*4, 1*0 - 2*(-1)).
  EXPECT_EQ(m(0, 0), Scalar(8));
  EXPECT_EQ(m(1, 0), Scalar(-7));
  EXPECT_EQ(m(2, 0), Scalar(2));
  EXPECT_EQ(eval::evaluate_closed(library::dot_product(dim, "u", "v"), b), Scalar(11));
}

TEST(Library, BuiltinRegistry) {
  const Dimension dim(3);
  EXPECT_EQ(library::builtin("det(A)", dim).terms().size(), 1u);
  EXPECT_EQ(library::builtin("builtin:antisym(3)", dim).terms().size(), 6u);
  EXPECT_EQ(library::builtin("trace(A,B)", dim).terms().front().diagram.edges().size(), 1u);
  EXPECT_THROW(library::builtin("nosuch(A)", dim), DiagramError);
  EXPECT_THROW(library::builtin("antisym(x)", dim), DiagramError);
  EXPECT_THROW(library::builtin("det(", dim), DiagramError);
  EXPECT_FALSE(library::builtin_names().empty());
}
