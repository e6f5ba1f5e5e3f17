#pragma once

// Test-only helpers: a brute-force evaluator written straight from the definitions, and small
// random generators for property tests.

#include "tracediag/core/binding.hpp"
#include "tracediag/core/diagram.hpp"
#include "tracediag/eval/engine.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <vector>

namespace tracediag::testing {

/// Sums sgn * coefficient over every assignment of (head, tail) labels to every edge, keeping the
/// assignments whose labels are distinct at each internal vertex and agree with `leaves` at leaves.
/// Unmarked edges act as the identity, so mismatched labels contribute zero.
inline Scalar brute_weight(const TraceDiagram& d, const MatrixBinding& b, const LeafColoring& leaves) {
  const int n = d.n();
  std::vector<const Edge*> edges;
  for (const auto& [id, e] : d.edges()) edges.push_back(&e);
  const std::size_t slots = edges.size() * 2;
  std::vector<int> lab(slots, 1);
  Scalar total = 0;
  while (true) {
    bool ok = true;
    Scalar coeff = 1;
    std::map<std::string, std::vector<int>> at_vertex;
    for (const auto& [id, v] : d.vertices()) {
      if (!v.is_leaf()) at_vertex[id] = std::vector<int>(v.degree, 0);
    }
    for (std::size_t i = 0; ok && i < edges.size(); ++i) {
      const Edge& e = *edges[i];
      const int head = lab[2 * i];
      const int tail = lab[2 * i + 1];
      coeff *= b.word_product(e.marking)(head - 1, tail - 1);
      for (auto [end, label] : {std::pair{e.tail, tail}, std::pair{e.head, head}}) {
        if (!end) continue;
        const Vertex& v = d.vertices().at(end->vertex);
        if (v.is_leaf()) {
          if (v.vector_label) {
            coeff *= b.vector(*v.vector_label)[label - 1];
          } else if (leaves.labels.at(end->vertex) != label) {
            ok = false;
          }
        } else {
          at_vertex[end->vertex][end->slot] = label;
        }
      }
    }
    int sign = 1;
    for (const auto& [id, perm] : at_vertex) {
      if (!ok) break;
      for (std::size_t x = 0; x < perm.size(); ++x) {
        for (std::size_t y = x + 1; y < perm.size(); ++y) {
          if (perm[x] == perm[y]) ok = false;
          if (perm[x] > perm[y]) sign = -sign;
        }
      }
    }
    if (ok) total += coeff * sign;
    std::size_t k = 0;
    while (k < slots && lab[k] == n) lab[k++] = 1;
    if (k == slots) break;
    ++lab[k];
  }
  return total;
}

/// Function matrix from brute_weight, same basis order as the engine.
inline Matrix brute_matrix(const TraceDiagram& d, const MatrixBinding& b) {
  const int n = d.n();
  const auto& f = *d.framing();
  std::size_t rows = 1, cols = 1;
  for (std::size_t i = 0; i < f.outputs.size(); ++i) rows *= n;
  for (std::size_t i = 0; i < f.inputs.size(); ++i) cols *= n;
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      LeafColoring g;
      const auto out = eval::basis_labels(r, f.outputs.size(), n);
      const auto in = eval::basis_labels(c, f.inputs.size(), n);
      for (std::size_t i = 0; i < out.size(); ++i) g.labels[f.outputs[i]] = out[i];
      for (std::size_t i = 0; i < in.size(); ++i) g.labels[f.inputs[i]] = in[i];
      m(r, c) = brute_weight(d, b, g);
    }
  }
  return m;
}

inline Matrix int_matrix(std::mt19937_64& rng, std::size_t n, long lo = -9, long hi = 9) {
  std::uniform_int_distribution<long> dist(lo, hi);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = dist(rng);
  return m;
}

/// Determinant by the permutation expansion; independent of the elimination oracle.
inline Scalar leibniz_det(const Matrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  Scalar total = 0;
  do {
    int sign = 1;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y)
        if (p[x] > p[y]) sign = -sign;
    Scalar term = sign;
    for (std::size_t i = 0; i < n; ++i) term *= a(i, p[i]);
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

}  // namespace tracediag::testing
