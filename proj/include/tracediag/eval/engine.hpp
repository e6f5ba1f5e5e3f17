#pragma once

#include "tracediag/core/binding.hpp"
#include "tracediag/core/coloring.hpp"
#include "tracediag/core/diagram.hpp"
#include "tracediag/core/formal_sum.hpp"
#include "tracediag/core/matrix.hpp"

#include <functional>
#include <vector>

namespace tracediag::eval {

struct EvalOptions {
  /// Skip branches whose partial coefficient is already zero. Results are identical either way.
  bool zero_pruning = true;
  /// Worker threads for function-matrix columns. Output does not depend on this.
  unsigned jobs = 1;
};

/// Admissible colorings extending `precoloring`, in lexicographic order over edges sorted by id
/// (head label varies slower than tail label within an edge).
std::vector<Coloring> enumerate_colorings(const TraceDiagram& diagram, const LeafColoring& precoloring);
void for_each_coloring(const TraceDiagram& diagram, const LeafColoring& precoloring,
                       const std::function<void(const Coloring&)>& visit);

/// Throws EvalError when the coloring violates vertex distinctness or unmarked-edge equality.
void check_admissible(const TraceDiagram& diagram, const Coloring& coloring);

/// Product of vertex permutation signs; +1 without internal vertices.
int signature(const TraceDiagram& diagram, const Coloring& coloring);

/// Product over edges of (word product)[head, tail], times vector entries at capped leaves.
Scalar coefficient(const TraceDiagram& diagram, const Coloring& coloring, const MatrixBinding& binding);

/// Sum of signature * coefficient over colorings extending a total open-leaf coloring.
Scalar weight(const TraceDiagram& diagram, const LeafColoring& leaf_coloring, const MatrixBinding& binding,
              const EvalOptions& options = {});

/// Value of a closed diagram. Throws EvalError("not closed") when open leaves remain.
Scalar evaluate_closed(const TraceDiagram& diagram, const MatrixBinding& binding, const EvalOptions& options = {});

/// Matrix of the diagram function: rows index outputs, columns index inputs, both mixed-radix base n with the
/// leftmost leaf most significant. Throws EvalError for unframed diagrams.
Matrix as_function_matrix(const TraceDiagram& diagram, const MatrixBinding& binding, const EvalOptions& options = {});

/// Closed diagram without internal vertices: product of loop traces and vector pairings.
Scalar evaluate_fast_closed(const TraceDiagram& diagram, const MatrixBinding& binding);

/// Linear extensions to formal sums.
Matrix as_function_matrix(const FormalSum& sum, const MatrixBinding& binding, const EvalOptions& options = {});
Scalar evaluate_closed(const FormalSum& sum, const MatrixBinding& binding, const EvalOptions& options = {});

/// Mixed-radix index of 1-based labels, leftmost most significant.
std::size_t basis_index(const std::vector<int>& labels, int n);
/// Inverse of basis_index.
std::vector<int> basis_labels(std::size_t index, std::size_t count, int n);

}  // namespace tracediag::eval
