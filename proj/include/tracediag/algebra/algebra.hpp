#pragma once

#include "tracediag/core/binding.hpp"
#include "tracediag/core/formal_sum.hpp"
#include "tracediag/eval/engine.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tracediag::algebra {

/// Framed 0 -> 0 diagram with nothing in it; the unit for tensor.
TraceDiagram empty_diagram(Dimension dim);

/// Glues bottom's i-th output to top's i-th input. Ids are prefixed "b." and "t.".
/// Fused edges concatenate their marking words; the framing becomes (bottom inputs, top outputs).
TraceDiagram compose(const TraceDiagram& top, const TraceDiagram& bottom);

/// Disjoint union, left placed before right. Ids are prefixed "l." and "r.".
TraceDiagram tensor(const TraceDiagram& left, const TraceDiagram& right);

/// Same diagram with a new framing; throws DiagramError unless it partitions the open leaves.
TraceDiagram reframe(const TraceDiagram& diagram, const Framing& framing);

/// Connects flow leaving at `out_leaf` back into `in_leaf` through `word` (listed head-to-tail).
/// Both leaves disappear and are dropped from the framing. Unmarked edges are re-oriented as
/// needed; oppositely oriented marked edges cannot be fused.
TraceDiagram join_leaves(const TraceDiagram& diagram, const std::string& out_leaf, const std::string& in_leaf,
                         const std::vector<std::string>& word = {});

/// Closes output position `out_pos` onto input position `in_pos` through a loop marked `word`.
TraceDiagram close_strand(const TraceDiagram& diagram, std::size_t out_pos, std::size_t in_pos,
                          const std::vector<std::string>& word = {});

/// Turns an open leaf into a vector-capped leaf and drops it from the framing.
TraceDiagram cap_leaf(const TraceDiagram& diagram, const std::string& leaf, const std::string& vector_label);

/// Bilinear extensions.
FormalSum compose(const FormalSum& top, const FormalSum& bottom);
FormalSum tensor(const FormalSum& left, const FormalSum& right);
FormalSum reframe(const FormalSum& sum, const Framing& framing);
FormalSum close_strand(const FormalSum& sum, std::size_t out_pos, std::size_t in_pos,
                       const std::vector<std::string>& word = {});

FormalSum cap_leaf(const FormalSum& sum, const std::string& leaf, const std::string& vector_label);

/// Every (ordered inputs, ordered outputs) split of the given leaves.
std::vector<Framing> all_framings(const std::vector<std::string>& leaves);

enum class RelationMode {
  ExactOnBinding,  // function matrix of the sum under the binding
  AllBases         // weights of every total leaf coloring, independent of framing
};

struct Residual {
  std::size_t row = 0;
  std::size_t col = 0;
  Scalar value;
  /// Human-readable location (basis indices or leaf coloring).
  std::string where;
};

struct RelationCheck {
  bool holds = false;
  std::optional<Residual> residual;
};

/// Matrix of a single term: the function matrix when framed, 1x1 value when closed and unframed.
Matrix term_matrix(const TraceDiagram& diagram, const MatrixBinding& binding, const eval::EvalOptions& options = {});
Matrix sum_matrix(const FormalSum& sum, const MatrixBinding& binding, const eval::EvalOptions& options = {});

/// Whether the formal sum evaluates to zero. The residual is the nonzero entry with the largest
/// absolute numerator.
RelationCheck is_relation(const FormalSum& sum, const MatrixBinding& binding,
                          RelationMode mode = RelationMode::ExactOnBinding, const eval::EvalOptions& options = {});

/// Residual helper shared with the verification drivers; nullopt when `m` is zero.
std::optional<Residual> largest_entry(const Matrix& m);

}  // namespace tracediag::algebra
