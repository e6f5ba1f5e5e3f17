#pragma once

#include "tracediag/core/diagram.hpp"

#include <map>
#include <string>
#include <vector>

namespace tracediag {

/// Labels (1..n) at the head and tail of one edge.
struct LabelPair {
  int head = 0;
  int tail = 0;
  friend auto operator<=>(const LabelPair&, const LabelPair&) = default;
};

/// Edge-id -> (head, tail) labels.
struct Coloring {
  std::map<std::string, LabelPair> labels;

  /// Label carried by the given half-edge.
  int label(const HalfEdge& h) const;
  friend bool operator==(const Coloring&, const Coloring&) = default;
};

/// Open-leaf-id -> label (1..n). May be partial.
struct LeafColoring {
  std::map<std::string, int> labels;
  friend bool operator==(const LeafColoring&, const LeafColoring&) = default;
};

/// Permutation of {1..n} read off the ciliated slots of an internal vertex: slot i -> label.
/// Throws EvalError("inadmissible coloring at vertex ...") on repeated labels.
std::vector<int> vertex_permutation(const TraceDiagram& diagram, const Coloring& coloring, const std::string& vertex);

/// Sign of a permutation given as 1-based images (any distinct integers are ranked first).
int permutation_sign(const std::vector<int>& images);

}  // namespace tracediag
