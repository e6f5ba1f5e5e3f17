#pragma once

#include "tracediag/core/diagram.hpp"

#include <string>
#include <vector>

namespace tracediag {

enum class ViolationKind {
  LeafDegree,          // leaf not attached to exactly one edge end
  InternalDegree,      // internal vertex degree != n
  DanglingHalfEdge,    // internal slot with nothing attached
  SlotConflict,        // two edge ends attached to one slot
  UnboundSlot,         // edge end names a missing vertex or an out-of-range slot
  HalfOpenEdge,        // exactly one end of an edge is attached
  FramingNotPartition  // framing does not partition the open leaves
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
};

/// Structural checks. Pure; diagnostics are the return value.
ValidationResult validate(const TraceDiagram& diagram);

/// Throws DiagramError listing every violation when the diagram is malformed.
void require_valid(const TraceDiagram& diagram);

}  // namespace tracediag
