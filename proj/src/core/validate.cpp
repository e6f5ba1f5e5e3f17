#include "tracediag/core/validate.hpp"

#include <algorithm>
#include <set>

namespace tracediag {

bool ValidationResult::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(), [kind](const Violation& v) { return v.kind == kind; });
}

ValidationResult validate(const TraceDiagram& d) {
  ValidationResult result;
  auto report = [&](ViolationKind k, std::string msg) { result.violations.push_back({k, std::move(msg)}); };

  for (const auto& [id, e] : d.edges()) {
    if (e.tail.has_value() != e.head.has_value()) {
      report(ViolationKind::HalfOpenEdge, "edge '" + id + "' has only one attached end");
    }
    for (const auto* end : {&e.tail, &e.head}) {
      if (!*end) continue;
      auto v = d.vertices().find((*end)->vertex);
      if (v == d.vertices().end()) {
        report(ViolationKind::UnboundSlot, "edge '" + id + "' refers to unknown vertex '" + (*end)->vertex + "'");
      } else if ((*end)->slot < 0 || (*end)->slot >= v->second.degree) {
        report(ViolationKind::UnboundSlot, "edge '" + id + "' uses slot " + std::to_string((*end)->slot) +
                                               " of vertex '" + v->first + "' which has degree " +
                                               std::to_string(v->second.degree));
      }
    }
  }

  for (const auto& [id, v] : d.vertices()) {
    if (v.is_leaf()) {
      if (v.degree != 1 || d.attached(EdgeEnd{id, 0}).size() != 1) {
        report(ViolationKind::LeafDegree, "leaf '" + id + "' must have exactly one incident edge end");
      }
      continue;
    }
    if (v.degree != d.n()) {
      report(ViolationKind::InternalDegree, "internal degree != n at vertex '" + id + "' (degree " +
                                                std::to_string(v.degree) + ", n = " + std::to_string(d.n()) + ")");
    }
    for (int s = 0; s < v.degree; ++s) {
      const auto hs = d.attached(EdgeEnd{id, s});
      if (hs.empty()) {
        report(ViolationKind::DanglingHalfEdge, "dangling half-edge: slot " + std::to_string(s) + " of vertex '" +
                                                    id + "' is empty");
      } else if (hs.size() > 1) {
        report(ViolationKind::SlotConflict, "slot " + std::to_string(s) + " of vertex '" + id + "' is used " +
                                                std::to_string(hs.size()) + " times");
      }
    }
  }

  if (d.framing()) {
    std::multiset<std::string> framed;
    for (const auto& l : d.framing()->inputs) framed.insert(l);
    for (const auto& l : d.framing()->outputs) framed.insert(l);
    const auto open = d.open_leaves();
    const std::multiset<std::string> expected(open.begin(), open.end());
    if (framed != expected) {
      report(ViolationKind::FramingNotPartition, "framing not a partition of the open leaves");
    }
  }
  return result;
}

void require_valid(const TraceDiagram& diagram) {
  const auto r = validate(diagram);
  if (r.ok()) return;
  std::string msg = "invalid diagram:";
  for (const auto& v : r.violations) msg += "\n  " + v.message;
  throw DiagramError(msg);
}

}  // namespace tracediag
