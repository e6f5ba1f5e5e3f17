#include "tracediag/core/coloring.hpp"

#include <set>

namespace tracediag {

int Coloring::label(const HalfEdge& h) const {
  auto it = labels.find(h.edge);
  if (it == labels.end()) throw EvalError("coloring has no labels for edge '" + h.edge + "'");
  return h.end == End::Head ? it->second.head : it->second.tail;
}

int permutation_sign(const std::vector<int>& images) {
  int inversions = 0;
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (images[i] > images[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

std::vector<int> vertex_permutation(const TraceDiagram& diagram, const Coloring& coloring, const std::string& vertex) {
  const auto it = diagram.vertices().find(vertex);
  if (it == diagram.vertices().end()) throw DiagramError("unknown vertex '" + vertex + "'");
  if (it->second.kind != VertexKind::Internal) throw DiagramError("vertex '" + vertex + "' is not internal");
  const int n = diagram.n();
  std::vector<int> images;
  std::set<int> seen;
  for (const auto& slot : diagram.ciliation(vertex)) {
    if (!slot) throw DiagramError("vertex '" + vertex + "' has an empty slot");
    const int l = coloring.label(*slot);
    if (l < 1 || l > n || !seen.insert(l).second) {
      throw EvalError("inadmissible coloring at vertex '" + vertex + "'");
    }
    images.push_back(l);
  }
  if (static_cast<int>(images.size()) != n) throw EvalError("inadmissible coloring at vertex '" + vertex + "'");
  return images;
}

}  // namespace tracediag
