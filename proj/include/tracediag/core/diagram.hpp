#pragma once

#include "tracediag/core/errors.hpp"

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tracediag {

/// Dimension n of the underlying vector space; also the degree of internal vertices.
class Dimension {
 public:
  explicit Dimension(int n) : n_(n) {
    if (n < 1) throw DiagramError("dimension must be >= 1, got " + std::to_string(n));
  }
  int value() const { return n_; }
  friend auto operator<=>(const Dimension&, const Dimension&) = default;

 private:
  int n_;
};

enum class VertexKind { Leaf, Internal };

struct Vertex {
  std::string id;
  VertexKind kind = VertexKind::Leaf;
  /// Number of ciliation slots. Leaves have one slot.
  int degree = 1;
  /// A leaf capped by a vector contributes the vector entry at its label and is not framed.
  std::optional<std::string> vector_label;

  bool is_leaf() const { return kind == VertexKind::Leaf; }
  bool is_open_leaf() const { return is_leaf() && !vector_label; }
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Attachment point of an edge: slot `slot` (0-based position after the cilium) at `vertex`.
struct EdgeEnd {
  std::string vertex;
  int slot = 0;
  friend auto operator<=>(const EdgeEnd&, const EdgeEnd&) = default;
};

enum class End { Tail, Head };

struct Edge {
  std::string id;
  std::optional<EdgeEnd> tail;
  std::optional<EdgeEnd> head;
  /// Matrix labels listed head-to-tail; the edge acts as their left-to-right product.
  std::vector<std::string> marking;

  bool free_loop() const { return !tail && !head; }
  bool marked() const { return !marking.empty(); }
  const std::optional<EdgeEnd>& end(End e) const { return e == End::Tail ? tail : head; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct HalfEdge {
  std::string edge;
  End end = End::Tail;
  friend auto operator<=>(const HalfEdge&, const HalfEdge&) = default;
};

/// Ordered open leaves (vertex ids) split into inputs and outputs.
struct Framing {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  friend bool operator==(const Framing&, const Framing&) = default;
};

/// Directed ciliated multigraph with matrix-marked edges. Immutable once built.
class TraceDiagram {
 public:
  TraceDiagram(Dimension dim, std::map<std::string, Vertex> vertices, std::map<std::string, Edge> edges,
               std::optional<Framing> framing);

  Dimension dimension() const { return dim_; }
  int n() const { return dim_.value(); }
  const std::map<std::string, Vertex>& vertices() const { return vertices_; }
  const std::map<std::string, Edge>& edges() const { return edges_; }
  const std::optional<Framing>& framing() const { return framing_; }

  bool framed() const { return framing_.has_value(); }
  /// No open leaves (vector-capped leaves are allowed).
  bool closed() const;
  bool has_internal_vertices() const;
  /// Framed, or closed (which acts as a 0 -> 0 function).
  bool function_like() const { return framed() || closed(); }
  std::size_t input_arity() const { return framing_ ? framing_->inputs.size() : 0; }
  std::size_t output_arity() const { return framing_ ? framing_->outputs.size() : 0; }

  /// Open leaf ids in canonical (sorted) order.
  std::vector<std::string> open_leaves() const;
  /// Half-edges occupying each slot of `vertex`, in slot order; nullopt for an empty slot.
  std::vector<std::optional<HalfEdge>> ciliation(const std::string& vertex) const;
  /// Half-edges attached at a given slot (more than one means the diagram is malformed).
  std::vector<HalfEdge> attached(const EdgeEnd& where) const;
  /// The edge end at a leaf vertex. Throws DiagramError if the leaf is not attached exactly once.
  HalfEdge leaf_half_edge(const std::string& leaf) const;

  std::set<std::string> matrix_labels() const;
  std::set<std::string> vector_labels() const;

  TraceDiagram with_framing(std::optional<Framing> framing) const;

  /// Structural equality on ids.
  friend bool operator==(const TraceDiagram& a, const TraceDiagram& b);

 private:
  Dimension dim_;
  std::map<std::string, Vertex> vertices_;
  std::map<std::string, Edge> edges_;
  std::optional<Framing> framing_;
  std::map<EdgeEnd, std::vector<HalfEdge>> incidence_;
};

/// Incremental construction of a TraceDiagram. No validation happens here; see validate().
class DiagramBuilder {
 public:
  explicit DiagramBuilder(Dimension dim) : dim_(dim) {}

  DiagramBuilder& leaf(const std::string& id);
  DiagramBuilder& vector_leaf(const std::string& id, const std::string& vector_label);
  /// Internal vertex with `degree` slots; defaults to n.
  DiagramBuilder& internal(const std::string& id, std::optional<int> degree = std::nullopt);
  DiagramBuilder& edge(const std::string& id, EdgeEnd tail, EdgeEnd head, std::vector<std::string> marking = {});
  DiagramBuilder& loop(const std::string& id, std::vector<std::string> marking = {});
  DiagramBuilder& frame(std::vector<std::string> inputs, std::vector<std::string> outputs);

  TraceDiagram build() const;

 private:
  Dimension dim_;
  std::map<std::string, Vertex> vertices_;
  std::map<std::string, Edge> edges_;
  std::optional<Framing> framing_;
};

/// Structural isomorphism respecting ciliation, markings, vector caps and framing order.
bool isomorphic(const TraceDiagram& a, const TraceDiagram& b);

}  // namespace tracediag
