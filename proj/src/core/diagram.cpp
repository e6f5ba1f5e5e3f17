#include "tracediag/core/diagram.hpp"

#include <algorithm>
#include <functional>

namespace tracediag {

TraceDiagram::TraceDiagram(Dimension dim, std::map<std::string, Vertex> vertices, std::map<std::string, Edge> edges,
                           std::optional<Framing> framing)
    : dim_(dim), vertices_(std::move(vertices)), edges_(std::move(edges)), framing_(std::move(framing)) {
  for (const auto& [id, e] : edges_) {
    if (e.tail) incidence_[*e.tail].push_back({id, End::Tail});
    if (e.head) incidence_[*e.head].push_back({id, End::Head});
  }
}

bool TraceDiagram::closed() const {
  return std::none_of(vertices_.begin(), vertices_.end(), [](const auto& kv) { return kv.second.is_open_leaf(); });
}

bool TraceDiagram::has_internal_vertices() const {
  return std::any_of(vertices_.begin(), vertices_.end(),
                     [](const auto& kv) { return kv.second.kind == VertexKind::Internal; });
}

std::vector<std::string> TraceDiagram::open_leaves() const {
  std::vector<std::string> out;
  for (const auto& [id, v] : vertices_) {
    if (v.is_open_leaf()) out.push_back(id);
  }
  return out;
}

std::vector<std::optional<HalfEdge>> TraceDiagram::ciliation(const std::string& vertex) const {
  auto it = vertices_.find(vertex);
  if (it == vertices_.end()) throw DiagramError("unknown vertex '" + vertex + "'");
  std::vector<std::optional<HalfEdge>> slots(static_cast<std::size_t>(it->second.degree));
  for (int s = 0; s < it->second.degree; ++s) {
    auto found = incidence_.find(EdgeEnd{vertex, s});
    if (found != incidence_.end() && !found->second.empty()) slots[static_cast<std::size_t>(s)] = found->second.front();
  }
  return slots;
}

std::vector<HalfEdge> TraceDiagram::attached(const EdgeEnd& where) const {
  auto it = incidence_.find(where);
  return it == incidence_.end() ? std::vector<HalfEdge>{} : it->second;
}

HalfEdge TraceDiagram::leaf_half_edge(const std::string& leaf) const {
  auto hs = attached(EdgeEnd{leaf, 0});
  if (hs.size() != 1) throw DiagramError("leaf '" + leaf + "' is not attached to exactly one edge end");
  return hs.front();
}

std::set<std::string> TraceDiagram::matrix_labels() const {
  std::set<std::string> labels;
  for (const auto& [id, e] : edges_) labels.insert(e.marking.begin(), e.marking.end());
  return labels;
}

std::set<std::string> TraceDiagram::vector_labels() const {
  std::set<std::string> labels;
  for (const auto& [id, v] : vertices_) {
    if (v.vector_label) labels.insert(*v.vector_label);
  }
  return labels;
}

TraceDiagram TraceDiagram::with_framing(std::optional<Framing> framing) const {
  return TraceDiagram(dim_, vertices_, edges_, std::move(framing));
}

bool operator==(const TraceDiagram& a, const TraceDiagram& b) {
  return a.dim_ == b.dim_ && a.vertices_ == b.vertices_ && a.edges_ == b.edges_ && a.framing_ == b.framing_;
}

DiagramBuilder& DiagramBuilder::leaf(const std::string& id) {
  vertices_[id] = Vertex{id, VertexKind::Leaf, 1, std::nullopt};
  return *this;
}

DiagramBuilder& DiagramBuilder::vector_leaf(const std::string& id, const std::string& vector_label) {
  vertices_[id] = Vertex{id, VertexKind::Leaf, 1, vector_label};
  return *this;
}

DiagramBuilder& DiagramBuilder::internal(const std::string& id, std::optional<int> degree) {
  vertices_[id] = Vertex{id, VertexKind::Internal, degree.value_or(dim_.value()), std::nullopt};
  return *this;
}

DiagramBuilder& DiagramBuilder::edge(const std::string& id, EdgeEnd tail, EdgeEnd head,
                                     std::vector<std::string> marking) {
  edges_[id] = Edge{id, std::move(tail), std::move(head), std::move(marking)};
  return *this;
}

DiagramBuilder& DiagramBuilder::loop(const std::string& id, std::vector<std::string> marking) {
  edges_[id] = Edge{id, std::nullopt, std::nullopt, std::move(marking)};
  return *this;
}

DiagramBuilder& DiagramBuilder::frame(std::vector<std::string> inputs, std::vector<std::string> outputs) {
  framing_ = Framing{std::move(inputs), std::move(outputs)};
  return *this;
}

TraceDiagram DiagramBuilder::build() const { return TraceDiagram(dim_, vertices_, edges_, framing_); }

namespace {

class IsoSearch {
 public:
  IsoSearch(const TraceDiagram& a, const TraceDiagram& b) : a_(a), b_(b) {
    for (const auto& [id, e] : a.edges()) a_edges_.push_back(&e);
    for (const auto& [id, e] : b.edges()) b_edges_.push_back(&e);
    used_.assign(b_edges_.size(), false);
  }

  bool run() {
    if (a_.dimension() != b_.dimension() || a_.vertices().size() != b_.vertices().size() ||
        a_edges_.size() != b_edges_.size() || a_.framed() != b_.framed()) {
      return false;
    }
    if (a_.framed()) {
      const auto& fa = *a_.framing();
      const auto& fb = *b_.framing();
      if (fa.inputs.size() != fb.inputs.size() || fa.outputs.size() != fb.outputs.size()) return false;
      for (std::size_t i = 0; i < fa.inputs.size(); ++i) {
        if (!bind(fa.inputs[i], fb.inputs[i])) return false;
      }
      for (std::size_t i = 0; i < fa.outputs.size(); ++i) {
        if (!bind(fa.outputs[i], fb.outputs[i])) return false;
      }
    }
    return search(0);
  }

 private:
  bool compatible(const std::string& va, const std::string& vb) const {
    const auto ia = a_.vertices().find(va);
    const auto ib = b_.vertices().find(vb);
    if (ia == a_.vertices().end() || ib == b_.vertices().end()) return false;
    const Vertex& x = ia->second;
    const Vertex& y = ib->second;
    return x.kind == y.kind && x.degree == y.degree && x.vector_label == y.vector_label;
  }

  bool bind(const std::string& va, const std::string& vb) {
    auto f = forward_.find(va);
    if (f != forward_.end()) return f->second == vb;
    if (backward_.count(vb) || !compatible(va, vb)) return false;
    forward_[va] = vb;
    backward_[vb] = va;
    trail_.push_back(va);
    return true;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      backward_.erase(forward_[trail_.back()]);
      forward_.erase(trail_.back());
      trail_.pop_back();
    }
  }

  bool match_end(const std::optional<EdgeEnd>& x, const std::optional<EdgeEnd>& y) {
    if (x.has_value() != y.has_value()) return false;
    if (!x) return true;
    return x->slot == y->slot && bind(x->vertex, y->vertex);
  }

  bool search(std::size_t k) {
    if (k == a_edges_.size()) return true;
    const Edge& e = *a_edges_[k];
    for (std::size_t j = 0; j < b_edges_.size(); ++j) {
      if (used_[j]) continue;
      const Edge& f = *b_edges_[j];
      if (e.marking != f.marking || e.free_loop() != f.free_loop()) continue;
      const std::size_t mark = trail_.size();
      if (match_end(e.tail, f.tail) && match_end(e.head, f.head)) {
        used_[j] = true;
        if (search(k + 1)) return true;
        used_[j] = false;
      }
      undo_to(mark);
    }
    return false;
  }

  const TraceDiagram& a_;
  const TraceDiagram& b_;
  std::vector<const Edge*> a_edges_;
  std::vector<const Edge*> b_edges_;
  std::vector<bool> used_;
  std::map<std::string, std::string> forward_;
  std::map<std::string, std::string> backward_;
  std::vector<std::string> trail_;
};

}  // namespace

bool isomorphic(const TraceDiagram& a, const TraceDiagram& b) { return IsoSearch(a, b).run(); }

}  // namespace tracediag
