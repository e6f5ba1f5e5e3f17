#include "tracediag/eval/engine.hpp"

#include "tracediag/core/validate.hpp"

#include <atomic>
#include <thread>

namespace tracediag::eval {

namespace {

struct EndRef {
  enum class Kind { None, Internal, Leaf } kind = Kind::None;
  int index = -1;  // into internals or leaves
  int slot = 0;
};

struct CompiledEdge {
  const Edge* source = nullptr;
  EndRef tail;
  EndRef head;
  bool marked = false;
  Matrix product;  // bound word product when evaluating with a binding
};

struct InternalState {
  std::vector<int> slot_labels;
  unsigned used = 0;
};

struct LeafState {
  std::string id;
  const Vector* vec = nullptr;
  int fixed = 0;  // 0 = free
  int label = 0;
};

/// Mutable enumeration state over a validated diagram. Copy per worker thread.
class Enumerator {
 public:
  Enumerator(const TraceDiagram& d, const MatrixBinding* binding, bool zero_pruning)
      : n_(d.n()), binding_(binding), pruning_(zero_pruning && binding != nullptr) {
    std::map<std::string, int> internal_index;
    std::map<std::string, int> leaf_index;
    for (const auto& [id, v] : d.vertices()) {
      if (v.kind == VertexKind::Internal) {
        internal_index[id] = static_cast<int>(internals_.size());
        internals_.push_back(InternalState{std::vector<int>(static_cast<std::size_t>(v.degree), 0), 0});
      } else {
        leaf_index[id] = static_cast<int>(leaves_.size());
        LeafState leaf;
        leaf.id = id;
        if (v.vector_label && binding_) leaf.vec = &binding_->vector(*v.vector_label);
        leaves_.push_back(leaf);
      }
    }
    auto resolve = [&](const std::optional<EdgeEnd>& end) {
      EndRef r;
      if (!end) return r;
      if (auto it = internal_index.find(end->vertex); it != internal_index.end()) {
        r.kind = EndRef::Kind::Internal;
        r.index = it->second;
      } else {
        r.kind = EndRef::Kind::Leaf;
        r.index = leaf_index.at(end->vertex);
      }
      r.slot = end->slot;
      return r;
    };
    for (const auto& [id, e] : d.edges()) {
      CompiledEdge ce;
      ce.source = &e;
      ce.tail = resolve(e.tail);
      ce.head = resolve(e.head);
      ce.marked = e.marked();
      if (binding_ && ce.marked) ce.product = binding_->word_product(e.marking);
      edges_.push_back(std::move(ce));
    }
    labels_.assign(edges_.size(), LabelPair{});
    for (std::size_t i = 0; i < leaves_.size(); ++i) leaf_lookup_[leaves_[i].id] = static_cast<int>(i);
    partial_.assign(edges_.size() + 1, Scalar(1));
  }

  void fix_leaf(const std::string& id, int label) {
    auto it = leaf_lookup_.find(id);
    if (it == leaf_lookup_.end() || leaves_[static_cast<std::size_t>(it->second)].vec) {
      throw EvalError("'" + id + "' is not an open leaf");
    }
    if (label < 1 || label > n_) throw EvalError("leaf label out of range at '" + id + "'");
    leaves_[static_cast<std::size_t>(it->second)].fixed = label;
  }

  void clear_fixed() {
    for (auto& l : leaves_) l.fixed = 0;
  }

  int leaf_label(const std::string& id) const {
    return leaves_[static_cast<std::size_t>(leaf_lookup_.at(id))].label;
  }

  /// Calls visit(sign, coefficient) once per admissible extension.
  template <typename Visit>
  void run(Visit&& visit) {
    partial_[0] = 1;
    descend(0, visit);
  }

  Coloring current_coloring() const {
    Coloring c;
    for (std::size_t i = 0; i < edges_.size(); ++i) c.labels[edges_[i].source->id] = labels_[i];
    return c;
  }

 private:
  bool can_take(const EndRef& r, int label) const {
    switch (r.kind) {
      case EndRef::Kind::Internal:
        return (internals_[static_cast<std::size_t>(r.index)].used & (1u << label)) == 0;
      case EndRef::Kind::Leaf: {
        const int f = leaves_[static_cast<std::size_t>(r.index)].fixed;
        return f == 0 || f == label;
      }
      case EndRef::Kind::None:
        return true;
    }
    return true;
  }

  void take(const EndRef& r, int label) {
    if (r.kind == EndRef::Kind::Internal) {
      auto& v = internals_[static_cast<std::size_t>(r.index)];
      v.used |= (1u << label);
      v.slot_labels[static_cast<std::size_t>(r.slot)] = label;
    } else if (r.kind == EndRef::Kind::Leaf) {
      leaves_[static_cast<std::size_t>(r.index)].label = label;
    }
  }

  void release(const EndRef& r, int label) {
    if (r.kind == EndRef::Kind::Internal) {
      internals_[static_cast<std::size_t>(r.index)].used &= ~(1u << label);
    }
  }

  /// Vector entry contributed by a capped leaf end, or nullptr.
  const Scalar* vector_factor(const EndRef& r, int label) const {
    if (r.kind != EndRef::Kind::Leaf) return nullptr;
    const Vector* v = leaves_[static_cast<std::size_t>(r.index)].vec;
    return v ? &(*v)[static_cast<std::size_t>(label - 1)] : nullptr;
  }

  int current_sign() const {
    int s = 1;
    for (const auto& v : internals_) s *= permutation_sign(v.slot_labels);
    return s;
  }

  template <typename Visit>
  void descend(std::size_t k, Visit& visit) {
    if (k == edges_.size()) {
      visit(current_sign(), partial_[k]);
      return;
    }
    const CompiledEdge& e = edges_[k];
    const bool values = binding_ != nullptr;
    if (e.source->free_loop()) {
      for (int l = 1; l <= n_; ++l) {
        labels_[k] = {l, l};
        if (values) {
          if (e.marked) {
            partial_[k + 1] = partial_[k] * e.product(static_cast<std::size_t>(l - 1), static_cast<std::size_t>(l - 1));
            if (pruning_ && sgn(partial_[k + 1]) == 0) continue;
          } else {
            partial_[k + 1] = partial_[k];
          }
        }
        descend(k + 1, visit);
      }
      return;
    }
    for (int h = 1; h <= n_; ++h) {
      if (!can_take(e.head, h)) continue;
      take(e.head, h);
      Scalar head_part;
      if (values) {
        head_part = partial_[k];
        if (const Scalar* f = vector_factor(e.head, h)) head_part *= *f;
      }
      if (!(pruning_ && sgn(head_part) == 0)) {
        const int t_lo = e.marked ? 1 : h;
        const int t_hi = e.marked ? n_ : h;
        for (int t = t_lo; t <= t_hi; ++t) {
          if (!can_take(e.tail, t)) continue;
          if (values) {
            Scalar& next = partial_[k + 1];
            next = head_part;
            if (e.marked) next *= e.product(static_cast<std::size_t>(h - 1), static_cast<std::size_t>(t - 1));
            if (const Scalar* f = vector_factor(e.tail, t)) next *= *f;
            if (pruning_ && sgn(next) == 0) continue;
          }
          take(e.tail, t);
          labels_[k] = {h, t};
          descend(k + 1, visit);
          release(e.tail, t);
        }
      }
      release(e.head, h);
    }
  }

  int n_;
  const MatrixBinding* binding_;
  bool pruning_;
  std::vector<InternalState> internals_;
  std::vector<LeafState> leaves_;
  std::map<std::string, int> leaf_lookup_;
  std::vector<CompiledEdge> edges_;
  std::vector<LabelPair> labels_;
  std::vector<Scalar> partial_;
};

void require_label_capacity(const TraceDiagram& d) {
  if (d.n() > 30) throw EvalError("dimension too large for coloring enumeration");
}

void prepare(const TraceDiagram& d, const MatrixBinding* binding) {
  require_valid(d);
  require_label_capacity(d);
  if (binding) binding->check_covers(d);
}

void fix_precoloring(Enumerator& en, const TraceDiagram& d, const LeafColoring& pre) {
  for (const auto& [leaf, label] : pre.labels) {
    auto it = d.vertices().find(leaf);
    if (it == d.vertices().end() || !it->second.is_open_leaf()) {
      throw EvalError("precoloring names '" + leaf + "', which is not an open leaf");
    }
    en.fix_leaf(leaf, label);
  }
}

}  // namespace

std::size_t basis_index(const std::vector<int>& labels, int n) {
  std::size_t idx = 0;
  for (int l : labels) idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(l - 1);
  return idx;
}

std::vector<int> basis_labels(std::size_t index, std::size_t count, int n) {
  std::vector<int> labels(count);
  for (std::size_t i = count; i-- > 0;) {
    labels[i] = static_cast<int>(index % static_cast<std::size_t>(n)) + 1;
    index /= static_cast<std::size_t>(n);
  }
  return labels;
}

void for_each_coloring(const TraceDiagram& diagram, const LeafColoring& precoloring,
                       const std::function<void(const Coloring&)>& visit) {
  prepare(diagram, nullptr);
  Enumerator en(diagram, nullptr, false);
  fix_precoloring(en, diagram, precoloring);
  en.run([&](int, const Scalar&) { visit(en.current_coloring()); });
}

std::vector<Coloring> enumerate_colorings(const TraceDiagram& diagram, const LeafColoring& precoloring) {
  std::vector<Coloring> out;
  for_each_coloring(diagram, precoloring, [&](const Coloring& c) { out.push_back(c); });
  return out;
}

void check_admissible(const TraceDiagram& diagram, const Coloring& coloring) {
  const int n = diagram.n();
  for (const auto& [id, e] : diagram.edges()) {
    auto it = coloring.labels.find(id);
    if (it == coloring.labels.end()) throw EvalError("coloring has no labels for edge '" + id + "'");
    const auto [h, t] = it->second;
    if (h < 1 || h > n || t < 1 || t > n) throw EvalError("label out of range on edge '" + id + "'");
    if ((!e.marked() || e.free_loop()) && h != t) {
      throw EvalError("inadmissible coloring: edge '" + id + "' needs equal head and tail labels");
    }
  }
  for (const auto& [id, v] : diagram.vertices()) {
    if (v.kind == VertexKind::Internal) (void)vertex_permutation(diagram, coloring, id);
  }
}

int signature(const TraceDiagram& diagram, const Coloring& coloring) {
  check_admissible(diagram, coloring);
  int s = 1;
  for (const auto& [id, v] : diagram.vertices()) {
    if (v.kind == VertexKind::Internal) s *= permutation_sign(vertex_permutation(diagram, coloring, id));
  }
  return s;
}

Scalar coefficient(const TraceDiagram& diagram, const Coloring& coloring, const MatrixBinding& binding) {
  binding.check_covers(diagram);
  check_admissible(diagram, coloring);
  Scalar c = 1;
  for (const auto& [id, e] : diagram.edges()) {
    const auto [h, t] = coloring.labels.at(id);
    if (e.marked()) {
      c *= binding.word_product(e.marking)(static_cast<std::size_t>(h - 1), static_cast<std::size_t>(t - 1));
    }
    for (const auto& [end, label] : {std::pair{e.head, h}, std::pair{e.tail, t}}) {
      if (!end) continue;
      const Vertex& v = diagram.vertices().at(end->vertex);
      if (v.vector_label) c *= binding.vector(*v.vector_label)[static_cast<std::size_t>(label - 1)];
    }
  }
  return c;
}

Scalar weight(const TraceDiagram& diagram, const LeafColoring& leaf_coloring, const MatrixBinding& binding,
              const EvalOptions& options) {
  prepare(diagram, &binding);
  for (const auto& leaf : diagram.open_leaves()) {
    if (!leaf_coloring.labels.count(leaf)) throw EvalError("leaf coloring is not total: missing '" + leaf + "'");
  }
  Enumerator en(diagram, &binding, options.zero_pruning);
  fix_precoloring(en, diagram, leaf_coloring);
  Scalar total = 0;
  en.run([&](int sign, const Scalar& c) {
    if (sign > 0) total += c; else total -= c;
  });
  return total;
}

Scalar evaluate_closed(const TraceDiagram& diagram, const MatrixBinding& binding, const EvalOptions& options) {
  require_valid(diagram);
  if (!diagram.closed()) throw EvalError("not closed: diagram has open leaves");
  return weight(diagram, LeafColoring{}, binding, options);
}

Matrix as_function_matrix(const TraceDiagram& diagram, const MatrixBinding& binding, const EvalOptions& options) {
  if (!diagram.framed()) throw EvalError("unframed diagram has no function matrix");
  prepare(diagram, &binding);
  const int n = diagram.n();
  const auto& fr = *diagram.framing();
  std::size_t rows = 1;
  std::size_t cols = 1;
  for (std::size_t i = 0; i < fr.outputs.size(); ++i) rows *= static_cast<std::size_t>(n);
  for (std::size_t i = 0; i < fr.inputs.size(); ++i) cols *= static_cast<std::size_t>(n);

  Matrix result(rows, cols);
  const Enumerator prototype(diagram, &binding, options.zero_pruning);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    Enumerator en = prototype;
    std::vector<int> out_labels(fr.outputs.size());
    for (std::size_t col = next++; col < cols; col = next++) {
      en.clear_fixed();
      const auto in_labels = basis_labels(col, fr.inputs.size(), n);
      for (std::size_t i = 0; i < fr.inputs.size(); ++i) en.fix_leaf(fr.inputs[i], in_labels[i]);
      en.run([&](int sign, const Scalar& c) {
        for (std::size_t j = 0; j < fr.outputs.size(); ++j) out_labels[j] = en.leaf_label(fr.outputs[j]);
        Scalar& entry = result(basis_index(out_labels, n), col);
        if (sign > 0) entry += c; else entry -= c;
      });
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(cols)));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return result;
}

Scalar evaluate_fast_closed(const TraceDiagram& diagram, const MatrixBinding& binding) {
  require_valid(diagram);
  binding.check_covers(diagram);
  if (diagram.has_internal_vertices()) throw EvalError("fast path inapplicable: diagram has internal vertices");
  if (!diagram.closed()) throw EvalError("not closed: diagram has open leaves");
  const std::size_t n = static_cast<std::size_t>(diagram.n());
  Scalar value = 1;
  for (const auto& [id, e] : diagram.edges()) {
    const Matrix m = binding.word_product(e.marking);
    if (e.free_loop()) {
      value *= m.trace();
      continue;
    }
    // Both ends sit on vector-capped leaves: head vector^T * M * tail vector.
    const Vector& u = binding.vector(*diagram.vertices().at(e.head->vertex).vector_label);
    const Vector& w = binding.vector(*diagram.vertices().at(e.tail->vertex).vector_label);
    Scalar pairing = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) pairing += u[i] * m(i, j) * w[j];
    value *= pairing;
  }
  return value;
}

Matrix as_function_matrix(const FormalSum& sum, const MatrixBinding& binding, const EvalOptions& options) {
  if (sum.empty()) throw EvalError("empty formal sum has no determined arity");
  Matrix total;
  bool first = true;
  for (const auto& t : sum.terms()) {
    Matrix m = as_function_matrix(t.diagram, binding, options) * t.coefficient;
    if (first) {
      total = std::move(m);
      first = false;
    } else {
      total += m;
    }
  }
  return total;
}

Scalar evaluate_closed(const FormalSum& sum, const MatrixBinding& binding, const EvalOptions& options) {
  Scalar total = 0;
  for (const auto& t : sum.terms()) total += t.coefficient * evaluate_closed(t.diagram, binding, options);
  return total;
}

}  // namespace tracediag::eval
