#include "tracediag/algebra/algebra.hpp"

#include "tracediag/core/validate.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace tracediag::algebra {

namespace {

struct Parts {
  std::map<std::string, Vertex> vertices;
  std::map<std::string, Edge> edges;
};

Parts parts_of(const TraceDiagram& d, const std::string& prefix) {
  Parts p;
  for (const auto& [id, v] : d.vertices()) {
    Vertex copy = v;
    copy.id = prefix + id;
    p.vertices.emplace(copy.id, std::move(copy));
  }
  for (const auto& [id, e] : d.edges()) {
    Edge copy = e;
    copy.id = prefix + id;
    if (copy.tail) copy.tail->vertex = prefix + copy.tail->vertex;
    if (copy.head) copy.head->vertex = prefix + copy.head->vertex;
    p.edges.emplace(copy.id, std::move(copy));
  }
  return p;
}

std::vector<std::string> prefixed(const std::vector<std::string>& ids, const std::string& prefix) {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(prefix + id);
  return out;
}

void merge_into(Parts& dst, Parts src) {
  for (auto& [id, v] : src.vertices) {
    if (!dst.vertices.emplace(id, std::move(v)).second) throw DiagramError("vertex id collision '" + id + "'");
  }
  for (auto& [id, e] : src.edges) {
    if (!dst.edges.emplace(id, std::move(e)).second) throw DiagramError("edge id collision '" + id + "'");
  }
}

/// Edge id and end attached to a leaf in raw parts.
std::pair<std::string, End> find_leaf_end(const Parts& p, const std::string& leaf) {
  std::optional<std::pair<std::string, End>> found;
  for (const auto& [id, e] : p.edges) {
    for (End end : {End::Tail, End::Head}) {
      const auto& at = e.end(end);
      if (at && at->vertex == leaf) {
        if (found) throw DiagramError("leaf '" + leaf + "' has more than one incident edge end");
        found = {id, end};
      }
    }
  }
  if (!found) throw DiagramError("leaf '" + leaf + "' has no incident edge");
  return *found;
}

void flip(Edge& e) { std::swap(e.tail, e.head); }

/// Ensures `leaf` sits at `want` end of edge `id`, flipping an unmarked edge if necessary.
void orient(Parts& p, const std::string& id, const std::string& leaf, End want) {
  Edge& e = p.edges.at(id);
  const auto& at = e.end(want);
  if (at && at->vertex == leaf) return;
  if (e.marked()) {
    throw DiagramError("cannot fuse marked edge '" + id + "': its orientation opposes the gluing direction");
  }
  flip(e);
}

void join_in_parts(Parts& p, const std::string& out_leaf, const std::string& in_leaf,
                   const std::vector<std::string>& word) {
  for (const auto* leaf : {&out_leaf, &in_leaf}) {
    auto it = p.vertices.find(*leaf);
    if (it == p.vertices.end() || !it->second.is_open_leaf()) {
      throw DiagramError("'" + *leaf + "' is not an open leaf");
    }
  }
  if (out_leaf == in_leaf) throw DiagramError("cannot join a leaf to itself");
  const auto [out_edge, out_end] = find_leaf_end(p, out_leaf);
  const auto [in_edge, in_end] = find_leaf_end(p, in_leaf);
  (void)out_end;
  (void)in_end;

  if (out_edge == in_edge) {
    orient(p, out_edge, out_leaf, End::Head);
    Edge& e = p.edges.at(out_edge);
    if (!(e.tail && e.tail->vertex == in_leaf)) throw DiagramError("internal error: strand orientation");
    std::vector<std::string> marking = word;
    marking.insert(marking.end(), e.marking.begin(), e.marking.end());
    e.marking = std::move(marking);
    e.tail.reset();
    e.head.reset();
  } else {
    orient(p, out_edge, out_leaf, End::Head);
    orient(p, in_edge, in_leaf, End::Tail);
    Edge lower = p.edges.at(out_edge);
    const Edge& upper = p.edges.at(in_edge);
    std::vector<std::string> marking = upper.marking;
    marking.insert(marking.end(), word.begin(), word.end());
    marking.insert(marking.end(), lower.marking.begin(), lower.marking.end());
    lower.head = upper.head;
    lower.marking = std::move(marking);
    p.edges.erase(in_edge);
    p.edges[out_edge] = std::move(lower);
  }
  p.vertices.erase(out_leaf);
  p.vertices.erase(in_leaf);
}

std::vector<std::string> without(const std::vector<std::string>& ids, const std::string& a, const std::string& b) {
  std::vector<std::string> out;
  for (const auto& id : ids) {
    if (id != a && id != b) out.push_back(id);
  }
  return out;
}

std::string describe_labels(const std::vector<std::string>& leaves, const std::vector<int>& labels) {
  std::ostringstream os;
  for (std::size_t i = 0; i < leaves.size(); ++i) os << (i ? "," : "") << leaves[i] << "=" << labels[i];
  return os.str();
}

}  // namespace

TraceDiagram empty_diagram(Dimension dim) { return TraceDiagram(dim, {}, {}, Framing{}); }

TraceDiagram compose(const TraceDiagram& top, const TraceDiagram& bottom) {
  if (top.dimension() != bottom.dimension()) throw DiagramError("compose: dimension mismatch");
  if (!top.framed() || !bottom.framed()) throw DiagramError("compose: both diagrams must be framed");
  const auto& tf = *top.framing();
  const auto& bf = *bottom.framing();
  if (bf.outputs.size() != tf.inputs.size()) {
    throw DiagramError("compose: bottom has " + std::to_string(bf.outputs.size()) + " outputs but top has " +
                       std::to_string(tf.inputs.size()) + " inputs");
  }
  Parts p = parts_of(bottom, "b.");
  merge_into(p, parts_of(top, "t."));
  for (std::size_t i = 0; i < bf.outputs.size(); ++i) join_in_parts(p, "b." + bf.outputs[i], "t." + tf.inputs[i], {});
  return TraceDiagram(top.dimension(), std::move(p.vertices), std::move(p.edges),
                      Framing{prefixed(bf.inputs, "b."), prefixed(tf.outputs, "t.")});
}

TraceDiagram tensor(const TraceDiagram& left, const TraceDiagram& right) {
  if (left.dimension() != right.dimension()) throw DiagramError("tensor: dimension mismatch");
  auto framing_of = [](const TraceDiagram& d) -> std::optional<Framing> {
    if (d.framed()) return d.framing();
    if (d.closed()) return Framing{};
    return std::nullopt;
  };
  Parts p = parts_of(left, "l.");
  merge_into(p, parts_of(right, "r."));
  std::optional<Framing> framing;
  if (left.framed() || right.framed()) {
    const auto lf = framing_of(left);
    const auto rf = framing_of(right);
    if (!lf || !rf) throw DiagramError("tensor: cannot combine a framed diagram with an unframed open one");
    Framing f{prefixed(lf->inputs, "l."), prefixed(lf->outputs, "l.")};
    for (const auto& id : prefixed(rf->inputs, "r.")) f.inputs.push_back(id);
    for (const auto& id : prefixed(rf->outputs, "r.")) f.outputs.push_back(id);
    framing = std::move(f);
  }
  return TraceDiagram(left.dimension(), std::move(p.vertices), std::move(p.edges), std::move(framing));
}

TraceDiagram reframe(const TraceDiagram& diagram, const Framing& framing) {
  TraceDiagram out = diagram.with_framing(framing);
  if (validate(out).has(ViolationKind::FramingNotPartition)) {
    throw DiagramError("reframe: framing is not a partition of the open leaves");
  }
  return out;
}

TraceDiagram join_leaves(const TraceDiagram& diagram, const std::string& out_leaf, const std::string& in_leaf,
                         const std::vector<std::string>& word) {
  Parts p = parts_of(diagram, "");
  join_in_parts(p, out_leaf, in_leaf, word);
  std::optional<Framing> framing;
  if (diagram.framed()) {
    framing = Framing{without(diagram.framing()->inputs, out_leaf, in_leaf),
                      without(diagram.framing()->outputs, out_leaf, in_leaf)};
  }
  return TraceDiagram(diagram.dimension(), std::move(p.vertices), std::move(p.edges), std::move(framing));
}

TraceDiagram close_strand(const TraceDiagram& diagram, std::size_t out_pos, std::size_t in_pos,
                          const std::vector<std::string>& word) {
  if (!diagram.framed()) throw DiagramError("close_strand: diagram must be framed");
  const auto& f = *diagram.framing();
  if (out_pos >= f.outputs.size() || in_pos >= f.inputs.size()) throw DiagramError("close_strand: position out of range");
  return join_leaves(diagram, f.outputs[out_pos], f.inputs[in_pos], word);
}

TraceDiagram cap_leaf(const TraceDiagram& diagram, const std::string& leaf, const std::string& vector_label) {
  auto vertices = diagram.vertices();
  auto it = vertices.find(leaf);
  if (it == vertices.end() || !it->second.is_open_leaf()) throw DiagramError("'" + leaf + "' is not an open leaf");
  it->second.vector_label = vector_label;
  std::optional<Framing> framing;
  if (diagram.framed()) {
    framing = Framing{without(diagram.framing()->inputs, leaf, leaf), without(diagram.framing()->outputs, leaf, leaf)};
  }
  return TraceDiagram(diagram.dimension(), std::move(vertices), diagram.edges(), std::move(framing));
}

FormalSum cap_leaf(const FormalSum& sum, const std::string& leaf, const std::string& vector_label) {
  FormalSum out(sum.dimension());
  for (const auto& t : sum.terms()) out.add_term(t.coefficient, cap_leaf(t.diagram, leaf, vector_label));
  return out;
}

FormalSum compose(const FormalSum& top, const FormalSum& bottom) {
  FormalSum out(top.dimension());
  for (const auto& t : top.terms())
    for (const auto& b : bottom.terms()) out.add_term(t.coefficient * b.coefficient, compose(t.diagram, b.diagram));
  return out;
}

FormalSum tensor(const FormalSum& left, const FormalSum& right) {
  FormalSum out(left.dimension());
  for (const auto& l : left.terms())
    for (const auto& r : right.terms()) out.add_term(l.coefficient * r.coefficient, tensor(l.diagram, r.diagram));
  return out;
}

FormalSum reframe(const FormalSum& sum, const Framing& framing) {
  FormalSum out(sum.dimension());
  for (const auto& t : sum.terms()) out.add_term(t.coefficient, reframe(t.diagram, framing));
  return out;
}

FormalSum close_strand(const FormalSum& sum, std::size_t out_pos, std::size_t in_pos,
                       const std::vector<std::string>& word) {
  FormalSum out(sum.dimension());
  for (const auto& t : sum.terms()) out.add_term(t.coefficient, close_strand(t.diagram, out_pos, in_pos, word));
  return out;
}

std::vector<Framing> all_framings(const std::vector<std::string>& leaves) {
  std::vector<std::size_t> order(leaves.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<Framing> out;
  do {
    for (std::size_t split = 0; split <= order.size(); ++split) {
      Framing f;
      for (std::size_t i = 0; i < order.size(); ++i) (i < split ? f.inputs : f.outputs).push_back(leaves[order[i]]);
      out.push_back(std::move(f));
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

Matrix term_matrix(const TraceDiagram& diagram, const MatrixBinding& binding, const eval::EvalOptions& options) {
  if (diagram.framed()) return eval::as_function_matrix(diagram, binding, options);
  if (diagram.closed()) return Matrix(1, 1, {eval::evaluate_closed(diagram, binding, options)});
  throw EvalError("diagram with open leaves must be framed to be evaluated as a function");
}

Matrix sum_matrix(const FormalSum& sum, const MatrixBinding& binding, const eval::EvalOptions& options) {
  if (sum.empty()) throw EvalError("empty formal sum has no determined arity");
  Matrix total;
  bool first = true;
  for (const auto& t : sum.terms()) {
    Matrix m = term_matrix(t.diagram, binding, options) * t.coefficient;
    if (first) {
      total = std::move(m);
      first = false;
    } else {
      total += m;
    }
  }
  return total;
}

std::optional<Residual> largest_entry(const Matrix& m) {
  std::optional<Residual> best;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Scalar& x = m(i, j);
      if (sgn(x) == 0) continue;
      if (!best || abs(x.get_num()) > abs(best->value.get_num())) {
        best = Residual{i, j, x, "(" + std::to_string(i) + "," + std::to_string(j) + ")"};
      }
    }
  }
  return best;
}

RelationCheck is_relation(const FormalSum& sum, const MatrixBinding& binding, RelationMode mode,
                          const eval::EvalOptions& options) {
  RelationCheck check;
  if (sum.empty()) {
    check.holds = true;
    return check;
  }
  if (mode == RelationMode::ExactOnBinding) {
    check.residual = largest_entry(sum_matrix(sum, binding, options));
    check.holds = !check.residual.has_value();
    return check;
  }
  const auto leaves = sum.terms().front().diagram.open_leaves();
  for (const auto& t : sum.terms()) {
    if (t.diagram.open_leaves() != leaves) throw EvalError("relation terms do not share the same leaves");
  }
  const int n = sum.dimension().value();
  std::size_t total = 1;
  for (std::size_t i = 0; i < leaves.size(); ++i) total *= static_cast<std::size_t>(n);
  Matrix weights(total, 1);
  for (std::size_t idx = 0; idx < total; ++idx) {
    const auto labels = eval::basis_labels(idx, leaves.size(), n);
    LeafColoring gamma;
    for (std::size_t i = 0; i < leaves.size(); ++i) gamma.labels[leaves[i]] = labels[i];
    for (const auto& t : sum.terms()) weights(idx, 0) += t.coefficient * eval::weight(t.diagram, gamma, binding, options);
  }
  check.residual = largest_entry(weights);
  if (check.residual) check.residual->where = describe_labels(leaves, eval::basis_labels(check.residual->row, leaves.size(), n));
  check.holds = !check.residual.has_value();
  return check;
}

}  // namespace tracediag::algebra
