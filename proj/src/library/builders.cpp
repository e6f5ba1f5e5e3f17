#include "tracediag/library/builders.hpp"

#include "tracediag/algebra/algebra.hpp"
#include "tracediag/core/coloring.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>

namespace tracediag::library {

namespace {

std::string in_leaf(std::size_t i) { return "in" + std::to_string(i); }
std::string out_leaf(std::size_t i) { return "out" + std::to_string(i); }

std::vector<std::string> numbered(const std::string& prefix, std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= k; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

void require_dim3(Dimension dim, const char* what) {
  if (dim.value() != 3) {
    throw DiagramError(std::string(what) + " is defined only for n = 3, got n = " + std::to_string(dim.value()));
  }
}

FormalSum map_terms(const FormalSum& sum, const std::function<TraceDiagram(const TraceDiagram&)>& f) {
  FormalSum out(sum.dimension());
  for (const auto& t : sum.terms()) out.add_term(t.coefficient, f(t.diagram));
  return out;
}

}  // namespace

std::vector<std::vector<int>> permutations(std::size_t k) {
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

TraceDiagram identity_strands(Dimension dim, std::size_t k) {
  std::vector<int> id(k);
  std::iota(id.begin(), id.end(), 0);
  return permutation_diagram(dim, id);
}

TraceDiagram permutation_diagram(Dimension dim, const std::vector<int>& sigma) {
  const std::size_t k = sigma.size();
  std::vector<bool> seen(k, false);
  for (int s : sigma) {
    if (s < 0 || static_cast<std::size_t>(s) >= k || seen[s]) throw DiagramError("not a permutation");
    seen[s] = true;
  }
  DiagramBuilder b(dim);
  for (std::size_t i = 1; i <= k; ++i) b.leaf(in_leaf(i)).leaf(out_leaf(i));
  for (std::size_t i = 0; i < k; ++i) {
    b.edge("s" + std::to_string(i + 1), {in_leaf(i + 1), 0}, {out_leaf(sigma[i] + 1), 0});
  }
  b.frame(numbered("in", k), numbered("out", k));
  return b.build();
}

TraceDiagram strand(Dimension dim, std::vector<std::string> word) {
  return DiagramBuilder(dim)
      .leaf("in1")
      .leaf("out1")
      .edge("s1", {"in1", 0}, {"out1", 0}, std::move(word))
      .frame({"in1"}, {"out1"})
      .build();
}

FormalSum antisymmetrizer(Dimension dim, std::size_t k) {
  FormalSum sum(dim);
  for (const auto& p : permutations(k)) {
    std::vector<int> images;
    for (int x : p) images.push_back(x + 1);
    sum.add_term(permutation_sign(images), permutation_diagram(dim, p));
  }
  return sum;
}

TraceDiagram trace_loop(Dimension dim, std::vector<std::string> word) {
  return DiagramBuilder(dim).loop("e1", std::move(word)).build();
}

TraceDiagram epsilon_node(Dimension dim, int inputs, int outputs) {
  const int n = dim.value();
  if (inputs < 0 || outputs < 0 || inputs + outputs != n) {
    throw DiagramError("epsilon node needs inputs + outputs = n = " + std::to_string(n));
  }
  DiagramBuilder b(dim);
  b.internal("v");
  for (int i = 1; i <= inputs; ++i) {
    b.leaf(in_leaf(i)).edge("a" + std::to_string(i), {in_leaf(i), 0}, {"v", i - 1});
  }
  for (int j = 1; j <= outputs; ++j) {
    b.leaf(out_leaf(j)).edge("b" + std::to_string(j), {"v", inputs + (outputs - j)}, {out_leaf(j), 0});
  }
  b.frame(numbered("in", inputs), numbered("out", outputs));
  return b.build();
}

TraceDiagram two_vertex(Dimension dim, std::size_t k, const std::vector<std::vector<std::string>>& shared) {
  const int n = dim.value();
  const int kk = static_cast<int>(k);
  const int m = n - kk;
  if (kk > n || static_cast<int>(shared.size()) != m) {
    throw DiagramError("two-vertex diagram needs k <= n and n - k shared edges");
  }
  DiagramBuilder b(dim);
  b.internal("vb").internal("vt");
  for (int i = 1; i <= kk; ++i) {
    b.leaf(in_leaf(i)).edge("a" + std::to_string(i), {in_leaf(i), 0}, {"vb", i - 1});
    b.leaf(out_leaf(i)).edge("b" + std::to_string(i), {"vt", m + (kk - i)}, {out_leaf(i), 0});
  }
  for (int j = 1; j <= m; ++j) {
    b.edge("c" + std::to_string(j), {"vb", kk + (m - j)}, {"vt", j - 1}, shared[j - 1]);
  }
  b.frame(numbered("in", k), numbered("out", k));
  return b.build();
}

TraceDiagram determinant_diagram(Dimension dim, const std::string& a) {
  return det_sum_term(dim, 0, a, a);
}

TraceDiagram det_sum_term(Dimension dim, int i, const std::string& a, const std::string& b) {
  const int n = dim.value();
  if (i < 0 || i > n) throw DiagramError("det_sum_term index out of range");
  std::vector<std::vector<std::string>> shared;
  for (int j = 0; j < n; ++j) shared.push_back({j < n - i ? a : b});
  return two_vertex(dim, 0, shared).with_framing(std::nullopt);
}

TraceDiagram char_coeff_diagram(Dimension dim, int i, const std::string& a) {
  const int n = dim.value();
  if (i < 0 || i > n) throw DiagramError("char_coeff_diagram index out of range");
  std::vector<std::vector<std::string>> shared;
  for (int j = 0; j < n; ++j) shared.push_back(j < n - i ? std::vector<std::string>{a} : std::vector<std::string>{});
  return two_vertex(dim, 0, shared).with_framing(std::nullopt);
}

TraceDiagram two_node_antisym(Dimension dim, int k) {
  if (k < 0 || k > dim.value()) throw DiagramError("two_node_antisym needs 0 <= k <= n");
  return two_vertex(dim, k, std::vector<std::vector<std::string>>(dim.value() - k));
}

FormalSum ch_diagram(Dimension dim, const std::vector<std::string>& labels) {
  const std::size_t m = labels.size();
  return map_terms(antisymmetrizer(dim, m + 1), [&](const TraceDiagram& d) {
    TraceDiagram out = d;
    for (std::size_t j = 1; j <= m; ++j) out = algebra::join_leaves(out, out_leaf(j + 1), in_leaf(j + 1), {labels[j - 1]});
    return out;
  });
}

FormalSum closed_antisym_loops(Dimension dim, const std::vector<std::string>& labels) {
  const std::size_t m = labels.size();
  return map_terms(antisymmetrizer(dim, m), [&](const TraceDiagram& d) {
    TraceDiagram out = d;
    for (std::size_t j = 1; j <= m; ++j) out = algebra::join_leaves(out, out_leaf(j), in_leaf(j), {labels[j - 1]});
    return out;
  });
}

TraceDiagram cross_product(Dimension dim, const std::string& u, const std::string& v) {
  require_dim3(dim, "cross product");
  return DiagramBuilder(dim)
      .internal("v")
      .vector_leaf("x1", u)
      .vector_leaf("x2", v)
      .leaf("out1")
      .edge("a1", {"x1", 0}, {"v", 0})
      .edge("a2", {"x2", 0}, {"v", 1})
      .edge("b1", {"v", 2}, {"out1", 0})
      .frame({}, {"out1"})
      .build();
}

TraceDiagram dot_product(Dimension dim, const std::string& u, const std::string& v) {
  require_dim3(dim, "dot product");
  return DiagramBuilder(dim).vector_leaf("x1", u).vector_leaf("x2", v).edge("e1", {"x1", 0}, {"x2", 0}).build();
}

TraceDiagram binor_lhs(Dimension dim) {
  require_dim3(dim, "binor relation");
  return DiagramBuilder(dim)
      .internal("vb")
      .internal("vt")
      .leaf("in1")
      .leaf("in2")
      .leaf("out1")
      .leaf("out2")
      .edge("a1", {"in1", 0}, {"vb", 0})
      .edge("a2", {"in2", 0}, {"vb", 1})
      .edge("c1", {"vb", 2}, {"vt", 0})
      .edge("b2", {"vt", 1}, {"out2", 0})
      .edge("b1", {"vt", 2}, {"out1", 0})
      .frame({"in1", "in2"}, {"out1", "out2"})
      .build();
}

TraceDiagram crossing(Dimension dim) { return permutation_diagram(dim, {1, 0}); }

FormalSum binor_relation(Dimension dim) {
  FormalSum sum(dim);
  sum.add_term(1, binor_lhs(dim));
  sum.add_term(-1, crossing(dim));
  sum.add_term(1, identity_strands(dim, 2));
  return sum;
}

TraceDiagram cross_dot_cross(Dimension dim, const std::string& u, const std::string& v, const std::string& w,
                             const std::string& x) {
  require_dim3(dim, "cross-dot-cross");
  return DiagramBuilder(dim)
      .internal("va")
      .internal("vb")
      .vector_leaf("x1", u)
      .vector_leaf("x2", v)
      .vector_leaf("x3", w)
      .vector_leaf("x4", x)
      .edge("a1", {"x1", 0}, {"va", 0})
      .edge("a2", {"x2", 0}, {"va", 1})
      .edge("a3", {"x3", 0}, {"vb", 0})
      .edge("a4", {"x4", 0}, {"vb", 1})
      .edge("c1", {"va", 2}, {"vb", 2})
      .build();
}

FormalSum four_vector_relation(Dimension dim, const std::string& u, const std::string& v, const std::string& w,
                               const std::string& x) {
  FormalSum sum(dim);
  sum.add_term(1, cross_dot_cross(dim, u, v, w, x));
  sum.add_term(-1, algebra::tensor(dot_product(dim, u, w), dot_product(dim, v, x)));
  sum.add_term(1, algebra::tensor(dot_product(dim, u, x), dot_product(dim, v, w)));
  return sum;
}

TraceDiagram pfaffian_diagram(Dimension dim, const std::string& a) {
  const int n = dim.value();
  if (n % 2 != 0) throw DiagramError("pfaffian diagram needs even n, got " + std::to_string(n));
  DiagramBuilder b(dim);
  b.internal("v");
  for (int p = 0; p < n / 2; ++p) b.edge("e" + std::to_string(p + 1), {"v", p}, {"v", n - 1 - p}, {a});
  return b.build();
}

FormalSum fricke_diagrams(Dimension dim, const std::string& a, const std::string& b, const std::string& c) {
  if (dim.value() != 2) throw DiagramError("Fricke relation is defined only for n = 2");
  return algebra::compose(FormalSum(strand(dim, {a})), ch_diagram(dim, {b, c}));
}

FormalSum fricke_trace(Dimension dim, const std::string& a, const std::string& b, const std::string& c) {
  return algebra::close_strand(fricke_diagrams(dim, a, b, c), 0, 0);
}

namespace {

struct Call {
  std::string name;
  std::vector<std::string> args;
};

std::string trim(std::string s) {
  auto ws = [](unsigned char ch) { return std::isspace(ch) != 0; };
  while (!s.empty() && ws(s.back())) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && ws(s[i])) ++i;
  return s.substr(i);
}

Call parse_call(std::string spec) {
  spec = trim(std::move(spec));
  if (spec.rfind("builtin:", 0) == 0) spec = trim(spec.substr(8));
  Call call;
  const auto open = spec.find('(');
  if (open == std::string::npos) {
    call.name = spec;
  } else {
    if (spec.back() != ')') throw DiagramError("builtin '" + spec + "': missing ')'");
    call.name = trim(spec.substr(0, open));
    const std::string inner = spec.substr(open + 1, spec.size() - open - 2);
    if (!trim(inner).empty()) {
      std::size_t start = 0;
      while (true) {
        const auto comma = inner.find(',', start);
        call.args.push_back(trim(inner.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    }
  }
  if (call.name.empty()) throw DiagramError("empty builtin name");
  for (const auto& a : call.args) {
    if (a.empty()) throw DiagramError("builtin '" + call.name + "': empty argument");
  }
  return call;
}

int to_int(const std::string& name, const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) throw DiagramError("builtin '" + name + "': expected an integer, got '" + s + "'");
  return v;
}

void arity(const Call& c, std::size_t want) {
  if (c.args.size() != want) {
    throw DiagramError("builtin '" + c.name + "' takes " + std::to_string(want) + " argument(s), got " +
                       std::to_string(c.args.size()));
  }
}

int non_negative(const Call& c, std::size_t i) {
  const int v = to_int(c.name, c.args[i]);
  if (v < 0) throw DiagramError("builtin '" + c.name + "': negative argument");
  return v;
}

}  // namespace

FormalSum builtin(const std::string& spec, Dimension dim) {
  const Call c = parse_call(spec);
  const auto& a = c.args;
  if (c.name == "identity") {
    arity(c, 1);
    return FormalSum(identity_strands(dim, non_negative(c, 0)));
  }
  if (c.name == "perm") {
    std::vector<int> sigma;
    for (const auto& s : a) sigma.push_back(to_int(c.name, s) - 1);
    return FormalSum(permutation_diagram(dim, sigma));
  }
  if (c.name == "strand") return FormalSum(strand(dim, a));
  if (c.name == "antisym") {
    arity(c, 1);
    return antisymmetrizer(dim, non_negative(c, 0));
  }
  if (c.name == "trace") return FormalSum(trace_loop(dim, a));
  if (c.name == "det") {
    arity(c, 1);
    return FormalSum(determinant_diagram(dim, a[0]));
  }
  if (c.name == "detsum") {
    arity(c, 3);
    return FormalSum(det_sum_term(dim, to_int(c.name, a[0]), a[1], a[2]));
  }
  if (c.name == "charcoeff") {
    arity(c, 2);
    return FormalSum(char_coeff_diagram(dim, to_int(c.name, a[0]), a[1]));
  }
  if (c.name == "twonode") {
    arity(c, 1);
    return FormalSum(two_node_antisym(dim, to_int(c.name, a[0])));
  }
  if (c.name == "epsilon") {
    arity(c, 2);
    return FormalSum(epsilon_node(dim, to_int(c.name, a[0]), to_int(c.name, a[1])));
  }
  if (c.name == "ch") return ch_diagram(dim, a);
  if (c.name == "closedantisym") return closed_antisym_loops(dim, a);
  if (c.name == "cross") {
    arity(c, 2);
    return FormalSum(cross_product(dim, a[0], a[1]));
  }
  if (c.name == "dot") {
    arity(c, 2);
    return FormalSum(dot_product(dim, a[0], a[1]));
  }
  if (c.name == "binor") {
    arity(c, 0);
    return binor_relation(dim);
  }
  if (c.name == "binorlhs") {
    arity(c, 0);
    return FormalSum(binor_lhs(dim));
  }
  if (c.name == "crossing") {
    arity(c, 0);
    return FormalSum(crossing(dim));
  }
  if (c.name == "cdc") {
    arity(c, 4);
    return FormalSum(cross_dot_cross(dim, a[0], a[1], a[2], a[3]));
  }
  if (c.name == "fourvector") {
    arity(c, 4);
    return four_vector_relation(dim, a[0], a[1], a[2], a[3]);
  }
  if (c.name == "pfaffian") {
    arity(c, 1);
    return FormalSum(pfaffian_diagram(dim, a[0]));
  }
  if (c.name == "fricke") {
    arity(c, 3);
    return fricke_diagrams(dim, a[0], a[1], a[2]);
  }
  if (c.name == "fricketrace") {
    arity(c, 3);
    return fricke_trace(dim, a[0], a[1], a[2]);
  }
  throw DiagramError("unknown builtin '" + c.name + "'");
}

std::vector<std::string> builtin_names() {
  return {"identity(k)",      "perm(i1,...,ik)",  "strand(W1,...)",  "antisym(k)",        "trace(W1,...)",
          "det(A)",           "detsum(i,A,B)",    "charcoeff(i,A)",  "twonode(k)",        "epsilon(a,b)",
          "ch(A1,...,Am)",    "closedantisym(A1,...,Am)",            "cross(u,v)",        "dot(u,v)",
          "binor",            "binorlhs",         "crossing",        "cdc(u,v,w,x)",      "fourvector(u,v,w,x)",
          "pfaffian(A)",      "fricke(A,B,C)",    "fricketrace(A,B,C)"};
}

}  // namespace tracediag::library
