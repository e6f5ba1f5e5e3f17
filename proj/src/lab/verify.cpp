#include "tracediag/lab/verify.hpp"

#include "tracediag/algebra/algebra.hpp"
#include "tracediag/lab/oracles.hpp"
#include "tracediag/lab/random.hpp"
#include "tracediag/library/builders.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tracediag::lab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

/// Evaluation options for work inside one trial: no nested threads when trials already run in parallel.
eval::EvalOptions inner(const TrialConfig& cfg) {
  eval::EvalOptions o = cfg.eval;
  if (cfg.jobs > 1) o.jobs = 1;
  return o;
}

std::string residual_text(const Matrix& diff, const std::string& context = "") {
  const auto r = algebra::largest_entry(diff);
  std::string s = context.empty() ? "" : context + ": ";
  if (!r) return s + "no residual";
  return s + "entry " + r->where + " = " + tracediag::to_string(r->value);
}

std::string scalar_mismatch(const std::string& what, const Scalar& got, const Scalar& want) {
  return what + ": got " + tracediag::to_string(got) + ", expected " + tracediag::to_string(want);
}

void fail(TrialOutcome& o, std::string residual) {
  if (o.ok) {
    o.ok = false;
    o.residual = std::move(residual);
  }
}

std::string bindings_text(const MatrixBinding& b) {
  std::string s;
  for (const auto& [label, m] : b.matrices()) s += (s.empty() ? "" : " ") + label + "=" + inline_matrix(m);
  for (const auto& [label, v] : b.vectors()) s += (s.empty() ? "" : " ") + label + "=" + inline_vector(v);
  return s;
}

template <class F>
VerificationReport run_trials(const std::string& name, const TrialConfig& cfg, std::size_t trials, F per_trial) {
  const auto start = Clock::now();
  auto outcomes = run_indexed<TrialOutcome>(trials, cfg.jobs, [&](std::size_t t) {
    Rng rng = trial_rng(cfg.seed, t);
    return per_trial(rng, t);
  });
  VerificationReport r = merge_trials(name, cfg.dim, cfg.seed, outcomes);
  r.seconds = seconds_since(start);
  return r;
}

std::vector<std::string> repeated(const std::string& label, std::size_t k) { return std::vector<std::string>(k, label); }

std::vector<std::string> numbered_labels(const std::string& prefix, int k) {
  std::vector<std::string> out;
  for (int i = 1; i <= k; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

/// Signed matrices of the individual terms of a formal sum.
std::vector<Matrix> term_matrices(const FormalSum& sum, const MatrixBinding& b, const eval::EvalOptions& o) {
  std::vector<Matrix> out;
  for (const auto& t : sum.terms()) out.push_back(algebra::term_matrix(t.diagram, b, o) * t.coefficient);
  return out;
}

bool same_multiset(std::vector<Matrix> a, std::vector<Matrix> b) {
  if (a.size() != b.size()) return false;
  for (const auto& m : a) {
    auto it = std::find(b.begin(), b.end(), m);
    if (it == b.end()) return false;
    b.erase(it);
  }
  return true;
}

Matrix sum_of(const std::vector<Matrix>& ms) {
  Matrix total = ms.front();
  for (std::size_t i = 1; i < ms.size(); ++i) total += ms[i];
  return total;
}

/// tr(A1)tr(A2)I + A2A1 + A1A2 - tr(A2)A1 - tr(A1)A2 - tr(A1A2)I, as its six summands.
std::vector<Matrix> six_terms(const Matrix& a1, const Matrix& a2) {
  const auto id = Matrix::identity(a1.rows());
  return {id * (a1.trace() * a2.trace()), a2 * a1, a1 * a2, a1 * (-a2.trace()), a2 * (-a1.trace()),
          id * (-(a1 * a2).trace())};
}

}  // namespace

std::vector<Scalar> charpoly_diagrammatic(const Matrix& a, const eval::EvalOptions& options) {
  require(a.square() && a.rows() > 0, "charpoly needs a non-empty square matrix");
  const int n = static_cast<int>(a.rows());
  const Dimension dim(n);
  MatrixBinding b(dim);
  b.bind_matrix("A", a);
  std::vector<Scalar> c(n + 1);
  for (int i = 0; i <= n; ++i) {
    const Scalar value = eval::evaluate_closed(library::char_coeff_diagram(dim, i, "A"), b, options);
    c[i] = sign_power(i + n / 2) * value / (factorial(i) * factorial(n - i));
  }
  return c;
}

bool symmetrizer_sum_check(int k, const MatrixBinding& binding, const std::string& a,
                           const eval::EvalOptions& options) {
  const Dimension dim = binding.dimension();
  require(k >= 0, "k must be non-negative");
  const Matrix lhs = algebra::sum_matrix(library::ch_diagram(dim, repeated(a, k)), binding, options);
  Matrix rhs(lhs.rows(), lhs.cols());
  for (int i = 0; i <= k; ++i) {
    const Scalar closed =
        eval::evaluate_closed(library::closed_antisym_loops(dim, repeated(a, k - i)), binding, options);
    const Scalar coeff = sign_power(i) * factorial(k) / factorial(k - i);
    rhs += algebra::term_matrix(library::strand(dim, repeated(a, i)), binding, options) * (coeff * closed);
  }
  return lhs == rhs;
}

bool det_sum_check(const MatrixBinding& binding, const std::string& a, const std::string& b,
                   const eval::EvalOptions& options) {
  const Dimension dim = binding.dimension();
  const int n = dim.value();
  Scalar total = 0;
  for (int i = 0; i <= n; ++i) {
    total += eval::evaluate_closed(library::det_sum_term(dim, i, a, b), binding, options) /
             (factorial(i) * factorial(n - i));
  }
  total *= sign_power(n / 2);
  return total == bareiss_determinant(binding.matrix(a) + binding.matrix(b));
}

std::optional<std::string> multiplicity_check(const TraceDiagram& diagram, const std::string& v1,
                                              const std::string& v2, const MatrixBinding& binding) {
  std::vector<HalfEdge> shared;
  std::optional<std::vector<std::string>> marking;
  for (const auto& [id, e] : diagram.edges()) {
    if (!e.tail || !e.head) continue;
    const bool forward = e.tail->vertex == v1 && e.head->vertex == v2;
    const bool backward = e.tail->vertex == v2 && e.head->vertex == v1;
    if (!forward && !backward) continue;
    if (marking && *marking != e.marking) throw DiagramError("shared edges carry different markings");
    marking = e.marking;
    shared.push_back(HalfEdge{id, forward ? End::Tail : End::Head});
  }
  const auto leaves = diagram.open_leaves();
  const int n = diagram.n();
  std::size_t total = 1;
  for (std::size_t i = 0; i < leaves.size(); ++i) total *= static_cast<std::size_t>(n);
  const Scalar multiplicity = factorial(static_cast<unsigned>(shared.size()));
  for (std::size_t idx = 0; idx < total; ++idx) {
    const auto labels = eval::basis_labels(idx, leaves.size(), n);
    LeafColoring gamma;
    for (std::size_t i = 0; i < leaves.size(); ++i) gamma.labels[leaves[i]] = labels[i];
    Scalar all = 0;
    Scalar ordered = 0;
    eval::for_each_coloring(diagram, gamma, [&](const Coloring& c) {
      const Scalar term = eval::signature(diagram, c) * eval::coefficient(diagram, c, binding);
      all += term;
      bool increasing = true;
      for (std::size_t j = 1; j < shared.size(); ++j) increasing = increasing && c.label(shared[j - 1]) < c.label(shared[j]);
      if (increasing) ordered += term;
    });
    if (all != multiplicity * ordered) {
      std::ostringstream os;
      os << "leaf coloring";
      for (std::size_t i = 0; i < leaves.size(); ++i) os << " " << leaves[i] << "=" << labels[i];
      os << ": weight " << tracediag::to_string(all) << " vs " << tracediag::to_string(multiplicity) << " * "
         << tracediag::to_string(ordered);
      return os.str();
    }
  }
  return std::nullopt;
}

Matrix polarize(const MatrixFunction& tau, int k, const std::vector<Matrix>& matrices) {
  require(k >= 1 && static_cast<int>(matrices.size()) == k, "polarize needs exactly k matrices");
  const std::size_t d = matrices.front().rows();
  Matrix total;
  bool first = true;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    Matrix s(d, d);
    int size = 0;
    for (int i = 0; i < k; ++i) {
      if (mask & (1u << i)) {
        s += matrices[i];
        ++size;
      }
    }
    Matrix term = tau(s) * sign_power(k - size);
    if (first) {
      total = std::move(term);
      first = false;
    } else {
      total += term;
    }
  }
  // The empty subset contributes tau(0), which vanishes for homogeneous tau of degree k >= 1.
  return total * (Scalar(1) / factorial(k));
}

bool homogeneous_of_degree(const MatrixFunction& tau, int k, const Matrix& sample) {
  Scalar scale = 1;
  for (int i = 0; i < k; ++i) scale *= 2;
  return tau(sample * Scalar(2)) == tau(sample) * scale;
}

Matrix cayley_hamilton_polynomial(const Matrix& a, int degree) {
  return matrix_polynomial(charpoly_trace_form(a, degree), a);
}

VerificationReport verify_trace(const TrialConfig& cfg) {
  const Dimension dim(cfg.dim);
  const auto opt = inner(cfg);
  return run_trials("trace", cfg, cfg.trials, [&](Rng& rng, std::size_t) {
    MatrixBinding b(dim);
    b.bind_matrix("A", random_int_matrix(rng, cfg.dim));
    b.bind_matrix("B", random_int_matrix(rng, cfg.dim));
    TrialOutcome o;
    o.binding = bindings_text(b);
    const Scalar t1 = eval::evaluate_closed(library::trace_loop(dim, {"A"}), b, opt);
    if (t1 != b.matrix("A").trace()) fail(o, scalar_mismatch("tr(A)", t1, b.matrix("A").trace()));
    const Scalar t2 = eval::evaluate_closed(library::trace_loop(dim, {"A", "B"}), b, opt);
    const Scalar want = (b.matrix("A") * b.matrix("B")).trace();
    if (t2 != want) fail(o, scalar_mismatch("tr(AB)", t2, want));
    return o;
  });
}

VerificationReport verify_det_diagram(const TrialConfig& cfg) {
  const Dimension dim(cfg.dim);
  const auto opt = inner(cfg);
  const auto diagram = library::determinant_diagram(dim, "A");
  const Scalar constant = sign_power(cfg.dim / 2) * factorial(cfg.dim);
  return run_trials("det-diagram", cfg, cfg.trials, [&](Rng& rng, std::size_t) {
    MatrixBinding b(dim);
    b.bind_matrix("A", random_int_matrix(rng, cfg.dim));
    TrialOutcome o;
    o.binding = bindings_text(b);
    const Scalar got = eval::evaluate_closed(diagram, b, opt);
    const Scalar want = constant * bareiss_determinant(b.matrix("A"));
    if (got != want) fail(o, scalar_mismatch("diagram value", got, want));
    return o;
  });
}

VerificationReport verify_antisym_collapse(const TrialConfig& cfg) {
  const Dimension dim(cfg.dim);
  const auto opt = inner(cfg);
  return run_trials("antisym-collapse", cfg, 1, [&](Rng&, std::size_t) {
    TrialOutcome o;
    o.binding = "(none)";
    const Matrix m = algebra::sum_matrix(library::antisymmetrizer(dim, cfg.dim + 1), MatrixBinding(dim), opt);
    if (!m.is_zero()) fail(o, residual_text(m, "antisymmetrizer on n+1 strands"));
    return o;
  });
}

VerificationReport verify_cayley_hamilton(const TrialConfig& cfg) {
  const int n = cfg.dim;
  const Dimension dim(n);
  const auto opt = inner(cfg);
  const auto ch = library::ch_diagram(dim, repeated("A", n));
  return run_trials("ch", cfg, cfg.trials, [&](Rng& rng, std::size_t) {
    MatrixBinding b(dim);
    const Matrix a = random_int_matrix(rng, n);
    b.bind_matrix("A", a);
    TrialOutcome o;
    o.binding = bindings_text(b);
    const Matrix m = algebra::sum_matrix(ch, b, opt);
    if (!m.is_zero()) fail(o, residual_text(m, "ch diagram"));

    const auto c = charpoly_oracle(a);
    Matrix expansion(n, n);
    for (int i = 0; i <= n; ++i) {
      const Scalar closed = eval::evaluate_closed(library::closed_antisym_loops(dim, repeated("A", n - i)), b, opt);
      const Scalar coeff = sign_power(i) * factorial(n) / factorial(n - i) * closed;
      if (coeff != factorial(n) * c[i]) {
        fail(o, scalar_mismatch("coefficient of A^" + std::to_string(i), coeff, factorial(n) * c[i]));
      }
      expansion += a.power(i) * coeff;
    }
    if (!(expansion == m)) fail(o, residual_text(expansion - m, "expansion vs ch diagram"));
    const Matrix oracle_poly = matrix_polynomial(c, a) * factorial(n);
    if (!(oracle_poly == m)) fail(o, residual_text(oracle_poly - m, "n! sum c_i A^i vs ch diagram"));

    if (n == 2) {
      const auto id = Matrix::identity(2);
      const Scalar t = a.trace();
      const std::vector<Matrix> expected{id * (t * t), id * (-(a * a).trace()), a * (-t), a * (-t), a * a, a * a};
      if (!same_multiset(term_matrices(ch, b, opt), expected)) fail(o, "the six summands do not match");
      const Matrix regrouped = (a * a - a * t + id * bareiss_determinant(a)) * Scalar(2);
      if (!(regrouped == m)) fail(o, residual_text(regrouped - m, "2(A^2 - tr(A)A + det(A)I)"));
    }
    return o;
  });
}

VerificationReport verify_generalized_ch(const TrialConfig& cfg) {
  const int n = cfg.dim;
  const Dimension dim(n);
  const auto opt = inner(cfg);
  const auto labels = numbered_labels("A", n);
  const auto ch = library::ch_diagram(dim, labels);
  return run_trials("ch-general", cfg, cfg.trials, [&](Rng& rng, std::size_t) {
    MatrixBinding b(dim);
    for (const auto& l : labels) b.bind_matrix(l, random_int_matrix(rng, n));
    TrialOutcome o;
    o.binding = bindings_text(b);
    const Matrix m = algebra::sum_matrix(ch, b, opt);
    if (!m.is_zero()) fail(o, residual_text(m, "ch diagram"));
    if (n == 2) {
      const auto expected = six_terms(b.matrix("A1"), b.matrix("A2"));
      if (!same_multiset(term_matrices(ch, b, opt), expected)) fail(o, "the six summands do not match");
      const Matrix classical = sum_of(expected);
      if (!classical.is_zero()) fail(o, residual_text(classical, "six-term identity"));
    }
    return o;
  });
}

VerificationReport verify_charpoly(const TrialConfig& cfg) {
  const int n = cfg.dim;
  const auto opt = inner(cfg);
  return run_trials("charpoly", cfg, cfg.trials, [&](Rng& rng, std::size_t) {
    const Matrix a = random_int_matrix(rng, n);
    TrialOutcome o;
    o.binding = "A=" + inline_matrix(a);
    const auto diag = charpoly_diagrammatic(a, opt);
    const auto oracle = charpoly_oracle(a);
    for (int i = 0; i <= n; ++i) {
      if (diag[i] != oracle[i]) fail(o, scalar_mismatch("c_" + std::to_string(i), diag[i], oracle[i]));
    }
    for (int lambda = -2; lambda <= 2; ++lambda) {
      const Scalar want = bareiss_determinant(a - Matrix::identity(n) * Scalar(lambda));
      const Scalar got = polynomial_value(oracle, lambda);
      if (got != want) fail(o, scalar_mismatch("oracle at lambda=" + std::to_string(lambda), got, want));
    }
    return o;
  });
}

VerificationReport verify_det_sum(const TrialConfig& cfg) {
  const Dimension dim(cfg.dim);
  const auto opt = inner(cfg);
  return run_trials("det-sum", cfg, cfg.trials, [&](Rng& rng, std::size_t) {
    MatrixBinding b(dim);
    b.bind_matrix("A", random_int_matrix(rng, cfg.dim));
    b.bind_matrix("B", random_int_matrix(rng, cfg.dim));
    TrialOutcome o;
    o.binding = bindings_text(b);
    if (!det_sum_check(b, "A", "B", opt)) fail(o, "det(A+B) differs from the grouped diagram sum");
    return o;
  });
}

VerificationReport verify_symmetrizer_sum(const TrialConfig& cfg) {
  const Dimension dim(cfg.dim);
  const auto opt = inner(cfg);
  return run_trials("symmetrizer-sum", cfg, cfg.trials, [&](Rng& rng, std::size_t) {
    MatrixBinding b(dim);
    b.bind_matrix("A", random_int_matrix(rng, cfg.dim));
    TrialOutcome o;
    o.binding = bindings_text(b);
    for (int k = 0; k <= cfg.dim; ++k) {
      if (!symmetrizer_sum_check(k, b, "A", opt)) fail(o, "expansion fails for k=" + std::to_string(k));
    }
    return o;
  });
}

VerificationReport verify_antisym_two_node(const TrialConfig& cfg) {
  const int n = cfg.dim;
  const Dimension dim(n);
  const auto opt = inner(cfg);
  return run_trials("antisym-two-node", cfg, static_cast<std::size_t>(n + 1), [&](Rng&, std::size_t t) {
    const int k = static_cast<int>(t);
    const MatrixBinding b(dim);
    TrialOutcome o;
    o.binding = "k=" + std::to_string(k);
    const auto two_node = library::two_node_antisym(dim, k);
    const Matrix lhs = algebra::sum_matrix(library::antisymmetrizer(dim, k), b, opt);
    const Matrix rhs = algebra::term_matrix(two_node, b, opt) * (sign_power(n / 2) / factorial(n - k));
    if (!(lhs == rhs)) fail(o, residual_text(lhs - rhs, "antisymmetrizer vs two-node"));
    if (auto bad = multiplicity_check(two_node, "vb", "vt", b)) fail(o, *bad);
    return o;
  });
}

VerificationReport verify_multiplicity(const TrialConfig& cfg) {
  const int n = cfg.dim;
  const Dimension dim(n);
  return run_trials("multiplicity", cfg, cfg.trials, [&](Rng& rng, std::size_t) {
    MatrixBinding b(dim);
    b.bind_matrix("A", random_int_matrix(rng, n));
    TrialOutcome o;
    o.binding = bindings_text(b);
    for (int k = 0; k < n; ++k) {
      const auto d = library::two_vertex(dim, k, std::vector<std::vector<std::string>>(n - k, {"A"}));
      if (auto bad = multiplicity_check(d, "vb", "vt", b)) fail(o, "k=" + std::to_string(k) + " " + *bad);
    }
    return o;
  });
}

VerificationReport verify_binor(const TrialConfig& cfg) {
  require(cfg.dim == 3, "binor relation is stated for n = 3");
  const Dimension dim(3);
  const auto opt = inner(cfg);
  return run_trials("binor", cfg, 1, [&](Rng&, std::size_t) {
    const MatrixBinding b(dim);
    TrialOutcome o;
    o.binding = "(none)";
    const auto rel = library::binor_relation(dim);
    const auto exact = algebra::is_relation(rel, b, algebra::RelationMode::ExactOnBinding, opt);
    if (!exact.holds) fail(o, "function matrix " + exact.residual->where + " = " + tracediag::to_string(exact.residual->value));
    const auto all = algebra::is_relation(rel, b, algebra::RelationMode::AllBases, opt);
    if (!all.holds) fail(o, "weights " + all.residual->where + " = " + tracediag::to_string(all.residual->value));
    return o;
  });
}

VerificationReport verify_framing_independence(const TrialConfig& cfg) {
  require(cfg.dim == 3, "framing independence is checked on the binor relation, n = 3");
  const Dimension dim(3);
  const auto opt = inner(cfg);
  const auto rel = algebra::compose(
      library::binor_relation(dim),
      algebra::tensor(FormalSum(library::strand(dim, {"A"})), FormalSum(library::strand(dim, {"B"}))));
  const auto framings = algebra::all_framings(rel.terms().front().diagram.open_leaves());
  auto report = run_trials("framing-independence", cfg, cfg.trials, [&](Rng& rng, std::size_t) {
    MatrixBinding b(dim);
    b.bind_matrix("A", random_int_matrix(rng, 3));
    b.bind_matrix("B", random_int_matrix(rng, 3));
    TrialOutcome o;
    o.binding = bindings_text(b);
    for (const auto& f : framings) {
      const auto check = algebra::is_relation(algebra::reframe(rel, f), b, algebra::RelationMode::ExactOnBinding, opt);
      if (!check.holds) {
        std::string where = "framing in(";
        for (const auto& l : f.inputs) where += " " + l;
        where += " ) out(";
        for (const auto& l : f.outputs) where += " " + l;
        fail(o, where + " ): entry " + check.residual->where + " = " + tracediag::to_string(check.residual->value));
      }
    }
    return o;
  });
  report.notes.push_back(std::to_string(framings.size()) + " framings per binding");
  return report;
}

VerificationReport verify_functoriality(const TrialConfig& cfg) {
  const int n = cfg.dim;
  const Dimension dim(n);
  const auto opt = inner(cfg);
  const std::vector<std::string> labels{"A", "B"};
  return run_trials("functoriality", cfg, cfg.trials, [&](Rng& rng, std::size_t) {
    MatrixBinding b(dim);
    b.bind_matrix("A", random_int_matrix(rng, n));
    b.bind_matrix("B", random_int_matrix(rng, n));
    const auto k = static_cast<std::size_t>(std::uniform_int_distribution<int>(0, std::min(n, 3))(rng));
    const auto bottom = random_framed_diagram(rng, dim, k, labels);
    const auto top = random_framed_diagram(rng, dim, bottom.output_arity(), labels);
    const auto right = random_framed_diagram(rng, dim, 1, labels);
    TrialOutcome o;
    o.binding = bindings_text(b);
    const Matrix mt = algebra::term_matrix(top, b, opt);
    const Matrix mb = algebra::term_matrix(bottom, b, opt);
    const Matrix composed = algebra::term_matrix(algebra::compose(top, bottom), b, opt);
    const Matrix product = mt * mb;
    if (!(composed == product)) fail(o, residual_text(composed - product, "compose vs product"));
    const Matrix tensored = algebra::term_matrix(algebra::tensor(bottom, right), b, opt);
    const Matrix kron = kronecker(mb, algebra::term_matrix(right, b, opt));
    if (!(tensored == kron)) fail(o, residual_text(tensored - kron, "tensor vs Kronecker"));
    return o;
  });
}

VerificationReport verify_vector(const TrialConfig& cfg) {
  require(cfg.dim == 3, "vector identities are stated for n = 3");
  const Dimension dim(3);
  const auto opt = inner(cfg);
  return run_trials("vector", cfg, cfg.trials, [&](Rng& rng, std::size_t) {
    MatrixBinding b(dim);
    for (const char* l : {"u", "v", "w", "x"}) b.bind_vector(l, random_rational_vector(rng, 3));
    TrialOutcome o;
    o.binding = bindings_text(b);
    const auto& u = b.vector("u");
    const auto& v = b.vector("v");
    const auto& w = b.vector("w");
    const auto& x = b.vector("x");
    const Matrix cross = algebra::term_matrix(library::cross_product(dim, "u", "v"), b, opt);
    const Vector want = cross3(u, v);
    for (int i = 0; i < 3; ++i) {
      if (cross(i, 0) != want[i]) fail(o, scalar_mismatch("(u x v)_" + std::to_string(i + 1), cross(i, 0), want[i]));
    }
    const Scalar d = eval::evaluate_closed(library::dot_product(dim, "u", "v"), b, opt);
    if (d != dot(u, v)) fail(o, scalar_mismatch("u . v", d, dot(u, v)));
    const Scalar cdc = eval::evaluate_closed(library::cross_dot_cross(dim, "u", "v", "w", "x"), b, opt);
    const Scalar classical = dot(cross3(u, v), cross3(w, x));
    if (cdc != classical) fail(o, scalar_mismatch("(u x v) . (w x x)", cdc, classical));
    if (classical != dot(u, w) * dot(v, x) - dot(u, x) * dot(v, w)) fail(o, "classical four-vector identity fails");
    const Scalar rel = eval::evaluate_closed(library::four_vector_relation(dim, "u", "v", "w", "x"), b, opt);
    if (rel != 0) fail(o, scalar_mismatch("four-vector relation", rel, 0));
    return o;
  });
}

VerificationReport verify_fricke(const TrialConfig& cfg) {
  require(cfg.dim == 2, "the Fricke relation is stated for n = 2");
  const Dimension dim(2);
  const auto opt = inner(cfg);
  const auto open = library::fricke_diagrams(dim, "A", "B", "C");
  const auto closed = library::fricke_trace(dim, "A", "B", "C");
  return run_trials("fricke", cfg, cfg.trials, [&](Rng& rng, std::size_t) {
    MatrixBinding b(dim);
    for (const char* l : {"A", "B", "C"}) b.bind_matrix(l, random_rational_matrix(rng, 2));
    TrialOutcome o;
    o.binding = bindings_text(b);
    const auto& a = b.matrix("A");
    const auto& bb = b.matrix("B");
    const auto& c = b.matrix("C");
    const Scalar lhs = (a * bb * c).trace() + (a * c * bb).trace();
    const Scalar rhs = (a * bb).trace() * c.trace() + a.trace() * (bb * c).trace() + bb.trace() * (c * a).trace() -
                       a.trace() * bb.trace() * c.trace();
    if (lhs != rhs) fail(o, scalar_mismatch("trace identity", lhs, rhs));
    const Scalar value = eval::evaluate_closed(closed, b, opt);
    if (value != 0) fail(o, scalar_mismatch("traced diagram sum", value, 0));
    const Matrix m = algebra::sum_matrix(open, b, opt);
    if (!m.is_zero()) fail(o, residual_text(m, "open diagram sum"));
    return o;
  });
}

VerificationReport verify_fast_path(const TrialConfig& cfg) {
  require(cfg.dim >= 1, "dimension must be positive");
  const std::vector<std::string> labels{"A", "B", "C"};
  return run_trials("fast-path", cfg, cfg.trials, [&](Rng& rng, std::size_t) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    const int n = pick(1, cfg.dim);
    const Dimension dim(n);
    MatrixBinding b(dim);
    for (const auto& l : labels) b.bind_matrix(l, random_rational_matrix(rng, n));
    b.bind_vector("u", random_rational_vector(rng, n));
    b.bind_vector("v", random_rational_vector(rng, n));
    auto word = [&](int max_len) {
      std::vector<std::string> w;
      for (int i = pick(0, max_len); i > 0; --i) w.push_back(labels[pick(0, 2)]);
      return w;
    };
    DiagramBuilder builder(dim);
    const int loops = pick(1, 3);
    for (int i = 1; i <= loops; ++i) builder.loop("e" + std::to_string(i), word(3));
    const int pairs = pick(0, 1);
    for (int i = 1; i <= pairs; ++i) {
      const std::string p = "p" + std::to_string(i);
      builder.vector_leaf(p + "a", "u").vector_leaf(p + "b", "v").edge(p, {p + "a", 0}, {p + "b", 0}, word(2));
    }
    const TraceDiagram d = builder.build();
    TrialOutcome o;
    o.binding = "n=" + std::to_string(n) + " " + bindings_text(b);
    const Scalar fast = eval::evaluate_fast_closed(d, b);
    const Scalar slow = eval::evaluate_closed(d, b, inner(cfg));
    if (fast != slow) fail(o, scalar_mismatch("fast path", fast, slow));
    return o;
  });
}

PolarizationReport polarization_check(const TrialConfig& cfg) {
  const int n = cfg.dim;
  require(n >= 1, "dimension must be positive");
  const auto start = Clock::now();
  const auto opt = inner(cfg);
  const auto labels = numbered_labels("A", n);
  const MatrixFunction tau = [n](const Matrix& a) { return cayley_hamilton_polynomial(a, n); };

  struct Sample {
    bool zero_ok = true;
    bool diagonal_ok = true;
    bool homogeneous = true;
    std::optional<bool> six_ok;
    std::optional<Scalar> ratio;
    bool proportional = true;
    std::string binding;
    std::string problem;
  };

  auto samples = run_indexed<Sample>(cfg.trials, cfg.jobs, [&](std::size_t t) {
    Rng rng = trial_rng(cfg.seed, t);
    Sample s;
    for (int d : {n, n + 1}) {
      const Dimension dim(d);
      MatrixBinding b(dim);
      std::vector<Matrix> as;
      for (const auto& l : labels) {
        as.push_back(random_int_matrix(rng, d));
        b.bind_matrix(l, as.back());
      }
      s.binding += (s.binding.empty() ? "" : " | ") + ("d=" + std::to_string(d) + " " + bindings_text(b));
      const Matrix polar = polarize(tau, n, as);
      const Matrix diagram = algebra::sum_matrix(library::ch_diagram(dim, labels), b, opt);
      if (n == 2) {
        const bool ok = sum_of(six_terms(as[0], as[1])) == polar * Scalar(2);
        s.six_ok = s.six_ok.value_or(true) && ok;
        if (!ok) s.problem = "six-term identity != 2 * polar form in d=" + std::to_string(d);
      }
      if (d == n) {
        s.zero_ok = polar.is_zero() && diagram.is_zero();
        if (!s.zero_ok) s.problem = "nonzero in d=n: " + residual_text(polar.is_zero() ? diagram : polar);
        continue;
      }
      if (t == 0) s.homogeneous = homogeneous_of_degree(tau, n, as[0]);
      s.diagonal_ok = polarize(tau, n, std::vector<Matrix>(n, as[0])) == tau(as[0]);
      if (!s.diagonal_ok) s.problem = "polar form on the diagonal differs from tau";
      if (const auto r = algebra::largest_entry(diagram)) {
        s.ratio = polar(r->row, r->col) / r->value;
        s.proportional = polar == diagram * *s.ratio;
        if (!s.proportional) s.problem = "polar form is not proportional to the diagram";
      } else {
        s.proportional = polar.is_zero();
      }
    }
    return s;
  });

  PolarizationReport rep;
  rep.dimension = n;
  rep.trials = cfg.trials;
  rep.zero_sets_agree = true;
  rep.homogeneous = true;
  rep.diagonal_ok = true;
  rep.constant_consistent = true;
  for (std::size_t t = 0; t < samples.size(); ++t) {
    const auto& s = samples[t];
    rep.zero_sets_agree = rep.zero_sets_agree && s.zero_ok;
    rep.homogeneous = rep.homogeneous && s.homogeneous;
    rep.diagonal_ok = rep.diagonal_ok && s.diagonal_ok;
    if (s.six_ok) rep.six_term_ok = rep.six_term_ok.value_or(true) && *s.six_ok;
    bool consistent = s.proportional;
    if (s.ratio) {
      if (!rep.constant) rep.constant = *s.ratio;
      consistent = consistent && *rep.constant == *s.ratio;
    }
    rep.constant_consistent = rep.constant_consistent && consistent;
    if (!s.problem.empty() || !consistent) {
      rep.witnesses.push_back(Witness{cfg.seed, t, s.binding,
                                      s.problem.empty() ? "ratio " + tracediag::to_string(*s.ratio) : s.problem});
    }
  }
  if (!rep.constant) rep.constant_consistent = false;
  rep.seconds = seconds_since(start);
  return rep;
}

PfaffianScan pfaffian_scan(const TrialConfig& cfg) {
  const int n = cfg.dim;
  require(n >= 2 && n % 2 == 0, "Pfaffian scan needs an even dimension");
  const auto start = Clock::now();
  const Dimension dim(n);
  const auto opt = inner(cfg);
  PfaffianScan scan;
  scan.dimension = n;
  std::vector<std::pair<std::size_t, Matrix>> accepted;
  const std::size_t max_draws = cfg.trials * 10 + 10;
  for (std::size_t t = 0; t < max_draws && accepted.size() < cfg.trials; ++t) {
    Rng rng = trial_rng(cfg.seed, t);
    Matrix a = random_skew_matrix(rng, n);
    if (sgn(pfaffian_oracle(a)) == 0) {
      ++scan.skipped;
      continue;
    }
    accepted.emplace_back(t, std::move(a));
  }
  const auto diagram = library::pfaffian_diagram(dim, "A");
  scan.samples = run_indexed<PfaffianSample>(accepted.size(), cfg.jobs, [&](std::size_t i) {
    MatrixBinding b(dim);
    b.bind_matrix("A", accepted[i].second);
    PfaffianSample s;
    s.trial = accepted[i].first;
    s.pfaffian = pfaffian_oracle(accepted[i].second);
    s.diagram_value = eval::evaluate_closed(diagram, b, opt);
    s.ratio = s.diagram_value / s.pfaffian;
    return s;
  });
  scan.consistent = !scan.samples.empty();
  for (const auto& s : scan.samples) scan.consistent = scan.consistent && s.ratio == scan.samples.front().ratio;
  if (scan.consistent) scan.constant = scan.samples.front().ratio;
  scan.seconds = seconds_since(start);
  return scan;
}

const std::vector<IdentityInfo>& identities() {
  static const std::vector<IdentityInfo> list{
      {"trace", 3, "free loop evaluates to the trace"},
      {"det-diagram", 3, "two-vertex diagram gives (-1)^floor(n/2) n! det(A)"},
      {"antisym-collapse", 2, "antisymmetrizer on n+1 strands is zero"},
      {"ch", 2, "Cayley-Hamilton diagram vanishes and matches n! sum c_i A^i"},
      {"ch-general", 2, "multilinear Cayley-Hamilton diagram vanishes"},
      {"charpoly", 3, "characteristic coefficients from diagrams match the oracle"},
      {"det-sum", 3, "det(A+B) as a grouped sum of two-vertex diagrams"},
      {"symmetrizer-sum", 2, "antisymmetrizer with closed loops expands in powers of A"},
      {"antisym-two-node", 3, "antisymmetrizer equals a scaled two-vertex diagram"},
      {"multiplicity", 3, "shared edges contribute a factorial multiplicity"},
      {"binor", 3, "binor relation vanishes"},
      {"framing-independence", 3, "binor relation vanishes under every framing"},
      {"functoriality", 2, "compose and tensor match matrix and Kronecker products"},
      {"vector", 3, "cross and dot product diagrams and the four-vector identity"},
      {"fricke", 2, "Fricke trace relation for 2x2 matrices"},
      {"fast-path", 4, "vertex-free closed diagrams: fast evaluation equals enumeration"},
  };
  return list;
}

VerificationReport run_identity(const std::string& name, const TrialConfig& cfg) {
  using Driver = VerificationReport (*)(const TrialConfig&);
  static const std::map<std::string, Driver> drivers{
      {"trace", verify_trace},
      {"det-diagram", verify_det_diagram},
      {"antisym-collapse", verify_antisym_collapse},
      {"ch", verify_cayley_hamilton},
      {"ch-general", verify_generalized_ch},
      {"charpoly", verify_charpoly},
      {"det-sum", verify_det_sum},
      {"symmetrizer-sum", verify_symmetrizer_sum},
      {"antisym-two-node", verify_antisym_two_node},
      {"multiplicity", verify_multiplicity},
      {"binor", verify_binor},
      {"framing-independence", verify_framing_independence},
      {"functoriality", verify_functoriality},
      {"vector", verify_vector},
      {"fricke", verify_fricke},
      {"fast-path", verify_fast_path},
  };
  const auto it = drivers.find(name);
  if (it == drivers.end()) throw std::invalid_argument("unknown identity '" + name + "'");
  return it->second(cfg);
}

}  // namespace tracediag::lab
