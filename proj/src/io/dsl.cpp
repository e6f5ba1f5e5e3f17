#include "tracediag/io/dsl.hpp"

#include "tracediag/library/builders.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace tracediag::io {

namespace {

struct Token {
  std::string text;
  int line = 0;
  int col = 0;
  bool punct = false;
};

using Statement = std::vector<Token>;

bool is_punct(char c) { return c == '(' || c == ')' || c == ',' || c == '=' || c == '*'; }

/// Splits text into statements of tokens. Newlines and ';' end statements, '#' starts a comment.
std::vector<Statement> tokenize(std::string_view text) {
  std::vector<Statement> out;
  Statement cur;
  int line = 1;
  int col = 1;
  int depth = 0;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(std::move(cur));
    cur.clear();
  };
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      if (depth == 0) flush();
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == ';') {
      if (depth != 0) throw ParseError(line, col, "';' inside parentheses");
      flush();
      ++i;
      ++col;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    if (is_punct(c)) {
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) throw ParseError(line, col, "unbalanced ')'");
        --depth;
      }
      cur.push_back(Token{std::string(1, c), line, col, true});
      ++i;
      ++col;
      continue;
    }
    Token t{"", line, col, false};
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && !is_punct(text[i]) &&
           text[i] != ';' && text[i] != '#') {
      t.text += text[i];
      ++i;
      ++col;
    }
    cur.push_back(std::move(t));
  }
  if (depth != 0) throw ParseError(line, col, "unbalanced '('");
  flush();
  return out;
}

[[noreturn]] void error_at(const Token& t, const std::string& msg) { throw ParseError(t.line, t.col, msg); }

bool is_word(const Statement& s, std::size_t i, const std::string& text) {
  return i < s.size() && !s[i].punct && s[i].text == text;
}

const Token& word_at(const Statement& s, std::size_t i, const std::string& what) {
  if (i >= s.size()) error_at(s.back(), "expected " + what + " after '" + s.back().text + "'");
  if (s[i].punct) error_at(s[i], "expected " + what + ", got '" + s[i].text + "'");
  return s[i];
}

void expect_end(const Statement& s, std::size_t i) {
  if (i < s.size()) error_at(s[i], "unexpected '" + s[i].text + "'");
}

int parse_positive(const Token& t) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(t.text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != t.text.size() || v < 1) error_at(t, "expected a positive integer, got '" + t.text + "'");
  return v;
}

/// Words from position i to the end, used for marking words and id lists.
std::vector<std::string> words_from(const Statement& s, std::size_t i) {
  std::vector<std::string> out;
  for (; i < s.size(); ++i) out.push_back(word_at(s, i, "an identifier").text);
  return out;
}

/// Parses `[mark L1 L2 ...]` starting at i.
std::vector<std::string> marking_from(const Statement& s, std::size_t i) {
  if (i == s.size()) return {};
  if (!is_word(s, i, "mark")) error_at(s[i], "expected 'mark', got '" + s[i].text + "'");
  auto word = words_from(s, i + 1);
  if (word.empty()) error_at(s[i], "'mark' needs at least one label");
  return word;
}

/// Text of a builtin reference `builtin:name(args)` starting at i; advances i past it.
std::string builtin_text(const Statement& s, std::size_t& i) {
  const Token& head = word_at(s, i, "a builtin");
  if (head.text.rfind("builtin:", 0) != 0) error_at(head, "expected 'builtin:<name>'");
  std::string text = head.text;
  ++i;
  if (i < s.size() && s[i].punct && s[i].text == "(") {
    text += "(";
    ++i;
    bool first = true;
    while (true) {
      if (i >= s.size()) error_at(s.back(), "unterminated builtin arguments");
      if (s[i].punct && s[i].text == ")") {
        ++i;
        break;
      }
      if (!first) {
        if (!(s[i].punct && s[i].text == ",")) error_at(s[i], "expected ',' or ')'");
        ++i;
        text += ",";
      }
      text += word_at(s, i, "a builtin argument").text;
      ++i;
      first = false;
    }
    text += ")";
  }
  return text;
}

/// Parses `builtin:... [@ dim N]` starting at i and expands it.
FormalSum builtin_from(const Statement& s, std::size_t i, std::optional<Dimension> dim) {
  const Token& at = s[i];
  const std::string spec = builtin_text(s, i);
  if (i < s.size()) {
    if (!is_word(s, i, "@")) error_at(s[i], "expected '@ dim <n>'");
    if (!is_word(s, i + 1, "dim")) error_at(s[std::min(i + 1, s.size() - 1)], "expected 'dim' after '@'");
    dim = Dimension(parse_positive(word_at(s, i + 2, "a dimension")));
    expect_end(s, i + 3);
  }
  if (!dim) error_at(at, "builtin needs a dimension: add 'dim <n>' or '@ dim <n>'");
  try {
    return library::builtin(spec, *dim);
  } catch (const DiagramError& e) {
    error_at(at, e.what());
  }
}

struct CilItem {
  std::optional<std::string> edge;  // nullopt for '_'
  std::optional<End> end;
  Token where;
};

struct VertexDecl {
  Token where;
  bool internal = false;
  std::optional<std::string> vec;
  std::vector<CilItem> cil;
};

struct EdgeRef {
  Token where;
  std::string vertex;
};

struct EdgeDecl {
  Token where;
  std::optional<EdgeRef> tail;
  std::optional<EdgeRef> head;
  std::vector<std::string> marking;
};

/// Accumulates the statements of one diagram.
class DiagramDraft {
 public:
  explicit DiagramDraft(std::optional<Dimension> dim) : dim_(dim) {}

  bool empty() const { return vertices_.empty() && edges_.empty() && !inputs_ && !outputs_ && !builtin_; }
  bool has_builtin() const { return builtin_.has_value(); }

  void set_dim(const Statement& s) {
    if (!entities_empty()) error_at(s[0], "'dim' must precede vertices and edges");
    dim_ = Dimension(parse_positive(word_at(s, 1, "a dimension")));
    expect_end(s, 2);
  }

  void add_statement(const Statement& s) {
    const std::string& kw = s[0].text;
    if (builtin_) error_at(s[0], "a builtin diagram cannot be combined with other statements");
    if (kw == "dim") {
      set_dim(s);
    } else if (kw == "vertex") {
      add_vertex(s);
    } else if (kw == "edge") {
      add_edge(s);
    } else if (kw == "loop") {
      const Token& id = word_at(s, 1, "an edge id");
      add_edge_decl(id, EdgeDecl{id, std::nullopt, std::nullopt, marking_from(s, 2)});
    } else if (kw == "inputs" || kw == "outputs") {
      auto& slot = kw == "inputs" ? inputs_ : outputs_;
      if (slot) error_at(s[0], "duplicate '" + kw + "'");
      slot = std::vector<Token>(s.begin() + 1, s.end());
      for (const auto& t : *slot) {
        if (t.punct) error_at(t, "expected a leaf id, got '" + t.text + "'");
      }
    } else if (kw.rfind("builtin:", 0) == 0) {
      if (!entities_empty()) error_at(s[0], "a builtin diagram cannot be combined with other statements");
      builtin_ = builtin_from(s, 0, dim_);
    } else {
      error_at(s[0], "unknown statement '" + kw + "'");
    }
  }

  FormalSum finish(const Token& where) const {
    if (builtin_) return *builtin_;
    if (!dim_) error_at(where, "missing 'dim <n>'");
    return FormalSum(build(where));
  }

 private:
  bool entities_empty() const { return vertices_.empty() && edges_.empty(); }

  void add_vertex(const Statement& s) {
    const Token& id = word_at(s, 1, "a vertex id");
    const Token& kind = word_at(s, 2, "'leaf' or 'internal'");
    VertexDecl v{id, false, std::nullopt, {}};
    if (kind.text == "leaf") {
      if (s.size() > 3) {
        if (!is_word(s, 3, "vec")) error_at(s[3], "expected 'vec <label>'");
        v.vec = word_at(s, 4, "a vector label").text;
        expect_end(s, 5);
      }
    } else if (kind.text == "internal") {
      v.internal = true;
      std::size_t i = 3;
      if (!is_word(s, i, "cil")) error_at(i < s.size() ? s[i] : kind, "expected 'cil(...)'");
      ++i;
      if (i >= s.size() || s[i].text != "(") error_at(s[i - 1], "expected '(' after 'cil'");
      ++i;
      bool first = true;
      while (true) {
        if (i >= s.size()) error_at(s.back(), "unterminated cil list");
        if (s[i].punct && s[i].text == ")") {
          ++i;
          break;
        }
        if (!first) {
          if (!(s[i].punct && s[i].text == ",")) error_at(s[i], "expected ',' or ')'");
          ++i;
        }
        v.cil.push_back(cil_item(word_at(s, i, "an edge end")));
        ++i;
        first = false;
      }
      expect_end(s, i);
    } else {
      error_at(kind, "expected 'leaf' or 'internal', got '" + kind.text + "'");
    }
    if (!vertices_.emplace(id.text, std::move(v)).second) error_at(id, "duplicate vertex '" + id.text + "'");
  }

  static CilItem cil_item(const Token& t) {
    if (t.text == "_") return CilItem{std::nullopt, std::nullopt, t};
    const auto at = t.text.find('@');
    if (at == std::string::npos) return CilItem{t.text, std::nullopt, t};
    const std::string q = t.text.substr(at + 1);
    if (q != "tail" && q != "head") error_at(t, "edge end qualifier must be '@tail' or '@head'");
    return CilItem{t.text.substr(0, at), q == "tail" ? End::Tail : End::Head, t};
  }

  void add_edge(const Statement& s) {
    const Token& id = word_at(s, 1, "an edge id");
    const Token& a = word_at(s, 2, "a tail vertex or 'loop'");
    if (a.text == "loop") {
      add_edge_decl(id, EdgeDecl{id, std::nullopt, std::nullopt, marking_from(s, 3)});
      return;
    }
    const Token& b = word_at(s, 3, "a head vertex");
    add_edge_decl(id, EdgeDecl{id, edge_ref(id, a), edge_ref(id, b), marking_from(s, 4)});
  }

  /// `<vertex>` or `<edge>@<vertex>`.
  static EdgeRef edge_ref(const Token& edge, const Token& t) {
    const auto at = t.text.find('@');
    if (at == std::string::npos) return EdgeRef{t, t.text};
    if (t.text.substr(0, at) != edge.text) error_at(t, "edge end '" + t.text + "' does not belong to edge '" + edge.text + "'");
    return EdgeRef{t, t.text.substr(at + 1)};
  }

  void add_edge_decl(const Token& id, EdgeDecl e) {
    if (!edges_.emplace(id.text, std::move(e)).second) error_at(id, "duplicate edge '" + id.text + "'");
  }

  /// Slot of edge `id`'s `end` at vertex `v`.
  int slot_of(const std::string& id, End end, const EdgeDecl& e, const EdgeRef& ref, const VertexDecl& v) const {
    if (!v.internal) return 0;
    const bool self_loop = e.tail && e.head && e.tail->vertex == e.head->vertex;
    std::vector<int> unqualified;
    for (std::size_t i = 0; i < v.cil.size(); ++i) {
      const auto& item = v.cil[i];
      if (item.edge != id) continue;
      if (item.end == end) return static_cast<int>(i);
      if (!item.end) unqualified.push_back(static_cast<int>(i));
    }
    // A self-loop listed twice without qualifiers: the first occurrence is the tail.
    const std::size_t pick = (self_loop && end == End::Head && unqualified.size() > 1) ? 1 : 0;
    if (self_loop && end == End::Head && unqualified.size() == 1) {
      bool tail_qualified = false;
      for (const auto& item : v.cil) tail_qualified = tail_qualified || (item.edge == id && item.end == End::Tail);
      if (!tail_qualified) error_at(ref.where, "self-loop '" + id + "' must appear twice in the cil list");
    }
    if (pick >= unqualified.size()) {
      error_at(ref.where, "edge '" + id + "' is not listed in the cil of '" + ref.vertex + "'");
    }
    return unqualified[pick];
  }

  TraceDiagram build(const Token&) const {
    DiagramBuilder b(*dim_);
    for (const auto& [id, v] : vertices_) {
      if (v.internal) {
        for (const auto& item : v.cil) {
          if (!item.edge) continue;
          auto it = edges_.find(*item.edge);
          if (it == edges_.end()) error_at(item.where, "unknown edge '" + *item.edge + "' in cil of '" + id + "'");
          const auto& e = it->second;
          const bool touches = (e.tail && e.tail->vertex == id) || (e.head && e.head->vertex == id);
          if (!touches) error_at(item.where, "edge '" + *item.edge + "' does not end at '" + id + "'");
        }
        b.internal(id, static_cast<int>(v.cil.size()));
      } else if (v.vec) {
        b.vector_leaf(id, *v.vec);
      } else {
        b.leaf(id);
      }
    }
    for (const auto& [id, e] : edges_) {
      if (!e.tail) {
        b.loop(id, e.marking);
        continue;
      }
      auto end_of = [&](const EdgeRef& ref, End end) -> EdgeEnd {
        auto it = vertices_.find(ref.vertex);
        // Unknown vertices are left for validate() to report.
        if (it == vertices_.end()) return EdgeEnd{ref.vertex, 0};
        return EdgeEnd{ref.vertex, slot_of(id, end, e, ref, it->second)};
      };
      b.edge(id, end_of(*e.tail, End::Tail), end_of(*e.head, End::Head), e.marking);
    }
    if (inputs_ || outputs_) b.frame(leaf_ids(inputs_), leaf_ids(outputs_));
    return b.build();
  }

  /// Framing ids are leaf vertices; an edge id stands for its unique leaf end.
  std::vector<std::string> leaf_ids(const std::optional<std::vector<Token>>& tokens) const {
    std::vector<std::string> out;
    if (!tokens) return out;
    for (const auto& t : *tokens) {
      if (vertices_.count(t.text)) {
        out.push_back(t.text);
        continue;
      }
      auto it = edges_.find(t.text);
      if (it == edges_.end()) error_at(t, "unknown leaf '" + t.text + "'");
      std::vector<std::string> leaves;
      for (const auto* ref : {&it->second.tail, &it->second.head}) {
        if (!*ref) continue;
        auto v = vertices_.find((*ref)->vertex);
        if (v != vertices_.end() && !v->second.internal) leaves.push_back(v->first);
      }
      if (leaves.size() != 1) error_at(t, "edge '" + t.text + "' does not end at exactly one leaf");
      out.push_back(leaves.front());
    }
    return out;
  }

  std::optional<Dimension> dim_;
  std::map<std::string, VertexDecl> vertices_;
  std::map<std::string, EdgeDecl> edges_;
  std::optional<std::vector<Token>> inputs_;
  std::optional<std::vector<Token>> outputs_;
  std::optional<FormalSum> builtin_;
};

bool is_term(const Statement& s) {
  if (s.size() < 3 || s[0].punct || !(s[1].punct && s[1].text == "*")) return false;
  try {
    parse_scalar(s[0].text);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

struct FileParse {
  DiagramSet set;
  std::optional<Dimension> dim;
  std::vector<std::pair<Token, FormalSum>> terms;
};

constexpr int kMaxImportDepth = 16;

FileParse parse_file(std::string_view text, const ImportResolver& resolver, std::optional<Dimension> dim,
                     bool allow_terms, int depth) {
  FileParse out;
  out.dim = dim;
  DiagramDraft loose(dim);
  Token loose_at{"", 1, 1, false};
  std::optional<std::pair<Token, DiagramDraft>> block;

  auto define = [&](const Token& name, FormalSum sum) {
    if (!out.set.emplace(name.text, std::move(sum)).second) error_at(name, "duplicate diagram '" + name.text + "'");
  };
  auto resolve = [&](const Token& ref, std::size_t i, const Statement& s) -> FormalSum {
    if (ref.text.rfind("builtin:", 0) == 0) return builtin_from(s, i, out.dim);
    expect_end(s, i + 1);
    auto it = out.set.find(ref.text);
    if (it == out.set.end()) error_at(ref, "unknown diagram '" + ref.text + "'");
    return it->second;
  };

  for (const auto& s : tokenize(text)) {
    const Token& head = s[0];
    if (head.punct) error_at(head, "unexpected '" + head.text + "'");
    if (block) {
      if (head.text == "end") {
        expect_end(s, 1);
        define(block->first, block->second.finish(block->first));
        block.reset();
      } else if (head.text == "diagram" || head.text == "import") {
        error_at(head, "'" + head.text + "' inside a diagram block (missing 'end'?)");
      } else {
        block->second.add_statement(s);
      }
      continue;
    }
    if (head.text == "diagram") {
      const Token& name = word_at(s, 1, "a diagram name");
      if (s.size() > 2) {
        if (!(s[2].punct && s[2].text == "=")) error_at(s[2], "expected '=' or end of line");
        define(name, resolve(word_at(s, 3, "a builtin or diagram name"), 3, s));
      } else {
        block.emplace(name, DiagramDraft(out.dim));
      }
    } else if (head.text == "import") {
      const Token& path = word_at(s, 1, "a path");
      expect_end(s, 2);
      if (!resolver) error_at(path, "imports are not available here");
      if (depth >= kMaxImportDepth) error_at(path, "imports nested too deeply (cycle?)");
      std::string content;
      try {
        content = resolver(path.text);
      } catch (const std::exception& e) {
        error_at(path, "cannot import '" + path.text + "': " + e.what());
      }
      FileParse sub;
      try {
        sub = parse_file(content, resolver, out.dim, false, depth + 1);
      } catch (const ParseError& e) {
        error_at(path, "in '" + path.text + "': " + e.what());
      }
      for (auto& [name, sum] : sub.set) {
        if (!out.set.emplace(name, std::move(sum)).second) error_at(path, "import redefines diagram '" + name + "'");
      }
    } else if (is_term(s)) {
      if (!allow_terms) error_at(head, "relation terms are only allowed in relation files");
      const Scalar coeff = parse_scalar(head.text);
      out.terms.emplace_back(head, scale(coeff, resolve(word_at(s, 2, "a diagram reference"), 2, s)));
    } else if (head.text == "dim" && loose.empty()) {
      word_at(s, 1, "a dimension");
      out.dim = Dimension(parse_positive(s[1]));
      expect_end(s, 2);
      loose = DiagramDraft(out.dim);
      loose_at = head;
    } else {
      if (loose.empty()) loose_at = head;
      loose.add_statement(s);
    }
  }
  if (block) error_at(block->first, "diagram '" + block->first.text + "' is missing 'end'");
  if (!loose.empty()) define(Token{"main", loose_at.line, loose_at.col, false}, loose.finish(loose_at));
  return out;
}

}  // namespace

ImportResolver file_resolver(std::filesystem::path base) {
  return [base = std::move(base)](const std::string& path) {
    const auto full = std::filesystem::path(path).is_absolute() ? std::filesystem::path(path) : base / path;
    std::ifstream in(full);
    if (!in) throw std::runtime_error("cannot open " + full.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
}

DiagramSet parse_diagram_set(std::string_view text, const ImportResolver& resolver, std::optional<Dimension> default_dim) {
  return parse_file(text, resolver, default_dim, false, 0).set;
}

TraceDiagram parse_diagram(std::string_view text, std::optional<Dimension> default_dim) {
  const auto set = parse_diagram_set(text, {}, default_dim);
  if (set.size() != 1) throw ParseError(1, 1, "expected exactly one diagram, found " + std::to_string(set.size()));
  const auto& sum = set.begin()->second;
  if (sum.terms().size() != 1 || sum.terms().front().coefficient != 1) {
    throw ParseError(1, 1, "'" + set.begin()->first + "' is a formal sum, not a single diagram");
  }
  return sum.terms().front().diagram;
}

namespace {

void write_body(std::ostream& os, const TraceDiagram& d, const std::string& indent) {
  os << indent << "dim " << d.n() << "\n";
  for (const auto& [id, v] : d.vertices()) {
    os << indent << "vertex " << id;
    if (v.is_leaf()) {
      os << " leaf";
      if (v.vector_label) os << " vec " << *v.vector_label;
    } else {
      os << " internal cil(";
      const auto slots = d.ciliation(id);
      for (std::size_t i = 0; i < slots.size(); ++i) {
        if (i) os << ", ";
        if (!slots[i]) {
          os << "_";
          continue;
        }
        const auto& e = d.edges().at(slots[i]->edge);
        os << slots[i]->edge;
        if (e.tail && e.head && e.tail->vertex == e.head->vertex) {
          os << (slots[i]->end == End::Tail ? "@tail" : "@head");
        }
      }
      os << ")";
    }
    os << "\n";
  }
  for (const auto& [id, e] : d.edges()) {
    if (e.free_loop()) {
      os << indent << "loop " << id;
    } else {
      if (!e.tail || !e.head) throw DiagramError("cannot serialize half-attached edge '" + id + "'");
      os << indent << "edge " << id << " " << e.tail->vertex << " " << e.head->vertex;
    }
    if (e.marked()) {
      os << " mark";
      for (const auto& l : e.marking) os << " " << l;
    }
    os << "\n";
  }
  if (d.framed()) {
    os << indent << "inputs";
    for (const auto& l : d.framing()->inputs) os << " " << l;
    os << "\n" << indent << "outputs";
    for (const auto& l : d.framing()->outputs) os << " " << l;
    os << "\n";
  }
}

}  // namespace

std::string serialize_diagram(const TraceDiagram& diagram) {
  std::ostringstream os;
  write_body(os, diagram, "");
  return os.str();
}

std::string serialize_diagram_set(const std::map<std::string, TraceDiagram>& diagrams) {
  std::ostringstream os;
  for (const auto& [name, d] : diagrams) {
    os << "diagram " << name << "\n";
    write_body(os, d, "  ");
    os << "end\n";
  }
  return os.str();
}

FormalSum parse_relation(std::string_view text, const ImportResolver& resolver, std::optional<Dimension> default_dim) {
  auto file = parse_file(text, resolver, default_dim, true, 0);
  if (file.terms.empty()) throw ParseError(1, 1, "relation has no terms");
  FormalSum sum(file.terms.front().second.dimension());
  for (const auto& [where, term] : file.terms) {
    try {
      sum += term;
    } catch (const DiagramError& e) {
      error_at(where, e.what());
    }
  }
  return sum;
}

MatrixBinding parse_matrix_file(std::string_view text) {
  struct Pending {
    Token where;
    std::string label;
    bool vector = false;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Scalar> entries;
  };
  std::optional<int> dim;
  std::vector<Pending> items;
  for (const auto& s : tokenize(text)) {
    const Token& head = s[0];
    if (head.punct) error_at(head, "unexpected '" + head.text + "'");
    if (head.text == "dim") {
      if (dim || !items.empty()) error_at(head, "'dim' must come first and only once");
      dim = parse_positive(word_at(s, 1, "a dimension"));
      expect_end(s, 2);
    } else if (head.text == "matrix" || head.text == "vector") {
      if (!items.empty() && items.back().entries.size() < items.back().rows * items.back().cols) {
        error_at(head, "'" + items.back().label + "' has too few entries");
      }
      Pending p{head, word_at(s, 1, "a label").text, head.text == "vector", 0, 1, {}};
      p.rows = static_cast<std::size_t>(parse_positive(word_at(s, 2, "a size")));
      if (!p.vector) {
        p.cols = static_cast<std::size_t>(parse_positive(word_at(s, 3, "a column count")));
        expect_end(s, 4);
      } else {
        expect_end(s, 3);
      }
      items.push_back(std::move(p));
    } else {
      if (items.empty()) error_at(head, "entries before any 'matrix' or 'vector' header");
      auto& cur = items.back();
      for (const auto& t : s) {
        if (t.punct) error_at(t, "unexpected '" + t.text + "'");
        if (cur.entries.size() == cur.rows * cur.cols) error_at(t, "'" + cur.label + "' has too many entries");
        try {
          cur.entries.push_back(parse_scalar(t.text));
        } catch (const std::invalid_argument&) {
          error_at(t, "invalid rational '" + t.text + "'");
        }
      }
    }
  }
  if (!items.empty() && items.back().entries.size() < items.back().rows * items.back().cols) {
    error_at(items.back().where, "'" + items.back().label + "' has too few entries");
  }
  if (!dim) {
    if (items.empty()) throw ParseError(1, 1, "cannot infer the dimension of an empty binding file");
    dim = static_cast<int>(items.front().rows);
  }
  MatrixBinding binding{Dimension(*dim)};
  std::set<std::string> seen;
  for (auto& p : items) {
    if (!seen.insert(p.label).second) error_at(p.where, "duplicate label '" + p.label + "'");
    try {
      if (p.vector) {
        binding.bind_vector(p.label, std::move(p.entries));
      } else {
        binding.bind_matrix(p.label, Matrix(p.rows, p.cols, std::move(p.entries)));
      }
    } catch (const BindingError& e) {
      error_at(p.where, e.what());
    }
  }
  return binding;
}

std::string serialize_binding(const MatrixBinding& binding) {
  std::ostringstream os;
  os << "dim " << binding.dimension().value() << "\n";
  for (const auto& [label, m] : binding.matrices()) {
    os << "matrix " << label << " " << m.rows() << " " << m.cols() << "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << tracediag::to_string(m(i, j));
      os << "\n";
    }
  }
  for (const auto& [label, v] : binding.vectors()) {
    os << "vector " << label << " " << v.size() << "\n";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << tracediag::to_string(v[i]);
    os << "\n";
  }
  return os.str();
}

}  // namespace tracediag::io
