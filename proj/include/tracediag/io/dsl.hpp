#pragma once

// Line-oriented text formats.
//
//   .tdg   diagrams        dim 3
//                          vertex v internal cil(a1, a2, b1)
//                          vertex x1 leaf vec u
//                          edge a1 x1 v mark A
//                          loop e1 mark A B
//                          inputs in1 in2
//                          outputs out1
//                          diagram name ... end
//                          diagram name = builtin:det(A) @ dim 3
//   .trel  relations       import other.tdg
//                          -1/2 * name
//                          3 * builtin:antisym(2)
//   .tmat  bindings        matrix A 2 2
//                          1 2
//                          3/4 -1
//                          vector u 2
//                          1 0
//
// Statements are separated by newlines or `;`; `#` starts a comment.

#include "tracediag/core/binding.hpp"
#include "tracediag/core/formal_sum.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace tracediag::io {

/// Returns the contents of an imported path. Throws if it cannot be read.
using ImportResolver = std::function<std::string(const std::string& path)>;

/// Resolves imports relative to `base`.
ImportResolver file_resolver(std::filesystem::path base);

/// Named entries of a diagram file. Explicit diagrams are single terms with coefficient 1;
/// builtins may expand to several terms.
using DiagramSet = std::map<std::string, FormalSum>;

/// Statements outside any `diagram` block form an entry named "main".
DiagramSet parse_diagram_set(std::string_view text, const ImportResolver& resolver = {},
                             std::optional<Dimension> default_dim = std::nullopt);

/// Text holding exactly one single-term diagram. Throws ParseError otherwise.
TraceDiagram parse_diagram(std::string_view text, std::optional<Dimension> default_dim = std::nullopt);

/// Canonical text: entities sorted by id, self-loop ends qualified in cil lists, one space between tokens.
std::string serialize_diagram(const TraceDiagram& diagram);
std::string serialize_diagram_set(const std::map<std::string, TraceDiagram>& diagrams);

/// Terms `<coeff> * <name>` or `<coeff> * builtin:...`; names resolve against diagrams defined in the
/// same text or in imported files.
FormalSum parse_relation(std::string_view text, const ImportResolver& resolver = {},
                         std::optional<Dimension> default_dim = std::nullopt);

/// Matrices must all share one size n, which becomes the binding's dimension (or `dim n` fixes it).
MatrixBinding parse_matrix_file(std::string_view text);
std::string serialize_binding(const MatrixBinding& binding);

}  // namespace tracediag::io
