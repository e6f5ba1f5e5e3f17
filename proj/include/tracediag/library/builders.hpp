#pragma once

#include "tracediag/core/formal_sum.hpp"

#include <string>
#include <vector>

namespace tracediag::library {

// Leaves of framed builders are named in1..ink (inputs, left to right) and out1..outk (outputs).

/// All permutations of {0..k-1} in lexicographic order.
std::vector<std::vector<int>> permutations(std::size_t k);

TraceDiagram identity_strands(Dimension dim, std::size_t k);
/// Input i is wired to output sigma[i] (0-based images).
TraceDiagram permutation_diagram(Dimension dim, const std::vector<int>& sigma);
/// One strand in1 -> out1 marked by `word` (head-to-tail, i.e. the product word[0]*word[1]*...).
TraceDiagram strand(Dimension dim, std::vector<std::string> word);

/// Sum over S_k of sgn(sigma) * permutation_diagram(sigma).
FormalSum antisymmetrizer(Dimension dim, std::size_t k);

/// Free loop marked by `word`; evaluates to the trace of the product.
TraceDiagram trace_loop(Dimension dim, std::vector<std::string> word);

/// One internal vertex with `inputs` input leaves and `outputs` output leaves (inputs + outputs = n).
/// Slots run through the inputs left to right, then the outputs right to left.
TraceDiagram epsilon_node(Dimension dim, int inputs, int outputs);

/// Two internal vertices joined by edges directed bottom to top. The bottom vertex carries k inputs and
/// the top k outputs. Shared edges, left to right, carry the given markings. The bottom vertex lists its
/// shared edges right to left and the top vertex left to right (mirrored ciliation).
TraceDiagram two_vertex(Dimension dim, std::size_t k, const std::vector<std::vector<std::string>>& shared);

/// Closed two-vertex diagram with n parallel edges marked A. Value (-1)^floor(n/2) n! det(A).
TraceDiagram determinant_diagram(Dimension dim, const std::string& a);
/// Two-vertex diagram with n-i edges marked A (left) and i edges marked B (right).
TraceDiagram det_sum_term(Dimension dim, int i, const std::string& a, const std::string& b);
/// det_sum_term with the i right-hand edges unmarked.
TraceDiagram char_coeff_diagram(Dimension dim, int i, const std::string& a);
/// Two vertices sharing n-k unmarked edges, k inputs below and k outputs above.
TraceDiagram two_node_antisym(Dimension dim, int k);

/// antisymmetrizer(m+1) with strand 1 left open and strand j+1 closed through a loop marked labels[j-1].
FormalSum ch_diagram(Dimension dim, const std::vector<std::string>& labels);
/// antisymmetrizer(m) with every strand j closed through a loop marked labels[j-1]; a closed sum.
FormalSum closed_antisym_loops(Dimension dim, const std::vector<std::string>& labels);

// Three-dimensional vector diagrams. They throw DiagramError for any other dimension.
TraceDiagram cross_product(Dimension dim, const std::string& u, const std::string& v);
TraceDiagram dot_product(Dimension dim, const std::string& u, const std::string& v);
/// The two trivalent vertices of the binor relation, 2 inputs / 2 outputs.
TraceDiagram binor_lhs(Dimension dim);
/// Wire swap in1 -> out2, in2 -> out1.
TraceDiagram crossing(Dimension dim);
/// binor_lhs - crossing + identity, which vanishes.
FormalSum binor_relation(Dimension dim);
/// Two cross-product nodes joined by an edge: (u x v) . (w x x).
TraceDiagram cross_dot_cross(Dimension dim, const std::string& u, const std::string& v, const std::string& w,
                             const std::string& x);
/// cross_dot_cross - dot(u,w) dot(v,x) + dot(u,x) dot(v,w), which vanishes.
FormalSum four_vector_relation(Dimension dim, const std::string& u, const std::string& v, const std::string& w,
                               const std::string& x);

/// Single vertex of even degree n whose edges close into n/2 nested arcs, each marked A.
TraceDiagram pfaffian_diagram(Dimension dim, const std::string& a);

/// n = 2 only: ch_diagram(B, C) with the open strand marked A on top.
FormalSum fricke_diagrams(Dimension dim, const std::string& a, const std::string& b, const std::string& c);
/// Trace of fricke_diagrams: a closed sum that vanishes.
FormalSum fricke_trace(Dimension dim, const std::string& a, const std::string& b, const std::string& c);

/// Resolves a builtin spec such as `det(A)`, `antisym(4)` or `trace(A,B)` (optionally prefixed by
/// `builtin:`). Throws DiagramError for unknown names or bad arguments.
FormalSum builtin(const std::string& spec, Dimension dim);
/// Names accepted by builtin(), with their argument shapes.
std::vector<std::string> builtin_names();

}  // namespace tracediag::library
