#pragma once

#include "tracediag/core/binding.hpp"
#include "tracediag/eval/engine.hpp"
#include "tracediag/lab/report.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace tracediag::lab {

struct TrialConfig {
  int dim = 2;
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  /// Worker threads over trials; reports do not depend on it.
  unsigned jobs = 1;
  eval::EvalOptions eval;
};

/// c_0..c_n of det(A - lambda I) from the diagrams char_coeff_diagram(i, A).
std::vector<Scalar> charpoly_diagrammatic(const Matrix& a, const eval::EvalOptions& options = {});

/// Antisymmetrizer on k+1 strands with k strands closed through A equals
/// sum_i (-1)^i k!/(k-i)! (closed antisymmetrizer on k-i loops) A^i. Label `a` must be bound.
bool symmetrizer_sum_check(int k, const MatrixBinding& binding, const std::string& a = "A",
                           const eval::EvalOptions& options = {});

/// det(A+B) = (-1)^floor(n/2) sum_i value(det_sum_term(i, A, B)) / (i!(n-i)!).
bool det_sum_check(const MatrixBinding& binding, const std::string& a = "A", const std::string& b = "B",
                   const eval::EvalOptions& options = {});

/// For vertices v1, v2 whose shared edges all carry the same marking: for every total leaf coloring the
/// weight equals |shared|! times the weight restricted to colorings whose labels at v1 increase along the
/// shared edges (sorted by id). Returns the first leaf coloring where this fails, as text.
std::optional<std::string> multiplicity_check(const TraceDiagram& diagram, const std::string& v1,
                                              const std::string& v2, const MatrixBinding& binding);

using MatrixFunction = std::function<Matrix(const Matrix&)>;

/// (1/k!) sum over subsets S of {1..k} of (-1)^(k-|S|) tau(sum_{i in S} A_i).
Matrix polarize(const MatrixFunction& tau, int k, const std::vector<Matrix>& matrices);
/// tau(2A) == 2^k tau(A).
bool homogeneous_of_degree(const MatrixFunction& tau, int k, const Matrix& sample);

/// Sum_i c_i A^i with c_i the degree-n trace-form coefficients; zero for n x n matrices.
Matrix cayley_hamilton_polynomial(const Matrix& a, int degree);

VerificationReport verify_trace(const TrialConfig& cfg);
VerificationReport verify_det_diagram(const TrialConfig& cfg);
VerificationReport verify_antisym_collapse(const TrialConfig& cfg);
VerificationReport verify_cayley_hamilton(const TrialConfig& cfg);
VerificationReport verify_generalized_ch(const TrialConfig& cfg);
VerificationReport verify_charpoly(const TrialConfig& cfg);
VerificationReport verify_det_sum(const TrialConfig& cfg);
VerificationReport verify_symmetrizer_sum(const TrialConfig& cfg);
/// Two-node expansion of the antisymmetrizer for every k <= n, and the shared-edge multiplicity.
VerificationReport verify_antisym_two_node(const TrialConfig& cfg);
VerificationReport verify_multiplicity(const TrialConfig& cfg);
/// Binor relation on its own framing and over all leaf colorings (n = 3).
VerificationReport verify_binor(const TrialConfig& cfg);
/// Binor relation composed with two marked strands, under every framing of its four leaves (n = 3).
VerificationReport verify_framing_independence(const TrialConfig& cfg);
/// Composition and tensor product against matrix product and Kronecker product.
VerificationReport verify_functoriality(const TrialConfig& cfg);
VerificationReport verify_vector(const TrialConfig& cfg);
VerificationReport verify_fricke(const TrialConfig& cfg);
/// Fast evaluation of vertex-free closed diagrams against the general engine.
VerificationReport verify_fast_path(const TrialConfig& cfg);

/// Polar form of the degree-n Cayley-Hamilton polynomial against ch_diagram(A_1..A_n).
PolarizationReport polarization_check(const TrialConfig& cfg);

/// Ratios value(pfaffian_diagram(A)) / Pf(A) over `cfg.trials` skew-symmetric samples with Pf != 0.
PfaffianScan pfaffian_scan(const TrialConfig& cfg);

/// Identity names accepted by run_identity, each with its default dimension.
struct IdentityInfo {
  std::string name;
  int default_dim;
  std::string summary;
};
const std::vector<IdentityInfo>& identities();
/// Throws std::invalid_argument for an unknown name.
VerificationReport run_identity(const std::string& name, const TrialConfig& cfg);

}  // namespace tracediag::lab
