#pragma once

#include "tracediag/core/matrix.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tracediag::lab {

enum class Status { ProvenExactOnSamples, Failed, Inconclusive };

std::string to_string(Status s);

/// A sample on which an identity failed.
struct Witness {
  std::uint64_t seed = 0;
  std::size_t trial = 0;
  /// The sampled inputs, e.g. `A=[[1,2],[3,4]]`.
  std::string binding;
  /// Offending entry and its value.
  std::string residual;
};

/// Per-trial result used by the drivers before merging.
struct TrialOutcome {
  bool ok = true;
  std::string binding;
  std::string residual;
  std::vector<std::string> notes;
};

struct VerificationReport {
  std::string identity;
  int dimension = 0;
  std::size_t trials = 0;
  Status status = Status::ProvenExactOnSamples;
  std::vector<Witness> witnesses;
  /// Extra observations (constants, counts) that are reported, not asserted.
  std::vector<std::string> notes;
  /// Every trial in index order.
  std::vector<TrialOutcome> outcomes;
  double seconds = 0;

  bool ok() const { return status == Status::ProvenExactOnSamples; }
};

/// Folds per-trial outcomes, in trial order, into a report.
VerificationReport merge_trials(std::string identity, int dimension, std::uint64_t seed,
                                const std::vector<TrialOutcome>& outcomes);

struct PfaffianSample {
  std::size_t trial = 0;
  Scalar pfaffian;
  Scalar diagram_value;
  Scalar ratio;
};

struct PfaffianScan {
  int dimension = 0;
  std::vector<PfaffianSample> samples;
  /// Draws skipped because the Pfaffian vanished.
  std::size_t skipped = 0;
  bool consistent = false;
  std::optional<Scalar> constant;
  double seconds = 0;

  bool inconclusive() const { return samples.empty(); }
};

struct PolarizationReport {
  int dimension = 0;
  std::size_t trials = 0;
  /// In dimension n both the polar form and the diagram vanish on every sample.
  bool zero_sets_agree = false;
  /// tau(2A) = 2^n tau(A) on the first sample.
  bool homogeneous = false;
  /// Polar form restricted to the diagonal gives back tau.
  bool diagonal_ok = false;
  /// For n = 2 the six-term identity equals twice the polar form in dimension 2 and 3.
  std::optional<bool> six_term_ok;
  /// In dimension n + 1: polar form / diagram matrix, if one constant fits every sample.
  std::optional<Scalar> constant;
  bool constant_consistent = false;
  std::vector<Witness> witnesses;
  double seconds = 0;

  bool ok() const {
    return zero_sets_agree && homogeneous && diagonal_ok && constant_consistent && six_term_ok.value_or(true);
  }
};

/// Compact single-line forms used in witnesses: `[[1,2],[3,4]]` and `[1,2,3]`.
std::string inline_matrix(const Matrix& m);
std::string inline_vector(const Vector& v);

}  // namespace tracediag::lab
