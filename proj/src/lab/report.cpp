#include "tracediag/lab/report.hpp"

namespace tracediag::lab {

std::string to_string(Status s) {
  switch (s) {
    case Status::ProvenExactOnSamples:
      return "proven-exact-on-samples";
    case Status::Failed:
      return "failed";
    case Status::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

VerificationReport merge_trials(std::string identity, int dimension, std::uint64_t seed,
                                const std::vector<TrialOutcome>& outcomes) {
  VerificationReport r;
  r.identity = std::move(identity);
  r.dimension = dimension;
  r.trials = outcomes.size();
  for (std::size_t t = 0; t < outcomes.size(); ++t) {
    const auto& o = outcomes[t];
    if (!o.ok) r.witnesses.push_back(Witness{seed, t, o.binding, o.residual});
    for (const auto& note : o.notes) r.notes.push_back("trial " + std::to_string(t) + ": " + note);
  }
  r.outcomes = outcomes;
  if (!r.witnesses.empty()) {
    r.status = Status::Failed;
  } else {
    r.status = outcomes.empty() ? Status::Inconclusive : Status::ProvenExactOnSamples;
  }
  return r;
}

std::string inline_vector(const Vector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + tracediag::to_string(v[i]);
  return s + "]";
}

std::string inline_matrix(const Matrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? "," : "") + tracediag::to_string(m(i, j));
    s += "]";
  }
  return s + "]";
}

}  // namespace tracediag::lab
