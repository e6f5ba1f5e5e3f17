#include "tracediag/io/report_format.hpp"

#include <json.hpp>

#include <sstream>

namespace tracediag::io {

namespace {

using nlohmann::json;

std::string seconds_text(double s) {
  std::ostringstream os;
  os.precision(6);
  os << std::fixed << s;
  return os.str();
}

std::string optional_scalar(const std::optional<Scalar>& s) { return s ? tracediag::to_string(*s) : "none"; }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

std::string format_report(const lab::VerificationReport& r, const FormatOptions& options) {
  std::ostringstream os;
  if (options.format == ReportFormat::Records) {
    json summary{{"record", "report"},          {"identity", r.identity}, {"dimension", r.dimension},
                 {"trials", r.trials},          {"status", lab::to_string(r.status)},
                 {"witnesses", r.witnesses.size()}};
    if (options.timing) summary["seconds"] = r.seconds;
    os << summary.dump() << "\n";
    for (std::size_t t = 0; t < r.outcomes.size(); ++t) {
      const auto& o = r.outcomes[t];
      json rec{{"record", "trial"}, {"identity", r.identity}, {"dimension", r.dimension}, {"trial", t},
               {"ok", o.ok},        {"binding", o.binding}};
      if (!o.ok) rec["residual"] = o.residual;
      os << rec.dump() << "\n";
    }
    for (const auto& note : r.notes) os << json{{"record", "note"}, {"identity", r.identity}, {"note", note}}.dump() << "\n";
    return os.str();
  }
  os << "identity " << r.identity << "\n";
  os << "dimension " << r.dimension << "\n";
  os << "trials " << r.trials << "\n";
  os << "status " << lab::to_string(r.status) << "\n";
  for (const auto& w : r.witnesses) {
    os << "witness seed=" << w.seed << " trial=" << w.trial << " binding: " << w.binding << "\n";
    os << "  residual: " << w.residual << "\n";
  }
  for (const auto& note : r.notes) os << "note " << note << "\n";
  if (options.timing) os << "seconds " << seconds_text(r.seconds) << "\n";
  return os.str();
}

std::string format_report(const lab::PfaffianScan& s, const FormatOptions& options) {
  std::ostringstream os;
  const std::string verdict = s.inconclusive() ? "inconclusive" : (s.consistent ? "consistent" : "inconsistent");
  if (options.format == ReportFormat::Records) {
    json summary{{"record", "pfaffian"}, {"dimension", s.dimension}, {"samples", s.samples.size()},
                 {"skipped", s.skipped},  {"verdict", verdict},       {"constant", optional_scalar(s.constant)}};
    if (options.timing) summary["seconds"] = s.seconds;
    os << summary.dump() << "\n";
    for (const auto& p : s.samples) {
      os << json{{"record", "pfaffian-sample"},
                 {"dimension", s.dimension},
                 {"trial", p.trial},
                 {"pfaffian", tracediag::to_string(p.pfaffian)},
                 {"diagram", tracediag::to_string(p.diagram_value)},
                 {"ratio", tracediag::to_string(p.ratio)}}
                .dump()
         << "\n";
    }
    return os.str();
  }
  os << "pfaffian dimension " << s.dimension << "\n";
  for (const auto& p : s.samples) {
    os << "trial " << p.trial << " pf " << tracediag::to_string(p.pfaffian) << " diagram "
       << tracediag::to_string(p.diagram_value) << " ratio " << tracediag::to_string(p.ratio) << "\n";
  }
  os << "skipped " << s.skipped << "\n";
  os << "verdict " << verdict << "\n";
  os << "constant " << (s.consistent || s.inconclusive() ? optional_scalar(s.constant) : "inconsistent") << "\n";
  if (options.timing) os << "seconds " << seconds_text(s.seconds) << "\n";
  return os.str();
}

std::string format_report(const lab::PolarizationReport& r, const FormatOptions& options) {
  std::ostringstream os;
  const std::string status = r.ok() ? "proven-exact-on-samples" : "failed";
  if (options.format == ReportFormat::Records) {
    json summary{{"record", "polarization"},
                 {"dimension", r.dimension},
                 {"trials", r.trials},
                 {"status", status},
                 {"zero_sets_agree", r.zero_sets_agree},
                 {"homogeneous", r.homogeneous},
                 {"diagonal", r.diagonal_ok},
                 {"constant", optional_scalar(r.constant)},
                 {"constant_consistent", r.constant_consistent}};
    if (r.six_term_ok) summary["six_term"] = *r.six_term_ok;
    if (options.timing) summary["seconds"] = r.seconds;
    os << summary.dump() << "\n";
    for (const auto& w : r.witnesses) {
      os << json{{"record", "witness"}, {"seed", w.seed}, {"trial", w.trial}, {"binding", w.binding}, {"residual", w.residual}}
                .dump()
         << "\n";
    }
    return os.str();
  }
  os << "polarization dimension " << r.dimension << "\n";
  os << "trials " << r.trials << "\n";
  os << "zero sets agree in dimension " << r.dimension << ": " << yes_no(r.zero_sets_agree) << "\n";
  os << "homogeneous of degree " << r.dimension << ": " << yes_no(r.homogeneous) << "\n";
  os << "polar form on the diagonal equals tau: " << yes_no(r.diagonal_ok) << "\n";
  if (r.six_term_ok) os << "six-term identity equals 2 * polar form: " << yes_no(*r.six_term_ok) << "\n";
  os << "polar / diagram in dimension " << r.dimension + 1 << ": "
     << (r.constant_consistent ? optional_scalar(r.constant) : "inconsistent") << "\n";
  for (const auto& w : r.witnesses) {
    os << "witness seed=" << w.seed << " trial=" << w.trial << " binding: " << w.binding << "\n";
    os << "  residual: " << w.residual << "\n";
  }
  os << "status " << status << "\n";
  if (options.timing) os << "seconds " << seconds_text(r.seconds) << "\n";
  return os.str();
}

}  // namespace tracediag::io
