// Command-line front end: eval, verify, charpoly, polarize, pfaffian.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include "tracediag/algebra/algebra.hpp"
#include "tracediag/io/dsl.hpp"
#include "tracediag/io/report_format.hpp"
#include "tracediag/lab/oracles.hpp"
#include "tracediag/lab/verify.hpp"
#include "tracediag/library/builders.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace tracediag;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void print_matrix(const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) std::cout << (j ? " " : "") << to_string(m(i, j));
    std::cout << "\n";
  }
}

struct Common {
  int dim = 0;
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string format = "text";
  bool timing = false;

  lab::TrialConfig config(int default_dim) const {
    lab::TrialConfig c;
    c.dim = dim > 0 ? dim : default_dim;
    c.trials = trials;
    c.seed = seed;
    c.jobs = jobs;
    return c;
  }
  io::FormatOptions format_options() const {
    return {format == "records" ? io::ReportFormat::Records : io::ReportFormat::Text, timing};
  }
};

void add_common(CLI::App* app, Common& c, bool with_trials) {
  app->add_option("--dim", c.dim, "Dimension n")->check(CLI::PositiveNumber);
  if (with_trials) {
    app->add_option("--trials", c.trials, "Number of random samples")->capture_default_str();
    app->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  }
  app->add_option("--jobs", c.jobs, "Worker threads; output does not depend on it")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"text", "records"}))->capture_default_str();
  app->add_flag("--timing", c.timing, "Include wall-clock seconds in reports");
}

int run_eval(const std::string& file, const std::string& bind, const std::string& name, const Common& c) {
  const MatrixBinding binding = io::parse_matrix_file(read_file(bind));
  const std::string text = read_file(file);
  const auto resolver = io::file_resolver(std::filesystem::path(file).parent_path());
  const std::optional<Dimension> dim = c.dim > 0 ? std::optional<Dimension>(Dimension(c.dim)) : binding.dimension();
  FormalSum sum(binding.dimension());
  if (ends_with(file, ".trel")) {
    if (!name.empty()) throw std::invalid_argument("--diagram does not apply to relation files");
    sum = io::parse_relation(text, resolver, dim);
  } else {
    const auto set = io::parse_diagram_set(text, resolver, dim);
    if (name.empty()) {
      if (set.size() != 1) throw std::invalid_argument("file defines several diagrams; choose one with --diagram");
      sum = set.begin()->second;
    } else {
      auto it = set.find(name);
      if (it == set.end()) throw std::invalid_argument("no diagram named '" + name + "'");
      sum = it->second;
    }
  }
  eval::EvalOptions options;
  options.jobs = c.jobs;
  for (const auto& t : sum.terms()) binding.check_covers(t.diagram);
  const Matrix m = algebra::sum_matrix(sum, binding, options);
  const auto& first = sum.terms().front().diagram;
  if (first.input_arity() == 0 && first.output_arity() == 0) {
    std::cout << to_string(m(0, 0)) << "\n";
  } else {
    print_matrix(m);
  }
  return kOk;
}

int run_charpoly(const std::string& bind, const std::string& label, const Common& c) {
  const MatrixBinding binding = io::parse_matrix_file(read_file(bind));
  const Matrix& a = binding.matrix(label);
  eval::EvalOptions options;
  options.jobs = c.jobs;
  const auto diagram = lab::charpoly_diagrammatic(a, options);
  const auto oracle = lab::charpoly_oracle(a);
  bool match = true;
  for (std::size_t i = 0; i < diagram.size(); ++i) {
    const bool same = diagram[i] == oracle[i];
    match = match && same;
    std::cout << "c" << i << " diagram " << to_string(diagram[i]) << " oracle " << to_string(oracle[i])
              << (same ? "" : " MISMATCH") << "\n";
  }
  std::cout << (match ? "match" : "mismatch") << "\n";
  return match ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact evaluation and verification of trace diagrams"};
  app.require_subcommand(1);
  Common common;

  std::string file, bind, diagram_name, identity, matrix_label = "A";
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a diagram or relation file under a binding");
  eval_cmd->add_option("file", file, ".tdg or .trel file")->required();
  eval_cmd->add_option("--bind", bind, ".tmat binding file")->required();
  eval_cmd->add_option("--diagram", diagram_name, "Diagram name within the file");
  add_common(eval_cmd, common, false);

  std::string identity_help = "One of:";
  std::vector<std::string> names;
  for (const auto& info : lab::identities()) {
    names.push_back(info.name);
    identity_help += " " + info.name;
  }
  auto* verify_cmd = app.add_subcommand("verify", "Verify an identity on random exact samples");
  verify_cmd->add_option("identity", identity, identity_help)->required()->check(CLI::IsMember(names));
  add_common(verify_cmd, common, true);

  auto* charpoly_cmd = app.add_subcommand("charpoly", "Characteristic coefficients from diagrams and from the oracle");
  charpoly_cmd->add_option("--bind", bind, ".tmat binding file")->required();
  charpoly_cmd->add_option("--matrix", matrix_label, "Matrix label")->capture_default_str();
  add_common(charpoly_cmd, common, false);

  auto* polarize_cmd = app.add_subcommand("polarize", "Polarized Cayley-Hamilton identity against the diagram");
  add_common(polarize_cmd, common, true);

  auto* pfaffian_cmd = app.add_subcommand("pfaffian", "Ratio of the Pfaffian diagram to the Pfaffian");
  add_common(pfaffian_cmd, common, true);

  auto* builtins_cmd = app.add_subcommand("builtins", "List builtin diagram names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*eval_cmd) return run_eval(file, bind, diagram_name, common);
    if (*charpoly_cmd) return run_charpoly(bind, matrix_label, common);
    if (*builtins_cmd) {
      for (const auto& n : library::builtin_names()) std::cout << n << "\n";
      return kOk;
    }
    if (*verify_cmd) {
      int default_dim = 2;
      for (const auto& info : lab::identities()) {
        if (info.name == identity) default_dim = info.default_dim;
      }
      const auto report = lab::run_identity(identity, common.config(default_dim));
      std::cout << io::format_report(report, common.format_options());
      return report.ok() ? kOk : kFailed;
    }
    if (*polarize_cmd) {
      const auto report = lab::polarization_check(common.config(2));
      std::cout << io::format_report(report, common.format_options());
      return report.ok() ? kOk : kFailed;
    }
    if (*pfaffian_cmd) {
      const auto scan = lab::pfaffian_scan(common.config(2));
      std::cout << io::format_report(scan, common.format_options());
      return scan.consistent ? kOk : kFailed;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
