#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gcvx/errors.hpp"
#include "gcvx/json_io.hpp"
#include "gcvx/measurable.hpp"
#include "gcvx/smcc.hpp"
#include "gcvx/suites.hpp"

namespace {

using nlohmann::json;
using namespace gcvx;

struct RunOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_size;
  std::string json_out;
};

void add_run_options(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "seed for sampled instances");
  cmd->add_option("--max-size", o.max_size, "largest semilattice or space to enumerate");
}

suites::SuiteConfig load_config(const RunOptions& o) {
  suites::SuiteConfig c;
  if (!o.config_path.empty()) c = suites::config_from_json(json_io::load_file(o.config_path));
  if (o.seed) c.seed = *o.seed;
  if (o.max_size) {
    json probe = {{"maxSize", *o.max_size}};
    c.max_size = suites::config_from_json(probe).max_size;
  }
  return c;
}

// keep stdout pure JSON when the report goes there
std::ostream& human_stream(const std::string& json_out) { return json_out == "-" ? std::cerr : std::cout; }

void write_json(const std::string& path, const json& j) {
  if (path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

int run_suite(const std::string& name, const RunOptions& o) {
  const auto report = suites::run_suite(name, load_config(o));
  std::ostream& text = human_stream(o.json_out);
  text << report.suite << ": " << report.passed << "/" << report.instances << " passed";
  if (!report.failures.empty()) {
    text << ", " << report.failures.size() << " failed (" << report.unexpected_failures() << " unexpected)";
  }
  text << "\n";
  for (const auto& f : report.failures) {
    text << (f.erratum_expected ? "  ERRATUM " : "  FAIL    ") << report.suite << "/" << f.law << "/" << f.instance
              << "\n    witness: " << f.witness.dump() << "\n";
  }
  if (!o.json_out.empty()) write_json(o.json_out, report.to_json());
  return report.unexpected_failures() == 0 ? 0 : 1;
}

int run_explain(const std::string& ref, const RunOptions& o) {
  const auto e = suites::explain(ref, load_config(o));
  std::ostream& text = human_stream(o.json_out);
  json j = {{"suite", e.suite},
            {"law", e.law},
            {"instance", e.instance},
            {"passed", e.passed},
            {"erratumExpected", e.erratum_expected},
            {"witness", e.witness},
            {"trace", e.trace}};
  text << "instance: " << json{{"suite", e.suite}, {"law", e.law}, {"instance", e.instance}}.dump() << "\n";
  for (std::size_t i = 0; i < e.trace.size(); ++i) text << "  " << (i + 1) << ". " << e.trace[i] << "\n";
  if (e.passed) {
    text << "result: holds\n";
  } else {
    text << "result: violated" << (e.erratum_expected ? " (expected erratum)" : "") << "\n";
    text << "witness: " << e.witness.dump() << "\n";
  }
  if (!o.json_out.empty()) write_json(o.json_out, j);
  return 0;
}

int run_tensor(const std::string& left, const std::string& right, const std::string& json_out) {
  auto x = measurable::share(json_io::space_from_json(json_io::load_file(left)));
  auto y = measurable::share(json_io::space_from_json(json_io::load_file(right)));
  const auto t = smcc::tensor_space(x, y);
  std::ostream& text = human_stream(json_out);
  const auto prod = smcc::product_space(*x, *y);
  const bool strictly_larger = t.carrier->atoms().size() > prod.atoms().size();
  json j = {{"productSigma", json_io::subsets_json(prod, prod.atoms())},
            {"tensorSigma", json_io::subsets_json(*t.carrier, t.carrier->atoms())},
            {"constantGraphSigma", json_io::subsets_json(*t.constant_graph_carrier, t.constant_graph_carrier->atoms())},
            {"strictlyLarger", strictly_larger},
            {"points", t.carrier->points()}};
  text << "product atoms: " << measurable::describe(prod) << "\n";
  text << "tensor atoms: " << measurable::describe(*t.carrier) << "\n";
  text << "constant-graph atoms: " << measurable::describe(*t.constant_graph_carrier) << "\n";
  text << "tensor strictly finer than product: " << (strictly_larger ? "yes" : "no") << "\n";
  if (!json_out.empty()) write_json(json_out, j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gcvx: law workbench for finite measurable and convex spaces"};
  app.require_subcommand(1);

  RunOptions opts;
  for (const auto& name : suites::suite_names()) {
    auto* cmd = app.add_subcommand(name, "run the " + name + " suite");
    add_run_options(cmd, opts);
    cmd->add_option("--json", opts.json_out, "write the report as JSON ('-' for stdout)");
  }

  std::string ref;
  auto* explain = app.add_subcommand("explain", "replay one check with a step-by-step trace");
  explain->add_option("ref", ref, "suite/law/instance from a report")->required();
  add_run_options(explain, opts);
  explain->add_option("--json", opts.json_out, "write the explanation as JSON ('-' for stdout)");

  std::string left;
  std::string right;
  std::string tensor_json;
  auto* tensor = app.add_subcommand("tensor", "compare product and tensor σ-algebras of two spaces");
  tensor->add_option("--left", left, "space JSON")->required()->check(CLI::ExistingFile);
  tensor->add_option("--right", right, "space JSON")->required()->check(CLI::ExistingFile);
  tensor->add_option("--json", tensor_json, "write the comparison as JSON ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (explain->parsed()) return run_explain(ref, opts);
    if (tensor->parsed()) return run_tensor(left, right, tensor_json);
    for (auto* cmd : app.get_subcommands()) return run_suite(cmd->get_name(), opts);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
