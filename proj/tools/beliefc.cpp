// beliefc: compile belief specifications and run update/query scripts.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "beliefc/beliefc.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw beliefc::Error("IoError", "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw beliefc::Error("IoError", "cannot write '" + path + "'");
  out << text;
}

// Prints violations and returns false when the spec cannot be compiled.
bool report_violations(const beliefc::Spec& spec) {
  auto violations = beliefc::sort_check(spec);
  auto restrictions = beliefc::check_restrictions(spec);
  violations.insert(violations.end(), restrictions.begin(), restrictions.end());
  for (const auto& v : violations) std::cerr << beliefc::render(v) << "\n";
  return violations.empty();
}

std::string cnf_listing(const beliefc::Spec& spec) {
  std::string out;
  for (const auto& a : spec.axioms)
    for (const auto& c : beliefc::to_modal_cnf(a.formula)) out += a.label + ": " + beliefc::render(c) + "\n";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Belief-model compiler and runtime"};
  app.require_subcommand(1);

  std::string spec_path, script_path, out_path, self_agent, graph_path;
  bool trace = false, dump_state = false, dump_cnf = false, verbose = false;

  auto* compile = app.add_subcommand("compile", "Compile a .bspec file and print the rule base");
  compile->add_option("spec", spec_path, "Specification file")->required();
  compile->add_option("--self", self_agent, "Agent whose beliefs are modelled (defaults to the first declared)");
  compile->add_option("-o,--out", out_path, "Write the rule dump here instead of stdout");
  compile->add_flag("--dump-cnf", dump_cnf, "Also print the modal clauses");
  compile->add_flag("-v,--verbose", verbose, "Report tautological images dropped during expansion");

  auto* run = app.add_subcommand("run", "Compile a spec and execute a .uql script");
  run->add_option("spec", spec_path, "Specification file")->required();
  run->add_option("script", script_path, "Update/query script")->required();
  run->add_option("--self", self_agent, "Agent whose beliefs are modelled");
  run->add_flag("--trace", trace, "Print one line per rule firing after the transcript");
  run->add_flag("--dump-state", dump_state, "Print the final ATMS state after the transcript");
  run->add_flag("--dump-cnf", dump_cnf, "Print the modal clauses before the transcript");
  run->add_option("--graph", graph_path, "Write the final dependency network in Graphviz format");

  CLI11_PARSE(app, argc, argv);

  try {
    auto spec = beliefc::parse_spec(read_file(spec_path));
    if (!report_violations(spec)) return 1;
    auto model = beliefc::compile(spec, self_agent);
    for (const auto& w : model.warnings) std::cerr << "warning: " << w << "\n";
    if (verbose)
      for (const auto& d : model.dropped) std::cerr << "dropped " << d << "\n";

    if (compile->parsed()) {
      if (dump_cnf) std::cout << cnf_listing(spec);
      write_output(out_path, beliefc::dump_rules(model));
      return 0;
    }

    auto script = beliefc::parse_uql(read_file(script_path));
    if (dump_cnf) std::cout << "# cnf\n" << cnf_listing(spec);
    beliefc::Runtime runtime(std::move(model));
    auto transcript = runtime.run_script(script);
    std::cout << transcript.text;
    if (trace) {
      std::cout << "# trace\n";
      for (const auto& line : runtime.engine().trace_log()) std::cout << line << "\n";
    }
    if (dump_state) std::cout << "# state\n" << runtime.atms().dump();
    if (!graph_path.empty()) write_output(graph_path, runtime.atms().to_dot());
    if (transcript.failures > 0) {
      std::cerr << transcript.failures << " of " << transcript.expects << " expectations failed\n";
      return 2;
    }
    return 0;
  } catch (const beliefc::Error& e) {
    std::cerr << e.code() << ": " << e.what() << "\n";
    return 1;
  }
}
