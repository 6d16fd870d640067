#include <CLI11.hpp>

#include <iostream>

#include "resha/cli.hpp"

namespace resha::cli {

namespace {

const char* const kExitCodes =
    "Exit codes: 0 success; 1 invalid model, failed stage or oracle mismatch; 2 I/O failure; "
    "3 solver row budget exceeded; 64 usage error.";

std::optional<bool> on_off(const std::string& v) {
  if (v.empty()) return std::nullopt;
  return v == "on";
}

}  // namespace

int run(int argc, const char* const* argv, Streams io) {
  CLI::App app{"Redundancy-guided hazard analysis: UCA enumeration, integrated fault trees, minimal cut sets."};
  app.footer(kExitCodes);
  app.require_subcommand(1);
  app.set_version_flag("--version", "resha 0.1.0");

  std::string model;
  std::optional<std::filesystem::path> out;

  auto* validate = app.add_subcommand("validate", "Check a model file; diagnostics go to standard error");
  validate->add_option("model", model, "Model JSON file")->required();

  RunConfig rc;
  std::string model_opt;
  std::string out_dir;
  int truncate = 4;
  bool no_truncate = false;
  std::string intra, cross, partial, sw_categories;
  auto* analyze = app.add_subcommand("analyze", "Run all seven analysis steps and write the report");
  analyze->add_option("--model,-m", model_opt, "Model JSON file")->required();
  analyze->add_option("--top", rc.top_event, "Top-event ID (default: first declared)");
  analyze->add_option("--kind", rc.kind, "Top-event kind")->check(CLI::IsMember({"failure-to-act", "spurious-action"}));
  analyze->add_option("--truncate,-k", truncate, "Truncation order")->check(CLI::PositiveNumber);
  analyze->add_flag("--no-truncate", no_truncate, "Solve without truncation");
  analyze->add_option("--scope", rc.scope, "Gate ID or declared scope label to analyze");
  analyze->add_option("--filter", rc.filter, "Event kinds kept: all, hardware, or a comma list of kinds");
  analyze->add_option("--ccf-intra", intra, "Intra-division CCFs")->check(CLI::IsMember({"on", "off"}));
  analyze->add_option("--ccf-cross", cross, "Cross-division CCFs")->check(CLI::IsMember({"on", "off"}));
  analyze->add_option("--ccf-partial", partial, "Partial inter-division CCFs")->check(CLI::IsMember({"on", "off"}));
  analyze->add_option("--ccf-categories", sw_categories, "Software CCF categories, e.g. ac");
  analyze->add_option("--ccf-exclude", rc.ccf.exclude_classes, "Equipment classes without CCF events");
  analyze->add_option("--out,-o", out_dir, std::string("Output directory (default: $") + kOutputDirEnv +
                                                 " or ./resha-out)");
  analyze->add_flag("--deterministic", rc.deterministic, "Write directly into the output directory, no run stamp");
  analyze->add_option("--threads", rc.threads, "Solver threads")->check(CLI::Range(1u, 256u));
  analyze->add_option("--max-rows", rc.max_rows, "Row budget per gate expansion");
  analyze->add_option("--scope-table-order", rc.scope_table_order, "Truncation for the scope table (default: --truncate)")
      ->check(CLI::PositiveNumber);
  analyze->add_flag("!--no-scope-table", rc.scope_table, "Skip solving the declared scopes for the summary table");

  std::string format = "csv";
  auto* ucas = app.add_subcommand("ucas", "Emit the UCA table");
  ucas->add_option("model", model, "Model JSON file")->required();
  ucas->add_option("--format", format, "csv or md")->check(CLI::IsMember({"csv", "md"}));
  ucas->add_option("--out,-o", out, "Output file (default: standard output)");

  auto* catalog = app.add_subcommand("ccf-catalog", "Emit every CCF event the redundancy groups admit");
  catalog->add_option("model", model, "Model JSON file")->required();
  catalog->add_option("--out,-o", out, "Output file (default: standard output)");

  CutsetsConfig cc;
  int cs_truncate = 0;
  auto* cutsets = app.add_subcommand("cutsets", "Solve minimal cut sets of a fault-tree exchange file");
  cutsets->add_option("tree", cc.tree_path, "Fault-tree JSON (as written by analyze)")->required();
  cutsets->add_option("--truncate,-k", cs_truncate, "Truncation order (default: none)")->check(CLI::PositiveNumber);
  cutsets->add_option("--gate", cc.gate, "Solve the subtree under this gate");
  cutsets->add_option("--filter", cc.filter, "Event kinds kept");
  cutsets->add_option("--threads", cc.threads, "Solver threads")->check(CLI::Range(1u, 256u));
  cutsets->add_option("--max-rows", cc.max_rows, "Row budget per gate expansion");
  cutsets->add_option("--out,-o", cc.out, "CSV output file (default: text on standard output)");

  OracleConfig oc;
  auto* oracle = app.add_subcommand("oracle-check", "Compare the solver with truth-table enumeration on random trees");
  oracle->add_option("--trials", oc.trials, "Number of random trees")->check(CLI::PositiveNumber);
  oracle->add_option("--seed", oc.seed, "Random seed");
  oracle->add_option("--max-events", oc.max_events, "Basic events per tree")->check(CLI::Range(1, 20));
  oracle->add_option("--max-gates", oc.max_gates, "Gates per tree")->check(CLI::Range(1, 64));

  auto* fixture = app.add_subcommand("fixture", "Write the reference reactor-trip-system model");
  fixture->add_option("--out,-o", out, "Output file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, io.out, io.err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*validate) return cmd_validate(model, io);
  if (*analyze) {
    rc.model_path = model_opt;
    rc.truncation = no_truncate ? std::nullopt : std::optional<int>(truncate);
    if (!out_dir.empty()) rc.output_dir = out_dir;
    rc.ccf.intra_division = on_off(intra);
    rc.ccf.cross_division = on_off(cross);
    rc.ccf.partial_interdivision = on_off(partial);
    if (!sw_categories.empty()) rc.ccf.software_categories = sw_categories;
    return cmd_analyze(rc, io);
  }
  if (*ucas) return cmd_ucas(model, format, out, io);
  if (*catalog) return cmd_ccf_catalog(model, out, io);
  if (*cutsets) {
    if (cs_truncate > 0) cc.truncation = cs_truncate;
    return cmd_cutsets(cc, io);
  }
  if (*oracle) return cmd_oracle_check(oc, io);
  if (*fixture) return cmd_fixture(out, io);
  return kExitUsage;
}

}  // namespace resha::cli
