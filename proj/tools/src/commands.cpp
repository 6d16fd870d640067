#include <chrono>
#include <ctime>
#include <iostream>
#include <random>
#include <sstream>

#include "resha/cli.hpp"
#include "resha/detail/json.hpp"
#include "resha/error.hpp"
#include "resha/model_io.hpp"
#include "resha/pipeline.hpp"
#include "resha/rts_fixture.hpp"
#include "resha/text_util.hpp"

namespace resha::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void print_diagnostics(const ModelError& e, std::ostream& err) {
  for (const auto& d : e.diagnostics()) {
    err << "error: " << (d.path.empty() ? "" : d.path + ": ") << to_string(d.code) << ": " << d.message << "\n";
  }
}

// Shared error mapping for commands that load a model and run library code.
template <typename F>
int guarded(Streams io, F&& body) {
  try {
    return body();
  } catch (const IoError& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ModelError& e) {
    print_diagnostics(e, io.err);
    io.err << "model invalid: " << e.diagnostics().size() << " problem(s)\n";
    return kExitFailure;
  } catch (const ResourceError& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const Error& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

std::set<UcaCategory> parse_categories(const std::string& letters) {
  std::set<UcaCategory> out;
  for (char c : letters) {
    if (c == ',' || c == ' ') continue;
    out.insert(category_from_letter(c));
  }
  return out;
}

CcfPolicy apply_overrides(CcfPolicy policy, const CcfOverrides& o) {
  if (o.intra_division) policy.include_intra_division = *o.intra_division;
  if (o.cross_division) policy.include_cross_division = *o.cross_division;
  if (o.partial_interdivision) policy.include_partial_interdivision = *o.partial_interdivision;
  if (o.software_categories) policy.software_categories = parse_categories(*o.software_categories);
  for (const auto& c : o.exclude_classes) policy.excluded_classes.insert(c);
  return policy;
}

std::string spofs_to_csv(const AnalysisResult& r) {
  std::ostringstream os;
  os << "no,cut_set,description,contains_ccf\n";
  int n = 0;
  for (const auto& s : r.spofs.sets) {
    std::vector<std::string> descriptions;
    for (const auto& e : s.events) descriptions.push_back(r.analyzed_tree.find_event(e)->description);
    os << ++n << "," << csv_field(join(s.events, " ")) << "," << csv_field(join(descriptions, " ")) << ","
       << (s.contains_ccf ? "yes" : "no") << "\n";
  }
  return os.str();
}

std::string histogram_to_csv(const OrderHistogram& h) {
  std::ostringstream os;
  os << "order,count,cumulative\n";
  for (const auto& [order, count] : h.exact) os << order << "," << count << "," << h.cumulative(order) << "\n";
  return os.str();
}

std::string utc_stamp(const char* format) {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, format, &tm);
  return buf;
}

std::string manifest(const RunConfig& c, const AnalysisResult& r, const std::vector<std::string>& files) {
  json settings = {{"model", c.model_path.filename().string()},
                   {"top_event", r.top_event},
                   {"kind", to_string(r.kind)},
                   {"truncation", c.truncation ? json(*c.truncation) : json(nullptr)},
                   {"scope", c.scope},
                   {"analyzed_gate", r.analyzed_gate},
                   {"filter", c.filter}};
  json m = {{"tool", "resha"},
            {"settings", settings},
            {"fingerprint", r.cutsets.fingerprint},
            {"cut_sets", r.cutsets.sets.size()},
            {"first_order", r.cutsets.count_of_order(1)},
            {"files", files}};
  if (!c.deterministic) m["started_utc"] = utc_stamp("%Y-%m-%dT%H:%M:%SZ");
  return m.dump(2) + "\n";
}

void print_histogram(const OrderHistogram& h, std::ostream& out) {
  out << "order  count  cumulative\n";
  for (const auto& [order, count] : h.exact) out << order << "  " << count << "  " << h.cumulative(order) << "\n";
}

}  // namespace

int cmd_validate(const fs::path& model_path, Streams io) {
  return guarded(io, [&] {
    const SystemModel model = load_system_model(model_path);
    io.out << "ok: " << (model.name().empty() ? model_path.string() : model.name()) << ": " << model.nodes().size()
           << " nodes, " << model.links().size() << " links, " << model.control_actions().size()
           << " control-action entries\n";
    return kExitOk;
  });
}

fs::path resolve_output_dir(const RunConfig& config) {
  fs::path base = "resha-out";
  if (config.output_dir) {
    base = *config.output_dir;
  } else if (const char* env = std::getenv(kOutputDirEnv); env && *env) {
    base = env;
  }
  if (config.deterministic) return base;
  const std::string stem = "run-" + utc_stamp("%Y%m%d-%H%M%S");
  fs::path dir = base / stem;
  for (int i = 2; fs::exists(dir); ++i) dir = base / (stem + "-" + std::to_string(i));
  return dir;
}

int cmd_analyze(const RunConfig& c, Streams io) {
  return guarded(io, [&] {
    if (c.truncation && *c.truncation < 1) {
      io.err << "error: --truncate must be at least 1\n";
      return kExitUsage;
    }
    const SystemModel model = load_system_model(c.model_path);
    AnalysisConfig ac;
    ac.top_event = c.top_event;
    if (c.kind) ac.kind = top_event_kind_from_string(*c.kind);
    ac.truncation = c.truncation;
    ac.scope = c.scope;
    ac.filter = c.filter;
    ac.policy = apply_overrides(model.ccf_policy(), c.ccf);
    ac.scope_table = c.scope_table;
    ac.scope_table_order = c.scope_table_order;
    ac.threads = c.threads;
    ac.max_rows = c.max_rows;
    const AnalysisResult r = run_analysis(model, ac);

    const fs::path dir = resolve_output_dir(c);
    fs::create_directories(dir);
    const std::vector<std::pair<std::string, std::string>> artifacts = {
        {"report.md", render_analysis_report(model, r)},
        {"ucas.csv", ucas_to_csv(r.ucas)},
        {"ucas.md", ucas_to_markdown(r.control_structure, r.ucas)},
        {"ccf_catalog.csv", ccf_catalog_to_csv(r.catalog)},
        {"cutsets.csv", cut_sets_to_csv(r.cutsets)},
        {"spofs.csv", spofs_to_csv(r)},
        {"histogram.csv", histogram_to_csv(r.histogram)},
        {"fault_tree.json", fault_tree_to_json(r.full_tree)},
        {"fault_tree.opsa.xml", fault_tree_to_opsa_xml(r.full_tree, r.top_event)},
        {"analyzed_tree.json", fault_tree_to_json(r.analyzed_tree)},
    };
    std::vector<std::string> files;
    for (const auto& [name, content] : artifacts) {
      write_text_file(dir / name, content);
      files.push_back(name);
    }
    write_text_file(dir / "run.json", manifest(c, r, files));

    for (const auto& w : r.warnings) io.err << "warning: " << w << "\n";
    print_histogram(r.histogram, io.out);
    io.out << r.cutsets.count_of_order(1) << " first-order cut sets\n";
    io.out << "wrote " << dir.string() << "\n";
    return kExitOk;
  });
}

int cmd_ucas(const fs::path& model_path, const std::string& format, const std::optional<fs::path>& out, Streams io) {
  return guarded(io, [&] {
    const SystemModel model = load_system_model(model_path);
    const ControlStructure cs = build_layered_control_structure(model);
    const auto ucas = enumerate_ucas(cs, model.hazards());
    const std::string text = format == "md" ? ucas_to_markdown(cs, ucas) : ucas_to_csv(ucas);
    if (out) {
      write_text_file(*out, text);
      const UcaCounts n = count_ucas(ucas);
      io.out << n.control_actions << " control actions, " << n.potential << " potential UCAs, " << n.identified
             << " identified\n";
    } else {
      io.out << text;
    }
    return kExitOk;
  });
}

int cmd_ccf_catalog(const fs::path& model_path, const std::optional<fs::path>& out, Streams io) {
  return guarded(io, [&] {
    const SystemModel model = load_system_model(model_path);
    const auto catalog = enumerate_ccf_catalog(model, derive_redundancy_groups(model), model.ccf_policy());
    const std::string text = ccf_catalog_to_csv(catalog);
    if (out) {
      write_text_file(*out, text);
      io.out << catalog.size() << " CCF events\n";
    } else {
      io.out << text;
    }
    return kExitOk;
  });
}

int cmd_cutsets(const CutsetsConfig& c, Streams io) {
  return guarded(io, [&] {
    if (c.truncation && *c.truncation < 1) {
      io.err << "error: --truncate must be at least 1\n";
      return kExitUsage;
    }
    FaultTree ft = fault_tree_from_json(read_text_file(c.tree_path));
    if (!c.gate.empty()) ft = extract_subtree(ft, c.gate);
    const EventKindSet keep = parse_event_filter(c.filter);
    if (keep != all_event_kinds()) ft = filter_events(ft, keep).tree;
    SolveOptions opts;
    opts.max_order = c.truncation;
    opts.threads = c.threads;
    opts.max_rows = c.max_rows;
    const CutSetCollection css = solve_minimal_cut_sets(ft, opts);
    if (c.out) {
      write_text_file(*c.out, cut_sets_to_csv(css));
    } else {
      io.out << canonical_cut_set_text(css);
    }
    print_histogram(order_histogram(css), c.out ? io.out : io.err);
    return kExitOk;
  });
}

int cmd_oracle_check(const OracleConfig& c, Streams io) {
  return guarded(io, [&] {
    std::mt19937_64 rng(c.seed);
    RandomTreeOptions opts;
    opts.max_events = c.max_events;
    opts.max_gates = c.max_gates;
    int mismatches = 0;
    std::size_t sets = 0;
    for (int t = 0; t < c.trials; ++t) {
      const FaultTree ft = random_coherent_tree(rng, opts);
      const auto fast = solve_minimal_cut_sets(ft);
      const auto slow = brute_force_cut_sets(ft);
      sets += fast.sets.size();
      bool ok = fast.sets == slow.sets;
      if (ok && c.truncation_check) {
        for (int k = 1; k <= 6 && ok; ++k) {
          SolveOptions so;
          so.max_order = k;
          const auto truncated = solve_minimal_cut_sets(ft, so);
          ok = truncated.sets.size() == fast.count_up_to(static_cast<std::size_t>(k)) &&
               std::equal(truncated.sets.begin(), truncated.sets.end(), fast.sets.begin());
        }
      }
      if (!ok) {
        ++mismatches;
        io.err << "mismatch in trial " << t << ":\n" << fault_tree_to_json(ft);
      }
    }
    io.out << c.trials << " trees, " << sets << " cut sets, " << mismatches << " mismatches (seed " << c.seed
           << ")\n";
    return mismatches == 0 ? kExitOk : kExitFailure;
  });
}

int cmd_fixture(const std::optional<fs::path>& out, Streams io) {
  return guarded(io, [&] {
    const std::string text = serialize_system_model(build_rts_reference_model());
    if (out) {
      write_text_file(*out, text);
    } else {
      io.out << text;
    }
    return kExitOk;
  });
}

}  // namespace resha::cli
