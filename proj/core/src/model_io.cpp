#include "resha/model_io.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "resha/detail/json.hpp"

namespace resha {

using nlohmann::json;

namespace {

class Reader {
 public:
  std::vector<Diagnostic> diagnostics;

  void fail(DiagnosticCode code, const std::string& path, std::string message) {
    diagnostics.push_back({code, path, std::move(message)});
  }

  bool expect_object(const json& j, const std::string& path, std::initializer_list<const char*> required,
                     std::initializer_list<const char*> optional) {
    if (!j.is_object()) {
      fail(DiagnosticCode::kBadValue, path, "expected an object");
      return false;
    }
    std::set<std::string> known;
    for (const char* k : required) {
      known.insert(k);
      if (!j.contains(k)) fail(DiagnosticCode::kMissingField, path, std::string("missing field '") + k + "'");
    }
    for (const char* k : optional) known.insert(k);
    for (const auto& [key, _] : j.items()) {
      if (!known.contains(key)) fail(DiagnosticCode::kUnknownField, path + "/" + key, "unknown field '" + key + "'");
    }
    return true;
  }

  std::string str(const json& j, const char* key, const std::string& path, std::string fallback = {}) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_string()) {
      fail(DiagnosticCode::kBadValue, path + "/" + key, "expected a string");
      return fallback;
    }
    return v.get<std::string>();
  }

  bool boolean(const json& j, const char* key, const std::string& path, bool fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_boolean()) {
      fail(DiagnosticCode::kBadValue, path + "/" + key, "expected true or false");
      return fallback;
    }
    return v.get<bool>();
  }

  std::vector<std::string> strings(const json& j, const char* key, const std::string& path) {
    std::vector<std::string> out;
    if (!j.contains(key)) return out;
    const auto& v = j.at(key);
    if (!v.is_array()) {
      fail(DiagnosticCode::kBadValue, path + "/" + key, "expected an array of strings");
      return out;
    }
    for (const auto& item : v) {
      if (!item.is_string()) {
        fail(DiagnosticCode::kBadValue, path + "/" + key, "expected an array of strings");
        continue;
      }
      out.push_back(item.get<std::string>());
    }
    return out;
  }

  const json* array(const json& j, const char* key, const std::string& path) {
    if (!j.contains(key)) return nullptr;
    const auto& v = j.at(key);
    if (!v.is_array()) {
      fail(DiagnosticCode::kBadValue, path + "/" + key, "expected an array");
      return nullptr;
    }
    return &v;
  }

  std::optional<NodeId> node_id(const std::string& text, const std::string& path) {
    try {
      return parse_node_id(text);
    } catch (const FormatError& e) {
      fail(DiagnosticCode::kBadValue, path, e.what());
      return std::nullopt;
    }
  }

  template <typename F>
  auto enum_value(F&& convert, const std::string& text, const std::string& path) -> std::optional<decltype(convert(text))> {
    try {
      return convert(text);
    } catch (const FormatError& e) {
      fail(DiagnosticCode::kBadValue, path, e.what());
      return std::nullopt;
    }
  }

  std::map<UcaCategory, json> by_category(const json& j, const char* key, const std::string& path) {
    std::map<UcaCategory, json> out;
    if (!j.contains(key)) return out;
    const auto& v = j.at(key);
    if (!v.is_object()) {
      fail(DiagnosticCode::kBadValue, path + "/" + key, "expected an object keyed by category letter");
      return out;
    }
    for (const auto& [letter, value] : v.items()) {
      if (letter.size() != 1 || letter[0] < 'a' || letter[0] > 'd') {
        fail(DiagnosticCode::kUnknownField, path + "/" + key + "/" + letter, "category keys are a, b, c or d");
        continue;
      }
      out.emplace(category_from_letter(letter[0]), value);
    }
    return out;
  }
};

Node read_node(Reader& r, const json& j, const std::string& path) {
  Node n;
  r.expect_object(j, path, {"id", "name", "kind", "technology"}, {"role", "class", "subsystem"});
  if (!j.is_object()) return n;
  const std::string id_text = r.str(j, "id", path);
  if (auto id = r.node_id(id_text, path + "/id")) n.id = *id;
  n.name = r.str(j, "name", path);
  if (auto k = r.enum_value(node_kind_from_string, r.str(j, "kind", path, "component"), path + "/kind")) n.kind = *k;
  n.role = r.str(j, "role", path);
  if (auto t = r.enum_value(technology_from_string, r.str(j, "technology", path, "digital"), path + "/technology")) {
    n.technology = *t;
  }
  if (j.contains("class")) n.equipment_class = r.str(j, "class", path);
  n.subsystem = r.str(j, "subsystem", path);
  return n;
}

Link read_link(Reader& r, const json& j, const std::string& path) {
  Link l;
  r.expect_object(j, path, {"id", "type", "source", "targets"}, {});
  if (!j.is_object()) return l;
  l.id = r.str(j, "id", path);
  if (auto t = r.enum_value(link_type_from_string, r.str(j, "type", path, "control"), path + "/type")) l.type = *t;
  if (auto s = r.node_id(r.str(j, "source", path), path + "/source")) l.source = *s;
  for (const auto& t : r.strings(j, "targets", path)) {
    if (auto id = r.node_id(t, path + "/targets")) l.targets.push_back(*id);
  }
  return l;
}

ControlActionSpec read_action(Reader& r, const json& j, const std::string& path) {
  ControlActionSpec ca;
  r.expect_object(j, path, {"link", "command", "verb"},
                  {"target_phrase", "continuous", "refined", "contexts", "hazards", "not_applicable"});
  if (!j.is_object()) return ca;
  ca.link = r.str(j, "link", path);
  ca.command = r.str(j, "command", path);
  ca.verb = r.str(j, "verb", path);
  ca.target_phrase = r.str(j, "target_phrase", path);
  ca.continuous = r.boolean(j, "continuous", path, false);
  ca.refined = r.boolean(j, "refined", path, false);
  for (const auto& [c, v] : r.by_category(j, "contexts", path)) {
    if (!v.is_string()) {
      r.fail(DiagnosticCode::kBadValue, path + "/contexts", "context must be a string");
      continue;
    }
    ca.contexts[category_index(c)] = v.get<std::string>();
  }
  for (const auto& [c, v] : r.by_category(j, "hazards", path)) {
    if (!v.is_array()) {
      r.fail(DiagnosticCode::kBadValue, path + "/hazards", "hazard list must be an array");
      continue;
    }
    for (const auto& h : v) {
      if (h.is_string()) ca.hazards[category_index(c)].push_back(h.get<std::string>());
    }
  }
  for (const auto& [c, v] : r.by_category(j, "not_applicable", path)) {
    if (!v.is_string()) {
      r.fail(DiagnosticCode::kBadValue, path + "/not_applicable", "justification must be a string");
      continue;
    }
    ca.not_applicable[category_index(c)] = v.get<std::string>();
  }
  return ca;
}

GateSection read_gates(Reader& r, const json& j, const std::string& path) {
  GateSection g;
  r.expect_object(j, path, {"top_events", "declarations"}, {});
  if (!j.is_object()) return g;
  if (const json* tops = r.array(j, "top_events", path)) {
    for (std::size_t i = 0; i < tops->size(); ++i) {
      const json& t = (*tops)[i];
      const std::string p = path + "/top_events/" + std::to_string(i);
      r.expect_object(t, p, {"id", "gate", "kind"}, {"description", "scopes"});
      if (!t.is_object()) continue;
      TopEventSpec spec;
      spec.id = r.str(t, "id", p);
      spec.gate = r.str(t, "gate", p);
      if (auto k = r.enum_value(top_event_kind_from_string, r.str(t, "kind", p, "failure-to-act"), p + "/kind")) {
        spec.kind = *k;
      }
      spec.description = r.str(t, "description", p);
      if (const json* scopes = r.array(t, "scopes", p)) {
        for (std::size_t s = 0; s < scopes->size(); ++s) {
          const json& sj = (*scopes)[s];
          const std::string sp = p + "/scopes/" + std::to_string(s);
          r.expect_object(sj, sp, {"label", "gate"}, {"filter"});
          if (!sj.is_object()) continue;
          spec.scopes.push_back({r.str(sj, "label", sp), r.str(sj, "gate", sp), r.str(sj, "filter", sp, "all")});
        }
      }
      g.top_events.push_back(std::move(spec));
    }
  }
  if (const json* decls = r.array(j, "declarations", path)) {
    for (std::size_t i = 0; i < decls->size(); ++i) {
      const json& d = (*decls)[i];
      const std::string p = path + "/declarations/" + std::to_string(i);
      r.expect_object(d, p, {"id", "type", "inputs"}, {"k", "replicate", "class", "description"});
      if (!d.is_object()) continue;
      GateDeclaration decl;
      decl.id = r.str(d, "id", p);
      if (auto k = r.enum_value(gate_kind_from_string, r.str(d, "type", p, "or"), p + "/type")) decl.kind = *k;
      if (d.contains("k")) {
        if (d.at("k").is_number_integer()) {
          decl.k = d.at("k").get<int>();
        } else {
          r.fail(DiagnosticCode::kBadValue, p + "/k", "k must be an integer");
        }
      }
      decl.inputs = r.strings(d, "inputs", p);
      if (auto rep = r.enum_value(replication_from_string, r.str(d, "replicate", p, "none"), p + "/replicate")) {
        decl.replicate = *rep;
      }
      decl.equipment_class = r.str(d, "class", p);
      decl.description = r.str(d, "description", p);
      g.declarations.push_back(std::move(decl));
    }
  }
  return g;
}

CcfPolicy read_policy(Reader& r, const json& j, const std::string& path) {
  CcfPolicy p;
  r.expect_object(j, path, {},
                  {"intra_division", "cross_division", "partial_interdivision", "software_categories",
                   "excluded_classes", "class_labels", "event_descriptions"});
  if (!j.is_object()) return p;
  p.include_intra_division = r.boolean(j, "intra_division", path, true);
  p.include_cross_division = r.boolean(j, "cross_division", path, true);
  p.include_partial_interdivision = r.boolean(j, "partial_interdivision", path, false);
  if (j.contains("software_categories")) {
    std::set<UcaCategory> cats;
    for (const auto& s : r.strings(j, "software_categories", path)) {
      if (s.size() != 1) {
        r.fail(DiagnosticCode::kBadValue, path + "/software_categories", "category must be one letter");
        continue;
      }
      if (auto c = r.enum_value([](const std::string& t) { return category_from_letter(t[0]); }, s,
                                path + "/software_categories")) {
        cats.insert(*c);
      }
    }
    p.software_categories = cats;
  }
  for (const auto& s : r.strings(j, "excluded_classes", path)) p.excluded_classes.insert(s);
  for (const char* key : {"class_labels", "event_descriptions"}) {
    if (!j.contains(key)) continue;
    const auto& m = j.at(key);
    if (!m.is_object()) {
      r.fail(DiagnosticCode::kBadValue, path + "/" + key, "expected an object of strings");
      continue;
    }
    auto& target = std::string_view(key) == "class_labels" ? p.class_labels : p.event_descriptions;
    for (const auto& [k, v] : m.items()) {
      if (v.is_string()) {
        target.emplace(k, v.get<std::string>());
      } else {
        r.fail(DiagnosticCode::kBadValue, path + "/" + key + "/" + k, "expected a string");
      }
    }
  }
  return p;
}

json category_map(const auto& values, auto&& to_json, auto&& keep) {
  json out = json::object();
  for (UcaCategory c : kAllUcaCategories) {
    const auto& v = values[category_index(c)];
    if (keep(v)) out[std::string(1, category_letter(c))] = to_json(v);
  }
  return out;
}

}  // namespace

SystemModel parse_system_model(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ModelError({{DiagnosticCode::kSyntax, "offset " + std::to_string(e.byte), e.what()}});
  }
  Reader r;
  ModelParts parts;
  r.expect_object(doc, "",
                  {"resha_model_version", "nodes", "links", "losses", "hazards", "control_actions", "gates",
                   "ccf_policy"},
                  {"name", "description"});
  if (!doc.is_object()) throw ModelError(std::move(r.diagnostics));
  if (doc.contains("resha_model_version")) {
    const auto& v = doc.at("resha_model_version");
    if (!v.is_number_integer() || v.get<int>() != kModelFormatVersion) {
      r.fail(DiagnosticCode::kBadValue, "/resha_model_version",
             "unsupported model version (expected " + std::to_string(kModelFormatVersion) + ")");
    }
  }
  parts.name = r.str(doc, "name", "");
  parts.description = r.str(doc, "description", "");
  if (const json* nodes = r.array(doc, "nodes", "")) {
    for (std::size_t i = 0; i < nodes->size(); ++i) parts.nodes.push_back(read_node(r, (*nodes)[i], "/nodes/" + std::to_string(i)));
  }
  if (const json* links = r.array(doc, "links", "")) {
    for (std::size_t i = 0; i < links->size(); ++i) parts.links.push_back(read_link(r, (*links)[i], "/links/" + std::to_string(i)));
  }
  if (const json* losses = r.array(doc, "losses", "")) {
    for (std::size_t i = 0; i < losses->size(); ++i) {
      const json& l = (*losses)[i];
      const std::string p = "/losses/" + std::to_string(i);
      r.expect_object(l, p, {"id", "description"}, {});
      if (l.is_object()) parts.losses.push_back({r.str(l, "id", p), r.str(l, "description", p)});
    }
  }
  if (const json* hazards = r.array(doc, "hazards", "")) {
    for (std::size_t i = 0; i < hazards->size(); ++i) {
      const json& h = (*hazards)[i];
      const std::string p = "/hazards/" + std::to_string(i);
      r.expect_object(h, p, {"id", "description", "losses"}, {});
      if (h.is_object()) parts.hazards.push_back({r.str(h, "id", p), r.str(h, "description", p), r.strings(h, "losses", p)});
    }
  }
  if (const json* actions = r.array(doc, "control_actions", "")) {
    for (std::size_t i = 0; i < actions->size(); ++i) {
      parts.control_actions.push_back(read_action(r, (*actions)[i], "/control_actions/" + std::to_string(i)));
    }
  }
  if (doc.contains("gates")) parts.gates = read_gates(r, doc.at("gates"), "/gates");
  if (doc.contains("ccf_policy")) parts.ccf_policy = read_policy(r, doc.at("ccf_policy"), "/ccf_policy");

  if (!r.diagnostics.empty()) throw ModelError(std::move(r.diagnostics));
  return SystemModel::create(std::move(parts));
}

SystemModel load_system_model(const std::filesystem::path& path) {
  return parse_system_model(read_text_file(path));
}

std::string serialize_system_model(const SystemModel& model) {
  json doc = json::object();
  doc["resha_model_version"] = kModelFormatVersion;
  doc["name"] = model.name();
  if (!model.description().empty()) doc["description"] = model.description();

  json nodes = json::array();
  for (const Node& n : model.nodes()) {
    json j{{"id", format_node_id(n.id)},
           {"name", n.name},
           {"kind", to_string(n.kind)},
           {"technology", to_string(n.technology)},
           {"subsystem", n.subsystem}};
    if (!n.role.empty()) j["role"] = n.role;
    if (n.equipment_class) j["class"] = *n.equipment_class;
    nodes.push_back(std::move(j));
  }
  doc["nodes"] = std::move(nodes);

  json links = json::array();
  for (const Link& l : model.links()) {
    json targets = json::array();
    for (const auto& t : l.targets) targets.push_back(format_node_id(t));
    links.push_back({{"id", l.id}, {"type", to_string(l.type)}, {"source", format_node_id(l.source)}, {"targets", targets}});
  }
  doc["links"] = std::move(links);

  json losses = json::array();
  for (const Loss& l : model.losses()) losses.push_back({{"id", l.id}, {"description", l.description}});
  doc["losses"] = std::move(losses);

  json hazards = json::array();
  for (const Hazard& h : model.hazards()) {
    hazards.push_back({{"id", h.id}, {"description", h.description}, {"losses", h.losses}});
  }
  doc["hazards"] = std::move(hazards);

  json actions = json::array();
  for (const ControlActionSpec& ca : model.control_actions()) {
    json j{{"link", ca.link}, {"command", ca.command}, {"verb", ca.verb}, {"continuous", ca.continuous}, {"refined", ca.refined}};
    if (!ca.target_phrase.empty()) j["target_phrase"] = ca.target_phrase;
    j["contexts"] = category_map(
        ca.contexts, [](const std::string& s) { return json(s); }, [](const std::string& s) { return !s.empty(); });
    j["hazards"] = category_map(
        ca.hazards, [](const std::vector<std::string>& v) { return json(v); },
        [](const std::vector<std::string>& v) { return !v.empty(); });
    json na = category_map(
        ca.not_applicable, [](const std::optional<std::string>& s) { return json(*s); },
        [](const std::optional<std::string>& s) { return s.has_value(); });
    if (!na.empty()) j["not_applicable"] = std::move(na);
    actions.push_back(std::move(j));
  }
  doc["control_actions"] = std::move(actions);

  json tops = json::array();
  for (const TopEventSpec& t : model.gates().top_events) {
    json scopes = json::array();
    for (const auto& s : t.scopes) scopes.push_back({{"label", s.label}, {"gate", s.gate}, {"filter", s.filter}});
    tops.push_back({{"id", t.id}, {"gate", t.gate}, {"kind", to_string(t.kind)}, {"description", t.description}, {"scopes", scopes}});
  }
  json decls = json::array();
  for (const GateDeclaration& d : model.gates().declarations) {
    json j{{"id", d.id}, {"type", to_string(d.kind)}, {"inputs", d.inputs}};
    if (d.kind == GateKind::kVote) j["k"] = d.k;
    if (d.replicate != Replication::kNone) {
      j["replicate"] = to_string(d.replicate);
    }
    if (!d.equipment_class.empty()) j["class"] = d.equipment_class;
    if (!d.description.empty()) j["description"] = d.description;
    decls.push_back(std::move(j));
  }
  doc["gates"] = {{"top_events", tops}, {"declarations", decls}};

  const CcfPolicy& p = model.ccf_policy();
  json policy{{"intra_division", p.include_intra_division},
              {"cross_division", p.include_cross_division},
              {"partial_interdivision", p.include_partial_interdivision},
              {"excluded_classes", p.excluded_classes},
              {"class_labels", p.class_labels},
              {"event_descriptions", p.event_descriptions}};
  if (p.software_categories) {
    json cats = json::array();
    for (auto c : *p.software_categories) cats.push_back(std::string(1, category_letter(c)));
    policy["software_categories"] = cats;
  }
  doc["ccf_policy"] = std::move(policy);
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return os.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("error writing " + path.string());
}

}  // namespace resha
