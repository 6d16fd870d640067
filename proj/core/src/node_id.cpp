#include "resha/node_id.hpp"

#include <cctype>
#include <cstdio>

#include "resha/error.hpp"

namespace resha {

namespace {

int parse_two_digits(std::string_view field, std::string_view text) {
  if (field.size() != 2 || !std::isdigit(static_cast<unsigned char>(field[0])) ||
      !std::isdigit(static_cast<unsigned char>(field[1]))) {
    throw FormatError("node id '" + std::string(text) + "': numeric field '" + std::string(field) +
                          "' must be exactly two digits",
                      std::string(field));
  }
  return (field[0] - '0') * 10 + (field[1] - '0');
}

}  // namespace

NodeKind NodeId::implied_kind() const noexcept {
  if (component != 0) return NodeKind::kComponent;
  if (module != 0) return NodeKind::kModule;
  if (unit != 0) return NodeKind::kUnit;
  return NodeKind::kDivision;
}

NodeId NodeId::parent() const {
  NodeId p = *this;
  if (p.component != 0) {
    p.component = 0;
  } else if (p.module != 0) {
    p.module = 0;
  } else {
    p.unit = 0;
  }
  return p;
}

int NodeId::depth() const noexcept { return depth_of(implied_kind()); }

NodeId parse_node_id(std::string_view text) {
  const auto first_dot = text.find('.');
  if (first_dot == std::string_view::npos) {
    throw FormatError("node id '" + std::string(text) + "': expected XXnn.nn.nn", std::string(text));
  }
  const auto second_dot = text.find('.', first_dot + 1);
  if (second_dot == std::string_view::npos || text.find('.', second_dot + 1) != std::string_view::npos) {
    throw FormatError("node id '" + std::string(text) + "': three dot-separated numeric fields required",
                      std::string(text));
  }
  const std::string_view head = text.substr(0, first_dot);
  if (head.size() < 3 || head.size() > 4) {
    throw FormatError("node id '" + std::string(text) + "': division tag (1-2 characters) plus two-digit unit expected in '" +
                          std::string(head) + "'",
                      std::string(head));
  }
  const std::string_view tag = head.substr(0, head.size() - 2);
  if (!std::isalpha(static_cast<unsigned char>(tag[0]))) {
    throw FormatError("node id '" + std::string(text) + "': division tag must lead with a letter, got '" +
                          std::string(tag) + "'",
                      std::string(tag));
  }
  for (char c : tag) {
    if (!std::isalnum(static_cast<unsigned char>(c))) {
      throw FormatError("node id '" + std::string(text) + "': division tag '" + std::string(tag) +
                            "' must be alphanumeric",
                        std::string(tag));
    }
  }
  NodeId id;
  id.division = std::string(tag);
  id.unit = parse_two_digits(head.substr(head.size() - 2), text);
  id.module = parse_two_digits(text.substr(first_dot + 1, second_dot - first_dot - 1), text);
  id.component = parse_two_digits(text.substr(second_dot + 1), text);
  return id;
}

std::string format_node_id(const NodeId& id) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d.%02d.%02d", id.unit, id.module, id.component);
  return id.division + buf;
}

std::string to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::kDivision: return "division";
    case NodeKind::kUnit: return "unit";
    case NodeKind::kModule: return "module";
    case NodeKind::kComponent: return "component";
  }
  return "?";
}

NodeKind node_kind_from_string(std::string_view text) {
  if (text == "division") return NodeKind::kDivision;
  if (text == "unit") return NodeKind::kUnit;
  if (text == "module") return NodeKind::kModule;
  if (text == "component") return NodeKind::kComponent;
  throw FormatError("unknown node kind '" + std::string(text) + "'", std::string(text));
}

int depth_of(NodeKind kind) noexcept { return static_cast<int>(kind) + 1; }

}  // namespace resha
