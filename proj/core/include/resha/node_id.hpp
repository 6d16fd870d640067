#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace resha {

enum class NodeKind { kDivision, kUnit, kModule, kComponent };

/// Hierarchical identifier DIVISIONunit.module.component, e.g. "A01.02.03".
///
/// A zero numeric field means "level not present": A00.00.00 is division A,
/// A01.00.00 its first unit, A00.00.02 a component placed directly under the
/// division. Ordering is structural: (division, unit, module, component).
struct NodeId {
  std::string division;
  int unit = 0;
  int module = 0;
  int component = 0;

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
  friend bool operator==(const NodeId&, const NodeId&) = default;

  /// The level implied by the deepest non-zero field.
  NodeKind implied_kind() const noexcept;

  /// The ID with the deepest non-zero field cleared. Divisions are their own parent.
  NodeId parent() const;

  /// Depth in the hierarchy: division 1, unit 2, module 3, component 4.
  int depth() const noexcept;
};

/// Parses "XXnn.nn.nn". Throws FormatError naming the offending segment.
NodeId parse_node_id(std::string_view text);

/// Canonical text form with two-digit zero-padded numeric fields.
std::string format_node_id(const NodeId& id);

std::string to_string(NodeKind kind);
NodeKind node_kind_from_string(std::string_view text);
int depth_of(NodeKind kind) noexcept;

}  // namespace resha

template <>
struct std::hash<resha::NodeId> {
  std::size_t operator()(const resha::NodeId& id) const noexcept {
    std::size_t h = std::hash<std::string>{}(id.division);
    h ^= static_cast<std::size_t>(id.unit * 10007 + id.module * 101 + id.component) + 0x9e3779b9 + (h << 6) + (h >> 2);
    return h;
  }
};
