#pragma once

#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "qkdn/netsim/envelope.hpp"

namespace qkdn::protocol {

using netsim::NodeId;

class NoPath : public Error {
 public:
  using Error::Error;
};

/// Undirected QKD-link graph.
class Topology {
 public:
  void add_node(const NodeId& node);
  void add_link(const NodeId& a, const NodeId& b);

  [[nodiscard]] bool contains(const NodeId& node) const { return adjacency_.contains(node); }
  [[nodiscard]] bool adjacent(const NodeId& a, const NodeId& b) const;
  [[nodiscard]] const std::set<NodeId>& neighbours(const NodeId& node) const;
  [[nodiscard]] std::size_t size() const { return adjacency_.size(); }

  /// Chain nodes[0] - nodes[1] - ... - nodes[k].
  static Topology line(std::span<const NodeId> nodes);

 private:
  std::map<NodeId, std::set<NodeId>> adjacency_;
};

/// Ordered path [initiator, intermediates..., destination]. At least two
/// distinct nodes; the destination is part of the circuit.
class Circuit {
 public:
  explicit Circuit(std::vector<NodeId> nodes);

  [[nodiscard]] const std::vector<NodeId>& nodes() const { return nodes_; }
  [[nodiscard]] std::size_t size() const { return nodes_.size(); }
  [[nodiscard]] std::size_t link_count() const { return nodes_.size() - 1; }
  [[nodiscard]] const NodeId& initiator() const { return nodes_.front(); }
  [[nodiscard]] const NodeId& destination() const { return nodes_.back(); }
  [[nodiscard]] std::span<const NodeId> intermediates() const;
  /// Endpoints of link i, which joins nodes()[i] and nodes()[i + 1].
  [[nodiscard]] std::pair<NodeId, NodeId> link(std::size_t i) const;
  [[nodiscard]] std::size_t position(const NodeId& node) const;
  [[nodiscard]] bool follows(const Topology& topology) const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::vector<NodeId> nodes_;
};

/// Fewest-hop path from `src` to `dst`. Among equally short paths the
/// lexicographically smallest node sequence wins. Throws NoPath.
Circuit build_circuit(const Topology& topology, const NodeId& src, const NodeId& dst);

}  // namespace qkdn::protocol
