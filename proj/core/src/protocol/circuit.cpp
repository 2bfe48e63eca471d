#include "qkdn/protocol/circuit.hpp"

#include <algorithm>
#include <deque>

namespace qkdn::protocol {

void Topology::add_node(const NodeId& node) { adjacency_[node]; }

void Topology::add_link(const NodeId& a, const NodeId& b) {
  if (a == b) throw InvalidArgument("self-link on " + a);
  adjacency_[a].insert(b);
  adjacency_[b].insert(a);
}

bool Topology::adjacent(const NodeId& a, const NodeId& b) const {
  auto it = adjacency_.find(a);
  return it != adjacency_.end() && it->second.contains(b);
}

const std::set<NodeId>& Topology::neighbours(const NodeId& node) const {
  auto it = adjacency_.find(node);
  if (it == adjacency_.end()) throw InvalidArgument("unknown node " + node);
  return it->second;
}

Topology Topology::line(std::span<const NodeId> nodes) {
  Topology t;
  for (const auto& n : nodes) t.add_node(n);
  for (std::size_t i = 1; i < nodes.size(); ++i) t.add_link(nodes[i - 1], nodes[i]);
  return t;
}

Circuit::Circuit(std::vector<NodeId> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw InvalidArgument("a circuit needs at least two nodes");
  auto sorted = nodes_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("circuit nodes must be distinct");
  }
}

std::span<const NodeId> Circuit::intermediates() const {
  return std::span(nodes_).subspan(1, nodes_.size() - 2);
}

std::pair<NodeId, NodeId> Circuit::link(std::size_t i) const {
  if (i >= link_count()) throw InvalidArgument("link index out of range");
  return {nodes_[i], nodes_[i + 1]};
}

std::size_t Circuit::position(const NodeId& node) const {
  auto it = std::find(nodes_.begin(), nodes_.end(), node);
  if (it == nodes_.end()) throw InvalidArgument(node + " is not in the circuit");
  return static_cast<std::size_t>(it - nodes_.begin());
}

bool Circuit::follows(const Topology& topology) const {
  for (std::size_t i = 0; i < link_count(); ++i) {
    if (!topology.adjacent(nodes_[i], nodes_[i + 1])) return false;
  }
  return true;
}

Circuit build_circuit(const Topology& topology, const NodeId& src, const NodeId& dst) {
  if (src == dst) throw InvalidArgument("source and destination must differ");
  if (!topology.contains(src) || !topology.contains(dst)) {
    throw InvalidArgument("source or destination missing from topology");
  }

  // Hop distances to dst; walking greedily from src through the smallest
  // neighbour one hop closer yields the lexicographically least shortest path.
  std::map<NodeId, std::size_t> dist{{dst, 0}};
  std::deque<NodeId> frontier{dst};
  while (!frontier.empty()) {
    auto node = frontier.front();
    frontier.pop_front();
    for (const auto& next : topology.neighbours(node)) {
      if (dist.emplace(next, dist[node] + 1).second) frontier.push_back(next);
    }
  }
  if (!dist.contains(src)) throw NoPath("no path from " + src + " to " + dst);

  std::vector<NodeId> path{src};
  while (path.back() != dst) {
    const auto here = dist.at(path.back());
    for (const auto& next : topology.neighbours(path.back())) {
      auto it = dist.find(next);
      if (it != dist.end() && it->second + 1 == here) {
        path.push_back(next);
        break;
      }
    }
  }
  return Circuit(std::move(path));
}

}  // namespace qkdn::protocol
