#pragma once

#include <span>
#include <string>
#include <vector>

#include "causalc/layout.hpp"

namespace causalc {

/// Per-node data: the local Hilbert dimension and the basis index of the
/// node's quiescent (resting) state.
struct NodeInfo {
    Index dim = 2;
    Index quiescent = 0;

    friend constexpr bool operator==(const NodeInfo &, const NodeInfo &) = default;
};

/// Directed graph whose nodes carry finite-dimensional quantum systems.
/// An edge (a, b) means "b may influence a": the neighborhood N(a) collects
/// the out-neighbors of a, and a node is NOT implicitly its own neighbor.
class QuantumLabeledGraph {
  public:
    QuantumLabeledGraph() = default;
    QuantumLabeledGraph(std::vector<NodeInfo> nodes, std::vector<std::pair<int, int>> edges);

    int node_count() const noexcept { return static_cast<int>(nodes_.size()); }
    const std::vector<NodeInfo> &nodes() const noexcept { return nodes_; }
    const NodeInfo &node(int x) const { return nodes_.at(static_cast<std::size_t>(x)); }
    const std::vector<std::pair<int, int>> &edges() const noexcept { return edges_; }

    /// Out-neighbors of x (the neighborhood N(x)), ascending.
    const std::vector<int> &neighborhood(int x) const {
        return out_.at(static_cast<std::size_t>(x));
    }
    /// In-neighbors of x (the neighborhood of x in the transposed graph).
    const std::vector<int> &in_neighborhood(int x) const {
        return in_.at(static_cast<std::size_t>(x));
    }

    /// The graph with every edge reversed, same node labels.
    QuantumLabeledGraph transpose() const;

    /// Layout of the joint space, one computed-tape slot per node.
    SpaceLayout state_layout() const;

    /// Quiescent digit per node, indexed by node id.
    std::vector<Index> quiescent_digits() const;

    friend bool operator==(const QuantumLabeledGraph &, const QuantumLabeledGraph &) = default;

  private:
    std::vector<NodeInfo> nodes_;
    std::vector<std::pair<int, int>> edges_; // sorted, unique
    std::vector<std::vector<int>> out_;
    std::vector<std::vector<int>> in_;
};

/// Degree statistics controlling the depth bound of the compiled circuit.
struct DegreeStats {
    int max_out = 0;         // max |N(x)|
    int max_in = 0;          // max |N^T(x)|
    int max_in_closed = 0;   // max |N^T(x) u {x}|
};

DegreeStats degree_stats(const QuantumLabeledGraph &g);

/// A proper coloring of an implicit conflict graph; color classes become the
/// parallel layers of a circuit schedule.
struct Coloring {
    std::vector<int> color_of; // node -> color
    int color_count = 0;

    std::vector<std::vector<int>> classes() const;
};

/// Greedy coloring in ascending node order, lowest available color first, of
/// the conflict graph "supports(a) and supports(b) intersect". Deterministic.
Coloring conflict_coloring(std::span<const Support> supports);

} // namespace causalc
