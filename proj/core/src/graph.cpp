#include "causalc/graph.hpp"

#include <algorithm>

#include "causalc/errors.hpp"

namespace causalc {

QuantumLabeledGraph::QuantumLabeledGraph(std::vector<NodeInfo> nodes,
                                         std::vector<std::pair<int, int>> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
    const int n = node_count();
    for (const auto &info : nodes_) {
        if (info.dim < 1) throw DimensionError("graph node dimension must be >= 1");
        if (info.quiescent < 0 || info.quiescent >= info.dim) {
            throw DimensionError("quiescent basis index out of range");
        }
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    out_.resize(static_cast<std::size_t>(n));
    in_.resize(static_cast<std::size_t>(n));
    for (const auto &[a, b] : edges_) {
        if (a < 0 || a >= n || b < 0 || b >= n) {
            throw DimensionError("edge endpoint out of range");
        }
        out_[static_cast<std::size_t>(a)].push_back(b);
        in_[static_cast<std::size_t>(b)].push_back(a);
    }
    // edges_ is sorted by (a, b), so out-lists come out ascending; in-lists
    // need their own sort.
    for (auto &l : in_) std::sort(l.begin(), l.end());
}

QuantumLabeledGraph QuantumLabeledGraph::transpose() const {
    std::vector<std::pair<int, int>> reversed;
    reversed.reserve(edges_.size());
    for (const auto &[a, b] : edges_) reversed.emplace_back(b, a);
    return QuantumLabeledGraph(nodes_, std::move(reversed));
}

SpaceLayout QuantumLabeledGraph::state_layout() const {
    std::vector<std::pair<Slot, Index>> slot_dims;
    slot_dims.reserve(nodes_.size());
    for (int x = 0; x < node_count(); ++x) {
        slot_dims.emplace_back(Slot{kComputedTape, x}, node(x).dim);
    }
    return SpaceLayout::create(std::move(slot_dims));
}

std::vector<Index> QuantumLabeledGraph::quiescent_digits() const {
    std::vector<Index> q;
    q.reserve(nodes_.size());
    for (const auto &info : nodes_) q.push_back(info.quiescent);
    return q;
}

DegreeStats degree_stats(const QuantumLabeledGraph &g) {
    DegreeStats s;
    for (int x = 0; x < g.node_count(); ++x) {
        const auto &out = g.neighborhood(x);
        const auto &in = g.in_neighborhood(x);
        s.max_out = std::max(s.max_out, static_cast<int>(out.size()));
        s.max_in = std::max(s.max_in, static_cast<int>(in.size()));
        const bool self = std::binary_search(in.begin(), in.end(), x);
        s.max_in_closed = std::max(s.max_in_closed, static_cast<int>(in.size()) + (self ? 0 : 1));
    }
    return s;
}

std::vector<std::vector<int>> Coloring::classes() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(color_count));
    for (int v = 0; v < static_cast<int>(color_of.size()); ++v) {
        out[static_cast<std::size_t>(color_of[static_cast<std::size_t>(v)])].push_back(v);
    }
    return out;
}

Coloring conflict_coloring(std::span<const Support> supports) {
    const int n = static_cast<int>(supports.size());
    Coloring c;
    c.color_of.assign(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < n; ++v) {
        std::vector<bool> used(static_cast<std::size_t>(n), false);
        for (int w = 0; w < v; ++w) {
            if (supports[static_cast<std::size_t>(v)].intersects(
                    supports[static_cast<std::size_t>(w)])) {
                used[static_cast<std::size_t>(c.color_of[static_cast<std::size_t>(w)])] = true;
            }
        }
        int color = 0;
        while (used[static_cast<std::size_t>(color)]) ++color;
        c.color_of[static_cast<std::size_t>(v)] = color;
        c.color_count = std::max(c.color_count, color + 1);
    }
    return c;
}

} // namespace causalc
