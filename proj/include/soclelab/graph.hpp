#pragma once

#include <cstddef>
#include <vector>

namespace soclelab {

/// Bipartite graph on block indices: left vertices come from the left acting ring,
/// right vertices from the right acting ring. Edge lengths are bimodule lengths.
struct SocleGraph {
    struct Edge {
        std::size_t left;
        std::size_t right;
        std::size_t length;
    };
    std::vector<std::size_t> left_vertices;
    std::vector<std::size_t> right_vertices;
    std::vector<Edge> edges;

    long vertex_count() const noexcept { return static_cast<long>(left_vertices.size() + right_vertices.size()); }
    long edge_count() const noexcept { return static_cast<long>(edges.size()); }
    /// Euler characteristic: vertices minus edges.
    long chi() const noexcept { return vertex_count() - edge_count(); }
    std::vector<std::size_t> edge_lengths() const {
        std::vector<std::size_t> out;
        out.reserve(edges.size());
        for (const auto& e : edges) out.push_back(e.length);
        return out;
    }
};

}  // namespace soclelab
