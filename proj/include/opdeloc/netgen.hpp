#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "json.hpp"

namespace opdeloc {

using Rng = std::mt19937_64;

// Undirected edge between two Majorana modes, 0-based, with a < b.
struct Edge {
    int a = 0;
    int b = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Interaction topology: one vertex per Majorana mode.
class Graph {
public:
    Graph() = default;
    // Throws std::invalid_argument on self-loops, duplicates or out-of-range
    // endpoints. Edges are normalized to a < b and kept in insertion order.
    Graph(int num_vertices, std::vector<Edge> edges);

    int num_vertices() const { return num_vertices_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }

    bool has_edge(int a, int b) const;
    int degree(int v) const;
    const std::vector<int>& neighbours(int v) const { return adjacency_[v]; }
    bool is_connected() const;

private:
    int num_vertices_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adjacency_;
};

Graph make_complete(int num_vertices);
// Vertex L-1 (the last one) is the hub.
Graph make_star(int num_vertices);
Graph make_ring(int num_vertices);

struct WattsStrogatzParams {
    int half_degree = 1;       // k: each vertex starts with 2k ring neighbours
    double rewire_prob = 0.0;  // p
    int max_retries = 100;     // proposals per edge before it is left in place
};

// Circulant lattice with 2k nearest neighbours, then each lattice edge is
// visited once in canonical order (first endpoint, then ring offset) and with
// probability p its larger endpoint is reattached to a uniformly drawn vertex
// not adjacent to the kept one. Proposals that disconnect the graph are
// re-drawn. The result is connected and has exactly L*k edges.
Graph watts_strogatz(int num_vertices, const WattsStrogatzParams& params, Rng& rng);

// {"L": int, "edges": [[a,b],...]} with 1-based vertex labels.
nlohmann::json to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

}  // namespace opdeloc
