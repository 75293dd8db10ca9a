#include "opdeloc/netgen.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace opdeloc {

namespace {

bool connected_from_matrix(int n, const std::vector<char>& adj) {
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int visited = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w = 0; w < n; ++w) {
            if (adj[v * n + w] && !seen[w]) {
                seen[w] = 1;
                ++visited;
                stack.push_back(w);
            }
        }
    }
    return visited == n;
}

}  // namespace

Graph::Graph(int num_vertices, std::vector<Edge> edges)
    : num_vertices_(num_vertices), edges_(std::move(edges)), adjacency_(num_vertices) {
    if (num_vertices < 1) throw std::invalid_argument("graph needs at least one vertex");
    for (auto& e : edges_) {
        if (e.a > e.b) std::swap(e.a, e.b);
        if (e.a < 0 || e.b >= num_vertices_)
            throw std::invalid_argument("edge endpoint out of range");
        if (e.a == e.b) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.a));
        if (has_edge(e.a, e.b))
            throw std::invalid_argument("duplicate edge (" + std::to_string(e.a) + "," +
                                        std::to_string(e.b) + ")");
        adjacency_[e.a].push_back(e.b);
        adjacency_[e.b].push_back(e.a);
    }
}

bool Graph::has_edge(int a, int b) const {
    if (a < 0 || b < 0 || a >= num_vertices_ || b >= num_vertices_) return false;
    const auto& n = adjacency_[a];
    return std::find(n.begin(), n.end(), b) != n.end();
}

int Graph::degree(int v) const { return static_cast<int>(adjacency_.at(v).size()); }

bool Graph::is_connected() const {
    std::vector<char> seen(num_vertices_, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int visited = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adjacency_[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++visited;
                stack.push_back(w);
            }
        }
    }
    return visited == num_vertices_;
}

Graph make_complete(int num_vertices) {
    if (num_vertices < 2 || num_vertices % 2 != 0)
        throw std::invalid_argument("complete graph needs an even vertex count >= 2");
    std::vector<Edge> edges;
    edges.reserve(num_vertices * (num_vertices - 1) / 2);
    for (int a = 0; a < num_vertices; ++a)
        for (int b = a + 1; b < num_vertices; ++b) edges.push_back({a, b});
    return Graph(num_vertices, std::move(edges));
}

Graph make_star(int num_vertices) {
    if (num_vertices < 2) throw std::invalid_argument("star graph needs at least 2 vertices");
    std::vector<Edge> edges;
    const int hub = num_vertices - 1;
    for (int i = 0; i < hub; ++i) edges.push_back({i, hub});
    return Graph(num_vertices, std::move(edges));
}

Graph make_ring(int num_vertices) {
    if (num_vertices < 3) throw std::invalid_argument("ring needs at least 3 vertices");
    std::vector<Edge> edges;
    for (int i = 0; i < num_vertices; ++i) edges.push_back({i, (i + 1) % num_vertices});
    return Graph(num_vertices, std::move(edges));
}

Graph watts_strogatz(int num_vertices, const WattsStrogatzParams& params, Rng& rng) {
    const int n = num_vertices;
    const int k = params.half_degree;
    const double p = params.rewire_prob;
    if (k < 1) throw std::invalid_argument("watts_strogatz: k must be >= 1");
    if (n < 2 * k + 2) throw std::invalid_argument("watts_strogatz: need L >= 2k+2");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("watts_strogatz: p must lie in [0,1]");
    if (params.max_retries < 1) throw std::invalid_argument("watts_strogatz: max_retries must be >= 1");

    std::vector<char> adj(static_cast<std::size_t>(n) * n, 0);
    auto link = [&](int a, int b, char on) {
        adj[a * n + b] = on;
        adj[b * n + a] = on;
    };

    // slot = (lattice vertex i, its d-th clockwise neighbour); i keeps the edge
    std::vector<Edge> slots;
    slots.reserve(static_cast<std::size_t>(n) * k);
    for (int i = 0; i < n; ++i) {
        for (int d = 1; d <= k; ++d) {
            const int j = (i + d) % n;
            slots.push_back({i, j});
            link(i, j, 1);
        }
    }

    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<int> candidates;
    candidates.reserve(n);
    for (auto& slot : slots) {
        if (!(coin(rng) < p)) continue;
        const int kept = slot.a;
        const int moved = slot.b;
        candidates.clear();
        for (int w = 0; w < n; ++w)
            if (w != kept && !adj[kept * n + w]) candidates.push_back(w);
        if (candidates.empty()) continue;
        std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
        for (int attempt = 0; attempt < params.max_retries; ++attempt) {
            const int target = candidates[pick(rng)];
            link(kept, moved, 0);
            link(kept, target, 1);
            if (connected_from_matrix(n, adj)) {
                slot = {kept, target};
                break;
            }
            link(kept, target, 0);
            link(kept, moved, 1);
        }
    }
    for (auto& e : slots)
        if (e.a > e.b) std::swap(e.a, e.b);
    return Graph(n, std::move(slots));
}

nlohmann::json to_json(const Graph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : g.edges()) edges.push_back({e.a + 1, e.b + 1});
    return {{"L", g.num_vertices()}, {"edges", std::move(edges)}};
}

Graph graph_from_json(const nlohmann::json& j) {
    const int n = j.at("L").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw std::invalid_argument("edge must be a pair [a,b]");
        edges.push_back({e[0].get<int>() - 1, e[1].get<int>() - 1});
    }
    return Graph(n, std::move(edges));
}

}  // namespace opdeloc
