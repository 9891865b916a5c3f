#include "avgctrl/graph.hpp"

#include <algorithm>
#include <queue>

namespace avgctrl {

bool SparsityPattern::has_edge(int u, int v) const {
    return std::binary_search(edges.begin(), edges.end(), Edge{u, v});
}

std::vector<std::vector<int>> SparsityPattern::out_adj() const {
    std::vector<std::vector<int>> adj(node_count());
    for (const Edge& e : edges) adj[e.from].push_back(e.to);
    return adj;
}

std::vector<std::vector<int>> SparsityPattern::in_adj() const {
    std::vector<std::vector<int>> adj(node_count());
    for (const Edge& e : edges) adj[e.to].push_back(e.from);
    return adj;
}

SparsityPattern validate_pattern(int n, std::vector<Edge> edges) {
    if (n < 1)
        throw ValidationError(GraphError::UnknownNode,
                              "pattern needs at least one alpha node");
    for (const Edge& e : edges) {
        if (e.from < 0 || e.from > n || e.to < 0 || e.to > n)
            throw ValidationError(GraphError::UnknownNode,
                                  "edge endpoint outside node range: " +
                                      std::to_string(e.from) + " -> " +
                                      std::to_string(e.to));
        if (e.to == kBeta)
            throw ValidationError(GraphError::BetaHasInNeighbor,
                                  "edge into the beta node: " + node_name(e.from) +
                                      " -> " + node_name(e.to));
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw ValidationError(GraphError::DuplicateEdge, "duplicate edge");

    // Weak connectivity over the undirected support.
    std::vector<std::vector<int>> und(n + 1);
    for (const Edge& e : edges) {
        und[e.from].push_back(e.to);
        und[e.to].push_back(e.from);
    }
    std::vector<char> seen(n + 1, 0);
    std::queue<int> q;
    q.push(kBeta);
    seen[kBeta] = 1;
    int reached = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : und[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                q.push(w);
            }
    }
    if (reached != n + 1)
        throw ValidationError(GraphError::NotWeaklyConnected,
                              "pattern is not weakly connected");

    SparsityPattern g;
    g.n = n;
    g.edges = std::move(edges);
    return g;
}

std::string node_name(int v) {
    return v == kBeta ? "b" : "a" + std::to_string(v);
}

}  // namespace avgctrl
