#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace avgctrl {

// Nodes are integers: 0 is the beta (input) node, 1..n are the alpha
// (state) nodes.
inline constexpr int kBeta = 0;

inline bool is_alpha(int v) { return v > kBeta; }

/// Directed edge u -> v.
struct Edge {
    int from = 0;
    int to = 0;
    auto operator<=>(const Edge&) const = default;
};

enum class GraphError {
    BetaHasInNeighbor,
    NotWeaklyConnected,
    DuplicateEdge,
    UnknownNode,
};

class ValidationError : public std::runtime_error {
public:
    ValidationError(GraphError code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    GraphError code() const { return code_; }

private:
    GraphError code_;
};

/// A sparsity pattern: weakly connected digraph on n alpha-nodes plus the
/// beta node, where beta has no in-neighbor. Edges are kept sorted and
/// unique.
struct SparsityPattern {
    int n = 0;
    std::vector<Edge> edges;

    int node_count() const { return n + 1; }
    bool has_edge(int u, int v) const;

    // Adjacency lists indexed by node id (0..n), each sorted ascending.
    std::vector<std::vector<int>> out_adj() const;
    std::vector<std::vector<int>> in_adj() const;
};

/// Validates a raw node/edge list. Throws ValidationError on a pattern that
/// is not a member of the admissible class (beta with an in-neighbor,
/// weakly disconnected graph, duplicate edge, or an edge endpoint outside
/// 0..n).
SparsityPattern validate_pattern(int n, std::vector<Edge> edges);

/// "b" for beta, "a<k>" for alpha_k.
std::string node_name(int v);

}  // namespace avgctrl
