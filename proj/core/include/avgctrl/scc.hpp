#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "avgctrl/graph.hpp"

namespace avgctrl {

/// Strong component decomposition. Components are ordered by their smallest
/// contained node id, so the beta component is always component 0.
struct SccDecomposition {
    std::vector<std::vector<int>> components;  // each sorted ascending
    std::vector<int> component_of;             // node -> component index
    std::vector<bool> nontrivial;              // contains a cycle

    int count() const { return static_cast<int>(components.size()); }
};

SccDecomposition strong_components(const SparsityPattern& g);

/// Condensation of the strong components. Node w_i of the skeleton stands
/// for component i of the decomposition; w_i carries a self-loop iff the
/// component is nontrivial.
struct SkeletonGraph {
    int num_nodes = 0;
    std::vector<Edge> edges;  // sorted, includes self-loops
    std::vector<int> pi;      // graph node -> skeleton node

    bool has_edge(int wi, int wj) const;
    bool has_self_loop(int wi) const { return has_edge(wi, wi); }
    std::vector<Edge> non_loop_edges() const;
};

SkeletonGraph skeleton(const SparsityPattern& g, const SccDecomposition& scc);

/// The subgraph induced by the nodes that are not successors of any cycle.
/// Always acyclic and contains beta. Depth is the longest-path distance
/// from beta inside the core (so for a path core it is the unique path
/// length); nodes unreachable from beta within the core get depth -1.
struct CoreSubgraph {
    std::vector<int> nodes;  // sorted ascending, includes kBeta
    std::vector<Edge> edges;
    std::vector<int> depth;  // parallel to nodes

    bool contains(int v) const;
    int depth_of(int v) const;  // -1 when v is not a core node
    int order() const { return static_cast<int>(nodes.size()); }
    int alpha_count() const { return order() - 1; }
};

CoreSubgraph core(const SparsityPattern& g, const SccDecomposition& scc);

/// Outcome of the main decision: verdict is true iff the core has a
/// directed spanning path, detected through uniqueness of the core's
/// topological order. The witness is the spanning path; the obstruction is
/// the first consecutive pair in the canonical topological order that is
/// not joined by an edge.
struct DecisionReport {
    bool verdict = false;
    std::vector<int> witness;
    std::optional<std::pair<int, int>> obstruction;
};

DecisionReport decide_structural_avg_ctrl(const SparsityPattern& g);

}  // namespace avgctrl
