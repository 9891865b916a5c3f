#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "avgctrl/scc.hpp"

namespace avgctrl {

enum class ReductionErrorCode {
    NotStructurallyAvgControllable,
    NotReduced,
};

class ReductionError : public std::runtime_error {
public:
    ReductionError(ReductionErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ReductionErrorCode code() const { return code_; }

private:
    ReductionErrorCode code_;
};

/// A validated reduced pattern together with its derived structure: the
/// cycles (listed from their entry node), the entry nodes, the core path,
/// per-node depths (length of the unique beta-path), and the assignment of
/// every non-core node to the cycle it succeeds.
struct ReducedGraph {
    SparsityPattern g;
    std::vector<int> core_nodes;             // in path order, starts at kBeta
    std::vector<std::vector<int>> cycles;    // node sequences from the entry node
    std::vector<int> entry_nodes;            // alpha_{p0} per cycle
    std::vector<int> depth;                  // size n+1, depth[kBeta] = 0
    std::vector<int> cycle_of;               // node -> cycle index, -1 outside cycles
    std::vector<int> plus_of;                // node -> index of the cycle it succeeds, -1 for core
    std::vector<int> appendix_nodes;         // sorted

    bool in_core(int v) const { return plus_of[v] < 0; }
    int num_cycles() const { return static_cast<int>(cycles.size()); }
    int cycle_len(int p) const { return static_cast<int>(cycles[p].size()); }
    int core_order() const { return static_cast<int>(core_nodes.size()); }
    int core_alpha_count() const { return core_order() - 1; }
};

/// Checks the reducedness conditions clause by clause and returns the
/// violated clauses as human-readable strings in a fixed order. Empty
/// result means the pattern is reduced.
std::vector<std::string> validate_reduced(const SparsityPattern& g);

/// Derives the ReducedGraph structure of a pattern that passes
/// validate_reduced. Throws ReductionError{NotReduced} otherwise.
ReducedGraph analyze_reduced(const SparsityPattern& g);

/// Record of the choices made while pruning, sufficient to replay the
/// reduction: applying removed_edges to the input reproduces the output.
struct ReductionTrace {
    std::vector<int> core_path;          // P, node sequence
    std::vector<Edge> skeleton_tree;     // non-loop edges of S^(0), skeleton ids
    std::vector<std::pair<Edge, Edge>> retained;  // skeleton edge -> kept g-edge
    struct CycleStep {
        int component = -1;       // component index in the input SCD
        int entry = -1;           // alpha_{p0}
        int case_tag = 0;         // 1 or 2
        std::vector<Edge> tree_edges;
        std::optional<Edge> back_edge;  // Case 2 only
    };
    std::vector<CycleStep> steps;
    std::vector<Edge> removed_edges;  // sorted
};

/// Constructive pruning of a qualifying pattern to a reduced subgraph on
/// the same node set. All tie-breaks are lexicographic by (source, target)
/// with BFS trees rooted as required, so the output is deterministic.
/// Throws ReductionError{NotStructurallyAvgControllable} when
/// decision.verdict is false.
std::pair<ReducedGraph, ReductionTrace> reduce(const SparsityPattern& g,
                                               const DecisionReport& decision);

}  // namespace avgctrl
