#include "avgctrl/reduction.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace avgctrl {

namespace {

std::string node_set_string(const std::vector<int>& nodes) {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < nodes.size(); ++i)
        os << (i ? "," : "") << node_name(nodes[i]);
    os << "}";
    return os.str();
}

// Is the induced core exactly a directed path? (Spanning path present and
// no extra edges.)
bool core_is_path(const SparsityPattern& g, const CoreSubgraph& c) {
    if (c.edges.size() + 1 != c.nodes.size()) return false;
    DecisionReport d = decide_structural_avg_ctrl(g);
    return d.verdict;
}

// Is the induced component a single cycle? Size-1 components need the
// self-loop.
bool component_is_cycle(const SparsityPattern& g, const std::vector<int>& nodes) {
    std::set<int> in_comp(nodes.begin(), nodes.end());
    std::map<int, int> outdeg, indeg;
    int internal_edges = 0;
    for (const Edge& e : g.edges)
        if (in_comp.count(e.from) && in_comp.count(e.to)) {
            ++internal_edges;
            ++outdeg[e.from];
            ++indeg[e.to];
        }
    if (internal_edges != static_cast<int>(nodes.size())) return false;
    for (int v : nodes)
        if (outdeg[v] != 1 || indeg[v] != 1) return false;
    return true;
}

}  // namespace

std::vector<std::string> validate_reduced(const SparsityPattern& g) {
    std::vector<std::string> violations;
    SccDecomposition scc = strong_components(g);
    SkeletonGraph s = skeleton(g, scc);
    CoreSubgraph c = core(g, scc);

    // Clause 1: S is a directed tree and S* is a directed path.
    int root = s.pi[kBeta];
    std::vector<int> indeg(s.num_nodes, 0);
    auto non_loop = s.non_loop_edges();
    for (const Edge& e : non_loop) ++indeg[e.to];
    bool tree = indeg[root] == 0 &&
                static_cast<int>(non_loop.size()) == s.num_nodes - 1;
    for (int w = 0; w < s.num_nodes && tree; ++w)
        if (w != root && indeg[w] != 1) tree = false;
    if (!tree) violations.push_back("skeleton is not a directed tree");
    if (!core_is_path(g, c))
        violations.push_back("skeleton core is not a directed path");

    // Clause 2: singleton preimage for every non-loop skeleton edge.
    std::map<Edge, std::vector<Edge>> preimage;
    for (const Edge& e : g.edges) {
        int wi = s.pi[e.from], wj = s.pi[e.to];
        if (wi != wj) preimage[{wi, wj}].push_back(e);
    }
    for (const auto& [se, pre] : preimage)
        if (pre.size() != 1) {
            std::ostringstream os;
            os << "skeleton edge w" << se.from << "->w" << se.to << " has "
               << pre.size() << " preimage edges";
            violations.push_back(os.str());
        }

    // Clause 3: every self-loop skeleton node is an out-neighbor of the
    // skeleton core and its component is a cycle.
    std::set<int> core_comps;
    for (int v : c.nodes) core_comps.insert(s.pi[v]);
    for (int w = 0; w < s.num_nodes; ++w) {
        if (!s.has_self_loop(w)) continue;
        bool out_neighbor = false;
        for (int ws : core_comps)
            if (ws != w && s.has_edge(ws, w)) out_neighbor = true;
        if (!out_neighbor)
            violations.push_back("self-loop component " +
                                 node_set_string(scc.components[w]) +
                                 " is not an out-neighbor of the core");
        if (!component_is_cycle(g, scc.components[w]))
            violations.push_back("component " + node_set_string(scc.components[w]) +
                                 " is not a cycle");
    }
    return violations;
}

ReducedGraph analyze_reduced(const SparsityPattern& g) {
    auto violations = validate_reduced(g);
    if (!violations.empty())
        throw ReductionError(ReductionErrorCode::NotReduced,
                             "pattern is not reduced: " + violations.front());

    ReducedGraph r;
    r.g = g;
    SccDecomposition scc = strong_components(g);
    SkeletonGraph s = skeleton(g, scc);
    CoreSubgraph c = core(g, scc);
    auto adj = g.out_adj();

    // Depth: the unique beta-path length equals the BFS distance.
    int nn = g.node_count();
    r.depth.assign(nn, -1);
    r.depth[kBeta] = 0;
    std::queue<int> q;
    q.push(kBeta);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : adj[v])
            if (r.depth[w] < 0) {
                r.depth[w] = r.depth[v] + 1;
                q.push(w);
            }
    }

    r.core_nodes = c.nodes;
    std::sort(r.core_nodes.begin(), r.core_nodes.end(),
              [&](int a, int b) { return r.depth[a] < r.depth[b]; });

    // Cycles, ordered by entry node; the entry node is the target of the
    // unique edge from the core into the component.
    std::vector<std::pair<int, int>> entries;  // (entry, component)
    for (int comp = 0; comp < scc.count(); ++comp) {
        if (!scc.nontrivial[comp]) continue;
        int entry = -1;
        for (const Edge& e : g.edges)
            if (scc.component_of[e.to] == comp && scc.component_of[e.from] != comp)
                entry = e.to;
        entries.emplace_back(entry, comp);
    }
    std::sort(entries.begin(), entries.end());

    r.cycle_of.assign(nn, -1);
    r.plus_of.assign(nn, -1);
    for (const auto& [entry, comp] : entries) {
        std::set<int> in_comp(scc.components[comp].begin(),
                              scc.components[comp].end());
        std::vector<int> seq{entry};
        int cur = entry;
        while (true) {
            int next = -1;
            for (int w : adj[cur])
                if (in_comp.count(w)) next = w;  // unique in a cycle
            if (next == entry) break;
            seq.push_back(next);
            cur = next;
        }
        int p = static_cast<int>(r.cycles.size());
        for (int v : seq) r.cycle_of[v] = p;
        r.cycles.push_back(seq);
        r.entry_nodes.push_back(entry);
    }

    // Successor sets V_p^+ (disjoint for a reduced graph).
    for (int p = 0; p < r.num_cycles(); ++p) {
        std::queue<int> bq;
        for (int v : r.cycles[p]) {
            r.plus_of[v] = p;
            bq.push(v);
        }
        while (!bq.empty()) {
            int v = bq.front();
            bq.pop();
            for (int w : adj[v])
                if (r.plus_of[w] < 0) {
                    r.plus_of[w] = p;
                    bq.push(w);
                }
        }
    }
    for (int v = 1; v < nn; ++v)
        if (r.plus_of[v] >= 0 && r.cycle_of[v] < 0) r.appendix_nodes.push_back(v);
    return r;
}

std::pair<ReducedGraph, ReductionTrace> reduce(const SparsityPattern& g,
                                               const DecisionReport& decision) {
    if (!decision.verdict)
        throw ReductionError(ReductionErrorCode::NotStructurallyAvgControllable,
                             "pattern is not structurally averaged controllable");

    SccDecomposition scc = strong_components(g);
    SkeletonGraph s = skeleton(g, scc);

    ReductionTrace trace;
    trace.core_path = decision.witness;

    // Skeleton core path P under pi.
    std::vector<int> p_skel;
    std::set<int> on_path;
    for (int v : decision.witness) {
        p_skel.push_back(s.pi[v]);
        on_path.insert(s.pi[v]);
    }

    // Spanning tree S^(0) of the skeleton: parents along P are forced,
    // remaining nodes attach greedily by lexicographically smallest edge.
    std::vector<int> parent(s.num_nodes, -1);
    std::vector<char> assigned(s.num_nodes, 0);
    assigned[s.pi[kBeta]] = 1;
    for (size_t i = 0; i + 1 < p_skel.size(); ++i) {
        parent[p_skel[i + 1]] = p_skel[i];
        assigned[p_skel[i + 1]] = 1;
    }
    auto non_loop = s.non_loop_edges();  // already sorted
    bool progress = true;
    while (progress) {
        progress = false;
        for (const Edge& e : non_loop) {
            // A trivial off-path component must stay a cycle successor, so
            // its parent cannot be a core-path component. (A nontrivial
            // target keeps or becomes its own cycle, so any parent works.)
            if (!s.has_self_loop(e.to) && on_path.count(e.from)) continue;
            if (assigned[e.from] && !assigned[e.to]) {
                parent[e.to] = e.from;
                assigned[e.to] = 1;
                progress = true;
                break;
            }
        }
    }
    for (int w = 0; w < s.num_nodes; ++w)
        if (!assigned[w])
            throw ReductionError(ReductionErrorCode::NotReduced,
                                 "skeleton node unreachable from the beta component");
    for (int w = 0; w < s.num_nodes; ++w)
        if (parent[w] >= 0) trace.skeleton_tree.push_back({parent[w], w});
    std::sort(trace.skeleton_tree.begin(), trace.skeleton_tree.end());

    // Between-component edges: drop every preimage of a non-tree skeleton
    // edge; keep the lexicographically smallest preimage of a tree edge.
    std::set<Edge> removed;
    std::map<Edge, std::vector<Edge>> preimage;
    for (const Edge& e : g.edges) {
        int wi = s.pi[e.from], wj = s.pi[e.to];
        if (wi != wj) preimage[{wi, wj}].push_back(e);
    }
    std::map<int, Edge> entry_edge;  // skeleton node -> retained in-edge
    for (auto& [se, pre] : preimage) {
        std::sort(pre.begin(), pre.end());
        if (parent[se.to] == se.from) {
            trace.retained.emplace_back(se, pre.front());
            entry_edge[se.to] = pre.front();
            for (size_t i = 1; i < pre.size(); ++i) removed.insert(pre[i]);
        } else {
            for (const Edge& e : pre) removed.insert(e);
        }
    }

    // Nontrivial components, processed in ascending order of their entry
    // node alpha_{p0} (the target of the retained tree in-edge).
    std::vector<std::pair<int, int>> comps;  // (entry, component)
    for (int comp = 0; comp < scc.count(); ++comp)
        if (scc.nontrivial[comp]) comps.emplace_back(entry_edge.at(comp).to, comp);
    std::sort(comps.begin(), comps.end());

    for (const auto& [entry, comp] : comps) {
        std::set<int> in_comp(scc.components[comp].begin(),
                              scc.components[comp].end());
        std::vector<Edge> internal;
        for (const Edge& e : g.edges)
            if (in_comp.count(e.from) && in_comp.count(e.to)) internal.push_back(e);

        // BFS spanning tree of the component rooted at the entry node,
        // self-loops excluded, neighbors visited in ascending order.
        std::set<Edge> keep;
        std::set<int> visited{entry};
        std::queue<int> bq;
        bq.push(entry);
        while (!bq.empty()) {
            int v = bq.front();
            bq.pop();
            for (const Edge& e : internal) {
                if (e.from != v || e.from == e.to) continue;
                if (visited.count(e.to)) continue;
                visited.insert(e.to);
                keep.insert(e);
                bq.push(e.to);
            }
        }

        ReductionTrace::CycleStep step;
        step.component = comp;
        step.entry = entry;
        step.tree_edges.assign(keep.begin(), keep.end());

        // Case 2 when the tree parent of the component lies on the core
        // path P; the component keeps one cycle through the entry node.
        int wp = scc.component_of[entry];
        bool parent_on_p = on_path.count(parent[wp]) > 0;
        if (parent_on_p) {
            step.case_tag = 2;
            int back_src = -1;
            for (const Edge& e : internal)
                if (e.to == entry && (back_src < 0 || e.from < back_src))
                    back_src = e.from;
            Edge back{back_src, entry};
            step.back_edge = back;
            keep.insert(back);
        } else {
            step.case_tag = 1;
        }
        for (const Edge& e : internal)
            if (!keep.count(e)) removed.insert(e);
        trace.steps.push_back(std::move(step));
    }

    trace.removed_edges.assign(removed.begin(), removed.end());

    std::vector<Edge> kept;
    for (const Edge& e : g.edges)
        if (!removed.count(e)) kept.push_back(e);
    SparsityPattern out = validate_pattern(g.n, std::move(kept));
    return {analyze_reduced(out), std::move(trace)};
}

}  // namespace avgctrl
