#include "avgctrl/scc.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>

namespace avgctrl {

namespace {

// Iterative Tarjan. Returns component ids in discovery order; the caller
// canonicalizes the ordering.
std::vector<int> tarjan(const SparsityPattern& g) {
    int nn = g.node_count();
    auto adj = g.out_adj();
    std::vector<int> index(nn, -1), low(nn, 0), comp(nn, -1);
    std::vector<char> on_stack(nn, 0);
    std::vector<int> stack;
    int next_index = 0, next_comp = 0;

    struct Frame {
        int v;
        size_t child;
    };
    for (int root = 0; root < nn; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.child < adj[f.v].size()) {
                int w = adj[f.v][f.child++];
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp[w] = next_comp;
                        if (w == f.v) break;
                    }
                    ++next_comp;
                }
                int v = f.v;
                call.pop_back();
                if (!call.empty())
                    low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
        }
    }
    return comp;
}

}  // namespace

SccDecomposition strong_components(const SparsityPattern& g) {
    std::vector<int> raw = tarjan(g);
    int nn = g.node_count();
    int nraw = *std::max_element(raw.begin(), raw.end()) + 1;

    // Canonical order: by smallest contained node id.
    std::vector<int> smallest(nraw, nn);
    for (int v = 0; v < nn; ++v) smallest[raw[v]] = std::min(smallest[raw[v]], v);
    std::vector<int> order(nraw);
    for (int i = 0; i < nraw; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return smallest[a] < smallest[b]; });
    std::vector<int> renum(nraw);
    for (int i = 0; i < nraw; ++i) renum[order[i]] = i;

    SccDecomposition scc;
    scc.components.resize(nraw);
    scc.component_of.resize(nn);
    for (int v = 0; v < nn; ++v) {
        int c = renum[raw[v]];
        scc.component_of[v] = c;
        scc.components[c].push_back(v);
    }
    scc.nontrivial.assign(nraw, false);
    for (int c = 0; c < nraw; ++c)
        if (scc.components[c].size() >= 2) scc.nontrivial[c] = true;
    for (const Edge& e : g.edges)
        if (e.from == e.to) scc.nontrivial[scc.component_of[e.from]] = true;
    return scc;
}

bool SkeletonGraph::has_edge(int wi, int wj) const {
    return std::binary_search(edges.begin(), edges.end(), Edge{wi, wj});
}

std::vector<Edge> SkeletonGraph::non_loop_edges() const {
    std::vector<Edge> out;
    for (const Edge& e : edges)
        if (e.from != e.to) out.push_back(e);
    return out;
}

SkeletonGraph skeleton(const SparsityPattern& g, const SccDecomposition& scc) {
    SkeletonGraph s;
    s.num_nodes = scc.count();
    s.pi = scc.component_of;
    std::set<Edge> es;
    for (const Edge& e : g.edges) {
        int wi = s.pi[e.from], wj = s.pi[e.to];
        if (wi != wj || e.from == e.to || scc.nontrivial[wi]) es.insert({wi, wj});
    }
    // A nontrivial component always condenses to a self-loop.
    for (int c = 0; c < scc.count(); ++c)
        if (scc.nontrivial[c]) es.insert({c, c});
    s.edges.assign(es.begin(), es.end());
    return s;
}

bool CoreSubgraph::contains(int v) const {
    return std::binary_search(nodes.begin(), nodes.end(), v);
}

int CoreSubgraph::depth_of(int v) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), v);
    if (it == nodes.end() || *it != v) return -1;
    return depth[it - nodes.begin()];
}

CoreSubgraph core(const SparsityPattern& g, const SccDecomposition& scc) {
    int nn = g.node_count();
    auto adj = g.out_adj();

    // V+_cyc: nodes reachable by a nonempty path from a node of a
    // nontrivial component. Cycle nodes mark themselves via cycle edges.
    std::vector<char> succ(nn, 0);
    std::queue<int> q;
    for (int v = 0; v < nn; ++v)
        if (scc.nontrivial[scc.component_of[v]])
            for (int w : adj[v])
                if (!succ[w]) {
                    succ[w] = 1;
                    q.push(w);
                }
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : adj[v])
            if (!succ[w]) {
                succ[w] = 1;
                q.push(w);
            }
    }

    CoreSubgraph c;
    for (int v = 0; v < nn; ++v)
        if (!succ[v]) c.nodes.push_back(v);
    for (const Edge& e : g.edges)
        if (!succ[e.from] && !succ[e.to]) c.edges.push_back(e);

    // Longest-path depth from beta within the (acyclic) core; equals the
    // unique path length when the core is a path.
    std::vector<int> pos(nn, -1);
    for (size_t i = 0; i < c.nodes.size(); ++i) pos[c.nodes[i]] = static_cast<int>(i);
    int m = static_cast<int>(c.nodes.size());
    std::vector<std::vector<int>> cadj(m);
    std::vector<int> indeg(m, 0);
    for (const Edge& e : c.edges) {
        cadj[pos[e.from]].push_back(pos[e.to]);
        ++indeg[pos[e.to]];
    }
    c.depth.assign(m, -1);
    c.depth[pos[kBeta]] = 0;
    std::vector<int> topo;
    std::vector<int> indeg2 = indeg;
    std::queue<int> tq;
    for (int i = 0; i < m; ++i)
        if (indeg2[i] == 0) tq.push(i);
    while (!tq.empty()) {
        int i = tq.front();
        tq.pop();
        topo.push_back(i);
        for (int jn : cadj[i])
            if (--indeg2[jn] == 0) tq.push(jn);
    }
    for (int i : topo)
        if (c.depth[i] >= 0)
            for (int jn : cadj[i]) c.depth[jn] = std::max(c.depth[jn], c.depth[i] + 1);
    return c;
}

DecisionReport decide_structural_avg_ctrl(const SparsityPattern& g) {
    SccDecomposition scc = strong_components(g);
    CoreSubgraph c = core(g, scc);

    // Canonical topological order of the core (smallest node id first),
    // then check that consecutive nodes are joined by edges. For a DAG this
    // succeeds iff the topological order is unique iff a Hamiltonian
    // directed path exists.
    int m = c.order();
    std::vector<int> pos(g.node_count(), -1);
    for (int i = 0; i < m; ++i) pos[c.nodes[i]] = i;
    std::vector<std::vector<int>> cadj(m);
    std::vector<int> indeg(m, 0);
    for (const Edge& e : c.edges) {
        cadj[pos[e.from]].push_back(pos[e.to]);
        ++indeg[pos[e.to]];
    }
    std::priority_queue<int, std::vector<int>, std::greater<int>> pq;
    for (int i = 0; i < m; ++i)
        if (indeg[i] == 0) pq.push(i);
    std::vector<int> order;
    while (!pq.empty()) {
        int i = pq.top();
        pq.pop();
        order.push_back(c.nodes[i]);
        for (int jn : cadj[i])
            if (--indeg[jn] == 0) pq.push(jn);
    }

    DecisionReport r;
    for (size_t i = 0; i + 1 < order.size(); ++i) {
        if (!g.has_edge(order[i], order[i + 1])) {
            r.verdict = false;
            r.obstruction = std::make_pair(order[i], order[i + 1]);
            return r;
        }
    }
    r.verdict = true;
    r.witness = order;
    return r;
}

}  // namespace avgctrl
