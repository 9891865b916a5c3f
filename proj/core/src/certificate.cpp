#include "avgctrl/certificate.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

namespace avgctrl {

std::string nu_to_string(const NuValue& nu, std::int64_t L,
                         const std::string& lambda_name) {
    std::ostringstream os;
    if (nu.is_zero()) return "0";
    bool first = true;
    if (nu.rat_num != 0) {
        std::int64_t g = std::gcd(nu.rat_num, L);
        std::int64_t num = nu.rat_num / g, den = L / g;
        os << num;
        if (den != 1) os << "/" << den;
        first = false;
    }
    if (nu.irr_coef != 0) {
        if (!first) os << " + ";
        if (nu.irr_coef != 1) os << nu.irr_coef << "*";
        os << lambda_name;
    }
    return os.str();
}

CanonicalLabeling canonical_relabel(const ReducedGraph& g) {
    int n = g.g.n;
    std::vector<int> alphas(n);
    std::iota(alphas.begin(), alphas.end(), 1);
    std::stable_sort(alphas.begin(), alphas.end(), [&](int a, int b) {
        return std::make_pair(g.depth[a], a) < std::make_pair(g.depth[b], b);
    });
    CanonicalLabeling lab;
    lab.old_to_new.assign(n + 1, 0);
    lab.new_to_old.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) {
        lab.old_to_new[alphas[i]] = i + 1;
        lab.new_to_old[i + 1] = alphas[i];
    }
    return lab;
}

ReducedGraph apply_labeling(const ReducedGraph& g, const CanonicalLabeling& lab) {
    std::vector<Edge> edges;
    for (const Edge& e : g.g.edges)
        edges.push_back({lab.old_to_new[e.from], lab.old_to_new[e.to]});
    return analyze_reduced(validate_pattern(g.g.n, std::move(edges)));
}

int EdgePartition::klass(const Edge& e) const {
    for (int i = 0; i < 5; ++i)
        if (std::binary_search(sets[i].begin(), sets[i].end(), e)) return i + 1;
    return 0;
}

EdgePartition partition_edges(const ReducedGraph& g) {
    EdgePartition part;
    for (const Edge& e : g.g.edges) {
        bool from_core = g.in_core(e.from);
        bool to_cycle = g.cycle_of[e.to] >= 0;
        int k;
        if (from_core && g.in_core(e.to))
            k = 1;
        else if (from_core && to_cycle)
            k = 2;
        else if (g.cycle_of[e.from] >= 0 && to_cycle)
            k = 3;
        else if (g.cycle_of[e.from] >= 0)
            k = 4;
        else
            k = 5;
        part.sets[k - 1].push_back(e);
    }
    for (auto& s : part.sets) std::sort(s.begin(), s.end());
    return part;
}

EdgeWeighting build_nu(const ReducedGraph& g) {
    // The labeling must be depth-monotone for the Case 4/5 coefficients to
    // come out positive.
    for (int i = 1; i < g.g.n; ++i)
        if (g.depth[i] > g.depth[i + 1])
            throw ReductionError(ReductionErrorCode::NotReduced,
                                 "labeling is not depth-monotone");

    EdgeWeighting w;
    w.L = 1;
    w.ell_max = 0;
    for (int p = 0; p < g.num_cycles(); ++p) {
        w.L = std::lcm(w.L, static_cast<std::int64_t>(g.cycle_len(p)));
        w.ell_max = std::max(w.ell_max, g.cycle_len(p));
    }

    EdgePartition part = partition_edges(g);
    for (const Edge& e : part.sets[0]) w.nu[e] = NuValue{0, 0};
    for (const Edge& e : part.sets[1]) {
        // e = v alpha_{p0}; weight p0 * lambda.
        w.nu[e] = NuValue{0, e.to};
    }
    for (int p = 0; p < g.num_cycles(); ++p) {
        const auto& seq = g.cycles[p];
        int lp = g.cycle_len(p);
        for (int i = 0; i < lp; ++i) {
            Edge e{seq[i], seq[(i + 1) % lp]};
            // The closing edge carries the whole cycle weight ell_p / L.
            w.nu[e] = (i == lp - 1) ? NuValue{lp, 0} : NuValue{0, 0};
        }
    }
    for (const Edge& e : part.sets[3]) {
        int p0 = g.entry_nodes[g.cycle_of[e.from]];
        w.nu[e] = NuValue{0, e.to - p0};
    }
    for (const Edge& e : part.sets[4]) w.nu[e] = NuValue{0, e.to - e.from};
    return w;
}

std::int64_t j_star(const ReducedGraph& g) {
    std::int64_t bound = g.core_order();
    for (int p = 0; p < g.num_cycles(); ++p) {
        int dp = 0;
        for (int v = 1; v <= g.g.n; ++v)
            if (g.plus_of[v] == p) dp = std::max(dp, g.depth[v]);
        bound = std::max<std::int64_t>(bound, dp - g.cycle_len(p));
    }
    return bound + 1;
}

std::optional<WalkDescriptor> nu_of_walk(const ReducedGraph& g,
                                         const EdgeWeighting& w, int target,
                                         std::int64_t j) {
    std::int64_t cap = j_star(g) + 2 * w.L * g.g.n;
    if (j > cap)
        throw std::out_of_range("walk query beyond the scan window j* + 2Ln");
    if (j < 1) return std::nullopt;

    std::int64_t dep = g.depth[target];
    if (g.in_core(target)) {
        if (j != dep) return std::nullopt;
        return WalkDescriptor{target, -1, 0, j, NuValue{0, 0}};
    }
    int p = g.plus_of[target];
    std::int64_t lp = g.cycle_len(p);
    if (dep > j || (j - dep) % lp != 0) return std::nullopt;
    WalkDescriptor wd;
    wd.target = target;
    wd.cycle = p;
    wd.loops = (j - dep) / lp;
    wd.length = j;
    std::int64_t irr =
        g.cycle_of[target] >= 0 ? g.entry_nodes[p] : target;
    wd.nu = NuValue{j - dep, irr};
    return wd;
}

std::vector<int> expand_walk(const ReducedGraph& g, const WalkDescriptor& wd) {
    // BFS parents give the unique beta-path.
    auto adj = g.g.out_adj();
    std::vector<int> parent(g.g.node_count(), -1);
    std::vector<char> seen(g.g.node_count(), 0);
    seen[kBeta] = 1;
    std::queue<int> q;
    q.push(kBeta);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int u : adj[v])
            if (!seen[u]) {
                seen[u] = 1;
                parent[u] = v;
                q.push(u);
            }
    }
    std::vector<int> path;
    for (int v = wd.target; v != -1; v = parent[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    if (wd.loops == 0) return path;

    // Insert the closed cycle walk after the entry node.
    int entry = g.entry_nodes[wd.cycle];
    const auto& seq = g.cycles[wd.cycle];
    std::vector<int> out;
    for (int v : path) {
        out.push_back(v);
        if (v == entry) {
            for (std::int64_t m = 0; m < wd.loops; ++m) {
                for (size_t i = 1; i < seq.size(); ++i) out.push_back(seq[i]);
                out.push_back(entry);
            }
        }
    }
    return out;
}

ReachableSet reachable_set(const ReducedGraph& g, std::int64_t j) {
    ReachableSet rs;
    rs.j = j;
    rs.per_cycle.resize(g.num_cycles());
    for (int v = 0; v <= g.g.n; ++v) {
        std::int64_t dep = g.depth[v];
        if (g.in_core(v)) {
            if (dep == j) rs.members.push_back(v);
            continue;
        }
        int p = g.plus_of[v];
        std::int64_t lp = g.cycle_len(p);
        if (dep <= j && (j - dep) % lp == 0) {
            rs.members.push_back(v);
            rs.per_cycle[p].push_back(v);
        }
    }
    return rs;
}

bool SymbolicEnsemble::compliant_with(const SparsityPattern& g) const {
    // Compliance is exact support equality: a structural nonzero per edge
    // and nothing else.
    if (a_exponents.size() + b_exponents.size() != g.edges.size()) return false;
    for (const auto& [pos, nu] : a_exponents)
        if (!g.has_edge(pos.second, pos.first)) return false;
    for (const auto& [row, nu] : b_exponents)
        if (!g.has_edge(kBeta, row)) return false;
    return true;
}

SymbolicEnsemble build_ensemble(const ReducedGraph& g, const EdgeWeighting& w) {
    SymbolicEnsemble e;
    e.n = g.g.n;
    e.L = w.L;
    e.lambda = w.lambda;
    for (const auto& [edge, nu] : w.nu) {
        if (edge.from == kBeta)
            e.b_exponents[edge.to] = nu;
        else
            e.a_exponents[{edge.to, edge.from}] = nu;
    }
    return e;
}

}  // namespace avgctrl
