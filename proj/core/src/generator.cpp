#include "avgctrl/generator.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <random>
#include <set>

#include "avgctrl/scc.hpp"

namespace avgctrl {

namespace {

using Rng = std::mt19937_64;

int pick(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Random relabeling of the alpha nodes; the verdict is label-invariant.
SparsityPattern shuffle_labels(int n, const std::set<Edge>& edges, Rng& rng) {
    std::vector<int> perm(n + 1);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin() + 1, perm.end(), rng);
    std::vector<Edge> out;
    for (const Edge& e : edges) out.push_back({perm[e.from], perm[e.to]});
    return validate_pattern(n, std::move(out));
}

SparsityPattern generate_qualifying(int n, Rng& rng) {
    std::set<Edge> edges;
    int k = pick(rng, 0, n);  // core alpha count
    std::vector<int> core{kBeta}, noncore;
    for (int v = 1; v <= k; ++v) {
        edges.insert({v - 1, v});
        core.push_back(v);
    }
    int next = k + 1;
    while (next <= n) {
        int remaining = n - next + 1;
        bool make_cycle = noncore.empty() || pick(rng, 0, 9) < 6;
        if (make_cycle) {
            int len = pick(rng, 1, remaining);
            int entry = next;
            // Entry edge from any placed node; the cycle itself.
            std::vector<int> placed = core;
            placed.insert(placed.end(), noncore.begin(), noncore.end());
            edges.insert({placed[pick(rng, 0, static_cast<int>(placed.size()) - 1)],
                          entry});
            for (int i = 0; i < len; ++i) {
                int a = entry + i, b = entry + (i + 1) % len;
                edges.insert({a, b});
                noncore.push_back(entry + i);
            }
            next += len;
        } else {
            // Appendix chain hanging off an already-placed non-core node.
            int len = pick(rng, 1, remaining);
            int from = noncore[pick(rng, 0, static_cast<int>(noncore.size()) - 1)];
            for (int i = 0; i < len; ++i) {
                edges.insert({from, next});
                noncore.push_back(next);
                from = next++;
            }
        }
    }
    // Extra random edges into non-core nodes; they never shrink the core
    // below the planted path.
    if (!noncore.empty()) {
        int extra = pick(rng, 0, n);
        std::vector<int> all = core;
        all.insert(all.end(), noncore.begin(), noncore.end());
        for (int i = 0; i < extra; ++i) {
            int u = all[pick(rng, 0, static_cast<int>(all.size()) - 1)];
            int v = noncore[pick(rng, 0, static_cast<int>(noncore.size()) - 1)];
            edges.insert({u, v});
        }
    }
    return shuffle_labels(n, edges, rng);
}

SparsityPattern generate_nonqualifying(int n, Rng& rng) {
    // Plant a branching core tree: beta keeps two children, so the core
    // cannot contain a spanning path. Cycles and appendices may hang off
    // any placed node but never feed back into the tree.
    std::set<Edge> edges;
    int k = std::max(2, pick(rng, 2, n));  // core tree alpha count
    std::vector<int> tree{kBeta};
    edges.insert({kBeta, 1});
    edges.insert({kBeta, 2});
    tree.push_back(1);
    tree.push_back(2);
    for (int v = 3; v <= k; ++v) {
        edges.insert({tree[pick(rng, 0, static_cast<int>(tree.size()) - 1)], v});
        tree.push_back(v);
    }
    std::vector<int> noncore;
    int next = k + 1;
    while (next <= n) {
        int remaining = n - next + 1;
        bool make_cycle = noncore.empty() || pick(rng, 0, 9) < 6;
        if (make_cycle) {
            int len = pick(rng, 1, remaining);
            int entry = next;
            std::vector<int> placed = tree;
            placed.insert(placed.end(), noncore.begin(), noncore.end());
            edges.insert({placed[pick(rng, 0, static_cast<int>(placed.size()) - 1)],
                          entry});
            for (int i = 0; i < len; ++i) {
                edges.insert({entry + i, entry + (i + 1) % len});
                noncore.push_back(entry + i);
            }
            next += len;
        } else {
            int len = pick(rng, 1, remaining);
            int from = noncore[pick(rng, 0, static_cast<int>(noncore.size()) - 1)];
            for (int i = 0; i < len; ++i) {
                edges.insert({from, next});
                noncore.push_back(next);
                from = next++;
            }
        }
    }
    return shuffle_labels(n, edges, rng);
}

}  // namespace

SparsityPattern generate_pattern(int n, bool qualifying, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (!qualifying && n < 2)
        throw std::invalid_argument(
            "every weakly connected single-alpha pattern qualifies; "
            "non-qualifying generation needs n >= 2");
    Rng rng(seed ^ (qualifying ? 0x51ed2700ULL : 0xac5e11edULL));
    SparsityPattern g =
        qualifying ? generate_qualifying(n, rng) : generate_nonqualifying(n, rng);
    DecisionReport d = decide_structural_avg_ctrl(g);
    if (d.verdict != qualifying)
        throw std::logic_error("generated pattern failed re-validation");
    return g;
}

}  // namespace avgctrl
