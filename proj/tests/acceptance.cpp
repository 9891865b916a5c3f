// Acceptance gate: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Runtimes are wall-clock on the local machine.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "avgctrl/generator.hpp"
#include "avgctrl/oracle.hpp"
#include "avgctrl/simulator.hpp"
#include "avgctrl/verification.hpp"
#include "fixtures.hpp"

using namespace avgctrl;
using fixtures::fig1;
using fixtures::fig3;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": "
              << detail << "\n";
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

ReducedGraph canonical_fig3() {
    ReducedGraph rg = analyze_reduced(fig3());
    return apply_labeling(rg, canonical_relabel(rg));
}

// ---- criterion 1: decision pipeline on the running example ----

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    SparsityPattern g = fig1();
    SccDecomposition scc = strong_components(g);
    CoreSubgraph c = core(g, scc);
    DecisionReport d = decide_structural_avg_ctrl(g);
    double dt = seconds_since(t0);
    bool ok = scc.count() == 6 &&
              scc.components[0] == std::vector<int>{0} &&
              scc.components[1] == std::vector<int>{1} &&
              scc.components[2] == std::vector<int>{2, 4, 6} &&
              scc.components[3] == std::vector<int>{3, 5, 7} &&
              scc.components[4] == std::vector<int>{8} &&
              scc.components[5] == std::vector<int>{9} &&
              c.nodes == std::vector<int>{0, 1} && d.verdict && dt < 0.1;
    std::ostringstream os;
    os << "decision pipeline golden (6 components, core {b, a1}, verdict true, "
       << dt << " s)";
    report(1, ok, os.str());
}

// ---- criterion 2: reduction golden ----

void criterion2() {
    SparsityPattern g = fig1();
    auto [rg, trace] = reduce(g, decide_structural_avg_ctrl(g));
    bool ok = rg.g.edges == fig3().edges && validate_reduced(rg.g).empty();
    // Alternate pruning: close the second cycle with a7 a3 instead.
    SparsityPattern alt = validate_pattern(
        9, {{0, 1}, {0, 2}, {1, 3}, {2, 4}, {4, 6}, {6, 2}, {6, 8}, {3, 5},
            {5, 7}, {7, 3}, {7, 9}});
    ok = ok && validate_reduced(alt).empty();
    report(2, ok, "canonical pruning reproduces the reduced running example; "
                  "alternate pruning also validates");
}

// ---- criterion 3: nu golden ----

void criterion3() {
    ReducedGraph rg = canonical_fig3();
    EdgeWeighting w = build_nu(rg);
    const std::vector<std::pair<Edge, NuValue>> golden = {
        {{0, 1}, {0, 0}}, {{0, 2}, {0, 2}}, {{1, 3}, {0, 3}},
        {{2, 4}, {0, 0}}, {{3, 5}, {0, 0}}, {{4, 6}, {0, 0}},
        {{5, 3}, {2, 0}}, {{6, 2}, {3, 0}}, {{5, 7}, {0, 4}},
        {{6, 8}, {0, 6}}, {{7, 9}, {0, 2}}};
    bool ok = w.L == 6 && w.ell_max == 3 && w.nu.size() == golden.size();
    for (const auto& [e, nu] : golden)
        ok = ok && w.nu.count(e) == 1 && w.at(e) == nu;
    report(3, ok, "eleven exact edge weights with L = 6, ell_max = 3");
}

// ---- criterion 4: reachability golden ----

void criterion4() {
    ReducedGraph rg = canonical_fig3();
    const std::vector<std::vector<int>> table = {
        {3, 6, 7},        // j = 0 mod 6
        {2, 5, 8, 9},     // j = 1
        {3, 4, 7},        // j = 2
        {5, 6, 9},        // j = 3
        {2, 3, 7, 8},     // j = 4
        {4, 5, 9}};       // j = 5
    bool ok = true;
    for (std::int64_t j = 4; j <= 9; ++j)
        ok = ok && reachable_set(rg, j).members == table[j % 6];
    for (std::int64_t j = 4; j <= 30; ++j)
        ok = ok && reachable_set(rg, j).members == reachable_set(rg, j + 6).members;
    report(4, ok, "six-case reachable-set table for j = 4..9 and 6-periodicity "
                  "up to j = 30");
}

// ---- criterion 5: certificate rank ----

void criterion5() {
    auto t0 = std::chrono::steady_clock::now();
    ReducedGraph rg = canonical_fig3();
    EdgeWeighting w = build_nu(rg);
    RankCertificate cert = certify_rank(rg, w);
    double dt = seconds_since(t0);
    bool ok = cert.verdict && cert.numeric_rank == 9 && cert.sv_ratio > 1e-10 &&
              dt < 1.0;
    for (const auto& chk : cert.group_checks)
        ok = ok && chk.nus_distinct && chk.cauchy_consistent && chk.det_nonzero;
    std::ostringstream os;
    os << "rank 9 certificate with sv ratio " << cert.sv_ratio
       << ", all group checks exact (" << dt << " s)";
    report(5, ok, os.str());
}

// ---- criteria 6 and 7: oracle necessity and sufficiency sampling ----

void criterion6() {
    std::mt19937_64 rng(601);
    bool ok = true;
    for (int i = 0; i < 100 && ok; ++i) {
        int n = 2 + static_cast<int>(rng() % 7);  // n <= 8
        SparsityPattern g = generate_pattern(n, false, rng());
        try {
            AgreementReport ar = cross_validate(g, 20, 2, rng());
            ok = ok && !ar.verdict && ar.full_rank_count == 0;
        } catch (const OracleContradiction&) {
            ok = false;
        }
    }
    report(6, ok, "100 non-qualifying patterns (n <= 8) x 20 samples, every "
                  "exact rank below n");
}

void criterion7() {
    std::mt19937_64 rng(701);
    bool ok = true;
    int full = 0, total = 0;
    for (int i = 0; i < 100; ++i) {
        int n = 2 + static_cast<int>(rng() % 7);
        SparsityPattern g = generate_pattern(n, true, rng());
        // Degree 4 gives the samples two even monomials beyond the
        // constant; degree <= 3 draws land on degenerate pairs too often.
        AgreementReport ar = cross_validate(g, 20, 4, rng());
        ok = ok && ar.verdict && ar.full_rank_count >= 1;
        full += ar.full_rank_count;
        total += ar.samples;
    }
    double fraction = static_cast<double>(full) / total;
    ok = ok && fraction >= 0.95;
    std::ostringstream os;
    os << "100 qualifying patterns (n <= 8), each with a full-rank sample; "
       << "aggregate full-rank fraction " << fraction;
    report(7, ok, os.str());
}

// ---- criterion 8: steering demonstration ----

void criterion8() {
    auto t0 = std::chrono::steady_clock::now();
    ReducedGraph rg = canonical_fig3();
    SymbolicEnsemble ens = build_ensemble(rg, build_nu(rg));
    Eigen::VectorXd target = Eigen::VectorXd::Unit(9, 8);  // e_9
    std::vector<Eigen::VectorXd> x0{Eigen::VectorXd::Zero(9)};
    bool ok = true;
    double prev = 1e9, final_err = 0.0;
    for (int N : {8, 16, 32, 64}) {
        DiscretizedEnsemble de = discretize(ens, N);
        SynthesisInfo syn = synthesize_control(de, x0, target, 5.0);
        SimulationResult res = simulate(de, syn.u, x0, 5.0);
        double err = res.terminal_error(target);
        // Non-increasing within a factor 2, except below 1e-8 where every
        // run sits on the refinement noise floor.
        ok = ok && (err <= prev * 2.0 || err <= 1e-8);
        prev = err;
        final_err = err;
    }
    double dt = seconds_since(t0);
    ok = ok && final_err <= 1e-6 && dt < 10.0;
    std::ostringstream os;
    os << "target e_9 at T = 5, N = 64: terminal error " << final_err
       << ", non-increasing over N = 8..64 (" << dt << " s)";
    report(8, ok, os.str());
}

// ---- criterion 9: invariant suites and brute-force equivalence ----

bool brute_force_spanning_path(const SparsityPattern& g) {
    CoreSubgraph c = core(g, strong_components(g));
    std::vector<int> perm = c.nodes;
    std::set<Edge> edges(c.edges.begin(), c.edges.end());
    std::sort(perm.begin(), perm.end());
    do {
        bool path = true;
        for (size_t i = 0; path && i + 1 < perm.size(); ++i)
            path = edges.count({perm[i], perm[i + 1]}) > 0;
        if (path) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return perm.size() <= 1;
}

bool invariants_hold(const SparsityPattern& g, bool qualifying) {
    SccDecomposition scc = strong_components(g);
    SkeletonGraph sk = skeleton(g, scc);
    for (const Edge& e : g.edges)
        if (!sk.has_edge(sk.pi[e.from], sk.pi[e.to])) return false;
    for (int w = 0; w < sk.num_nodes; ++w)
        if (sk.has_self_loop(w) != static_cast<bool>(scc.nontrivial[w]))
            return false;
    DecisionReport d = decide_structural_avg_ctrl(g);
    if (d.verdict != qualifying) return false;
    if (!d.verdict) return true;

    auto [rg0, trace] = reduce(g, d);
    if (!validate_reduced(rg0.g).empty()) return false;
    ReducedGraph rg = apply_labeling(rg0, canonical_relabel(rg0));
    EdgeWeighting w = build_nu(rg);
    EdgePartition part = partition_edges(rg);
    size_t covered = 0;
    for (const auto& s : part.sets) covered += s.size();
    if (covered != rg.g.edges.size()) return false;

    std::int64_t js = j_star(rg);
    for (std::int64_t j = js; j < js + w.L; ++j) {
        // Periodicity and support consistency.
        ReachableSet r = reachable_set(rg, j);
        if (r.members != reachable_set(rg, j + w.L).members) return false;
        ColumnVec col = column(rg, w, j);
        std::set<NuValue> seen;
        for (int v = 1; v <= rg.g.n; ++v) {
            bool member = std::binary_search(r.members.begin(), r.members.end(), v);
            if ((col.v(v - 1) != 0.0) != member) return false;
            if (member && !rg.in_core(v) &&
                !seen.insert(nu_of_walk(rg, w, v, j)->nu).second)
                return false;  // distinctness within the residue group
        }
    }
    return true;
}

void criterion9() {
    std::mt19937_64 rng(901);
    bool ok = true;
    for (int i = 0; i < 500 && ok; ++i) {
        int n = 1 + static_cast<int>(rng() % 10);
        bool qualifying = (i % 2 == 0) && n >= 1;
        if (!qualifying && n < 2) n = 2;
        SparsityPattern g = generate_pattern(n, qualifying, rng());
        ok = invariants_hold(g, qualifying);
    }

    // Brute-force decision equivalence: exhaustive up to n = 3, strided
    // deterministic covers of the edge-subset space for n = 4, 5.
    long checked = 0;
    for (int n = 1; n <= 5 && ok; ++n) {
        std::vector<Edge> universe;
        for (int u = 0; u <= n; ++u)
            for (int v = 1; v <= n; ++v) universe.push_back({u, v});
        const size_t m = universe.size();
        const std::uint64_t total = 1ULL << m;
        const std::uint64_t stride =
            n <= 3 ? 1 : (n == 4 ? 11 : 12289);  // odd strides cover all bits
        for (std::uint64_t mask = 1; mask < total && ok; mask += stride) {
            std::vector<Edge> edges;
            for (size_t i = 0; i < m; ++i)
                if (mask & (1ULL << i)) edges.push_back(universe[i]);
            try {
                SparsityPattern g = validate_pattern(n, std::move(edges));
                ok = decide_structural_avg_ctrl(g).verdict ==
                     brute_force_spanning_path(g);
                ++checked;
            } catch (const ValidationError&) {
            }
        }
    }
    std::ostringstream os;
    os << "invariant suites over 500 randomized patterns; decision matches "
          "brute force on "
       << checked << " enumerated patterns (exhaustive n <= 3, strided n = 4, 5)";
    report(9, ok, os.str());
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    std::cout << (failures == 0 ? "ALL CRITERIA PASSED"
                                : "CRITERIA FAILED: " + std::to_string(failures))
              << "\n";
    return failures == 0 ? 0 : 1;
}
