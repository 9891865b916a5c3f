#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "avgctrl/reduction.hpp"

namespace avgctrl {

/// Exact edge/walk weight a/L + b*lambda with a, b nonnegative integers and
/// lambda a fixed irrational. Equality is exact componentwise comparison,
/// valid precisely because lambda is irrational.
struct NuValue {
    std::int64_t rat_num = 0;   // contributes rat_num / L
    std::int64_t irr_coef = 0;  // contributes irr_coef * lambda

    auto operator<=>(const NuValue&) const = default;
    NuValue operator+(const NuValue& o) const {
        return {rat_num + o.rat_num, irr_coef + o.irr_coef};
    }
    /// Adds the integer k (k = k*L/L in rational units).
    NuValue plus_integer(std::int64_t k, std::int64_t L) const {
        return {rat_num + k * L, irr_coef};
    }
    double value(std::int64_t L, double lambda) const {
        return static_cast<double>(rat_num) / static_cast<double>(L) +
               static_cast<double>(irr_coef) * lambda;
    }
    bool is_zero() const { return rat_num == 0 && irr_coef == 0; }
};

/// Renders "a/L + b*sqrt2" style annotations.
std::string nu_to_string(const NuValue& nu, std::int64_t L,
                         const std::string& lambda_name = "sqrt2");

/// Depth-monotone relabeling of the alpha nodes: BFS order from beta,
/// ties within a depth broken by the original index.
struct CanonicalLabeling {
    std::vector<int> old_to_new;  // size n+1, identity on kBeta
    std::vector<int> new_to_old;
};

CanonicalLabeling canonical_relabel(const ReducedGraph& g);

/// Relabels the pattern and re-derives the reduced structure.
ReducedGraph apply_labeling(const ReducedGraph& g, const CanonicalLabeling& lab);

/// The five-way partition of the edge set: core edges, core-to-cycle edges,
/// cycle edges, cycle-to-appendix edges, appendix edges.
struct EdgePartition {
    std::array<std::vector<Edge>, 5> sets;
    /// 1-based class of an edge, 0 if the edge is unknown.
    int klass(const Edge& e) const;
};

EdgePartition partition_edges(const ReducedGraph& g);

struct EdgeWeighting {
    std::map<Edge, NuValue> nu;
    std::int64_t L = 1;         // lcm of cycle lengths (1 when acyclic)
    int ell_max = 0;            // max cycle length (0 when acyclic)
    double lambda = std::sqrt(2.0);
    std::string lambda_name = "sqrt2";

    const NuValue& at(const Edge& e) const { return nu.at(e); }
    double value(const NuValue& v) const { return v.value(L, lambda); }
};

/// The exact nu weighting of a canonically relabeled reduced graph.
/// Throws ReductionError{NotReduced} when the labeling is not
/// depth-monotone.
EdgeWeighting build_nu(const ReducedGraph& g);

/// Descriptor of the unique walk of a given length from beta to a target.
struct WalkDescriptor {
    int target = 0;
    int cycle = -1;              // -1 for core targets
    std::int64_t loops = 0;      // times the cycle is traversed
    std::int64_t length = 0;
    NuValue nu;
};

/// None iff no walk of length j from beta reaches the target. Walk queries
/// beyond the scan window j* + 2*L*n are refused (std::out_of_range).
std::optional<WalkDescriptor> nu_of_walk(const ReducedGraph& g,
                                         const EdgeWeighting& w, int target,
                                         std::int64_t j);

/// Expands a walk descriptor into its explicit node sequence.
std::vector<int> expand_walk(const ReducedGraph& g, const WalkDescriptor& wd);

/// Nodes reachable from beta by a walk of length exactly j, with the
/// per-cycle successor-set slices V_p^+(j).
struct ReachableSet {
    std::int64_t j = 0;
    std::vector<int> members;                 // sorted
    std::vector<std::vector<int>> per_cycle;  // V_p^+(j), sorted
};

ReachableSet reachable_set(const ReducedGraph& g, std::int64_t j);

/// Smallest j* with j* > core_order and j* > max_p (d_p - ell_p); the base
/// index above which reachable sets are periodic with period L.
std::int64_t j_star(const ReducedGraph& g);

/// The certificate pair (A, b): each structural nonzero is f^{nu(e)} under
/// the fixed instantiation Sigma = [-1, 1] with the uniform probability
/// measure and f(sigma) = |sigma|.
struct SymbolicEnsemble {
    int n = 0;
    std::map<std::pair<int, int>, NuValue> a_exponents;  // (row, col), 1-based
    std::map<int, NuValue> b_exponents;                  // row, 1-based
    std::int64_t L = 1;
    double lambda = std::sqrt(2.0);

    bool compliant_with(const SparsityPattern& g) const;
};

SymbolicEnsemble build_ensemble(const ReducedGraph& g, const EdgeWeighting& w);

}  // namespace avgctrl
