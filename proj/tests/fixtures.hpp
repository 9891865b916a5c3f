#pragma once

#include <initializer_list>
#include <vector>

#include "avgctrl/graph.hpp"

namespace avgctrl::fixtures {

inline SparsityPattern make(int n, std::initializer_list<Edge> edges) {
    return validate_pattern(n, std::vector<Edge>(edges));
}

// Running example: nine alpha nodes, two nontrivial strong components.
inline SparsityPattern fig1() {
    return make(9, {{0, 1},
                    {0, 2},
                    {1, 3},
                    {2, 4},
                    {4, 6},
                    {6, 2},
                    {6, 8},
                    {3, 5},
                    {5, 3},
                    {5, 7},
                    {7, 7},
                    {7, 3},
                    {7, 9}});
}

// The reduced subgraph of fig1 produced by the canonical pruning:
// fig1 minus {a7 a3, a7 a7}.
inline SparsityPattern fig3() {
    return make(9, {{0, 1},
                    {0, 2},
                    {1, 3},
                    {2, 4},
                    {4, 6},
                    {6, 2},
                    {6, 8},
                    {3, 5},
                    {5, 3},
                    {5, 7},
                    {7, 9}});
}

}  // namespace avgctrl::fixtures
