#pragma once

#include <vector>

#include "mixdae/matrix.hpp"

namespace mixdae::assignment {

// Weighted bipartite graph G(A): edge (i,j) present iff A_{i,j}(s) != 0,
// weight = deg A_{i,j}(s) >= 0.
struct BipartiteWeights {
    int n = 0;
    std::vector<std::map<int, int>> weight; // row -> {col -> c_ij}

    bool has_edge(int i, int j) const { return weight[i].count(j) != 0; }
};

BipartiteWeights weights_of(const LMPolyMatrix &a);

// Integer potentials for the dual assignment problem D(A).
struct DualSolution {
    std::vector<int> p; // rows
    std::vector<int> q; // columns
};

struct Matching {
    std::vector<int> row_to_col; // -1 when unmatched
    std::vector<int> col_to_row;

    int size() const {
        int s = 0;
        for (int c : row_to_col) s += c >= 0 ? 1 : 0;
        return s;
    }
};

// Kuhn's augmenting-path matching; rows processed in id order, neighbours in
// ascending column order (deterministic).
Matching max_cardinality_matching(const std::vector<std::vector<int>> &adj, int n_rows, int n_cols);

// Hungarian method, maximum-weight perfect matching. Throws NoPerfectMatching
// when the pattern has none (the DAE is structurally singular).
Matching max_weight_perfect_matching(const BipartiteWeights &g);

// Koenig-Egervary minimum vertex cover from a maximum matching: alternating
// reachability from unmatched rows. Returned as (rows in cover, cols in cover).
std::pair<std::vector<int>, std::vector<int>>
min_vertex_cover(const std::vector<std::vector<int>> &adj, int n_rows, int n_cols, const Matching &m);

// Shortest-path dual construction over the residual graph G_M (arc lengths
// -c on E(A), +c on reversed matching arcs, 0 from the root to every row).
// Requires m to be a maximum-weight perfect matching; a negative cycle in the
// residual graph means it was not.
DualSolution construct_dual(const BipartiteWeights &g, const Matching &m);

bool is_feasible(const BipartiteWeights &g, const DualSolution &d);
bool is_feasible(const LMPolyMatrix &a, const DualSolution &d);

// Vertex-cover dual update on a tight pattern without a perfect matching;
// strictly decreases the dual objective.
DualSolution update_dual(const std::vector<std::vector<int>> &tight_adj, const DualSolution &d);

int assignment_value(const BipartiteWeights &g, const Matching &m);
int assignment_value(const DualSolution &d); // sum q - sum p

} // namespace mixdae::assignment
