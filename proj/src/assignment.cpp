#include "mixdae/assignment.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

#include "mixdae/core.hpp"
#include "mixdae/error.hpp"

namespace mixdae::assignment {

BipartiteWeights weights_of(const LMPolyMatrix &a) {
    BipartiteWeights g;
    g.n = a.n;
    g.weight.resize(a.n);
    for (int i = 0; i < a.n; ++i)
        for (const auto &[col, poly] : a.rows[i].entries) {
            auto d = core::entry_degree(poly);
            assert(d.has_value());
            g.weight[i][col] = *d;
        }
    return g;
}

namespace {

bool kuhn_try(int row, const std::vector<std::vector<int>> &adj, std::vector<char> &used,
              std::vector<int> &col_to_row) {
    for (int col : adj[row]) {
        if (used[col]) continue;
        used[col] = 1;
        if (col_to_row[col] < 0 || kuhn_try(col_to_row[col], adj, used, col_to_row)) {
            col_to_row[col] = row;
            return true;
        }
    }
    return false;
}

} // namespace

Matching max_cardinality_matching(const std::vector<std::vector<int>> &adj, int n_rows, int n_cols) {
    Matching m;
    m.row_to_col.assign(n_rows, -1);
    m.col_to_row.assign(n_cols, -1);
    for (int i = 0; i < n_rows; ++i) {
        std::vector<char> used(n_cols, 0);
        kuhn_try(i, adj, used, m.col_to_row);
    }
    for (int j = 0; j < n_cols; ++j)
        if (m.col_to_row[j] >= 0) m.row_to_col[m.col_to_row[j]] = j;
    return m;
}

Matching max_weight_perfect_matching(const BipartiteWeights &g) {
    int n = g.n;
    Matching m;
    m.row_to_col.assign(n, -1);
    m.col_to_row.assign(n, -1);
    if (n == 0) return m;

    long long max_w = 0;
    for (const auto &row : g.weight)
        for (const auto &[c, w] : row) max_w = std::max<long long>(max_w, w);
    const long long kInf = (max_w + 1) * n + 1; // any real assignment costs less

    // Jonker-Volgenant style row-by-row shortest augmenting paths on the
    // min-cost transform cost = max_w - weight (forbidden edges cost kInf).
    auto cost = [&](int i, int j) -> long long {
        auto it = g.weight[i].find(j);
        return it == g.weight[i].end() ? kInf : max_w - it->second;
    };
    const long long kUnreached = std::numeric_limits<long long>::max() / 4;
    std::vector<long long> u(n + 1, 0), v(n + 1, 0);
    std::vector<int> p(n + 1, -1), way(n + 1, 0);
    for (int i = 0; i < n; ++i) {
        p[n] = i;
        int j0 = n; // virtual column
        std::vector<long long> minv(n + 1, kUnreached);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            int i0 = p[j0], j1 = -1;
            long long delta = kUnreached;
            for (int j = 0; j < n; ++j) {
                if (used[j]) continue;
                long long cur = cost(i0, j) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            assert(j1 >= 0);
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] >= 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != n);
    }
    for (int j = 0; j < n; ++j) {
        if (p[j] < 0 || !g.has_edge(p[j], j))
            fail(ErrorKind::NoPerfectMatching, "structurally singular: no perfect matching");
        m.col_to_row[j] = p[j];
        m.row_to_col[p[j]] = j;
    }
    return m;
}

std::pair<std::vector<int>, std::vector<int>>
min_vertex_cover(const std::vector<std::vector<int>> &adj, int n_rows, int n_cols, const Matching &m) {
    std::vector<char> row_seen(n_rows, 0), col_seen(n_cols, 0);
    std::vector<int> stack;
    for (int i = 0; i < n_rows; ++i)
        if (m.row_to_col[i] < 0) {
            row_seen[i] = 1;
            stack.push_back(i);
        }
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        for (int j : adj[i]) {
            if (col_seen[j]) continue;
            col_seen[j] = 1;
            int i2 = m.col_to_row[j];
            if (i2 >= 0 && !row_seen[i2]) {
                row_seen[i2] = 1;
                stack.push_back(i2);
            }
        }
    }
    std::vector<int> rows, cols;
    for (int i = 0; i < n_rows; ++i)
        if (!row_seen[i]) rows.push_back(i);
    for (int j = 0; j < n_cols; ++j)
        if (col_seen[j]) cols.push_back(j);
    return {rows, cols};
}

DualSolution construct_dual(const BipartiteWeights &g, const Matching &m) {
    int n = g.n;
    DualSolution d;
    d.p.assign(n, 0);
    d.q.assign(n, 0);
    if (n == 0) return d;

    // Node layout: rows 0..n-1, columns n..2n-1, root 2n.
    struct Arc {
        int from, to;
        long long len;
    };
    std::vector<Arc> arcs;
    for (int i = 0; i < n; ++i) arcs.push_back({2 * n, i, 0});
    for (int i = 0; i < n; ++i)
        for (const auto &[j, w] : g.weight[i]) {
            arcs.push_back({i, n + j, -static_cast<long long>(w)});
            if (m.row_to_col[i] == j) arcs.push_back({n + j, i, w});
        }

    const long long kUnreached = std::numeric_limits<long long>::max() / 4;
    std::vector<long long> dist(2 * n + 1, kUnreached);
    dist[2 * n] = 0;
    for (int round = 0; round < 2 * n + 1; ++round) {
        bool changed = false;
        for (const auto &a : arcs) {
            if (dist[a.from] == kUnreached) continue;
            if (dist[a.from] + a.len < dist[a.to]) {
                dist[a.to] = dist[a.from] + a.len;
                changed = true;
            }
        }
        if (!changed) break;
        require(round < 2 * n, ErrorKind::NegativeCycle,
                "negative cycle in residual graph: matching was not maximum");
    }
    long long base = std::numeric_limits<long long>::min();
    for (int i = 0; i < n; ++i) base = std::max(base, dist[i]);
    for (int i = 0; i < n; ++i) d.p[i] = static_cast<int>(-dist[i] + base);
    for (int j = 0; j < n; ++j) {
        require(dist[n + j] != kUnreached, ErrorKind::NoPerfectMatching, "column unreachable from root");
        d.q[j] = static_cast<int>(-dist[n + j] + base);
    }
    return d;
}

bool is_feasible(const BipartiteWeights &g, const DualSolution &d) {
    for (int i = 0; i < g.n; ++i)
        for (const auto &[j, w] : g.weight[i])
            if (d.q[j] - d.p[i] < w) return false;
    return true;
}

bool is_feasible(const LMPolyMatrix &a, const DualSolution &d) { return is_feasible(weights_of(a), d); }

DualSolution update_dual(const std::vector<std::vector<int>> &tight_adj, const DualSolution &d) {
    int n = static_cast<int>(tight_adj.size());
    Matching m = max_cardinality_matching(tight_adj, n, n);
    require(m.size() < n, ErrorKind::PerfectMatchingExists,
            "tight pattern has a perfect matching: dual already optimal");
    auto [rows, cols] = min_vertex_cover(tight_adj, n, n, m);
    std::vector<char> row_in(n, 0), col_in(n, 0);
    for (int i : rows) row_in[i] = 1;
    for (int j : cols) col_in[j] = 1;
    DualSolution out = d;
    for (int i = 0; i < n; ++i)
        if (!row_in[i]) out.p[i] += 1;
    for (int j = 0; j < n; ++j)
        if (col_in[j]) out.q[j] += 1;
    return out;
}

int assignment_value(const BipartiteWeights &g, const Matching &m) {
    int total = 0;
    for (int i = 0; i < g.n; ++i)
        if (m.row_to_col[i] >= 0) total += g.weight[i].at(m.row_to_col[i]);
    return total;
}

int assignment_value(const DualSolution &d) {
    int total = 0;
    for (int q : d.q) total += q;
    for (int p : d.p) total -= p;
    return total;
}

} // namespace mixdae::assignment
