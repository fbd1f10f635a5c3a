#include "mixdae/lmrank.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <stdexcept>

#include "mixdae/assignment.hpp"
#include "mixdae/error.hpp"

namespace mixdae::lmrank {

std::vector<int> TightCoeffMatrix::q_rows() const {
    std::vector<int> out;
    for (int i = 0; i < row_count(); ++i)
        if (kind[i] == RowKind::Q) out.push_back(i);
    return out;
}

std::vector<int> TightCoeffMatrix::t_rows() const {
    std::vector<int> out;
    for (int i = 0; i < row_count(); ++i)
        if (kind[i] == RowKind::T) out.push_back(i);
    return out;
}

std::vector<std::vector<int>> TightCoeffMatrix::pattern() const {
    std::vector<std::vector<int>> adj(row_count());
    for (int i = 0; i < row_count(); ++i)
        for (int j = 0; j < col_count(); ++j)
            if (nonzero(i, j)) adj[i].push_back(j);
    return adj;
}

std::vector<std::vector<Rational>> TightCoeffMatrix::q_columns(const std::vector<int> &cols) const {
    auto qr = q_rows();
    std::vector<std::vector<Rational>> out;
    out.reserve(cols.size());
    for (int j : cols) {
        std::vector<Rational> v(qr.size(), 0);
        for (std::size_t i = 0; i < qr.size(); ++i) v[i] = a[qr[i]][j].rat;
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<std::vector<int>> TightCoeffMatrix::t_adjacency(const std::vector<int> &cols) const {
    auto tr = t_rows();
    std::vector<std::vector<int>> adj(cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t i = 0; i < tr.size(); ++i)
            if (nonzero(tr[i], cols[c])) adj[c].push_back(static_cast<int>(i));
    return adj;
}

TightCoeffMatrix TightCoeffMatrix::submatrix(const std::vector<int> &rows, const std::vector<int> &cols) const {
    TightCoeffMatrix out;
    for (int i : rows) {
        out.row_ids.push_back(row_ids[i]);
        out.kind.push_back(kind[i]);
        std::vector<Coefficient> row;
        row.reserve(cols.size());
        for (int j : cols) row.push_back(a[i][j]);
        out.a.push_back(std::move(row));
    }
    for (int j : cols) out.col_ids.push_back(col_ids[j]);
    return out;
}

int term_rank(const std::vector<std::vector<int>> &adj, int n_rows, int n_cols) {
    return assignment::max_cardinality_matching(adj, n_rows, n_cols).size();
}

int term_rank(const TightCoeffMatrix &a) { return term_rank(a.pattern(), a.row_count(), a.col_count()); }

namespace {

// Matroid-union state: disjoint independent sets I_Q (linear matroid of the
// Q-part columns) and I_T (transversal matroid of the T-part pattern).
struct UnionState {
    const TightCoeffMatrix &m;
    std::vector<int> t_rows_pos;
    std::vector<std::vector<int>> t_adj; // per column: T-row positions (local)
    std::vector<char> in_q, in_t;

    explicit UnionState(const TightCoeffMatrix &tcm) : m(tcm) {
        t_rows_pos = m.t_rows();
        int cols = m.col_count();
        t_adj.resize(cols);
        for (int j = 0; j < cols; ++j)
            for (std::size_t i = 0; i < t_rows_pos.size(); ++i)
                if (m.nonzero(t_rows_pos[i], j)) t_adj[j].push_back(static_cast<int>(i));
        in_q.assign(cols, 0);
        in_t.assign(cols, 0);
    }

    std::vector<int> set_q() const {
        std::vector<int> out;
        for (int j = 0; j < m.col_count(); ++j)
            if (in_q[j]) out.push_back(j);
        return out;
    }
    std::vector<int> set_t() const {
        std::vector<int> out;
        for (int j = 0; j < m.col_count(); ++j)
            if (in_t[j]) out.push_back(j);
        return out;
    }

    bool t_matchable(const std::vector<int> &cols) const {
        std::vector<std::vector<int>> adj;
        adj.reserve(cols.size());
        for (int j : cols) adj.push_back(t_adj[j]);
        auto match = assignment::max_cardinality_matching(adj, static_cast<int>(cols.size()),
                                                          static_cast<int>(t_rows_pos.size()));
        return match.size() == static_cast<int>(cols.size());
    }

    bool q_independent(const std::vector<int> &cols) const {
        auto vec = m.q_columns(cols);
        linalg::Mat mat(vec.empty() ? 0 : vec[0].size(), std::vector<Rational>(vec.size(), 0));
        for (std::size_t j = 0; j < vec.size(); ++j)
            for (std::size_t i = 0; i < vec[j].size(); ++i) mat[i][j] = vec[j][i];
        return linalg::rank(mat) == static_cast<int>(cols.size());
    }
};

// Vertex encoding for the doubled auxiliary graph: 2*col + side,
// side 0 = Q-copy, side 1 = T-copy.
constexpr int kSideQ = 0;
constexpr int kSideT = 1;
inline int vertex(int col, int side) { return 2 * col + side; }
inline int vcol(int v) { return v / 2; }
inline int vside(int v) { return v % 2; }

struct AuxGraph {
    std::vector<std::vector<int>> out_arcs; // deterministic target order
    std::vector<int> sources;               // insertable copies, ascending
};

// Builds the exchange/partition arcs with direct oracle tests.
AuxGraph build_aux(const UnionState &st) {
    int cols = st.m.col_count();
    AuxGraph g;
    g.out_arcs.assign(2 * cols, {});

    std::vector<int> iq = st.set_q(), it = st.set_t();

    // Q-side representations: each non-member column either lies outside the
    // span (insertable; exchangeable with every member) or has a unique
    // support over the basis (exchangeable exactly with its support).
    auto basis_vecs = st.m.q_columns(iq);
    std::vector<int> others;
    for (int j = 0; j < cols; ++j)
        if (!st.in_q[j]) others.push_back(j);
    auto reps = linalg::represent_in_basis(basis_vecs, st.m.q_columns(others));

    std::vector<std::vector<int>> q_arc_from(cols); // member -> replaceable targets
    for (std::size_t t = 0; t < others.size(); ++t) {
        int z = others[t];
        if (!reps[t]) {
            g.sources.push_back(vertex(z, kSideQ));
            for (int y : iq) q_arc_from[y].push_back(z);
        } else {
            for (std::size_t k = 0; k < iq.size(); ++k)
                if ((*reps[t])[k] != 0) q_arc_from[iq[k]].push_back(z);
        }
    }
    for (int y : iq)
        for (int z : q_arc_from[y]) g.out_arcs[vertex(y, kSideQ)].push_back(vertex(z, kSideQ));

    // T-side: direct matchability tests.
    for (int z = 0; z < cols; ++z) {
        if (st.in_t[z]) continue;
        std::vector<int> with = it;
        with.push_back(z);
        if (st.t_matchable(with)) {
            g.sources.push_back(vertex(z, kSideT));
            continue;
        }
        for (int y : it) {
            std::vector<int> swapped;
            for (int w : it)
                if (w != y) swapped.push_back(w);
            swapped.push_back(z);
            if (st.t_matchable(swapped)) g.out_arcs[vertex(y, kSideT)].push_back(vertex(z, kSideT));
        }
    }

    // Partition arcs: a copy outside X points at the other copy when that one
    // is inside X.
    for (int j = 0; j < cols; ++j) {
        if (st.in_q[j]) g.out_arcs[vertex(j, kSideT)].push_back(vertex(j, kSideQ));
        if (st.in_t[j]) g.out_arcs[vertex(j, kSideQ)].push_back(vertex(j, kSideT));
    }
    for (auto &targets : g.out_arcs) std::sort(targets.begin(), targets.end());
    std::sort(g.sources.begin(), g.sources.end());
    return g;
}

// BFS shortest augmenting path from the sources to either copy of `target`;
// applies it and returns true. Chordless because BFS layers are exact.
bool augment(UnionState &st, int target) {
    AuxGraph g = build_aux(st);
    int nv = static_cast<int>(g.out_arcs.size());
    std::vector<int> parent(nv, -2);
    std::deque<int> queue;
    int found = -1;
    auto is_sink = [&](int v) { return vcol(v) == target; };
    for (int s : g.sources) {
        parent[s] = -1;
        if (is_sink(s)) {
            found = s;
            break;
        }
        queue.push_back(s);
    }
    while (found < 0 && !queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : g.out_arcs[v]) {
            if (parent[w] != -2) continue;
            parent[w] = v;
            if (is_sink(w)) {
                found = w;
                break;
            }
            queue.push_back(w);
        }
    }
    if (found < 0) return false;

    std::vector<int> path;
    for (int v = found; v >= 0; v = parent[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    // Even positions (counting from the source) enter their side, odd
    // positions leave theirs.
    for (std::size_t k = 0; k < path.size(); ++k) {
        int col = vcol(path[k]), side = vside(path[k]);
        auto &flag = side == kSideQ ? st.in_q[col] : st.in_t[col];
        if (k % 2 == 0) {
            assert(!flag);
            flag = 1;
        } else {
            assert(flag);
            flag = 0;
        }
    }
    assert(st.q_independent(st.set_q()));
    assert(st.t_matchable(st.set_t()));
    return true;
}

std::vector<char> reachable_from_sources(const UnionState &st) {
    AuxGraph g = build_aux(st);
    std::vector<char> seen(g.out_arcs.size(), 0);
    std::deque<int> queue;
    for (int s : g.sources) {
        seen[s] = 1;
        queue.push_back(s);
    }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : g.out_arcs[v])
            if (!seen[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
    }
    return seen;
}

} // namespace

int rank_q_on(const TightCoeffMatrix &m, const std::vector<int> &cols) {
    auto vec = m.q_columns(cols);
    linalg::Mat mat(vec.empty() ? 0 : vec[0].size(), std::vector<Rational>(vec.size(), 0));
    for (std::size_t j = 0; j < vec.size(); ++j)
        for (std::size_t i = 0; i < vec[j].size(); ++i) mat[i][j] = vec[j][i];
    return linalg::rank(mat);
}

int trank_t_on(const TightCoeffMatrix &m, const std::vector<int> &cols) {
    auto adj = m.t_adjacency(cols);
    return term_rank(adj, static_cast<int>(cols.size()), static_cast<int>(m.t_rows().size()));
}

RankCertificate lm_rank(const TightCoeffMatrix &m) {
    UnionState st(m);
    int cols = m.col_count();
    for (int c = 0; c < cols; ++c) augment(st, c);

    RankCertificate cert;
    cert.basis_q = st.set_q();
    auto it = st.set_t();
    // Record the T-side witness matching explicitly.
    {
        std::vector<std::vector<int>> adj;
        for (int j : it) adj.push_back(st.t_adj[j]);
        auto match = assignment::max_cardinality_matching(adj, static_cast<int>(it.size()),
                                                          static_cast<int>(st.t_rows_pos.size()));
        assert(match.size() == static_cast<int>(it.size()));
        for (std::size_t k = 0; k < it.size(); ++k)
            cert.matching_t.push_back({it[k], st.t_rows_pos[match.row_to_col[k]]});
    }
    cert.rank = static_cast<int>(cert.basis_q.size() + cert.matching_t.size());

    auto seen = reachable_from_sources(st);
    for (int j = 0; j < cols; ++j)
        if (!seen[vertex(j, kSideQ)] && !seen[vertex(j, kSideT)]) cert.minimizer.push_back(j);
    cert.rank_q_minimizer = rank_q_on(m, cert.minimizer);
    cert.trank_t_minimizer = trank_t_on(m, cert.minimizer);
    // The reachability cut must certify the min-form identity exactly.
    if (cert.min_form_value(cols) != cert.rank)
        throw std::logic_error("internal invariant violated: reachability cut is not a minimizer");
    return cert;
}

namespace {

// Exhaustive walk over all 2^|C| column subsets, sharing the Q-part
// elimination state and the T-part matching along the inclusion tree.
struct BruteState {
    const TightCoeffMatrix &m;
    std::vector<int> qr, tr;
    std::vector<std::vector<int>> t_adj_full; // column -> local T-row positions
    int best = -1;

    explicit BruteState(const TightCoeffMatrix &tcm) : m(tcm) {
        qr = m.q_rows();
        tr = m.t_rows();
        t_adj_full.resize(m.col_count());
        for (int j = 0; j < m.col_count(); ++j)
            for (std::size_t i = 0; i < tr.size(); ++i)
                if (m.nonzero(tr[i], j)) t_adj_full[j].push_back(static_cast<int>(i));
    }

    // basis: reduced Q-columns with recorded pivot rows; row_match: T-row ->
    // included column (or -1).
    void walk(int col, std::vector<std::vector<Rational>> basis, std::vector<int> pivots,
              std::vector<int> row_match, int trank, int excluded) {
        if (col == m.col_count()) {
            int value = static_cast<int>(basis.size()) + trank + excluded;
            if (best < 0 || value < best) best = value;
            return;
        }
        walk(col + 1, basis, pivots, row_match, trank, excluded + 1);

        // Include `col`: reduce its Q-part against the basis.
        std::vector<Rational> v(qr.size(), 0);
        for (std::size_t i = 0; i < qr.size(); ++i) v[i] = m.a[qr[i]][col].rat;
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if (v[pivots[b]] == 0) continue;
            Rational f = v[pivots[b]] / basis[b][pivots[b]];
            for (std::size_t i = 0; i < qr.size(); ++i) v[i] -= f * basis[b][i];
        }
        int pivot = -1;
        for (std::size_t i = 0; i < qr.size(); ++i)
            if (v[i] != 0) {
                pivot = static_cast<int>(i);
                break;
            }
        if (pivot >= 0) {
            basis.push_back(std::move(v));
            pivots.push_back(pivot);
        }
        // Try to extend the T-matching with `col` (Kuhn augment step).
        std::vector<char> used(tr.size(), 0);
        if (t_augment(col, used, row_match)) ++trank;
        walk(col + 1, std::move(basis), std::move(pivots), std::move(row_match), trank, excluded);
    }

    bool t_augment(int col, std::vector<char> &used, std::vector<int> &row_match) {
        for (int r : t_adj_full[col]) {
            if (used[r]) continue;
            used[r] = 1;
            if (row_match[r] < 0 || t_augment(row_match[r], used, row_match)) {
                row_match[r] = col;
                return true;
            }
        }
        return false;
    }
};

} // namespace

int lm_rank_bruteforce(const TightCoeffMatrix &m) {
    int cols = m.col_count();
    require(cols <= 20, ErrorKind::TooLarge, "brute-force rank limited to 20 columns");
    BruteState state(m);
    state.walk(0, {}, {}, std::vector<int>(state.tr.size(), -1), 0, 0);
    return state.best;
}

bool is_nonsingular(const TightCoeffMatrix &a) {
    require(a.row_count() == a.col_count(), ErrorKind::InvalidInput, "nonsingularity needs a square matrix");
    return lm_rank(a).rank == a.col_count();
}

} // namespace mixdae::lmrank
