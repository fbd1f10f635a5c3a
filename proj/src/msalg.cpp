#include "mixdae/msalg.hpp"

#include <algorithm>
#include <map>

#include "mixdae/error.hpp"

namespace mixdae::msalg {

assignment::DualSolution ms_dual(const LMPolyMatrix &a) {
    auto weights = assignment::weights_of(a);
    auto matching = assignment::max_weight_perfect_matching(weights);
    return assignment::construct_dual(weights, matching);
}

NestedColumnChain nested_columns(const lmrank::TightCoeffMatrix &a_sharp, const assignment::DualSolution &d) {
    int n = a_sharp.col_count();
    require(a_sharp.row_count() == n, ErrorKind::InvalidInput, "tight coefficient matrix must be square");
    require(lmrank::lm_rank(a_sharp).rank == n, ErrorKind::SingularTightMatrix,
            "tight coefficient matrix is singular");

    NestedColumnChain out;
    for (int i = 0; i < n; ++i) out.eta = std::max(out.eta, d.p[i]);
    out.chain.assign(out.eta + 2, {});

    auto rows_ge = [&](int h) {
        std::vector<int> rows;
        for (int i = 0; i < n; ++i)
            if (d.p[i] >= h) rows.push_back(i);
        return rows;
    };

    for (int h = out.eta; h >= 1; --h) {
        std::vector<int> rows = rows_ge(h);
        std::vector<int> j = out.chain[h + 1];
        for (int c = 0; c < n && static_cast<int>(j.size()) < static_cast<int>(rows.size()); ++c) {
            if (d.q[c] < h) continue;
            if (std::find(j.begin(), j.end(), c) != j.end()) continue;
            std::vector<int> candidate = j;
            candidate.push_back(c);
            std::sort(candidate.begin(), candidate.end());
            if (lmrank::lm_rank(a_sharp.submatrix(rows, candidate)).rank ==
                static_cast<int>(candidate.size()))
                j = std::move(candidate);
        }
        require(j.size() == rows.size(), ErrorKind::ChainExtensionFailed,
                "column chain extension failed: tight matrix was singular");
        out.chain[h] = std::move(j);
    }
    out.chain[0].resize(n);
    for (int c = 0; c < n; ++c) out.chain[0][c] = c;
    return out;
}

namespace {

// k_j = max{h : j in J_h}; the dummies for column j are the derivative
// orders q_j - k_j + 1 .. q_j.
std::vector<int> k_values(const NestedColumnChain &chain, int n) {
    std::vector<int> k(n, 0);
    for (int h = 1; h < static_cast<int>(chain.chain.size()); ++h)
        for (int c : chain.chain[h]) k[c] = std::max(k[c], h);
    return k;
}

} // namespace

ReducedDae ms_reduce(const DaeSystem &dae, const assignment::DualSolution &d) {
    require(dae.is_lm(), ErrorKind::InvalidInput, "ms_reduce expects an LM system");
    const LMPolyMatrix &a = dae.lm();
    lmrank::TightCoeffMatrix sharp = relax::tight_coefficient_matrix(a, d);
    NestedColumnChain chain = nested_columns(sharp, d); // throws when singular

    ReducedDae out;
    out.dual = d;
    std::vector<int> k = k_values(chain, a.n);
    std::vector<int> dummy_floor(a.n); // lowest dummy order per column
    for (int c = 0; c < a.n; ++c) {
        dummy_floor[c] = d.q[c] - k[c] + 1;
        for (int deriv = dummy_floor[c]; deriv <= d.q[c]; ++deriv) out.dummies.push_back({c, deriv});
    }
    std::sort(out.dummies.begin(), out.dummies.end());

    for (int i = 0; i < a.n; ++i) {
        for (int r = 0; r <= d.p[i]; ++r) {
            ReducedEquation eq;
            eq.source_row = i;
            eq.order = r;
            std::map<std::pair<int, int>, Coefficient> terms;
            for (const auto &[col, poly] : a.rows[i].entries)
                for (const auto &[deg, c] : poly.terms) {
                    int deriv = deg + r;
                    require(deriv <= d.q[col], ErrorKind::InvalidInput,
                            "dual not feasible: derivative order exceeds q_j");
                    terms[{col, deriv}] = c;
                }
            for (auto &[key, c] : terms) {
                bool dummy = k[key.first] >= 1 && key.second >= dummy_floor[key.first];
                eq.lhs.push_back({c, VarRef{key.first, key.second, dummy}});
            }
            eq.rhs = rhs_shift(dae.rhs[i], r);
            out.equations.push_back(std::move(eq));
        }
    }
    return out;
}

bool no_dummy_derivatives(const ReducedDae &r, const assignment::DualSolution &d) {
    std::map<int, int> floor_of; // column -> lowest dummy order
    for (const auto &dv : r.dummies) {
        auto it = floor_of.find(dv.column);
        if (it == floor_of.end() || dv.deriv < it->second) floor_of[dv.column] = dv.deriv;
    }
    for (const auto &eq : r.equations)
        for (const auto &[c, v] : eq.lhs) {
            if (v.dummy) {
                if (std::find(r.dummies.begin(), r.dummies.end(), DummyVar{v.column, v.deriv}) ==
                    r.dummies.end())
                    return false;
                continue;
            }
            auto it = floor_of.find(v.column);
            if (it != floor_of.end() && v.deriv >= it->second) return false; // should have been a dummy
            if (v.deriv > d.q[v.column]) return false;
        }
    return true;
}

bool order0_reproduces_input(const ReducedDae &r, const DaeSystem &dae) {
    const LMPolyMatrix &a = dae.lm();
    LMPolyMatrix rebuilt = LMPolyMatrix::zero(a.n);
    for (int i = 0; i < a.n; ++i) rebuilt.rows[i].kind = a.rows[i].kind;
    std::vector<FormalRhs> rhs(a.n);
    for (const auto &eq : r.equations) {
        if (eq.order != 0) continue;
        for (const auto &[c, v] : eq.lhs) {
            ScalarPoly entry = rebuilt.rows[eq.source_row].entry(v.column)
                                   ? *rebuilt.rows[eq.source_row].entry(v.column)
                                   : ScalarPoly{};
            entry.set(v.deriv, c); // dummy or not, z_j^[d] stands for x_j^{(d)}
            rebuilt.rows[eq.source_row].set_entry(v.column, entry);
        }
        rhs[eq.source_row] = eq.rhs;
    }
    if (!(rebuilt == a)) return false;
    for (int i = 0; i < a.n; ++i)
        if (!(rhs[i] == dae.rhs[i])) return false;
    return true;
}

} // namespace mixdae::msalg
