#include "mixdae/core.hpp"

#include <cassert>

#include "mixdae/error.hpp"

namespace mixdae::core {

namespace {

int count_rational_coeffs(const std::map<int, ScalarPoly> &row) {
    int count = 0;
    for (const auto &[col, poly] : row)
        for (const auto &[deg, c] : poly.terms)
            if (c.rat != 0) ++count;
    return count;
}

bool has_param(const std::map<int, ScalarPoly> &row) {
    for (const auto &[col, poly] : row)
        for (const auto &[deg, c] : poly.terms)
            if (c.param) return true;
    return false;
}

std::string coeff_display(const Coefficient &c) {
    if (c.param && c.rat != 0) return "(" + rational_to_string(c.rat) + "+" + c.param->name + ")";
    if (c.param) return c.param->name;
    return rational_to_string(c.rat);
}

} // namespace

std::optional<LMPolyMatrix> classify_as_lm(const MixedPolyMatrix &m, DaeSystem &names) {
    // First pass: decide row kinds without minting symbols.
    std::vector<RowKind> kinds(m.n, RowKind::Q);
    for (int i = 0; i < m.n; ++i) {
        int rats = count_rational_coeffs(m.rows[i]);
        if (rats <= 1)
            kinds[i] = RowKind::T; // scalable by one fresh parameter
        else if (!has_param(m.rows[i]))
            kinds[i] = RowKind::Q;
        else
            return std::nullopt;
    }
    LMPolyMatrix out = LMPolyMatrix::zero(m.n);
    for (int i = 0; i < m.n; ++i) {
        out.rows[i].kind = kinds[i];
        for (const auto &[col, poly] : m.rows[i]) {
            if (kinds[i] == RowKind::Q) {
                out.rows[i].set_entry(col, poly);
                continue;
            }
            ScalarPoly reclassified;
            for (const auto &[deg, c] : poly.terms) {
                ParamSymbol sym = c.param && c.rat == 0 ? names.fresh_param(c.param->name)
                                                        : names.fresh_param(coeff_display(c));
                reclassified.set(deg, param_coeff(sym));
            }
            out.rows[i].set_entry(col, reclassified);
        }
    }
    out.check_invariants();
    return out;
}

bool classify_system_as_lm(DaeSystem &d) {
    if (d.is_lm()) return true;
    auto lm = classify_as_lm(d.mixed(), d);
    if (!lm) return false;
    d.matrix = std::move(*lm);
    return true;
}

DaeSystem mixed_to_lm(const DaeSystem &d) {
    require(!d.is_lm(), ErrorKind::InvalidInput, "mixed_to_lm expects a mixed system");
    const MixedPolyMatrix &a = d.mixed();
    require(a.n >= 1, ErrorKind::InvalidInput, "empty system");
    int n = a.n;

    DaeSystem out;
    out.forcings = d.forcings;
    out.params = d.params;
    out.original_column_offset = n;
    out.variables.reserve(2 * n);
    for (int j = 0; j < n; ++j) out.variables.push_back("y~" + std::to_string(j + 1));
    for (const auto &v : d.variables) out.variables.push_back(v);

    LMPolyMatrix lm = LMPolyMatrix::zero(2 * n);
    // Upper block [I | Q(s)].
    for (int i = 0; i < n; ++i) {
        lm.rows[i].kind = RowKind::Q;
        lm.rows[i].set_entry(i, ScalarPoly::constant(1));
        for (const auto &[col, poly] : a.rows[i]) {
            ScalarPoly qpart;
            for (const auto &[deg, c] : poly.terms)
                if (c.rat != 0) qpart.set(deg, rational_coeff(c.rat));
            lm.rows[i].set_entry(n + col, qpart);
        }
    }
    // Lower block [-I | T(s)], minted as parameters throughout (D = I is
    // substituted eagerly; the tau_i still mark the block as parametric).
    for (int i = 0; i < n; ++i) {
        auto &row = lm.rows[n + i];
        row.kind = RowKind::T;
        row.set_entry(i, ScalarPoly::monomial(0, param_coeff(out.fresh_param("-tau_" + std::to_string(i + 1)))));
        for (const auto &[col, poly] : a.rows[i]) {
            ScalarPoly tpart;
            for (const auto &[deg, c] : poly.terms)
                if (c.param) tpart.set(deg, param_coeff(out.fresh_param(c.param->name + "'")));
            row.set_entry(n + col, tpart);
        }
    }
    out.matrix = std::move(lm);

    out.rhs = d.rhs;
    out.rhs.resize(2 * n);
    out.check_invariants();
    assert(out.lm().max_degree() == a.max_degree() || a.max_degree() == 0);
    return out;
}

std::optional<DcPotentials> detect_dc(const LMPolyMatrix &a) {
    std::vector<int> qrows = a.q_rows();
    for (int i : qrows)
        for (const auto &[col, poly] : a.rows[i].entries)
            if (!poly.is_monomial()) return std::nullopt;

    DcPotentials dc;
    for (int j = 0; j < a.n; ++j) dc.mu[j] = 0;
    // Traverse the nonzero-pattern bipartite graph component by component,
    // anchoring the first Q-row of each component at lambda = 0.
    std::map<int, bool> row_done;
    std::map<int, bool> col_done;
    for (int anchor : qrows) {
        if (row_done[anchor]) continue;
        dc.lambda[anchor] = 0;
        std::vector<std::pair<bool, int>> stack{{true, anchor}}; // (is_row, id)
        row_done[anchor] = true;
        while (!stack.empty()) {
            auto [is_row, id] = stack.back();
            stack.pop_back();
            if (is_row) {
                for (const auto &[col, poly] : a.rows[id].entries) {
                    int deg = *poly.degree();
                    int mu = dc.lambda[id] + deg;
                    if (col_done[col]) {
                        if (dc.mu[col] != mu) return std::nullopt;
                    } else {
                        col_done[col] = true;
                        dc.mu[col] = mu;
                        stack.push_back({false, col});
                    }
                }
            } else {
                for (int i : qrows) {
                    const ScalarPoly *p = a.rows[i].entry(id);
                    if (!p) continue;
                    int lambda = dc.mu[id] - *p->degree();
                    if (row_done[i]) {
                        if (dc.lambda[i] != lambda) return std::nullopt;
                    } else {
                        row_done[i] = true;
                        dc.lambda[i] = lambda;
                        stack.push_back({true, i});
                    }
                }
            }
        }
    }
    // Certify Q_{i,j}(s) = s^{mu_j - lambda_i} * Q_{i,j}(1) on every nonzero entry.
    for (int i : qrows)
        for (const auto &[col, poly] : a.rows[i].entries)
            if (*poly.degree() != dc.mu[col] - dc.lambda[i]) return std::nullopt;
    return dc;
}

namespace {

Rational coeff_value(const Coefficient &c, const std::map<int, Rational> &assignment) {
    Rational v = c.rat;
    if (c.param) {
        auto it = assignment.find(c.param->id);
        require(it != assignment.end(), ErrorKind::InvalidInput,
                "missing parameter '" + c.param->name + "' in assignment");
        v += it->second;
    }
    return v;
}

Rational poly_value(const ScalarPoly &p, const Rational &s0, const std::map<int, Rational> &assignment) {
    Rational v = 0;
    Rational power = 1;
    int last = 0;
    for (const auto &[deg, c] : p.terms) {
        for (; last < deg; ++last) power *= s0;
        v += coeff_value(c, assignment) * power;
    }
    return v;
}

} // namespace

linalg::Mat evaluate(const PolyMat &a, const Rational &s0, const std::map<int, Rational> &assignment) {
    linalg::Mat out(a.size(), std::vector<Rational>(a.empty() ? 0 : a[0].size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] = poly_value(a[i][j], s0, assignment);
    return out;
}

PolyMat dense_view(const LMPolyMatrix &a) {
    PolyMat out(a.n, std::vector<ScalarPoly>(a.n));
    for (int i = 0; i < a.n; ++i)
        for (const auto &[col, poly] : a.rows[i].entries) out[i][col] = poly;
    return out;
}

PolyMat dense_view(const MixedPolyMatrix &a) {
    PolyMat out(a.n, std::vector<ScalarPoly>(a.n));
    for (int i = 0; i < a.n; ++i)
        for (const auto &[col, poly] : a.rows[i]) out[i][col] = poly;
    return out;
}

linalg::Mat evaluate(const LMPolyMatrix &a, const Rational &s0, const std::map<int, Rational> &assignment) {
    return evaluate(dense_view(a), s0, assignment);
}

linalg::Mat evaluate(const MixedPolyMatrix &a, const Rational &s0, const std::map<int, Rational> &assignment) {
    return evaluate(dense_view(a), s0, assignment);
}

} // namespace mixdae::core
