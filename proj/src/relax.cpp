#include "mixdae/relax.hpp"

#include <algorithm>
#include <cassert>

#include "mixdae/error.hpp"

namespace mixdae::relax {

namespace {

// Internal invariant checks that must not compile away: violations are bugs
// in the algorithm, not user errors.
void internal_check(bool cond, const char *msg) {
    if (!cond) throw std::logic_error(std::string("internal invariant violated: ") + msg);
}

} // namespace

ScalarPoly QRowTransform::uq_entry(int i, int j) const {
    if (u[i][j] == 0) return {};
    internal_check(p[j] >= p[i], "U_Q(s) entry with negative exponent");
    return ScalarPoly::monomial(p[j] - p[i], rational_coeff(u[i][j]));
}

lmrank::TightCoeffMatrix tight_coefficient_matrix(const LMPolyMatrix &a, const assignment::DualSolution &d) {
    require(assignment::is_feasible(a, d), ErrorKind::InfeasibleDual, "dual solution infeasible for matrix");
    lmrank::TightCoeffMatrix out;
    out.col_ids.resize(a.n);
    for (int j = 0; j < a.n; ++j) out.col_ids[j] = j;
    out.a.assign(a.n, std::vector<Coefficient>(a.n));
    for (int i = 0; i < a.n; ++i) {
        out.row_ids.push_back(a.rows[i].id);
        out.kind.push_back(a.rows[i].kind);
        for (const auto &[col, poly] : a.rows[i].entries) {
            int e = d.q[col] - d.p[i];
            if (e >= 0) out.a[i][col] = poly.coeff(e);
        }
    }
    return out;
}

LaurentExpansion laurent_expansion(const LMPolyMatrix &a, const assignment::DualSolution &d) {
    require(assignment::is_feasible(a, d), ErrorKind::InfeasibleDual, "dual solution infeasible for matrix");
    auto shape = [&]() {
        lmrank::TightCoeffMatrix v;
        for (int i = 0; i < a.n; ++i) {
            v.row_ids.push_back(a.rows[i].id);
            v.kind.push_back(a.rows[i].kind);
        }
        v.col_ids.resize(a.n);
        for (int j = 0; j < a.n; ++j) v.col_ids[j] = j;
        v.a.assign(a.n, std::vector<Coefficient>(a.n));
        return v;
    };
    LaurentExpansion out;
    out.a_sharp = shape();
    int max_q = 0;
    for (int q : d.q) max_q = std::max(max_q, q);
    for (int i = 0; i < a.n; ++i)
        for (const auto &[col, poly] : a.rows[i].entries)
            for (const auto &[deg, c] : poly.terms) {
                int k = d.q[col] - d.p[i] - deg;
                internal_check(k >= 0, "feasible dual admits no negative Laurent index");
                if (k == 0) {
                    out.a_sharp.a[i][col] = c;
                    continue;
                }
                while (static_cast<int>(out.tail.size()) < k) out.tail.push_back(shape());
                out.tail[k - 1].a[i][col] = c;
            }
    internal_check(static_cast<int>(out.tail.size()) <= max_q, "Laurent tail exceeds max q_j");
    return out;
}

namespace {

// Backward elimination of Q#[R_Q, J*]: columns processed left to right, the
// surviving pivot in each column is the nonzero entry of largest (p, row id);
// rows with smaller (p, row id) are cleared against it. The recorded U has
// unit diagonal and is upper-triangular under the ascending (p, id) row sort.
QRowTransform eliminate(const lmrank::TightCoeffMatrix &sharp, const std::vector<int> &q_positions,
                        const assignment::DualSolution &d, const std::vector<int> &minimizer,
                        const std::optional<core::DcPotentials> &dc) {
    int m = static_cast<int>(q_positions.size());
    QRowTransform tr;
    tr.u.assign(m, std::vector<Rational>(m, 0));
    for (int k = 0; k < m; ++k) {
        tr.u[k][k] = 1;
        tr.q_rows.push_back(sharp.row_ids[q_positions[k]]);
        tr.p.push_back(d.p[q_positions[k]]);
    }
    // Working copy of the J* block.
    std::vector<std::vector<Rational>> w(m, std::vector<Rational>(minimizer.size(), 0));
    for (int k = 0; k < m; ++k)
        for (std::size_t jj = 0; jj < minimizer.size(); ++jj) w[k][jj] = sharp.a[q_positions[k]][minimizer[jj]].rat;

    auto sort_key = [&](int k) { return std::make_pair(tr.p[k], tr.q_rows[k]); };
    std::vector<char> used(m, 0);
    for (std::size_t jj = 0; jj < minimizer.size(); ++jj) {
        int pivot = -1;
        for (int k = 0; k < m; ++k) {
            if (used[k] || w[k][jj] == 0) continue;
            if (pivot < 0 || sort_key(k) > sort_key(pivot)) pivot = k;
        }
        if (pivot < 0) continue;
        if (dc) {
            // Block-diagonal discipline: the pivot's block index p - lambda
            // must match the column's q - mu. Automatic for DC inputs.
            int row_id = tr.q_rows[pivot];
            int col_id = sharp.col_ids[minimizer[jj]];
            internal_check(tr.p[pivot] - dc->lambda.at(row_id) == d.q[col_id] - dc->mu.at(col_id),
                           "DC elimination crossed a diagonal block");
        }
        for (int k = 0; k < m; ++k) {
            if (used[k] || k == pivot || w[k][jj] == 0) continue;
            internal_check(sort_key(pivot) > sort_key(k), "pivot must dominate cleared row");
            Rational f = w[k][jj] / w[pivot][jj];
            for (std::size_t c = jj; c < minimizer.size(); ++c) w[k][c] -= f * w[pivot][c];
            for (int c = 0; c < m; ++c) tr.u[k][c] -= f * tr.u[pivot][c];
        }
        used[pivot] = 1;
    }
    // rank == trank on the block now: unused rows are zero on J*, pivots form
    // a staircase.
    for (int k = 0; k < m; ++k)
        if (!used[k])
            for (std::size_t c = 0; c < minimizer.size(); ++c)
                internal_check(w[k][c] == 0, "non-pivot row not cleared on J*");
    return tr;
}

LMPolyMatrix apply_transform(const LMPolyMatrix &a, const assignment::DualSolution &d, const QRowTransform &tr) {
    // Laurent-expansion route: one constant multiply per tail matrix.
    LaurentExpansion lx = laurent_expansion(a, d);
    std::vector<const lmrank::TightCoeffMatrix *> layers;
    layers.push_back(&lx.a_sharp);
    for (const auto &v : lx.tail) layers.push_back(&v);

    std::vector<int> q_positions;
    for (int i = 0; i < a.n; ++i)
        if (a.rows[i].kind == RowKind::Q) q_positions.push_back(i);
    internal_check(q_positions.size() == tr.q_rows.size(), "transform shape mismatch");

    LMPolyMatrix out = a; // T-rows stay bit-identical
    int m = static_cast<int>(q_positions.size());
    for (int k = 0; k < m; ++k) {
        int row = q_positions[k];
        std::map<int, ScalarPoly> fresh;
        for (int col = 0; col < a.n; ++col) {
            ScalarPoly entry;
            for (std::size_t layer = 0; layer < layers.size(); ++layer) {
                Rational v = 0;
                for (int k2 = 0; k2 < m; ++k2) {
                    const Coefficient &c = layers[layer]->a[q_positions[k2]][col];
                    if (c.rat != 0 && tr.u[k][k2] != 0) v += tr.u[k][k2] * c.rat;
                }
                if (v == 0) continue;
                int e = d.q[col] - d.p[row] - static_cast<int>(layer);
                internal_check(e >= 0, "transform produced a negative exponent");
                Coefficient cur = entry.coeff(e);
                cur.rat += v;
                entry.set(e, cur);
            }
            if (!entry.is_zero()) fresh[col] = std::move(entry);
        }
        out.rows[row].entries = std::move(fresh);
    }
    return out;
}

} // namespace

ModifyResult modify(const LMPolyMatrix &a, const assignment::DualSolution &d, const lmrank::RankCertificate &cert) {
    require(cert.rank < a.n, ErrorKind::AlreadyTight, "matrix is already upper-tight");
    lmrank::TightCoeffMatrix sharp = tight_coefficient_matrix(a, d);
    std::vector<int> q_positions = sharp.q_rows();
    QRowTransform tr = eliminate(sharp, q_positions, d, cert.minimizer, std::nullopt);
    return ModifyResult{apply_transform(a, d, tr), std::move(tr)};
}

ModifyResult modify_dc(const LMPolyMatrix &a, const assignment::DualSolution &d,
                       const lmrank::RankCertificate &cert, const core::DcPotentials &dc) {
    require(cert.rank < a.n, ErrorKind::AlreadyTight, "matrix is already upper-tight");
    {
        auto check = core::detect_dc(a);
        require(check.has_value(), ErrorKind::NotDimensionallyConsistent, "matrix is not dimensionally consistent");
    }
    lmrank::TightCoeffMatrix sharp = tight_coefficient_matrix(a, d);
    std::vector<int> q_positions = sharp.q_rows();
    QRowTransform tr = eliminate(sharp, q_positions, d, cert.minimizer, dc);

    // Monomial route: new Q-part from the single constant product U * Q(1),
    // entries rebuilt as s^{mu_j - lambda_i}.
    int m = static_cast<int>(q_positions.size());
    std::vector<std::vector<Rational>> q1(m, std::vector<Rational>(a.n, 0));
    for (int k = 0; k < m; ++k)
        for (const auto &[col, poly] : a.rows[q_positions[k]].entries)
            for (const auto &[deg, c] : poly.terms) q1[k][col] += c.rat;

    LMPolyMatrix out = a;
    for (int k = 0; k < m; ++k) {
        int row = q_positions[k];
        std::map<int, ScalarPoly> fresh;
        for (int col = 0; col < a.n; ++col) {
            Rational v = 0;
            for (int k2 = 0; k2 < m; ++k2)
                if (tr.u[k][k2] != 0 && q1[k2][col] != 0) v += tr.u[k][k2] * q1[k2][col];
            if (v == 0) continue;
            int e = dc.mu.at(col) - dc.lambda.at(a.rows[row].id);
            internal_check(e >= 0, "DC reconstruction produced a negative exponent");
            fresh[col] = ScalarPoly::monomial(e, rational_coeff(v));
        }
        out.rows[row].entries = std::move(fresh);
    }
    internal_check(core::detect_dc(out).has_value(), "DC modification lost dimensional consistency");
    return ModifyResult{std::move(out), std::move(tr)};
}

namespace {

core::PolyMat poly_identity(int m) {
    core::PolyMat u(m, std::vector<ScalarPoly>(m));
    for (int i = 0; i < m; ++i) u[i][i] = ScalarPoly::constant(1);
    return u;
}

core::PolyMat poly_mul(const core::PolyMat &a, const core::PolyMat &b) {
    int m = static_cast<int>(a.size());
    core::PolyMat out(m, std::vector<ScalarPoly>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            ScalarPoly acc;
            for (int k = 0; k < m; ++k)
                if (!a[i][k].is_zero() && !b[k][j].is_zero())
                    acc = poly_add(acc, poly_mul_rational(a[i][k], b[k][j]));
            out[i][j] = std::move(acc);
        }
    return out;
}

} // namespace

TightenResult tighten(const DaeSystem &lm_system, DcMode mode) {
    require(lm_system.is_lm(), ErrorKind::InvalidInput, "tighten expects an LM system");
    TightenResult res;
    res.system = lm_system;
    LMPolyMatrix &a = res.system.lm();
    const int n = a.n;
    const int l = a.max_degree();

    auto weights = assignment::weights_of(a);
    auto matching = assignment::max_weight_perfect_matching(weights); // throws when structurally singular
    assignment::DualSolution dual = assignment::construct_dual(weights, matching);
    for (int i = 0; i < n; ++i) {
        internal_check(dual.p[i] >= 0 && dual.p[i] <= l * n, "initial p outside [0, ln]");
        internal_check(dual.q[i] >= 0 && dual.q[i] <= l * n, "initial q outside [0, ln]");
    }
    res.delta_hat_initial = assignment::assignment_value(dual);
    internal_check(res.delta_hat_initial == assignment::assignment_value(weights, matching),
                   "strong duality violated at Phase 1");

    std::vector<int> q_positions;
    for (int i = 0; i < n; ++i)
        if (a.rows[i].kind == RowKind::Q) q_positions.push_back(i);
    res.transform_rows.clear();
    for (int i : q_positions) res.transform_rows.push_back(a.rows[i].id);
    res.transform = poly_identity(static_cast<int>(q_positions.size()));

    int total_updates = 0;
    while (true) {
        lmrank::TightCoeffMatrix sharp = tight_coefficient_matrix(a, dual);
        lmrank::RankCertificate cert = lmrank::lm_rank(sharp);
        if (cert.rank == n) break;

        require(res.modifications < l * n + 1, ErrorKind::IterationOverrun,
                "modification count exceeded l*n: input appears singular");
        std::optional<core::DcPotentials> dc;
        if (mode != DcMode::Off) dc = core::detect_dc(a);
        if (mode == DcMode::On)
            require(dc.has_value(), ErrorKind::NotDimensionallyConsistent,
                    "dc=on requested but the matrix is not dimensionally consistent");

        TraceRecord rec;
        rec.iteration = res.modifications;
        rec.used_dc = dc.has_value();
        rec.rank = cert.rank;
        rec.rank_q_minimizer = cert.rank_q_minimizer;
        rec.trank_t_minimizer = cert.trank_t_minimizer;
        rec.minimizer = cert.minimizer;
        rec.dual_before = dual;
        int objective_before = assignment::assignment_value(dual);

        ModifyResult step = dc ? modify_dc(a, dual, cert, *dc) : modify(a, dual, cert);
        a = std::move(step.matrix);
        rec.transform = step.transform;
        ++res.modifications;

        // Co-transform the right-hand side and accumulate U_total(s).
        {
            const QRowTransform &tr = step.transform;
            int m = static_cast<int>(q_positions.size());
            std::vector<FormalRhs> fresh(m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    ScalarPoly e = tr.uq_entry(i, j);
                    if (!e.is_zero()) fresh[i] = rhs_add(fresh[i], rhs_apply_poly(e, res.system.rhs[q_positions[j]]));
                }
            for (int i = 0; i < m; ++i) res.system.rhs[q_positions[i]] = std::move(fresh[i]);

            core::PolyMat uq(m, std::vector<ScalarPoly>(m));
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) uq[i][j] = tr.uq_entry(i, j);
            res.transform = poly_mul(uq, res.transform);
        }

        // The dual stays feasible but loses optimality; iterate the
        // vertex-cover update until the tight pattern regains a perfect
        // matching.
        internal_check(assignment::is_feasible(a, dual), "dual infeasible after modification");
        int guard = 0;
        while (true) {
            lmrank::TightCoeffMatrix fresh_sharp = tight_coefficient_matrix(a, dual);
            auto pat = fresh_sharp.pattern();
            if (lmrank::term_rank(pat, n, n) == n) break;
            dual = assignment::update_dual(pat, dual);
            ++total_updates;
            ++guard;
            int obj = assignment::assignment_value(dual);
            rec.dual_objectives.push_back(obj);
            require(obj >= 0, ErrorKind::IterationOverrun,
                    "dual objective fell below zero: input matrix is singular");
            require(total_updates <= res.delta_hat_initial + 1, ErrorKind::IterationOverrun,
                    "dual update count exceeded initial delta-hat: input appears singular");
            for (int i = 0; i < n; ++i) {
                internal_check(dual.p[i] >= 0 && dual.p[i] <= 2 * l * n, "p outside [0, 2ln] during updates");
                internal_check(dual.q[i] >= 0 && dual.q[i] <= 2 * l * n, "q outside [0, 2ln] during updates");
            }
            internal_check(assignment::is_feasible(a, dual), "updated dual infeasible");
        }
        internal_check(guard >= 1, "modification left the dual optimal");
        internal_check(assignment::assignment_value(dual) < objective_before,
                       "delta-hat did not strictly decrease across the modification");
        rec.dual_after = dual;
        rec.matrix_after = a;
        res.trace.push_back(std::move(rec));
    }

    res.dual = dual;
    res.delta_hat_final = assignment::assignment_value(dual);
    return res;
}

} // namespace mixdae::relax
