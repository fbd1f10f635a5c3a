#include "fixtures.hpp"

namespace fixtures {

ScalarPoly qpoly(std::initializer_list<std::pair<int, Rational>> terms) {
    ScalarPoly p;
    for (const auto &[deg, r] : terms) p.set(deg, rational_coeff(r));
    return p;
}

ScalarPoly tpoly(const DaeSystem &d, std::initializer_list<std::pair<int, int>> terms) {
    ScalarPoly p;
    for (const auto &[deg, id] : terms) p.set(deg, param_coeff(ParamSymbol{id, d.params[id]}));
    return p;
}

namespace {

FormalRhs unit_rhs(int forcing) {
    FormalRhs r;
    r.add(forcing, 0, 1);
    return r;
}

} // namespace

DaeSystem high_index() {
    DaeSystem d;
    d.variables = {"x1", "x2", "x3", "x4"};
    d.forcings = {"f1", "f2", "f3", "f4"};
    d.params = {"alpha_1", "alpha_2", "alpha_3", "alpha_4", "alpha_5"};
    LMPolyMatrix a = LMPolyMatrix::zero(4);
    a.rows[0].kind = RowKind::Q;
    a.rows[0].set_entry(0, qpoly({{2, 1}, {1, -1}}));
    a.rows[0].set_entry(1, qpoly({{2, 1}, {1, -1}}));
    a.rows[0].set_entry(3, qpoly({{0, 1}}));
    a.rows[1].kind = RowKind::Q;
    a.rows[1].set_entry(0, qpoly({{2, 1}}));
    a.rows[1].set_entry(1, qpoly({{2, 1}}));
    a.rows[1].set_entry(2, qpoly({{0, 1}}));
    a.rows[2].kind = RowKind::T;
    a.rows[2].set_entry(1, tpoly(d, {{0, 0}}));
    a.rows[2].set_entry(2, tpoly(d, {{2, 1}}));
    a.rows[2].set_entry(3, tpoly(d, {{1, 2}}));
    a.rows[3].kind = RowKind::T;
    a.rows[3].set_entry(2, tpoly(d, {{0, 3}}));
    a.rows[3].set_entry(3, tpoly(d, {{1, 4}}));
    d.matrix = std::move(a);
    for (int i = 0; i < 4; ++i) d.rhs.push_back(unit_rhs(i));
    d.check_invariants();
    return d;
}

LMPolyMatrix high_index_after_first() {
    DaeSystem d = high_index(); // for the parameter table
    LMPolyMatrix a = d.lm();
    a.rows[0].entries.clear();
    a.rows[0].set_entry(0, qpoly({{1, -1}}));
    a.rows[0].set_entry(1, qpoly({{1, -1}}));
    a.rows[0].set_entry(2, qpoly({{0, -1}}));
    a.rows[0].set_entry(3, qpoly({{0, 1}}));
    return a;
}

LMPolyMatrix high_index_after_second() {
    LMPolyMatrix a = high_index_after_first();
    a.rows[1].entries.clear();
    a.rows[1].set_entry(2, qpoly({{1, -1}, {0, 1}}));
    a.rows[1].set_entry(3, qpoly({{1, 1}}));
    return a;
}

DaeSystem rlc() {
    DaeSystem d;
    d.variables = {"i1", "i2", "i3", "i4", "i5", "v1", "v2", "v3", "v4", "v5"};
    d.forcings = {"V"};
    d.params = {"R1", "R2", "L", "C"};
    MixedPolyMatrix a = MixedPolyMatrix::zero(10);
    auto rat = [&](int row, int col, Rational v) { a.set_entry(row, col, qpoly({{0, v}})); };
    // KCL
    rat(0, 0, -1);
    rat(0, 3, -1);
    rat(0, 4, 1);
    rat(1, 1, 1);
    rat(1, 2, 1);
    rat(1, 3, 1);
    rat(1, 4, -1);
    // KVL
    rat(2, 5, 1);
    rat(2, 7, 1);
    rat(2, 9, -1);
    rat(3, 5, -1);
    rat(3, 6, -1);
    rat(3, 8, 1);
    rat(4, 6, 1);
    rat(4, 7, -1);
    // Element characteristics
    a.set_entry(5, 0, tpoly(d, {{0, 0}})); // R1 i1
    rat(5, 5, -1);
    a.set_entry(6, 1, tpoly(d, {{0, 1}})); // R2 i2
    rat(6, 6, -1);
    a.set_entry(7, 2, tpoly(d, {{1, 2}})); // L i3'
    rat(7, 7, -1);
    rat(8, 3, -1);
    a.set_entry(8, 8, tpoly(d, {{1, 3}})); // C v4'
    rat(9, 9, 1);
    d.matrix = std::move(a);
    d.rhs.resize(10);
    d.rhs[9] = unit_rhs(0);
    d.check_invariants();
    return d;
}

DaeSystem nonlinear() {
    DaeSystem d;
    d.variables = {"x1", "x2", "x3"};
    d.forcings = {"f1", "f2", "f3"};
    d.params = {"alpha"};
    MixedPolyMatrix a = MixedPolyMatrix::zero(3);
    a.set_entry(0, 0, qpoly({{1, 1}}));
    a.set_entry(0, 1, tpoly(d, {{0, 0}}));
    a.set_entry(1, 0, qpoly({{1, 1}, {0, 1}}));
    a.set_entry(1, 2, qpoly({{0, 1}}));
    a.set_entry(2, 0, qpoly({{1, 1}}));
    a.set_entry(2, 2, qpoly({{0, 1}}));
    d.matrix = std::move(a);
    for (int i = 0; i < 3; ++i) d.rhs.push_back(unit_rhs(i));
    d.check_invariants();
    return d;
}

DaeSystem pantelides_trap() {
    DaeSystem d;
    d.variables = {"x1", "x2", "x3"};
    d.forcings = {"f1", "f2", "f3"};
    LMPolyMatrix a = LMPolyMatrix::zero(3);
    for (int i = 0; i < 3; ++i) a.rows[i].kind = RowKind::Q;
    a.rows[0].set_entry(0, qpoly({{1, 1}}));
    a.rows[0].set_entry(1, qpoly({{1, 1}}));
    a.rows[0].set_entry(2, qpoly({{0, 1}}));
    a.rows[1].set_entry(0, qpoly({{1, 1}}));
    a.rows[1].set_entry(1, qpoly({{1, 1}}));
    a.rows[2].set_entry(1, qpoly({{0, 1}}));
    a.rows[2].set_entry(2, qpoly({{1, 1}}));
    d.matrix = std::move(a);
    for (int i = 0; i < 3; ++i) d.rhs.push_back(unit_rhs(i));
    d.check_invariants();
    return d;
}

DaeSystem mixed3() {
    DaeSystem d;
    d.variables = {"x1", "x2", "x3"};
    d.forcings = {"f1", "f2", "f3"};
    d.params = {"alpha_1", "alpha_2", "alpha_3", "alpha_4"};
    MixedPolyMatrix a = MixedPolyMatrix::zero(3);
    a.set_entry(0, 0, qpoly({{1, 1}}));
    a.set_entry(0, 1, qpoly({{1, 1}}));
    a.set_entry(0, 2, tpoly(d, {{0, 0}}));
    a.set_entry(1, 0, qpoly({{1, 1}}));
    a.set_entry(1, 1, qpoly({{1, 1}}));
    {
        ScalarPoly p;
        p.set(2, param_coeff(ParamSymbol{2, d.params[2]}));
        p.set(1, rational_coeff(-2));
        p.set(0, param_coeff(ParamSymbol{3, d.params[3]}));
        a.set_entry(2, 2, std::move(p));
    }
    a.set_entry(2, 1, tpoly(d, {{0, 1}}));
    d.matrix = std::move(a);
    for (int i = 0; i < 3; ++i) d.rhs.push_back(unit_rhs(i));
    d.check_invariants();
    return d;
}

bool lm_equal_display(const LMPolyMatrix &a, const LMPolyMatrix &b) {
    if (a.n != b.n) return false;
    for (int i = 0; i < a.n; ++i) {
        if (a.rows[i].kind != b.rows[i].kind) return false;
        const auto &ea = a.rows[i].entries, &eb = b.rows[i].entries;
        if (ea.size() != eb.size()) return false;
        for (const auto &[col, pa] : ea) {
            auto it = eb.find(col);
            if (it == eb.end() || pa.terms.size() != it->second.terms.size()) return false;
            for (const auto &[deg, ca] : pa.terms) {
                auto jt = it->second.terms.find(deg);
                if (jt == it->second.terms.end()) return false;
                const Coefficient &cb = jt->second;
                if (ca.rat != cb.rat) return false;
                std::string na = ca.param ? ca.param->name : std::string();
                std::string nb = cb.param ? cb.param->name : std::string();
                if (na != nb) return false;
            }
        }
    }
    return true;
}

} // namespace fixtures
