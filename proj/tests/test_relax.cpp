#include <doctest.h>

#include "fixtures.hpp"
#include "mixdae/error.hpp"
#include "mixdae/oracle.hpp"
#include "mixdae/pipeline.hpp"
#include "mixdae/relax.hpp"

using namespace mixdae;
using namespace mixdae::relax;
using fixtures::qpoly;
using fixtures::tpoly;

namespace {

Coefficient rc(Rational r) { return rational_coeff(std::move(r)); }

// Polynomial-multiplication route for blockdiag(U_total, I) * A, used as the
// independent check of the Laurent-expansion application inside modify.
LMPolyMatrix apply_poly_route(const core::PolyMat &u_total, const std::vector<int> &u_rows,
                              const LMPolyMatrix &a) {
    LMPolyMatrix out = a;
    std::map<int, int> pos;
    for (std::size_t k = 0; k < u_rows.size(); ++k) pos[u_rows[k]] = static_cast<int>(k);
    for (int i = 0; i < a.n; ++i) {
        if (a.rows[i].kind != RowKind::Q) continue;
        int bi = pos.at(a.rows[i].id);
        std::map<int, ScalarPoly> fresh;
        for (int col = 0; col < a.n; ++col) {
            ScalarPoly acc;
            for (int j = 0; j < a.n; ++j) {
                if (a.rows[j].kind != RowKind::Q) continue;
                int bj = pos.at(a.rows[j].id);
                const ScalarPoly *e = a.rows[j].entry(col);
                if (!e || u_total[bi][bj].is_zero()) continue;
                acc = poly_add(acc, poly_mul_rational(u_total[bi][bj], *e));
            }
            if (!acc.is_zero()) fresh[col] = std::move(acc);
        }
        out.rows[i].entries = std::move(fresh);
    }
    return out;
}

} // namespace

TEST_CASE("tight coefficient matrix of the high-index fixture") {
    DaeSystem d = fixtures::high_index();
    assignment::DualSolution dual{{0, 0, 0, 0}, {2, 2, 2, 1}};
    auto sharp = tight_coefficient_matrix(d.lm(), dual);
    CHECK(sharp.a[0][0] == rc(1));
    CHECK(sharp.a[0][1] == rc(1));
    CHECK(sharp.a[0][2].is_zero());
    CHECK(sharp.a[0][3].is_zero());
    CHECK(sharp.a[1][0] == rc(1));
    CHECK(sharp.a[1][1] == rc(1));
    CHECK(sharp.a[2][2].param->name == "alpha_2");
    CHECK(sharp.a[2][3].param->name == "alpha_3");
    CHECK(sharp.a[2][1].is_zero());
    CHECK(sharp.a[3][3].param->name == "alpha_5");
    CHECK(sharp.a[3][2].is_zero());

    // A'(s) under the alternative feasible dual p'=(1,0,0,1), q'=(2,2,2,2).
    DaeSystem d1 = d;
    d1.matrix = fixtures::high_index_after_first();
    assignment::DualSolution dual1{{1, 0, 0, 1}, {2, 2, 2, 2}};
    auto sharp1 = tight_coefficient_matrix(d1.lm(), dual1);
    CHECK(sharp1.a[0][0] == rc(-1));
    CHECK(sharp1.a[0][1] == rc(-1));
    CHECK(sharp1.a[0][2].is_zero());
    CHECK(sharp1.a[0][3].is_zero());
    CHECK(sharp1.a[1][0] == rc(1));
    CHECK(sharp1.a[1][1] == rc(1));
    CHECK(sharp1.a[2][2].param->name == "alpha_2");
    CHECK(sharp1.a[2][3].is_zero());
    CHECK(sharp1.a[3][3].param->name == "alpha_5");

    // Infeasible dual is rejected.
    CHECK_THROWS_AS(tight_coefficient_matrix(d.lm(), assignment::DualSolution{{0, 0, 0, 0}, {0, 0, 0, 0}}),
                    Error);
}

TEST_CASE("tight coefficient matrix of a constant matrix under the zero dual is itself") {
    LMPolyMatrix a = LMPolyMatrix::zero(2);
    a.rows[0].set_entry(0, qpoly({{0, 7}}));
    a.rows[1].set_entry(1, qpoly({{0, -3}}));
    auto sharp = tight_coefficient_matrix(a, assignment::DualSolution{{0, 0}, {0, 0}});
    CHECK(sharp.a[0][0] == rc(7));
    CHECK(sharp.a[1][1] == rc(-3));
}

TEST_CASE("laurent expansion splits by exponent and reconstructs exactly") {
    LMPolyMatrix a = LMPolyMatrix::zero(1);
    a.rows[0].set_entry(0, qpoly({{1, 1}}));
    auto lx = laurent_expansion(a, assignment::DualSolution{{0}, {1}});
    CHECK(lx.tail.empty());
    CHECK(lx.a_sharp.a[0][0] == rc(1));

    LMPolyMatrix b = LMPolyMatrix::zero(1);
    b.rows[0].set_entry(0, qpoly({{1, 1}, {0, 1}}));
    auto lxb = laurent_expansion(b, assignment::DualSolution{{0}, {1}});
    REQUIRE(lxb.tail.size() == 1);
    CHECK(lxb.a_sharp.a[0][0] == rc(1));
    CHECK(lxb.tail[0].a[0][0] == rc(1));

    DaeSystem d = fixtures::high_index();
    assignment::DualSolution dual{{0, 0, 0, 0}, {2, 2, 2, 1}};
    auto lx61 = laurent_expansion(d.lm(), dual);
    CHECK(lx61.tail.size() == 2);
    // Reconstruction: entry (i,j) = sum_k V_k[i][j] s^{q_j - p_i - k}.
    LMPolyMatrix rebuilt = LMPolyMatrix::zero(4);
    for (int i = 0; i < 4; ++i) {
        rebuilt.rows[i].kind = d.lm().rows[i].kind;
        for (int j = 0; j < 4; ++j) {
            ScalarPoly p;
            for (int k = 0; k <= static_cast<int>(lx61.tail.size()); ++k) {
                const Coefficient &c = k == 0 ? lx61.a_sharp.a[i][j] : lx61.tail[k - 1].a[i][j];
                if (!c.is_zero()) p.set(dual.q[j] - dual.p[i] - k, c);
            }
            rebuilt.rows[i].set_entry(j, p);
        }
    }
    CHECK(rebuilt == d.lm());
}

TEST_CASE("first modification of the high-index fixture") {
    DaeSystem d = fixtures::high_index();
    assignment::DualSolution dual{{0, 0, 0, 0}, {2, 2, 2, 1}};
    auto sharp = tight_coefficient_matrix(d.lm(), dual);
    auto cert = lmrank::lm_rank(sharp);
    REQUIRE(cert.rank == 3);
    auto step = modify(d.lm(), dual, cert);
    CHECK(step.transform.u == std::vector<std::vector<Rational>>{{1, -1}, {0, 1}});
    CHECK(step.matrix == fixtures::high_index_after_first());
    // T-rows bit-identical.
    CHECK(step.matrix.rows[2].entries == d.lm().rows[2].entries);
    CHECK(step.matrix.rows[3].entries == d.lm().rows[3].entries);
}

TEST_CASE("second modification uses the conjugated transform [[1,0],[s,1]]") {
    DaeSystem d = fixtures::high_index();
    LMPolyMatrix a1 = fixtures::high_index_after_first();
    // Deterministic dual state after one vertex-cover update.
    assignment::DualSolution dual{{1, 0, 0, 0}, {2, 2, 2, 1}};
    REQUIRE(assignment::is_feasible(a1, dual));
    auto sharp = tight_coefficient_matrix(a1, dual);
    REQUIRE(lmrank::term_rank(sharp) == 4); // dual optimal again
    auto cert = lmrank::lm_rank(sharp);
    REQUIRE(cert.rank == 3);
    CHECK(cert.minimizer == std::vector<int>{0, 1, 2});
    auto step = modify(a1, dual, cert);
    CHECK(step.transform.u == std::vector<std::vector<Rational>>{{1, 0}, {1, 1}});
    CHECK(step.transform.uq_entry(1, 0) == qpoly({{1, 1}})); // s
    CHECK(step.matrix == fixtures::high_index_after_second());
}

TEST_CASE("modify rejects an already upper-tight matrix") {
    LMPolyMatrix a = LMPolyMatrix::zero(2);
    a.rows[0].set_entry(0, qpoly({{1, 1}}));
    a.rows[1].set_entry(1, qpoly({{0, 1}}));
    assignment::DualSolution dual{{0, 0}, {1, 0}};
    auto cert = lmrank::lm_rank(tight_coefficient_matrix(a, dual));
    try {
        modify(a, dual, cert);
        FAIL_CHECK("expected AlreadyTight");
    } catch (const Error &e) {
        CHECK(e.kind == ErrorKind::AlreadyTight);
    }
}

TEST_CASE("RLC modification rewrites exactly one KVL row") {
    DaeSystem lm = pipeline::to_lm(fixtures::rlc());
    assignment::DualSolution dual{std::vector<int>(10, 0), {0, 0, 1, 0, 0, 0, 0, 0, 1, 0}};
    auto sharp = tight_coefficient_matrix(lm.lm(), dual);
    auto cert = lmrank::lm_rank(sharp);
    REQUIRE(cert.rank == 9);
    auto generic = modify(lm.lm(), dual, cert);
    auto dc = core::detect_dc(lm.lm());
    REQUIRE(dc.has_value());
    auto blockwise = modify_dc(lm.lm(), dual, cert, *dc);
    CHECK(generic.matrix == blockwise.matrix);

    for (int i = 0; i < 10; ++i) {
        if (i == 2) continue;
        CHECK(generic.matrix.rows[i].entries == lm.lm().rows[i].entries);
    }
    const auto &row2 = generic.matrix.rows[2].entries;
    REQUIRE(row2.size() == 2);
    CHECK(*generic.matrix.rows[2].entry(8) == qpoly({{0, 1}}));
    CHECK(*generic.matrix.rows[2].entry(9) == qpoly({{0, -1}}));
}

TEST_CASE("modify_dc agrees with modify on a one-block constant system") {
    LMPolyMatrix a = LMPolyMatrix::zero(2);
    a.rows[0].set_entry(0, qpoly({{0, 1}}));
    a.rows[0].set_entry(1, qpoly({{0, 1}}));
    a.rows[1].set_entry(0, qpoly({{0, 2}}));
    a.rows[1].set_entry(1, qpoly({{0, 2}}));
    assignment::DualSolution dual{{0, 0}, {0, 0}};
    auto cert = lmrank::lm_rank(tight_coefficient_matrix(a, dual));
    REQUIRE(cert.rank == 1);
    auto dc = core::detect_dc(a);
    REQUIRE(dc.has_value());
    auto generic = modify(a, dual, cert);
    auto blockwise = modify_dc(a, dual, cert, *dc);
    CHECK(generic.matrix == blockwise.matrix);
    // Row 0 cleared against row 1 (the larger id pivots).
    CHECK(generic.matrix.rows[0].entries.empty());
}

TEST_CASE("modify_dc leaves blocks untouched when J* misses them") {
    // Two diagonal blocks: constants on {0,1}x{0,1}, monomials s on {2,3}.
    LMPolyMatrix a = LMPolyMatrix::zero(4);
    a.rows[0].set_entry(0, qpoly({{0, 1}}));
    a.rows[0].set_entry(1, qpoly({{0, 1}}));
    a.rows[1].set_entry(0, qpoly({{0, 2}}));
    a.rows[1].set_entry(1, qpoly({{0, 2}}));
    a.rows[2].set_entry(2, qpoly({{1, 1}}));
    a.rows[3].set_entry(3, qpoly({{1, 1}}));
    assignment::DualSolution dual{{1, 1, 0, 0}, {1, 1, 1, 1}};
    REQUIRE(assignment::is_feasible(a, dual));
    auto dc = core::detect_dc(a);
    REQUIRE(dc.has_value());
    auto cert = lmrank::lm_rank(tight_coefficient_matrix(a, dual));
    REQUIRE(cert.rank == 3);
    auto generic = modify(a, dual, cert);
    auto blockwise = modify_dc(a, dual, cert, *dc);
    CHECK(generic.matrix == blockwise.matrix);
    CHECK(blockwise.matrix.rows[0].entries.empty()); // cleared within its block
    CHECK(blockwise.matrix.rows[1].entries == a.rows[1].entries);
    CHECK(blockwise.matrix.rows[2].entries == a.rows[2].entries);
    CHECK(blockwise.matrix.rows[3].entries == a.rows[3].entries);
    CHECK(core::detect_dc(blockwise.matrix).has_value());
}

TEST_CASE("tighten: high-index fixture needs exactly two modifications") {
    DaeSystem d = fixtures::high_index();
    auto res = tighten(d);
    CHECK(res.delta_hat_initial == 7);
    CHECK(res.delta_hat_final == 3);
    CHECK(res.modifications == 2);
    REQUIRE(res.trace.size() == 2);
    CHECK(res.trace[0].matrix_after == fixtures::high_index_after_first());
    CHECK(res.trace[1].matrix_after == fixtures::high_index_after_second());
    CHECK(res.system.lm() == fixtures::high_index_after_second());
    CHECK(res.dual.p == std::vector<int>{1, 3, 2, 3});
    CHECK(res.dual.q == std::vector<int>{2, 2, 4, 4});
    CHECK(res.trace[0].transform.u == std::vector<std::vector<Rational>>{{1, -1}, {0, 1}});
    CHECK(res.trace[1].transform.u == std::vector<std::vector<Rational>>{{1, 0}, {1, 1}});

    // Transformed right-hand sides: f1 - f2 and f1' - f2' + f2.
    FormalRhs r0;
    r0.add(0, 0, 1);
    r0.add(1, 0, -1);
    CHECK(res.system.rhs[0] == r0);
    FormalRhs r1;
    r1.add(0, 1, 1);
    r1.add(1, 1, -1);
    r1.add(1, 0, 1);
    CHECK(res.system.rhs[1] == r1);

    // Cumulative transform is unimodular and reproduces the matrix by plain
    // polynomial multiplication.
    CHECK(oracle::verify_unimodular(res.transform));
    CHECK(oracle::verify_unimodular(res));
    CHECK(apply_poly_route(res.transform, res.transform_rows, d.lm()) == res.system.lm());

    // Final tight coefficient matrix is nonsingular; delta-hat matches the
    // dual objective.
    auto sharp = tight_coefficient_matrix(res.system.lm(), res.dual);
    CHECK(lmrank::is_nonsingular(sharp));
}

TEST_CASE("tighten: RLC fixture, one modification") {
    DaeSystem lm = pipeline::to_lm(fixtures::rlc());
    auto res = tighten(lm);
    CHECK(res.delta_hat_initial == 2);
    CHECK(res.delta_hat_final == 1);
    CHECK(res.modifications == 1);
    CHECK(res.dual.p == std::vector<int>{0, 0, 1, 0, 0, 0, 0, 0, 0, 1});
    CHECK(res.dual.q == std::vector<int>{0, 0, 1, 0, 0, 0, 0, 0, 1, 1});
    REQUIRE(res.trace.size() == 1);
    CHECK(res.trace[0].used_dc);
    CHECK(res.trace[0].transform.u.size() == 5);
    for (int i = 5; i < 10; ++i) CHECK(res.system.lm().rows[i].entries == lm.lm().rows[i].entries);
    CHECK(apply_poly_route(res.transform, res.transform_rows, lm.lm()) == res.system.lm());

    auto off = tighten(lm, DcMode::Off);
    CHECK(off.system.lm() == res.system.lm());
    CHECK(off.delta_hat_final == res.delta_hat_final);
}

TEST_CASE("tighten: already-tight input is returned unchanged") {
    LMPolyMatrix a = LMPolyMatrix::zero(2);
    a.rows[0].set_entry(0, qpoly({{1, 1}}));
    a.rows[1].set_entry(1, qpoly({{0, 1}}));
    DaeSystem d;
    d.variables = {"x1", "x2"};
    d.matrix = a;
    d.rhs.resize(2);
    auto res = tighten(d);
    CHECK(res.modifications == 0);
    CHECK(res.system.lm() == a);
    CHECK(res.transform[0][0] == qpoly({{0, 1}}));
    CHECK(res.transform[0][1].is_zero());
}

TEST_CASE("tighten reports singular inputs instead of looping") {
    LMPolyMatrix a = LMPolyMatrix::zero(2);
    a.rows[0].set_entry(0, qpoly({{0, 1}}));
    a.rows[0].set_entry(1, qpoly({{0, 1}}));
    a.rows[1].set_entry(0, qpoly({{0, 1}}));
    a.rows[1].set_entry(1, qpoly({{0, 1}}));
    DaeSystem d;
    d.variables = {"x1", "x2"};
    d.matrix = a;
    d.rhs.resize(2);
    CHECK_THROWS_AS(tighten(d), Error);

    LMPolyMatrix b = LMPolyMatrix::zero(2);
    b.rows[0].set_entry(0, qpoly({{0, 1}}));
    b.rows[1].set_entry(0, qpoly({{0, 1}}));
    DaeSystem e;
    e.variables = {"x1", "x2"};
    e.matrix = b;
    e.rhs.resize(2);
    CHECK_THROWS_AS(tighten(e), Error); // no perfect matching at Phase 1
}

TEST_CASE("dc=on demands dimensional consistency") {
    DaeSystem d = fixtures::high_index(); // s^2 - s entries: not DC
    try {
        tighten(d, DcMode::On);
        FAIL_CHECK("expected NotDimensionallyConsistent");
    } catch (const Error &e) {
        CHECK(e.kind == ErrorKind::NotDimensionallyConsistent);
    }
}

TEST_CASE("tighten on a larger randomized instance") {
    // One denser 10x10, degree-4 system as a scaling smoke test.
    std::mt19937_64 eng(31337);
    DaeSystem d;
    LMPolyMatrix a = LMPolyMatrix::zero(10);
    for (int i = 0; i < 10; ++i) {
        a.rows[i].kind = i % 3 == 0 ? RowKind::T : RowKind::Q;
        d.variables.push_back("x" + std::to_string(i + 1));
    }
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            if (i != j && eng() % 2) continue;
            ScalarPoly p;
            if (a.rows[i].kind == RowKind::Q) {
                for (int t = 0; t < 2; ++t)
                    p.set(static_cast<int>(eng() % 5), rational_coeff(Rational(1 + eng() % 3) *
                                                                      (eng() % 2 ? 1 : -1)));
            } else {
                p.set(static_cast<int>(eng() % 5),
                      param_coeff(d.fresh_param("g" + std::to_string(d.params.size()))));
            }
            if (p.is_zero() && i == j) p = ScalarPoly::constant(1);
            a.rows[i].set_entry(j, p);
        }
    d.matrix = std::move(a);
    d.rhs.resize(10);
    d.check_invariants();

    auto res = tighten(d);
    auto sharp = tight_coefficient_matrix(res.system.lm(), res.dual);
    CHECK(lmrank::is_nonsingular(sharp));
    for (int i = 0; i < 10; ++i)
        if (d.lm().rows[i].kind == RowKind::T)
            CHECK(res.system.lm().rows[i].entries == d.lm().rows[i].entries);
    CHECK(oracle::verify_unimodular(res));
    oracle::Rng r1(5), r2(5);
    CHECK(oracle::degdet_randomized(res.system, 1, r1).value ==
          oracle::degdet_randomized(d, 1, r2).value);
}
