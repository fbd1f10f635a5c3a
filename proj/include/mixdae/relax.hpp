#pragma once

#include <optional>
#include <vector>

#include "mixdae/assignment.hpp"
#include "mixdae/core.hpp"
#include "mixdae/lmrank.hpp"

namespace mixdae::relax {

// A(s) = D_p^{-1}(s) (A# + sum_k s^{-k} V_k) D_q(s), exactly.
struct LaurentExpansion {
    lmrank::TightCoeffMatrix a_sharp;
    std::vector<lmrank::TightCoeffMatrix> tail; // V_1 .. V_K, V_K nonzero
};

// Constant row transform U acting on the Q-rows, plus the dual exponents that
// conjugate it into the unimodular U_Q(s) = D_p^{-1} U D_p. Entry (i,j) of
// U_Q(s) is u[i][j] * s^{p[j] - p[i]}; u[i][j] != 0 only when p[j] >= p[i],
// so U_Q(s) is a polynomial matrix with constant determinant det U = 1.
struct QRowTransform {
    std::vector<int> q_rows; // row ids in matrix order
    std::vector<std::vector<Rational>> u;
    std::vector<int> p;

    ScalarPoly uq_entry(int i, int j) const; // polynomial entry of U_Q(s)
};

lmrank::TightCoeffMatrix tight_coefficient_matrix(const LMPolyMatrix &a, const assignment::DualSolution &d);

LaurentExpansion laurent_expansion(const LMPolyMatrix &a, const assignment::DualSolution &d);

// One unimodular modification step: backward elimination of Q#[R_Q, J*]
// (J* from the rank certificate), applied through the Laurent expansion.
// T-rows of the result are bit-identical to the input.
struct ModifyResult {
    LMPolyMatrix matrix;
    QRowTransform transform;
};

ModifyResult modify(const LMPolyMatrix &a, const assignment::DualSolution &d, const lmrank::RankCertificate &cert);

// Dimensionally consistent variant: per-block elimination and reconstruction
// through the single constant product U * Q(1).
ModifyResult modify_dc(const LMPolyMatrix &a, const assignment::DualSolution &d,
                       const lmrank::RankCertificate &cert, const core::DcPotentials &dc);

enum class DcMode { Auto, On, Off };

struct TraceRecord {
    int iteration = 0;
    bool used_dc = false;
    int rank = 0;
    int rank_q_minimizer = 0;
    int trank_t_minimizer = 0;
    std::vector<int> minimizer; // column indices
    QRowTransform transform;
    assignment::DualSolution dual_before;
    assignment::DualSolution dual_after;
    std::vector<int> dual_objectives; // objective after each dual update
    LMPolyMatrix matrix_after;
};

struct TightenResult {
    DaeSystem system;                   // upper-tight LM system
    assignment::DualSolution dual;      // optimal, nonnegative
    std::vector<int> transform_rows;    // Q-row ids for the cumulative transform
    core::PolyMat transform;            // U_total(s), square over transform_rows
    std::vector<TraceRecord> trace;
    int delta_hat_initial = 0;
    int delta_hat_final = 0;
    int modifications = 0;
};

// Algorithm for Tightness (Phases 1-3). Requires a structurally nonsingular
// LM system; terminates with an upper-tight matrix, the optimal dual and the
// cumulative unimodular transform on the Q-rows.
TightenResult tighten(const DaeSystem &lm_system, DcMode mode = DcMode::Auto);

} // namespace mixdae::relax
