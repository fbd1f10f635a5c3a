#pragma once

#include <vector>

#include "mixdae/assignment.hpp"
#include "mixdae/lmrank.hpp"
#include "mixdae/relax.hpp"

namespace mixdae::msalg {

// Nested column sets J_0 = C >= J_1 >= ... >= J_{eta+1} = {} with
// A#[R_{>=h}, J_h] nonsingular and |J_h| = |R_{>=h}|.
struct NestedColumnChain {
    int eta = 0;
    std::vector<std::vector<int>> chain; // index h = 0..eta+1, sorted columns
};

// Dummy algebraic variable standing for x_j^{(d)}.
struct DummyVar {
    int column = 0;
    int deriv = 0;

    friend bool operator==(const DummyVar &a, const DummyVar &b) {
        return a.column == b.column && a.deriv == b.deriv;
    }
    friend bool operator<(const DummyVar &a, const DummyVar &b) {
        return std::tie(a.column, a.deriv) < std::tie(b.column, b.deriv);
    }
};

struct VarRef {
    int column = 0;
    int deriv = 0;
    bool dummy = false;

    friend bool operator==(const VarRef &a, const VarRef &b) {
        return a.column == b.column && a.deriv == b.deriv && a.dummy == b.dummy;
    }
};

struct ReducedEquation {
    int source_row = 0;
    int order = 0; // r-th derivative of the source equation, r <= p_i
    std::vector<std::pair<Coefficient, VarRef>> lhs; // canonical (column, deriv) order
    FormalRhs rhs;
};

struct ReducedDae {
    std::vector<ReducedEquation> equations; // row-major, derivative order ascending
    std::vector<DummyVar> dummies;          // sorted
    assignment::DualSolution dual;          // the (p, q) the reduction used
};

// Fresh canonical dual for the MS steps; the shortest-path construction keeps
// it nonnegative and small, which keeps the dummy count down.
assignment::DualSolution ms_dual(const LMPolyMatrix &a);

// MS Step 2: greedy chain extension in column declaration order, by matroid
// exchange from the nonsingular tight coefficient matrix.
NestedColumnChain nested_columns(const lmrank::TightCoeffMatrix &a_sharp, const assignment::DualSolution &d);

// MS Steps 3-4 on an upper-tight LM system.
ReducedDae ms_reduce(const DaeSystem &dae, const assignment::DualSolution &d);

// Structural validity helpers (used by the test suites).
bool no_dummy_derivatives(const ReducedDae &r, const assignment::DualSolution &d);
// Rebuilds the order-0 equations with dummies substituted back; true iff they
// reproduce the input system exactly.
bool order0_reproduces_input(const ReducedDae &r, const DaeSystem &dae);

} // namespace mixdae::msalg
