#pragma once

#include "mixdae/matrix.hpp"

namespace fixtures {

using namespace mixdae;

// Polynomial builders: {deg, rational} and {deg, param id} term lists.
ScalarPoly qpoly(std::initializer_list<std::pair<int, Rational>> terms);
ScalarPoly tpoly(const DaeSystem &d, std::initializer_list<std::pair<int, int>> terms);

// Index-4 fixture: 4x4 LM system, Q-rows {0,1}, T-rows {2,3}, parameters
// alpha_1..alpha_5 (ids 0..4), forcings f1..f4.
//   [ s^2-s  s^2-s  0        1    ]
//   [ s^2    s^2    1        0    ]
//   [ 0      a1     a2 s^2   a3 s ]
//   [ 0      0      a4       a5 s ]
DaeSystem high_index();
// The two modification results the tightness loop must hit, entry for entry.
LMPolyMatrix high_index_after_first();
LMPolyMatrix high_index_after_second();

// RLC network fixture: 10x10 mixed system (KCL/KVL rows rational, element
// rows carrying R1, R2, L, C), variables i1..i5, v1..v5, forcing V.
DaeSystem rlc();

// Nonlinear heuristic fixture: 3x3 mixed, the nonlinear Jacobian entry
// encoded as parameter alpha.
DaeSystem nonlinear();

// Constant-coefficient trap: structurally regular but rank-deficient leading
// block; degree-based structural analysis misreports its index.
DaeSystem pantelides_trap();

// Index-3 mixed example with a second-order parametric entry (alpha_1..alpha_4).
DaeSystem mixed3();

// Structural equality with parameters compared by display name instead of id
// (classification mints fresh ids but keeps names).
bool lm_equal_display(const LMPolyMatrix &a, const LMPolyMatrix &b);

} // namespace fixtures
