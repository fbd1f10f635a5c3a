#pragma once

#include <map>
#include <optional>

#include "mixdae/linalg.hpp"
#include "mixdae/matrix.hpp"

namespace mixdae::core {

// c_{i,j}: max degree with nonzero coefficient, empty for the zero polynomial.
inline EntryDegree entry_degree(const ScalarPoly &p) { return p.degree(); }

// Attempts to view a mixed matrix as an LM matrix without augmentation:
// a row with two or more rational coefficients and no parameters becomes a
// Q-row; a row with at most one rational coefficient is treated as scaled by
// a fresh independent parameter and becomes a T-row (each of its rational
// coefficients is replaced by a fresh symbol whose display keeps the printed
// value, parameter coefficients keep their symbols). Rows mixing parameters
// with two or more rational coefficients defeat the scaling trick; the whole
// attempt then fails and the caller falls back to mixed_to_lm.
std::optional<LMPolyMatrix> classify_as_lm(const MixedPolyMatrix &m, DaeSystem &names);

// Convenience on a DaeSystem holding a mixed matrix; rewrites in place on
// success and returns true.
bool classify_system_as_lm(DaeSystem &d);

// Augments A(s) = Q(s) + T(s) into the 2n x 2n LM system
//   [  I  Q(s) ] (y~)   (f^)
//   [ -I  T(s) ] (z~) = (0 )
// with the lower block treated as parametric (fresh tau_i symbols on -I,
// every T coefficient re-minted). New variables y~ are prepended; columns of
// the original variables keep their names and are recorded via
// original_column_offset.
DaeSystem mixed_to_lm(const DaeSystem &d);

// Dimensional-consistency detection: succeeds iff every Q-row entry is a
// monomial and deg Q_{i,j} = mu_j - lambda_i is solvable on the nonzero
// pattern. One anchor per connected component is fixed to zero (the
// component's first Q-row; isolated columns get mu = 0).
struct DcPotentials {
    std::map<int, int> lambda; // Q-row id -> exponent
    std::map<int, int> mu;     // column -> exponent
};
std::optional<DcPotentials> detect_dc(const LMPolyMatrix &a);

// Entrywise exact evaluation at s = s0 with all parameters substituted.
// Coefficient value is rat + assignment[param]. Throws on a missing parameter.
linalg::Mat evaluate(const LMPolyMatrix &a, const Rational &s0,
                     const std::map<int, Rational> &assignment);
linalg::Mat evaluate(const MixedPolyMatrix &a, const Rational &s0,
                     const std::map<int, Rational> &assignment);

// Dense general polynomial-matrix view (used by the randomized oracles).
using PolyMat = std::vector<std::vector<ScalarPoly>>;
PolyMat dense_view(const LMPolyMatrix &a);
PolyMat dense_view(const MixedPolyMatrix &a);
linalg::Mat evaluate(const PolyMat &a, const Rational &s0, const std::map<int, Rational> &assignment);

} // namespace mixdae::core
