#pragma once

#include <optional>
#include <vector>

#include "mixdae/rational.hpp"

namespace mixdae::linalg {

using Mat = std::vector<std::vector<Rational>>;

int rank(Mat a);
Rational det(Mat a); // square input

// Expresses each target column in terms of the given independent basis
// columns (all over the same row space). For a target outside the span the
// optional is empty. basis[k] and targets[k] are column vectors.
std::vector<std::optional<std::vector<Rational>>>
represent_in_basis(const std::vector<std::vector<Rational>> &basis,
                   const std::vector<std::vector<Rational>> &targets);

} // namespace mixdae::linalg
