#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "mixdae/core.hpp"
#include "mixdae/relax.hpp"

namespace mixdae::oracle {

inline constexpr std::uint64_t kDefaultSeed = 0x6d697864ULL; // config default, CLI overrides

// Seedable PRNG; values drawn deterministically for a fixed seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed = kDefaultSeed) : eng_(seed) {}
    // Uniform nonzero integer value in a 62-bit range, as an exact rational.
    Rational random_value() { return Rational(static_cast<std::int64_t>((eng_() >> 2) | 1)); }
    std::uint64_t raw() { return eng_(); }

  private:
    std::mt19937_64 eng_;
};

struct DegDetEstimate {
    std::optional<int> value; // empty = minus infinity (determinant vanishes)
    int trials = 0;
};

// Randomized deg det: substitutes independent random rationals for all
// parameters and interpolates det A(s) exactly at delta-hat + 1 points.
// A Schwartz-Zippel failure can only lower the estimate, so the max over
// trials is reported; the value never exceeds delta-hat.
DegDetEstimate degdet_randomized(const core::PolyMat &a, int param_count, int trials, Rng &rng);
DegDetEstimate degdet_randomized(const DaeSystem &d, int trials, Rng &rng);

// First-order companion expansion (higher-order derivatives replaced by new
// variables); identity for l <= 1.
core::PolyMat companion_first_order(const core::PolyMat &a);

// Differentiation index nu = delta_{N-1} - deg det + 1 of the first-order
// companion, with delta_{N-1} estimated by one-row-one-column deletion.
// Diagnostic only; desk-scale.
int report_index(const DaeSystem &d, int trials, Rng &rng);

// Exact check that det U(s) is a nonzero constant, by interpolation.
bool verify_unimodular(const core::PolyMat &u);
// Triangular-factor route when the tightness trace is available.
bool verify_unimodular(const relax::TightenResult &result);

} // namespace mixdae::oracle
