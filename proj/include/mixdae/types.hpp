#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "mixdae/rational.hpp"

namespace mixdae {

// Symbolic independent parameter. Identity is the id; the name is display-only
// and may repeat (reclassified rational coefficients keep their printed form).
struct ParamSymbol {
    int id = -1;
    std::string name;

    friend bool operator==(const ParamSymbol &a, const ParamSymbol &b) { return a.id == b.id; }
    friend bool operator!=(const ParamSymbol &a, const ParamSymbol &b) { return a.id != b.id; }
};

// One coefficient of a polynomial entry: rational part plus at most one
// parameter. T-rows carry pure parameters (rat == 0), Q-rows pure rationals.
struct Coefficient {
    Rational rat = 0;
    std::optional<ParamSymbol> param;

    bool is_zero() const { return rat == 0 && !param; }
    bool is_rational() const { return !param; }

    friend bool operator==(const Coefficient &a, const Coefficient &b) {
        if (a.rat != b.rat) return false;
        if (a.param.has_value() != b.param.has_value()) return false;
        return !a.param || *a.param == *b.param;
    }
    friend bool operator!=(const Coefficient &a, const Coefficient &b) { return !(a == b); }
};

inline Coefficient rational_coeff(Rational r) { return Coefficient{std::move(r), std::nullopt}; }
inline Coefficient param_coeff(ParamSymbol p) { return Coefficient{0, std::move(p)}; }

// Degree of a polynomial entry; empty optional encodes the degree of the zero
// polynomial (minus infinity). Kept as a sentinel so degree arithmetic cannot
// silently wrap.
using EntryDegree = std::optional<int>;

// Polynomial in the indeterminate s. Terms keyed by degree, ascending; no
// stored zero coefficients.
struct ScalarPoly {
    std::map<int, Coefficient> terms;

    ScalarPoly() = default;
    explicit ScalarPoly(std::map<int, Coefficient> t) : terms(std::move(t)) { prune(); }

    static ScalarPoly monomial(int deg, Coefficient c) {
        ScalarPoly p;
        p.set(deg, std::move(c));
        return p;
    }
    static ScalarPoly constant(Rational r) { return monomial(0, rational_coeff(std::move(r))); }

    bool is_zero() const { return terms.empty(); }

    EntryDegree degree() const {
        if (terms.empty()) return std::nullopt;
        return terms.rbegin()->first;
    }

    Coefficient coeff(int deg) const {
        auto it = terms.find(deg);
        return it == terms.end() ? Coefficient{} : it->second;
    }

    void set(int deg, Coefficient c) {
        if (c.is_zero())
            terms.erase(deg);
        else
            terms[deg] = std::move(c);
    }

    // True when every coefficient is a plain rational.
    bool is_rational() const {
        for (const auto &[d, c] : terms)
            if (c.param) return false;
        return true;
    }

    bool is_monomial() const { return terms.size() == 1; }

    void prune() {
        for (auto it = terms.begin(); it != terms.end();)
            it = it->second.is_zero() ? terms.erase(it) : std::next(it);
    }

    friend bool operator==(const ScalarPoly &a, const ScalarPoly &b) { return a.terms == b.terms; }
    friend bool operator!=(const ScalarPoly &a, const ScalarPoly &b) { return !(a == b); }
};

// Rational-only polynomial arithmetic, used for row operations on Q-rows.
// Touching a parameter coefficient here is a programming error.
ScalarPoly poly_add(const ScalarPoly &a, const ScalarPoly &b);
ScalarPoly poly_scale(const ScalarPoly &a, const Rational &c);
ScalarPoly poly_shift(const ScalarPoly &a, int m); // multiply by s^m, m >= 0
ScalarPoly poly_mul_rational(const ScalarPoly &a, const ScalarPoly &b);

std::string poly_to_string(const ScalarPoly &p, const std::string &var = "s");

} // namespace mixdae
