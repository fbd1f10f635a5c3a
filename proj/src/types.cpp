#include "mixdae/types.hpp"

#include <cassert>
#include <sstream>

namespace mixdae {

ScalarPoly poly_add(const ScalarPoly &a, const ScalarPoly &b) {
    assert(a.is_rational() && b.is_rational());
    ScalarPoly out = a;
    for (const auto &[d, c] : b.terms) {
        Coefficient cur = out.coeff(d);
        cur.rat += c.rat;
        out.set(d, cur);
    }
    return out;
}

ScalarPoly poly_scale(const ScalarPoly &a, const Rational &c) {
    assert(a.is_rational());
    ScalarPoly out;
    if (c == 0) return out;
    for (const auto &[d, co] : a.terms) out.set(d, rational_coeff(co.rat * c));
    return out;
}

ScalarPoly poly_shift(const ScalarPoly &a, int m) {
    assert(m >= 0);
    ScalarPoly out;
    for (const auto &[d, co] : a.terms) out.set(d + m, co);
    return out;
}

ScalarPoly poly_mul_rational(const ScalarPoly &a, const ScalarPoly &b) {
    assert(a.is_rational() && b.is_rational());
    ScalarPoly out;
    for (const auto &[da, ca] : a.terms)
        for (const auto &[db, cb] : b.terms) {
            Coefficient cur = out.coeff(da + db);
            cur.rat += ca.rat * cb.rat;
            out.set(da + db, cur);
        }
    return out;
}

std::string poly_to_string(const ScalarPoly &p, const std::string &var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[d, c] : p.terms) {
        std::string coeff;
        bool neg = false;
        if (c.param) {
            coeff = c.param->name;
            if (c.rat != 0) coeff = "(" + rational_to_string(c.rat) + "+" + coeff + ")";
        } else {
            Rational r = c.rat;
            if (r < 0) {
                neg = true;
                r = -r;
            }
            coeff = rational_to_string(r);
        }
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        bool unit_coeff = !c.param && (c.rat == 1 || c.rat == -1);
        if (d == 0) {
            os << coeff;
        } else {
            if (!unit_coeff) os << coeff << "*";
            os << var;
            if (d > 1) os << "^" << d;
        }
    }
    return os.str();
}

} // namespace mixdae
