#include "mixdae/matrix.hpp"

#include <set>

#include "mixdae/error.hpp"

namespace mixdae {

bool operator==(const LMPolyMatrix &a, const LMPolyMatrix &b) {
    if (a.n != b.n || a.rows.size() != b.rows.size()) return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        if (a.rows[i].id != b.rows[i].id || a.rows[i].kind != b.rows[i].kind) return false;
        if (a.rows[i].entries != b.rows[i].entries) return false;
    }
    return true;
}

void LMPolyMatrix::check_invariants() const {
    require(static_cast<int>(rows.size()) == n, ErrorKind::InvalidInput, "LM matrix not square");
    std::set<int> params_seen;
    for (const auto &row : rows) {
        for (const auto &[col, poly] : row.entries) {
            require(col >= 0 && col < n, ErrorKind::InvalidInput, "column index out of range");
            require(!poly.is_zero(), ErrorKind::InvalidInput, "stored zero entry");
            for (const auto &[deg, c] : poly.terms) {
                require(deg >= 0, ErrorKind::InvalidInput, "negative degree stored");
                require(!c.is_zero(), ErrorKind::InvalidInput, "stored zero coefficient");
                if (row.kind == RowKind::Q) {
                    require(!c.param, ErrorKind::InvalidInput, "parameter in Q-row");
                } else {
                    require(c.param.has_value(), ErrorKind::InvalidInput, "T-row coefficient without parameter");
                    require(c.rat == 0, ErrorKind::InvalidInput, "T-row coefficient with rational part");
                    require(params_seen.insert(c.param->id).second, ErrorKind::InvalidInput,
                            "parameter reused across coefficients");
                }
            }
        }
    }
}

void MixedPolyMatrix::check_invariants() const {
    require(static_cast<int>(rows.size()) == n, ErrorKind::InvalidInput, "mixed matrix not square");
    std::set<int> params_seen;
    for (const auto &row : rows)
        for (const auto &[col, poly] : row) {
            require(col >= 0 && col < n, ErrorKind::InvalidInput, "column index out of range");
            require(!poly.is_zero(), ErrorKind::InvalidInput, "stored zero entry");
            for (const auto &[deg, c] : poly.terms) {
                require(deg >= 0, ErrorKind::InvalidInput, "negative degree stored");
                require(!c.is_zero(), ErrorKind::InvalidInput, "stored zero coefficient");
                if (c.param)
                    require(params_seen.insert(c.param->id).second, ErrorKind::InvalidInput,
                            "parameter reused across coefficients");
            }
        }
}

FormalRhs rhs_scale(const FormalRhs &r, const Rational &c) {
    FormalRhs out;
    if (c == 0) return out;
    for (const auto &[k, v] : r.terms) out.terms[k] = v * c;
    return out;
}

FormalRhs rhs_shift(const FormalRhs &r, int m) {
    FormalRhs out;
    for (const auto &[k, v] : r.terms) out.terms[{k.first, k.second + m}] = v;
    return out;
}

FormalRhs rhs_add(const FormalRhs &a, const FormalRhs &b) {
    FormalRhs out = a;
    for (const auto &[k, v] : b.terms) out.add(k.first, k.second, v);
    return out;
}

FormalRhs rhs_apply_poly(const ScalarPoly &u, const FormalRhs &r) {
    FormalRhs out;
    for (const auto &[deg, c] : u.terms) {
        if (c.param) fail(ErrorKind::InvalidInput, "row multiplier must be rational");
        out = rhs_add(out, rhs_scale(rhs_shift(r, deg), c.rat));
    }
    return out;
}

void DaeSystem::check_invariants() const {
    int n = size();
    require(static_cast<int>(variables.size()) == n, ErrorKind::InvalidInput, "variable count mismatch");
    require(static_cast<int>(rhs.size()) == n, ErrorKind::InvalidInput, "rhs count mismatch");
    std::set<std::string> names(variables.begin(), variables.end());
    require(static_cast<int>(names.size()) == n, ErrorKind::InvalidInput, "duplicate variable names");
    std::set<std::string> fnames(forcings.begin(), forcings.end());
    require(fnames.size() == forcings.size(), ErrorKind::InvalidInput, "duplicate forcing names");
    for (const auto &r : rhs)
        for (const auto &[k, v] : r.terms) {
            require(k.first >= 0 && k.first < static_cast<int>(forcings.size()), ErrorKind::InvalidInput,
                    "rhs forcing id out of range");
            require(k.second >= 0, ErrorKind::InvalidInput, "negative derivative order in rhs");
            require(v != 0, ErrorKind::InvalidInput, "stored zero rhs coefficient");
        }
    if (is_lm())
        lm().check_invariants();
    else
        mixed().check_invariants();
}

} // namespace mixdae
