#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "mixdae/types.hpp"

namespace mixdae {

enum class RowKind { Q, T };

// One row of an LM-polynomial matrix. Entries are sparse, keyed by column
// index; row ids stay stable across transformations.
struct LmRow {
    int id = 0;
    RowKind kind = RowKind::Q;
    std::map<int, ScalarPoly> entries;

    const ScalarPoly *entry(int col) const {
        auto it = entries.find(col);
        return it == entries.end() ? nullptr : &it->second;
    }
    void set_entry(int col, ScalarPoly p) {
        if (p.is_zero())
            entries.erase(col);
        else
            entries[col] = std::move(p);
    }
};

// Square layered-mixed polynomial matrix [Q(s); T(s)] with per-row layer tags.
// Q-rows hold only rational coefficients; every nonzero coefficient of a T-row
// carries a parameter symbol distinct from all others in the matrix.
struct LMPolyMatrix {
    int n = 0;
    std::vector<LmRow> rows;

    static LMPolyMatrix zero(int n) {
        LMPolyMatrix a;
        a.n = n;
        a.rows.resize(n);
        for (int i = 0; i < n; ++i) a.rows[i].id = i;
        return a;
    }

    const ScalarPoly *entry(int row, int col) const { return rows[row].entry(col); }

    std::vector<int> q_rows() const {
        std::vector<int> out;
        for (int i = 0; i < n; ++i)
            if (rows[i].kind == RowKind::Q) out.push_back(i);
        return out;
    }
    std::vector<int> t_rows() const {
        std::vector<int> out;
        for (int i = 0; i < n; ++i)
            if (rows[i].kind == RowKind::T) out.push_back(i);
        return out;
    }

    // Max entry degree l; 0 for the zero matrix.
    int max_degree() const {
        int l = 0;
        for (const auto &r : rows)
            for (const auto &[c, p] : r.entries)
                if (auto d = p.degree()) l = std::max(l, *d);
        return l;
    }

    friend bool operator==(const LMPolyMatrix &a, const LMPolyMatrix &b);

    // Throws ErrorKind::InvalidInput on any violated structural invariant.
    void check_invariants() const;
};

// Square mixed polynomial matrix: a coefficient may combine a rational part
// with a parameter. The parameter set across the whole matrix is duplicate-free.
struct MixedPolyMatrix {
    int n = 0;
    std::vector<std::map<int, ScalarPoly>> rows;

    static MixedPolyMatrix zero(int n) {
        MixedPolyMatrix a;
        a.n = n;
        a.rows.resize(n);
        return a;
    }

    const ScalarPoly *entry(int row, int col) const {
        auto it = rows[row].find(col);
        return it == rows[row].end() ? nullptr : &it->second;
    }
    void set_entry(int row, int col, ScalarPoly p) {
        if (p.is_zero())
            rows[row].erase(col);
        else
            rows[row][col] = std::move(p);
    }

    int max_degree() const {
        int l = 0;
        for (const auto &r : rows)
            for (const auto &[c, p] : r)
                if (auto d = p.degree()) l = std::max(l, *d);
        return l;
    }

    void check_invariants() const;
};

// Formal right-hand side: a rational combination of forcing-function
// derivatives, keyed by (forcing id, derivative order).
struct FormalRhs {
    std::map<std::pair<int, int>, Rational> terms;

    bool is_zero() const { return terms.empty(); }
    void add(int forcing, int order, const Rational &c) {
        auto key = std::make_pair(forcing, order);
        auto it = terms.find(key);
        Rational v = (it == terms.end() ? Rational(0) : it->second) + c;
        if (v == 0)
            terms.erase(key);
        else
            terms[key] = v;
    }

    friend bool operator==(const FormalRhs &a, const FormalRhs &b) { return a.terms == b.terms; }
};

FormalRhs rhs_scale(const FormalRhs &r, const Rational &c);
FormalRhs rhs_shift(const FormalRhs &r, int m); // derivative order += m
FormalRhs rhs_add(const FormalRhs &a, const FormalRhs &b);
// Apply a polynomial row multiplier: s^m f^(k) becomes f^(k+m).
FormalRhs rhs_apply_poly(const ScalarPoly &u, const FormalRhs &r);

// A linear DAE in Laplace form A(s) x~(s) = f^(s), together with the naming
// tables. `params` is the registry of parameter symbols (index == id); fresh
// symbols are appended by the LM conversion steps.
struct DaeSystem {
    std::variant<MixedPolyMatrix, LMPolyMatrix> matrix;
    std::vector<FormalRhs> rhs;
    std::vector<std::string> variables;
    std::vector<std::string> forcings;
    std::vector<std::string> params;
    // Augmented systems keep the original variables as a suffix; columns
    // [original_column_offset, n) map back to the input variables.
    int original_column_offset = 0;

    int size() const {
        if (auto *lm = std::get_if<LMPolyMatrix>(&matrix)) return lm->n;
        return std::get<MixedPolyMatrix>(matrix).n;
    }
    bool is_lm() const { return std::holds_alternative<LMPolyMatrix>(matrix); }
    const LMPolyMatrix &lm() const { return std::get<LMPolyMatrix>(matrix); }
    LMPolyMatrix &lm() { return std::get<LMPolyMatrix>(matrix); }
    const MixedPolyMatrix &mixed() const { return std::get<MixedPolyMatrix>(matrix); }

    ParamSymbol fresh_param(const std::string &name) {
        params.push_back(name);
        return ParamSymbol{static_cast<int>(params.size()) - 1, name};
    }

    void check_invariants() const;
};

} // namespace mixdae
