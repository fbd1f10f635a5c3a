#pragma once

#include <vector>

#include "mixdae/linalg.hpp"
#include "mixdae/matrix.hpp"

namespace mixdae::lmrank {

// Constant LM-matrix A# extracted at exponents q_j - p_i. Rows keep their
// source ids and layer kinds; may be rectangular (row/column submatrices of a
// tight coefficient matrix appear in the MS column-chain construction).
struct TightCoeffMatrix {
    std::vector<int> row_ids; // source row ids
    std::vector<int> col_ids; // source column ids
    std::vector<RowKind> kind;
    std::vector<std::vector<Coefficient>> a; // dense, rows x cols

    int row_count() const { return static_cast<int>(a.size()); }
    int col_count() const { return static_cast<int>(col_ids.size()); }
    bool nonzero(int i, int j) const { return !a[i][j].is_zero(); }

    std::vector<int> q_rows() const;
    std::vector<int> t_rows() const;

    // Nonzero-pattern adjacency over all rows.
    std::vector<std::vector<int>> pattern() const;
    // Q-part columns (restricted to the given column positions) as vectors
    // over the Q-rows.
    std::vector<std::vector<Rational>> q_columns(const std::vector<int> &cols) const;
    // T-part adjacency restricted to column positions: per column, list of
    // T-row positions with a nonzero entry.
    std::vector<std::vector<int>> t_adjacency(const std::vector<int> &cols) const;

    TightCoeffMatrix submatrix(const std::vector<int> &rows, const std::vector<int> &cols) const;
};

// rank + minimizer J* + max-form witness (basis of the Q-side union member,
// matching of the T-side member).
struct RankCertificate {
    int rank = 0;
    std::vector<int> minimizer;                   // column positions, sorted
    int rank_q_minimizer = 0;                     // rank Q[R_Q, J*]
    int trank_t_minimizer = 0;                    // trank T[R_T, J*]
    std::vector<int> basis_q;                     // independent Q-side columns
    std::vector<std::pair<int, int>> matching_t;  // (column, T-row position)

    int min_form_value(int cols) const {
        return rank_q_minimizer + trank_t_minimizer + cols - static_cast<int>(minimizer.size());
    }
};

// Maximum matching size on a nonzero pattern.
int term_rank(const std::vector<std::vector<int>> &adj, int n_rows, int n_cols);
int term_rank(const TightCoeffMatrix &a);

// Rank of the Q-part / term-rank of the T-part restricted to a column subset
// (the two terms of the min-form identity).
int rank_q_on(const TightCoeffMatrix &a, const std::vector<int> &cols);
int trank_t_on(const TightCoeffMatrix &a, const std::vector<int> &cols);

// Rank of an LM-matrix as the rank of the union of the column matroid of the
// Q-part (exact rational elimination as independence oracle) and the
// transversal matroid of the T-part, by augmenting paths. The minimizer is
// the canonical reachability cut of the final auxiliary graph: columns with
// no copy reachable from the insertable sources.
RankCertificate lm_rank(const TightCoeffMatrix &a);

// Literal evaluation of the min-form identity over all 2^|C| column subsets.
// Guarded to |C| <= 20.
int lm_rank_bruteforce(const TightCoeffMatrix &a);

bool is_nonsingular(const TightCoeffMatrix &a);

} // namespace mixdae::lmrank
