#include "mixdae/oracle.hpp"

#include <algorithm>
#include <cassert>

#include "mixdae/error.hpp"
#include "mixdae/linalg.hpp"

namespace mixdae::oracle {

namespace {

// Combinatorial upper bound delta-hat on deg det for a general polynomial
// matrix; empty when the pattern has no perfect matching.
std::optional<int> delta_hat_of(const core::PolyMat &a) {
    assignment::BipartiteWeights g;
    g.n = static_cast<int>(a.size());
    g.weight.resize(g.n);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            if (auto d = a[i][j].degree()) g.weight[i][j] = *d;
    try {
        auto m = assignment::max_weight_perfect_matching(g);
        return assignment::assignment_value(g, m);
    } catch (const Error &e) {
        if (e.kind == ErrorKind::NoPerfectMatching) return std::nullopt;
        throw;
    }
}

// Exact Lagrange interpolation degree: points x = 1..k, values y.
std::optional<int> interpolated_degree(const std::vector<Rational> &y) {
    int k = static_cast<int>(y.size());
    std::vector<Rational> coeffs(k, 0);
    for (int i = 0; i < k; ++i) {
        if (y[i] == 0) continue;
        // Basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j), coefficients
        // in ascending power order.
        std::vector<Rational> basis{1};
        Rational denom = 1;
        for (int j = 0; j < k; ++j) {
            if (j == i) continue;
            basis.push_back(0);
            for (int t = static_cast<int>(basis.size()) - 1; t >= 1; --t)
                basis[t] = basis[t - 1] - Rational(j + 1) * basis[t];
            basis[0] *= Rational(-(j + 1));
            denom *= Rational(i - j);
        }
        Rational scale = y[i] / denom;
        for (int t = 0; t < static_cast<int>(basis.size()); ++t) coeffs[t] += scale * basis[t];
    }
    for (int d = k - 1; d >= 0; --d)
        if (coeffs[d] != 0) return d;
    return std::nullopt;
}

} // namespace

DegDetEstimate degdet_randomized(const core::PolyMat &a, int param_count, int trials, Rng &rng) {
    require(trials >= 1, ErrorKind::InvalidInput, "at least one trial required");
    DegDetEstimate out;
    out.trials = trials;
    auto dh = delta_hat_of(a);
    if (!dh) return out; // structurally singular: det vanishes identically
    for (int t = 0; t < trials; ++t) {
        std::map<int, Rational> assignment;
        for (int p = 0; p < param_count; ++p) assignment[p] = rng.random_value();
        std::vector<Rational> values;
        for (int s = 1; s <= *dh + 1; ++s)
            values.push_back(linalg::det(core::evaluate(a, Rational(s), assignment)));
        auto deg = interpolated_degree(values);
        if (deg && (!out.value || *deg > *out.value)) out.value = deg;
    }
    return out;
}

DegDetEstimate degdet_randomized(const DaeSystem &d, int trials, Rng &rng) {
    core::PolyMat view = d.is_lm() ? core::dense_view(d.lm()) : core::dense_view(d.mixed());
    return degdet_randomized(view, static_cast<int>(d.params.size()), trials, rng);
}

core::PolyMat companion_first_order(const core::PolyMat &a) {
    int n = static_cast<int>(a.size());
    // Per-column derivative chains, only as deep as that column's own top
    // derivative order: column j of order d_j gets chain variables
    // w_j^(1..d_j-1), and the term s^k x_j is rewritten as s * w_j^(k-1).
    std::vector<int> depth(n, 0);
    for (const auto &row : a)
        for (int j = 0; j < n; ++j)
            if (auto d = row[j].degree()) depth[j] = std::max(depth[j], *d);
    int extra = 0;
    std::vector<int> chain_base(n, -1);
    for (int j = 0; j < n; ++j)
        if (depth[j] >= 2) {
            chain_base[j] = n + extra;
            extra += depth[j] - 1;
        }
    if (extra == 0) return a;

    int big = n + extra;
    core::PolyMat b(big, std::vector<ScalarPoly>(big));
    auto level_col = [&](int j, int level) { // level 0 = x_j itself
        return level == 0 ? j : chain_base[j] + level - 1;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (const auto &[deg, c] : a[i][j].terms) {
                int col = deg == 0 ? j : level_col(j, deg - 1);
                int s_power = deg == 0 ? 0 : 1;
                ScalarPoly &dst = b[i][col];
                Coefficient cur = dst.coeff(s_power);
                assert(cur.is_zero());
                dst.set(s_power, c);
            }
    // Chain rows: s w^(t-1) - w^(t) = 0.
    for (int j = 0; j < n; ++j)
        for (int t = 1; t <= depth[j] - 1; ++t) {
            int row = chain_base[j] + t - 1;
            b[row][level_col(j, t - 1)] = ScalarPoly::monomial(1, rational_coeff(1));
            b[row][level_col(j, t)] = ScalarPoly::constant(-1);
        }
    return b;
}

int report_index(const DaeSystem &d, int trials, Rng &rng) {
    core::PolyMat view = d.is_lm() ? core::dense_view(d.lm()) : core::dense_view(d.mixed());
    core::PolyMat b = companion_first_order(view);
    int params = static_cast<int>(d.params.size());

    auto degdet = degdet_randomized(b, params, trials, rng);
    require(degdet.value.has_value(), ErrorKind::SingularMatrix, "matrix is (numerically) singular");

    int big = static_cast<int>(b.size());
    std::optional<int> delta_minor;
    for (int i = 0; i < big; ++i)
        for (int j = 0; j < big; ++j) {
            core::PolyMat sub;
            sub.reserve(big - 1);
            for (int r = 0; r < big; ++r) {
                if (r == i) continue;
                std::vector<ScalarPoly> row;
                row.reserve(big - 1);
                for (int c = 0; c < big; ++c)
                    if (c != j) row.push_back(b[r][c]);
                sub.push_back(std::move(row));
            }
            auto est = degdet_randomized(sub, params, trials, rng);
            if (est.value && (!delta_minor || *est.value > *delta_minor)) delta_minor = est.value;
        }
    require(delta_minor.has_value(), ErrorKind::SingularMatrix, "all cofactors vanish");
    return *delta_minor - *degdet.value + 1;
}

bool verify_unimodular(const core::PolyMat &u) {
    int n = static_cast<int>(u.size());
    require(n <= 12, ErrorKind::TooLarge, "exact determinant limited to n <= 12 without a trace");
    if (n == 0) return true;
    int degree_bound = 0;
    for (const auto &row : u) {
        int row_deg = -1;
        for (const auto &p : row) {
            require(p.is_rational(), ErrorKind::InvalidInput, "unimodularity check needs rational entries");
            if (auto d = p.degree()) row_deg = std::max(row_deg, *d);
        }
        if (row_deg < 0) return false; // zero row
        degree_bound += row_deg;
    }
    std::vector<Rational> values;
    for (int s = 1; s <= degree_bound + 1; ++s)
        values.push_back(linalg::det(core::evaluate(u, Rational(s), {})));
    // Unimodular iff the interpolated determinant is a nonzero constant.
    int k = static_cast<int>(values.size());
    for (int i = 1; i < k; ++i)
        if (values[i] != values[0]) return false;
    return values[0] != 0;
}

bool verify_unimodular(const relax::TightenResult &result) {
    for (const auto &rec : result.trace) {
        linalg::Mat u = rec.transform.u;
        if (linalg::det(u) == 0) return false;
    }
    return true;
}

} // namespace mixdae::oracle
