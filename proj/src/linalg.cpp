#include "mixdae/linalg.hpp"

#include <cassert>

namespace mixdae::linalg {

int rank(Mat a) {
    if (a.empty()) return 0;
    int m = static_cast<int>(a.size());
    int n = static_cast<int>(a[0].size());
    int r = 0;
    for (int col = 0; col < n && r < m; ++col) {
        int pivot = -1;
        for (int i = r; i < m; ++i)
            if (a[i][col] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(a[r], a[pivot]);
        for (int i = r + 1; i < m; ++i) {
            if (a[i][col] == 0) continue;
            Rational f = a[i][col] / a[r][col];
            for (int j = col; j < n; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

Rational det(Mat a) {
    int n = static_cast<int>(a.size());
    if (n == 0) return 1;
    assert(static_cast<int>(a[0].size()) == n);
    Rational result = 1;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int i = col; i < n; ++i)
            if (a[i][col] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) return 0;
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            result = -result;
        }
        result *= a[col][col];
        for (int i = col + 1; i < n; ++i) {
            if (a[i][col] == 0) continue;
            Rational f = a[i][col] / a[col][col];
            for (int j = col; j < n; ++j) a[i][j] -= f * a[col][j];
        }
    }
    return result;
}

std::vector<std::optional<std::vector<Rational>>>
represent_in_basis(const std::vector<std::vector<Rational>> &basis,
                   const std::vector<std::vector<Rational>> &targets) {
    std::vector<std::optional<std::vector<Rational>>> out(targets.size());
    int k = static_cast<int>(basis.size());
    if (k == 0) {
        for (std::size_t t = 0; t < targets.size(); ++t) {
            bool zero = true;
            for (const auto &v : targets[t]) zero = zero && v == 0;
            if (zero) out[t] = std::vector<Rational>{};
        }
        return out;
    }
    int m = static_cast<int>(basis[0].size());
    // Augmented system [basis | targets], Gauss-Jordan on the basis block.
    Mat a(m, std::vector<Rational>(k + targets.size(), 0));
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < m; ++i) a[i][j] = basis[j][i];
    for (std::size_t t = 0; t < targets.size(); ++t)
        for (int i = 0; i < m; ++i) a[i][k + t] = targets[t][i];

    std::vector<int> pivot_row(k, -1);
    int r = 0;
    for (int col = 0; col < k; ++col) {
        int pivot = -1;
        for (int i = r; i < m; ++i)
            if (a[i][col] != 0) {
                pivot = i;
                break;
            }
        assert(pivot >= 0 && "basis columns must be independent");
        std::swap(a[r], a[pivot]);
        Rational inv = a[r][col];
        for (int j = col; j < k + static_cast<int>(targets.size()); ++j) a[r][j] /= inv;
        for (int i = 0; i < m; ++i) {
            if (i == r || a[i][col] == 0) continue;
            Rational f = a[i][col];
            for (int j = col; j < k + static_cast<int>(targets.size()); ++j) a[i][j] -= f * a[r][j];
        }
        pivot_row[col] = r;
        ++r;
    }
    for (std::size_t t = 0; t < targets.size(); ++t) {
        bool in_span = true;
        for (int i = r; i < m; ++i)
            if (a[i][k + t] != 0) in_span = false;
        if (!in_span) continue;
        std::vector<Rational> lambda(k, 0);
        for (int col = 0; col < k; ++col) lambda[col] = a[pivot_row[col]][k + t];
        out[t] = std::move(lambda);
    }
    return out;
}

} // namespace mixdae::linalg
