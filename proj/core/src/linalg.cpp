#include "idexp/linalg.hpp"

#include <algorithm>

namespace idexp {

bool is_zero_vec(const Field& k, const Vec& v) {
    for (const auto& x : v)
        if (!k.is_zero(x)) return false;
    return true;
}

std::vector<size_t> rref(const Field& k, Mat& rows) {
    std::vector<size_t> pivots;
    if (rows.empty()) return pivots;
    size_t ncols = rows[0].size();
    size_t rank = 0;
    for (size_t col = 0; col < ncols && rank < rows.size(); ++col) {
        size_t sel = rank;
        while (sel < rows.size() && k.is_zero(rows[sel][col])) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        FieldElement inv = k.inverse(rows[rank][col]);
        for (auto& x : rows[rank]) x = k.mul(x, inv);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || k.is_zero(rows[r][col])) continue;
            FieldElement f = rows[r][col];
            for (size_t c = 0; c < ncols; ++c)
                rows[r][c] = k.sub(rows[r][c], k.mul(f, rows[rank][c]));
        }
        pivots.push_back(col);
        ++rank;
    }
    rows.resize(rank);
    return pivots;
}

Vec reduce_row(const Field& k, const Mat& rows, const std::vector<size_t>& pivots, Vec v) {
    for (size_t r = 0; r < rows.size(); ++r) {
        const FieldElement& f = v[pivots[r]];
        if (k.is_zero(f)) continue;
        FieldElement c = f;
        for (size_t j = 0; j < v.size(); ++j)
            v[j] = k.sub(v[j], k.mul(c, rows[r][j]));
    }
    return v;
}

std::optional<Vec> solve_linear(const Field& k, const Mat& cols, const Vec& target) {
    size_t n = cols.size();
    size_t m = target.size();
    // augmented rows: one equation per coordinate
    Mat aug(m, Vec(n + 1, k.zero()));
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) aug[i][j] = cols[j][i];
        aug[i][n] = target[i];
    }
    std::vector<size_t> pivots = rref(k, aug);
    Vec x(n, k.zero());
    for (size_t r = 0; r < aug.size(); ++r) {
        if (pivots[r] == n) return std::nullopt;  // 0 = nonzero
        x[pivots[r]] = aug[r][n];
    }
    return x;
}

std::optional<Mat> invert_matrix(const Field& k, const Mat& rows) {
    size_t n = rows.size();
    Mat aug(n, Vec(2 * n, k.zero()));
    for (size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw Error("invert_matrix: not square");
        for (size_t j = 0; j < n; ++j) aug[i][j] = rows[i][j];
        aug[i][n + i] = k.one();
    }
    std::vector<size_t> piv = rref(k, aug);
    if (aug.size() != n) return std::nullopt;
    for (size_t i = 0; i < n; ++i)
        if (piv[i] != i) return std::nullopt;
    Mat inv(n, Vec(n, k.zero()));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

Mat kernel_of_columns(const Field& k, const Mat& cols, size_t ncols) {
    // rows of the working matrix: coordinates; do elimination on columns via
    // transposing: treat each column vector as a row, augmented with identity.
    size_t m = cols.empty() ? 0 : cols[0].size();
    Mat work(ncols, Vec(m + ncols, k.zero()));
    for (size_t j = 0; j < ncols; ++j) {
        for (size_t i = 0; i < m; ++i) work[j][i] = cols[j][i];
        work[j][m + j] = k.one();
    }
    rref(k, work);
    Mat ker;
    for (const auto& row : work) {
        bool zero = true;
        for (size_t i = 0; i < m; ++i)
            if (!k.is_zero(row[i])) { zero = false; break; }
        if (!zero) continue;
        Vec coeffs(row.begin() + m, row.end());
        ker.push_back(std::move(coeffs));
    }
    std::vector<size_t> piv = rref(k, ker);
    (void)piv;
    return ker;
}

}  // namespace idexp
