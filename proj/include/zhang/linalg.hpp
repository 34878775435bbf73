#pragma once
// Dense exact linear algebra on tiny matrices (rows are Vec).

#include "rational.hpp"

#include <utility>
#include <vector>

namespace zhang::linalg {

using Mat = std::vector<Vec>;

struct Echelon {
    Mat rows;                 // reduced row echelon form, zero rows dropped
    std::vector<int> pivots;  // pivot column of each row
};

inline Echelon rref(Mat m) {
    Echelon e;
    if (m.empty()) return e;
    int ncols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < ncols && r < static_cast<int>(m.size()); ++c) {
        int piv = -1;
        for (int i = r; i < static_cast<int>(m.size()); ++i)
            if (m[i][c] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        Q inv = Q(1) / m[r][c];
        for (int j = c; j < ncols; ++j) m[r][j] *= inv;
        for (int i = 0; i < static_cast<int>(m.size()); ++i) {
            if (i == r || m[i][c] == 0) continue;
            Q f = m[i][c];
            for (int j = c; j < ncols; ++j) m[i][j] -= f * m[r][j];
        }
        e.pivots.push_back(c);
        ++r;
    }
    m.resize(r);
    e.rows = std::move(m);
    return e;
}

inline int rank(const Mat& m) {
    if (m.empty()) return 0;
    // plain elimination without back-substitution is enough for the rank
    Mat a = m;
    int ncols = static_cast<int>(a[0].size());
    int r = 0;
    for (int c = 0; c < ncols && r < static_cast<int>(a.size()); ++c) {
        int piv = -1;
        for (int i = r; i < static_cast<int>(a.size()); ++i)
            if (a[i][c] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(a[r], a[piv]);
        for (int i = r + 1; i < static_cast<int>(a.size()); ++i) {
            if (a[i][c] == 0) continue;
            Q f = a[i][c] / a[r][c];
            for (int j = c; j < ncols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

// basis of {w : m w = 0}
inline Mat nullspace(const Mat& m, int ncols) {
    Echelon e = rref(m);
    std::vector<bool> is_piv(ncols, false);
    for (int p : e.pivots) is_piv[p] = true;
    Mat basis;
    for (int f = 0; f < ncols; ++f) {
        if (is_piv[f]) continue;
        Vec w(ncols, Q(0));
        w[f] = 1;
        for (std::size_t r = 0; r < e.rows.size(); ++r) w[e.pivots[r]] = -e.rows[r][f];
        basis.push_back(primitive(w));
    }
    return basis;
}

inline Q det(Mat a) {
    int n = static_cast<int>(a.size());
    Q d = 1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (a[i][c] != 0) { piv = i; break; }
        if (piv < 0) return 0;
        if (piv != c) { std::swap(a[c], a[piv]); d = -d; }
        d *= a[c][c];
        for (int i = c + 1; i < n; ++i) {
            if (a[i][c] == 0) continue;
            Q f = a[i][c] / a[c][c];
            for (int j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return d;
}

inline std::optional<Mat> inverse(const Mat& a) {
    int n = static_cast<int>(a.size());
    Mat aug(n, Vec(2 * n, Q(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n + i] = 1;
    }
    Echelon e = rref(aug);
    if (static_cast<int>(e.rows.size()) < n || e.pivots[n - 1] != n - 1) return std::nullopt;
    Mat inv(n, Vec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv[i][j] = e.rows[i][n + j];
    return inv;
}

inline Vec mul(const Mat& a, const Vec& x) {
    Vec r(a.size(), Q(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = dot(a[i], x);
    return r;
}

inline Mat transpose(const Mat& a) {
    if (a.empty()) return {};
    Mat t(a[0].size(), Vec(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

// rank of the difference vectors p_i - p_0
inline int affine_rank(const std::vector<Vec>& pts) {
    if (pts.size() <= 1) return 0;
    Mat d;
    for (std::size_t i = 1; i < pts.size(); ++i) d.push_back(sub(pts[i], pts[0]));
    return rank(d);
}

}  // namespace zhang::linalg
