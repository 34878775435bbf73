#pragma once
// Exact two-phase tableau simplex with Bland's rule.
// maximize c.x subject to A x <= b, x free.

#include "rational.hpp"

#include <vector>

namespace zhang::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status = Status::Infeasible;
    Q value;
    Vec x;
};

namespace detail {

struct Tableau {
    std::vector<Vec> t;     // m rows, N+1 columns (last = rhs)
    Vec obj;                // N+1 entries, obj[N] = current objective value
    std::vector<int> basis;
    std::vector<bool> allowed;

    int N() const { return static_cast<int>(obj.size()) - 1; }

    void pivot(int r, int c) {
        const int cols = N() + 1;
        Q inv = Q(1) / t[r][c];
        for (int j = 0; j < cols; ++j) t[r][j] *= inv;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (static_cast<int>(i) == r || t[i][c] == 0) continue;
            Q f = t[i][c];
            for (int j = 0; j < cols; ++j)
                if (t[r][j] != 0) t[i][j] -= f * t[r][j];
        }
        if (obj[c] != 0) {
            Q f = obj[c];
            for (int j = 0; j < cols; ++j)
                if (t[r][j] != 0) obj[j] -= f * t[r][j];
        }
        basis[r] = c;
    }

    // returns false when unbounded
    bool run() {
        const int n = N();
        for (;;) {
            int enter = -1;
            for (int j = 0; j < n; ++j)
                if (allowed[j] && obj[j] < 0) { enter = j; break; }
            if (enter < 0) return true;
            int leave = -1;
            Q best;
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (t[i][enter] <= 0) continue;
                Q ratio = t[i][n] / t[i][enter];
                if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = static_cast<int>(i);
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace detail

inline Result maximize(const Vec& c, const std::vector<Vec>& A, const Vec& b) {
    const int n = static_cast<int>(c.size());
    const int m = static_cast<int>(A.size());
    int nart = 0;
    for (const auto& bi : b)
        if (bi < 0) ++nart;
    // columns: x+ [0,n), x- [n,2n), slack [2n,2n+m), artificial [2n+m, ...)
    const int N = 2 * n + m + nart;
    detail::Tableau T;
    T.t.assign(m, Vec(N + 1, Q(0)));
    T.basis.assign(m, -1);
    T.allowed.assign(N, true);
    int a = 0;
    for (int i = 0; i < m; ++i) {
        const bool flip = b[i] < 0;
        Q sgn = flip ? Q(-1) : Q(1);
        for (int j = 0; j < n; ++j) {
            T.t[i][j] = sgn * A[i][j];
            T.t[i][n + j] = -sgn * A[i][j];
        }
        T.t[i][2 * n + i] = sgn;
        T.t[i][N] = sgn * b[i];
        if (flip) {
            int col = 2 * n + m + a++;
            T.t[i][col] = 1;
            T.basis[i] = col;
        } else {
            T.basis[i] = 2 * n + i;
        }
    }
    Result res;
    if (nart > 0) {
        T.obj.assign(N + 1, Q(0));
        for (int j = 2 * n + m; j < N; ++j) T.obj[j] = 1;
        for (int i = 0; i < m; ++i)
            if (T.basis[i] >= 2 * n + m)
                for (int j = 0; j <= N; ++j) T.obj[j] -= T.t[i][j];
        T.run();
        if (T.obj[N] != 0) {
            res.status = Status::Infeasible;
            return res;
        }
        // drive remaining artificials out of the basis
        for (int i = 0; i < static_cast<int>(T.t.size()); ++i) {
            if (T.basis[i] < 2 * n + m) continue;
            int col = -1;
            for (int j = 0; j < 2 * n + m; ++j)
                if (T.t[i][j] != 0) { col = j; break; }
            if (col >= 0) T.pivot(i, col);
            else {
                T.t.erase(T.t.begin() + i);
                T.basis.erase(T.basis.begin() + i);
                --i;
            }
        }
        for (int j = 2 * n + m; j < N; ++j) T.allowed[j] = false;
    }
    T.obj.assign(N + 1, Q(0));
    for (int j = 0; j < n; ++j) {
        T.obj[j] = -c[j];
        T.obj[n + j] = c[j];
    }
    for (int i = 0; i < static_cast<int>(T.t.size()); ++i) {
        int bcol = T.basis[i];
        if (T.obj[bcol] == 0) continue;
        Q f = T.obj[bcol];
        for (int j = 0; j <= N; ++j) T.obj[j] -= f * T.t[i][j];
    }
    if (!T.run()) {
        res.status = Status::Unbounded;
        return res;
    }
    res.status = Status::Optimal;
    res.value = T.obj[N];
    res.x.assign(n, Q(0));
    for (int i = 0; i < static_cast<int>(T.t.size()); ++i) {
        int bcol = T.basis[i];
        if (bcol < n) res.x[bcol] += T.t[i][N];
        else if (bcol < 2 * n) res.x[bcol - n] -= T.t[i][N];
    }
    return res;
}

}  // namespace zhang::lp
