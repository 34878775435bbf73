#pragma once
// Vertex enumeration for bounded H-polyhedra by the double description method
// on the homogenized cone {(x,s) : a.x - b s <= 0, s >= 0}.

#include "linalg.hpp"
#include "types.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <vector>

namespace zhang::dd {

struct Row {
    Vec a;
    Q b;
};

namespace detail {

struct Ray {
    Vec z;
    boost::dynamic_bitset<> zero;
};

inline void normalize(Vec& z) {
    Q f = primitive_factor(z);
    if (f != 1)
        for (auto& x : z) x *= f;
}

}  // namespace detail

// Returns the vertices of {x : a_i.x <= b_i}; empty vector when infeasible.
// Throws Unbounded when the system has a nonzero recession direction.
inline std::vector<Vec> vertices(int d, const std::vector<Row>& rows_in) {
    using detail::Ray;
    const int D = d + 1;
    std::vector<Vec> A;
    A.reserve(rows_in.size() + 1);
    {
        Vec srow(D, Q(0));
        srow[d] = -1;
        A.push_back(srow);
    }
    for (const auto& r : rows_in) {
        Vec row(D);
        for (int j = 0; j < d; ++j) row[j] = r.a[j];
        row[d] = -r.b;
        A.push_back(std::move(row));
    }
    const int m = static_cast<int>(A.size());

    // greedy choice of D independent rows
    std::vector<int> init;
    {
        linalg::Mat basis;
        for (int i = 0; i < m && static_cast<int>(init.size()) < D; ++i) {
            basis.push_back(A[i]);
            if (linalg::rank(basis) == static_cast<int>(basis.size())) init.push_back(i);
            else basis.pop_back();
        }
    }
    if (static_cast<int>(init.size()) < D) throw Error(Errc::Unbounded, "halfspace system has a lineality direction");

    linalg::Mat AI;
    for (int i : init) AI.push_back(A[i]);
    auto inv = linalg::inverse(AI);
    // columns of -inv are the initial rays: AI r_k = -e_k
    std::vector<Ray> rays;
    std::vector<bool> processed(m, false);
    for (int i : init) processed[i] = true;
    for (int k = 0; k < D; ++k) {
        Ray r;
        r.z.resize(D);
        for (int j = 0; j < D; ++j) r.z[j] = -(*inv)[j][k];
        detail::normalize(r.z);
        r.zero.resize(m);
        for (int t = 0; t < D; ++t)
            if (t != k) r.zero.set(init[t]);
        rays.push_back(std::move(r));
    }

    for (int h = 0; h < m; ++h) {
        if (processed[h]) continue;
        processed[h] = true;
        const Vec& row = A[h];
        std::vector<Q> val(rays.size());
        std::vector<int> pos, neg, zer;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            val[i] = dot(row, rays[i].z);
            if (val[i] > 0) pos.push_back(static_cast<int>(i));
            else if (val[i] < 0) neg.push_back(static_cast<int>(i));
            else zer.push_back(static_cast<int>(i));
        }
        if (pos.empty()) {
            for (int i : zer) rays[i].zero.set(h);
            continue;
        }
        std::vector<Ray> next;
        for (int i : neg) next.push_back(rays[i]);
        for (int i : zer) {
            next.push_back(rays[i]);
            next.back().zero.set(h);
        }
        for (int p : pos) {
            for (int q : neg) {
                boost::dynamic_bitset<> common = rays[p].zero & rays[q].zero;
                if (static_cast<int>(common.count()) < D - 2) continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (static_cast<int>(r) == p || static_cast<int>(r) == q) continue;
                    if (common.is_subset_of(rays[r].zero)) adjacent = false;
                }
                if (!adjacent) continue;
                Ray nr;
                nr.z.resize(D);
                for (int j = 0; j < D; ++j) nr.z[j] = val[p] * rays[q].z[j] - val[q] * rays[p].z[j];
                detail::normalize(nr.z);
                nr.zero = common;
                nr.zero.set(h);
                next.push_back(std::move(nr));
            }
        }
        rays = std::move(next);
    }

    std::vector<Vec> out;
    for (const auto& r : rays) {
        if (r.z[d] == 0) {
            if (!is_zero(r.z)) throw Error(Errc::Unbounded, "unbounded polyhedron");
            continue;
        }
        Vec x(d);
        for (int j = 0; j < d; ++j) x[j] = r.z[j] / r.z[d];
        out.push_back(std::move(x));
    }
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace zhang::dd
