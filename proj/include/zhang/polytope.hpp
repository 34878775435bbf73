#pragma once
// Rational convex polytopes with both representations kept in sync.

#include "dd.hpp"
#include "linalg.hpp"
#include "lp.hpp"
#include "types.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace zhang {

struct Halfspace {
    Vec a;  // primitive integer normal
    Q b;    // a.x <= b
};

struct Polytope {
    int dim = 0;
    std::vector<Halfspace> halfspaces;
    std::vector<Vec> vertices;  // sorted lexicographically
    int affine_dim = -1;
    // incidence[i] has bit j set when vertex j is tight on halfspace i
    std::vector<boost::dynamic_bitset<>> incidence;

    bool full() const { return affine_dim == dim; }
};

namespace detail {

inline Halfspace canonical(Vec a, Q b) {
    Q f = primitive_factor(a);
    for (auto& x : a) x *= f;
    return {std::move(a), b * f};
}

inline bool hs_less(const Halfspace& x, const Halfspace& y) {
    if (x.a != y.a) return lex_less(x.a, y.a);
    return x.b < y.b;
}

inline void finalize(Polytope& P) {
    std::sort(P.halfspaces.begin(), P.halfspaces.end(), hs_less);
    P.incidence.clear();
    for (const auto& h : P.halfspaces) {
        boost::dynamic_bitset<> bits(P.vertices.size());
        for (std::size_t j = 0; j < P.vertices.size(); ++j)
            if (dot(h.a, P.vertices[j]) == h.b) bits.set(j);
        P.incidence.push_back(std::move(bits));
    }
}

// Full-dimensional hull of points in R^d via the polar around the centroid.
inline void full_hull(const std::vector<Vec>& pts, int d, std::vector<Halfspace>& hs, std::vector<Vec>& verts) {
    Vec c(d, Q(0));
    for (const auto& p : pts) c = add(c, p);
    c = scale(c, Q(1) / Q(static_cast<long long>(pts.size())));
    std::vector<dd::Row> rows;
    rows.reserve(pts.size());
    for (const auto& p : pts) rows.push_back({sub(p, c), Q(1)});
    auto polar = dd::vertices(d, rows);
    for (const auto& y : polar) hs.push_back(canonical(y, Q(1) + dot(y, c)));
    for (const auto& p : pts) {
        linalg::Mat tight;
        for (const auto& h : hs)
            if (dot(h.a, p) == h.b) tight.push_back(h.a);
        if (static_cast<int>(tight.size()) >= d && linalg::rank(tight) == d) verts.push_back(p);
    }
}

}  // namespace detail

inline Polytope make_polytope(std::vector<Vec> pts, int dim) {
    if (pts.empty()) throw Error(Errc::DegenerateBody, "no points");
    for (const auto& p : pts)
        if (static_cast<int>(p.size()) != dim) throw Error(Errc::DimensionMismatch, "point length differs from dim");
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    Polytope P;
    P.dim = dim;
    linalg::Mat diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
    const int r = diffs.empty() ? 0 : linalg::rank(diffs);
    P.affine_dim = r;

    if (r == dim) {
        detail::full_hull(pts, dim, P.halfspaces, P.vertices);
    } else {
        // equalities a.x = a.p0 for a in the orthogonal complement of the differences
        linalg::Mat normals = diffs.empty() ? linalg::Mat{} : linalg::nullspace(diffs, dim);
        if (diffs.empty())
            for (int i = 0; i < dim; ++i) {
                Vec e(dim, Q(0));
                e[i] = 1;
                normals.push_back(e);
            }
        for (const auto& a : normals) {
            Q b = dot(a, pts[0]);
            P.halfspaces.push_back(detail::canonical(a, b));
            P.halfspaces.push_back(detail::canonical(scale(a, Q(-1)), -b));
        }
        if (r == 0) {
            P.vertices = {pts[0]};
        } else {
            // the affine hull is a graph over the pivot coordinates
            auto piv = linalg::rref(diffs).pivots;
            std::vector<Vec> local;
            for (const auto& p : pts) {
                Vec q;
                for (int c : piv) q.push_back(p[c]);
                local.push_back(q);
            }
            std::vector<Halfspace> lhs;
            std::vector<Vec> lverts;
            detail::full_hull(local, r, lhs, lverts);
            for (const auto& h : lhs) {
                Vec a(dim, Q(0));
                for (int k = 0; k < r; ++k) a[piv[k]] = h.a[k];
                P.halfspaces.push_back({a, h.b});
            }
            std::set<Vec, decltype(&lex_less)> keep(lverts.begin(), lverts.end(), &lex_less);
            for (std::size_t i = 0; i < pts.size(); ++i)
                if (keep.count(local[i])) P.vertices.push_back(pts[i]);
        }
    }
    std::sort(P.vertices.begin(), P.vertices.end(), lex_less);
    detail::finalize(P);
    return P;
}

// Intersection of halfspaces; nullopt when empty.
inline std::optional<Polytope> from_halfspaces(int dim, const std::vector<Halfspace>& raw) {
    std::map<Vec, Q, decltype(&lex_less)> best(&lex_less);
    for (const auto& h : raw) {
        if (static_cast<int>(h.a.size()) != dim) throw Error(Errc::DimensionMismatch, "halfspace length differs from dim");
        if (is_zero(h.a)) {
            if (h.b < 0) return std::nullopt;
            continue;
        }
        Halfspace c = detail::canonical(h.a, h.b);
        auto it = best.find(c.a);
        if (it == best.end()) best.emplace(c.a, c.b);
        else if (c.b < it->second) it->second = c.b;
    }
    std::vector<dd::Row> rows;
    for (const auto& [a, b] : best) rows.push_back({a, b});
    auto verts = dd::vertices(dim, rows);
    if (verts.empty()) return std::nullopt;
    if (linalg::affine_rank(verts) < dim) return make_polytope(verts, dim);

    Polytope P;
    P.dim = dim;
    P.affine_dim = dim;
    P.vertices = verts;
    for (const auto& [a, b] : best) {
        std::vector<Vec> tight;
        for (const auto& v : verts)
            if (dot(a, v) == b) tight.push_back(v);
        if (static_cast<int>(tight.size()) >= dim && linalg::affine_rank(tight) == dim - 1) P.halfspaces.push_back({a, b});
    }
    detail::finalize(P);
    return P;
}

inline bool contains(const Polytope& P, const Vec& x) {
    for (const auto& h : P.halfspaces)
        if (dot(h.a, x) > h.b) return false;
    return true;
}

// strict interior test (only meaningful for full-dimensional P)
inline bool contains_interior(const Polytope& P, const Vec& x) {
    for (const auto& h : P.halfspaces)
        if (dot(h.a, x) >= h.b) return false;
    return true;
}

namespace detail {

// Pulling triangulation of the face spanned by `face` (vertex indices) of dimension k.
inline void triangulate(const Polytope& P, const boost::dynamic_bitset<>& face, int k,
                        std::vector<std::vector<std::size_t>>& out, std::vector<std::size_t>& stack) {
    auto apex = face.find_first();
    if (k == 0) {
        stack.push_back(apex);
        out.push_back(stack);
        stack.pop_back();
        return;
    }
    std::vector<boost::dynamic_bitset<>> subs;
    for (const auto& inc : P.incidence) {
        boost::dynamic_bitset<> s = face & inc;
        if (s.test(apex) || s.count() < static_cast<std::size_t>(k)) continue;
        if (std::find(subs.begin(), subs.end(), s) != subs.end()) continue;
        std::vector<Vec> pts;
        for (auto j = s.find_first(); j != boost::dynamic_bitset<>::npos; j = s.find_next(j)) pts.push_back(P.vertices[j]);
        if (linalg::affine_rank(pts) != k - 1) continue;
        subs.push_back(s);
    }
    stack.push_back(apex);
    for (const auto& s : subs) triangulate(P, s, k - 1, out, stack);
    stack.pop_back();
}

}  // namespace detail

inline std::vector<std::vector<std::size_t>> triangulation(const Polytope& P) {
    std::vector<std::vector<std::size_t>> out;
    if (!P.full()) return out;
    boost::dynamic_bitset<> all(P.vertices.size());
    all.set();
    std::vector<std::size_t> stack;
    detail::triangulate(P, all, P.dim, out, stack);
    return out;
}

inline Q factorial(int n) {
    Q f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Exact full-dimensional volume; 0 for lower-dimensional polytopes.
inline Q volume_q(const Polytope& P) {
    if (!P.full()) return 0;
    if (P.dim == 1) return P.vertices.back()[0] - P.vertices.front()[0];
    Q total = 0;
    for (const auto& s : triangulation(P)) {
        linalg::Mat m;
        for (std::size_t i = 1; i < s.size(); ++i) m.push_back(sub(P.vertices[s[i]], P.vertices[s[0]]));
        total += qabs(linalg::det(m));
    }
    return total / factorial(P.dim);
}

inline MeasureValue volume(const Polytope& P) { return MeasureValue::of(volume_q(P)); }

inline std::optional<Polytope> intersect(const Polytope& P, const Polytope& Q2) {
    if (P.dim != Q2.dim) throw Error(Errc::DimensionMismatch, "intersect");
    std::vector<Halfspace> hs = P.halfspaces;
    hs.insert(hs.end(), Q2.halfspaces.begin(), Q2.halfspaces.end());
    return from_halfspaces(P.dim, hs);
}

inline Polytope translate(const Polytope& P, const Vec& t) {
    Polytope R = P;
    for (auto& v : R.vertices) v = add(v, t);
    for (auto& h : R.halfspaces) h.b += dot(h.a, t);
    return R;  // translation keeps lex order and incidence
}

inline Polytope minkowski_sum(const Polytope& P, const Polytope& Q2) {
    if (P.dim != Q2.dim) throw Error(Errc::DimensionMismatch, "minkowski_sum");
    std::vector<Vec> pts;
    pts.reserve(P.vertices.size() * Q2.vertices.size());
    for (const auto& v : P.vertices)
        for (const auto& w : Q2.vertices) pts.push_back(add(v, w));
    return make_polytope(std::move(pts), P.dim);
}

// Image under x -> A x + b. Singular maps throw unless allowed.
inline Polytope transform(const Polytope& P, const linalg::Mat& A, const Vec& b, bool allow_singular = false) {
    if (static_cast<int>(A.size()) != P.dim || static_cast<int>(b.size()) != P.dim)
        throw Error(Errc::DimensionMismatch, "transform");
    auto inv = linalg::inverse(A);
    if (!inv) {
        if (!allow_singular) throw Error(Errc::SingularMap, "matrix is not invertible");
        std::vector<Vec> pts;
        for (const auto& v : P.vertices) pts.push_back(add(linalg::mul(A, v), b));
        return make_polytope(std::move(pts), P.dim);
    }
    Polytope R;
    R.dim = P.dim;
    R.affine_dim = P.affine_dim;
    for (const auto& v : P.vertices) R.vertices.push_back(add(linalg::mul(A, v), b));
    std::sort(R.vertices.begin(), R.vertices.end(), lex_less);
    auto invT = linalg::transpose(*inv);
    for (const auto& h : P.halfspaces) {
        Vec a = linalg::mul(invT, h.a);
        R.halfspaces.push_back(detail::canonical(a, h.b + dot(a, b)));
    }
    detail::finalize(R);
    return R;
}

inline Polytope scale_body(const Polytope& P, const Q& lambda) {
    linalg::Mat A(P.dim, Vec(P.dim, Q(0)));
    for (int i = 0; i < P.dim; ++i) A[i][i] = lambda;
    return transform(P, A, Vec(P.dim, Q(0)));
}

inline Polytope negate(const Polytope& P) { return scale_body(P, Q(-1)); }

inline Polytope difference_body(const Polytope& P) { return minkowski_sum(P, negate(P)); }

inline Polytope project_drop_last(const Polytope& P) {
    if (P.dim < 2) throw Error(Errc::DimensionMismatch, "projection needs dim >= 2");
    std::vector<Vec> pts;
    for (const auto& v : P.vertices) pts.emplace_back(v.begin(), v.end() - 1);
    return make_polytope(std::move(pts), P.dim - 1);
}

// {t : (y,t) in P}
inline std::optional<Interval> vertical_section(const Polytope& P, const Vec& y) {
    const int n = P.dim;
    if (static_cast<int>(y.size()) != n - 1) throw Error(Errc::DimensionMismatch, "section point length");
    std::optional<Q> lo, hi;
    for (const auto& h : P.halfspaces) {
        Q rest = h.b;
        for (int j = 0; j < n - 1; ++j) rest -= h.a[j] * y[j];
        const Q& an = h.a[n - 1];
        if (an == 0) {
            if (rest < 0) return std::nullopt;
        } else if (an > 0) {
            Q t = rest / an;
            if (!hi || t < *hi) hi = t;
        } else {
            Q t = rest / an;
            if (!lo || t > *lo) lo = t;
        }
    }
    if (!lo || !hi) throw Error(Errc::Unbounded, "vertical line not bounded");
    if (*hi < *lo) return std::nullopt;
    return Interval{*lo, *hi, false, false};
}

// P intersected with {x_n = r}, written in the first n-1 coordinates.
inline std::optional<Polytope> slice_at_height(const Polytope& P, const Q& r) {
    const int n = P.dim;
    if (n < 2) throw Error(Errc::DimensionMismatch, "slice needs dim >= 2");
    std::vector<Halfspace> hs;
    for (const auto& h : P.halfspaces) hs.push_back({Vec(h.a.begin(), h.a.end() - 1), h.b - h.a[n - 1] * r});
    return from_halfspaces(n - 1, hs);
}

// Facet data for Cauchy's formula: for each facet normal a (integer), X_F = vol_{n-1}(F)/|a|.
struct FacetMeasure {
    Vec a;
    Q x;
};

inline std::vector<FacetMeasure> facet_measures(const Polytope& P) {
    if (!P.full()) throw Error(Errc::DegenerateBody, "facet measures need a full-dimensional polytope");
    const int n = P.dim;
    std::vector<FacetMeasure> out;
    for (std::size_t i = 0; i < P.halfspaces.size(); ++i) {
        const auto& h = P.halfspaces[i];
        int j = 0;
        for (int k = 0; k < n; ++k)
            if (qabs(h.a[k]) > qabs(h.a[j])) j = k;
        Q proj;
        if (n == 1) {
            proj = 1;
        } else {
            std::vector<Vec> pts;
            for (auto v = P.incidence[i].find_first(); v != boost::dynamic_bitset<>::npos; v = P.incidence[i].find_next(v)) {
                Vec q;
                for (int k = 0; k < n; ++k)
                    if (k != j) q.push_back(P.vertices[v][k]);
                pts.push_back(q);
            }
            proj = volume_q(make_polytope(pts, n - 1));
        }
        out.push_back({h.a, proj / qabs(h.a[j])});
    }
    return out;
}

// (1/2) sum |a.u| X_F for an arbitrary (unnormalized) rational u: equals |u| vol_{n-1}(P_{u-perp}).
inline Q cauchy_sum(const std::vector<FacetMeasure>& fm, const Vec& u) {
    Q s = 0;
    for (const auto& f : fm) s += qabs(dot(f.a, u)) * f.x;
    return s / 2;
}

inline double cauchy_sum(const std::vector<FacetMeasure>& fm, const std::vector<double>& u) {
    double s = 0;
    for (const auto& f : fm) {
        double d = 0;
        for (std::size_t k = 0; k < u.size(); ++k) d += to_double(f.a[k]) * u[k];
        s += std::abs(d) * to_double(f.x);
    }
    return s / 2;
}

inline MeasureValue projection_volume(const Polytope& P, const Direction& theta) {
    if (theta.dim() != P.dim) throw Error(Errc::DimensionMismatch, "direction length");
    auto fm = facet_measures(P);
    Q s = cauchy_sum(fm, theta.raw);
    if (auto nrm = theta.exact_norm()) return MeasureValue::of(s / *nrm);
    double v = to_double(s) / theta.norm();
    return MeasureValue::approx(v, 4e-16 * v);
}

// Longest vertical chord: lexicographically smallest y among maximizers of |section(y)|.
inline Vec max_section_anchor(const Polytope& P) {
    if (!P.full()) throw Error(Errc::DegenerateBody, "anchor needs a full-dimensional polytope");
    const int n = P.dim;
    const int m = n + 1;  // variables y (n-1), t1, t2
    std::vector<Vec> A;
    Vec b;
    for (const auto& h : P.halfspaces) {
        Vec r1(m, Q(0)), r2(m, Q(0));
        for (int j = 0; j < n - 1; ++j) r1[j] = r2[j] = h.a[j];
        r1[n - 1] = h.a[n - 1];
        r2[n] = h.a[n - 1];
        A.push_back(r1);
        b.push_back(h.b);
        A.push_back(r2);
        b.push_back(h.b);
    }
    Vec c(m, Q(0));
    c[n - 1] = -1;
    c[n] = 1;
    auto best = lp::maximize(c, A, b);
    if (best.status != lp::Status::Optimal) throw Error(Errc::Unbounded, "anchor LP");
    // fix the optimum, then minimize y coordinates in order
    A.push_back(scale(c, Q(-1)));
    b.push_back(-best.value);
    Vec y(n - 1);
    for (int j = 0; j < n - 1; ++j) {
        Vec cj(m, Q(0));
        cj[j] = -1;
        auto r = lp::maximize(cj, A, b);
        y[j] = -r.value;
        Vec e(m, Q(0));
        e[j] = 1;
        A.push_back(e);
        b.push_back(y[j]);
        A.push_back(scale(e, Q(-1)));
        b.push_back(-y[j]);
    }
    return y;
}

inline Polytope box(const Vec& lo, const Vec& hi) {
    const int n = static_cast<int>(lo.size());
    std::vector<Vec> pts;
    for (int mask = 0; mask < (1 << n); ++mask) {
        Vec p(n);
        for (int i = 0; i < n; ++i) p[i] = (mask >> i) & 1 ? hi[i] : lo[i];
        pts.push_back(p);
    }
    return make_polytope(pts, n);
}

inline Polytope standard_simplex(int n, const Q& edge = Q(1)) {
    std::vector<Vec> pts{Vec(n, Q(0))};
    for (int i = 0; i < n; ++i) {
        Vec e(n, Q(0));
        e[i] = edge;
        pts.push_back(e);
    }
    return make_polytope(pts, n);
}

inline Polytope cross_polytope(int n, const Q& radius = Q(1)) {
    std::vector<Vec> pts;
    for (int i = 0; i < n; ++i)
        for (int s : {-1, 1}) {
            Vec e(n, Q(0));
            e[i] = radius * s;
            pts.push_back(e);
        }
    return make_polytope(pts, n);
}

// same point set (both sides have canonical halfspaces and sorted vertices)
inline bool same_set(const Polytope& P, const Polytope& R) {
    return P.dim == R.dim && P.vertices == R.vertices;
}

}  // namespace zhang
