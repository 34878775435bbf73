#pragma once
// Lattice point enumeration, the mixed measure mu, discrete covariogram and
// ray decompositions.

#include "polytope.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace zhang {

struct LatticePointSet {
    int dim = 0;
    std::vector<Vec> points;  // integer vectors, lexicographic
};

// Halfspace system with per-row strictness, used for P + C_k.
struct StrictSystem {
    int dim = 0;
    std::vector<Halfspace> hs;
    std::vector<bool> strict;
    Vec lo, hi;  // bounding box of the closure
};

inline Polytope cube_k(int n, int k) {
    Vec lo(n, Q(0)), hi(n, Q(0));
    for (int i = 0; i < k; ++i) {
        lo[i] = -1;
        hi[i] = 1;
    }
    return make_polytope([&] {
        std::vector<Vec> pts;
        for (int mask = 0; mask < (1 << k); ++mask) {
            Vec p(n, Q(0));
            for (int i = 0; i < k; ++i) p[i] = (mask >> i) & 1 ? hi[i] : lo[i];
            pts.push_back(p);
        }
        return pts;
    }(), n);
}

// P + C_k with C_k = (-1,1)^k x {0}: the closed sum with every facet strict whose
// normal touches the first k coordinates.
inline StrictSystem open_cube_system(const Polytope& P, int k) {
    StrictSystem S;
    S.dim = P.dim;
    const Polytope& base = P;
    Polytope Qc = k > 0 ? minkowski_sum(base, cube_k(P.dim, k)) : base;
    S.hs = Qc.halfspaces;
    for (const auto& h : S.hs) {
        bool s = false;
        for (int i = 0; i < k; ++i)
            if (h.a[i] != 0) s = true;
        S.strict.push_back(s);
    }
    S.lo = S.hi = Qc.vertices.front();
    for (const auto& v : Qc.vertices)
        for (int i = 0; i < P.dim; ++i) {
            if (v[i] < S.lo[i]) S.lo[i] = v[i];
            if (v[i] > S.hi[i]) S.hi[i] = v[i];
        }
    return S;
}

inline bool contains(const StrictSystem& S, const Vec& x) {
    for (std::size_t i = 0; i < S.hs.size(); ++i) {
        Q v = dot(S.hs[i].a, x);
        if (S.strict[i] ? v >= S.hs[i].b : v > S.hs[i].b) return false;
    }
    return true;
}

// {t : (y,t) in S} with openness flags.
inline std::optional<Interval> column(const StrictSystem& S, const Vec& y) {
    const int n = S.dim;
    std::optional<Q> lo, hi;
    bool lo_open = false, hi_open = false;
    for (std::size_t i = 0; i < S.hs.size(); ++i) {
        const auto& h = S.hs[i];
        Q rest = h.b;
        for (int j = 0; j < n - 1; ++j) rest -= h.a[j] * y[j];
        const Q& an = h.a[n - 1];
        if (an == 0) {
            if (rest < 0 || (S.strict[i] && rest == 0)) return std::nullopt;
        } else if (an > 0) {
            Q t = rest / an;
            if (!hi || t < *hi) {
                hi = t;
                hi_open = S.strict[i];
            } else if (t == *hi && S.strict[i]) hi_open = true;
        } else {
            Q t = rest / an;
            if (!lo || t > *lo) {
                lo = t;
                lo_open = S.strict[i];
            } else if (t == *lo && S.strict[i]) lo_open = true;
        }
    }
    if (!lo || !hi) throw Error(Errc::Unbounded, "column not bounded");
    Interval I{*lo, *hi, lo_open, hi_open};
    if (I.empty()) return std::nullopt;
    return I;
}

inline Z first_integer(const Interval& I) { return I.lo_open ? Z(floor_z(I.lo) + 1) : ceil_z(I.lo); }
inline Z last_integer(const Interval& I) { return I.hi_open ? Z(ceil_z(I.hi) - 1) : floor_z(I.hi); }

inline long long integers_in(const Interval& I) {
    if (I.empty()) return 0;
    Z c = last_integer(I) - first_integer(I) + 1;
    return c > 0 ? c.convert_to<long long>() : 0;
}

// Calls f(y) for every integer y in the box [lo, hi] of the first d coordinates, lexicographically.
inline void for_each_integer_point(const Vec& lo, const Vec& hi, int d, const std::function<void(const Vec&)>& f) {
    if (d == 0) {
        f(Vec{});
        return;
    }
    std::vector<long long> a(d), b(d), cur(d);
    for (int i = 0; i < d; ++i) {
        a[i] = ceil_z(lo[i]).convert_to<long long>();
        b[i] = floor_z(hi[i]).convert_to<long long>();
        if (a[i] > b[i]) return;
    }
    cur = a;
    Vec y(d);
    for (;;) {
        for (int i = 0; i < d; ++i) y[i] = cur[i];
        f(y);
        int i = d - 1;
        while (i >= 0 && cur[i] == b[i]) {
            cur[i] = a[i];
            --i;
        }
        if (i < 0) return;
        ++cur[i];
    }
}

// Calls f(y, I) for every integer column y with a nonempty column interval.
inline void for_each_column(const StrictSystem& S, const std::function<void(const Vec&, const Interval&)>& f) {
    for_each_integer_point(S.lo, S.hi, S.dim - 1, [&](const Vec& y) {
        if (auto I = column(S, y)) f(y, *I);
    });
}

inline LatticePointSet lattice_points(const Polytope& P, int open_cube_k = 0) {
    LatticePointSet L;
    L.dim = P.dim;
    StrictSystem S = open_cube_system(P, open_cube_k);
    for_each_column(S, [&](const Vec& y, const Interval& I) {
        Z a = first_integer(I), b = last_integer(I);
        for (Z t = a; t <= b; ++t) {
            Vec x = y;
            x.push_back(Q(t));
            L.points.push_back(std::move(x));
        }
    });
    return L;
}

inline long long count_lattice(const Polytope& P, int open_cube_k = 0) {
    long long c = 0;
    StrictSystem S = open_cube_system(P, open_cube_k);
    for_each_column(S, [&](const Vec&, const Interval& I) { c += integers_in(I); });
    return c;
}

inline long long count_lattice(const std::optional<Polytope>& P, int open_cube_k = 0) {
    return P ? count_lattice(*P, open_cube_k) : 0;
}

// Sum over integer y of the length of the vertical section at y.
inline Q mu_q(const Polytope& P) {
    Q total = 0;
    StrictSystem S = open_cube_system(P, 0);
    for_each_column(S, [&](const Vec&, const Interval& I) { total += I.length(); });
    return total;
}

inline MeasureValue mu_measure(const Polytope& P) { return MeasureValue::of(mu_q(P)); }

inline long long discrete_covariogram(const Polytope& P, const Vec& x) {
    return count_lattice(intersect(P, translate(P, x)), 0);
}

// Ray parameters are stored in units of the raw direction; multiply by |raw| for
// unit-speed parameters.
struct RayEntry {
    Vec point;
    Interval r;
};

struct RayDecomposition {
    Direction direction;
    bool open_cube = false;
    std::vector<RayEntry> entries;
};

inline bool origin_in(const Polytope& P) { return contains(P, Vec(P.dim, Q(0))); }

inline RayDecomposition ray_decomposition(const Polytope& P, const Direction& theta, bool open_cube) {
    if (theta.dim() != P.dim) throw Error(Errc::DimensionMismatch, "direction length");
    if (!origin_in(P)) throw Error(Errc::OriginMissing, "ray decomposition needs 0 in K");
    RayDecomposition D;
    D.direction = theta;
    D.open_cube = open_cube;
    StrictSystem S = open_cube_system(P, open_cube ? P.dim : 0);
    for_each_column(S, [&](const Vec& y, const Interval& I) {
        Z a = first_integer(I), b = last_integer(I);
        for (Z t = a; t <= b; ++t) {
            Vec x = y;
            x.push_back(Q(t));
            std::optional<Q> hi;
            bool open = false;
            for (std::size_t i = 0; i < S.hs.size(); ++i) {
                Q at = dot(S.hs[i].a, theta.raw);
                if (at >= 0) continue;
                Q r = (S.hs[i].b - dot(S.hs[i].a, x)) / (-at);
                if (!hi || r < *hi) {
                    hi = r;
                    open = S.strict[i];
                } else if (r == *hi && S.strict[i]) open = true;
            }
            if (!hi) throw Error(Errc::Unbounded, "ray leaves no facet");
            Interval R{Q(0), *hi, false, open};
            if (!R.empty()) D.entries.push_back({std::move(x), R});
        }
    });
    return D;
}

// sum_y (b_y^p - a_y^p) in unit-speed parameters
inline MeasureValue discrete_ray_moment(const RayDecomposition& D, double p) {
    if (!(p > 0)) throw Error(Errc::ExponentOutOfRange, "discrete moment needs p > 0");
    const bool integral = std::floor(p) == p && p < 64;
    if (integral) {
        unsigned ip = static_cast<unsigned>(p);
        Q s = 0;
        for (const auto& e : D.entries) s += qpow(e.r.hi, ip) - qpow(e.r.lo, ip);
        Q n2 = D.direction.norm2();
        if (auto nrm = D.direction.exact_norm()) return MeasureValue::of(s * qpow(*nrm, ip));
        if (ip % 2 == 0) return MeasureValue::of(s * qpow(n2, ip / 2));
        double v = to_double(s) * std::pow(D.direction.norm(), p);
        return MeasureValue::approx(v, 1e-14 * std::abs(v));
    }
    double nrm = D.direction.norm(), s = 0;
    for (const auto& e : D.entries) s += std::pow(to_double(e.r.hi) * nrm, p) - std::pow(to_double(e.r.lo) * nrm, p);
    return MeasureValue::approx(s, 1e-13 * std::abs(s) + 1e-300, true);
}

// Evaluates b_y(theta) for many floating directions: precomputed slacks per lattice point.
class RayField {
public:
    RayField(const Polytope& P, bool open_cube) {
        if (!origin_in(P)) throw Error(Errc::OriginMissing, "ray field needs 0 in K");
        StrictSystem S = open_cube_system(P, open_cube ? P.dim : 0);
        n_ = P.dim;
        for (const auto& h : S.hs) {
            std::vector<double> a;
            for (const auto& x : h.a) a.push_back(to_double(x));
            normals_.push_back(a);
        }
        for_each_column(S, [&](const Vec& y, const Interval& I) {
            Z a = first_integer(I), b = last_integer(I);
            for (Z t = a; t <= b; ++t) {
                Vec x = y;
                x.push_back(Q(t));
                std::vector<double> sl;
                for (const auto& h : S.hs) sl.push_back(to_double(h.b - dot(h.a, x)));
                slacks_.push_back(std::move(sl));
                points_.push_back(std::move(x));
            }
        });
    }

    std::size_t size() const { return points_.size(); }
    const std::vector<Vec>& points() const { return points_; }

    // b_y for unit direction u, one entry per lattice point
    std::vector<double> reach(const std::vector<double>& u) const {
        std::vector<double> at(normals_.size());
        for (std::size_t i = 0; i < normals_.size(); ++i) {
            double s = 0;
            for (int k = 0; k < n_; ++k) s += normals_[i][k] * u[k];
            at[i] = s;
        }
        std::vector<double> out(points_.size());
        for (std::size_t j = 0; j < points_.size(); ++j) {
            double best = INFINITY;
            for (std::size_t i = 0; i < at.size(); ++i)
                if (at[i] < 0) best = std::min(best, slacks_[j][i] / -at[i]);
            out[j] = std::max(0.0, best);
        }
        return out;
    }

    double moment(const std::vector<double>& u, double p) const {
        double s = 0;
        for (double b : reach(u)) s += std::pow(b, p);
        return s;
    }

    double max_reach(const std::vector<double>& u) const {
        double m = 0;
        for (double b : reach(u)) m = std::max(m, b);
        return m;
    }

private:
    int n_ = 0;
    std::vector<std::vector<double>> normals_;
    std::vector<std::vector<double>> slacks_;
    std::vector<Vec> points_;
};

}  // namespace zhang
