#pragma once
// Covariogram, chord-power integrals, ray moments by three routes, radial
// functions of Ball bodies and star-body volumes.

#include "lattice.hpp"
#include "quadrature.hpp"
#include "steiner.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace zhang {

inline MeasureValue covariogram(const Polytope& P, const Vec& x) {
    auto I = intersect(P, translate(P, x));
    return MeasureValue::of(I ? volume_q(*I) : Q(0));
}

// The chord-length function y -> |K cap (y + R e_n)| on the projection is
// piecewise affine; its cells are triangulated into simplices.
struct ChordCells {
    int d = 0;  // n - 1
    std::vector<Q> vol;                // simplex volumes
    std::vector<Vec> values;           // chord length at the simplex vertices
    std::vector<Q> breakpoints;        // sorted distinct chord values at cell vertices (with 0)
};

inline ChordCells chord_cells(const Polytope& K) {
    if (!K.full()) throw Error(Errc::DegenerateBody, "chord cells need a full-dimensional body");
    const int n = K.dim, d = n - 1;
    ChordCells C;
    C.d = d;
    struct Piece {
        Polytope shadow;
        Vec c;
        Q c0;
    };
    std::vector<Piece> up, lo;
    for (std::size_t i = 0; i < K.halfspaces.size(); ++i) {
        const auto& h = K.halfspaces[i];
        const Q& an = h.a[n - 1];
        if (an == 0) continue;
        std::vector<Vec> pts;
        for (auto v = K.incidence[i].find_first(); v != boost::dynamic_bitset<>::npos; v = K.incidence[i].find_next(v))
            pts.emplace_back(K.vertices[v].begin(), K.vertices[v].end() - 1);
        Piece pc{make_polytope(pts, d), {}, h.b / an};
        for (int j = 0; j < d; ++j) pc.c.push_back(-h.a[j] / an);
        (an > 0 ? up : lo).push_back(std::move(pc));
    }
    std::vector<Q> bps{Q(0)};
    for (const auto& u : up) {
        if (!u.shadow.full()) continue;
        for (const auto& l : lo) {
            if (!l.shadow.full()) continue;
            auto cell = intersect(u.shadow, l.shadow);
            if (!cell || !cell->full()) continue;
            Vec c = sub(u.c, l.c);
            Q c0 = u.c0 - l.c0;
            std::vector<Q> at;
            for (const auto& v : cell->vertices) {
                at.push_back(c0 + dot(c, v));
                bps.push_back(at.back());
            }
            if (d == 1) {
                C.vol.push_back(volume_q(*cell));
                C.values.push_back({at.front(), at.back()});
                continue;
            }
            for (const auto& s : triangulation(*cell)) {
                linalg::Mat m;
                for (std::size_t i = 1; i < s.size(); ++i) m.push_back(sub(cell->vertices[s[i]], cell->vertices[s[0]]));
                Vec vals;
                for (auto idx : s) vals.push_back(at[idx]);
                C.vol.push_back(qabs(linalg::det(m)) / factorial(d));
                C.values.push_back(std::move(vals));
            }
        }
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    C.breakpoints = std::move(bps);
    return C;
}

// integral of l^m over the projection, exact (simplex formula with complete
// homogeneous polynomials)
inline Q chord_integral_q(const ChordCells& C, unsigned m) {
    const int d = C.d;
    Q coef = factorial(d) * factorial(static_cast<int>(m)) / factorial(static_cast<int>(m) + d);
    Q total = 0;
    for (std::size_t s = 0; s < C.vol.size(); ++s) {
        Vec h(m + 1, Q(0));
        h[0] = 1;
        bool first = true;
        for (const auto& x : C.values[s]) {
            if (first) {
                for (unsigned k = 1; k <= m; ++k) h[k] = h[k - 1] * x;
                first = false;
            } else {
                for (unsigned k = 1; k <= m; ++k) h[k] += x * h[k - 1];
            }
        }
        total += C.vol[s] * h[m];
    }
    return total * coef;
}

namespace detail {

// divided difference of G with G^{(k)}(s) = s^{a+d-k} / prod_{i=1}^{d-k} (a+i), confluent nodes allowed
inline double divided_difference(std::vector<double> nodes, double a, int d) {
    std::sort(nodes.begin(), nodes.end());
    std::function<double(int, int)> rec = [&](int i, int j) -> double {
        if (nodes[i] == nodes[j]) {
            int k = j - i;
            double e = a + d - k, den = 1;
            for (int t = 1; t <= d - k; ++t) den *= a + t;
            double kf = 1;
            for (int t = 2; t <= k; ++t) kf *= t;
            double s = nodes[i];
            double val = s == 0 ? (e == 0 ? 1.0 : 0.0) : std::pow(s, e);
            return val / den / kf;
        }
        return (rec(i + 1, j) - rec(i, j - 1)) / (nodes[j] - nodes[i]);
    };
    return rec(0, static_cast<int>(nodes.size()) - 1);
}

}  // namespace detail

// integral of l^alpha over the projection for real alpha > -1
inline MeasureValue chord_integral(const ChordCells& C, double alpha) {
    if (!(alpha > -1)) throw Error(Errc::ExponentOutOfRange, "chord power must exceed -1");
    if (alpha >= 0 && std::floor(alpha) == alpha && alpha < 200) return MeasureValue::of(chord_integral_q(C, static_cast<unsigned>(alpha)));
    const int d = C.d;
    double df = 1;
    for (int t = 2; t <= d; ++t) df *= t;
    double total = 0;
    for (std::size_t s = 0; s < C.vol.size(); ++s) {
        std::vector<double> nodes;
        for (const auto& x : C.values[s]) nodes.push_back(to_double(x));
        total += to_double(C.vol[s]) * df * detail::divided_difference(nodes, alpha, d);
    }
    return MeasureValue::approx(total, 1e-10 * std::abs(total), alpha >= 0);
}

enum class Route { RayQuadrature, SymmetralSlab, ProjectionPower, DiscreteExact, DiscreteOpenExact };

inline const char* route_name(Route r) {
    switch (r) {
        case Route::RayQuadrature: return "ray-quadrature";
        case Route::SymmetralSlab: return "symmetral-slab";
        case Route::ProjectionPower: return "projection-power";
        case Route::DiscreteExact: return "discrete-exact";
        case Route::DiscreteOpenExact: return "discrete-open-exact";
    }
    return "?";
}

inline bool is_last_axis(const Direction& th) {
    for (int i = 0; i + 1 < th.dim(); ++i)
        if (th.raw[i] != 0) return false;
    return th.raw.back() > 0;
}

// (1/(p+1)) int l^{p+1} along e_n
inline MeasureValue projection_power_moment(const ChordCells& C, double p) {
    MeasureValue m = chord_integral(C, p + 1);
    if (m.exact) return MeasureValue::of(*m.exact / Q(static_cast<long long>(p + 1)));
    return MeasureValue::approx(m.value / (p + 1), m.abs_error / (p + 1), m.certified && p > 0);
}

// 2^p int_S |x_n|^p by slicing the symmetral at heights between its vertex levels
inline MeasureValue symmetral_slab_moment(const Polytope& S, double p) {
    const int n = S.dim;
    std::vector<Q> hts{Q(0)};
    for (const auto& v : S.vertices)
        if (v[n - 1] > 0) hts.push_back(v[n - 1]);
    std::sort(hts.begin(), hts.end());
    hts.erase(std::unique(hts.begin(), hts.end()), hts.end());
    const bool integral = std::floor(p) == p && p >= 0 && p < 200;
    Q exact = 0;
    double approx = 0;
    for (std::size_t s = 0; s + 1 < hts.size(); ++s) {
        const Q &a = hts[s], &b = hts[s + 1];
        Vec xs, ys;
        for (int i = 0; i < n; ++i) {
            Q t = a + (b - a) * Q(i + 1) / Q(n + 1);
            auto sl = slice_at_height(S, t);
            xs.push_back(t);
            ys.push_back(sl ? volume_q(*sl) : Q(0));
        }
        Vec c = quad::lagrange_coefficients(xs, ys);
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k] == 0) continue;
            if (integral) {
                unsigned e = static_cast<unsigned>(p) + static_cast<unsigned>(k) + 1;
                exact += c[k] * (qpow(b, e) - qpow(a, e)) / Q(e);
            } else {
                double e = p + k + 1;
                approx += to_double(c[k]) * (std::pow(to_double(b), e) - std::pow(to_double(a), e)) / e;
            }
        }
    }
    if (integral) return MeasureValue::of(exact * qpow(Q(2), static_cast<unsigned>(p) + 1));
    double v = approx * std::pow(2.0, p + 1);
    return MeasureValue::approx(v, 1e-12 * std::abs(v));
}

// g_K(r e_n) sampled exactly at n+1 points per chord-value segment and fitted
// by its interpolating polynomial (exact, since g is polynomial of degree n there).
struct RayFit {
    int n = 0;
    std::vector<double> a, b;
    std::vector<std::vector<double>> coef;  // in powers of (r - a)
};

inline RayFit ray_fit(const Polytope& K, const ChordCells& C) {
    const int n = K.dim;
    RayFit F;
    F.n = n;
    const auto& bp = C.breakpoints;
    for (std::size_t s = 0; s + 1 < bp.size(); ++s) {
        const Q &a = bp[s], &b = bp[s + 1];
        Vec xs, ys;
        for (int i = 0; i <= n; ++i) {
            Q r = a + (b - a) * Q(i) / Q(n);
            Vec shift(n, Q(0));
            shift[n - 1] = r;
            xs.push_back(r - a);
            ys.push_back(*covariogram(K, shift).exact);
        }
        std::vector<double> cd;
        for (const auto& x : quad::lagrange_coefficients(xs, ys)) cd.push_back(to_double(x));
        F.a.push_back(to_double(a));
        F.b.push_back(to_double(b));
        F.coef.push_back(std::move(cd));
    }
    return F;
}

// p int_0^inf r^{p-1} g_K(r e_n) dr by Gauss-Legendre on each segment
inline MeasureValue ray_quadrature_moment(const RayFit& F, double p, unsigned extra_order = 0) {
    const unsigned order = static_cast<unsigned>(std::ceil((F.n + p) / 2.0)) + 2 + extra_order;
    double total = 0, alt = 0;
    for (std::size_t s = 0; s < F.a.size(); ++s) {
        const double ad = F.a[s];
        const auto& cd = F.coef[s];
        if (ad == 0) {
            // r^{p-1} is not smooth at 0 for fractional p: integrate this piece term by term
            double piece = 0;
            for (std::size_t k = 0; k < cd.size(); ++k) piece += cd[k] * p / (p + k) * std::pow(F.b[s], p + k);
            total += piece;
            alt += piece;
            continue;
        }
        auto f = [&](double r) { return p * std::pow(r, p - 1) * quad::horner(cd, r - ad); };
        total += quad::integrate(f, ad, F.b[s], order);
        alt += quad::integrate(f, ad, F.b[s], order + 2);
    }
    return MeasureValue::approx(total, std::abs(total - alt) + 1e-13 * std::abs(total));
}

inline MeasureValue ray_quadrature_moment(const Polytope& K, const ChordCells& C, double p, unsigned extra_order = 0) {
    return ray_quadrature_moment(ray_fit(K, C), p, extra_order);
}

// Rational map A with A u = e_n; returns A and |det A|.
struct DirectionMap {
    linalg::Mat A;
    Q abs_det;
};

inline DirectionMap direction_map(const Vec& u) {
    const int n = static_cast<int>(u.size());
    int k = -1;
    for (int i = 0; i < n; ++i)
        if (u[i] != 0) k = i;
    if (k < 0) throw Error(Errc::DimensionMismatch, "zero direction");
    linalg::Mat Ainv(n, Vec(n, Q(0)));  // columns e_j (j != k) then u
    int col = 0;
    for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        Ainv[j][col++] = 1;
    }
    for (int i = 0; i < n; ++i) Ainv[i][n - 1] = u[i];
    return {*linalg::inverse(Ainv), Q(1) / qabs(u[k])};
}

inline Polytope map_to_last_axis(const Polytope& K, const Vec& u, Q* abs_det = nullptr) {
    if (is_last_axis(Direction(u))) {
        if (abs_det) *abs_det = 1;
        return K;
    }
    auto M = direction_map(u);
    if (abs_det) *abs_det = M.abs_det;
    return transform(K, M.A, Vec(K.dim, Q(0)));
}

// (1/(p+1)) int_{theta-perp} chord^{p+1} for a rational direction, via the mapped body.
inline MeasureValue directional_moment(const Polytope& K, const Direction& th, double p) {
    Q det;
    Polytope AK = map_to_last_axis(K, th.raw, &det);
    MeasureValue m = projection_power_moment(chord_cells(AK), p);
    const bool integral = std::floor(p) == p && p >= 0 && p < 200;
    if (m.exact && integral) {
        unsigned ip = static_cast<unsigned>(p);
        Q base = *m.exact / det;
        if (auto nrm = th.exact_norm()) return MeasureValue::of(base * qpow(*nrm, ip));
        if (ip % 2 == 0) return MeasureValue::of(base * qpow(th.norm2(), ip / 2));
        double v = to_double(base) * std::pow(th.norm(), p);
        return MeasureValue::approx(v, 1e-14 * std::abs(v));
    }
    double f = std::pow(th.norm(), p) / to_double(det);
    return MeasureValue::approx(m.value * f, m.abs_error * f + 1e-14 * std::abs(m.value * f), m.certified);
}

inline MeasureValue continuous_ray_moment(const Polytope& K, const Direction& th, double p, Route route) {
    if (th.dim() != K.dim) throw Error(Errc::DimensionMismatch, "direction length");
    const bool en = is_last_axis(th) && th.raw.back() == 1;
    switch (route) {
        case Route::ProjectionPower:
            if (!en || !(p > -1)) throw Error(Errc::RouteUnsupported, "projection-power needs e_n and p > -1");
            return projection_power_moment(chord_cells(K), p);
        case Route::SymmetralSlab:
            if (!en || !(p > 0)) throw Error(Errc::RouteUnsupported, "symmetral-slab needs e_n and p > 0");
            return symmetral_slab_moment(steiner_symmetrize(K), p);
        case Route::RayQuadrature: {
            if (!(p > 0)) throw Error(Errc::RouteUnsupported, "ray-quadrature needs p > 0");
            Q det;
            Polytope AK = map_to_last_axis(K, th.raw, &det);
            MeasureValue m = ray_quadrature_moment(AK, chord_cells(AK), p);
            double f = std::pow(th.norm(), p) / to_double(det);
            return MeasureValue::approx(m.value * f, m.abs_error * f);
        }
        default:
            throw Error(Errc::RouteUnsupported, std::string("not a continuous route: ") + route_name(route));
    }
}

// chord lengths of a polygon along a floating unit direction
inline double chord_power_integral_2d(const Polytope& K, const std::vector<double>& th, double q) {
    const double px = -th[1], py = th[0];
    std::vector<double> ss;
    for (const auto& v : K.vertices) ss.push_back(to_double(v[0]) * px + to_double(v[1]) * py);
    std::sort(ss.begin(), ss.end());
    std::vector<std::array<double, 3>> hs;
    for (const auto& h : K.halfspaces) hs.push_back({to_double(h.a[0]), to_double(h.a[1]), to_double(h.b)});
    auto chord = [&](double s) {
        double lo = -INFINITY, hi = INFINITY;
        for (const auto& h : hs) {
            double at = h[0] * th[0] + h[1] * th[1];
            double rest = h[2] - s * (h[0] * px + h[1] * py);
            if (std::abs(at) < 1e-15) continue;
            double t = rest / at;
            if (at > 0) hi = std::min(hi, t);
            else lo = std::max(lo, t);
        }
        return std::max(0.0, hi - lo);
    };
    double total = 0;
    double prev_s = ss.front(), prev_l = chord(prev_s);
    for (std::size_t i = 1; i < ss.size(); ++i) {
        double s = ss[i];
        if (s - prev_s <= 1e-15) continue;
        double l = chord(s);
        double w = s - prev_s;
        if (std::abs(l - prev_l) < 1e-14 * (1 + l)) total += w * std::pow(0.5 * (l + prev_l), q);
        else total += w * (std::pow(l, q + 1) - std::pow(prev_l, q + 1)) / ((q + 1) * (l - prev_l));
        prev_s = s;
        prev_l = l;
    }
    return total;
}

// ---- radials ----

inline double root(double x, double p) { return x <= 0 ? 0.0 : std::pow(x, 1.0 / p); }

// directions built from binary64 components carry huge denominators
inline bool from_floats(const Direction& th) {
    for (const auto& x : th.raw)
        if (denom(x) > 1048576) return true;
    return false;
}

// rho_{R_p(K)}(theta) = (moment / vol)^{1/p}
inline MeasureValue radial_Rp(const Polytope& K, const Direction& th, double p) {
    if (!(p > -1) || p == 0) throw Error(Errc::ExponentOutOfRange, "radial mean needs p in (-1, inf) without 0");
    const double vol = to_double(volume_q(K));
    double m, err;
    bool cert = p > 0;
    if (K.dim == 2 && from_floats(th)) {
        m = chord_power_integral_2d(K, th.unit, p + 1) / (p + 1);
        err = 1e-12 * m;
    } else {
        MeasureValue mv = directional_moment(K, th, p);
        m = mv.value;
        err = mv.abs_error;
        cert = cert && mv.certified;
    }
    double r = root(m / vol, p);
    double dr = r * std::abs(1.0 / p) * (err / m + 1e-15);
    return MeasureValue::approx(r, dr, cert);
}

inline MeasureValue radial_Rp_2d(const Polytope& K, const std::vector<double>& u, double p) {
    const double vol = to_double(volume_q(K));
    double m = chord_power_integral_2d(K, u, p + 1) / (p + 1);
    double r = root(m / vol, p);
    return MeasureValue::approx(r, r * 1e-12, p > 0);
}

enum class Source { Continuous, Discrete, DiscreteOpen, PolarProjection, DifferenceSet };

inline const char* source_name(Source s) {
    switch (s) {
        case Source::Continuous: return "continuous";
        case Source::Discrete: return "discrete";
        case Source::DiscreteOpen: return "discrete-open";
        case Source::PolarProjection: return "polar-projection";
        case Source::DifferenceSet: return "difference-set";
    }
    return "?";
}

// p-th power of the Ball-body radial before the root: moment / g(0)
inline MeasureValue ball_power(Source src, const Polytope& K, const Direction& th, double p) {
    switch (src) {
        case Source::Continuous: {
            MeasureValue m = directional_moment(K, th, p);
            Q vol = volume_q(K);
            if (vol == 0) throw Error(Errc::ZeroBase, "zero volume");
            if (m.exact) return MeasureValue::of(*m.exact / vol);
            return MeasureValue::approx(m.value / to_double(vol), m.abs_error / to_double(vol), m.certified);
        }
        case Source::Discrete:
        case Source::DiscreteOpen: {
            bool open = src == Source::DiscreteOpen;
            auto D = ray_decomposition(K, th, open);
            long long g0 = count_lattice(K, open ? K.dim : 0);
            if (g0 == 0) throw Error(Errc::ZeroBase, "no lattice points");
            MeasureValue m = discrete_ray_moment(D, p);
            if (m.exact) return MeasureValue::of(*m.exact / Q(g0));
            return MeasureValue::approx(m.value / g0, m.abs_error / g0, m.certified);
        }
        default:
            throw Error(Errc::RouteUnsupported, "source has no moment form");
    }
}

inline MeasureValue radial_ball_body(Source src, const Polytope& K, const Direction& th, double p, bool tilde = false) {
    if (!(p > 0)) throw Error(Errc::ExponentOutOfRange, "Ball body needs p > 0");
    if (src == Source::PolarProjection) {
        MeasureValue pv = projection_volume(K, th);
        return MeasureValue::approx(1.0 / pv.value, pv.abs_error / (pv.value * pv.value) + 1e-16 / pv.value);
    }
    if (src == Source::DifferenceSet) {
        auto D = ray_decomposition(K, th, false);
        Q best = 0;
        for (const auto& e : D.entries) best = std::max(best, e.r.hi);
        double v = to_double(best) * th.norm();
        if (auto nrm = th.exact_norm()) return MeasureValue::of(best * *nrm);
        return MeasureValue::approx(v, 1e-15 * v);
    }
    if (src != Source::Continuous && !origin_in(K)) throw Error(Errc::OriginMissing, "discrete Ball bodies need 0 in K");
    MeasureValue pw = ball_power(src, K, th, p);
    double scale = 1.0;
    if (tilde && src == Source::DiscreteOpen) {
        double gc = static_cast<double>(count_lattice(K, K.dim)), g = static_cast<double>(count_lattice(K, 0));
        scale = gc / g;
    }
    double v = root(pw.value * scale, p);
    double err = v * (pw.abs_error / std::max(pw.value, 1e-300) + 1e-15) / p;
    if (pw.exact && p == 1.0) {
        Q s = *pw.exact;
        if (tilde && src == Source::DiscreteOpen) s = s * Q(count_lattice(K, K.dim)) / Q(count_lattice(K, 0));
        return MeasureValue::of(s);
    }
    return MeasureValue::approx(v, err, pw.certified);
}

// vol = (1/n) sum w rho^n, error from a half-resolution rule
struct StarVolume {
    MeasureValue value;
    std::size_t nodes = 0;
};

inline double star_sum(const quad::SphereRule& rule, const std::function<double(const std::vector<double>&)>& rho, int n) {
    double s = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rho(rule.nodes[i]), n);
    return s / n;
}

inline StarVolume star_volume_2d(const std::function<double(const std::vector<double>&)>& rho,
                                 const std::vector<double>& kinks, int equal = 2048) {
    auto full = quad::circle_rule(equal, kinks);
    auto half = quad::circle_rule(equal / 2, kinks);
    double v = star_sum(full, rho, 2), vh = star_sum(half, rho, 2);
    return {MeasureValue::approx(v, std::abs(v - vh), false), full.nodes.size()};
}

inline StarVolume star_volume_3d(const std::function<double(const std::vector<double>&)>& rho, unsigned polar = 48) {
    auto full = quad::sphere_product_rule(polar, 2 * polar);
    auto half = quad::sphere_product_rule(polar / 2, polar);
    double v = star_sum(full, rho, 3), vh = star_sum(half, rho, 3);
    return {MeasureValue::approx(v, std::abs(v - vh), false), full.nodes.size()};
}

// Angles where a polygon-derived radial can kink: facet normals, their perpendiculars,
// directions to vertices and from lattice points to vertices.
inline std::vector<double> kink_angles(const Polytope& K, const std::vector<Vec>& lattice = {}) {
    std::vector<double> out;
    auto push = [&](double x, double y) {
        if (x == 0 && y == 0) return;
        double a = std::atan2(y, x);
        for (double s : {0.0, std::numbers::pi}) out.push_back(a + s);
    };
    for (const auto& h : K.halfspaces) {
        double x = to_double(h.a[0]), y = to_double(h.a[1]);
        push(x, y);
        push(-y, x);
    }
    for (const auto& v : K.vertices) push(to_double(v[0]), to_double(v[1]));
    for (const auto& y : lattice)
        for (const auto& v : K.vertices) push(to_double(y[0] - v[0]), to_double(y[1] - v[1]));
    for (const auto& v : K.vertices)
        for (const auto& w : K.vertices) push(to_double(v[0] - w[0]), to_double(v[1] - w[1]));
    return out;
}

}  // namespace zhang
