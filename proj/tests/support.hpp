#pragma once
// Shared fixtures and brute-force oracles for the unit tests.

#include <zhang/harness.hpp>

#include <random>

namespace fx {

using namespace zhang;

inline Q q(long long n, long long d = 1) { return Q(n) / Q(d); }

inline Vec v(std::initializer_list<Q> xs) { return Vec(xs); }

inline Polytope poly(std::initializer_list<Vec> pts) {
    std::vector<Vec> p(pts);
    return make_polytope(p, static_cast<int>(p.front().size()));
}

inline Polytope T2() { return standard_simplex(2); }
inline Polytope unit_square() { return box({q(0), q(0)}, {q(1), q(1)}); }
inline Polytope square11() { return box({q(-1), q(-1)}, {q(1), q(1)}); }
inline Polytope square02() { return box({q(0), q(0)}, {q(2), q(2)}); }

// corpus used by the invariant tests
inline std::vector<std::pair<std::string, Polytope>> corpus() {
    std::vector<std::pair<std::string, Polytope>> out;
    auto j = json::parse(R"([
      {"name": "T2", "family": "simplex", "dim": 2},
      {"name": "square01", "family": "cube", "dim": 2},
      {"name": "square11", "family": "cube", "dim": 2, "params": {"edge": [-1, 1]}},
      {"name": "cross2", "family": "cross", "dim": 2},
      {"name": "T2x3", "family": "simplex", "dim": 2, "params": {"edge": 3}},
      {"name": "strip", "family": "custom", "dim": 2, "params": {"points": [[-2, "1/3"], [2, "1/3"], [2, "1/2"], [-2, "1/2"]]}},
      {"name": "pentagon", "family": "custom", "dim": 2, "params": {"points": [[2, 0], [1, 2], [-1, 2], [-2, 0], [0, -2]]}},
      {"name": "sheared", "family": "simplex", "dim": 2, "affine": {"matrix": [[2, 1], [0, "3/2"]], "vector": ["-1/2", "-1/3"]}},
      {"name": "hull2", "family": "random_hull", "dim": 2, "params": {"count": 8, "radius": 3, "seed": 7}},
      {"name": "T3", "family": "simplex", "dim": 3},
      {"name": "cube01", "family": "cube", "dim": 3},
      {"name": "cross3", "family": "cross", "dim": 3},
      {"name": "hull3", "family": "random_hull", "dim": 3, "params": {"count": 8, "radius": 2, "seed": 11}}
    ])");
    for (const auto& b : j) {
        auto s = parse_body_spec(b);
        out.emplace_back(s.name, make_body(s));
    }
    return out;
}

// Monte-Carlo volume over the bounding box; returns (estimate, sigma).
inline std::pair<double, double> mc_volume(const Polytope& P, int samples, std::uint64_t seed) {
    const int n = P.dim;
    std::vector<double> lo(n, 1e300), hi(n, -1e300);
    for (const auto& x : P.vertices)
        for (int i = 0; i < n; ++i) {
            lo[i] = std::min(lo[i], to_double(x[i]));
            hi[i] = std::max(hi[i], to_double(x[i]));
        }
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    for (const auto& h : P.halfspaces) {
        std::vector<double> a;
        for (const auto& c : h.a) a.push_back(to_double(c));
        A.push_back(a);
        b.push_back(to_double(h.b));
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0, 1);
    double boxvol = 1;
    for (int i = 0; i < n; ++i) boxvol *= hi[i] - lo[i];
    int hit = 0;
    std::vector<double> x(n);
    for (int s = 0; s < samples; ++s) {
        for (int i = 0; i < n; ++i) x[i] = lo[i] + (hi[i] - lo[i]) * U(rng);
        bool in = true;
        for (std::size_t k = 0; k < A.size() && in; ++k) {
            double t = 0;
            for (int i = 0; i < n; ++i) t += A[k][i] * x[i];
            in = t <= b[k];
        }
        hit += in;
    }
    double f = static_cast<double>(hit) / samples;
    return {boxvol * f, boxvol * std::sqrt(f * (1 - f) / samples)};
}

// lattice points by scanning the vertex bounding box with exact membership
inline long long brute_count(const Polytope& P) {
    const int n = P.dim;
    std::vector<long long> lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
        Q a = P.vertices[0][i], b = a;
        for (const auto& x : P.vertices) {
            a = std::min(a, x[i]);
            b = std::max(b, x[i]);
        }
        lo[i] = ceil_z(a).convert_to<long long>();
        hi[i] = floor_z(b).convert_to<long long>();
    }
    long long c = 0;
    Vec x(n);
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            c += contains(P, x);
            return;
        }
        for (long long t = lo[i]; t <= hi[i]; ++t) {
            x[i] = Q(t);
            rec(i + 1);
        }
    };
    rec(0);
    return c;
}

// is x strictly inside P + C_k (open cube in the first k coordinates)? brute force by LP
inline bool in_open_fattening(const Polytope& P, const Vec& x, int k) {
    // minimize s subject to y in P, |x_i - y_i| <= s (i < k), y_i = x_i (i >= k)
    const int n = P.dim, m = n + 1;
    std::vector<Vec> A;
    Vec b;
    for (const auto& h : P.halfspaces) {
        Vec r(m, Q(0));
        for (int i = 0; i < n; ++i) r[i] = h.a[i];
        A.push_back(r);
        b.push_back(h.b);
    }
    for (int i = 0; i < n; ++i) {
        Vec r(m, Q(0));
        r[i] = 1;
        if (i < k) r[n] = -1;
        A.push_back(r);
        b.push_back(x[i]);
        Vec s(m, Q(0));
        s[i] = -1;
        if (i < k) s[n] = -1;
        A.push_back(s);
        b.push_back(-x[i]);
    }
    Vec c(m, Q(0));
    c[n] = -1;
    auto r = lp::maximize(c, A, b);
    if (r.status != lp::Status::Optimal) return false;
    return -r.value < 1;
}

inline long long brute_count_open(const Polytope& P, int k) {
    const int n = P.dim;
    std::vector<long long> lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
        Q a = P.vertices[0][i], b = a;
        for (const auto& x : P.vertices) {
            a = std::min(a, x[i]);
            b = std::max(b, x[i]);
        }
        lo[i] = ceil_z(a).convert_to<long long>() - (i < k ? 1 : 0);
        hi[i] = floor_z(b).convert_to<long long>() + (i < k ? 1 : 0);
    }
    long long c = 0;
    Vec x(n);
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            c += in_open_fattening(P, x, k);
            return;
        }
        for (long long t = lo[i]; t <= hi[i]; ++t) {
            x[i] = Q(t);
            rec(i + 1);
        }
    };
    rec(0);
    return c;
}

}  // namespace fx
