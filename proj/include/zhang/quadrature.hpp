#pragma once
// Gauss-Legendre rules, exact polynomial fitting and sphere rules.

#include "rational.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

namespace zhang::quad {

struct Rule {
    std::vector<double> x, w;  // on [-1, 1]
};

inline const Rule& gauss_legendre(unsigned n) {
    static std::mutex mu;
    static std::map<unsigned, Rule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    Rule r;
    for (double z : boost::math::legendre_p_zeros<double>(static_cast<int>(n))) {
        double d = boost::math::legendre_p_prime(static_cast<int>(n), z);
        double w = 2.0 / ((1.0 - z * z) * d * d);
        r.x.push_back(z);
        r.w.push_back(w);
        if (z != 0.0) {
            r.x.push_back(-z);
            r.w.push_back(w);
        }
    }
    return cache.emplace(n, std::move(r)).first->second;
}

inline double integrate(const std::function<double(double)>& f, double a, double b, unsigned order) {
    const Rule& r = gauss_legendre(order);
    double h = (b - a) / 2, m = (a + b) / 2, s = 0;
    for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(m + h * r.x[i]);
    return s * h;
}

// Coefficients (ascending powers) of the interpolating polynomial through (xs, ys).
inline Vec lagrange_coefficients(const Vec& xs, const Vec& ys) {
    const std::size_t m = xs.size();
    Vec out(m, Q(0));
    for (std::size_t i = 0; i < m; ++i) {
        Vec basis{Q(1)};
        Q denom = 1;
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            Vec next(basis.size() + 1, Q(0));
            for (std::size_t k = 0; k < basis.size(); ++k) {
                next[k + 1] += basis[k];
                next[k] -= basis[k] * xs[j];
            }
            basis = std::move(next);
            denom *= xs[i] - xs[j];
        }
        Q f = ys[i] / denom;
        for (std::size_t k = 0; k < m; ++k) out[k] += basis[k] * f;
    }
    return out;
}

inline double horner(const std::vector<double>& c, double x) {
    double s = 0;
    for (std::size_t k = c.size(); k-- > 0;) s = s * x + c[k];
    return s;
}

// Points on the unit circle / sphere with weights summing to the surface area.
struct SphereRule {
    std::vector<std::vector<double>> nodes;
    std::vector<double> weights;
};

// Trapezoid on the circle at the union of equal angles and extra angles.
inline SphereRule circle_rule(int equal, std::vector<double> extra) {
    const double two_pi = 2 * std::numbers::pi;
    std::vector<double> ang;
    for (int i = 0; i < equal; ++i) ang.push_back(two_pi * i / equal);
    for (double a : extra) {
        a = std::fmod(a, two_pi);
        if (a < 0) a += two_pi;
        ang.push_back(a);
    }
    std::sort(ang.begin(), ang.end());
    std::vector<double> uniq;
    for (double a : ang)
        if (uniq.empty() || a - uniq.back() > 1e-13) uniq.push_back(a);
    if (uniq.size() > 1 && two_pi - uniq.back() + uniq.front() < 1e-13) uniq.pop_back();
    SphereRule r;
    const std::size_t m = uniq.size();
    for (std::size_t i = 0; i < m; ++i) {
        double prev = i == 0 ? uniq[m - 1] - two_pi : uniq[i - 1];
        double next = i + 1 == m ? uniq[0] + two_pi : uniq[i + 1];
        r.nodes.push_back({std::cos(uniq[i]), std::sin(uniq[i])});
        r.weights.push_back((next - prev) / 2);
    }
    return r;
}

// Gauss-Legendre in cos(polar angle) times equal azimuths.
inline SphereRule sphere_product_rule(unsigned polar, unsigned azimuth) {
    const Rule& g = gauss_legendre(polar);
    SphereRule r;
    const double dphi = 2 * std::numbers::pi / azimuth;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        double z = g.x[i], s = std::sqrt(std::max(0.0, 1 - z * z));
        for (unsigned k = 0; k < azimuth; ++k) {
            double phi = dphi * (k + 0.5);
            r.nodes.push_back({s * std::cos(phi), s * std::sin(phi), z});
            r.weights.push_back(g.w[i] * dphi);
        }
    }
    return r;
}

// Deterministic quasi-uniform sphere points (Fibonacci lattice).
inline std::vector<std::vector<double>> fibonacci_sphere(int count) {
    std::vector<std::vector<double>> out;
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
        double z = 1.0 - (2.0 * i + 1.0) / count;
        double s = std::sqrt(std::max(0.0, 1 - z * z));
        out.push_back({s * std::cos(golden * i), s * std::sin(golden * i), z});
    }
    return out;
}

}  // namespace zhang::quad
