#pragma once
// Discrete section profiles, the m0 / crossing-point machinery, the checker
// registry and scaling sweeps.

#include "covariogram.hpp"
#include "lattice.hpp"
#include "lp.hpp"
#include "steiner.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace zhang {

using json = nlohmann::json;

// ---- B_m(p) and h_p ----

namespace detail {

// k^e with 0^0 = 1
inline double kpow(double k, double e) { return k == 0 ? (e == 0 ? 1.0 : 0.0) : std::pow(k, e); }
inline Q kpow_q(long long k, unsigned e) { return k == 0 ? Q(e == 0 ? 1 : 0) : qpow(Q(k), e); }

inline bool small_integer(double p) { return std::floor(p) == p && p >= 0 && p < 64; }

}  // namespace detail

inline double h_func(double x, double p, int n) {
    if (!(x > 0)) throw Error(Errc::ExponentOutOfRange, "h needs x > 0");
    if (!(p >= 1)) throw Error(Errc::ExponentOutOfRange, "h needs p >= 1");
    const long long top = static_cast<long long>(std::floor(x));
    double s = 0;
    for (long long k = 0; k <= top; ++k) s += p * std::pow(1 - static_cast<double>(k) / x, n - 1) * detail::kpow(static_cast<double>(k), p - 1);
    return s;
}

inline double B_coeff(double m, double p, int n) { return h_func(m, p, n) / std::pow(m, p); }

inline Q h_func_q(const Q& x, unsigned p, int n) {
    if (x <= 0) throw Error(Errc::ExponentOutOfRange, "h needs x > 0");
    if (p < 1) throw Error(Errc::ExponentOutOfRange, "h needs p >= 1");
    const long long top = floor_z(x).convert_to<long long>();
    Q s = 0;
    for (long long k = 0; k <= top; ++k) s += Q(p) * qpow(Q(1) - Q(k) / x, n - 1) * detail::kpow_q(k, p - 1);
    return s;
}

inline Q B_coeff_q(const Q& m, unsigned p, int n) { return h_func_q(m, p, n) / qpow(m, p); }

// ---- section profiles of the symmetral ----

struct SectionProfiles {
    Polytope body, symmetral;
    std::vector<long long> f, f_tilde;  // index k = 0 .. floor(support_bound)
    long long M = 0;
    Q support_bound;
    long long g_proj = 0;  // lattice points of the projection

    long long f_at(long long k) const { return k >= 0 && k < static_cast<long long>(f.size()) ? f[k] : 0; }
    long long ft_at(long long k) const { return k >= 0 && k < static_cast<long long>(f_tilde.size()) ? f_tilde[k] : 0; }
};

inline SectionProfiles section_profiles(const Polytope& K) {
    if (!K.full()) throw Error(Errc::DegenerateBody, "profiles need a full-dimensional body");
    const int n = K.dim;
    SectionProfiles sp;
    sp.body = K;
    Polytope P = project_drop_last(K);
    if (!contains(P, Vec(n - 1, Q(0)))) throw Error(Errc::EmptyProjectionLattice, "0 is not in the projection");
    sp.symmetral = steiner_symmetrize(K);
    sp.g_proj = count_lattice(P, 0);
    Q top = 0;
    for (const auto& v : sp.symmetral.vertices) top = std::max(top, v[n - 1]);
    sp.support_bound = top;
    const long long kmax = floor_z(top).convert_to<long long>();
    for (long long k = 0; k <= kmax; ++k) {
        auto sl = slice_at_height(sp.symmetral, Q(k));
        sp.f.push_back(count_lattice(sl, 0));
        sp.f_tilde.push_back(count_lattice(sl, n - 1));
        if (sp.f.back() > 0) sp.M = k;
    }
    return sp;
}

struct HypothesesH {
    bool max_at_zero_column = false;
    long long M = 0;
    bool satisfied = false;
};

inline HypothesesH hypotheses(const SectionProfiles& sp) {
    HypothesesH H;
    long long at0 = 0, best = 0;
    for_each_column(open_cube_system(sp.symmetral, 0), [&](const Vec& y, const Interval& I) {
        long long c = integers_in(I);
        best = std::max(best, c);
        if (is_zero(y)) at0 = c;
    });
    H.max_at_zero_column = at0 == best && at0 > 0;
    H.M = sp.M;
    H.satisfied = H.max_at_zero_column && H.M >= 1;
    return H;
}

// half the longest vertical chord over the closed window ||y - x||_inf <= 1
inline MeasureValue diamond_extension(const Polytope& K, const Vec& x) {
    const int n = K.dim, d = n - 1;
    if (static_cast<int>(x.size()) != d) throw Error(Errc::DimensionMismatch, "window centre length");
    const int m = n + 1;  // y (d), t1, t2
    std::vector<Vec> A;
    Vec b;
    for (const auto& h : K.halfspaces) {
        Vec r1(m, Q(0)), r2(m, Q(0));
        for (int j = 0; j < d; ++j) r1[j] = r2[j] = h.a[j];
        r1[d] = h.a[d];
        r2[d + 1] = h.a[d];
        A.push_back(r1);
        b.push_back(h.b);
        A.push_back(r2);
        b.push_back(h.b);
    }
    for (int j = 0; j < d; ++j) {
        Vec e(m, Q(0));
        e[j] = 1;
        A.push_back(e);
        b.push_back(x[j] + 1);
        e[j] = -1;
        A.push_back(e);
        b.push_back(1 - x[j]);
    }
    Vec c(m, Q(0));
    c[d] = -1;
    c[d + 1] = 1;
    auto r = lp::maximize(c, A, b);
    if (r.status != lp::Status::Optimal) return MeasureValue::of(Q(0));
    return MeasureValue::of(std::max(Q(0), r.value) / 2);
}

// ---- m0(p) and the crossing point ----

struct M0Result {
    double value = 0;
    std::optional<Q> exact;
    double bisection = 0;
    double target = 0;
    long long bracket = 0;  // root lies in (bracket - 1, bracket]
};

inline M0Result solve_m0(const SectionProfiles& sp, double p) {
    if (!(p >= 1)) throw Error(Errc::ExponentOutOfRange, "m0 needs p >= 1");
    if (!hypotheses(sp).satisfied) throw Error(Errc::HypothesesViolated, "hypotheses (H) fail");
    const int n = sp.body.dim;
    const bool integral = detail::small_integer(p);
    const unsigned ip = static_cast<unsigned>(p);
    M0Result R;
    Q tau_q = 0;
    double tau = 0;
    for (long long k = 0; k < static_cast<long long>(sp.f_tilde.size()); ++k) {
        if (integral) tau_q += Q(ip) * detail::kpow_q(k, ip - 1) * Q(sp.f_tilde[k]);
        tau += p * detail::kpow(static_cast<double>(k), p - 1) * static_cast<double>(sp.f_tilde[k]);
    }
    tau_q /= Q(sp.g_proj);
    tau /= static_cast<double>(sp.g_proj);
    if (integral) tau = to_double(tau_q);
    R.target = tau;

    double lo = 1, hi = 2;
    while (h_func(hi, p, n) < tau) {
        lo = hi;
        hi *= 2;
        if (hi > 1e9) throw Error(Errc::NoRoot, "h never reaches the target");
    }
    for (int it = 0; it < 200 && hi - lo > 2e-13; ++it) {
        double mid = (lo + hi) / 2;
        if (h_func(mid, p, n) >= tau) hi = mid;
        else lo = mid;
    }
    R.bisection = hi;
    R.value = hi;

    if (integral) {
        long long k = std::max<long long>(2, static_cast<long long>(std::floor(hi)));
        while (k > 2 && h_func_q(Q(k - 1), ip, n) >= tau_q) --k;
        while (h_func_q(Q(k), ip, n) < tau_q) ++k;
        R.bracket = k;
        if (h_func_q(Q(k), ip, n) == tau_q) {
            R.exact = Q(k);
        } else {
            // on (k-1, k) only j <= k-1 contribute: a polynomial in s = 1/x
            Q A = 0, B = 0, C = 0;
            for (long long j = 0; j < k; ++j) {
                Q w = Q(ip) * detail::kpow_q(j, ip - 1);
                A += w;
                B += w * Q(j);
                C += w * Q(j) * Q(j);
            }
            if (n == 2) {
                R.exact = B / (A - tau_q);
            } else if (n == 3) {
                Q D = B * B - C * (A - tau_q);
                if (auto sq = exact_sqrt(D)) {
                    R.exact = C / (B - *sq);
                } else {
                    double s = (to_double(B) - std::sqrt(to_double(D))) / to_double(C);
                    R.value = 1.0 / s;
                }
            }
        }
        if (R.exact) R.value = to_double(*R.exact);
    }
    if (R.value < static_cast<double>(sp.M) - 1e-12) throw Error(Errc::NoRoot, "m0 below M");
    return R;
}

namespace detail {

// sign of g(k) - c for g(r) = (1 - r/m)^{n-1} G on [0, m]
inline int compare_g(const SectionProfiles& sp, const M0Result& m0, long long k, long long c) {
    const int n = sp.body.dim;
    if (m0.exact) {
        const Q& m = *m0.exact;
        Q g = Q(k) <= m ? qpow(Q(1) - Q(k) / m, n - 1) * Q(sp.g_proj) : Q(0);
        return g < Q(c) ? -1 : (g > Q(c) ? 1 : 0);
    }
    double g = k <= m0.value ? std::pow(1 - k / m0.value, n - 1) * static_cast<double>(sp.g_proj) : 0.0;
    double tol = 1e-9 * static_cast<double>(sp.g_proj);
    if (g < c - tol) return -1;
    if (g > c + tol) return 1;
    return 0;
}

}  // namespace detail

// both displayed inequalities at every integer in range
inline bool crossing_holds(const SectionProfiles& sp, const M0Result& m0, long long ks) {
    const long long upper = static_cast<long long>(std::ceil(m0.value)) + 1;
    const long long last = std::max(upper, sp.M);
    for (long long k = 0; k < ks; ++k)
        if (detail::compare_g(sp, m0, k, sp.ft_at(k)) > 0) return false;
    for (long long k = ks; k <= last; ++k)
        if (detail::compare_g(sp, m0, k, sp.f_at(k)) < 0) return false;
    return true;
}

inline long long crossing_point(const SectionProfiles& sp, const M0Result& m0) {
    const long long upper = static_cast<long long>(std::ceil(m0.value)) + 1;
    for (long long ks = 0; ks <= upper; ++ks)
        if (crossing_holds(sp, m0, ks)) return ks;
    throw Error(Errc::NoCrossing, "no integer crossing point");
}

// ---- reports ----

enum class Verdict { Holds, Fails, Inconclusive };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Fails: return "fails";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct InequalityReport {
    std::string id, body;
    MeasureValue lhs, rhs;
    double slack = 0;
    Verdict verdict = Verdict::Inconclusive;
    json context = json::object();
    std::string paper_ref;
    bool precondition_failed = false;
};

struct CheckParams {
    std::vector<std::pair<std::string, std::string>> pairs{{"1", "2"}, {"1", "n+1"}, {"2", "5"}};
    std::vector<std::string> moments{"1", "2", "n"};
    std::vector<std::string> berwald_grid{"-1/2", "1", "2", "n", "n+1"};
    std::vector<std::string> inclusion_grid{"0", "1", "2", "n", "n+1"};
    int planar_directions = 360;
    int spatial_directions = 1000;
    int planar_volume_nodes = 2048;
    unsigned spatial_polar = 48;
    double planar_volume_tol = 1e-3;
    double spatial_volume_tol = 1e-2;
    double identity_rel = 1e-9;
    unsigned extra_order = 0;
    std::uint64_t seed = 0;
    std::string body_name = "body";
};

// "n", "n+1", "n-1" or a rational literal
inline double resolve_exponent(const std::string& tok, int n) {
    if (tok.empty()) throw Error(Errc::ConfigError, "empty exponent");
    if (tok[0] == 'n') {
        if (tok.size() == 1) return n;
        if (tok.size() < 3 || (tok[1] != '+' && tok[1] != '-')) throw Error(Errc::ConfigError, "bad exponent " + tok);
        long long k = std::stoll(tok.substr(2));
        return tok[1] == '+' ? n + k : n - k;
    }
    try {
        return to_double(parse_rational(tok));
    } catch (const std::exception&) {
        throw Error(Errc::ConfigError, "bad exponent " + tok);
    }
}

inline json to_json(const MeasureValue& m) {
    json j{{"value", m.value}, {"abs_error", m.abs_error}, {"certified", m.certified}};
    if (m.exact) j["exact"] = to_string(*m.exact);
    return j;
}

inline json to_json(const Vec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

namespace detail {

struct Comparison {
    MeasureValue lhs, rhs;
    std::optional<bool> decided;  // settled in rational arithmetic
    json context = json::object();
};

inline Verdict judge(const Comparison& c) {
    if (c.decided) return *c.decided ? Verdict::Holds : Verdict::Fails;
    if (c.lhs.exact && c.rhs.exact) return *c.lhs.exact <= *c.rhs.exact ? Verdict::Holds : Verdict::Fails;
    double slack = c.rhs.value - c.lhs.value, err = c.lhs.abs_error + c.rhs.abs_error;
    if (slack >= -err) return Verdict::Holds;
    if (!c.lhs.certified || !c.rhs.certified || slack >= -4 * err) return Verdict::Inconclusive;
    return Verdict::Fails;
}

inline double rel_slack(const Comparison& c) {
    double s = std::max({std::abs(c.lhs.value), std::abs(c.rhs.value), 1e-300});
    return (c.rhs.value - c.lhs.value) / s;
}

inline int rank(Verdict v) { return v == Verdict::Fails ? 0 : (v == Verdict::Inconclusive ? 1 : 2); }

// the failing one if any, else the smallest relative slack
inline const Comparison& worst(const std::vector<Comparison>& cs) {
    if (cs.empty()) throw Error(Errc::DegenerateBody, "nothing to compare");
    std::size_t best = 0;
    for (std::size_t i = 1; i < cs.size(); ++i) {
        int ri = rank(judge(cs[i])), rb = rank(judge(cs[best]));
        if (ri < rb || (ri == rb && rel_slack(cs[i]) < rel_slack(cs[best]))) best = i;
    }
    return cs[best];
}

inline InequalityReport report(const std::string& id, const CheckParams& prm, const Comparison& c) {
    InequalityReport r;
    r.id = id;
    r.body = prm.body_name;
    r.lhs = c.lhs;
    r.rhs = c.rhs;
    r.slack = c.rhs.value - c.lhs.value;
    if (c.lhs.exact && c.rhs.exact) r.slack = to_double(*c.rhs.exact - *c.lhs.exact);
    r.verdict = judge(c);
    r.context = c.context;
    return r;
}

inline InequalityReport report(const std::string& id, const CheckParams& prm, const std::vector<Comparison>& cs, json extra = json::object()) {
    const Comparison& w = worst(cs);
    InequalityReport r = report(id, prm, w);
    r.context["checked"] = cs.size();
    for (auto it = extra.begin(); it != extra.end(); ++it) r.context[it.key()] = it.value();
    return r;
}

inline InequalityReport precondition(const std::string& id, const CheckParams& prm, const std::string& why) {
    InequalityReport r;
    r.id = id;
    r.body = prm.body_name;
    r.verdict = Verdict::Inconclusive;
    r.precondition_failed = true;
    r.context["precondition"] = why;
    return r;
}

inline MeasureValue root_value(const Q& a, unsigned k) {
    if (k == 1) return MeasureValue::of(a);
    if (k == 2)
        if (auto r = exact_sqrt(a)) return MeasureValue::of(*r);
    double v = std::pow(to_double(a), 1.0 / k);
    return MeasureValue::approx(v, 1e-15 * v);
}

// a^{1/i} <= b^{1/j} for nonnegative a, b
inline bool root_le(const Q& a, unsigned i, const Q& b, unsigned j) { return qpow(a, j) <= qpow(b, i); }

inline MeasureValue approx_rel(double v, double rel) { return MeasureValue::approx(v, rel * std::abs(v)); }

inline Q zhang_constant(int n) { return binom(2 * n, n) / qpow(Q(n), n); }

struct Anchored {
    Polytope body;
    Vec shift;
};

// translate so that the longest vertical chord sits over the origin; bodies whose
// origin column is already longest stay put
inline Anchored anchored(const Polytope& K) {
    Vec y = max_section_anchor(K);
    Vec t(K.dim, Q(0));
    Vec origin(K.dim - 1, Q(0));
    auto at0 = vertical_section(K, origin);
    if (at0 && at0->length() == vertical_section(K, y)->length()) return {K, t};
    for (int j = 0; j + 1 < K.dim; ++j) t[j] = -y[j];
    if (is_zero(t)) return {K, t};
    return {translate(K, t), t};
}

inline void note_anchor(json& ctx, const Anchored& a) { ctx["anchor_translation"] = to_json(a.shift); }

// sum over integer columns of the closed body of len^e
inline Q column_power_sum(const Polytope& K, unsigned e) {
    Q s = 0;
    for_each_column(open_cube_system(K, 0), [&](const Vec&, const Interval& I) { s += qpow(I.length(), e); });
    return s;
}

// sum over lattice points of (x_n - lowest point of its column)^e
inline Q lattice_height_sum(const Polytope& K, unsigned e) {
    Q s = 0;
    for_each_column(open_cube_system(K, 0), [&](const Vec&, const Interval& I) {
        Z a = first_integer(I), b = last_integer(I);
        for (Z t = a; t <= b; ++t) s += qpow(Q(t) - I.lo, e);
    });
    return s;
}

inline Q open_column_length_sum(const Polytope& K, int k) {
    Q s = 0;
    for_each_column(open_cube_system(K, k), [&](const Vec&, const Interval& I) { s += I.length(); });
    return s;
}

// 2^e sum_{S cap Z^n} |x_n|^e from the profile
inline Q symmetral_lattice_moment(const SectionProfiles& sp, unsigned e) {
    Q s = 0;
    for (long long k = 1; k < static_cast<long long>(sp.f.size()); ++k) s += Q(2) * qpow(Q(k), e) * Q(sp.f[k]);
    return s * qpow(Q(2), e);
}

inline std::vector<std::vector<double>> sample_directions(const Polytope& K, const CheckParams& prm) {
    if (K.dim == 2) return quad::circle_rule(prm.planar_directions, kink_angles(K)).nodes;
    auto dirs = quad::fibonacci_sphere(prm.spatial_directions);
    for (const auto& v : K.vertices) {
        std::vector<double> u;
        double s = 0;
        for (const auto& x : v) {
            u.push_back(to_double(x));
            s += u.back() * u.back();
        }
        if (s == 0) continue;
        s = std::sqrt(s);
        for (double& x : u) x /= s;
        dirs.push_back(u);
        for (double& x : u) x = -x;
        dirs.push_back(u);
    }
    return dirs;
}

inline std::vector<Vec> rational_directions(int n) {
    std::vector<Vec> out;
    if (n == 2) {
        for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {1, 1}, {1, -1}, {1, 2}, {2, -1}, {3, 1}})
            out.push_back({Q(a), Q(b)});
    } else {
        for (auto v : std::vector<std::vector<int>>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}, {1, -1, 2}, {2, 1, -1}}) {
            Vec r;
            for (int x : v) r.push_back(Q(x));
            out.push_back(r);
        }
    }
    return out;
}

inline double binom_d(int n, double p) { return binom_real(n, p); }

}  // namespace detail

// ---- checkers ----

namespace checks {

using detail::Comparison;

inline InequalityReport zhang_preintegration(const Polytope& K, const CheckParams& prm) {
    const int n = K.dim;
    Q moment = chord_integral_q(chord_cells(K), n + 1) / Q(n + 1);
    Q vol = volume_q(K), vp = volume_q(project_drop_last(K));
    Comparison c{MeasureValue::of(detail::zhang_constant(n) * moment), MeasureValue::of(qpow(vol, n + 1) / qpow(vp, n))};
    c.context = {{"moment", to_string(moment)}, {"volume", to_string(vol)}, {"projection_volume", to_string(vp)}};
    return detail::report("zhang_preintegration", prm, c);
}

inline InequalityReport zhang_preintegration_2(const Polytope& K, const CheckParams& prm) {
    const int n = K.dim;
    MeasureValue slab = symmetral_slab_moment(steiner_symmetrize(K), n);
    Q vol = volume_q(K), vp = volume_q(project_drop_last(K));
    Comparison c{MeasureValue::of(detail::zhang_constant(n) * *slab.exact), MeasureValue::of(qpow(vol, n + 1) / qpow(vp, n))};
    c.context = {{"symmetral_moment", to_string(*slab.exact)}};
    return detail::report("zhang_preintegration_2", prm, c);
}

// compared in raw units: both sides carry the same |u|^n factor
inline InequalityReport zhang_directional(const Polytope& K, const CheckParams& prm) {
    const int n = K.dim;
    const auto fm = facet_measures(K);
    const Q vol = volume_q(K), Z = detail::zhang_constant(n);
    std::vector<Comparison> cs;
    for (const auto& u : detail::rational_directions(n)) {
        Direction th(u);
        Q det;
        Polytope AK = map_to_last_axis(K, u, &det);
        Q base = chord_integral_q(chord_cells(AK), n + 1) / Q(n + 1) / det;
        Q s = cauchy_sum(fm, u);
        Q lhs_raw = Z * base, rhs_raw = qpow(vol, n + 1) / qpow(s, n);
        Comparison c;
        std::optional<Q> factor;
        if (auto nrm = th.exact_norm()) factor = qpow(*nrm, n);
        else if (n % 2 == 0) factor = qpow(th.norm2(), n / 2);
        if (factor) {
            c.lhs = MeasureValue::of(lhs_raw * *factor);
            c.rhs = MeasureValue::of(rhs_raw * *factor);
        } else {
            double f = std::pow(th.norm(), n);
            c.lhs = detail::approx_rel(to_double(lhs_raw) * f, 1e-15);
            c.rhs = detail::approx_rel(to_double(rhs_raw) * f, 1e-15);
        }
        c.decided = lhs_raw <= rhs_raw;
        c.context = {{"direction", to_json(u)}};
        cs.push_back(std::move(c));
    }
    return detail::report("zhang_directional", prm, cs);
}

inline InequalityReport discrete_zhang_mu(const Polytope& K0, const CheckParams& prm) {
    auto A = detail::anchored(K0);
    const Polytope& K = A.body;
    const int n = K.dim;
    Polytope P = project_drop_last(K);
    long long gp = count_lattice(P, 0);
    if (gp == 0) return detail::precondition("discrete_zhang_mu", prm, "projection has no lattice points");
    Q lhs = detail::zhang_constant(n) * detail::column_power_sum(K, n + 1) / Q(n + 1);
    Q mu_open = detail::open_column_length_sum(steiner_symmetrize(K), n - 1);
    Q rhs = qpow(mu_open, n + 1) / qpow(Q(gp), n);
    Comparison c{MeasureValue::of(lhs), MeasureValue::of(rhs)};
    c.context = {{"mu_symmetral_open", to_string(mu_open)}, {"projection_lattice", gp}};
    detail::note_anchor(c.context, A);
    return detail::report("discrete_zhang_mu", prm, c);
}

inline InequalityReport lattice_zhang(const Polytope& K0, const CheckParams& prm) {
    auto A = detail::anchored(K0);
    const Polytope& K = A.body;
    const int n = K.dim;
    Polytope P = project_drop_last(K);
    long long gp = count_lattice(P, 0);
    if (gp == 0) return detail::precondition("lattice_zhang", prm, "projection has no lattice points");
    const Q Z = detail::zhang_constant(n);
    Q rho = vertical_section(K, Vec(n - 1, Q(0)))->length();
    Q lhs = Z * detail::lattice_height_sum(K, n);
    long long gs = count_lattice(steiner_symmetrize(K), n - 1), gpo = count_lattice(P, n - 1);
    Q rhs = Z * qpow(rho, n) * Q(gp) + qpow(Q(gs + gpo), n + 1) / qpow(Q(gp), n);
    Comparison c{MeasureValue::of(lhs), MeasureValue::of(rhs)};
    c.context = {{"max_section", to_string(rho)}, {"symmetral_open_lattice", gs}, {"projection_open_lattice", gpo}, {"projection_lattice", gp}};
    detail::note_anchor(c.context, A);
    return detail::report("lattice_zhang", prm, c);
}

inline InequalityReport purely_discrete_zhang(const Polytope& K0, const CheckParams& prm) {
    auto A = detail::anchored(K0);
    const Polytope& K = A.body;
    const int n = K.dim;
    SectionProfiles sp;
    try {
        sp = section_profiles(K);
    } catch (const Error& e) {
        if (e.code() == Errc::EmptyProjectionLattice) return detail::precondition("purely_discrete_zhang", prm, e.what());
        throw;
    }
    auto H = hypotheses(sp);
    if (!H.max_at_zero_column) return detail::precondition("purely_discrete_zhang", prm, "lattice column count not maximal at the origin");
    Polytope P = project_drop_last(K);
    long long gs = count_lattice(sp.symmetral, n - 1), gpo = count_lattice(P, n - 1);
    Q rhs = qpow(Q(gs + gpo), n + 1) / qpow(Q(sp.g_proj), n);
    Comparison c;
    c.rhs = MeasureValue::of(rhs);
    c.context = {{"M", sp.M}};
    detail::note_anchor(c.context, A);
    if (sp.M == 0) {
        c.lhs = MeasureValue::of(Q(0));
        c.context["trivial"] = true;
        return detail::report("purely_discrete_zhang", prm, c);
    }
    M0Result m0 = solve_m0(sp, 1);
    Q moment = detail::symmetral_lattice_moment(sp, n);
    c.context["m0"] = m0.value;
    c.context["m0_bisection"] = m0.bisection;
    if (m0.exact) {
        c.context["m0_exact"] = to_string(*m0.exact);
        Q b1 = B_coeff_q(*m0.exact, 1, n), bn = B_coeff_q(*m0.exact, n + 1, n);
        c.lhs = MeasureValue::of(Q(n + 1) * qpow(b1, n + 1) / bn * moment);
    } else {
        double b1 = B_coeff(m0.value, 1, n), bn = B_coeff(m0.value, n + 1, n);
        c.lhs = detail::approx_rel((n + 1) * std::pow(b1, n + 1) / bn * to_double(moment), 1e-9);
    }
    c.context["lattice_moment"] = to_string(moment);
    return detail::report("purely_discrete_zhang", prm, c);
}

inline InequalityReport berwald_continuous(const Polytope& K, const CheckParams& prm) {
    const int n = K.dim, d = n - 1;
    auto C = chord_cells(K);
    Q vp = volume_q(project_drop_last(K));
    std::vector<double> grid;
    for (const auto& t : prm.berwald_grid) grid.push_back(resolve_exponent(t, n));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    struct Mean {
        double p;
        std::optional<Q> power;  // V(p)^p when exact
        MeasureValue v;
    };
    std::vector<Mean> means;
    for (double p : grid) {
        if (!(p > -1) || p == 0) throw Error(Errc::ExponentOutOfRange, "Berwald grid needs p in (-1, inf) without 0");
        MeasureValue I = chord_integral(C, p);
        Mean m{p, std::nullopt, {}};
        if (I.exact && detail::small_integer(p)) {
            Q pw = binom(d + static_cast<long long>(p), d) / vp * *I.exact;
            m.power = pw;
            m.v = detail::root_value(pw, static_cast<unsigned>(p));
        } else {
            double pw = detail::binom_d(d, p) / to_double(vp) * I.value;
            double v = std::pow(pw, 1.0 / p);
            double rel = (I.abs_error / std::max(std::abs(I.value), 1e-300)) / std::abs(p) + 1e-9;
            m.v = MeasureValue::approx(v, rel * v, p > 0 && I.certified);
        }
        means.push_back(std::move(m));
    }
    std::vector<Comparison> cs;
    for (std::size_t i = 0; i + 1 < means.size(); ++i) {
        const Mean &a = means[i], &b = means[i + 1];
        Comparison c{b.v, a.v};
        if (a.power && b.power) c.decided = detail::root_le(*b.power, static_cast<unsigned>(b.p), *a.power, static_cast<unsigned>(a.p));
        c.context = {{"p", a.p}, {"q", b.p}};
        cs.push_back(std::move(c));
    }
    json chain = json::array();
    for (const auto& m : means) chain.push_back({{"p", m.p}, {"mean", to_json(m.v)}});
    return detail::report("berwald_continuous", prm, cs, {{"chain", chain}});
}

inline InequalityReport berwald_discrete(const Polytope& K0, const CheckParams& prm) {
    auto A = detail::anchored(K0);
    const Polytope& K = A.body;
    const int n = K.dim, d = n - 1;
    Polytope P = project_drop_last(K);
    long long gp = count_lattice(P, 0);
    if (gp == 0) return detail::precondition("berwald_discrete", prm, "projection has no lattice points");
    std::vector<Q> f, fd;
    for (const auto& y : lattice_points(P, 0).points) f.push_back(vertical_section(K, y)->length() / 2);
    for (const auto& y : lattice_points(P, d).points) fd.push_back(*diamond_extension(K, y).exact);
    auto sum_pow = [](const std::vector<Q>& v, unsigned e) {
        Q s = 0;
        for (const auto& x : v) s += qpow(x, e);
        return s;
    };
    std::vector<Comparison> cs;
    for (const auto& [ps, qs] : prm.pairs) {
        double p = resolve_exponent(ps, n), q = resolve_exponent(qs, n);
        if (!(p > 0 && p < q) || !detail::small_integer(p) || !detail::small_integer(q))
            throw Error(Errc::ExponentOutOfRange, "discrete Berwald needs integer 0 < p < q");
        unsigned ip = static_cast<unsigned>(p), iq = static_cast<unsigned>(q);
        Q lq = binom(d + iq, d) / Q(gp) * sum_pow(f, iq);
        Q rp = binom(d + ip, d) / Q(gp) * sum_pow(fd, ip);
        Comparison c{detail::root_value(lq, iq), detail::root_value(rp, ip)};
        c.decided = detail::root_le(lq, iq, rp, ip);
        c.context = {{"p", p}, {"q", q}};
        detail::note_anchor(c.context, A);
        cs.push_back(std::move(c));
    }
    return detail::report("berwald_discrete", prm, cs, {{"projection_lattice", gp}, {"extension_points", fd.size()}});
}

inline InequalityReport completely_discrete_berwald(const Polytope& K0, const CheckParams& prm) {
    const std::string id = "completely_discrete_berwald";
    auto A = detail::anchored(K0);
    const Polytope& K = A.body;
    const int n = K.dim;
    SectionProfiles sp;
    try {
        sp = section_profiles(K);
    } catch (const Error& e) {
        if (e.code() == Errc::EmptyProjectionLattice) return detail::precondition(id, prm, e.what());
        throw;
    }
    auto H = hypotheses(sp);
    if (!H.satisfied) return detail::precondition(id, prm, H.M < 1 ? "hypotheses (H): M = 0" : "hypotheses (H): column count not maximal at 0");
    const Q G(sp.g_proj);
    std::map<unsigned, M0Result> m0s;
    std::map<unsigned, long long> r0s;
    std::vector<Comparison> cs;
    json extra = json::object();
    try {
        for (const auto& [ps, qs] : prm.pairs) {
            double p = resolve_exponent(ps, n), q = resolve_exponent(qs, n);
            if (!(p >= 1 && p < q) || !detail::small_integer(p) || !detail::small_integer(q))
                throw Error(Errc::ExponentOutOfRange, "completely discrete Berwald needs integer 1 <= p < q");
            unsigned ip = static_cast<unsigned>(p), iq = static_cast<unsigned>(q);
            if (!m0s.count(ip)) {
                m0s[ip] = solve_m0(sp, p);
                long long ks = crossing_point(sp, m0s[ip]);
                if (!crossing_holds(sp, m0s[ip], ks)) throw Error(Errc::NoCrossing, "crossing point failed re-verification");
                r0s[ip] = ks;
            }
            const M0Result& m0 = m0s[ip];
            Q sq = 0, sp_ = 0;
            for (long long k = 0; k < static_cast<long long>(sp.f.size()); ++k) {
                sq += Q(iq) * detail::kpow_q(k, iq - 1) * Q(sp.f[k]);
                sp_ += Q(ip) * detail::kpow_q(k, ip - 1) * Q(sp.f_tilde[k]);
            }
            Comparison c;
            c.context = {{"p", p}, {"q", q}, {"m0", m0.value}, {"r0", r0s[ip]}, {"M", sp.M}};
            detail::note_anchor(c.context, A);
            if (m0.exact) {
                Q lq = sq / (G * B_coeff_q(*m0.exact, iq, n)), rp = sp_ / (G * B_coeff_q(*m0.exact, ip, n));
                c.lhs = detail::root_value(lq, iq);
                c.rhs = detail::root_value(rp, ip);
                c.decided = detail::root_le(lq, iq, rp, ip);
                c.context["m0_exact"] = to_string(*m0.exact);
            } else {
                double lq = to_double(sq) / (to_double(G) * B_coeff(m0.value, q, n));
                double rp = to_double(sp_) / (to_double(G) * B_coeff(m0.value, p, n));
                c.lhs = detail::approx_rel(std::pow(lq, 1.0 / q), 1e-9);
                c.rhs = detail::approx_rel(std::pow(rp, 1.0 / p), 1e-9);
            }
            c.context["rhs_minus_m0"] = std::abs(c.rhs.value - m0.value);
            cs.push_back(std::move(c));
        }
    } catch (const Error& e) {
        if (e.code() != Errc::NoRoot && e.code() != Errc::NoCrossing) throw;
        InequalityReport r;
        r.id = id;
        r.body = prm.body_name;
        r.verdict = Verdict::Fails;
        r.context = {{"hard_failure", errc_name(e.code())}, {"message", e.what()}};
        return r;
    }
    return detail::report(id, prm, cs, extra);
}

inline InequalityReport zhang_volume(const Polytope& K, const CheckParams& prm) {
    const int n = K.dim;
    if (n != 2 && n != 3) throw Error(Errc::DimensionMismatch, "polar projection volume for n = 2, 3");
    const auto fm = facet_measures(K);
    auto rho = [&](const std::vector<double>& u) { return 1.0 / cauchy_sum(fm, u); };
    StarVolume sv = n == 2 ? star_volume_2d(rho, kink_angles(K), prm.planar_volume_nodes << prm.extra_order)
                           : star_volume_3d(rho, prm.spatial_polar << prm.extra_order);
    double vn = std::pow(to_double(volume_q(K)), n - 1);
    Comparison c{MeasureValue::of(detail::zhang_constant(n)),
                 MeasureValue::approx(sv.value.value * vn, sv.value.abs_error * vn, false)};
    c.context = {{"polar_projection_volume", to_json(sv.value)}, {"nodes", sv.nodes}};
    return detail::report("zhang_volume", prm, c);
}

inline InequalityReport different_inclusion(const Polytope& K, const CheckParams& prm) {
    const int n = K.dim;
    auto C = chord_cells(K);
    Q vp = volume_q(project_drop_last(K));
    std::vector<unsigned> grid;
    for (const auto& t : prm.inclusion_grid) {
        double p = resolve_exponent(t, n);
        if (!detail::small_integer(p)) throw Error(Errc::ExponentOutOfRange, "inclusion grid needs integers >= 0");
        grid.push_back(static_cast<unsigned>(p));
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    std::map<unsigned, Q> X;
    for (unsigned p : grid) X[p] = binom(n + p, n) * Q(n) * chord_integral_q(C, p + 1) / Q(p + 1) / vp;
    std::vector<Comparison> cs;
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = i + 1; j < grid.size(); ++j) {
            unsigned p = grid[i], q = grid[j];
            Comparison c{detail::root_value(X[q], q + 1), detail::root_value(X[p], p + 1)};
            c.decided = detail::root_le(X[q], q + 1, X[p], p + 1);
            c.context = {{"p", p}, {"q", q}};
            cs.push_back(std::move(c));
        }
    return detail::report("different_inclusion", prm, cs);
}

inline InequalityReport mu_gn_sandwich(const Polytope& K, const CheckParams& prm) {
    long long g = count_lattice(K, 0), gp = count_lattice(project_drop_last(K), 0);
    Q mu = mu_q(K);
    Comparison lo{MeasureValue::of(Q(g - gp)), MeasureValue::of(mu)}, hi{MeasureValue::of(mu), MeasureValue::of(Q(g + gp))};
    lo.context = {{"side", "lower"}};
    hi.context = {{"side", "upper"}};
    return detail::report("mu_gn_sandwich", prm, std::vector<Comparison>{lo, hi},
                          {{"lattice", g}, {"projection_lattice", gp}, {"mu", to_string(mu)}});
}

inline InequalityReport identity_triple_continuous(const Polytope& K, const CheckParams& prm) {
    const int n = K.dim;
    auto C = chord_cells(K);
    Polytope S = steiner_symmetrize(K);
    RayFit F = ray_fit(K, C);
    std::vector<Comparison> cs;
    double worst_ratio = -1;
    std::size_t worst_i = 0;
    for (const auto& t : prm.moments) {
        double p = resolve_exponent(t, n);
        MeasureValue a = projection_power_moment(C, p), b = symmetral_slab_moment(S, p), r = ray_quadrature_moment(F, p, prm.extra_order);
        double hi = std::max({a.value, b.value, r.value}), lo = std::min({a.value, b.value, r.value});
        double spread = hi - lo;
        double tol = std::max(prm.identity_rel * std::abs(hi), a.abs_error + b.abs_error + r.abs_error);
        bool exact_agree = !(a.exact && b.exact) || *a.exact == *b.exact;
        Comparison c{MeasureValue::approx(spread, 0), MeasureValue::approx(tol, 0)};
        c.decided = exact_agree && spread <= tol;
        c.context = {{"p", p}, {"projection_power", to_json(a)}, {"symmetral_slab", to_json(b)}, {"ray_quadrature", to_json(r)}};
        double ratio = tol > 0 ? spread / tol : (spread > 0 ? INFINITY : 0);
        if (!*c.decided) ratio = INFINITY;
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            worst_i = cs.size();
        }
        cs.push_back(std::move(c));
    }
    InequalityReport r = detail::report("identity_triple_continuous", prm, cs[worst_i]);
    r.context["checked"] = cs.size();
    return r;
}

inline InequalityReport identity_triple_discrete(const Polytope& K, const CheckParams& prm) {
    const int n = K.dim;
    std::vector<Q> lens;
    for_each_column(open_cube_system(K, 0), [&](const Vec&, const Interval& I) { lens.push_back(I.length()); });
    std::vector<Q> bps{Q(0)};
    for (const auto& l : lens) bps.push_back(l);
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    // mu(K cap (r e_n + K)) is affine between consecutive chord lengths
    std::vector<std::pair<Q, Q>> affine;  // c0 + c1 r on [bps[s], bps[s+1]]
    auto mu_at = [&](const Q& r) {
        Vec shift(n, Q(0));
        shift[n - 1] = r;
        auto I = intersect(K, translate(K, shift));
        return I ? mu_q(*I) : Q(0);
    };
    for (std::size_t s = 0; s + 1 < bps.size(); ++s) {
        Q a = bps[s] + (bps[s + 1] - bps[s]) / 3, b = bps[s] + 2 * (bps[s + 1] - bps[s]) / 3;
        Q ma = mu_at(a), mb = mu_at(b);
        Q c1 = (mb - ma) / (b - a);
        affine.emplace_back(ma - c1 * a, c1);
    }
    Polytope S = steiner_symmetrize(K);
    StrictSystem SS = open_cube_system(S, 0);
    std::vector<Comparison> cs;
    for (const auto& t : prm.moments) {
        double pd = resolve_exponent(t, n);
        if (!detail::small_integer(pd) || pd < 1) throw Error(Errc::ExponentOutOfRange, "discrete identities need integer p >= 1");
        unsigned p = static_cast<unsigned>(pd);
        Q e1 = 0, e2 = 0, e3 = 0;
        for (const auto& l : lens) e1 += qpow(l, p + 1) / Q(p + 1);
        for (std::size_t s = 0; s + 1 < bps.size(); ++s) {
            const Q &a = bps[s], &b = bps[s + 1];
            e2 += affine[s].first * (qpow(b, p) - qpow(a, p)) + affine[s].second * Q(p) / Q(p + 1) * (qpow(b, p + 1) - qpow(a, p + 1));
        }
        for_each_column(SS, [&](const Vec&, const Interval& I) {
            Q half = I.length() / 2;
            e3 += Q(2) * qpow(half, p + 1) / Q(p + 1);
        });
        e3 *= qpow(Q(2), p);
        Q hi = std::max({e1, e2, e3}), lo = std::min({e1, e2, e3});
        Comparison c{MeasureValue::of(hi - lo), MeasureValue::of(Q(0))};
        c.context = {{"p", p}, {"column_sum", to_string(e1)}, {"ray_integral", to_string(e2)}, {"symmetral_sum", to_string(e3)}};
        cs.push_back(std::move(c));
    }
    return detail::report("identity_triple_discrete", prm, cs);
}

inline InequalityReport ball_inclusion_discrete(const Polytope& K, const CheckParams& prm) {
    const std::string id = "ball_inclusion_discrete";
    if (!origin_in(K)) return detail::precondition(id, prm, "0 is not in K");
    const int n = K.dim;
    RayField closed(K, false), open(K, true);
    const double G = static_cast<double>(closed.size());
    std::vector<std::pair<double, double>> pairs;
    for (const auto& [ps, qs] : prm.pairs) pairs.emplace_back(resolve_exponent(ps, n), resolve_exponent(qs, n));
    std::vector<Comparison> cs;
    for (const auto& u : detail::sample_directions(K, prm)) {
        auto bc = closed.reach(u), bo = open.reach(u);
        for (auto [p, q] : pairs) {
            double sq = 0, sp = 0;
            for (double b : bc) sq += std::pow(b, q);
            for (double b : bo) sp += std::pow(b, p);
            double lhs = std::pow(detail::binom_d(n, q), 1.0 / q) * std::pow(sq / G, 1.0 / q);
            double rhs = std::pow(detail::binom_d(n, p) * sp / G, 1.0 / p);
            Comparison c{detail::approx_rel(lhs, 1e-12), detail::approx_rel(rhs, 1e-12)};
            c.context = {{"direction", u}, {"p", p}, {"q", q}};
            cs.push_back(std::move(c));
        }
    }
    return detail::report(id, prm, cs, {{"lattice", closed.size()}, {"open_lattice", open.size()}});
}

inline InequalityReport convexhull_inclusion(const Polytope& K, const CheckParams& prm) {
    const std::string id = "convexhull_inclusion";
    if (!origin_in(K)) return detail::precondition(id, prm, "0 is not in K");
    const int n = K.dim;
    RayField closed(K, false), open(K, true);
    const double G = static_cast<double>(closed.size());
    auto dirs = detail::sample_directions(K, prm);
    std::mt19937_64 rng(prm.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, dirs.size() - 1);
    std::vector<Comparison> cs;
    for (const auto& t : prm.moments) {
        double p = resolve_exponent(t, n);
        auto radial = [&](const RayField& F, const std::vector<double>& u) { return std::pow(F.moment(u, p) / G, 1.0 / p); };
        std::vector<std::vector<double>> pts;
        for (const auto& u : dirs) {
            double r = radial(closed, u);
            std::vector<double> x(u);
            for (double& c : x) c *= r;
            pts.push_back(std::move(x));
        }
        auto test = [&](std::size_t i, std::size_t j, double lam) {
            std::vector<double> z(n);
            double nz = 0;
            for (int k = 0; k < n; ++k) {
                z[k] = lam * pts[i][k] + (1 - lam) * pts[j][k];
                nz += z[k] * z[k];
            }
            nz = std::sqrt(nz);
            if (nz < 1e-12) return;
            for (double& c : z) c /= nz;
            Comparison c{detail::approx_rel(nz, 1e-12), detail::approx_rel(radial(open, z), 1e-12)};
            c.context = {{"p", p}, {"direction", z}, {"lambda", lam}};
            cs.push_back(std::move(c));
        };
        for (std::size_t i = 0; i < pts.size(); ++i) test(i, (i + 1) % pts.size(), 0.5);
        for (std::size_t s = 0; s < pts.size(); ++s) {
            std::size_t i = pick(rng), j = pick(rng);
            test(i, j, unit(rng));
        }
    }
    return detail::report(id, prm, cs);
}

inline InequalityReport difference_set_inclusion(const Polytope& K, const CheckParams& prm) {
    const std::string id = "difference_set_inclusion";
    if (!origin_in(K)) return detail::precondition(id, prm, "0 is not in K");
    const int n = K.dim;
    RayField closed(K, false), open(K, true);
    const double G = static_cast<double>(closed.size());
    std::vector<double> ps;
    for (const auto& t : prm.moments) ps.push_back(resolve_exponent(t, n));
    std::vector<Comparison> cs;
    for (const auto& u : detail::sample_directions(K, prm)) {
        double lhs = closed.max_reach(u);
        auto bo = open.reach(u);
        for (double p : ps) {
            double s = 0;
            for (double b : bo) s += std::pow(b, p);
            double rhs = std::pow(detail::binom_d(n, p) * s / G, 1.0 / p);
            Comparison c{detail::approx_rel(lhs, 1e-12), detail::approx_rel(rhs, 1e-12)};
            c.context = {{"direction", u}, {"p", p}};
            cs.push_back(std::move(c));
        }
    }
    return detail::report(id, prm, cs);
}

inline InequalityReport volume_identity_discrete(const Polytope& K, const CheckParams& prm) {
    const std::string id = "volume_identity_discrete";
    if (!origin_in(K)) return detail::precondition(id, prm, "0 is not in K");
    const int n = K.dim;
    if (n != 2 && n != 3) throw Error(Errc::DimensionMismatch, "star volumes for n = 2, 3");
    RayField closed(K, false);
    const double G = static_cast<double>(closed.size());
    const double vol = to_double(volume_q(K));
    const double tol = n == 2 ? prm.planar_volume_tol : prm.spatial_volume_tol;
    auto discrete_rho = [&](const std::vector<double>& u) { return std::pow(closed.moment(u, n) / G, 1.0 / n); };
    std::vector<Comparison> cs;
    auto add = [&](const char* body, const StarVolume& sv) {
        double dev = std::abs(sv.value.value - vol) / vol;
        Comparison c{MeasureValue::approx(dev, 0), MeasureValue::approx(tol, 0)};
        c.decided = dev <= tol;
        c.context = {{"ball_body", body}, {"star_volume", to_json(sv.value)}, {"volume", vol}, {"nodes", sv.nodes}};
        cs.push_back(std::move(c));
    };
    if (n == 2) {
        const int nodes = prm.planar_volume_nodes << prm.extra_order;
        add("discrete", star_volume_2d(discrete_rho, kink_angles(K, closed.points()), nodes));
        add("continuous", star_volume_2d([&](const std::vector<double>& u) { return radial_Rp_2d(K, u, 2).value; }, kink_angles(K), nodes));
    } else {
        add("discrete", star_volume_3d(discrete_rho, prm.spatial_polar << prm.extra_order));
    }
    return detail::report(id, prm, cs);
}

inline InequalityReport one_point_collapse(const Polytope& K, const CheckParams& prm) {
    const std::string id = "one_point_collapse";
    if (!origin_in(K) || count_lattice(K, 0) != 1) return detail::precondition(id, prm, "K cap Z^n is not {0}");
    const int n = K.dim;
    std::vector<Vec> dirs;
    std::vector<long long> cur(n, -2);
    for (;;) {
        Vec v;
        for (long long c : cur) v.push_back(Q(c));
        if (!is_zero(v) && primitive(v) == v) dirs.push_back(v);
        int i = n - 1;
        while (i >= 0 && cur[i] == 2) cur[i--] = -2;
        if (i < 0) break;
        ++cur[i];
    }
    std::vector<Comparison> cs;
    for (const auto& u : dirs) {
        Direction th(u);
        auto D = ray_decomposition(K, th, false);
        Q b0 = D.entries.empty() ? Q(0) : D.entries.front().r.hi;
        // radial of -K in raw units
        std::optional<Q> neg;
        for (const auto& h : K.halfspaces) {
            Q at = dot(h.a, u);
            if (at >= 0) continue;
            Q r = h.b / (-at);
            if (!neg || r < *neg) neg = r;
        }
        for (const auto& t : prm.moments) {
            double pd = resolve_exponent(t, n);
            if (!detail::small_integer(pd) || pd < 1) throw Error(Errc::ExponentOutOfRange, "collapse check needs integer p");
            unsigned p = static_cast<unsigned>(pd);
            Q moment = 0;
            for (const auto& e : D.entries) moment += qpow(e.r.hi, p) - qpow(e.r.lo, p);
            Q diff = qabs(moment - qpow(*neg, p));
            Comparison c{MeasureValue::of(diff), MeasureValue::of(Q(0))};
            c.context = {{"direction", to_json(u)}, {"p", p}, {"radial_raw", to_string(b0)}, {"negative_body_raw", to_string(*neg)}};
            cs.push_back(std::move(c));
        }
    }
    return detail::report(id, prm, cs);
}

}  // namespace checks

// ---- registry ----

using CheckFn = InequalityReport (*)(const Polytope&, const CheckParams&);

struct CheckerInfo {
    std::string id;
    std::string paper_ref;
    CheckFn fn;
};

inline const std::vector<CheckerInfo>& registry() {
    static const std::vector<CheckerInfo> reg{
        {"zhang_preintegration", "continuous pre-integration form of Zhang's inequality along e_n", checks::zhang_preintegration},
        {"zhang_preintegration_2", "pre-integration form written as a moment of the Steiner symmetral", checks::zhang_preintegration_2},
        {"zhang_directional", "pre-integration form along rational directions via a unimodular-type map", checks::zhang_directional},
        {"discrete_zhang_mu", "discrete Zhang inequality for the column measure mu", checks::discrete_zhang_mu},
        {"lattice_zhang", "Zhang-type bound involving only lattice point counts", checks::lattice_zhang},
        {"purely_discrete_zhang", "purely discrete Zhang inequality with B_m0 coefficients", checks::purely_discrete_zhang},
        {"berwald_continuous", "Berwald reverse Hoelder chain for the section-length function", checks::berwald_continuous},
        {"berwald_discrete", "lattice Berwald inequality with the cube-fattened extension", checks::berwald_discrete},
        {"completely_discrete_berwald", "completely discrete Berwald inequality for section counts", checks::completely_discrete_berwald},
        {"zhang_volume", "Zhang's inequality for the polar projection body", checks::zhang_volume},
        {"different_inclusion", "monotone chain of radial power bounds for p >= 0", checks::different_inclusion},
        {"mu_gn_sandwich", "mu against lattice counts of the body and its projection", checks::mu_gn_sandwich},
        {"identity_triple_continuous", "three continuous routes to the e_n ray moment agree", checks::identity_triple_continuous},
        {"identity_triple_discrete", "three discrete expressions for the mu ray moment agree", checks::identity_triple_discrete},
        {"ball_inclusion_discrete", "inclusion between Ball bodies of the discrete covariogram", checks::ball_inclusion_discrete},
        {"convexhull_inclusion", "convex hull of a discrete Ball body inside the fattened one", checks::convexhull_inclusion},
        {"difference_set_inclusion", "lattice difference set inside the fattened Ball body", checks::difference_set_inclusion},
        {"volume_identity_discrete", "volume of the degree-n Ball body equals the volume of K", checks::volume_identity_discrete},
        {"one_point_collapse", "Ball bodies collapse to -K when the lattice set is the origin", checks::one_point_collapse},
    };
    return reg;
}

inline const CheckerInfo& checker(const std::string& id) {
    for (const auto& c : registry())
        if (c.id == id) return c;
    throw Error(Errc::UnknownChecker, "unknown checker " + id);
}

inline InequalityReport verify(const std::string& id, const Polytope& K, const CheckParams& params = {}) {
    const CheckerInfo& info = checker(id);
    InequalityReport r;
    try {
        if (!K.full()) throw Error(Errc::DegenerateBody, "checkers need a full-dimensional body");
        r = info.fn(K, params);
    } catch (const Error& e) {
        switch (e.code()) {
            case Errc::OriginMissing:
            case Errc::EmptyProjectionLattice:
            case Errc::HypothesesViolated:
                r = detail::precondition(id, params, e.what());
                break;
            case Errc::NoRoot:
            case Errc::NoCrossing:
                r.id = id;
                r.body = params.body_name;
                r.verdict = Verdict::Fails;
                r.context = {{"hard_failure", errc_name(e.code())}, {"message", e.what()}};
                break;
            default:
                throw;
        }
    }
    r.id = id;
    r.paper_ref = info.paper_ref;
    return r;
}

// ---- scaling sweeps ----

struct SweepPoint {
    double scale = 0, value = 0, reference = 0, rel_error = 0;
    std::string quantity;
};

struct SweepOptions {
    double p = 1;
};

inline const std::vector<std::string>& sweep_targets() {
    static const std::vector<std::string> t{"gn_volume", "mu_volume", "discrete_to_continuous_zhang", "purely_discrete_to_continuous", "B_limit"};
    return t;
}

inline std::vector<SweepPoint> limit_sweep(const Polytope& K0, const std::string& target, const std::vector<double>& scales, const SweepOptions& opt = {}) {
    if (std::find(sweep_targets().begin(), sweep_targets().end(), target) == sweep_targets().end())
        throw Error(Errc::ConfigError, "unknown sweep target " + target);
    for (std::size_t i = 1; i < scales.size(); ++i)
        if (!(scales[i] > scales[i - 1])) throw Error(Errc::ConfigError, "sweep scales must increase");
    const int n = K0.dim;
    std::vector<SweepPoint> out;
    auto push = [&](double lam, double v, double ref, const char* what) {
        out.push_back({lam, v, ref, std::abs(v - ref) / std::abs(ref), what});
    };
    if (target == "B_limit") {
        const double ref = 1.0 / binom_real(n - 1, opt.p);
        for (double x : scales) push(x, B_coeff(x, opt.p, n), ref, "B");
        return out;
    }
    const Q vol = volume_q(K0);
    if (target == "gn_volume" || target == "mu_volume") {
        for (double lam : scales) {
            Q l(lam);
            Polytope L = scale_body(K0, l);
            Q v = target == "gn_volume" ? Q(count_lattice(L, 0)) : mu_q(L);
            push(lam, to_double(v / qpow(l, n)), to_double(vol), target == "gn_volume" ? "lattice" : "mu");
        }
        return out;
    }
    const Polytope K = detail::anchored(K0).body;
    const Q Z = detail::zhang_constant(n);
    const Polytope P = project_drop_last(K);
    const Q vp = volume_q(P);
    const double lhs_ref = to_double(Z * chord_integral_q(chord_cells(K), n + 1) / Q(n + 1));
    const double rhs_ref = to_double(qpow(vol, n + 1) / qpow(vp, n));
    const Polytope S = steiner_symmetrize(K);
    for (double lam : scales) {
        Q l(lam);
        Polytope L = scale_body(K, l), LP = scale_body(P, l), LS = scale_body(S, l);
        Q l2n = qpow(l, 2 * n);
        Q gp(count_lattice(LP, 0));
        if (target == "discrete_to_continuous_zhang") {
            Q mu_lhs = Z * detail::column_power_sum(L, n + 1) / Q(n + 1) / l2n;
            Q mu_rhs = qpow(detail::open_column_length_sum(LS, n - 1), n + 1) / (l2n * qpow(gp, n));
            Q g_lhs = Z * (detail::lattice_height_sum(L, n) - detail::column_power_sum(L, n)) / l2n;
            Q g_rhs = qpow(Q(count_lattice(L, n - 1) + count_lattice(LP, n - 1)), n + 1) / (l2n * qpow(gp, n));
            push(lam, to_double(mu_lhs), lhs_ref, "lhs");
            push(lam, to_double(mu_rhs), rhs_ref, "rhs");
            push(lam, to_double(g_lhs), lhs_ref, "lattice_lhs");
            push(lam, to_double(g_rhs), rhs_ref, "lattice_rhs");
        } else {
            SectionProfiles sp = section_profiles(L);
            Q rhs = qpow(Q(count_lattice(LS, n - 1) + count_lattice(LP, n - 1)), n + 1) / (l2n * qpow(gp, n));
            double lhs = 0;
            if (sp.M > 0 && hypotheses(sp).satisfied) {
                M0Result m0 = solve_m0(sp, 1);
                Q moment = detail::symmetral_lattice_moment(sp, n);
                if (m0.exact) {
                    lhs = to_double(Q(n + 1) * qpow(B_coeff_q(*m0.exact, 1, n), n + 1) / B_coeff_q(*m0.exact, n + 1, n) * moment / l2n);
                } else {
                    lhs = (n + 1) * std::pow(B_coeff(m0.value, 1, n), n + 1) / B_coeff(m0.value, n + 1, n) * to_double(moment / l2n);
                }
            }
            push(lam, lhs, lhs_ref, "lhs");
            push(lam, to_double(rhs), rhs_ref, "rhs");
        }
    }
    return out;
}

}  // namespace zhang
