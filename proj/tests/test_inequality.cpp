#include "support.hpp"

#include <catch_amalgamated.hpp>

using namespace fx;

namespace {

SectionProfiles profiles_of(const Polytope& K) { return section_profiles(detail::anchored(K).body); }

// direct scan of both crossing inequalities, independent of crossing_holds
bool crossing_scan(const SectionProfiles& sp, double m, long long ks) {
    const int n = sp.body.dim;
    const double G = static_cast<double>(sp.g_proj);
    auto g = [&](long long k) { return k <= m ? std::pow(1 - k / m, n - 1) * G : 0.0; };
    const long long last = static_cast<long long>(std::ceil(m)) + 2;
    for (long long k = 0; k < ks; ++k)
        if (g(k) > sp.ft_at(k) + 1e-9) return false;
    for (long long k = ks; k <= last; ++k)
        if (g(k) < sp.f_at(k) - 1e-9) return false;
    return true;
}

}  // namespace

TEST_CASE("B_m(p) and h_p examples") {
    CHECK(B_coeff(0.5, 1, 2) == Catch::Approx(2.0));
    CHECK(B_coeff(0.5, 2, 2) == 0.0);
    CHECK(B_coeff(0.5, 2, 3) == 0.0);
    CHECK(B_coeff(2, 1, 2) == Catch::Approx(0.75));
    CHECK(B_coeff_q(q(2), 1, 2) == q(3, 4));
    for (double x : {0.1, 0.5, 1.0}) {
        CHECK(h_func(x, 1, 2) == Catch::Approx(1.0));
        CHECK(h_func(x, 1, 3) == Catch::Approx(1.0));
        CHECK(h_func(x, 2, 2) == 0.0);
    }
    CHECK(h_func(3, 1, 2) == Catch::Approx(2.0));
    CHECK(h_func_q(q(3), 1, 2) == 2);
    CHECK(B_coeff_q(q(3), 3, 2) == q(2, 9));
    CHECK(B_coeff_q(q(3), 1, 2) == q(2, 3));
    CHECK_THROWS_AS(h_func(0, 1, 2), Error);
    CHECK_THROWS_AS(h_func(1, 0.5, 2), Error);
}

TEST_CASE("B_x(p) tends to 1/C(n-1+p, n-1)") {
    // closed form for n = 2, p = 1: B_x(1) = (floor x + 1)(1 - floor x / (2x)) / x
    for (double x : {10.0, 1000.0, 12345.5}) {
        double fx_ = std::floor(x);
        CHECK(B_coeff(x, 1, 2) == Catch::Approx((fx_ + 1) * (1 - fx_ / (2 * x)) / x).epsilon(1e-12));
    }
    CHECK(std::abs(B_coeff(1000, 1, 2) - 0.5005) < 1e-12);
    CHECK(std::abs(B_coeff(1e4, 1, 2) - 0.5) < 1e-3);
    CHECK(std::abs(B_coeff(1e4, 2, 2) - 1.0 / 3) < 1e-3);
    CHECK(std::abs(B_coeff(1e4, 1, 3) - 1.0 / 3) < 1e-3);
    // h_p is nondecreasing
    double prev = 0;
    for (double x = 0.25; x < 20; x += 0.25) {
        double h = h_func(x, 2, 3);
        CHECK(h >= prev - 1e-12);
        prev = h;
    }
}

TEST_CASE("section profile examples") {
    auto a = profiles_of(square11());
    CHECK(a.f == std::vector<long long>{3, 3});
    CHECK(a.f_tilde == std::vector<long long>{3, 3});
    CHECK(a.M == 1);
    CHECK(a.g_proj == 3);

    auto b = profiles_of(unit_square());
    CHECK(b.M == 0);
    CHECK(b.f_at(0) == 2);
    CHECK_FALSE(hypotheses(b).satisfied);

    auto c = profiles_of(standard_simplex(2, q(2)));
    CHECK(c.f_at(0) == 3);
    CHECK(c.f_at(1) == 1);
    CHECK(c.M == 1);
    CHECK(hypotheses(c).satisfied);
}

TEST_CASE("section profile invariants on the corpus") {
    for (const auto& [name, K] : corpus()) {
        INFO(name);
        auto sp = profiles_of(K);
        for (long long k = 0; k <= floor_z(sp.support_bound).convert_to<long long>() + 2; ++k) {
            CHECK(sp.f_at(k) <= sp.ft_at(k));
            if (k > sp.M) CHECK(sp.f_at(k) == 0);
            if (Q(k) > sp.support_bound) CHECK(sp.ft_at(k) == 0);
        }
        // f(k) against a direct count of lattice points of the symmetral with |x_n| >= k
        for (long long k = 0; k <= sp.M; ++k) {
            long long direct = 0;
            for (const auto& x : lattice_points(sp.symmetral).points)
                if (x.back() == Q(k)) ++direct;
            CHECK(sp.f_at(k) == direct);
        }
        auto H = hypotheses(sp);
        CHECK(H.satisfied == (H.max_at_zero_column && H.M >= 1));
    }
}

TEST_CASE("diamond extension examples") {
    CHECK(*diamond_extension(T2(), {q(-1)}).exact == q(1, 2));
    CHECK(*diamond_extension(T2(), {q(2)}).exact == 0);
    CHECK(*diamond_extension(square11(), {q(0)}).exact == 1);
    CHECK(*diamond_extension(T2(), {q(5)}).exact == 0);
}

TEST_CASE("diamond extension matches a vertex scan of the window") {
    // the longest chord over a window is attained on the window's boundary columns or at a vertex column
    for (const auto& [name, K] : corpus()) {
        if (K.dim != 2) continue;
        INFO(name);
        for (long long x = -3; x <= 3; ++x) {
            std::vector<Q> ys{Q(x - 1), Q(x + 1)};
            for (const auto& v : K.vertices)
                if (qabs(v[0] - Q(x)) <= 1) ys.push_back(v[0]);
            Q best = 0;
            for (const auto& y : ys)
                if (auto s = vertical_section(K, {y})) best = std::max(best, s->length());
            CHECK(*diamond_extension(K, {Q(x)}).exact == best / 2);
        }
    }
}

TEST_CASE("m0 examples") {
    auto sp = profiles_of(square11());
    auto m = solve_m0(sp, 1);
    REQUIRE(m.exact);
    CHECK(*m.exact == 3);
    CHECK(std::abs(m.bisection - 3) < 1e-12);
    CHECK(m.value > 1);
    CHECK(m.value >= sp.M);
    CHECK(h_func(m.value, 1, 2) == Catch::Approx(m.target));

    auto big = profiles_of(scale_body(square11(), q(2)));
    CHECK(big.M == 2);
    auto mb = solve_m0(big, 1);
    CHECK(mb.value >= 2);
    CHECK(h_func(mb.value, 1, 2) >= mb.target - 1e-9);

    CHECK_THROWS_AS(solve_m0(profiles_of(unit_square()), 1), Error);
}

TEST_CASE("m0 solves h(m) = target with the bisection as oracle") {
    for (const auto& [name, K] : corpus()) {
        auto sp = profiles_of(K);
        if (!hypotheses(sp).satisfied) continue;
        INFO(name);
        for (double p : {1.0, 2.0, 3.0}) {
            auto m = solve_m0(sp, p);
            CHECK(std::abs(m.value - m.bisection) <= 1e-9 * m.value);
            CHECK(h_func(m.value, p, K.dim) >= m.target * (1 - 1e-9));
            CHECK(h_func(m.value * (1 - 1e-7), p, K.dim) < m.target + 1e-9);
            CHECK(m.value >= sp.M);
        }
    }
}

TEST_CASE("crossing point examples") {
    auto sp = profiles_of(square11());
    auto m = solve_m0(sp, 1);
    CHECK(crossing_point(sp, m) == 2);
    CHECK(crossing_scan(sp, m.value, 2));
    CHECK_FALSE(crossing_scan(sp, m.value, 1));

    auto t = profiles_of(standard_simplex(2, q(2)));
    auto mt = solve_m0(t, 1);
    long long ks = crossing_point(t, mt);
    CHECK(ks >= 0);
    CHECK(ks <= static_cast<long long>(std::ceil(mt.value)) + 1);
    CHECK(crossing_scan(t, mt.value, ks));
}

TEST_CASE("crossing points verified by an independent scan on the corpus") {
    for (const auto& [name, K] : corpus()) {
        auto sp = profiles_of(K);
        if (!hypotheses(sp).satisfied) continue;
        INFO(name);
        for (double p : {1.0, 2.0}) {
            auto m = solve_m0(sp, p);
            long long ks = crossing_point(sp, m);
            CHECK(crossing_scan(sp, m.value, ks));
        }
    }
}

TEST_CASE("verify examples") {
    auto dz = verify("discrete_zhang_mu", square11());
    CHECK(*dz.lhs.exact == 12);
    CHECK(*dz.rhs.exact == 24);
    CHECK(dz.verdict == Verdict::Holds);

    auto pz = verify("purely_discrete_zhang", square11());
    CHECK(*pz.lhs.exact == 96);
    CHECK(*pz.rhs.exact == 192);
    CHECK(pz.verdict == Verdict::Holds);
    CHECK(pz.context["m0_exact"] == "3");
    CHECK(std::abs(pz.context["m0"].get<double>() - 3) <= 1e-12);

    auto zv = verify("zhang_volume", T2());
    CHECK(*zv.lhs.exact == q(3, 2));
    CHECK(std::abs(zv.rhs.value - 1.5) / 1.5 <= 2e-3);
    CHECK(zv.verdict == Verdict::Holds);

    auto zp = verify("zhang_preintegration", unit_square());
    CHECK(*zp.lhs.exact == q(1, 2));
    CHECK(*zp.rhs.exact == 1);
    CHECK(zp.verdict == Verdict::Holds);

    auto sw = verify("mu_gn_sandwich", square02());
    CHECK(sw.verdict == Verdict::Holds);
    CHECK(sw.context["mu"] == "6");
    CHECK(sw.context["lattice"] == 9);
    CHECK(sw.context["projection_lattice"] == 3);
    CHECK(sw.slack == 0.0);
}

TEST_CASE("Berwald examples") {
    auto cb = verify("completely_discrete_berwald", square11());
    CHECK(cb.verdict == Verdict::Holds);
    CHECK(cb.context["m0_exact"] == "3");
    CHECK(cb.context["rhs_minus_m0"].get<double>() <= 1e-10);

    // equality case: affine section function on T gives a flat chain
    auto bc = verify("berwald_continuous", T2());
    CHECK(bc.verdict == Verdict::Holds);
    for (const auto& c : bc.context["chain"]) CHECK(std::abs(c["mean"]["value"].get<double>() - 1) <= 1e-8);
    for (const auto& c : bc.context["chain"])
        if (c["p"].get<double>() > 0) CHECK(std::abs(c["mean"]["value"].get<double>() - 1) <= 1e-12);

    CheckParams one;
    one.pairs = {{"1", "2"}};
    auto bd = verify("berwald_discrete", square11(), one);
    CHECK(bd.lhs.value == Catch::Approx(std::sqrt(3.0)).epsilon(1e-14));
    CHECK(bd.rhs.value == Catch::Approx(2.0).epsilon(1e-14));
    CHECK(bd.verdict == Verdict::Holds);
}

TEST_CASE("Ball body inclusion examples") {
    auto e1 = Direction::axis(2, 0);
    Polytope K = unit_square();
    double lhs = std::sqrt(binom_real(2, 2)) * radial_ball_body(Source::Discrete, K, e1, 2).value;
    double rhs = binom_real(2, 1) * radial_ball_body(Source::DiscreteOpen, K, e1, 1, true).value;
    CHECK(lhs == Catch::Approx(std::sqrt(6.0) / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(rhs == Catch::Approx(4.5).epsilon(1e-14));
    CHECK(*radial_ball_body(Source::DifferenceSet, K, e1, 1).exact == 1);

    Polytope wedge = poly({{q(0), q(0)}, {q(1, 2), q(1)}, {q(1, 2), q(-1)}});
    CHECK(count_lattice(wedge) == 1);
    auto me1 = Direction({q(-1), q(0)});
    for (double p : {1.0, 2.0, 3.0}) CHECK(radial_ball_body(Source::Discrete, wedge, me1, p).value == Catch::Approx(0.5).epsilon(1e-14));
    auto oc = verify("one_point_collapse", wedge);
    CHECK(oc.verdict == Verdict::Holds);
    CHECK_FALSE(oc.precondition_failed);
}

TEST_CASE("preconditions never pass silently") {
    Polytope away = translate(unit_square(), {q(5, 2), q(5, 2)});
    for (const char* id : {"ball_inclusion_discrete", "difference_set_inclusion", "volume_identity_discrete", "one_point_collapse"}) {
        auto r = verify(id, away);
        CHECK(r.precondition_failed);
        CHECK(r.verdict == Verdict::Inconclusive);
        CHECK(r.context.contains("precondition"));
    }
    auto cb = verify("completely_discrete_berwald", unit_square());
    CHECK(cb.precondition_failed);
}

TEST_CASE("registry and verify errors") {
    CHECK(registry().size() == 19);
    std::set<std::string> ids;
    for (const auto& r : registry()) {
        ids.insert(r.id);
        CHECK_FALSE(r.paper_ref.empty());
    }
    CHECK(ids.size() == 19);
    CHECK_THROWS_AS(verify("no_such_check", T2()), Error);
    try {
        checker("nope");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::UnknownChecker);
    }
}

TEST_CASE("anchoring records the translation") {
    Polytope K = translate(unit_square(), {q(3), q(0)});
    auto r = verify("discrete_zhang_mu", K);
    CHECK(r.context["anchor_translation"] == json::array({"-3", "0"}));
    auto a = verify("discrete_zhang_mu", unit_square());
    CHECK(*r.lhs.exact == *a.lhs.exact);
    CHECK(*r.rhs.exact == *a.rhs.exact);
}

TEST_CASE("verdict rule") {
    using detail::Comparison;
    using detail::judge;
    CHECK(judge({MeasureValue::of(q(1)), MeasureValue::of(q(1))}) == Verdict::Holds);
    CHECK(judge({MeasureValue::of(q(2)), MeasureValue::of(q(1))}) == Verdict::Fails);
    CHECK(judge({MeasureValue::approx(1.0 + 1e-9, 1e-8), MeasureValue::of(q(1))}) == Verdict::Holds);
    CHECK(judge({MeasureValue::approx(1.0 + 2e-8, 1e-8), MeasureValue::of(q(1))}) == Verdict::Inconclusive);
    CHECK(judge({MeasureValue::approx(1.1, 1e-8), MeasureValue::of(q(1))}) == Verdict::Fails);
    CHECK(judge({MeasureValue::approx(1.1, 1e-8, false), MeasureValue::of(q(1))}) == Verdict::Inconclusive);
}

TEST_CASE("limit sweep examples") {
    auto g = limit_sweep(unit_square(), "gn_volume", {10, 64});
    REQUIRE(g.size() == 2);
    CHECK(g[0].value == Catch::Approx(1.21));
    CHECK(g[0].rel_error == Catch::Approx(0.21));
    CHECK(g[1].rel_error == Catch::Approx(std::pow(65.0 / 64, 2) - 1));
    CHECK(g[1].rel_error < 0.05);
    auto b = limit_sweep(T2(), "B_limit", {1000});
    CHECK(std::abs(b[0].value - 0.5005) < 1e-12);
    CHECK(b[0].reference == 0.5);
    CHECK_THROWS_AS(limit_sweep(T2(), "gn_volume", {4, 2}), Error);
    CHECK_THROWS_AS(limit_sweep(T2(), "bogus", {4}), Error);
    auto mu = limit_sweep(unit_square(), "mu_volume", {8, 32});
    CHECK(mu[1].rel_error < mu[0].rel_error);
}
