#include "support.hpp"

#include <catch_amalgamated.hpp>

using namespace fx;

namespace {

const std::vector<Route> continuous_routes{Route::RayQuadrature, Route::SymmetralSlab, Route::ProjectionPower};

// p int r^{p-1} g(r theta) dr by composite Gauss-Legendre on the exact covariogram
double ray_moment_oracle(const Polytope& K, const Vec& dir, double p, int pieces) {
    Direction th(dir);
    double top = 0;
    for (const auto& a : K.vertices)
        for (const auto& b : K.vertices) {
            Vec d = sub(a, b);
            double s = 0;
            for (int i = 0; i < K.dim; ++i) s += to_double(d[i]) * th.unit[i];
            top = std::max(top, s);
        }
    double total = 0;
    const double h = top / pieces;
    for (int k = 0; k < pieces; ++k) {
        total += quad::integrate(
            [&](double r) {
                Vec x;
                for (int i = 0; i < K.dim; ++i) x.push_back(Q(r * th.unit[i]));
                return p * std::pow(r, p - 1) * covariogram(K, x).value;
            },
            k * h, (k + 1) * h, 4);
    }
    return total;
}

}  // namespace

TEST_CASE("covariogram examples") {
    CHECK(*covariogram(unit_square(), {q(1, 2), q(0)}).exact == q(1, 2));
    CHECK(*covariogram(unit_square(), {q(2), q(0)}).exact == 0);
    for (const auto& [name, K] : corpus()) CHECK(*covariogram(K, Vec(K.dim, q(0))).exact == volume_q(K));
}

TEST_CASE("box covariogram has the product closed form") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> c(-12, 12);
    for (int i = 0; i < 50; ++i) {
        Vec x{q(c(rng), 10), q(c(rng), 10)};
        Q expect = std::max(Q(0), 1 - qabs(x[0])) * std::max(Q(0), 1 - qabs(x[1]));
        CHECK(*covariogram(unit_square(), x).exact == expect);
    }
}

TEST_CASE("covariogram agrees with Monte Carlo membership") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> U(0, 1);
    for (const auto& [name, K] : corpus()) {
        if (K.dim != 2) continue;
        INFO(name);
        Vec x = scale(sub(K.vertices.back(), K.vertices.front()), q(1, 3));
        const double gx = to_double(*covariogram(K, x).exact);
        // sample the bounding box of K, count z with z in K and z - x in K
        double lo0 = 1e9, hi0 = -1e9, lo1 = 1e9, hi1 = -1e9;
        for (const auto& v : K.vertices) {
            lo0 = std::min(lo0, to_double(v[0]));
            hi0 = std::max(hi0, to_double(v[0]));
            lo1 = std::min(lo1, to_double(v[1]));
            hi1 = std::max(hi1, to_double(v[1]));
        }
        auto inside = [&](double a, double b) {
            for (const auto& h : K.halfspaces)
                if (to_double(h.a[0]) * a + to_double(h.a[1]) * b > to_double(h.b)) return false;
            return true;
        };
        const int N = 200000;
        int hit = 0;
        for (int s = 0; s < N; ++s) {
            double a = lo0 + (hi0 - lo0) * U(rng), b = lo1 + (hi1 - lo1) * U(rng);
            hit += inside(a, b) && inside(a - to_double(x[0]), b - to_double(x[1]));
        }
        double box = (hi0 - lo0) * (hi1 - lo1), f = static_cast<double>(hit) / N;
        CHECK(std::abs(box * f - gx) <= 4 * box * std::sqrt(f * (1 - f) / N) + 1e-9);
    }
}

TEST_CASE("continuous ray moment examples") {
    auto e2 = Direction::axis(2, 1);
    CHECK(continuous_ray_moment(unit_square(), e2, 2, Route::RayQuadrature).value == Catch::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(*continuous_ray_moment(unit_square(), e2, 2, Route::SymmetralSlab).exact == q(1, 3));
    CHECK(*continuous_ray_moment(unit_square(), e2, 1, Route::ProjectionPower).exact == q(1, 2));
    CHECK_THROWS_AS(continuous_ray_moment(unit_square(), Direction::axis(2, 0), 1, Route::SymmetralSlab), Error);
    CHECK_THROWS_AS(continuous_ray_moment(unit_square(), e2, 1, Route::DiscreteExact), Error);
}

TEST_CASE("ray moment matches a covariogram quadrature oracle") {
    std::vector<std::pair<Polytope, Vec>> cases{{T2(), {q(0), q(1)}}, {cross_polytope(2), {q(1), q(2)}},
                                                {poly({{q(0), q(0)}, {q(2), q(1)}, {q(1), q(3)}}), {q(0), q(1)}}};
    for (const auto& [K, dir] : cases) {
        for (double p : {1.0, 2.0, 2.5}) {
            double oracle = ray_moment_oracle(K, dir, p, 300);
            double got = continuous_ray_moment(K, Direction(dir), p, Route::RayQuadrature).value;
            CHECK(got == Catch::Approx(oracle).epsilon(1e-6));
        }
    }
}

TEST_CASE("the three continuous routes agree on the corpus") {
    for (const auto& [name, K] : corpus()) {
        INFO(name);
        const int n = K.dim;
        auto en = Direction::axis(n, n - 1);
        for (double p : {1.0, 2.0, static_cast<double>(n)}) {
            std::vector<MeasureValue> vals;
            for (Route r : continuous_routes) vals.push_back(continuous_ray_moment(K, en, p, r));
            for (const auto& a : vals)
                for (const auto& b : vals) {
                    double tol = std::max(1e-9 * std::abs(a.value), a.abs_error + b.abs_error);
                    CHECK(std::abs(a.value - b.value) <= tol);
                }
            // exact routes agree exactly
            REQUIRE(vals[1].exact);
            REQUIRE(vals[2].exact);
            CHECK(*vals[1].exact == *vals[2].exact);
        }
    }
}

TEST_CASE("radial_Rp examples") {
    auto e2 = Direction::axis(2, 1);
    CHECK(radial_Rp(unit_square(), e2, 1).value == Catch::Approx(0.5).epsilon(1e-12));
    CHECK(radial_Rp(T2(), e2, 1).value == Catch::Approx(1.0 / 3).epsilon(1e-12));
    // after binomial scaling: shrinking in p, never below the difference body radial 1
    double prev = 1e9;
    for (double p : {1.0, 2.0, 5.0, 20.0, 200.0}) {
        double r = radial_Rp(unit_square(), e2, p).value * std::pow(binom_real(2, p), 1.0 / p);
        CHECK(r >= 1.0 - 1e-12);
        CHECK(r <= prev + 1e-12);
        prev = r;
    }
    CHECK(prev < 1.03);
    CHECK_THROWS_AS(radial_Rp(T2(), e2, 0), Error);
    CHECK_THROWS_AS(radial_Rp(T2(), e2, -1), Error);
}

TEST_CASE("Ball body radial examples") {
    auto e1 = Direction::axis(2, 0);
    CHECK(*radial_ball_body(Source::Discrete, square02(), e1, 1).exact == 1);
    CHECK(*radial_ball_body(Source::Discrete, unit_square(), e1, 1).exact == q(1, 2));
    CHECK(*radial_ball_body(Source::DiscreteOpen, unit_square(), e1, 1).exact == q(3, 2));
    CHECK_THROWS_AS(radial_ball_body(Source::Discrete, translate(unit_square(), {q(1, 2), q(1, 2)}), e1, 1), Error);
}

TEST_CASE("polar projection radial examples") {
    auto e2 = Direction::axis(2, 1);
    CHECK(radial_ball_body(Source::PolarProjection, unit_square(), e2, 1).value == Catch::Approx(1.0));
    CHECK(radial_ball_body(Source::PolarProjection, square02(), e2, 1).value == Catch::Approx(0.5));
    CHECK(radial_ball_body(Source::PolarProjection, T2(), Direction({q(1), q(1)}), 1).value == Catch::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("star volumes") {
    auto disc = star_volume_2d([](const std::vector<double>&) { return 1.0; }, {});
    CHECK(std::abs(disc.value.value - std::numbers::pi) <= 1e-6);
    auto ball = star_volume_3d([](const std::vector<double>&) { return 1.0; });
    CHECK(std::abs(ball.value.value - 4 * std::numbers::pi / 3) <= 1e-9);

    // polar projection body of T: area 3
    Polytope T = T2();
    auto fm = facet_measures(T);
    auto pi_star = star_volume_2d([&](const std::vector<double>& u) { return 1.0 / cauchy_sum(fm, u); }, kink_angles(T));
    CHECK(std::abs(pi_star.value.value - 3.0) <= 2e-3);
}

TEST_CASE("vol of the degree-n Ball body of g_K equals vol K (n = 2)") {
    for (const auto& [name, K] : corpus()) {
        if (K.dim != 2) continue;
        INFO(name);
        // rho_{K_2(g_K)}^2 = 2 int r g(r u) dr / vol = (1/3) int chord^3 / vol, which is R_2
        auto sv = star_volume_2d([&](const std::vector<double>& u) { return radial_Rp_2d(K, u, 2).value; }, kink_angles(K));
        double vol = to_double(volume_q(K));
        CHECK(std::abs(sv.value.value - vol) <= 1e-3 * vol);
    }
}

TEST_CASE("vol of the degree-n discrete Ball body equals vol K (n = 2)") {
    for (const auto& K : {unit_square(), square11(), T2(), cross_polytope(2)}) {
        RayField F(K, false);
        const double g = static_cast<double>(F.size());
        auto sv = star_volume_2d(
            [&](const std::vector<double>& u) {
                double s = 0;
                for (double b : F.reach(u)) s += b * b;
                return std::sqrt(s / g);
            },
            kink_angles(K, F.points()));
        double vol = to_double(volume_q(K));
        CHECK(std::abs(sv.value.value - vol) <= 1e-3 * vol);
    }
}

TEST_CASE("Ball body inclusion chain in p") {
    for (const auto& [name, K] : corpus()) {
        INFO(name);
        const int n = K.dim;
        std::vector<Vec> dirs{Vec(n, q(1)), Vec(n, q(0))};
        dirs[1][n - 1] = -1;
        std::vector<double> ps{1, 2, 3, static_cast<double>(n)};
        std::sort(ps.begin(), ps.end());
        for (const auto& d : dirs) {
            Direction th(d);
            for (std::size_t i = 0; i < ps.size(); ++i)
                for (std::size_t j = i + 1; j < ps.size(); ++j) {
                    if (ps[i] == ps[j]) continue;
                    auto a = radial_ball_body(Source::Continuous, K, th, ps[j]);
                    auto b = radial_ball_body(Source::Continuous, K, th, ps[i]);
                    double lhs = std::pow(binom_real(n, ps[j]), 1 / ps[j]) * a.value;
                    double rhs = std::pow(binom_real(n, ps[i]), 1 / ps[i]) * b.value;
                    CHECK(lhs <= rhs * (1 + 1e-12) + a.abs_error + b.abs_error);
                }
        }
    }
}
