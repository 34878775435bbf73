#include "support.hpp"

#include <catch_amalgamated.hpp>

using namespace fx;

TEST_CASE("lattice_points examples") {
    CHECK(lattice_points(square02(), 0).points.size() == 9);
    auto open = lattice_points(square02(), 2).points;
    CHECK(open.size() == 9);
    for (const auto& x : open) {
        CHECK(x[0] >= 0);
        CHECK(x[0] <= 2);
        CHECK(x[1] >= 0);
        CHECK(x[1] <= 2);
    }
    // S(K) + C_1 = (-2,2) x [-1,1]
    auto fat = lattice_points(steiner_symmetrize(square11()), 1).points;
    CHECK(fat.size() == 9);
    for (const auto& x : fat) CHECK(qabs(x[0]) <= 1);
}

TEST_CASE("count_lattice examples") {
    CHECK(count_lattice(unit_square()) == 4);
    CHECK(count_lattice(project_drop_last(T2())) == 2);
    CHECK(count_lattice(box({q(1, 4), q(1, 4)}, {q(3, 4), q(3, 4)})) == 0);
    CHECK(count_lattice(std::optional<Polytope>{}) == 0);
}

TEST_CASE("mu examples") {
    CHECK(mu_q(square02()) == 6);
    Polytope strip = box({q(-2), q(1, 3)}, {q(2), q(1, 2)});
    CHECK(count_lattice(strip) == 0);
    CHECK(mu_q(strip) == q(5, 6));
    CHECK(mu_q(T2()) == 1);
    CHECK(mu_measure(T2()).is_exact());
}

TEST_CASE("discrete_covariogram examples") {
    CHECK(discrete_covariogram(square02(), {q(1), q(0)}) == 6);
    CHECK(discrete_covariogram(unit_square(), {q(0), q(0)}) == 4);
    CHECK(discrete_covariogram(unit_square(), {q(2), q(2)}) == 0);
}

TEST_CASE("ray_decomposition examples") {
    auto D = ray_decomposition(square02(), Direction::axis(2, 0), false);
    REQUIRE(D.entries.size() == 9);
    for (const auto& e : D.entries) {
        CHECK(e.r.lo == 0);
        CHECK(e.r.hi == e.point[0]);
        CHECK_FALSE(e.r.hi_open);
    }
    auto C = ray_decomposition(unit_square(), Direction::axis(2, 0), false);
    REQUIRE(C.entries.size() == 4);
    for (const auto& e : C.entries) CHECK(e.r.hi == e.point[0]);
    auto O = ray_decomposition(unit_square(), Direction::axis(2, 0), true);
    REQUIRE(O.entries.size() == 4);
    for (const auto& e : O.entries) {
        CHECK(e.r.hi == e.point[0] + 1);
        CHECK(e.r.hi_open);
    }
    CHECK_THROWS_AS(ray_decomposition(translate(unit_square(), {q(1, 2), q(1, 2)}), Direction::axis(2, 0), false), Error);
}

TEST_CASE("discrete_ray_moment examples") {
    auto e1 = Direction::axis(2, 0);
    CHECK(*discrete_ray_moment(ray_decomposition(square02(), e1, false), 1).exact == 9);
    CHECK(*discrete_ray_moment(ray_decomposition(square02(), e1, false), 2).exact == 15);
    CHECK(*discrete_ray_moment(ray_decomposition(unit_square(), e1, true), 1).exact == 6);
    // non-unit rational direction, measured at unit speed
    Direction d({q(3), q(4)});
    auto m = discrete_ray_moment(ray_decomposition(square02(), d, false), 1);
    REQUIRE(m.exact);
    Q raw = 0;
    for (const auto& e : ray_decomposition(square02(), d, false).entries) raw += e.r.hi;
    CHECK(*m.exact == raw * 5);
}

TEST_CASE("counts agree with a bounding-box scan") {
    for (const auto& [name, K] : corpus()) {
        INFO(name);
        CHECK(count_lattice(K) == brute_count(K));
        CHECK(static_cast<long long>(lattice_points(K).points.size()) == brute_count(K));
    }
}

TEST_CASE("open fattenings agree with an LP oracle") {
    for (const auto& [name, K] : corpus()) {
        if (K.dim == 3 && name == "hull3") continue;  // slow oracle
        INFO(name);
        for (int k = 1; k <= K.dim; ++k) CHECK(count_lattice(K, k) == brute_count_open(K, k));
    }
    CHECK(count_lattice(steiner_symmetrize(square11()), 1) == brute_count_open(steiner_symmetrize(square11()), 1));
}

TEST_CASE("fattened lattice sets contain the plain one") {
    for (const auto& [name, K] : corpus()) {
        INFO(name);
        auto base = lattice_points(K, 0).points;
        for (int k = 1; k <= K.dim; ++k) {
            auto fat = lattice_points(K, k).points;
            std::set<Vec> s(fat.begin(), fat.end());
            for (const auto& x : base) CHECK(s.count(x) == 1);
        }
    }
}

TEST_CASE("mu sandwich and symmetral invariance on the corpus") {
    for (const auto& [name, K] : corpus()) {
        INFO(name);
        Q mu = mu_q(K);
        long long g = count_lattice(K), gp = count_lattice(project_drop_last(K));
        CHECK(Q(g - gp) <= mu);
        CHECK(mu <= Q(g + gp));
        CHECK(mu_q(steiner_symmetrize(K)) == mu);
    }
    CHECK(mu_q(square02()) == 6);
    CHECK(count_lattice(square02()) - count_lattice(project_drop_last(square02())) == 6);
}

TEST_CASE("first discrete moment equals the integral of the discrete covariogram") {
    // g~ is a step function in r; the midpoint rule on a 1/1000 grid is off by at
    // most (number of jumps) * h / 2
    std::vector<std::pair<Polytope, Vec>> cases{
        {square02(), {q(1), q(0)}}, {T2(), {q(0), q(1)}}, {square11(), {q(1), q(1)}}, {cross_polytope(2), {q(1), q(2)}}};
    for (const auto& [K, dir] : cases) {
        Direction th(dir);
        auto D = ray_decomposition(K, th, false);
        Q total = 0;
        Q top = 0;
        for (const auto& e : D.entries) {
            total += e.r.hi;
            top = std::max(top, e.r.hi);
        }
        const long long steps = (floor_z(top).convert_to<long long>() + 1) * 1000;
        Q integral = 0;
        for (long long i = 0; i < steps; ++i) {
            Q r = (Q(i) + q(1, 2)) / 1000;
            integral += Q(discrete_covariogram(K, scale(dir, r)));
        }
        integral /= 1000;
        double jumps = static_cast<double>(D.entries.size());
        CHECK(std::abs(to_double(integral - total)) <= jumps * 0.5e-3 + 1e-12);
    }
}

TEST_CASE("difference-set radial is the largest ray endpoint") {
    for (const auto& K : {square11(), cross_polytope(2), T2(), box({q(-1), q(-1, 2)}, {q(2), q(3, 2)})}) {
        std::vector<Vec> pts;
        for (const auto& y : lattice_points(K).points)
            for (const auto& w : K.vertices) pts.push_back(sub(y, w));
        Polytope D = make_polytope(pts, 2);
        for (const Vec& dir : std::vector<Vec>{{q(1), q(0)}, {q(0), q(1)}, {q(-3), q(4)}, {q(1), q(-1)}, {q(-2), q(-1)}}) {
            std::optional<Q> reach;
            for (const auto& h : D.halfspaces) {
                Q at = dot(h.a, dir);
                if (at > 0 && (!reach || h.b / at < *reach)) reach = h.b / at;
            }
            REQUIRE(reach);
            auto rd = ray_decomposition(K, Direction(dir), false);
            Q best = 0;
            for (const auto& e : rd.entries) best = std::max(best, e.r.hi);
            CHECK(best == *reach);
            auto rho = radial_ball_body(Source::DifferenceSet, K, Direction(dir), 1);
            CHECK(rho.value == Catch::Approx(to_double(*reach) * Direction(dir).norm()).epsilon(1e-14));
        }
    }
}

TEST_CASE("RayField matches exact ray decompositions") {
    for (const auto& K : {square11(), cross_polytope(3), box({q(-1), q(0), q(-1, 2)}, {q(2), q(1), q(1)})}) {
        for (bool open : {false, true}) {
            RayField F(K, open);
            const int n = K.dim;
            std::vector<Vec> dirs{Vec(n, q(1)), Vec(n, q(0))};
            dirs[1][0] = q(-1);
            for (const auto& dir : dirs) {
                Direction th(dir);
                auto D = ray_decomposition(K, th, open);
                auto reach = F.reach(th.unit);
                REQUIRE(reach.size() == D.entries.size());
                std::map<Vec, double> exact;
                for (const auto& e : D.entries) exact[e.point] = to_double(e.r.hi) * th.norm();
                for (std::size_t i = 0; i < reach.size(); ++i) CHECK(reach[i] == Catch::Approx(exact[F.points()[i]]).margin(1e-12));
            }
        }
    }
}
