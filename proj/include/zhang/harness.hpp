#pragma once
// Body specs, suite configuration, the work pool and report emission.

#include "inequality.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace zhang {

struct BodySpec {
    std::string name;
    std::string family;  // simplex, cube, cross, random_hull, custom
    int dim = 2;
    json params = json::object();
    std::optional<std::pair<linalg::Mat, Vec>> affine;
    bool anchor = false;
};

inline Q json_rational(const json& j) {
    if (j.is_number_integer()) return Q(j.get<long long>());
    if (j.is_number_float()) return Q(j.get<double>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const std::exception&) {
            throw Error(Errc::ConfigError, "not a rational: " + j.dump());
        }
    }
    throw Error(Errc::ConfigError, "not a rational: " + j.dump());
}

inline Vec json_vec(const json& j) {
    if (!j.is_array()) throw Error(Errc::ConfigError, "expected an array: " + j.dump());
    Vec v;
    for (const auto& x : j) v.push_back(json_rational(x));
    return v;
}

inline BodySpec parse_body_spec(const json& j) {
    if (!j.is_object()) throw Error(Errc::ConfigError, "body spec must be an object");
    BodySpec s;
    s.family = j.value("family", "");
    s.dim = j.value("dim", 2);
    s.params = j.value("params", json::object());
    s.anchor = j.value("anchor", false);
    static const std::vector<std::string> families{"simplex", "cube", "cross", "random_hull", "custom"};
    if (std::find(families.begin(), families.end(), s.family) == families.end()) throw Error(Errc::ConfigError, "unknown body family '" + s.family + "'");
    if (s.dim < 2 || s.dim > 4) throw Error(Errc::ConfigError, "body dim must be 2..4");
    if (j.contains("affine")) {
        const auto& a = j["affine"];
        linalg::Mat A;
        for (const auto& row : a.at("matrix")) A.push_back(json_vec(row));
        Vec b = a.contains("vector") ? json_vec(a["vector"]) : Vec(s.dim, Q(0));
        if (static_cast<int>(A.size()) != s.dim || static_cast<int>(b.size()) != s.dim) throw Error(Errc::ConfigError, "affine map has the wrong shape");
        for (const auto& row : A)
            if (static_cast<int>(row.size()) != s.dim) throw Error(Errc::ConfigError, "affine map has the wrong shape");
        s.affine = std::make_pair(A, b);
    }
    s.name = j.value("name", s.family + std::to_string(s.dim));
    return s;
}

inline Polytope make_body(const BodySpec& s) {
    const int n = s.dim;
    Polytope K;
    const json& p = s.params;
    if (s.family == "simplex") {
        K = standard_simplex(n, p.contains("edge") ? json_rational(p["edge"]) : Q(1));
    } else if (s.family == "cube") {
        Q lo = 0, hi = 1;
        if (p.contains("edge")) {
            if (p["edge"].is_array()) {
                Vec e = json_vec(p["edge"]);
                if (e.size() != 2) throw Error(Errc::ConfigError, "cube edge is [lo, hi]");
                lo = e[0];
                hi = e[1];
            } else {
                hi = json_rational(p["edge"]);
            }
        }
        if (!(lo < hi)) throw Error(Errc::DegenerateSpec, "cube edge must have lo < hi");
        K = box(Vec(n, lo), Vec(n, hi));
    } else if (s.family == "cross") {
        K = cross_polytope(n, p.contains("radius") ? json_rational(p["radius"]) : Q(1));
    } else if (s.family == "random_hull") {
        const int count = p.value("count", 8);
        const long long den = p.value("denominator", 4);
        const Q radius = p.contains("radius") ? json_rational(p["radius"]) : Q(2);
        const std::uint64_t seed = p.value("seed", std::uint64_t{0});
        if (count < n + 1 || den < 1 || radius <= 0) throw Error(Errc::ConfigError, "random_hull needs count > dim, denominator >= 1, radius > 0");
        const long long span = floor_z(radius * Q(den)).convert_to<long long>();
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<long long> coord(-span, span);
        bool ok = false;
        for (int round = 0; round < 100 && !ok; ++round) {
            std::vector<Vec> pts;
            for (int i = 0; i < count; ++i) {
                Vec x;
                for (int k = 0; k < n; ++k) x.push_back(Q(coord(rng)) / Q(den));
                pts.push_back(std::move(x));
            }
            K = make_polytope(pts, n);
            ok = K.full();
        }
        if (!ok) throw Error(Errc::DegenerateSpec, "random_hull stayed flat after 100 rounds");
    } else {
        if (!p.contains("points")) throw Error(Errc::ConfigError, "custom body needs params.points");
        std::vector<Vec> pts;
        for (const auto& x : p["points"]) {
            pts.push_back(json_vec(x));
            if (static_cast<int>(pts.back().size()) != n) throw Error(Errc::ConfigError, "custom point has the wrong length");
        }
        if (pts.empty()) throw Error(Errc::DegenerateSpec, "custom body has no points");
        K = make_polytope(pts, n);
    }
    if (s.affine) {
        try {
            K = transform(K, s.affine->first, s.affine->second);
        } catch (const Error& e) {
            throw Error(Errc::DegenerateSpec, std::string("affine map: ") + e.what());
        }
    }
    if (!K.full()) throw Error(Errc::DegenerateSpec, "body '" + s.name + "' is not full-dimensional");
    if (s.anchor) K = detail::anchored(K).body;
    return K;
}

struct SweepSpec {
    std::string body;  // name of a body in the config
    std::string target;
    std::vector<double> scales;
    double p = 1;
};

struct SuiteConfig {
    json raw = json::object();
    std::vector<BodySpec> bodies;
    std::vector<std::string> checkers;
    CheckParams params;
    std::vector<SweepSpec> sweeps;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string out_dir = "zhang-out";
    std::string report_file = "report.json";
    std::string summary_file = "summary.csv";
};

namespace detail {

inline std::string token(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    if (j.is_number()) return j.dump();
    throw Error(Errc::ConfigError, "bad exponent " + j.dump());
}

inline std::vector<std::string> tokens(const json& j) {
    std::vector<std::string> out;
    for (const auto& x : j) out.push_back(token(x));
    return out;
}

// FNV-1a over the key, mixed with the global seed
inline std::uint64_t task_seed(std::uint64_t seed, const std::string& key) {
    std::uint64_t h = 1469598103934665603ull ^ seed;
    for (unsigned char c : key) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace detail

inline SuiteConfig parse_config(const json& j) {
    if (!j.is_object()) throw Error(Errc::ConfigError, "config must be a JSON object");
    SuiteConfig c;
    c.raw = j;
    c.raw.erase("jobs");
    try {
        std::set<std::string> names;
        for (const auto& b : j.value("bodies", json::array())) {
            c.bodies.push_back(parse_body_spec(b));
            if (!names.insert(c.bodies.back().name).second) throw Error(Errc::ConfigError, "duplicate body name " + c.bodies.back().name);
        }
        if (j.contains("checkers")) {
            for (const auto& id : j["checkers"]) c.checkers.push_back(id.get<std::string>());
        } else {
            for (const auto& r : registry()) c.checkers.push_back(r.id);
        }
        for (const auto& id : c.checkers) checker(id);
        auto& P = c.params;
        if (j.contains("exponents")) {
            const auto& e = j["exponents"];
            if (e.contains("pairs")) {
                P.pairs.clear();
                for (const auto& pr : e["pairs"]) {
                    if (!pr.is_array() || pr.size() != 2) throw Error(Errc::ConfigError, "exponent pairs are [p, q]");
                    P.pairs.emplace_back(detail::token(pr[0]), detail::token(pr[1]));
                }
            }
            if (e.contains("moments")) P.moments = detail::tokens(e["moments"]);
            if (e.contains("berwald")) P.berwald_grid = detail::tokens(e["berwald"]);
            if (e.contains("inclusion")) P.inclusion_grid = detail::tokens(e["inclusion"]);
        }
        for (const auto& pr : P.pairs) {
            resolve_exponent(pr.first, 2);
            resolve_exponent(pr.second, 2);
        }
        if (j.contains("directions")) {
            P.planar_directions = j["directions"].value("planar", P.planar_directions);
            P.spatial_directions = j["directions"].value("spatial", P.spatial_directions);
        }
        if (j.contains("quadrature")) {
            P.planar_volume_nodes = j["quadrature"].value("planar_nodes", P.planar_volume_nodes);
            P.spatial_polar = j["quadrature"].value("spatial_polar", P.spatial_polar);
        }
        if (j.contains("tolerances")) {
            P.planar_volume_tol = j["tolerances"].value("volume_planar", P.planar_volume_tol);
            P.spatial_volume_tol = j["tolerances"].value("volume_spatial", P.spatial_volume_tol);
            P.identity_rel = j["tolerances"].value("identity_rel", P.identity_rel);
        }
        c.seed = j.value("seed", std::uint64_t{0});
        c.jobs = j.value("jobs", 1);
        if (j.contains("output")) {
            c.out_dir = j["output"].value("dir", c.out_dir);
            c.report_file = j["output"].value("report", c.report_file);
            c.summary_file = j["output"].value("summary", c.summary_file);
        }
        for (const auto& s : j.value("sweeps", json::array())) {
            SweepSpec sw;
            sw.body = s.at("body").get<std::string>();
            sw.target = s.at("target").get<std::string>();
            sw.scales = s.at("scales").get<std::vector<double>>();
            sw.p = s.value("p", 1.0);
            if (std::find(sweep_targets().begin(), sweep_targets().end(), sw.target) == sweep_targets().end())
                throw Error(Errc::ConfigError, "unknown sweep target " + sw.target);
            if (sw.target != "B_limit" && !names.count(sw.body)) throw Error(Errc::ConfigError, "sweep refers to unknown body " + sw.body);
            c.sweeps.push_back(std::move(sw));
        }
    } catch (const json::exception& e) {
        throw Error(Errc::ConfigError, std::string("config: ") + e.what());
    } catch (const Error& e) {
        if (e.code() == Errc::UnknownChecker) throw Error(Errc::ConfigError, e.what());
        throw;
    }
    return c;
}

inline SuiteConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IoError, "cannot read config " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw Error(Errc::ConfigError, path + ": " + e.what());
    }
    return parse_config(j);
}

struct Summary {
    std::size_t total = 0, holds = 0, fails = 0, inconclusive = 0, skipped = 0;
};

struct SweepResult {
    std::string body, target;
    std::vector<SweepPoint> points;
};

struct SuiteResult {
    std::vector<InequalityReport> reports;
    std::vector<InequalityReport> skipped;
    std::vector<SweepResult> sweeps;
    Summary summary;
    json document;

    int exit_code() const {
        if (summary.fails > 0) return 1;
        if (summary.inconclusive > 0) return 2;
        return 0;
    }
};

inline json to_json(const InequalityReport& r) {
    return {{"id", r.id}, {"body", r.body}, {"lhs", to_json(r.lhs)}, {"rhs", to_json(r.rhs)}, {"slack", r.slack},
            {"verdict", verdict_name(r.verdict)}, {"context", r.context}, {"paper_ref", r.paper_ref}};
}

// Runs one (body, checker) task; a straddling result is retried once at higher order.
inline InequalityReport run_task(const std::string& id, const Polytope& K, CheckParams prm) {
    InequalityReport r;
    try {
        r = verify(id, K, prm);
        if (r.verdict == Verdict::Inconclusive && !r.precondition_failed) {
            prm.extra_order += 1;
            r = verify(id, K, prm);
            r.context["retried"] = true;
        }
    } catch (const std::exception& e) {
        r = InequalityReport{};
        r.id = id;
        r.body = prm.body_name;
        r.verdict = Verdict::Fails;
        r.paper_ref = checker(id).paper_ref;
        r.context = {{"error", e.what()}};
    }
    return r;
}

inline SuiteResult run_suite(const SuiteConfig& cfg, int jobs = 0) {
    if (jobs <= 0) jobs = std::max(1, cfg.jobs);
    std::vector<Polytope> bodies;
    for (const auto& b : cfg.bodies) bodies.push_back(make_body(b));

    struct Task {
        std::size_t body, check;
    };
    std::vector<Task> tasks;
    for (std::size_t b = 0; b < bodies.size(); ++b)
        for (std::size_t c = 0; c < cfg.checkers.size(); ++c) tasks.push_back({b, c});
    std::vector<InequalityReport> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const auto& t = tasks[i];
            CheckParams prm = cfg.params;
            prm.body_name = cfg.bodies[t.body].name;
            const std::string& id = cfg.checkers[t.check];
            prm.seed = detail::task_seed(cfg.seed, prm.body_name + "/" + id);
            results[i] = run_task(id, bodies[t.body], prm);
        }
    };
    std::vector<std::thread> pool;
    const int nthreads = std::min<int>(jobs, std::max<std::size_t>(1, tasks.size()));
    for (int k = 1; k < nthreads; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    SuiteResult out;
    for (auto& r : results) (r.precondition_failed ? out.skipped : out.reports).push_back(std::move(r));
    auto key_less = [](const InequalityReport& a, const InequalityReport& b) { return std::tie(a.body, a.id) < std::tie(b.body, b.id); };
    std::sort(out.reports.begin(), out.reports.end(), key_less);
    std::sort(out.skipped.begin(), out.skipped.end(), key_less);
    for (const auto& r : out.reports) {
        ++out.summary.total;
        if (r.verdict == Verdict::Holds) ++out.summary.holds;
        else if (r.verdict == Verdict::Fails) ++out.summary.fails;
        else ++out.summary.inconclusive;
    }
    out.summary.skipped = out.skipped.size();

    for (const auto& sw : cfg.sweeps) {
        SweepResult res{sw.body, sw.target, {}};
        Polytope K;
        if (sw.target == "B_limit") {
            int n = 2;
            for (std::size_t b = 0; b < cfg.bodies.size(); ++b)
                if (cfg.bodies[b].name == sw.body) n = cfg.bodies[b].dim;
            K = standard_simplex(n);
        } else {
            for (std::size_t b = 0; b < cfg.bodies.size(); ++b)
                if (cfg.bodies[b].name == sw.body) K = bodies[b];
        }
        res.points = limit_sweep(K, sw.target, sw.scales, {sw.p});
        out.sweeps.push_back(std::move(res));
    }

    json doc;
    doc["schema"] = "zhang-forge/1";
    doc["config"] = cfg.raw;
    doc["seed"] = cfg.seed;
    json reps = json::array();
    for (const auto& r : out.reports) reps.push_back(to_json(r));
    doc["reports"] = reps;
    json sk = json::array();
    for (const auto& r : out.skipped) sk.push_back({{"id", r.id}, {"body", r.body}, {"reason", r.context.value("precondition", "")}});
    doc["skipped"] = sk;
    json sws = json::array();
    for (const auto& s : out.sweeps) {
        json pts = json::array();
        for (const auto& p : s.points)
            pts.push_back({{"scale", p.scale}, {"quantity", p.quantity}, {"value", p.value}, {"reference", p.reference}, {"rel_error", p.rel_error}});
        sws.push_back({{"body", s.body}, {"target", s.target}, {"points", pts}});
    }
    doc["sweeps"] = sws;
    doc["summary"] = {{"total", out.summary.total}, {"holds", out.summary.holds}, {"fails", out.summary.fails},
                      {"inconclusive", out.summary.inconclusive}, {"skipped", out.summary.skipped}};
    out.document = std::move(doc);
    return out;
}

inline std::string csv_summary(const SuiteResult& res) {
    std::ostringstream os;
    os.precision(17);
    os << "id,body,lhs,rhs,slack,verdict\n";
    for (const auto& r : res.reports)
        os << r.id << ',' << r.body << ',' << r.lhs.value << ',' << r.rhs.value << ',' << r.slack << ',' << verdict_name(r.verdict) << '\n';
    return os.str();
}

// Output directory: ZHANG_FORGE_OUT overrides the configured one.
inline std::filesystem::path output_dir(const SuiteConfig& cfg) {
    if (const char* env = std::getenv("ZHANG_FORGE_OUT"); env && *env) return env;
    return cfg.out_dir;
}

inline void write_outputs(const SuiteResult& res, const SuiteConfig& cfg, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(Errc::IoError, "cannot create " + dir.string() + ": " + ec.message());
    auto write = [](const std::filesystem::path& p, const std::string& text) {
        std::ofstream f(p, std::ios::binary);
        if (!f) throw Error(Errc::IoError, "cannot write " + p.string());
        f << text;
        if (!f) throw Error(Errc::IoError, "write failed for " + p.string());
    };
    write(dir / cfg.report_file, res.document.dump(2) + "\n");
    write(dir / cfg.summary_file, csv_summary(res));
}

}  // namespace zhang
