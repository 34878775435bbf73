// zhang-forge: run the checker suite, inspect bodies, run limit sweeps.

#include <zhang/harness.hpp>

#include <CLI11.hpp>

#include <iostream>

namespace {

constexpr int kConfigError = 64;
constexpr int kIoError = 74;

using zhang::json;

json vec_json(const zhang::Vec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(zhang::to_string(x));
    return a;
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw zhang::Error(zhang::Errc::IoError, "cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw zhang::Error(zhang::Errc::ConfigError, path + ": " + e.what());
    }
}

int cmd_verify(const std::string& cfg_path, const std::string& out, std::optional<std::uint64_t> seed, int jobs) {
    zhang::SuiteConfig cfg = zhang::load_config(cfg_path);
    if (seed) {
        cfg.seed = *seed;
        cfg.raw["seed"] = *seed;
    }
    auto res = zhang::run_suite(cfg, jobs);
    std::filesystem::path dir = out.empty() ? zhang::output_dir(cfg) : std::filesystem::path(out);
    zhang::write_outputs(res, cfg, dir);
    const auto& s = res.summary;
    std::cout << "total " << s.total << "  holds " << s.holds << "  fails " << s.fails << "  inconclusive " << s.inconclusive
              << "  skipped " << s.skipped << "\n";
    for (const auto& r : res.reports)
        if (r.verdict != zhang::Verdict::Holds) std::cout << zhang::verdict_name(r.verdict) << "  " << r.body << "  " << r.id << "\n";
    std::cout << "report: " << (dir / cfg.report_file).string() << "\n";
    return res.exit_code();
}

int cmd_body(const std::string& spec_path, const std::string& op) {
    auto spec = zhang::parse_body_spec(read_json(spec_path));
    zhang::Polytope K = zhang::make_body(spec);
    json out{{"name", spec.name}, {"dim", K.dim}};
    if (op == "volume") {
        zhang::Q v = zhang::volume_q(K);
        out["volume"] = zhang::to_string(v);
        out["value"] = zhang::to_double(v);
    } else if (op == "lattice") {
        auto pts = zhang::lattice_points(K).points;
        out["count"] = pts.size();
        json a = json::array();
        for (const auto& p : pts) a.push_back(vec_json(p));
        out["points"] = a;
    } else if (op == "steiner") {
        zhang::Polytope S = zhang::steiner_symmetrize(K);
        json vs = json::array();
        for (const auto& v : S.vertices) vs.push_back(vec_json(v));
        out["vertices"] = vs;
        out["volume"] = zhang::to_string(zhang::volume_q(S));
    } else {
        zhang::Q m = zhang::mu_q(K);
        out["mu"] = zhang::to_string(m);
        out["value"] = zhang::to_double(m);
    }
    out["vertices_in"] = json::array();
    for (const auto& v : K.vertices) out["vertices_in"].push_back(vec_json(v));
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_sweep(const std::string& cfg_path) {
    zhang::SuiteConfig cfg = zhang::load_config(cfg_path);
    cfg.checkers.clear();
    auto res = zhang::run_suite(cfg, 1);
    std::cout << res.document["sweeps"].dump(2) << "\n";
    return 0;
}

int cmd_list() {
    for (const auto& r : zhang::registry()) std::cout << r.id << "\t" << r.paper_ref << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zhang-forge: checks of lattice and continuous Zhang-type inequalities on polytopes"};
    app.require_subcommand(1);

    std::string cfg_path, out_dir, spec_path, op;
    std::uint64_t seed_value = 0;
    int jobs = 0;

    auto* verify = app.add_subcommand("verify", "run the checker suite described by a config");
    verify->add_option("--config", cfg_path, "config JSON")->required();
    verify->add_option("--out", out_dir, "output directory");
    auto* seed_opt = verify->add_option("--seed", seed_value, "global seed");
    verify->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    auto* body = app.add_subcommand("body", "build one body and report a measure");
    body->add_option("--spec", spec_path, "body spec JSON")->required();
    body->add_option("--op", op, "volume, lattice, steiner or mu")->required()->check(CLI::IsMember({"volume", "lattice", "steiner", "mu"}));

    auto* sweep = app.add_subcommand("sweep", "run only the limit sweeps of a config");
    sweep->add_option("--config", cfg_path, "config JSON")->required();

    auto* list = app.add_subcommand("list-checkers", "print checker ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kConfigError;
    }

    try {
        if (*verify) return cmd_verify(cfg_path, out_dir, *seed_opt ? std::optional<std::uint64_t>(seed_value) : std::nullopt, jobs);
        if (*body) return cmd_body(spec_path, op);
        if (*sweep) return cmd_sweep(cfg_path);
        if (*list) return cmd_list();
    } catch (const zhang::Error& e) {
        std::cerr << "zhang-forge: " << e.what() << "\n";
        return e.code() == zhang::Errc::IoError ? kIoError : kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "zhang-forge: " << e.what() << "\n";
        return kConfigError;
    }
    return 0;
}
