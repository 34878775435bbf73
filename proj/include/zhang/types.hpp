#pragma once

#include "rational.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace zhang {

enum class Errc {
    DimensionMismatch,
    Unbounded,
    SingularMap,
    DegenerateBody,
    OriginMissing,
    ZeroBase,
    ExponentOutOfRange,
    RouteUnsupported,
    EmptyProjectionLattice,
    HypothesesViolated,
    NoRoot,
    NoCrossing,
    UnknownChecker,
    DegenerateSpec,
    ConfigError,
    IoError,
};

inline const char* errc_name(Errc e) {
    switch (e) {
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::Unbounded: return "Unbounded";
        case Errc::SingularMap: return "SingularMap";
        case Errc::DegenerateBody: return "DegenerateBody";
        case Errc::OriginMissing: return "OriginMissing";
        case Errc::ZeroBase: return "ZeroBase";
        case Errc::ExponentOutOfRange: return "ExponentOutOfRange";
        case Errc::RouteUnsupported: return "RouteUnsupported";
        case Errc::EmptyProjectionLattice: return "EmptyProjectionLattice";
        case Errc::HypothesesViolated: return "HypothesesViolated";
        case Errc::NoRoot: return "NoRoot";
        case Errc::NoCrossing: return "NoCrossing";
        case Errc::UnknownChecker: return "UnknownChecker";
        case Errc::DegenerateSpec: return "DegenerateSpec";
        case Errc::ConfigError: return "ConfigError";
        case Errc::IoError: return "IoError";
    }
    return "?";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

// A scalar result. `exact` is set when the value came out of rational arithmetic.
// `certified` is false for numbers whose error bar is only a heuristic.
struct MeasureValue {
    double value = 0.0;
    std::optional<Q> exact;
    double abs_error = 0.0;
    bool certified = true;

    static MeasureValue of(const Q& q) { return {to_double(q), q, 0.0, true}; }
    static MeasureValue approx(double v, double err, bool cert = true) {
        return {v, std::nullopt, err, cert};
    }
    bool is_exact() const { return exact.has_value(); }
};

struct Direction {
    Vec raw;
    std::vector<double> unit;

    Direction() = default;
    explicit Direction(Vec r) : raw(std::move(r)) {
        if (is_zero(raw)) throw Error(Errc::DimensionMismatch, "zero direction");
        double s = 0;
        for (const auto& x : raw) s += to_double(x) * to_double(x);
        s = std::sqrt(s);
        for (const auto& x : raw) unit.push_back(to_double(x) / s);
    }
    static Direction axis(int n, int i) {
        Vec v(n, Q(0));
        v[i] = 1;
        return Direction(v);
    }
    static Direction from_unit(const std::vector<double>& u) {
        Vec v;
        for (double x : u) v.push_back(Q(x));
        Direction d(v);
        d.unit = u;
        double s = 0;
        for (double x : u) s += x * x;
        s = std::sqrt(s);
        for (double& x : d.unit) x /= s;
        return d;
    }
    int dim() const { return static_cast<int>(raw.size()); }
    Q norm2() const { return dot(raw, raw); }
    double norm() const { return std::sqrt(to_double(norm2())); }
    std::optional<Q> exact_norm() const { return exact_sqrt(norm2()); }
};

struct Interval {
    Q lo, hi;
    bool lo_open = false, hi_open = false;

    bool empty() const { return hi < lo || (lo == hi && (lo_open || hi_open)); }
    Q length() const { return empty() ? Q(0) : Q(hi - lo); }
};

}  // namespace zhang
