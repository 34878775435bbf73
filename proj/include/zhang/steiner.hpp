#pragma once
// Steiner symmetrization about e_n-perp.

#include "polytope.hpp"

namespace zhang {

struct Envelope {
    // affine pieces t = c0 + c.y of the upper (a_n > 0) and lower (a_n < 0) boundary
    struct Piece {
        Vec c;
        Q c0;
    };
    std::vector<Piece> upper, lower;
};

inline Envelope envelopes(const Polytope& P) {
    const int n = P.dim;
    Envelope E;
    for (const auto& h : P.halfspaces) {
        const Q& an = h.a[n - 1];
        if (an == 0) continue;
        Envelope::Piece pc;
        pc.c0 = h.b / an;
        for (int j = 0; j < n - 1; ++j) pc.c.push_back(-h.a[j] / an);
        (an > 0 ? E.upper : E.lower).push_back(std::move(pc));
    }
    return E;
}

inline Polytope steiner_symmetrize(const Polytope& P) {
    if (!P.full()) throw Error(Errc::DegenerateBody, "symmetrization needs a full-dimensional body");
    const int n = P.dim;
    if (n < 2) throw Error(Errc::DimensionMismatch, "symmetrization needs dim >= 2");
    Envelope E = envelopes(P);
    std::vector<Halfspace> hs;
    for (const auto& u : E.upper)
        for (const auto& l : E.lower) {
            // +-2t <= u(y) - l(y)
            Vec a(n);
            for (int j = 0; j < n - 1; ++j) a[j] = l.c[j] - u.c[j];
            Q b = u.c0 - l.c0;
            a[n - 1] = 2;
            hs.push_back({a, b});
            a[n - 1] = -2;
            hs.push_back({a, b});
        }
    for (const auto& h : project_drop_last(P).halfspaces) {
        Vec a = h.a;
        a.push_back(0);
        hs.push_back({a, h.b});
    }
    auto S = from_halfspaces(n, hs);
    if (!S) throw Error(Errc::DegenerateBody, "empty symmetral");
    return *S;
}

}  // namespace zhang
