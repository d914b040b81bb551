#pragma once

#include <deque>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "orbsp/triangulation.hpp"

namespace orbsp {

// Fan triangulation of a disc seen as an (m+o)-gon whose sides 1..o are pending arcs.
// Pending arcs get ids 0..o-1 (orbifold i on arc i), diagonals follow.
inline Triangulation fan_disc(int m, const std::vector<int>& weights) {
    SurfaceSpec spec{0, {m}, false, weights};
    auto vs = validate_surface(spec);
    const int o = static_cast<int>(weights.size());
    const int N = m + o;
    std::vector<Side> S(N);
    int bd = 0;
    for (int j = 0; j < N; ++j) S[j] = (j >= 1 && j <= o) ? Side::arc(j - 1) : Side::boundary(bd++);
    auto diag = [&](int i) { return Side::arc(o + i - 2); };
    // classify needs pendingness, which depends only on the side ids here
    auto pend = [&](const Side& x) { return x.is_arc() && x.id < o; };
    std::vector<Triangle> tris;
    for (int i = 1; i <= N - 2; ++i) {
        std::array<Side, 3> s{i == 1 ? S[0] : diag(i), S[i], i + 1 == N - 1 ? S[N - 1] : diag(i + 1)};
        int np = pend(s[0]) + pend(s[1]) + pend(s[2]);
        for (int r = 0; r < 3; ++r) {
            std::array<Side, 3> t{s[r], s[(r + 1) % 3], s[(r + 2) % 3]};
            if (np == 0) {
                tris.push_back(make_ord(t[0], t[1], t[2]));
                break;
            }
            if (np == 1 && pend(t[2])) {
                tris.push_back(make_once(t[0], t[1], t[2].id, t[2].id));
                break;
            }
            if (np == 2 && !pend(t[0])) {
                tris.push_back(make_twice(t[0], t[1].id, t[2].id, t[1].id, t[2].id));
                break;
            }
        }
    }
    return build_triangulation(vs, std::move(tris));
}

// Annulus with one marked point on each boundary component.
inline Triangulation annulus11() {
    auto vs = validate_surface({0, {1, 1}, false, {}});
    return build_triangulation(vs, {make_ord(Side::arc(0), Side::arc(1), Side::boundary(0)),
                                    make_ord(Side::arc(0), Side::arc(1), Side::boundary(1))});
}

// Once-punctured torus with one orbifold point. Arcs 0..3 are the ordinary arcs 1..4 of
// the standard picture and arc 4 is pending.
inline Triangulation torus_orb(int w) {
    auto vs = validate_surface({1, {}, true, {w}});
    auto a = Side::arc;
    return build_triangulation(vs, {make_ord(a(0), a(2), a(1)), make_ord(a(0), a(3), a(1)),
                                    make_once(a(3), a(2), 4, 0)});
}

inline Triangulation torus0() {
    auto vs = validate_surface({1, {}, true, {}});
    auto a = Side::arc;
    return build_triangulation(vs, {make_ord(a(0), a(1), a(2)), make_ord(a(0), a(1), a(2))});
}

inline Triangulation sphere4(const std::vector<int>& w) {
    auto vs = validate_surface({0, {}, true, w});
    return build_triangulation(vs, {make_twice(Side::arc(0), 1, 2, 0, 1), make_twice(Side::arc(0), 3, 4, 2, 3)});
}

template <class Rng>
Triangulation random_walk(Triangulation T, int steps, Rng& rng) {
    for (int s = 0; s < steps; ++s) {
        std::uniform_int_distribution<int> d(0, T.num_arcs() - 1);
        T = flip(T, d(rng));
    }
    return T;
}

// First triangulation in the flip class of seed (breadth first, up to isomorphism) satisfying pred.
template <class Pred>
std::optional<Triangulation> find_in_flip_orbit(const Triangulation& seed, Pred pred, std::size_t limit = 20000) {
    std::set<std::string> seen{canonical_key(seed)};
    std::deque<Triangulation> q{seed};
    while (!q.empty()) {
        Triangulation T = std::move(q.front());
        q.pop_front();
        if (pred(T)) return T;
        for (int k = 0; k < T.num_arcs(); ++k) {
            if (seen.size() >= limit) break;
            Triangulation n = flip(T, k);
            if (seen.insert(canonical_key(n)).second) q.push_back(std::move(n));
        }
    }
    return std::nullopt;
}

// Triangulations in the flip class of seed up to isomorphism, breadth first, at most limit of them.
inline std::vector<Triangulation> flip_class(const Triangulation& seed, std::size_t limit) {
    std::vector<Triangulation> out;
    find_in_flip_orbit(seed, [&](const Triangulation& T) {
        out.push_back(T);
        return out.size() >= limit;
    }, limit);
    return out;
}

} // namespace orbsp
