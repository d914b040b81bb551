#pragma once

#include <functional>
#include <map>
#include <string>

#include "orbsp/builders.hpp"
#include "orbsp/spmut.hpp"

namespace orbsp {

// Named arrows of a local configuration around the flipped arc k.
struct ConfigInstance {
    int id = 0;
    Triangulation tri;
    int k = -1;
    std::map<std::string, int> arrow;   // greek name -> arrow key
};

namespace detail {

inline bool interior_kind(const Triangulation& T, int t, Kind kind) {
    return T.tri(t).interior() && T.tri(t).kind == kind;
}

inline int pending_weight(const Triangulation& T, int t, int slot) { return T.weight(T.tri(t).s[slot].id); }

struct Match {
    int k = -1;
    std::map<std::string, int> arrow;
};

using Matcher = std::function<std::optional<Match>(const Triangulation&)>;

// k pending in an interior Once triangle of the given weight: alpha joins the outer arcs,
// beta leaves k and gamma enters k.
inline Matcher once_pending(int w) {
    return [w](const Triangulation& T) -> std::optional<Match> {
        for (int t = 0; t < T.num_triangles(); ++t) {
            if (!interior_kind(T, t, Kind::Once) || pending_weight(T, t, 2) != w) continue;
            if (T.tri(t).s[0].id == T.tri(t).s[1].id) continue;
            return Match{T.tri(t).s[2].id, {{"alpha", arrow_key(t, 0)}, {"beta", arrow_key(t, 2)}, {"gamma", arrow_key(t, 1)}}};
        }
        return std::nullopt;
    };
}

// k pending of weight wk in an interior Twice triangle whose other pending arc has weight wo:
// alpha leaves k, beta enters k, gamma is the third arrow of the cycle.
inline Matcher twice_pending(int wk, int wo) {
    return [wk, wo](const Triangulation& T) -> std::optional<Match> {
        for (int t = 0; t < T.num_triangles(); ++t) {
            if (!interior_kind(T, t, Kind::Twice)) continue;
            for (int i = 1; i <= 2; ++i) {
                if (pending_weight(T, t, i) != wk || pending_weight(T, t, 3 - i) != wo) continue;
                if (i == 1)
                    return Match{T.tri(t).s[1].id, {{"alpha", arrow_key(t, 1)}, {"beta", arrow_key(t, 0)}, {"gamma", arrow_key(t, 2)}}};
                return Match{T.tri(t).s[2].id, {{"alpha", arrow_key(t, 2)}, {"beta", arrow_key(t, 1)}, {"gamma", arrow_key(t, 0)}}};
            }
        }
        return std::nullopt;
    };
}

// k shared by two interior triangles (t1, slot i1) and (t2, slot i2) passing a test.
template <class F>
std::optional<Match> shared(const Triangulation& T, F f) {
    for (int k = 0; k < T.num_arcs(); ++k) {
        if (T.pending(k)) continue;
        const auto& o = T.occurrences(k);
        if (o[0].tri == o[1].tri) continue;
        for (int r = 0; r < 2; ++r) {
            const Slot A = o[r], B = o[1 - r];
            if (!T.tri(A.tri).interior() || !T.tri(B.tri).interior()) continue;
            if (auto m = f(A, B)) {
                m->k = k;
                return m;
            }
        }
    }
    return std::nullopt;
}

inline Matcher two_ord() {
    return [](const Triangulation& T) {
        return shared(T, [&](Slot A, Slot B) -> std::optional<Match> {
            if (T.tri(A.tri).kind != Kind::Ord || T.tri(B.tri).kind != Kind::Ord) return std::nullopt;
            return Match{-1, {{"alpha", arrow_key(A.tri, (A.slot + 1) % 3)}, {"beta", arrow_key(A.tri, A.slot)},
                              {"gamma", arrow_key(A.tri, (A.slot + 2) % 3)}, {"delta", arrow_key(B.tri, (B.slot + 1) % 3)},
                              {"epsilon", arrow_key(B.tri, B.slot)}, {"eta", arrow_key(B.tri, (B.slot + 2) % 3)}}};
        });
    };
}

// Two Once triangles of weight-1 pending arcs: k is the first outer side of A and, for
// config 20, the second outer side of B (pending arcs at the same end of k), for config 24
// the first outer side of B as well.
inline Matcher two_once(bool same_end) {
    return [same_end](const Triangulation& T) {
        return shared(T, [&](Slot A, Slot B) -> std::optional<Match> {
            const auto &ta = T.tri(A.tri), &tb = T.tri(B.tri);
            if (ta.kind != Kind::Once || tb.kind != Kind::Once) return std::nullopt;
            if (pending_weight(T, A.tri, 2) != 1 || pending_weight(T, B.tri, 2) != 1) return std::nullopt;
            if (A.slot != 0 || B.slot != (same_end ? 1 : 0)) return std::nullopt;
            if (same_end)
                return Match{-1, {{"alpha", arrow_key(A.tri, 0)}, {"beta", arrow_key(A.tri, 2)}, {"gamma", arrow_key(A.tri, 1)},
                                  {"epsilon", arrow_key(B.tri, 1)}, {"delta", arrow_key(B.tri, 0)}, {"eta", arrow_key(B.tri, 2)}}};
            return Match{-1, {{"alpha", arrow_key(A.tri, 0)}, {"beta", arrow_key(A.tri, 2)}, {"gamma", arrow_key(A.tri, 1)},
                              {"delta", arrow_key(B.tri, 0)}, {"eta", arrow_key(B.tri, 2)}, {"epsilon", arrow_key(B.tri, 1)}}};
        });
    };
}

// k is the outer side of a Twice triangle with pending weights (w, w) and the first outer side
// of a Once triangle with a weight-1 pending arc.
inline Matcher twice_once(int w) {
    return [w](const Triangulation& T) {
        return shared(T, [&](Slot A, Slot B) -> std::optional<Match> {
            const auto &ta = T.tri(A.tri), &tb = T.tri(B.tri);
            if (ta.kind != Kind::Twice || tb.kind != Kind::Once || A.slot != 0 || B.slot != 0) return std::nullopt;
            if (pending_weight(T, A.tri, 1) != w || pending_weight(T, A.tri, 2) != w || pending_weight(T, B.tri, 2) != 1)
                return std::nullopt;
            return Match{-1, {{"delta0", arrow_key(A.tri, 1)}, {"delta1", arrow_key(A.tri, 3)}, {"beta", arrow_key(A.tri, 0)},
                              {"gamma", arrow_key(A.tri, 2)}, {"alpha", arrow_key(B.tri, 0)}, {"epsilon", arrow_key(B.tri, 2)},
                              {"eta", arrow_key(B.tri, 1)}}};
        });
    };
}

struct ConfigSpec {
    int id;
    int m;
    std::vector<int> weights;
    Matcher match;
};

inline const std::vector<ConfigSpec>& config_specs() {
    static const std::vector<ConfigSpec> specs = {
        {1, 4, {1}, once_pending(1)},       {2, 4, {4}, once_pending(4)},
        {4, 4, {1, 4}, twice_pending(1, 4)}, {5, 4, {4, 1}, twice_pending(4, 1)},
        {11, 8, {}, two_ord()},             {20, 4, {1, 1}, two_once(true)},
        {24, 4, {1, 1}, two_once(false)},   {32, 4, {1, 1, 1}, twice_once(1)},
        {38, 4, {4, 4, 1}, twice_once(4)},
    };
    return specs;
}

} // namespace detail

// Hexagon with one orbifold point: one interior ordinary and one interior once-orbifolded triangle.
inline Triangulation hexagon_example(int w) {
    return *find_in_flip_orbit(fan_disc(6, {w}), [](const Triangulation& X) {
        int ord = 0, once = 0;
        for (const auto& t : X.triangles())
            if (t.interior()) ++(t.kind == Kind::Ord ? ord : once);
        return ord == 1 && once == 1;
    });
}

// Pentagon with two orbifold points: one interior ordinary and one interior twice-orbifolded triangle.
inline Triangulation pentagon_example(int w0, int w1) {
    return *find_in_flip_orbit(fan_disc(5, {w0, w1}), [](const Triangulation& X) {
        int ord = 0, twice = 0, other = 0;
        for (const auto& t : X.triangles())
            if (t.interior()) ++(t.kind == Kind::Ord ? ord : t.kind == Kind::Twice ? twice : other);
        return ord == 1 && twice == 1 && other == 0;
    });
}

inline std::vector<int> main_theorem_configs() {
    std::vector<int> ids;
    for (const auto& s : detail::config_specs()) ids.push_back(s.id);
    return ids;
}

inline ConfigInstance config_instance(int id) {
    for (const auto& s : detail::config_specs()) {
        if (s.id != id) continue;
        std::optional<detail::Match> found;
        auto T = find_in_flip_orbit(fan_disc(s.m, s.weights), [&](const Triangulation& X) {
            found = s.match(X);
            return found.has_value();
        });
        if (!T) throw Error(Errc::Unsupported, "no instance of configuration " + std::to_string(id));
        return {id, *T, found->k, found->arrow};
    }
    throw Error(Errc::Unsupported, "configuration " + std::to_string(id) + " is not covered");
}

// The displayed mutated potential of a configuration, written in the arrows of the premutation.
inline PathElem displayed_mutated_potential(const ConfigInstance& ci, const SP& tau, const Premutation& pm) {
    const Species& O = tau.sp;
    const Species& N = pm.sp.sp;
    const FieldTower& K = N.K;
    auto id = [&](const std::string& n) { return ci.arrow.at(n); };
    auto A = [&](const std::string& n) { return arrow_elem(N, id(n)); };
    auto St = [&](const std::string& n) { return arrow_elem(N, pm.star.at(id(n))); };
    auto C = [&](const std::string& b, const std::string& c, int s = 0) { return arrow_elem(N, pm.composite(id(b), id(c), s)); };
    auto Ch = [&](const std::string& b, const std::string& c, int h) { return arrow_elem(N, pm.composite_h(id(b), id(c), h)); };
    auto tw = [&](const std::string& n) { return O.arrow(id(n)).twist; };
    auto coef = [&](int v, long long c, int e) { return field_elem(N, v, c, e); };
    // pi(x) in front of a composite a: the projection that cyclic equivalence applies there.
    auto P = [&](const PathElem& x, const PathElem& a) { return pi_inv(N, x, N.arrow(a.begin()->first.arr[0])); };
    auto M = [&](std::initializer_list<PathElem> xs) { return mul(N, xs); };
    const long long half = K.inv(2);
    const int k = ci.k;

    PathElem W;
    for (const auto& [p, c] : tau.S) {
        bool through = false;
        for (int a : p.arr) through = through || O.arrow(a).head == k || O.arrow(a).tail == k;
        if (!through) add_term(N, W, p, c);
    }
    auto plus = [&](const PathElem& x) { W = add(N, W, x); };
    switch (ci.id) {
    case 1: {
        const int g = Species::norm_twist(-tw("alpha"), 2);
        const auto c0 = Ch("beta", "gamma", g), c1 = Ch("beta", "gamma", (g + 1) % 2);
        plus(M({A("alpha"), c0}));
        plus(M({P(M({St("gamma"), St("beta")}), c0), c0}));
        plus(M({St("gamma"), St("beta"), c1}));
        break;
    }
    case 2: {
        const auto c0 = C("beta", "gamma", 0), c1 = C("beta", "gamma", 1);
        plus(M({A("alpha"), c0}));
        plus(scale(N, half, M({P(M({St("gamma"), St("beta")}), c0), c0})));
        plus(scale(N, half, M({St("gamma"), coef(k, 1, -1), St("beta"), c1})));
        break;
    }
    case 4: {
        const int g = Species::norm_twist(-tw("gamma"), 2);
        const auto c0 = Ch("alpha", "beta", g), c1 = Ch("alpha", "beta", (g + 1) % 2);
        plus(M({A("gamma"), c0}));
        plus(M({P(M({St("beta"), St("alpha")}), c0), c0}));
        plus(M({St("beta"), St("alpha"), c1}));
        break;
    }
    case 5: {
        const auto c0 = C("alpha", "beta", 0), c1 = C("alpha", "beta", 1);
        plus(M({A("gamma"), c0}));
        plus(scale(N, half, M({St("beta"), St("alpha"), c0})));
        plus(scale(N, half, M({St("beta"), coef(k, 1, -1), St("alpha"), c1})));
        break;
    }
    case 11: {
        const auto bg = C("beta", "gamma"), ee = C("epsilon", "eta");
        plus(M({A("alpha"), bg}));
        plus(M({A("delta"), ee}));
        plus(M({P(M({St("gamma"), St("beta")}), bg), bg}));
        plus(M({P(M({St("eta"), St("epsilon")}), ee), ee}));
        plus(M({St("gamma"), St("epsilon"), C("epsilon", "gamma")}));
        plus(M({St("eta"), St("beta"), C("beta", "eta")}));
        break;
    }
    case 20:
        plus(M({A("gamma"), C("alpha", "beta")}));
        plus(M({A("eta"), C("epsilon", "delta")}));
        plus(M({St("beta"), St("alpha"), C("alpha", "beta")}));
        plus(M({St("delta"), St("epsilon"), C("epsilon", "delta")}));
        plus(M({St("beta"), St("epsilon"), C("epsilon", "beta", 0)}));
        plus(M({St("beta"), coef(k, 1, -2), St("epsilon"), C("epsilon", "beta", 2)}));
        plus(M({St("delta"), St("alpha"), C("alpha", "delta")}));
        break;
    case 24:
        plus(M({A("gamma"), C("alpha", "beta")}));
        plus(M({A("epsilon"), C("delta", "eta")}));
        plus(M({St("beta"), St("alpha"), C("alpha", "beta")}));
        plus(M({St("eta"), St("delta"), C("delta", "eta")}));
        plus(M({St("eta"), St("alpha"), C("alpha", "eta")}));
        plus(M({St("beta"), St("delta"), C("delta", "beta")}));
        break;
    case 32:
        plus(M({A("delta0"), C("beta", "gamma", 0)}));
        plus(M({A("delta1"), C("beta", "gamma", 2)}));
        plus(M({A("eta"), C("alpha", "epsilon")}));
        plus(M({St("gamma"), St("beta"), C("beta", "gamma", 0)}));
        plus(M({St("gamma"), coef(k, 1, -2), St("beta"), C("beta", "gamma", 2)}));
        plus(M({St("epsilon"), St("alpha"), C("alpha", "epsilon")}));
        plus(M({St("alpha"), C("alpha", "gamma"), St("gamma")}));
        plus(M({C("beta", "epsilon", 0), St("epsilon"), St("beta")}));
        plus(M({C("beta", "epsilon", 2), St("epsilon"), coef(k, 1, -2), St("beta")}));
        break;
    case 38: {
        const int j = tw("delta0") % 2;
        const auto cj = Ch("beta", "gamma", j), cj2 = Ch("beta", "gamma", (j + 2) % 4);
        plus(M({A(j == 0 ? "delta0" : "delta1"), cj}));
        plus(M({A(j == 0 ? "delta1" : "delta0"), cj2}));
        plus(M({A("eta"), C("alpha", "epsilon")}));
        plus(M({P(M({St("gamma"), St("beta")}), cj), cj}));
        plus(M({P(M({St("gamma"), St("beta")}), cj2), cj2}));
        plus(M({St("epsilon"), St("alpha"), C("alpha", "epsilon")}));
        plus(M({St("beta"), C("beta", "epsilon"), St("epsilon")}));
        plus(M({St("alpha"), C("alpha", "gamma"), St("gamma")}));
        break;
    }
    default:
        throw Error(Errc::Unsupported, "no displayed formula for configuration " + std::to_string(ci.id));
    }
    return W;
}

struct MainTheoremReport {
    int config = 0;
    std::string cocycle;
    bool displayed = false;     // premutation is cyclically equal to the displayed formula
    bool quiver = false;        // reduced arrows match Q(sigma) with twists g(sigma, zeta)
    bool jacobian = false;      // certified dimensions agree
    long long dim_mutated = -1;
    long long dim_sigma = -1;
    std::string note;
    bool ok() const { return displayed && quiver && jacobian; }
};

// Multiset of (tail, head, twist) over the arrows of a species.
inline std::multiset<std::tuple<int, int, int>> arrow_signature(const Species& S) {
    std::multiset<std::tuple<int, int, int>> m;
    for (const auto& a : S.arrows) m.insert({a.tail, a.head, Species::norm_twist(a.twist, S.dht(a))});
    return m;
}

inline MainTheoremReport verify_main_theorem(const ConfigInstance& ci, const Cochain& xi, const FieldTower& K) {
    MainTheoremReport r;
    r.config = ci.id;
    r.cocycle = bits_string(xi);
    const auto ct = make_colored(ci.tri, xi);
    const SP tau = build_sp(ct, K);
    const auto cs = colored_flip(ct, ci.k);
    const SP sigma = build_sp(cs, K);
    try {
        const Premutation pm = premutate(tau, ci.k);
        r.displayed = cyclically_equal(pm.sp.sp, pm.sp.S, displayed_mutated_potential(ci, tau, pm));
        SP red = reduce(pm.sp, sigma.auto_t + 2);
        red.auto_t = sigma.auto_t;
        r.quiver = arrow_signature(red.sp) == arrow_signature(sigma.sp);
        r.dim_mutated = jacobian_dimension(red).dim;
        r.dim_sigma = jacobian_dimension(sigma).dim;
        r.jacobian = r.dim_mutated == r.dim_sigma;
    } catch (const Error& e) {
        r.note = e.what();
    }
    return r;
}

// All cocycles on Q'(tau) when there are at most `cap` of them, otherwise the zero cocycle
// and the unit-vector combinations of a Z1 basis.
inline std::vector<Cochain> sample_cocycles(const Triangulation& T, std::size_t cap = 16) {
    const auto cx = build_complex(T, false);
    const auto H = cohomology(cx);
    std::vector<Cochain> out;
    const std::size_t n = H.Z1.size();
    if ((std::size_t{1} << n) <= cap) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            Cochain x(cx.n1());
            for (std::size_t i = 0; i < n; ++i)
                if (mask >> i & 1) x ^= H.Z1[i];
            out.push_back(x);
        }
        return out;
    }
    out.push_back(Cochain(cx.n1()));
    for (const auto& z : H.Z1) out.push_back(z);
    return out;
}

} // namespace orbsp
