#pragma once

#include <climits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "orbsp/species.hpp"

namespace orbsp {

// Decorated path v^e0 a1 v^e1 ... an v^en, composed right to left: t(a_i) = h(a_{i+1}).
// In normal form e0 is in 0..3 and each e_i (i >= 1) is a coset representative of
// F_{t(a_i)} modulo F_{h,t}(a_i), i.e. a multiple of 4/d_t below 4/d_{h,t}.
struct Path {
    int v = -1;                // left vertex
    std::vector<int> arr;
    std::vector<int> ex;       // arr.size() + 1 exponents
    int len() const { return static_cast<int>(arr.size()); }
    auto operator<=>(const Path&) const = default;
};

using PathElem = std::map<Path, long long>;

inline int path_right(const Species& S, const Path& p) { return p.arr.empty() ? p.v : S.arrow(p.arr.back()).tail; }

inline int degree(const PathElem& x) {
    int m = 0;
    for (const auto& [p, c] : x) m = std::max(m, p.len());
    return m;
}

// Moves every coefficient as far left as its arrow allows; returns the scalar picked up.
inline long long normalize(const Species& S, Path& p) {
    const FieldTower& K = S.K;
    long long c = 1;
    for (int i = p.len(); i >= 1; --i) {
        const SpArrow& a = S.arrow(p.arr[i - 1]);
        const int step = 4 / S.dht(a);
        const int e = p.ex[i];
        const int s = ((e % step) + step) % step;
        const int M = e - s;
        p.ex[i] = s;
        p.ex[i - 1] += M;
        c = K.mul(c, K.zeta_pow(static_cast<long long>(a.twist) * M));
    }
    c = K.mul(c, K.z_part(p.ex[0]));
    p.ex[0] = ((p.ex[0] % 4) + 4) % 4;
    return c;
}

inline void add_term(const Species& S, PathElem& x, Path p, long long c) {
    c = S.K.md(c);
    if (c == 0) return;
    c = S.K.mul(c, normalize(S, p));
    long long& slot = x[p];
    slot = S.K.md(slot + c);
    if (slot == 0) x.erase(p);
}

inline PathElem field_elem(const Species& S, int v, long long c, int e) {
    if (e % (4 / S.d(v)) != 0) throw Error(Errc::Malformed, "coefficient outside the vertex field");
    PathElem x;
    add_term(S, x, Path{v, {}, {e}}, c);
    return x;
}
inline PathElem unit(const Species& S, int v) { return field_elem(S, v, 1, 0); }
inline PathElem arrow_elem(const Species& S, int id, long long c = 1) {
    PathElem x;
    add_term(S, x, Path{S.arrow(id).head, {id}, {0, 0}}, c);
    return x;
}

inline PathElem add(const Species& S, PathElem x, const PathElem& y, long long s = 1) {
    for (const auto& [p, c] : y) {
        long long& slot = x[p];
        slot = S.K.md(slot + S.K.mul(s, c));
        if (slot == 0) x.erase(p);
    }
    return x;
}
inline PathElem sub(const Species& S, const PathElem& x, const PathElem& y) { return add(S, x, y, -1); }
inline PathElem scale(const Species& S, long long s, const PathElem& x) { return add(S, {}, x, s); }

inline PathElem truncate(const PathElem& x, int maxlen) {
    PathElem r;
    for (const auto& [p, c] : x)
        if (p.len() <= maxlen) r.emplace(p, c);
    return r;
}

inline Path concat(const Path& x, const Path& y) {
    Path r{x.v, x.arr, x.ex};
    r.arr.insert(r.arr.end(), y.arr.begin(), y.arr.end());
    r.ex.back() += y.ex[0];
    r.ex.insert(r.ex.end(), y.ex.begin() + 1, y.ex.end());
    return r;
}

inline PathElem mul(const Species& S, const PathElem& x, const PathElem& y, int maxlen = INT_MAX) {
    PathElem r;
    for (const auto& [p, c] : x) {
        const int rv = path_right(S, p);
        for (const auto& [q, d] : y) {
            if (q.v != rv || p.len() + q.len() > maxlen) continue;
            add_term(S, r, concat(p, q), S.K.mul(c, d));
        }
    }
    return r;
}

inline PathElem mul(const Species& S, std::initializer_list<PathElem> xs) {
    auto it = xs.begin();
    PathElem r = *it;
    for (++it; it != xs.end(); ++it) r = mul(S, r, *it);
    return r;
}

// (1/d) sum over nu in {v^(4r/d)} of rho^j(nu^-1) x nu; with j = -twist(a) this is pi_{g_a^-1}.
inline PathElem pi(const Species& S, const PathElem& x, int j, int d) {
    const FieldTower& K = S.K;
    const long long invd = K.inv(d);
    PathElem r;
    for (const auto& [p, c] : x)
        for (int t = 0; t < d; ++t) {
            const int M = 4 * t / d;
            Path q = p;
            q.ex.front() -= M;
            q.ex.back() += M;
            add_term(S, r, q, K.mul(K.mul(c, invd), K.zeta_pow(-static_cast<long long>(j) * M)));
        }
    return r;
}
inline PathElem pi_inv(const Species& S, const PathElem& x, const SpArrow& a) {
    return pi(S, x, -a.twist, S.dht(a));
}

// A cycle as (a_i, f_i) pairs: a_0 v^f_0 a_1 v^f_1 ... a_{n-1} v^f_{n-1}.
struct Cyc {
    std::vector<int> arr;
    std::vector<int> f;
};

inline Cyc to_cyc(const Path& p) {
    Cyc c{p.arr, std::vector<int>(p.ex.begin() + 1, p.ex.end())};
    if (!c.f.empty()) c.f.back() += p.ex[0];
    return c;
}

// The path obtained by cutting the cycle just before a_r and dropping a_r itself:
// v^f_r a_{r+1} ... a_{r-1} v^f_{r-1}, running from t(a_r) to h(a_r).
inline Path cut_after(const Species& S, const Cyc& c, int r) {
    const int n = static_cast<int>(c.arr.size());
    Path p{S.arrow(c.arr[r]).tail, {}, {c.f[r]}};
    for (int i = 1; i < n; ++i) {
        p.arr.push_back(c.arr[(r + i) % n]);
        p.ex.push_back(c.f[(r + i) % n]);
    }
    return p;
}

inline bool is_cycle(const Species& S, const Path& p) { return p.len() > 0 && path_right(S, p) == p.v; }

inline PathElem cyclic_derivative(const Species& S, const PathElem& W, int a) {
    const SpArrow& A = S.arrow(a);
    PathElem x;
    for (const auto& [p, c] : W) {
        const Cyc cy = to_cyc(p);
        for (std::size_t j = 0; j < cy.arr.size(); ++j)
            if (cy.arr[j] == a) add_term(S, x, cut_after(S, cy, static_cast<int>(j)), c);
    }
    return pi_inv(S, x, A);
}

// Canonical representative modulo cyclic equivalence: each cycle is rotated to start at its
// lexicographically least rotation and written a * pi_{g_a^-1}(rest).
inline PathElem canonical(const Species& S, const PathElem& W) {
    PathElem r;
    for (const auto& [p, c] : W) {
        if (!is_cycle(S, p)) throw Error(Errc::Malformed, "potential term is not a cycle");
        const Cyc cy = to_cyc(p);
        const int n = static_cast<int>(cy.arr.size());
        int best = 0;
        auto rot = [&](int s) {
            std::vector<int> v(n);
            for (int i = 0; i < n; ++i) v[i] = cy.arr[(s + i) % n];
            return v;
        };
        for (int s = 1; s < n; ++s)
            if (rot(s) < rot(best)) best = s;
        PathElem rest;
        add_term(S, rest, cut_after(S, cy, best), c);
        const SpArrow& a = S.arrow(cy.arr[best]);
        r = add(S, r, mul(S, arrow_elem(S, a.id), pi_inv(S, rest, a)));
    }
    return r;
}

inline PathElem homogeneous_part(const PathElem& x, int deg) {
    PathElem r;
    for (const auto& [p, c] : x)
        if (p.len() == deg) r.emplace(p, c);
    return r;
}

inline bool contains_arrow(const Path& p, int a) { return std::find(p.arr.begin(), p.arr.end(), a) != p.arr.end(); }

// Algebra endomorphism given on arrows; unlisted arrows are fixed.
inline PathElem substitute(const Species& S, const PathElem& W, const std::map<int, PathElem>& img, int maxlen) {
    PathElem r;
    for (const auto& [p, c] : W) {
        PathElem acc;
        add_term(S, acc, Path{p.v, {}, {p.ex[0]}}, c);
        for (int i = 0; i < p.len(); ++i) {
            auto it = img.find(p.arr[i]);
            const PathElem ai = it == img.end() ? arrow_elem(S, p.arr[i]) : it->second;
            acc = mul(S, acc, ai, maxlen);
            const int v = S.arrow(p.arr[i]).tail;
            acc = mul(S, acc, field_elem(S, v, 1, p.ex[i + 1]), maxlen);
            if (acc.empty()) break;
        }
        r = add(S, r, acc);
    }
    return r;
}

inline std::string to_string(const Species& S, const PathElem& x) {
    if (x.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, c] : x) {
        if (!first) os << " + ";
        first = false;
        os << c << " * e_" << p.v;
        if (p.ex[0]) os << " v^" << p.ex[0];
        for (int i = 0; i < p.len(); ++i) {
            os << " " << S.arrow(p.arr[i]).name;
            if (p.ex[i + 1]) os << " v^" << p.ex[i + 1];
        }
    }
    return os.str();
}

// S(tau, xi): one cycle per interior triangle, plus the double-arrow companion in Twice triangles.
inline PathElem build_potential(const Triangulation& T, const Species& S) {
    PathElem W;
    auto word = [&](std::vector<int> arr, std::vector<int> ex) {
        add_term(S, W, Path{S.arrow(arr[0]).head, std::move(arr), std::move(ex)}, 1);
    };
    for (int t = 0; t < T.num_triangles(); ++t) {
        const Triangle& tr = T.tri(t);
        if (!tr.interior()) continue;
        const int k0 = arrow_key(t, 0), k1 = arrow_key(t, 1), k2 = arrow_key(t, 2), k3 = arrow_key(t, 3);
        if (tr.kind != Kind::Twice) {
            word({k0, k2, k1}, {0, 0, 0, 0});
            continue;
        }
        const int w1 = T.weight(tr.s[1].id), w2 = T.weight(tr.s[2].id);
        word({k1, k0, k2}, {0, 0, 0, 0});
        if (w1 == 1 && w2 == 1) word({k3, k0, k2}, {0, 0, 2, 0});
        if (w1 == 4 && w2 == 4) word({k3, k0, k2}, {0, 0, 0, 0});
    }
    return W;
}

} // namespace orbsp
