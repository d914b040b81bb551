#pragma once

#include <map>
#include <string>
#include <vector>

#include "orbsp/f2.hpp"
#include "orbsp/quiver.hpp"

namespace orbsp {

struct ComplexF2 {
    bool hat = false;
    std::vector<int> X0;                      // arc ids
    std::vector<Arrow> X1;                    // arrows of Q' (or Q'')
    std::vector<int> X2;                      // triangle ids
    std::vector<std::array<int, 3>> d2;       // X1 indices of the boundary of each X2 cell
    std::map<int, int> x1_index;              // arrow key -> X1 index

    int index_of_arrow(int key) const {
        auto it = x1_index.find(key);
        return it == x1_index.end() ? -1 : it->second;
    }
    int index_of_vertex(int arc) const {
        auto it = std::lower_bound(X0.begin(), X0.end(), arc);
        return (it != X0.end() && *it == arc) ? static_cast<int>(it - X0.begin()) : -1;
    }
    std::size_t n1() const { return X1.size(); }

    // d1 d2 = 0 over F2.
    bool boundary_squares_to_zero() const {
        for (const auto& c : d2) {
            std::vector<int> deg(X0.size(), 0);
            for (int a : c) {
                deg[index_of_vertex(X1[a].head)] ^= 1;
                deg[index_of_vertex(X1[a].tail)] ^= 1;
            }
            for (int d : deg)
                if (d) return false;
        }
        return true;
    }
};

inline ComplexF2 build_complex(const Triangulation& T, bool hat) {
    const auto Q = build_quivers(T);
    const WeightedQuiver& src = hat ? Q.qdp : Q.qprime;
    ComplexF2 cx;
    cx.hat = hat;
    cx.X0 = Q.qprime.vertices;
    cx.X1 = src.arrows;
    for (std::size_t i = 0; i < cx.X1.size(); ++i) cx.x1_index[cx.X1[i].id] = static_cast<int>(i);
    for (int t = 0; t < T.num_triangles(); ++t) {
        const Triangle& tr = T.tri(t);
        if (!tr.interior()) continue;
        bool all = true;
        for (const auto& s : tr.s) all = all && T.weight(s.id) != 1;
        if (!all) continue;
        cx.X2.push_back(t);
        cx.d2.push_back({cx.index_of_arrow(arrow_key(t, 0)), cx.index_of_arrow(arrow_key(t, 1)),
                         cx.index_of_arrow(arrow_key(t, 2))});
    }
    return cx;
}

using Cochain = BitVec;

inline bool is_cocycle(const ComplexF2& cx, const Cochain& xi) {
    for (const auto& c : cx.d2)
        if (xi.test(c[0]) ^ xi.test(c[1]) ^ xi.test(c[2])) return false;
    return true;
}

inline Cochain cochain_from_keys(const ComplexF2& cx, const std::vector<int>& keys) {
    Cochain x(cx.n1());
    for (int k : keys) {
        int i = cx.index_of_arrow(k);
        if (i < 0) throw Error(Errc::Malformed, "arrow key " + std::to_string(k) + " not in complex");
        x.flip(i);
    }
    return x;
}

inline std::vector<int> cochain_keys(const ComplexF2& cx, const Cochain& x) {
    std::vector<int> out;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x.test(i)) out.push_back(cx.X1[i].id);
    return out;
}

struct Cohomology {
    std::vector<Cochain> Z1;
    EchelonF2 B1;
    std::vector<Cochain> H1;   // representatives completing B1 to a basis of Z1
    int dimZ1 = 0;
    int dimB1 = 0;
    int dimH1 = 0;

    std::string class_key(const Cochain& xi) const { return bits_string(B1.reduce(xi)); }

    // Coordinates of [xi] in the H1 basis.
    std::vector<int> coordinates(const Cochain& xi) const {
        const std::size_t n = xi.size(), h = H1.size();
        EchelonF2 aug(n + h);
        for (const auto& r : B1.rows()) {
            BitVec v(n + h);
            for (std::size_t i = 0; i < n; ++i)
                if (r.test(i)) v.set(i);
            aug.insert(v);
        }
        for (std::size_t j = 0; j < h; ++j) {
            BitVec v(n + h);
            for (std::size_t i = 0; i < n; ++i)
                if (H1[j].test(i)) v.set(i);
            v.set(n + j);
            aug.insert(v);
        }
        BitVec x(n + h);
        for (std::size_t i = 0; i < n; ++i)
            if (xi.test(i)) x.set(i);
        x = aug.reduce(x);
        std::vector<int> c(h, 0);
        for (std::size_t j = 0; j < h; ++j) c[j] = x.test(n + j);
        return c;
    }
};

inline Cohomology cohomology(const ComplexF2& cx) {
    Cohomology H;
    const std::size_t n = cx.n1();
    std::vector<BitVec> cols;
    for (std::size_t a = 0; a < n; ++a) {
        BitVec v(cx.d2.size());
        for (std::size_t t = 0; t < cx.d2.size(); ++t)
            for (int x : cx.d2[t])
                if (x == static_cast<int>(a)) v.flip(t);
        cols.push_back(v);
    }
    H.Z1 = kernel_f2(cols, n);
    H.B1 = EchelonF2(n);
    for (int v : cx.X0) {
        BitVec d(n);
        for (std::size_t a = 0; a < n; ++a) {
            if (cx.X1[a].head == v) d.flip(a);
            if (cx.X1[a].tail == v) d.flip(a);
        }
        H.B1.insert(d);
    }
    EchelonF2 span = H.B1;
    for (const auto& z : H.Z1)
        if (span.insert(z)) H.H1.push_back(z);
    H.dimZ1 = static_cast<int>(H.Z1.size());
    H.dimB1 = static_cast<int>(H.B1.dim());
    H.dimH1 = H.dimZ1 - H.dimB1;
    return H;
}

// Arrow of Q' inside the triangle of a weight-1 pending arc, if any.
inline int lift_companion(const Triangulation& T, const Arrow& eps) {
    const Triangle& tr = T.tri(eps.tri);
    const int j = eps.slot - 3;
    const int i = (j + 1) % 3;
    const Side& x = tr.s[i];
    const Side& y = tr.s[(i + 1) % 3];
    if (x.bd || y.bd || T.weight(x.id) == 1 || T.weight(y.id) == 1) return -1;
    return arrow_key(eps.tri, i);
}

inline Cochain hat_lift(const Triangulation& T, const ComplexF2& cx, const ComplexF2& hx, const Cochain& xi) {
    if (!is_cocycle(cx, xi)) throw Error(Errc::NotACocycle, "cochain violates a triangle condition");
    Cochain out(hx.n1());
    for (std::size_t a = 0; a < hx.n1(); ++a) {
        const Arrow& ar = hx.X1[a];
        if (ar.kind != ArrowKind::Epsilon) {
            out[a] = xi.test(cx.index_of_arrow(ar.id));
        } else {
            int b = lift_companion(T, ar);
            out[a] = 1 ^ (b >= 0 ? xi.test(cx.index_of_arrow(b)) : 0);
        }
    }
    return out;
}

inline Cochain hat_lift(const Triangulation& T, const Cochain& xi) {
    return hat_lift(T, build_complex(T, false), build_complex(T, true), xi);
}

} // namespace orbsp
