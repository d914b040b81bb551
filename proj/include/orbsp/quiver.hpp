#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "orbsp/triangulation.hpp"

namespace orbsp {

enum class ArrowKind { Plain, Epsilon, Double };

// Arrows induced by triangles carry key 8*tri + slot: slot i < 3 is the arrow from side i
// to side i+1, slot 3 the extra parallel arrow, slot 3+j the epsilon arrow of the pending
// arc in slot j.
struct Arrow {
    int id = -1;
    int tail = -1;
    int head = -1;
    ArrowKind kind = ArrowKind::Plain;
    int tri = -1;
    int slot = -1;
    bool operator==(const Arrow&) const = default;
};

inline int arrow_key(int tri, int slot) { return 8 * tri + slot; }

struct WeightedQuiver {
    std::vector<int> vertices;   // arc ids, ascending
    std::vector<int> weight;     // indexed by arc id
    std::vector<Arrow> arrows;

    int index_of(int v) const {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
        return (it != vertices.end() && *it == v) ? static_cast<int>(it - vertices.begin()) : -1;
    }
    const Arrow* find(int id) const {
        for (const auto& a : arrows)
            if (a.id == id) return &a;
        return nullptr;
    }
};

struct QuiverSet {
    WeightedQuiver qbar, q, qprime, qdp;
};

inline QuiverSet build_quivers(const Triangulation& T) {
    QuiverSet Q;
    std::vector<int> all(T.num_arcs());
    std::iota(all.begin(), all.end(), 0);
    std::vector<int> nonone;
    for (int a : all)
        if (T.weight(a) != 1) nonone.push_back(a);
    for (auto* w : {&Q.qbar, &Q.q, &Q.qprime, &Q.qdp}) w->weight = T.weights();
    Q.qbar.vertices = Q.q.vertices = all;
    Q.qprime.vertices = Q.qdp.vertices = nonone;
    auto in_prime = [&](const Side& x) { return x.is_arc() && T.weight(x.id) != 1; };
    for (int t = 0; t < T.num_triangles(); ++t) {
        const Triangle& tr = T.tri(t);
        for (int i = 0; i < 3; ++i) {
            const Side& x = tr.s[i];
            const Side& y = tr.s[(i + 1) % 3];
            if (x.bd || y.bd) continue;
            Arrow a{arrow_key(t, i), x.id, y.id, ArrowKind::Plain, t, i};
            Q.qbar.arrows.push_back(a);
            Q.q.arrows.push_back(a);
            if (in_prime(x) && in_prime(y)) {
                Q.qprime.arrows.push_back(a);
                Q.qdp.arrows.push_back(a);
            }
        }
        if (tr.kind == Kind::Twice && T.weight(tr.s[1].id) == T.weight(tr.s[2].id))
            Q.q.arrows.push_back({arrow_key(t, 3), tr.s[1].id, tr.s[2].id, ArrowKind::Double, t, 3});
        for (int j = 1; j < 3; ++j) {
            if (!tr.is_pending_slot(j) || T.weight(tr.s[j].id) != 1) continue;
            const Side& x = tr.s[(j + 1) % 3];
            const Side& y = tr.s[(j + 2) % 3];
            const bool px = in_prime(x), py = in_prime(y);
            if (!px && !py) continue;
            int tail = py ? y.id : x.id;
            int head = px ? x.id : y.id;
            Q.qdp.arrows.push_back({arrow_key(t, 3 + j), tail, head, ArrowKind::Epsilon, t, 3 + j});
        }
    }
    return Q;
}

struct IntMatrix {
    int n = 0;
    std::vector<long long> a;
    IntMatrix() = default;
    explicit IntMatrix(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, 0) {}
    long long& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    long long operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
    bool operator==(const IntMatrix&) const = default;
};

struct MatrixPair {
    IntMatrix B;
    std::vector<int> D;
    bool operator==(const MatrixPair&) const = default;
};

// b_ij = (#arrows j->i - #arrows i->j) * d_j / gcd(d_i, d_j); rows and columns follow
// wq.vertices.
inline MatrixPair to_matrix(const WeightedQuiver& wq) {
    const int n = static_cast<int>(wq.vertices.size());
    IntMatrix cnt(n);
    for (const auto& a : wq.arrows) {
        int t = wq.index_of(a.tail), h = wq.index_of(a.head);
        if (t < 0 || h < 0) throw Error(Errc::Malformed, "arrow endpoint outside vertex set");
        ++cnt(t, h);
    }
    MatrixPair M{IntMatrix(n), std::vector<int>(n)};
    for (int i = 0; i < n; ++i) M.D[i] = wq.weight[wq.vertices[i]];
    for (int i = 0; i < n; ++i) {
        if (cnt(i, i) > 0) throw Error(Errc::NotTwoAcyclic, "loop at vertex " + std::to_string(wq.vertices[i]));
        for (int j = 0; j < n; ++j) {
            if (i != j && cnt(i, j) > 0 && cnt(j, i) > 0)
                throw Error(Errc::NotTwoAcyclic, "2-cycle between " + std::to_string(wq.vertices[i]) + " and " +
                                                     std::to_string(wq.vertices[j]));
            const long long g = std::gcd(M.D[i], M.D[j]);
            M.B(i, j) = (cnt(j, i) - cnt(i, j)) * M.D[j] / g;
        }
    }
    return M;
}

inline IntMatrix mutate_matrix(const IntMatrix& B, int k) {
    IntMatrix R(B.n);
    for (int i = 0; i < B.n; ++i)
        for (int j = 0; j < B.n; ++j) {
            if (i == k || j == k) {
                R(i, j) = -B(i, j);
            } else {
                long long s = B(i, k) > 0 ? 1 : (B(i, k) < 0 ? -1 : 0);
                R(i, j) = B(i, j) + s * std::max(0LL, B(i, k) * B(k, j));
            }
        }
    return R;
}

inline WeightedQuiver quiver_from_matrix(const MatrixPair& M, const std::vector<int>& vertices,
                                         const std::vector<int>& weight) {
    WeightedQuiver q;
    q.vertices = vertices;
    q.weight = weight;
    const int n = M.B.n;
    int next = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            long long b = M.B(j, i);
            if (b <= 0) continue;
            const long long g = std::gcd(M.D[i], M.D[j]);
            if ((b * g) % M.D[i] != 0) throw Error(Errc::Malformed, "matrix entry not realizable by arrows");
            for (long long c = 0; c < b * g / M.D[i]; ++c)
                q.arrows.push_back({next++, vertices[i], vertices[j], ArrowKind::Plain, -1, -1});
        }
    return q;
}

inline WeightedQuiver mutate_weighted(const WeightedQuiver& wq, int k) {
    auto M = to_matrix(wq);
    int ki = wq.index_of(k);
    if (ki < 0) throw Error(Errc::Malformed, "mutation vertex not in quiver");
    M.B = mutate_matrix(M.B, ki);
    return quiver_from_matrix(M, wq.vertices, wq.weight);
}

inline bool skew_symmetrizable(const MatrixPair& M) {
    for (int i = 0; i < M.B.n; ++i)
        for (int j = 0; j < M.B.n; ++j)
            if (M.D[i] * M.B(i, j) != -M.D[j] * M.B(j, i)) return false;
    return true;
}

// Connectivity of the underlying graph.
inline bool connected(const WeightedQuiver& wq) {
    const int n = static_cast<int>(wq.vertices.size());
    if (n == 0) return true;
    detail::UnionFind uf(n);
    for (const auto& a : wq.arrows) uf.unite(wq.index_of(a.tail), wq.index_of(a.head));
    for (int i = 1; i < n; ++i)
        if (uf.find(i) != uf.find(0)) return false;
    return true;
}

} // namespace orbsp
