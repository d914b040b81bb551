#pragma once

#include <map>
#include <string>
#include <vector>

#include "orbsp/colored.hpp"
#include "orbsp/field.hpp"
#include "orbsp/quiver.hpp"

namespace orbsp {

// Arrow of a species. The twist is the exponent j of rho^j restricted to the smaller of the
// two vertex fields, stored reduced modulo that field's degree.
struct SpArrow {
    int id = -1;
    int tail = -1;
    int head = -1;
    int twist = 0;
    std::string name;
};

struct Species {
    FieldTower K;
    std::vector<int> vertices;   // ascending
    std::vector<int> deg;        // indexed by vertex id, 0 if absent
    std::vector<SpArrow> arrows;

    int d(int v) const { return deg.at(v); }
    int dht(const SpArrow& a) const { return std::min(d(a.head), d(a.tail)); }
    const SpArrow& arrow(int id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw Error(Errc::Malformed, "no arrow " + std::to_string(id));
        return arrows[it->second];
    }
    bool has_arrow(int id) const { return index_.count(id) > 0; }
    int max_id() const { return index_.empty() ? -1 : index_.rbegin()->first; }

    void add_arrow(SpArrow a) {
        if (index_.count(a.id)) throw Error(Errc::Malformed, "duplicate arrow id " + std::to_string(a.id));
        a.twist = norm_twist(a.twist, std::min(d(a.head), d(a.tail)));
        index_[a.id] = static_cast<int>(arrows.size());
        arrows.push_back(std::move(a));
    }
    void remove_arrows(const std::vector<int>& ids) {
        std::vector<SpArrow> keep;
        for (auto& a : arrows)
            if (std::find(ids.begin(), ids.end(), a.id) == ids.end()) keep.push_back(a);
        arrows.clear();
        index_.clear();
        for (auto& a : keep) add_arrow(a);
    }
    static int norm_twist(int j, int dk) { return dk == 1 ? 0 : ((j % dk) + dk) % dk; }

    // F-dimension of the bimodule F_h (x)_{F_ht} F_t carried by an arrow.
    int bimodule_dim(const SpArrow& a) const { return d(a.head) * d(a.tail) / dht(a); }

private:
    std::map<int, int> index_;
};

inline std::string arrow_name(const Arrow& a) {
    return "a" + std::to_string(a.tri) + "_" + std::to_string(a.slot);
}

// Twist exponents of the arrows of Q(tau, omega) determined by the cocycle xi on Q'.
inline std::map<int, int> modulating_function(const ColoredTriangulation& ct) {
    const Triangulation& T = ct.tri;
    const auto cx = build_complex(T, false);
    if (ct.xi.size() != cx.n1() || !is_cocycle(cx, ct.xi))
        throw Error(Errc::NotACocycle, "modulating function needs a cocycle on Q'");
    std::map<int, int> g;
    for (const auto& a : build_quivers(T).q.arrows) {
        const int dh = T.weight(a.head), dt = T.weight(a.tail);
        if (dh == 1 || dt == 1) {
            g[a.id] = 0;
        } else if (dh * dt < 16) {
            g[a.id] = ct.xi.test(cx.index_of_arrow(a.id));
        } else {
            const int ell = ct.xi.test(cx.index_of_arrow(arrow_key(a.tri, 1)));
            g[a.id] = a.kind == ArrowKind::Double ? (ell + 2) % 4 : ell;
        }
    }
    return g;
}

inline Species build_species(const ColoredTriangulation& ct, const FieldTower& K) {
    const Triangulation& T = ct.tri;
    Species S;
    S.K = K;
    S.deg = T.weights();
    for (int a = 0; a < T.num_arcs(); ++a) S.vertices.push_back(a);
    const auto g = modulating_function(ct);
    for (const auto& a : build_quivers(T).q.arrows) S.add_arrow({a.id, a.tail, a.head, g.at(a.id), arrow_name(a)});
    return S;
}

// dims[i][j] = F-dimension of the arrow bimodules from vertex j to vertex i.
inline std::vector<std::vector<int>> species_dimensions(const Species& S) {
    const int n = static_cast<int>(S.deg.size());
    std::vector<std::vector<int>> D(n, std::vector<int>(n, 0));
    for (const auto& a : S.arrows) D[a.head][a.tail] += S.bimodule_dim(a);
    return D;
}

// The species realizes B: dim over F_i of e_i A e_j equals |b_ij|.
inline bool species_matches_matrix(const Species& S, const WeightedQuiver& q) {
    const auto M = to_matrix(q);
    const auto D = species_dimensions(S);
    for (int i = 0; i < M.B.n; ++i)
        for (int j = 0; j < M.B.n; ++j) {
            const int vi = q.vertices[i], vj = q.vertices[j];
            const long long b = M.B(i, j);
            const int dim = b > 0 ? D[vi][vj] : D[vj][vi];
            if (dim != std::llabs(b) * S.d(vi)) return false;
        }
    return true;
}

} // namespace orbsp
