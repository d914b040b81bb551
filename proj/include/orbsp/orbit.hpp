#pragma once

#include <deque>
#include <set>
#include <string>
#include <vector>

#include "orbsp/quiver.hpp"
#include "orbsp/triangulation.hpp"

namespace orbsp {

// A triangulation together with the c-vectors of its arcs relative to a fixed seed.
// Principal-coefficient mutation follows every flip, so two marked triangulations
// reached from the same seed are isotopic exactly when their c-vector sets agree.
struct MarkedTriangulation {
    Triangulation tri;
    std::vector<std::vector<long long>> c;   // c[arc] = c-vector of that arc

    static MarkedTriangulation seed(Triangulation T) {
        const int n = T.num_arcs();
        std::vector<std::vector<long long>> c(n, std::vector<long long>(n, 0));
        for (int i = 0; i < n; ++i) c[i][i] = 1;
        return {std::move(T), std::move(c)};
    }

    // Arcs sorted by c-vector: position -> arc.
    std::vector<int> arc_order() const {
        std::vector<int> ord(c.size());
        std::iota(ord.begin(), ord.end(), 0);
        std::sort(ord.begin(), ord.end(), [&](int a, int b) { return c[a] < c[b]; });
        return ord;
    }

    std::string key() const {
        std::string s;
        for (int a : arc_order()) {
            for (long long x : c[a]) s += std::to_string(x) + ",";
            s += ";";
        }
        return s;
    }
};

inline std::vector<std::vector<long long>> mutate_cvectors(const Triangulation& T,
                                                           const std::vector<std::vector<long long>>& c, int k) {
    const auto M = to_matrix(build_quivers(T).q);
    const int n = T.num_arcs();
    auto out = c;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            if (j == k) {
                out[j][i] = -c[k][i];
            } else {
                long long cik = c[k][i];
                long long s = cik > 0 ? 1 : (cik < 0 ? -1 : 0);
                out[j][i] = c[j][i] + s * std::max(0LL, cik * M.B(k, j));
            }
        }
    }
    return out;
}

inline MarkedTriangulation flip(const MarkedTriangulation& mt, int k) {
    return {flip(mt.tri, k), mutate_cvectors(mt.tri, mt.c, k)};
}

enum class OrbitMode { Isotopy, Isomorphism };

struct OrbitResult {
    std::set<std::string> keys;
    bool overflow = false;
};

// Breadth-first closure under flips. Isotopy mode distinguishes triangulations up to
// isotopy; Isomorphism mode identifies triangulations with equal canonical keys.
inline OrbitResult enumerate_flip_orbit(const Triangulation& seed, std::size_t limit,
                                        OrbitMode mode = OrbitMode::Isotopy) {
    OrbitResult res;
    std::deque<MarkedTriangulation> frontier;
    auto key_of = [&](const MarkedTriangulation& m) {
        return mode == OrbitMode::Isotopy ? m.key() : canonical_key(m.tri);
    };
    auto s = MarkedTriangulation::seed(seed);
    res.keys.insert(key_of(s));
    frontier.push_back(std::move(s));
    bool cut = false;
    while (!frontier.empty() && !cut) {
        MarkedTriangulation cur = std::move(frontier.front());
        frontier.pop_front();
        for (int k = 0; k < cur.tri.num_arcs(); ++k) {
            if (res.keys.size() >= limit) {
                cut = true;
                break;
            }
            auto nxt = flip(cur, k);
            if (res.keys.insert(key_of(nxt)).second) frontier.push_back(std::move(nxt));
        }
    }
    res.overflow = cut;
    return res;
}

} // namespace orbsp
