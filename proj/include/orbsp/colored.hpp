#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "orbsp/f2complex.hpp"
#include "orbsp/orbit.hpp"

namespace orbsp {

// Chain in the hat complex of tau, as a list of arrow keys (F2 sum).
using ArrowChain = std::vector<int>;

namespace detail {

inline const Arrow* find_arrow(const WeightedQuiver& q, int key) { return q.find(key); }

inline bool exceptional(const Triangulation& T, const Triangle& tr, int& ell) {
    if (!tr.interior()) return false;
    int cnt = 0;
    for (const auto& s : tr.s)
        if (T.weight(s.id) == 1) {
            ++cnt;
            ell = s.id;
        }
    return cnt == 1;
}

// The Q' arrow of an exceptional triangle not incident to its weight-1 arc.
inline int delta_key(const Triangulation& T, int t) {
    const Triangle& tr = T.tri(t);
    for (int i = 0; i < 3; ++i) {
        const Side& x = tr.s[i];
        const Side& y = tr.s[(i + 1) % 3];
        if (x.is_arc() && y.is_arc() && T.weight(x.id) != 1 && T.weight(y.id) != 1) return arrow_key(t, i);
    }
    return -1;
}

inline int eps_key(const Triangulation& T, int ell) {
    const Slot s = T.occurrences(ell)[0];
    return arrow_key(s.tri, 3 + s.slot);
}

} // namespace detail

// The chain map phi_{tau,sigma} on the arrows of Q''(sigma), for sigma = flip(tau, k).
inline std::map<int, ArrowChain> phi_map(const Triangulation& tau, const FlipResult& fr) {
    const Triangulation& sigma = fr.sigma;
    const int k = fr.k;
    const auto Qs = build_quivers(sigma).qdp;
    const auto Qt = build_quivers(tau).qdp;
    auto touched = [&](int t) { return std::find(fr.touched.begin(), fr.touched.end(), t) != fr.touched.end(); };
    std::map<int, ArrowChain> phi;

    // tau arrow between region side x and k, reversed relative to the sigma arrow
    auto star = [&](const Arrow& a) -> int {
        const Triangle& tr = sigma.tri(a.tri);
        const int i = a.slot, j = (a.slot + 1) % 3;
        const int xs = (tr.s[i].is_arc() && tr.s[i].id == k) ? j : i;
        for (const auto& p : fr.region) {
            if (!(p.sigma == Slot{a.tri, xs})) continue;
            const Triangle& tt = tau.tri(p.tau.tri);
            const int ks = tt.slot_of(k);
            const int key = (ks == (p.tau.slot + 1) % 3) ? arrow_key(p.tau.tri, p.tau.slot) : arrow_key(p.tau.tri, ks);
            if (!Qt.find(key)) throw Error(Errc::NotAFlipPair, "star arrow missing in tau");
            return key;
        }
        throw Error(Errc::NotAFlipPair, "arrow side outside the flip region");
    };

    int ell = -1;
    const bool k_pending = sigma.pending(k);
    const int tk = sigma.occurrences(k)[0].tri;
    const bool exc = k_pending && detail::exceptional(sigma, sigma.tri(tk), ell);
    const bool case1 = exc && sigma.weight(k) == 1;
    const bool case2 = exc && sigma.weight(k) == 4 && sigma.tri(tk).kind == Kind::Twice && ell != k;

    for (const auto& a : Qs.arrows) {
        if (!touched(a.tri)) {
            phi[a.id] = {a.id};
            continue;
        }
        if (case1) {
            if (a.kind == ArrowKind::Epsilon) phi[a.id] = {detail::delta_key(tau, a.tri)};
            else phi[a.id] = {detail::eps_key(tau, k)};
            continue;
        }
        if (case2) {
            if (a.kind == ArrowKind::Epsilon) phi[a.id] = {detail::eps_key(tau, ell)};
            else phi[a.id] = {detail::delta_key(tau, a.tri)};
            continue;
        }
        if (a.kind == ArrowKind::Epsilon) {
            const Triangle& tr = sigma.tri(a.tri);
            const int l = tr.s[a.slot - 3].id;
            const int et = detail::eps_key(tau, l);
            const Arrow* e = Qt.find(et);
            if (!e) throw Error(Errc::NotAFlipPair, "epsilon arrow missing in tau");
            ArrowChain ch{et};
            auto find_between = [&](int tail, int head) -> int {
                for (int t : fr.touched)
                    for (const auto& b : Qt.arrows)
                        if (b.tri == t && b.kind == ArrowKind::Plain && b.tail == tail && b.head == head) return b.id;
                return -1;
            };
            if (e->tail != a.tail) {
                int mu = find_between(a.tail, e->tail);
                if (mu >= 0) ch.push_back(mu);
            }
            if (e->head != a.head) {
                int nu = find_between(e->head, a.head);
                if (nu >= 0) ch.push_back(nu);
            }
            phi[a.id] = ch;
            continue;
        }
        if (a.tail == k || a.head == k) {
            phi[a.id] = {star(a)};
            continue;
        }
        const Triangle& tr = sigma.tri(a.tri);
        const int ks = tr.slot_of(k);
        const Arrow gamma{arrow_key(a.tri, (ks + 2) % 3), -1, -1, ArrowKind::Plain, a.tri, (ks + 2) % 3};
        const Arrow beta{arrow_key(a.tri, ks), -1, -1, ArrowKind::Plain, a.tri, ks};
        phi[a.id] = {star(beta), star(gamma)};
    }
    return phi;
}

// (phi^* f)(alpha) = f(phi(alpha)).
inline Cochain phi_pullback(const Triangulation& tau, const FlipResult& fr, const Cochain& f) {
    const auto ht = build_complex(tau, true);
    const auto hs = build_complex(fr.sigma, true);
    if (f.size() != ht.n1()) throw Error(Errc::NotAFlipPair, "cochain does not live on tau");
    const auto phi = phi_map(tau, fr);
    Cochain out(hs.n1());
    for (std::size_t i = 0; i < hs.n1(); ++i) {
        bool v = false;
        for (int key : phi.at(hs.X1[i].id)) {
            int j = ht.index_of_arrow(key);
            if (j < 0) throw Error(Errc::NotAFlipPair, "phi image outside the hat complex of tau");
            v ^= f.test(j);
        }
        out[i] = v;
    }
    return out;
}

struct ColoredTriangulation {
    Triangulation tri;
    Cochain xi;

    Cochain xi_hat() const { return hat_lift(tri, xi); }
};

inline ColoredTriangulation make_colored(Triangulation T, Cochain xi) {
    if (!is_cocycle(build_complex(T, false), xi)) throw Error(Errc::NotACocycle, "not a cocycle");
    return {std::move(T), std::move(xi)};
}

inline ColoredTriangulation zero_colored(Triangulation T) {
    Cochain z(build_complex(T, false).n1());
    return {std::move(T), z};
}

inline ColoredTriangulation colored_flip(const ColoredTriangulation& ct, int k, FlipResult* out_fr = nullptr) {
    FlipResult fr = flip_ex(ct.tri, k);
    const Cochain zhat = phi_pullback(ct.tri, fr, ct.xi_hat());
    const auto cs = build_complex(fr.sigma, false);
    const auto hs = build_complex(fr.sigma, true);
    Cochain zeta(cs.n1());
    for (std::size_t i = 0; i < cs.n1(); ++i) zeta[i] = zhat.test(hs.index_of_arrow(cs.X1[i].id));
    if (!is_cocycle(cs, zeta)) throw Error(Errc::LiftMismatch, "restricted cochain is not a cocycle");
    if (hat_lift(fr.sigma, cs, hs, zeta) != zhat) throw Error(Errc::LiftMismatch, "lift of restriction differs");
    ColoredTriangulation res{fr.sigma, zeta};
    if (out_fr) *out_fr = std::move(fr);
    return res;
}

// Relabelling of a triangulation: arcs renumbered by perm, triangles sorted and rotated.
struct Relabeled {
    Triangulation tri;
    std::map<int, int> arrow_map;   // old arrow key -> new arrow key
};

inline Relabeled relabel(const Triangulation& T, const std::vector<int>& perm) {
    struct Item {
        Triangle t;
        int old;
        int rot;
    };
    std::vector<Item> items;
    for (int t = 0; t < T.num_triangles(); ++t) {
        Triangle tr = T.tri(t);
        for (auto& s : tr.s)
            if (s.is_arc()) s.id = perm[s.id];
        int rot = 0;
        if (tr.kind == Kind::Ord) {
            Triangle best = tr;
            for (int r = 1; r < 3; ++r) {
                Triangle c = tr;
                for (int i = 0; i < 3; ++i) c.s[i] = tr.s[(i + r) % 3];
                if (c.s < best.s) {
                    best = c;
                    rot = r;
                }
            }
            tr = best;
        }
        items.push_back({tr, t, rot});
    }
    std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        if (a.t.kind != b.t.kind) return a.t.kind < b.t.kind;
        return a.t.s < b.t.s;
    });
    std::vector<Triangle> tris;
    Relabeled R{build_triangulation(T.surface(), [&] {
                    for (const auto& it : items) tris.push_back(it.t);
                    return tris;
                }()),
                {}};
    for (int nt = 0; nt < static_cast<int>(items.size()); ++nt) {
        const auto& it = items[nt];
        for (int s = 0; s < 8; ++s) {
            int ns = s < 3 ? ((s - it.rot) % 3 + 3) % 3 : s;
            R.arrow_map[arrow_key(it.old, s)] = arrow_key(nt, ns);
        }
    }
    return R;
}

// Arrow key maps between two triangulations with the same triangles up to order and
// rotation of ordinary triangles. Several maps are returned when identical triangles occur.
inline std::vector<std::map<int, int>> alignments(const Triangulation& A, const Triangulation& B) {
    const int h = A.num_triangles();
    std::vector<std::map<int, int>> out;
    if (h != B.num_triangles()) return out;
    auto rot_of = [](const Triangle& x, const Triangle& y) {
        if (x.kind != y.kind || x.orb != y.orb) return -1;
        for (int r = 0; r < (x.kind == Kind::Ord ? 3 : 1); ++r) {
            bool ok = true;
            for (int i = 0; i < 3; ++i) ok = ok && y.s[i] == x.s[(i + r) % 3];
            if (ok) return r;
        }
        return -1;
    };
    std::vector<int> target(h, -1), rot(h, 0);
    std::vector<bool> used(h, false);
    auto rec = [&](auto&& self, int t) -> void {
        if (t == h) {
            std::map<int, int> m;
            for (int a = 0; a < h; ++a)
                for (int s = 0; s < 8; ++s)
                    m[arrow_key(a, s)] = arrow_key(target[a], s < 3 ? ((s - rot[a]) % 3 + 3) % 3 : s);
            out.push_back(std::move(m));
            return;
        }
        for (int u = 0; u < h; ++u) {
            if (used[u]) continue;
            int r = rot_of(A.tri(t), B.tri(u));
            if (r < 0) continue;
            used[u] = true;
            target[t] = u;
            rot[t] = r;
            self(self, t + 1);
            used[u] = false;
        }
    };
    rec(rec, 0);
    return out;
}

inline Cochain transport_cochain(const ComplexF2& from, const ComplexF2& to, const std::map<int, int>& amap,
                                 const Cochain& x) {
    Cochain y(to.n1());
    for (std::size_t i = 0; i < from.n1(); ++i)
        if (x.test(i)) y.set(to.index_of_arrow(amap.at(from.X1[i].id)));
    return y;
}

// A colored triangulation tracked against a fixed seed, so that isotopic triangulations
// reached along different flip paths can be compared.
struct MarkedColored {
    MarkedTriangulation mt;
    Cochain xi;
};

inline MarkedColored colored_flip(const MarkedColored& m, int k) {
    auto ct = colored_flip(ColoredTriangulation{m.mt.tri, m.xi}, k);
    return {{ct.tri, mutate_cvectors(m.mt.tri, m.mt.c, k)}, ct.xi};
}

struct NormalizedColored {
    std::string tri_key;
    Relabeled rel;
    Cochain xi;       // in relabeled coordinates
    Cochain xi_hat;   // in relabeled coordinates
};

inline NormalizedColored normalize(const MarkedColored& m) {
    const auto ord = m.mt.arc_order();
    std::vector<int> perm(ord.size());
    for (std::size_t p = 0; p < ord.size(); ++p) perm[ord[p]] = static_cast<int>(p);
    auto rel = relabel(m.mt.tri, perm);
    const auto c0 = build_complex(m.mt.tri, false);
    const auto c1 = build_complex(rel.tri, false);
    Cochain x = transport_cochain(c0, c1, rel.arrow_map, m.xi);
    Cochain xh = hat_lift(rel.tri, x);
    return {m.mt.key(), std::move(rel), std::move(x), std::move(xh)};
}

// Class of [xi_hat] in H^1 of the hat complex, in the relabeled coordinates.
inline std::string class_invariant(const NormalizedColored& n) {
    return cohomology(build_complex(n.rel.tri, true)).class_key(n.xi_hat);
}

inline std::string class_invariant(const ColoredTriangulation& ct) {
    return cohomology(build_complex(ct.tri, true)).class_key(ct.xi_hat());
}

struct FlipGraph {
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::size_t components = 0;
    bool overflow = false;
    std::vector<int> seed_component;   // component id of each seed
};

// Breadth-first exploration from several seeds sharing one reference triangulation.
// Vertices are (isotopy class, cocycle) or, with quotient, (isotopy class, class of xi).
inline FlipGraph flip_graph_explore(const std::vector<ColoredTriangulation>& seeds, std::size_t limit, bool quotient) {
    FlipGraph g;
    std::unordered_map<std::string, int> id;
    std::vector<int> parent;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto vkey = [&](const MarkedColored& m) {
        auto n = normalize(m);
        std::string c = quotient ? cohomology(build_complex(n.rel.tri, false)).class_key(n.xi) : bits_string(n.xi);
        return n.tri_key + "|" + c;
    };
    std::deque<std::pair<MarkedColored, int>> frontier;
    std::set<std::pair<int, int>> edges;
    for (const auto& s : seeds) {
        MarkedColored m{MarkedTriangulation::seed(s.tri), s.xi};
        std::string key = vkey(m);
        auto it = id.find(key);
        if (it == id.end()) {
            int v = static_cast<int>(parent.size());
            id[key] = v;
            parent.push_back(v);
            frontier.push_back({m, v});
            g.seed_component.push_back(v);
        } else {
            g.seed_component.push_back(it->second);
        }
    }
    bool cut = false;
    while (!frontier.empty() && !cut) {
        auto [m, v] = std::move(frontier.front());
        frontier.pop_front();
        for (int k = 0; k < m.mt.tri.num_arcs(); ++k) {
            if (id.size() >= limit) {
                cut = true;
                break;
            }
            auto nm = colored_flip(m, k);
            std::string key = vkey(nm);
            auto it = id.find(key);
            int w;
            if (it == id.end()) {
                w = static_cast<int>(parent.size());
                id[key] = w;
                parent.push_back(w);
                frontier.push_back({std::move(nm), w});
            } else {
                w = it->second;
            }
            edges.insert({std::min(v, w), std::max(v, w)});
            parent[find(v)] = find(w);
        }
    }
    g.overflow = cut;
    g.vertices = id.size();
    g.edges = edges.size();
    std::set<int> roots;
    for (std::size_t v = 0; v < parent.size(); ++v) roots.insert(find(static_cast<int>(v)));
    g.components = roots.size();
    for (auto& s : g.seed_component) s = find(s);
    return g;
}

// One seed per cohomology class of C(tau) (quotient) or per cocycle.
inline std::vector<ColoredTriangulation> all_class_seeds(const Triangulation& T, bool quotient) {
    const auto cx = build_complex(T, false);
    const auto H = cohomology(cx);
    const auto& basis = quotient ? H.H1 : H.Z1;
    std::vector<ColoredTriangulation> out;
    const std::size_t n = basis.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        Cochain x(cx.n1());
        for (std::size_t j = 0; j < n; ++j)
            if (mask >> j & 1) x ^= basis[j];
        out.push_back({T, x});
    }
    return out;
}

} // namespace orbsp
