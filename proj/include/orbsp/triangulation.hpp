#pragma once

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "orbsp/error.hpp"
#include "orbsp/surface.hpp"

namespace orbsp {

struct Side {
    bool bd = false;
    int id = -1;

    static Side arc(int i) { return {false, i}; }
    static Side boundary(int i) { return {true, i}; }
    bool is_arc() const { return !bd; }
    auto operator<=>(const Side&) const = default;
};

enum class Kind { Ord, Once, Twice };

// Sides are listed in orientation order, so corner i sits between s[i] and s[i+1].
// Once: s[0], s[1] outer pair, s[2] pending with orbifold orb[0].
// Twice: s[0] outer, s[1], s[2] pending with orbifolds orb[0], orb[1].
struct Triangle {
    Kind kind = Kind::Ord;
    std::array<Side, 3> s{};
    std::array<int, 2> orb{-1, -1};

    bool is_pending_slot(int i) const {
        return (kind == Kind::Once && i == 2) || (kind == Kind::Twice && i >= 1);
    }
    int orb_of_slot(int i) const {
        if (kind == Kind::Once && i == 2) return orb[0];
        if (kind == Kind::Twice && i >= 1) return orb[i - 1];
        return -1;
    }
    bool interior() const {
        return std::none_of(s.begin(), s.end(), [](const Side& x) { return x.bd; });
    }
    int boundary_sides() const {
        return static_cast<int>(std::count_if(s.begin(), s.end(), [](const Side& x) { return x.bd; }));
    }
    bool contains_arc(int a) const {
        return std::any_of(s.begin(), s.end(), [a](const Side& x) { return x.is_arc() && x.id == a; });
    }
    int slot_of(int a) const {
        for (int i = 0; i < 3; ++i)
            if (s[i].is_arc() && s[i].id == a) return i;
        return -1;
    }
    bool operator==(const Triangle&) const = default;
};

inline Triangle make_ord(Side a, Side b, Side c) { return {Kind::Ord, {a, b, c}, {-1, -1}}; }
inline Triangle make_once(Side a, Side b, int pending, int q) {
    return {Kind::Once, {a, b, Side::arc(pending)}, {q, -1}};
}
inline Triangle make_twice(Side outer, int p0, int p1, int q0, int q1) {
    return {Kind::Twice, {outer, Side::arc(p0), Side::arc(p1)}, {q0, q1}};
}

struct Slot {
    int tri;
    int slot;
    bool operator==(const Slot&) const = default;
};

class Triangulation {
public:
    const ValidatedSurface& surface() const { return surf_; }
    const std::vector<Triangle>& triangles() const { return tris_; }
    const Triangle& tri(int t) const { return tris_[t]; }
    int num_arcs() const { return n_arcs_; }
    int num_triangles() const { return static_cast<int>(tris_.size()); }
    int num_boundary() const { return n_bd_; }
    int weight(int arc) const { return weight_[arc]; }
    const std::vector<int>& weights() const { return weight_; }
    int orbifold_of(int arc) const { return arc_orb_[arc]; }
    bool pending(int arc) const { return arc_orb_[arc] >= 0; }
    const std::vector<Slot>& occurrences(int arc) const { return occ_[arc]; }

private:
    Triangulation(ValidatedSurface s) : surf_(std::move(s)) {}
    ValidatedSurface surf_;
    std::vector<Triangle> tris_;
    int n_arcs_ = 0;
    int n_bd_ = 0;
    std::vector<int> weight_;
    std::vector<int> arc_orb_;
    std::vector<std::vector<Slot>> occ_;

    friend Triangulation build_triangulation(const ValidatedSurface&, std::vector<Triangle>);
};

namespace detail {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

inline void check_topology(const ValidatedSurface& vs, const std::vector<Triangle>& tris,
                           const std::vector<std::vector<Slot>>& occ, int n_bd) {
    const int h = static_cast<int>(tris.size());
    UnionFind uf(3 * h);
    auto corner = [](int t, int i) { return 3 * t + ((i % 3) + 3) % 3; };
    for (int t = 0; t < h; ++t) {
        if (tris[t].kind == Kind::Once) uf.unite(corner(t, 1), corner(t, 2));
        if (tris[t].kind == Kind::Twice) {
            uf.unite(corner(t, 0), corner(t, 1));
            uf.unite(corner(t, 1), corner(t, 2));
        }
    }
    for (const auto& o : occ) {
        if (o.size() != 2) continue;
        const auto [t1, i1] = o[0];
        const auto [t2, i2] = o[1];
        uf.unite(corner(t1, i1 - 1), corner(t2, i2));
        uf.unite(corner(t1, i1), corner(t2, i2 - 1));
    }
    std::set<int> verts;
    for (int c = 0; c < 3 * h; ++c) verts.insert(uf.find(c));
    if (static_cast<int>(verts.size()) != vs.m())
        throw Error(Errc::BadTopology, "marked point count " + std::to_string(verts.size()) +
                                           " differs from " + std::to_string(vs.m()));
    if (vs.closed()) return;
    std::vector<int> start(n_bd, -1), end(n_bd, -1);
    for (int t = 0; t < h; ++t)
        for (int i = 0; i < 3; ++i)
            if (tris[t].s[i].bd) {
                start[tris[t].s[i].id] = uf.find(corner(t, i - 1));
                end[tris[t].s[i].id] = uf.find(corner(t, i));
            }
    std::map<int, int> out;
    for (int j = 0; j < n_bd; ++j) {
        if (out.count(start[j])) throw Error(Errc::BadTopology, "two boundary segments leave one vertex");
        out[start[j]] = j;
    }
    if (out.size() != verts.size()) throw Error(Errc::BadTopology, "interior marked point present");
    std::vector<int> lens;
    std::vector<bool> seen(n_bd, false);
    for (int j = 0; j < n_bd; ++j) {
        if (seen[j]) continue;
        int len = 0, cur = j;
        while (!seen[cur]) {
            seen[cur] = true;
            ++len;
            auto it = out.find(end[cur]);
            if (it == out.end()) throw Error(Errc::BadTopology, "open boundary chain");
            cur = it->second;
        }
        if (cur != j) throw Error(Errc::BadTopology, "boundary chain merges");
        lens.push_back(len);
    }
    std::vector<int> want = vs.spec().boundary;
    std::sort(lens.begin(), lens.end());
    std::sort(want.begin(), want.end());
    if (lens != want) throw Error(Errc::BadTopology, "boundary component sizes differ from descriptor");
}

} // namespace detail

inline Triangulation build_triangulation(const ValidatedSurface& vs, std::vector<Triangle> tris) {
    Triangulation T(vs);
    int max_arc = -1, max_bd = -1;
    std::vector<int> orb_use(vs.o(), 0);
    for (const auto& t : tris) {
        for (int i = 0; i < 3; ++i) {
            const Side& x = t.s[i];
            if (x.id < 0) throw Error(Errc::Malformed, "negative side id");
            if (x.bd) {
                if (t.is_pending_slot(i)) throw Error(Errc::BadIncidence, "boundary in pending slot");
                max_bd = std::max(max_bd, x.id);
            } else {
                max_arc = std::max(max_arc, x.id);
            }
        }
        int norb = t.kind == Kind::Ord ? 0 : (t.kind == Kind::Once ? 1 : 2);
        for (int j = 0; j < norb; ++j) {
            int q = t.orb[j];
            if (q < 0 || q >= vs.o()) throw Error(Errc::BadOrbifold, "orbifold id out of range");
            ++orb_use[q];
        }
    }
    for (int q = 0; q < vs.o(); ++q)
        if (orb_use[q] != 1) throw Error(Errc::BadOrbifold, "orbifold point used " + std::to_string(orb_use[q]) + " times");
    const int n = max_arc + 1;
    const int nb = max_bd + 1;
    T.n_arcs_ = n;
    T.n_bd_ = nb;
    T.occ_.assign(n, {});
    T.arc_orb_.assign(n, -1);
    std::vector<int> bd_use(nb, 0);
    for (int ti = 0; ti < static_cast<int>(tris.size()); ++ti) {
        const auto& t = tris[ti];
        for (int i = 0; i < 3; ++i) {
            const Side& x = t.s[i];
            if (x.bd) {
                ++bd_use[x.id];
                continue;
            }
            T.occ_[x.id].push_back({ti, i});
            if (t.is_pending_slot(i)) T.arc_orb_[x.id] = t.orb_of_slot(i);
        }
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (t.s[i].is_arc() && t.s[j].is_arc() && t.s[i].id == t.s[j].id)
                    throw Error(Errc::BadIncidence, "arc " + std::to_string(t.s[i].id) + " twice in one triangle");
    }
    for (int a = 0; a < n; ++a) {
        const auto& o = T.occ_[a];
        if (T.arc_orb_[a] >= 0) {
            if (o.size() != 1) throw Error(Errc::BadIncidence, "pending arc " + std::to_string(a) + " used " + std::to_string(o.size()) + " times");
        } else if (o.size() != 2) {
            throw Error(Errc::BadIncidence, "arc " + std::to_string(a) + " used " + std::to_string(o.size()) + " times");
        }
    }
    for (int j = 0; j < nb; ++j)
        if (bd_use[j] != 1) throw Error(Errc::BadIncidence, "boundary segment " + std::to_string(j) + " used " + std::to_string(bd_use[j]) + " times");
    if (vs.closed() && nb > 0) throw Error(Errc::BadIncidence, "boundary segment on a closed surface");
    if (!vs.closed() && nb != vs.m()) throw Error(Errc::BadCounts, "boundary segment count differs from m");
    const auto cr = closed_form_counts(vs);
    if (n != cr.e || static_cast<int>(tris.size()) != cr.h)
        throw Error(Errc::BadCounts, "arcs " + std::to_string(n) + " triangles " + std::to_string(tris.size()) +
                                         ", expected " + std::to_string(cr.e) + " and " + std::to_string(cr.h));
    detail::UnionFind uf(static_cast<int>(tris.size()));
    for (const auto& o : T.occ_)
        if (o.size() == 2) uf.unite(o[0].tri, o[1].tri);
    for (int t = 1; t < static_cast<int>(tris.size()); ++t)
        if (uf.find(t) != uf.find(0)) throw Error(Errc::Disconnected, "gluing complex is disconnected");
    detail::check_topology(vs, tris, T.occ_, nb);
    T.weight_.assign(n, 2);
    for (int a = 0; a < n; ++a)
        if (T.arc_orb_[a] >= 0) T.weight_[a] = vs.weight(T.arc_orb_[a]);
    T.tris_ = std::move(tris);
    return T;
}

// Census table h[p][q]: triangles with p boundary sides and q weight-1 orbifold points.
using Census = std::array<std::array<int, 3>, 4>;

inline Census census(const Triangulation& T) {
    Census c{};
    for (const auto& t : T.triangles()) {
        int p = t.boundary_sides(), q = 0;
        for (int i = 0; i < 3; ++i)
            if (t.is_pending_slot(i) && T.weight(t.s[i].id) == 1) ++q;
        ++c[p][q];
    }
    return c;
}

// Normalizes a cyclic triple of sides into a typed triangle, rotating so pending arcs
// sit in pending slots.
inline Triangle classify(const Triangulation& T, std::array<Side, 3> s) {
    auto pend = [&](const Side& x) { return x.is_arc() && T.pending(x.id); };
    int np = 0;
    for (auto& x : s) np += pend(x);
    if (np == 0) return make_ord(s[0], s[1], s[2]);
    for (int r = 0; r < 3; ++r) {
        std::array<Side, 3> t{s[r], s[(r + 1) % 3], s[(r + 2) % 3]};
        if (np == 1 && pend(t[2]))
            return make_once(t[0], t[1], t[2].id, T.orbifold_of(t[2].id));
        if (np == 2 && !pend(t[0]))
            return make_twice(t[0], t[1].id, t[2].id, T.orbifold_of(t[1].id), T.orbifold_of(t[2].id));
    }
    throw Error(Errc::BadIncidence, "triangle with three pending arcs");
}

// Where a side of the flip region sits before (tau) and after (sigma) the flip.
struct FlipPosition {
    Side side;
    Slot tau;
    Slot sigma;
};

struct FlipResult {
    Triangulation sigma;
    int k;
    std::vector<int> touched;
    std::vector<FlipPosition> region;
};

namespace detail {
inline int find_slot(const Triangle& t, const Side& x, int skip = -1) {
    for (int i = 0; i < 3; ++i)
        if (i != skip && t.s[i] == x) return i;
    return -1;
}
} // namespace detail

inline FlipResult flip_ex(const Triangulation& T, int k) {
    if (k < 0 || k >= T.num_arcs()) throw Error(Errc::NotAnArc, "no arc " + std::to_string(k));
    std::vector<Triangle> tris = T.triangles();
    std::vector<FlipPosition> region;
    std::vector<int> touched;
    const auto& occ = T.occurrences(k);
    if (T.pending(k)) {
        const int t = occ[0].tri;
        Triangle nt = tris[t];
        if (nt.kind == Kind::Once) {
            std::swap(nt.s[0], nt.s[1]);
        } else {
            std::swap(nt.s[1], nt.s[2]);
            std::swap(nt.orb[0], nt.orb[1]);
        }
        for (int i = 0; i < 3; ++i) {
            const Side& x = T.tri(t).s[i];
            if (x.is_arc() && x.id == k) continue;
            region.push_back({x, {t, i}, {t, detail::find_slot(nt, x)}});
        }
        tris[t] = nt;
        touched = {t};
    } else {
        const auto [t1, i1] = occ[0];
        const auto [t2, i2] = occ[1];
        const Triangle& A = T.tri(t1);
        const Triangle& B = T.tri(t2);
        const Side x1 = A.s[(i1 + 1) % 3], y1 = A.s[(i1 + 2) % 3];
        const Side x2 = B.s[(i2 + 1) % 3], y2 = B.s[(i2 + 2) % 3];
        const Side kk = Side::arc(k);
        Triangle na = classify(T, {y1, x2, kk});
        Triangle nb = classify(T, {y2, x1, kk});
        region.push_back({x1, {t1, (i1 + 1) % 3}, {t2, detail::find_slot(nb, x1)}});
        region.push_back({y1, {t1, (i1 + 2) % 3}, {t1, detail::find_slot(na, y1)}});
        region.push_back({x2, {t2, (i2 + 1) % 3}, {t1, detail::find_slot(na, x2)}});
        region.push_back({y2, {t2, (i2 + 2) % 3}, {t2, detail::find_slot(nb, y2)}});
        tris[t1] = na;
        tris[t2] = nb;
        touched = {t1, t2};
    }
    return {build_triangulation(T.surface(), std::move(tris)), k, touched, region};
}

inline Triangulation flip(const Triangulation& T, int k) { return flip_ex(T, k).sigma; }

// Canonical relabelling: arcs renumbered in traversal order, triangles reordered and
// rotated. Orbifold ids are replaced by their weights.
struct CanonicalForm {
    std::string key;
    std::vector<int> arc_map;     // old arc -> new arc
    std::vector<int> tri_map;     // old triangle -> new index
    std::vector<int> tri_rot;     // old slot i lands at new slot (i - rot) mod 3
};

namespace detail {

inline CanonicalForm traverse(const Triangulation& T, int t0, int r0) {
    const int h = T.num_triangles();
    CanonicalForm f;
    f.arc_map.assign(T.num_arcs(), -1);
    f.tri_map.assign(h, -1);
    f.tri_rot.assign(h, 0);
    std::string& key = f.key;
    int next_arc = 0, next_tri = 0;
    std::deque<std::pair<int, int>> q;
    q.push_back({t0, r0});
    f.tri_map[t0] = next_tri++;
    f.tri_rot[t0] = r0;
    while (!q.empty()) {
        auto [t, r] = q.front();
        q.pop_front();
        const Triangle& tr = T.tri(t);
        key += "OWT"[static_cast<int>(tr.kind)];
        for (int j = 0; j < 3; ++j) {
            int i = (j + r) % 3;
            const Side& x = tr.s[i];
            if (x.bd) {
                key += "b" + std::to_string(x.id);
            } else {
                if (f.arc_map[x.id] < 0) f.arc_map[x.id] = next_arc++;
                key += "a" + std::to_string(f.arc_map[x.id]);
                if (T.pending(x.id)) key += "w" + std::to_string(T.weight(x.id));
            }
        }
        key += ';';
        for (int j = 0; j < 3; ++j) {
            int i = (j + r) % 3;
            const Side& x = tr.s[i];
            if (x.bd || T.pending(x.id)) continue;
            for (const Slot& o : T.occurrences(x.id)) {
                if (o.tri == t || f.tri_map[o.tri] >= 0) continue;
                int nr = T.tri(o.tri).kind == Kind::Ord ? o.slot : 0;
                f.tri_map[o.tri] = next_tri++;
                f.tri_rot[o.tri] = nr;
                q.push_back({o.tri, nr});
            }
        }
    }
    return f;
}

} // namespace detail

// All minimal traversals; more than one entry means the complex has automorphisms.
inline std::vector<CanonicalForm> canonical_forms(const Triangulation& T) {
    std::vector<std::pair<int, int>> starts;
    if (!T.surface().closed()) {
        for (int t = 0; t < T.num_triangles(); ++t)
            for (int i = 0; i < 3; ++i)
                if (T.tri(t).s[i].bd && T.tri(t).s[i].id == 0)
                    starts.push_back({t, T.tri(t).kind == Kind::Ord ? i : 0});
    } else {
        for (int t = 0; t < T.num_triangles(); ++t) {
            if (T.tri(t).kind == Kind::Ord)
                for (int r = 0; r < 3; ++r) starts.push_back({t, r});
            else
                starts.push_back({t, 0});
        }
    }
    std::vector<CanonicalForm> best;
    for (auto [t, r] : starts) {
        auto f = detail::traverse(T, t, r);
        if (best.empty() || f.key < best[0].key) {
            best.clear();
            best.push_back(std::move(f));
        } else if (f.key == best[0].key) {
            best.push_back(std::move(f));
        }
    }
    return best;
}

inline std::string canonical_key(const Triangulation& T) { return canonical_forms(T)[0].key; }

} // namespace orbsp
