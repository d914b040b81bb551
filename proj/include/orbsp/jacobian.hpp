#pragma once

#include <deque>
#include <optional>
#include <unordered_map>

#include "orbsp/pathalg.hpp"

namespace orbsp {

struct SP {
    Species sp;
    PathElem S;
    int auto_t = -1;       // certified cutoff from the surface, -1 if unknown
    bool closed = false;
    std::string provenance = "triangulation";
};

// t = max over marked points of the number of arc ends there.
inline int marked_point_valency(const Triangulation& T) {
    const int h = T.num_triangles();
    detail::UnionFind uf(3 * h);
    auto corner = [](int t, int i) { return 3 * t + ((i % 3) + 3) % 3; };
    for (int t = 0; t < h; ++t) {
        const auto& tr = T.tri(t);
        if (tr.kind == Kind::Once) uf.unite(corner(t, 1), corner(t, 2));
        if (tr.kind == Kind::Twice) {
            uf.unite(corner(t, 0), corner(t, 1));
            uf.unite(corner(t, 1), corner(t, 2));
        }
    }
    for (int a = 0; a < T.num_arcs(); ++a) {
        const auto& o = T.occurrences(a);
        if (o.size() != 2) continue;
        uf.unite(corner(o[0].tri, o[0].slot - 1), corner(o[1].tri, o[1].slot));
        uf.unite(corner(o[0].tri, o[0].slot), corner(o[1].tri, o[1].slot - 1));
    }
    std::map<int, int> val;
    for (int a = 0; a < T.num_arcs(); ++a) {
        const auto [t, i] = T.occurrences(a)[0];
        if (T.pending(a)) {
            ++val[uf.find(corner(t, T.tri(t).kind == Kind::Once ? 1 : 0))];
        } else {
            ++val[uf.find(corner(t, i - 1))];
            ++val[uf.find(corner(t, i))];
        }
    }
    int t = 0;
    for (const auto& [v, n] : val) t = std::max(t, n);
    return t;
}

inline SP build_sp(const ColoredTriangulation& ct, const FieldTower& K) {
    SP r;
    r.sp = build_species(ct, K);
    r.S = build_potential(ct.tri, r.sp);
    r.closed = ct.tri.surface().closed();
    if (!r.closed) r.auto_t = marked_point_valency(ct.tri);
    return r;
}

namespace detail {

using SparseVec = std::vector<std::pair<int, long long>>;

// Semi-echelon basis over GF(p): every row starts with coefficient 1 at a distinct pivot.
class SparseEchelon {
public:
    explicit SparseEchelon(const FieldTower& K) : K_(K) {}

    SparseVec reduce(const SparseVec& v) const {
        std::map<int, long long> acc(v.begin(), v.end());
        SparseVec out;
        while (!acc.empty()) {
            auto it = acc.begin();
            const int c = it->first;
            const long long x = K_.md(it->second);
            acc.erase(it);
            if (x == 0) continue;
            auto r = rows_.find(c);
            if (r == rows_.end()) {
                out.emplace_back(c, x);
                continue;
            }
            for (std::size_t i = 1; i < r->second.size(); ++i) {
                auto& slot = acc[r->second[i].first];
                slot = K_.md(slot - K_.mul(x, r->second[i].second));
            }
        }
        return out;
    }
    // Leading-term reduction only; enough to decide membership and insert.
    SparseVec lead_reduce(const SparseVec& v) const {
        std::map<int, long long> acc(v.begin(), v.end());
        while (!acc.empty()) {
            auto it = acc.begin();
            if (K_.md(it->second) == 0) {
                acc.erase(it);
                continue;
            }
            auto r = rows_.find(it->first);
            if (r == rows_.end()) break;
            const long long x = it->second;
            acc.erase(it);
            for (std::size_t i = 1; i < r->second.size(); ++i) {
                auto& slot = acc[r->second[i].first];
                slot = K_.md(slot - K_.mul(x, r->second[i].second));
            }
        }
        SparseVec out;
        for (const auto& [c, x] : acc)
            if (K_.md(x)) out.emplace_back(c, K_.md(x));
        return out;
    }
    bool insert(const SparseVec& v, SparseVec* added = nullptr) {
        SparseVec w = lead_reduce(v);
        if (w.empty()) return false;
        const long long inv = K_.inv(w[0].second);
        for (auto& [c, x] : w) x = K_.mul(x, inv);
        if (added) *added = w;
        rows_.emplace(w[0].first, std::move(w));
        return true;
    }
    bool contains(const SparseVec& v) const { return lead_reduce(v).empty(); }
    bool is_pivot(int c) const { return rows_.count(c) > 0; }
    std::size_t rank() const { return rows_.size(); }
    const std::unordered_map<int, SparseVec>& rows() const { return rows_; }

private:
    const FieldTower& K_;
    std::unordered_map<int, SparseVec> rows_;
};

} // namespace detail

// P / (J + m^(N+1)) where J is the closed ideal generated by the cyclic derivatives.
class TruncatedJacobian {
public:
    TruncatedJacobian(const SP& sp, int N) : sp_(sp), N_(N), ech_(sp_.sp.K) {
        enumerate();
        saturate();
    }

    int max_len() const { return N_; }
    const std::vector<Path>& paths() const { return paths_; }
    long long count_below(int T) const {
        long long n = 0;
        for (const auto& p : paths_) n += p.len() < T;
        return n;
    }
    // dim of P / (J + m^T) for T <= N + 1.
    long long quotient_dim(int T) const {
        long long n = count_below(T);
        for (const auto& [c, r] : ech_.rows()) n -= paths_[c].len() < T;
        return n;
    }
    bool all_paths_of_length_in_ideal(int T) const {
        for (std::size_t i = 0; i < paths_.size(); ++i)
            if (paths_[i].len() == T && !ech_.is_pivot(static_cast<int>(i))) return false;
        return true;
    }
    detail::SparseVec to_vec(const PathElem& x) const {
        detail::SparseVec v;
        for (const auto& [p, c] : x) {
            if (p.len() > N_) continue;
            v.emplace_back(index_.at(p), c);
        }
        std::sort(v.begin(), v.end());
        return v;
    }
    PathElem to_elem(const detail::SparseVec& v) const {
        PathElem x;
        for (const auto& [i, c] : v) x.emplace(paths_[i], c);
        return x;
    }
    bool in_ideal(const PathElem& x) const { return ech_.contains(to_vec(x)); }
    detail::SparseVec normal_form(const PathElem& x) const { return ech_.reduce(to_vec(x)); }
    const detail::SparseEchelon& echelon() const { return ech_; }
    const SP& sp() const { return sp_; }

    // Algebra generators besides idempotents: arrows and the field generators v^(4/d) e_k.
    std::vector<PathElem> generators() const {
        const Species& S = sp_.sp;
        std::vector<PathElem> g;
        for (const auto& a : S.arrows) g.push_back(arrow_elem(S, a.id));
        for (int v : S.vertices)
            if (S.d(v) > 1) g.push_back(field_elem(S, v, 1, 4 / S.d(v)));
        return g;
    }

private:
    void enumerate() {
        const Species& S = sp_.sp;
        std::vector<Path> layer;
        for (int v : S.vertices)
            for (int e = 0; e < 4; e += 4 / S.d(v)) layer.push_back(Path{v, {}, {e}});
        for (int len = 0; len <= N_; ++len) {
            std::sort(layer.begin(), layer.end());
            for (const auto& p : layer) {
                index_[p] = static_cast<int>(paths_.size());
                paths_.push_back(p);
            }
            if (len == N_) break;
            std::vector<Path> next;
            for (const auto& p : layer) {
                const int r = path_right(S, p);
                for (const auto& a : S.arrows) {
                    if (a.head != r) continue;
                    for (int s = 0; s < 4 / S.dht(a); s += 4 / S.d(a.tail)) {
                        Path q = p;
                        q.arr.push_back(a.id);
                        q.ex.push_back(s);
                        next.push_back(std::move(q));
                    }
                }
            }
            layer = std::move(next);
        }
    }

    void saturate() {
        const Species& S = sp_.sp;
        std::deque<detail::SparseVec> work;
        auto push = [&](const PathElem& x) {
            detail::SparseVec added;
            if (ech_.insert(to_vec(truncate(x, N_)), &added)) work.push_back(std::move(added));
        };
        for (const auto& a : S.arrows) push(cyclic_derivative(S, sp_.S, a.id));
        const auto gens = generators();
        while (!work.empty()) {
            const PathElem x = to_elem(work.front());
            work.pop_front();
            for (const auto& g : gens) {
                push(mul(S, g, x, N_));
                push(mul(S, x, g, N_));
            }
        }
    }

    SP sp_;
    int N_;
    std::vector<Path> paths_;
    std::map<Path, int> index_;
    detail::SparseEchelon ech_;
};

struct JacobianDim {
    long long dim = 0;
    bool certified = false;
    int cutoff = 0;
};

inline int resolve_cutoff(const SP& sp) {
    if (sp.closed) throw Error(Errc::CutoffRequired, "automatic cutoff only exists on unpunctured surfaces");
    if (sp.auto_t < 0) throw Error(Errc::CutoffRequired, "no surface cutoff attached to this SP");
    return sp.auto_t;
}

// With no cutoff the surface bound t is used and m^t in J is verified, making the value exact.
inline JacobianDim jacobian_dimension(const SP& sp, std::optional<int> cutoff = std::nullopt) {
    if (cutoff) {
        if (*cutoff < 1) throw Error(Errc::Malformed, "cutoff must be positive");
        TruncatedJacobian J(sp, *cutoff - 1);
        return {J.quotient_dim(*cutoff), false, *cutoff};
    }
    const int t = resolve_cutoff(sp);
    TruncatedJacobian J(sp, t);
    if (!J.all_paths_of_length_in_ideal(t))
        throw Error(Errc::NotCertified, "paths of length " + std::to_string(t) + " escape the ideal");
    return {J.quotient_dim(t), true, t};
}

namespace detail {

// Rank of a dense matrix over GF(p).
inline std::size_t dense_rank(const FieldTower& K, std::vector<std::vector<long long>> M) {
    if (M.empty()) return 0;
    const std::size_t cols = M[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < M.size(); ++c) {
        std::size_t piv = r;
        while (piv < M.size() && K.md(M[piv][c]) == 0) ++piv;
        if (piv == M.size()) continue;
        std::swap(M[piv], M[r]);
        const long long inv = K.inv(M[r][c]);
        for (auto& x : M[r]) x = K.mul(x, inv);
        for (std::size_t i = 0; i < M.size(); ++i) {
            if (i == r || K.md(M[i][c]) == 0) continue;
            const long long f = M[i][c];
            for (std::size_t j = c; j < cols; ++j) M[i][j] = K.md(M[i][j] - K.mul(f, M[r][j]));
        }
        ++r;
    }
    return r;
}

} // namespace detail

// F-dimension of the center of the certified finite-dimensional Jacobian algebra.
inline long long center_dimension(const SP& sp, std::optional<int> cutoff = std::nullopt) {
    const int t = cutoff ? *cutoff : resolve_cutoff(sp);
    TruncatedJacobian J(sp, t);
    if (!J.all_paths_of_length_in_ideal(t))
        throw Error(Errc::NotCertified, "quotient is not certified finite at cutoff " + std::to_string(t));
    const Species& S = sp.sp;
    std::vector<int> basis;
    std::map<int, int> pos;
    for (std::size_t i = 0; i < J.paths().size(); ++i)
        if (J.paths()[i].len() < t && !J.echelon().is_pivot(static_cast<int>(i))) {
            pos[static_cast<int>(i)] = static_cast<int>(basis.size());
            basis.push_back(static_cast<int>(i));
        }
    const std::size_t n = basis.size();
    auto gens = J.generators();
    for (int v : S.vertices) gens.push_back(unit(S, v));
    std::vector<std::vector<long long>> M;
    for (const auto& g : gens) {
        std::vector<std::vector<long long>> block(n, std::vector<long long>(n, 0));
        for (std::size_t j = 0; j < n; ++j) {
            PathElem b;
            b.emplace(J.paths()[basis[j]], 1);
            const PathElem comm = sub(S, mul(S, g, b, t), mul(S, b, g, t));
            for (const auto& [c, x] : J.normal_form(comm)) block[pos.at(c)][j] = x;
        }
        for (auto& row : block) M.push_back(std::move(row));
    }
    return static_cast<long long>(n - detail::dense_rank(S.K, std::move(M)));
}

} // namespace orbsp
