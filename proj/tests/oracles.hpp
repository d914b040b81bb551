#pragma once

// Reference computations used to check the library from outside its own algorithms.

#include <map>
#include <optional>
#include <vector>

#include "orbsp/jacobian.hpp"

namespace oracle {

using namespace orbsp;

// Jacobian dimension by path counting when S is a sum of 3-cycles on pairwise distinct arrows
// with trivial middle coefficients, and the field of each arrow lies in the fields of the two
// arrows following it. Then every cyclic derivative is a single 2-path, the
// ideal is spanned by paths containing a forbidden factor x c y, and only the middle
// coefficient c decides whether x c y is forbidden. Returns nullopt if the potential is not of
// that shape or the quotient is infinite.
inline std::optional<long long> monomial_dim(const SP& sp, int max_len = 64) {
    const Species& S = sp.sp;
    std::map<std::pair<int, int>, bool> rel;   // (x, y): x y is a derivative
    std::map<int, int> seen;
    for (const auto& [p, c] : sp.S) {
        if (p.len() != 3) return std::nullopt;
        for (int e : p.ex)
            if (e != 0) return std::nullopt;
        for (int a : p.arr)
            if (seen[a]++) return std::nullopt;
        for (int i = 0; i < 3; ++i) {
            const int d = S.dht(S.arrow(p.arr[i]));
            if (d > S.dht(S.arrow(p.arr[(i + 1) % 3])) || d > S.dht(S.arrow(p.arr[(i + 2) % 3]))) return std::nullopt;
        }
        for (int i = 0; i < 3; ++i) rel[{p.arr[(i + 1) % 3], p.arr[(i + 2) % 3]}] = true;
    }
    auto reps = [&](const SpArrow& a) { return static_cast<long long>(S.d(a.tail) / S.dht(a)); };
    auto allowed = [&](const SpArrow& x, const SpArrow& y) {
        long long n = reps(x);
        if (rel.count({x.id, y.id})) {
            const int M = std::max(S.dht(x), S.dht(y));
            n -= M <= S.dht(x) ? 1 : M / S.dht(x);
        }
        return n;
    };
    long long total = 0;
    for (int v : S.vertices) total += S.d(v);
    std::map<int, long long> N;
    for (const auto& a : S.arrows) N[a.id] = S.d(a.head);
    for (int len = 1; len <= max_len; ++len) {
        bool any = false;
        for (const auto& a : S.arrows) {
            total += N[a.id] * reps(a);
            any = any || N[a.id] != 0;
        }
        if (!any) return total;
        std::map<int, long long> next;
        for (const auto& b : S.arrows)
            for (const auto& a : S.arrows)
                if (a.tail == b.head) next[b.id] += N[a.id] * allowed(a, b);
        N = std::move(next);
    }
    return std::nullopt;
}

// All normal-form decorated paths of length below n.
inline std::vector<Path> basis_paths(const Species& S, int n) {
    std::vector<Path> out, layer;
    for (int v : S.vertices)
        for (int e = 0; e < 4; e += 4 / S.d(v)) layer.push_back({v, {}, {e}});
    for (int len = 0; len < n && !layer.empty(); ++len) {
        out.insert(out.end(), layer.begin(), layer.end());
        std::vector<Path> next;
        for (const auto& p : layer)
            for (const auto& a : S.arrows) {
                if (a.head != path_right(S, p)) continue;
                for (int e = 0; e < 4 / S.dht(a); e += 4 / S.d(a.tail)) {
                    Path q = p;
                    q.arr.push_back(a.id);
                    q.ex.push_back(e);
                    next.push_back(q);
                }
            }
        layer = std::move(next);
    }
    return out;
}

// dim of P / (J + paths of length >= n) from the explicit span of u * dS/da * w.
inline long long brute_force_dim(const SP& sp, int n) {
    const Species& S = sp.sp;
    const FieldTower& K = S.K;
    auto paths = basis_paths(S, n);
    std::map<Path, int> col;
    for (const auto& p : paths) col.emplace(p, static_cast<int>(col.size()));
    std::vector<PathElem> rels;
    for (const auto& a : S.arrows) {
        auto r = truncate(cyclic_derivative(S, sp.S, a.id), n - 1);
        if (!r.empty()) rels.push_back(r);
    }
    std::vector<PathElem> single;
    for (const auto& p : paths) {
        PathElem x;
        x[p] = 1;
        single.push_back(x);
    }
    std::map<int, std::vector<long long>> piv;   // pivot column -> row, dense
    const int m = static_cast<int>(col.size());
    long long rank = 0;
    auto insert = [&](const PathElem& x) {
        std::vector<long long> row(m, 0);
        for (const auto& [p, c] : x) row[col.at(p)] = c;
        for (int j = 0; j < m; ++j) {
            if (row[j] == 0) continue;
            auto it = piv.find(j);
            if (it == piv.end()) {
                const long long s = K.inv(row[j]);
                for (auto& y : row) y = K.mul(y, s);
                piv.emplace(j, std::move(row));
                ++rank;
                return;
            }
            const long long f = row[j];
            for (int i = j; i < m; ++i) row[i] = K.md(row[i] - K.mul(f, it->second[i]));
        }
    };
    for (const auto& r : rels)
        for (const auto& u : single)
            for (const auto& w : single) {
                if (u.begin()->first.len() + w.begin()->first.len() + degree(r) >= n) continue;
                auto x = truncate(mul(S, mul(S, u, r, n - 1), w, n - 1), n - 1);
                if (!x.empty()) insert(x);
            }
    return static_cast<long long>(paths.size()) - rank;
}

} // namespace oracle
