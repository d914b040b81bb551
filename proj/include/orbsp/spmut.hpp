#pragma once

#include <map>
#include <tuple>

#include "orbsp/jacobian.hpp"

namespace orbsp {

// Composite arrow [b v^s c] (split by coset representatives of F_k) or [bc]_h (split by
// Galois twist h when F_k is smaller than the field of the endpoints).
struct Composite {
    int b = -1;
    int c = -1;
    int s = -1;   // exponent of v between b and c, -1 for a Galois component
    int h = 0;
};

struct Premutation {
    SP sp;
    int k = -1;
    std::map<int, int> star;                 // arrow incident to k -> reversed arrow
    std::map<int, Composite> comps;          // composite id -> data
    std::map<std::tuple<int, int, int>, int> by_s;
    std::map<std::tuple<int, int, int>, int> by_h;

    int composite(int b, int c, int s = 0) const { return by_s.at({b, c, s}); }
    int composite_h(int b, int c, int h) const { return by_h.at({b, c, h}); }
};

namespace detail {

inline int coset_count(const Species& S, int k, int dj, int di) {
    const int dk = S.d(k);
    return dk / std::max(std::min(dj, dk), std::min(dk, di));
}

} // namespace detail

inline bool cyclically_equal(const Species& S, const PathElem& W1, const PathElem& W2) {
    const PathElem D = sub(S, W1, W2);
    for (const auto& a : S.arrows)
        if (!cyclic_derivative(S, D, a.id).empty()) return false;
    return true;
}

inline Premutation premutate(const SP& in, int k) {
    const Species& S = in.sp;
    if (k < 0 || k >= static_cast<int>(S.deg.size()) || S.d(k) == 0) throw Error(Errc::Malformed, "no vertex " + std::to_string(k));
    auto touches = [&](int a) { return S.arrow(a).head == k || S.arrow(a).tail == k; };
    for (const auto& [p, c] : in.S)
        if (p.len() < 3 && std::any_of(p.arr.begin(), p.arr.end(), touches))
            throw Error(Errc::ShortCycleThroughK, "cycle of length " + std::to_string(p.len()) + " through " + std::to_string(k));

    Premutation R;
    R.k = k;
    Species N;
    N.K = S.K;
    N.vertices = S.vertices;
    N.deg = S.deg;
    std::vector<int> out, inn;
    for (const auto& a : S.arrows) {
        if (a.tail == k) out.push_back(a.id);
        if (a.head == k) inn.push_back(a.id);
        if (!touches(a.id)) N.add_arrow(a);
    }
    int next = S.max_id() + 1;
    for (const auto& a : S.arrows)
        if (touches(a.id)) {
            R.star[a.id] = next;
            N.add_arrow({next++, a.head, a.tail, -a.twist, a.name + "*"});
        }
    const int dk = S.d(k);
    for (int b : out)
        for (int c : inn) {
            const SpArrow& B = S.arrow(b);
            const SpArrow& C = S.arrow(c);
            const int dj = S.d(B.head), di = S.d(C.tail);
            if (B.head == C.tail) throw Error(Errc::NotTwoAcyclic, "composite through k would be a loop");
            const int dK = std::min(dj, di);
            if (dk >= dK) {
                const int n = detail::coset_count(S, k, dj, di);
                for (int t = 0; t < n; ++t) {
                    const int s = t * 4 / dk;
                    std::string nm = "[" + B.name + (s ? " v^" + std::to_string(s) : "") + " " + C.name + "]";
                    R.comps[next] = {b, c, s, Species::norm_twist(B.twist + C.twist, dK)};
                    R.by_s[{b, c, s}] = next;
                    N.add_arrow({next++, C.tail, B.head, B.twist + C.twist, nm});
                }
            } else {
                for (int h = 0; h < dK; ++h) {
                    if (((h - B.twist - C.twist) % dk + dk) % dk != 0) continue;
                    R.comps[next] = {b, c, -1, h};
                    R.by_h[{b, c, h}] = next;
                    N.add_arrow({next++, C.tail, B.head, h, "[" + B.name + " " + C.name + "]_" + std::to_string(h)});
                }
            }
        }

    const FieldTower& K = S.K;
    // b v^f c written in composite arrows.
    auto expand = [&](int b, int f, int c) {
        const SpArrow& B = S.arrow(b);
        const SpArrow& C = S.arrow(c);
        const int dj = S.d(B.head), di = S.d(C.tail);
        PathElem x;
        if (dk >= std::min(dj, di)) {
            const int step = 4 / dk, n = detail::coset_count(S, k, dj, di);
            const int s = (((f / step) % n) + n) % n * step;
            const int M = f - s;
            const int id = R.by_s.at({b, c, s});
            if (std::min(dj, dk) >= std::min(dk, di))
                return mul(N, field_elem(N, B.head, K.zeta_pow(static_cast<long long>(B.twist) * M), M), arrow_elem(N, id));
            return mul(N, arrow_elem(N, id), field_elem(N, C.tail, K.zeta_pow(-static_cast<long long>(C.twist) * M), M));
        }
        for (int h = 0; h < std::min(dj, di); ++h) {
            auto it = R.by_h.find({b, c, h});
            if (it != R.by_h.end()) x = add(N, x, arrow_elem(N, it->second));
        }
        return mul(N, field_elem(N, B.head, K.zeta_pow(static_cast<long long>(B.twist) * f), f), x);
    };

    PathElem W;
    for (const auto& [p, coef] : in.S) {
        const Cyc cy = to_cyc(p);
        const int n = static_cast<int>(cy.arr.size());
        if (!std::any_of(cy.arr.begin(), cy.arr.end(), touches)) {
            add_term(N, W, p, coef);
            continue;
        }
        int r = 0;
        while (S.arrow(cy.arr[r]).head == k) ++r;
        PathElem acc = field_elem(N, S.arrow(cy.arr[r]).head, coef, 0);
        for (int i = 0; i < n;) {
            const int a = cy.arr[(r + i) % n];
            if (S.arrow(a).tail == k) {
                const int c = cy.arr[(r + i + 1) % n];
                acc = mul(N, acc, expand(a, cy.f[(r + i) % n], c));
                acc = mul(N, acc, field_elem(N, S.arrow(c).tail, 1, cy.f[(r + i + 1) % n]));
                i += 2;
            } else {
                acc = mul(N, acc, arrow_elem(N, a));
                acc = mul(N, acc, field_elem(N, S.arrow(a).tail, 1, cy.f[(r + i) % n]));
                i += 1;
            }
        }
        W = add(N, W, acc);
    }

    // Delta_k: c* w^-1 b* [b w c] over coset representatives w, halved when F_k = E.
    const long long factor = dk == 4 ? K.inv(2) : 1;
    for (int b : out)
        for (int c : inn) {
            const SpArrow& B = S.arrow(b);
            const SpArrow& C = S.arrow(c);
            const int dj = S.d(B.head), di = S.d(C.tail);
            const PathElem cs = arrow_elem(N, R.star.at(c)), bs = arrow_elem(N, R.star.at(b));
            if (dk >= std::min(dj, di)) {
                const int n = detail::coset_count(S, k, dj, di);
                for (int t = 0; t < n; ++t) {
                    const int s = t * 4 / dk;
                    W = add(N, W, mul(N, {cs, field_elem(N, k, factor, -s), bs, arrow_elem(N, R.by_s.at({b, c, s}))}));
                }
            } else {
                W = add(N, W, mul(N, {cs, field_elem(N, k, factor, 0), bs, expand(b, 0, c)}));
            }
        }

    R.sp.sp = std::move(N);
    R.sp.S = canonical(R.sp.sp, W);
    R.sp.closed = in.closed;
    R.sp.provenance = "premutated";
    return R;
}

namespace detail {

// Sum of y over the terms of W containing a, each written (up to rotation) as a * y.
inline PathElem split_at(const Species& S, const PathElem& W, int a) {
    PathElem y;
    for (const auto& [p, c] : W) {
        const Cyc cy = to_cyc(p);
        auto it = std::find(cy.arr.begin(), cy.arr.end(), a);
        if (it == cy.arr.end()) continue;
        add_term(S, y, cut_after(S, cy, static_cast<int>(it - cy.arr.begin())), c);
    }
    return y;
}

inline PathElem pair_elem(const Species& S, int a, int b) { return mul(S, arrow_elem(S, a), arrow_elem(S, b)); }

} // namespace detail

// Removes the degree-2 part by successive changes of arrows, keeping terms up to degree cap.
inline SP reduce(const SP& in, int cap = 12) {
    SP out = in;
    Species& S = out.sp;
    PathElem W = canonical(S, truncate(in.S, cap));
    for (;;) {
        const PathElem W2 = homogeneous_part(W, 2);
        if (W2.empty()) break;
        int a = -1;
        PathElem P;
        for (const auto& x : S.arrows) {
            bool occurs = false;
            for (const auto& [p, c] : W2) occurs = occurs || contains_arrow(p, x.id);
            if (!occurs) continue;
            P = cyclic_derivative(S, W2, x.id);
            if (!P.empty()) {
                a = x.id;
                break;
            }
        }
        if (a < 0) throw Error(Errc::NonInvertiblePairing, "degree-2 part is cyclically trivial but not zero");
        // Pick an arrow b entering P through a single monomial and make P the new b.
        int b = -1;
        Path pb;
        long long lambda = 0;
        for (const auto& x : S.arrows) {
            int count = 0;
            for (const auto& [p, c] : P)
                if (p.len() == 1 && p.arr[0] == x.id) {
                    ++count;
                    pb = p;
                    lambda = c;
                }
            if (count == 1) {
                b = x.id;
                break;
            }
        }
        if (b < 0) throw Error(Errc::NonInvertiblePairing, "no arrow pairs invertibly with " + S.arrow(a).name);
        const SpArrow& B = S.arrow(b);
        PathElem Q = P;
        Q.erase(pb);
        PathElem img = sub(S, arrow_elem(S, b), Q);
        img = mul(S, {field_elem(S, B.head, S.K.inv(lambda), -pb.ex[0]), img, field_elem(S, B.tail, 1, -pb.ex[1])});
        W = canonical(S, substitute(S, W, {{b, img}}, cap));
        if (cyclic_derivative(S, homogeneous_part(W, 2), a) != arrow_elem(S, b))
            throw Error(Errc::NonInvertiblePairing, "change of arrows failed to isolate " + S.arrow(a).name);

        const PathElem ab = detail::pair_elem(S, a, b);
        const SpArrow A = S.arrow(a), Bc = S.arrow(b);
        bool done = false;
        for (int round = 0; round < 4 * cap + 8 && !done; ++round) {
            const PathElem R = canonical(S, sub(S, W, ab));
            const PathElem Ya = detail::split_at(S, R, a);
            if (!Ya.empty()) {
                const PathElem U = pi_inv(S, Ya, A);
                W = canonical(S, substitute(S, W, {{b, sub(S, arrow_elem(S, b), U)}}, cap));
                continue;
            }
            const PathElem Yb = detail::split_at(S, R, b);
            if (!Yb.empty()) {
                const PathElem V = pi_inv(S, Yb, Bc);
                W = canonical(S, substitute(S, W, {{a, sub(S, arrow_elem(S, a), V)}}, cap));
                continue;
            }
            W = R;
            done = true;
        }
        if (!done) throw Error(Errc::NonInvertiblePairing, "elimination of " + A.name + " did not converge");
        S.remove_arrows({a, b});
    }
    out.S = W;
    out.provenance = "reduced";
    return out;
}

} // namespace orbsp
