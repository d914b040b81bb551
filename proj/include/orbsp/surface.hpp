#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "orbsp/error.hpp"

namespace orbsp {

struct SurfaceSpec {
    int genus = 0;
    std::vector<int> boundary;
    bool punctured_closed = false;
    std::vector<int> orbifold_weights;

    int b() const { return static_cast<int>(boundary.size()); }
    int m() const {
        return punctured_closed ? 1 : std::accumulate(boundary.begin(), boundary.end(), 0);
    }
    int o() const { return static_cast<int>(orbifold_weights.size()); }
    int u() const {
        int n = 0;
        for (int w : orbifold_weights) n += (w == 1);
        return n;
    }
    bool operator==(const SurfaceSpec&) const = default;
};

// A SurfaceSpec that passed validate_surface.
class ValidatedSurface {
public:
    const SurfaceSpec& spec() const { return s_; }
    int genus() const { return s_.genus; }
    int b() const { return s_.b(); }
    int m() const { return s_.m(); }
    int o() const { return s_.o(); }
    int u() const { return s_.u(); }
    bool closed() const { return s_.punctured_closed; }
    int weight(int orb) const { return s_.orbifold_weights.at(orb); }
    bool operator==(const ValidatedSurface&) const = default;

private:
    explicit ValidatedSurface(SurfaceSpec s) : s_(std::move(s)) {}
    SurfaceSpec s_;
    friend ValidatedSurface validate_surface(const SurfaceSpec&);
};

inline ValidatedSurface validate_surface(const SurfaceSpec& s) {
    if (s.genus < 0) throw Error(Errc::Malformed, "negative genus");
    for (int w : s.orbifold_weights)
        if (w != 1 && w != 4) throw Error(Errc::Malformed, "orbifold weight must be 1 or 4");
    if (s.punctured_closed) {
        if (!s.boundary.empty())
            throw Error(Errc::Malformed, "punctured_closed surface with boundary");
        if (s.genus == 0 && s.o() < 4)
            throw Error(Errc::Excluded, "once-punctured sphere with fewer than 4 orbifold points");
    } else {
        if (s.boundary.empty())
            throw Error(Errc::Malformed, "unpunctured surface needs a boundary component");
        for (int mi : s.boundary)
            if (mi < 1) throw Error(Errc::Malformed, "boundary component without marked points");
        if (s.genus == 0 && s.b() == 1) {
            int m = s.m();
            if (m == 1 && s.o() == 1) throw Error(Errc::Excluded, "monogon with one orbifold point");
            if (m <= 3 && s.o() == 0) throw Error(Errc::Excluded, "disc with at most 3 marked points");
        }
    }
    return ValidatedSurface(s);
}

struct CountRecord {
    int e = 0;
    int h = 0;
    int dimH1 = 0;
    int dimH1hat = 0;
    long long flip_graph_components = 0;
};

inline CountRecord closed_form_counts(const ValidatedSurface& vs) {
    const int g = vs.genus(), b = vs.b(), m = vs.m(), o = vs.o(), u = vs.u();
    CountRecord r;
    if (vs.closed()) {
        r.e = 6 * g - 3 + 2 * o;
        r.h = 4 * g - 2 + o;
        r.dimH1 = 2 * g;
        r.dimH1hat = 2 * g + u;
    } else {
        r.e = 6 * (g - 1) + 3 * b + m + 2 * o;
        r.h = 4 * (g - 1) + 2 * b + m + o;
        r.dimH1 = 2 * g + b - 1;
        r.dimH1hat = 2 * g + b + u - 1;
    }
    r.flip_graph_components = 1LL << r.dimH1;
    return r;
}

} // namespace orbsp
