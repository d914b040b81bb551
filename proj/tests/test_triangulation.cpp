#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "orbsp/orbsp.hpp"

using namespace orbsp;

namespace {

void check_counts(const Triangulation& T) {
    const auto r = closed_form_counts(T.surface());
    const auto& s = T.surface();
    CHECK(T.num_arcs() == r.e);
    CHECK(T.num_triangles() == r.h);
    const Census c = census(T);
    int h = 0, m = 0, u = 0;
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 3; ++q) {
            h += c[p][q];
            m += p * c[p][q];
            u += q * c[p][q];
        }
    CHECK(h == r.h);
    if (!s.closed()) CHECK(m == s.m());
    CHECK(u == s.u());
}

} // namespace

TEST_CASE("builders satisfy the counts") {
    for (int m = 4; m <= 7; ++m) {
        check_counts(fan_disc(m, {}));
        check_counts(fan_disc(m, {1}));
        check_counts(fan_disc(m, {4, 1}));
    }
    check_counts(annulus11());
    check_counts(torus_orb(1));
    check_counts(torus_orb(4));
    check_counts(torus0());
    check_counts(sphere4({1, 4, 4, 1}));
}

TEST_CASE("flip is an involution and keeps counts") {
    for (const auto& T : {fan_disc(6, {1}), fan_disc(5, {4, 1}), annulus11(), torus_orb(4)})
        for (int k = 0; k < T.num_arcs(); ++k) {
            const auto S = flip(T, k);
            check_counts(S);
            CHECK(canonical_key(flip(S, k)) == canonical_key(T));
        }
}

TEST_CASE("Catalan numbers from flip orbits of polygons") {
    CHECK(enumerate_flip_orbit(fan_disc(4, {}), 100).keys.size() == 2);
    CHECK(enumerate_flip_orbit(fan_disc(5, {}), 100).keys.size() == 5);
    CHECK(enumerate_flip_orbit(fan_disc(6, {}), 100).keys.size() == 14);
    CHECK(enumerate_flip_orbit(fan_disc(7, {}), 100).keys.size() == 42);
    CHECK(flip_class(fan_disc(6, {}), 100).size() == 14);
}

TEST_CASE("a triangle may not use the same arc twice") {
    const auto vs = validate_surface({0, {1, 1}, false, {}});
    CHECK_THROWS_AS(build_triangulation(vs, {make_ord(Side::arc(0), Side::arc(0), Side::boundary(0)),
                                             make_ord(Side::arc(1), Side::arc(1), Side::boundary(1))}),
                    Error);
}

TEST_CASE("flipping a boundary index is rejected") {
    const auto T = fan_disc(5, {});
    CHECK_THROWS_AS(flip(T, T.num_arcs()), Error);
    CHECK_THROWS_AS(flip(T, -1), Error);
}

TEST_CASE("triangulation JSON round trip") {
    for (const auto& T : {fan_disc(6, {4}), pentagon_example(4, 1), annulus11(), torus_orb(1)}) {
        const auto back = triangulation_from_json(json::parse(to_json(T).dump()));
        CHECK(canonical_key(back) == canonical_key(T));
        CHECK(to_json(back) == to_json(T));
    }
}

TEST_CASE("malformed triangulation JSON") {
    auto j = to_json(fan_disc(5, {}));
    j["triangles"][0]["kind"] = "square";
    CHECK_THROWS_AS(triangulation_from_json(j), Error);
    j = to_json(fan_disc(5, {}));
    j["triangles"].erase(0);
    CHECK_THROWS_AS(triangulation_from_json(j), Error);
}
