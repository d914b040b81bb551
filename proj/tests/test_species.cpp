#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "orbsp/orbsp.hpp"

using namespace orbsp;

TEST_CASE("field tower at p = 5") {
    const auto K = build_tower(5);
    CHECK(K.z == 2);
    CHECK(K.zeta == 2);
    CHECK(K.rho({0, 1, 0, 0}, 1) == Elem{0, 2, 0, 0});
    CHECK(K.rho({0, 0, 1, 0}, 1) == Elem{0, 0, 4, 0});
    CHECK(K.mul(Elem{0, 1, 0, 0}, K.pw(Elem{0, 1, 0, 0}, 3)) == Elem{2, 0, 0, 0});
}

TEST_CASE("field tower at p = 13") {
    const auto K = build_tower(13);
    CHECK(K.pw(K.z, 6) == 12);
    CHECK(K.mul(K.zeta, K.zeta) == 12);
    CHECK(quartic_irreducible(13, K.z));
    const Elem x{3, 1, 4, 1};
    CHECK(K.rho(x, 1) == K.pw(x, 13));
    CHECK(K.mul(x, K.inv(x)) == K.one());
}

TEST_CASE("bad primes and non-residues") {
    CHECK_THROWS_AS(build_tower(7), Error);
    CHECK_THROWS_AS(build_tower(9), Error);
    CHECK_THROWS_AS(build_tower(5, 4), Error);
    CHECK(build_tower(5, 3).z == 3);
}

TEST_CASE("species dimensions realize the matrix") {
    const auto K = build_tower(5);
    for (const auto& seed : {fan_disc(6, {4}), fan_disc(5, {4, 1}), fan_disc(5, {4, 4}), annulus11(), torus_orb(4)})
        for (const auto& T : flip_class(seed, 40))
            for (const auto& ct : all_class_seeds(T, true))
                CHECK(species_matches_matrix(build_species(ct, K), build_quivers(T).q));
}

TEST_CASE("annulus is a Kronecker species over L") {
    const auto S = build_species(zero_colored(annulus11()), build_tower(5));
    CHECK(S.arrows.size() == 2);
    for (const auto& a : S.arrows) CHECK(S.bimodule_dim(a) == 2);
}

TEST_CASE("twice-orbifolded weight (4,4) triangle: double arrows are twisted apart") {
    const auto T = pentagon_example(4, 4);
    const auto cx = build_complex(T, false);
    int tw = -1;
    for (int t = 0; t < T.num_triangles(); ++t)
        if (T.tri(t).kind == Kind::Twice && T.tri(t).interior()) tw = t;
    REQUIRE(tw >= 0);
    const auto K = build_tower(5);
    for (const auto& ct : all_class_seeds(T, false)) {
        const auto g = modulating_function(ct);
        const int ell = ct.xi.test(cx.index_of_arrow(arrow_key(tw, 1)));
        CHECK(g.at(arrow_key(tw, 1)) == ell);
        CHECK(g.at(arrow_key(tw, 3)) == (ell + 2) % 4);
        const auto S = build_species(ct, K);
        CHECK(S.bimodule_dim(S.arrow(arrow_key(tw, 1))) == 4);
        CHECK(S.bimodule_dim(S.arrow(arrow_key(tw, 3))) == 4);
    }
}

TEST_CASE("hexagon potential and its derivatives") {
    const SP sp = build_sp(zero_colored(hexagon_example(4)), build_tower(5));
    CHECK(sp.S.size() == 2);
    for (const auto& [p, c] : sp.S) {
        REQUIRE(p.len() == 3);
        for (int r = 0; r < 3; ++r) {
            const int a = p.arr[r], b = p.arr[(r + 1) % 3], d = p.arr[(r + 2) % 3];
            CHECK(cyclic_derivative(sp.sp, sp.S, a) == mul(sp.sp, arrow_elem(sp.sp, b), arrow_elem(sp.sp, d)));
        }
    }
}

TEST_CASE("potential terms are equal to their rotations up to cyclic equivalence") {
    const SP sp = build_sp(zero_colored(pentagon_example(4, 4)), build_tower(5));
    PathElem rotated;
    for (const auto& [p, c] : sp.S) {
        const PathElem head = arrow_elem(sp.sp, p.arr[0]);
        PathElem tail = unit(sp.sp, sp.sp.arrow(p.arr[0]).tail);
        for (int i = 1; i < p.len(); ++i) tail = mul(sp.sp, tail, arrow_elem(sp.sp, p.arr[i]));
        rotated = add(sp.sp, rotated, scale(sp.sp, c, mul(sp.sp, tail, head)));
    }
    CHECK(rotated != sp.S);
    CHECK(cyclically_equal(sp.sp, rotated, sp.S));
    CHECK_FALSE(cyclically_equal(sp.sp, rotated, PathElem{}));
}

TEST_CASE("non-cocycles have no modulating function") {
    const auto T = pentagon_example(4, 4);
    const auto cx = build_complex(T, false);
    Cochain x(cx.n1());
    for (int i = 0; i < static_cast<int>(cx.n1()) && is_cocycle(cx, x); ++i) {
        x = Cochain(cx.n1());
        x.set(i);
    }
    REQUIRE_FALSE(is_cocycle(cx, x));
    CHECK_THROWS_AS(modulating_function(ColoredTriangulation{T, x}), Error);
}

TEST_CASE("species JSON round trip") {
    const auto K = build_tower(13);
    const SP sp = build_sp(all_class_seeds(pentagon_example(4, 4), false).back(), K);
    const auto back = sp_from_json(json::parse(to_json(sp).dump()));
    CHECK(back.sp.K.p == 13);
    CHECK(back.sp.deg == sp.sp.deg);
    CHECK(arrow_signature(back.sp) == arrow_signature(sp.sp));
    CHECK(back.S == sp.S);
    CHECK(back.auto_t == sp.auto_t);
}
