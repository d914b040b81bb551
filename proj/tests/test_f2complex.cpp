#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "orbsp/orbsp.hpp"

using namespace orbsp;

TEST_CASE("annulus cohomology") {
    const auto cx = build_complex(annulus11(), false);
    const auto H = cohomology(cx);
    CHECK(H.dimZ1 == 2);
    CHECK(H.dimB1 == 1);
    CHECK(H.dimH1 == 1);
    CHECK(H.dimZ1 == H.dimB1 + H.dimH1);
}

TEST_CASE("dimensions follow the closed forms") {
    for (const auto& seed : {fan_disc(6, {1}), fan_disc(5, {1, 4}), fan_disc(5, {1, 1}), annulus11(), torus_orb(1),
                             torus_orb(4), torus0(), sphere4({1, 1, 4, 4})})
        for (const auto& T : flip_class(seed, 30)) {
            const auto r = closed_form_counts(T.surface());
            CHECK(cohomology(build_complex(T, false)).dimH1 == r.dimH1);
            CHECK(cohomology(build_complex(T, true)).dimH1 == r.dimH1hat);
        }
}

TEST_CASE("coboundaries are cocycles") {
    const auto T = fan_disc(7, {4, 1});
    const auto cx = build_complex(T, false);
    const auto H = cohomology(cx);
    for (const auto& b : H.B1.rows()) CHECK(is_cocycle(cx, b));
    for (const auto& z : H.Z1) CHECK(is_cocycle(cx, z));
}

TEST_CASE("torus with one orbifold point") {
    for (int w : {1, 4}) {
        const auto cx = build_complex(torus_orb(w), false);
        const auto H = cohomology(cx);
        CHECK(H.dimH1 == 2);
        const Cochain ab = cochain_from_keys(cx, {1, 2});
        const Cochain d = cochain_from_keys(cx, w == 1 ? std::vector<int>{16} : std::vector<int>{16, 18});
        CHECK(is_cocycle(cx, ab));
        CHECK(is_cocycle(cx, d));
        CHECK(H.class_key(ab) != H.class_key(d));
        CHECK(H.class_key(ab) != H.class_key(Cochain(cx.n1())));
        CHECK(H.class_key(ab ^ d) != H.class_key(ab));
        CHECK(H.class_key(ab ^ d) != H.class_key(d));
        CHECK(H.class_key(ab ^ d) != H.class_key(Cochain(cx.n1())));
    }
}

TEST_CASE("hat lift is an injective map of cocycles") {
    for (const auto& T : {fan_disc(6, {1}), annulus11(), torus_orb(1), sphere4({1, 1, 4, 4})}) {
        const auto cx = build_complex(T, false), hx = build_complex(T, true);
        const auto H = cohomology(cx);
        std::set<std::string> seen;
        for (const auto& ct : all_class_seeds(T, false)) {
            const Cochain lift = hat_lift(T, cx, hx, ct.xi);
            CHECK(is_cocycle(hx, lift));
            CHECK(seen.insert(bits_string(lift)).second);
        }
        CHECK(seen.size() == (std::size_t{1} << H.dimZ1));
    }
}

TEST_CASE("non-cocycles are rejected") {
    const auto T = pentagon_example(4, 4);
    const auto cx = build_complex(T, false);
    Cochain x(cx.n1());
    for (int i = 0; i < static_cast<int>(cx.n1()) && is_cocycle(cx, x); ++i) {
        x = Cochain(cx.n1());
        x.set(i);
    }
    REQUIRE_FALSE(is_cocycle(cx, x));
    CHECK_THROWS_AS(make_colored(T, x), Error);
}
