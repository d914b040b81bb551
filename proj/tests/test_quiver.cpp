#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "orbsp/io.hpp"

using namespace orbsp;

TEST_CASE("fan hexagon matrix") {
    const auto q = build_quivers(fan_disc(6, {4})).q;
    const auto M = to_matrix(q);
    CHECK(M.D == std::vector<int>{4, 2, 2, 2, 2});
    CHECK(M.B(1, 0) == 2);
    CHECK(M.B(0, 1) == -1);
    CHECK(skew_symmetrizable(M));
    CHECK(connected(q));
}

TEST_CASE("matrices are skew-symmetrizable on whole flip classes") {
    for (const auto& T : flip_class(fan_disc(6, {1, 4}), 200)) CHECK(skew_symmetrizable(to_matrix(build_quivers(T).q)));
}

TEST_CASE("matrix mutation is an involution") {
    const auto M = to_matrix(build_quivers(fan_disc(7, {4, 1})).q);
    for (int k = 0; k < M.B.n; ++k) CHECK(mutate_matrix(mutate_matrix(M.B, k), k) == M.B);
}

TEST_CASE("flip agrees with mutation") {
    std::mt19937 rng(3);
    for (const auto& seed : {fan_disc(6, {4}), fan_disc(5, {1, 1}), annulus11(), torus_orb(1), torus0()}) {
        for (int r = 0; r < 10; ++r) {
            const auto T = random_walk(seed, 8, rng);
            for (int k = 0; k < T.num_arcs(); ++k) {
                const auto q = build_quivers(T).q;
                const auto M = to_matrix(q);
                const auto S = to_matrix(build_quivers(flip(T, k)).q);
                CHECK(S.B == mutate_matrix(M.B, q.index_of(k)));
                CHECK(S.D == M.D);
            }
        }
    }
}

TEST_CASE("2-cycles are rejected") {
    WeightedQuiver q;
    q.vertices = {0, 1};
    q.weight = {2, 2};
    q.arrows = {{0, 0, 1, ArrowKind::Plain, -1, -1}, {1, 1, 0, ArrowKind::Plain, -1, -1}};
    CHECK_THROWS_AS(to_matrix(q), Error);
}

TEST_CASE("quiver and matrix JSON round trip") {
    const auto q = build_quivers(torus_orb(4)).q;
    const auto back = quiver_from_json(json::parse(to_json(q).dump()));
    CHECK(to_matrix(back) == to_matrix(q));
    const auto M = to_matrix(q);
    CHECK(matrix_from_json(json::parse(to_json(M, q.vertices).dump())) == M);
}

TEST_CASE("weighted mutation recovers the flipped matrix") {
    const auto T = fan_disc(6, {1});
    const auto q = build_quivers(T).q;
    for (int k = 0; k < T.num_arcs(); ++k)
        CHECK(to_matrix(mutate_weighted(q, k)) == to_matrix(build_quivers(flip(T, k)).q));
}
