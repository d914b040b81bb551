#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "orbsp/orbsp.hpp"

using namespace orbsp;

namespace {

std::set<int> keys(const ColoredTriangulation& ct) {
    const auto v = cochain_keys(build_complex(ct.tri, false), ct.xi);
    return {v.begin(), v.end()};
}

} // namespace

TEST_CASE("colored flip twice returns the coloring") {
    for (const auto& T : {fan_disc(6, {1}), fan_disc(5, {4, 4}), annulus11(), torus_orb(1), torus_orb(4)})
        for (const auto& ct : all_class_seeds(T, false))
            for (int k = 0; k < T.num_arcs(); ++k) {
                const auto back = colored_flip(colored_flip(ct, k), k);
                bool found = false;
                const auto from = build_complex(back.tri, false), to = build_complex(T, false);
                for (const auto& al : alignments(back.tri, T)) found = found || transport_cochain(from, to, al, back.xi) == ct.xi;
                CHECK(found);
            }
}

TEST_CASE("phi pullback sends cocycles to cocycles") {
    for (const auto& T : flip_class(fan_disc(6, {1, 4}), 60))
        for (int k = 0; k < T.num_arcs(); ++k) {
            const auto fr = flip_ex(T, k);
            const auto hs = build_complex(fr.sigma, true);
            for (const auto& z : cohomology(build_complex(T, true)).Z1) CHECK(is_cocycle(hs, phi_pullback(T, fr, z)));
        }
}

TEST_CASE("torus with a weight-1 orbifold point: flipping the pending arc adds delta") {
    const auto T = torus_orb(1);
    for (const auto& ct : all_class_seeds(T, false)) {
        auto expect = keys(ct);
        expect.count(16) ? (void)expect.erase(16) : (void)expect.insert(16);
        CHECK(keys(colored_flip(ct, 4)) == expect);
    }
}

TEST_CASE("class invariant survives random flip walks") {
    std::mt19937 rng(11);
    for (const auto& T : {annulus11(), torus_orb(4)})
        for (const auto& ct : all_class_seeds(T, true)) {
            MarkedColored m{MarkedTriangulation::seed(T), ct.xi};
            const auto start = class_invariant(normalize(m));
            std::uniform_int_distribution<int> pick(0, T.num_arcs() - 1);
            for (int s = 0; s < 20; ++s) {
                const int k = pick(rng);
                m = colored_flip(colored_flip(colored_flip(m, k), k), k);
                m = colored_flip(m, k);
            }
            CHECK(class_invariant(normalize(m)) == start);
        }
}

TEST_CASE("flip graph of the annulus keeps its two classes apart") {
    const auto g = flip_graph_explore(all_class_seeds(annulus11(), true), 500, true);
    REQUIRE(g.seed_component.size() == 2);
    CHECK(g.seed_component[0] != g.seed_component[1]);
    CHECK(g.overflow);
}

TEST_CASE("flip graph of a disk with one orbifold point is one component") {
    const auto g = flip_graph_explore(all_class_seeds(fan_disc(6, {4}), true), 1000, true);
    CHECK(g.components == 1);
    CHECK_FALSE(g.overflow);
    CHECK(g.vertices == 252);
}

TEST_CASE("colored triangulation JSON round trip") {
    for (const auto& ct : all_class_seeds(torus_orb(4), true)) {
        const auto back = colored_from_json(json::parse(to_json(ct).dump()));
        CHECK(back.xi == ct.xi);
        CHECK(canonical_key(back.tri) == canonical_key(ct.tri));
    }
}
