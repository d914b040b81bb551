#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "orbsp/orbsp.hpp"

using namespace orbsp;

namespace {

Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no orbsp::Error thrown");
    return Errc::Malformed;
}

} // namespace

TEST_CASE("annulus: both classes have an 8-dimensional Jacobian algebra") {
    const auto K = build_tower(5);
    std::map<long long, int> centers;
    for (const auto& ct : all_class_seeds(annulus11(), true)) {
        const SP sp = build_sp(ct, K);
        const auto j = jacobian_dimension(sp);
        CHECK(j.certified);
        CHECK(j.dim == 8);
        ++centers[center_dimension(sp)];
    }
    CHECK(centers == std::map<long long, int>{{1, 1}, {2, 1}});
}

TEST_CASE("known dimensions on small disks") {
    const auto K = build_tower(5);
    CHECK(jacobian_dimension(build_sp(zero_colored(hexagon_example(1)), K)).dim == 29);
    CHECK(jacobian_dimension(build_sp(zero_colored(hexagon_example(4)), K)).dim == 38);
    CHECK(jacobian_dimension(build_sp(zero_colored(pentagon_example(4, 4)), K)).dim == 72);
    CHECK(jacobian_dimension(build_sp(zero_colored(pentagon_example(1, 4)), K)).dim == 57);
}

TEST_CASE("dimension does not depend on the chosen cutoff once the ideal contains m^t") {
    const SP sp = build_sp(zero_colored(hexagon_example(4)), build_tower(5));
    const auto j = jacobian_dimension(sp);
    CHECK(jacobian_dimension(sp, j.cutoff + 1).dim == j.dim);
    CHECK(jacobian_dimension(sp, j.cutoff + 3).dim == j.dim);
}

TEST_CASE("agreement with path counting and dense linear algebra") {
    const auto K = build_tower(5);
    for (const auto& seed : {fan_disc(6, {}), fan_disc(6, {4}), fan_disc(5, {1}), hexagon_example(4)})
        for (const auto& T : flip_class(seed, 12))
            for (const auto& ct : all_class_seeds(T, false)) {
                const SP sp = build_sp(ct, K);
                const auto j = jacobian_dimension(sp);
                if (const auto m = oracle::monomial_dim(sp)) CHECK(*m == j.dim);
                if (j.cutoff <= 5) CHECK(oracle::brute_force_dim(sp, j.cutoff) == j.dim);
            }
}

TEST_CASE("closed surfaces need an explicit cutoff") {
    const SP sp = build_sp(zero_colored(torus_orb(4)), build_tower(5));
    CHECK(code_of([&] { jacobian_dimension(sp); }) == Errc::CutoffRequired);
    CHECK(code_of([&] { jacobian_dimension(sp, 0); }) == Errc::Malformed);
    CHECK_FALSE(jacobian_dimension(sp, 6).certified);
}

TEST_CASE("torus truncations keep growing") {
    const auto K = build_tower(5);
    const std::map<int, std::vector<long long>> expect{{1, {99, 153, 207}}, {4, {122, 188, 256}}};
    for (const auto& [w, dims] : expect) {
        const SP sp = build_sp(zero_colored(torus_orb(w)), K);
        std::vector<long long> got;
        for (int c : {6, 9, 12}) got.push_back(jacobian_dimension(sp, c).dim);
        CHECK(got == dims);
    }
}

TEST_CASE("mutation at a pending arc matches the flipped colored triangulation") {
    const auto K = build_tower(5);
    const auto ci = config_instance(11);
    for (const auto& xi : sample_cocycles(ci.tri, 5)) {
        const auto r = verify_main_theorem(ci, xi, K);
        CHECK_MESSAGE(r.ok(), r.note);
        CHECK(r.dim_mutated == r.dim_sigma);
    }
}

TEST_CASE("SP JSON round trip keeps the dimension") {
    const SP sp = build_sp(all_class_seeds(hexagon_example(4), false).back(), build_tower(13));
    const SP back = sp_from_json(json::parse(to_json(sp).dump()));
    CHECK(jacobian_dimension(back).dim == jacobian_dimension(sp).dim);
}
