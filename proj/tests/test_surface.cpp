#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "orbsp/io.hpp"

using namespace orbsp;

namespace {

Errc error_of(const SurfaceSpec& s) {
    try {
        validate_surface(s);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("surface was accepted");
    return Errc::Malformed;
}

} // namespace

TEST_CASE("count formulas on boundary surfaces") {
    const auto hex = closed_form_counts(validate_surface({0, {6}, false, {4}}));
    CHECK(hex.e == 5);
    CHECK(hex.h == 5);
    CHECK(hex.dimH1 == 0);
    CHECK(hex.flip_graph_components == 1);

    const auto pent = closed_form_counts(validate_surface({0, {5}, false, {1, 4}}));
    CHECK(pent.e == 6);
    CHECK(pent.h == 5);
    CHECK(pent.dimH1hat == 1);

    const auto ann = closed_form_counts(validate_surface({0, {1, 1}, false, {}}));
    CHECK(ann.e == 2);
    CHECK(ann.h == 2);
    CHECK(ann.dimH1 == 1);
    CHECK(ann.flip_graph_components == 2);
}

TEST_CASE("count formulas on once-punctured closed surfaces") {
    const auto t = closed_form_counts(validate_surface({1, {}, true, {1}}));
    CHECK(t.e == 5);
    CHECK(t.h == 3);
    CHECK(t.dimH1 == 2);
    CHECK(t.dimH1hat == 3);
    CHECK(t.flip_graph_components == 4);

    const auto s = closed_form_counts(validate_surface({0, {}, true, {1, 1, 4, 4}}));
    CHECK(s.e == 5);
    CHECK(s.h == 2);
    CHECK(s.dimH1 == 0);
    CHECK(s.dimH1hat == 2);
}

TEST_CASE("excluded and malformed surfaces") {
    CHECK(error_of({0, {2}, false, {}}) == Errc::Excluded);
    CHECK(error_of({0, {3}, false, {}}) == Errc::Excluded);
    CHECK(error_of({0, {}, false, {}}) == Errc::Malformed);
    CHECK(error_of({0, {4}, false, {2}}) == Errc::Malformed);
    CHECK(error_of({-1, {4}, false, {}}) == Errc::Malformed);
    CHECK(error_of({1, {0}, false, {}}) == Errc::Malformed);
}

TEST_CASE("surface JSON round trip") {
    const SurfaceSpec s{1, {2, 3}, false, {1, 4}};
    const auto back = surface_from_json(json::parse(to_json(s).dump()));
    CHECK(back == s);
    CHECK_THROWS_AS(surface_from_json(json::parse(R"({"genus": 0})")), Error);
}
