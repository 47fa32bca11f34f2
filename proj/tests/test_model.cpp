#include <catch2/catch_amalgamated.hpp>

#include "sncinv/json_io.hpp"
#include "sncinv/model.hpp"
#include "sncinv/verify.hpp"

#include "support.hpp"

using namespace sncinv;

namespace {

SncModel tiny_model() {
    SncModel m;
    m.fiber_dim = 1;
    m.components[1] = 1;
    m.strata[StratumKey{1}] = FormalClass::symbol("s");
    return m;
}

} // namespace

TEST_CASE("validate accepts a one-component model") {
    CHECK(validate(tiny_model()).empty());
}

TEST_CASE("validate flags oversized stratum keys") {
    SncModel m;
    m.fiber_dim = 1;
    m.components = {{1, 1}, {2, 1}, {3, 1}};
    for (int i = 1; i <= 3; ++i) m.strata[StratumKey{i}] = FormalClass::symbol("s");
    m.strata[StratumKey{1, 2, 3}] = FormalClass::symbol("t");
    const auto bad = validate(m);
    REQUIRE_FALSE(bad.empty());
    CHECK(bad.front().find("fiber_dim + 1") != std::string::npos);
}

TEST_CASE("validate flags unknown component ids") {
    SncModel m = tiny_model();
    m.strata[StratumKey{7}] = FormalClass::symbol("t");
    const auto bad = validate(m);
    REQUIRE_FALSE(bad.empty());
    CHECK(bad.front().find("unknown component id 7") != std::string::npos);
}

TEST_CASE("validate flags hidden singletons") {
    SncModel m;
    m.fiber_dim = 1;
    m.components = {{1, 1}, {2, 2}};
    m.strata[StratumKey{1}] = FormalClass::symbol("s");
    m.strata[StratumKey{1, 2}] = FormalClass::symbol("t");
    const auto bad = validate(m);
    REQUIRE_FALSE(bad.empty());
    CHECK(bad.front().find("singleton {2}") != std::string::npos);

    m.strata[StratumKey{2}] = FormalClass();  // explicit zero entry is enough
    CHECK(validate(m).empty());
}

TEST_CASE("full fiber datum copies the strata") {
    const SncModel m = tiny_model();
    const ConstructibleDatum d = full_fiber_datum(m);
    CHECK(d.on_strata == m.strata);
    CHECK_FALSE(d.on_center.has_value());

    SncModel empty;
    CHECK(full_fiber_datum(empty).on_strata.empty());
}

TEST_CASE("disjoint union adds stratum-wise") {
    ConstructibleDatum c1, c2;
    c1.on_strata[StratumKey{1}] = FormalClass::symbol("s");
    c2.on_strata[StratumKey{1}] = FormalClass::symbol("t");

    const ConstructibleDatum u = datum_disjoint_union(c1, c2);
    CHECK(u.on_stratum(StratumKey{1}) ==
          FormalClass::symbol("s") + FormalClass::symbol("t"));

    CHECK(datum_disjoint_union(c1, ConstructibleDatum{}) == c1);
}

TEST_CASE("disjoint union is commutative and associative") {
    SplitMix64 rng(0x5eed1001);
    for (int trial = 0; trial < 40; ++trial) {
        ConstructibleDatum a, b, c;
        for (int key = 1; key <= 3; ++key) {
            if (rng.percent(70)) a.on_strata[StratumKey{key}] = testsupport::random_formal(rng);
            if (rng.percent(70)) b.on_strata[StratumKey{key}] = testsupport::random_formal(rng);
            if (rng.percent(70)) c.on_strata[StratumKey{key}] = testsupport::random_formal(rng);
        }
        CHECK(datum_disjoint_union(a, b).on_strata == datum_disjoint_union(b, a).on_strata);
        CHECK(datum_disjoint_union(datum_disjoint_union(a, b), c).on_strata ==
              datum_disjoint_union(a, datum_disjoint_union(b, c)).on_strata);
    }
}

TEST_CASE("generated models validate for all seeds") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const TestInstance inst = random_instance(seed);
        CHECK(validate(inst.model).empty());
        CHECK(center_violations(inst.model, inst.center).empty());
        CHECK(datum_violations(inst.model, inst.datum).empty());
    }
}

TEST_CASE("models round-trip through JSON") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const TestInstance inst = random_instance(seed);
        CHECK(model_from_json(model_to_json(inst.model)) == inst.model);
        CHECK(datum_from_json(datum_to_json(inst.datum)) == inst.datum);
        CHECK(center_from_json(center_to_json(inst.center)) == inst.center);
    }
}

TEST_CASE("model parsing reports locations") {
    const Json missing = Json::parse(R"({"components": [], "strata": []})");
    CHECK_THROWS_WITH(model_from_json(missing, "m"), Catch::Matchers::ContainsSubstring("fiber_dim"));

    const Json bad_rational = Json::parse(
        R"({"fiber_dim": 1,
            "components": [{"id": 1, "multiplicity": 1}],
            "strata": [{"components": [1], "class": [{"syms": [], "lpoly": {"0": "1/0"}}]}]})");
    CHECK_THROWS_AS(model_from_json(bad_rational, "m"), ParseError);

    const Json dup = Json::parse(
        R"({"fiber_dim": 1,
            "components": [{"id": 1, "multiplicity": 1}, {"id": 1, "multiplicity": 2}],
            "strata": []})");
    CHECK_THROWS_WITH(model_from_json(dup, "m"), Catch::Matchers::ContainsSubstring("duplicate"));
}
