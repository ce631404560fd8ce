#include <doctest.h>

#include <cstdio>

#include <json.hpp>

#include "pcorr/errors.hpp"
#include "pcorr/manifest.hpp"

using namespace pcorr;

namespace {

RunManifest sample() {
    RunManifest m;
    m.command = "paircorr";
    m.argv = {"paircorr", "--seq", "power:1.5", "--N", "100", "--out", "o.csv"};
    m.spec = SequenceSpec::power(1.5);
    m.has_spec = true;
    m.seed = 42;
    m.started = iso_timestamp_now();
    m.finished = m.started;
    m.outputs = {"o.csv"};
    m.set_param("N", "100");
    m.set_param("alpha", "1.41");
    return m;
}

} // namespace

TEST_CASE("set_param inserts and updates in place") {
    auto m = sample();
    CHECK(m.params.size() == 2);
    m.set_param("alpha", "2.0");
    CHECK(m.params.size() == 2);
    CHECK(m.params[1] == std::pair<std::string, std::string>{"alpha", "2.0"});
    m.set_param("s", "1.0");
    CHECK(m.params.size() == 3);
    CHECK(m.params[2].first == "s");
}

TEST_CASE("JSON round trip") {
    const auto m = sample();
    const auto back = RunManifest::from_json(m.to_json());
    CHECK(back.tool_version == m.tool_version);
    CHECK(back.command == m.command);
    CHECK(back.argv == m.argv);
    CHECK(back.has_spec);
    CHECK(back.spec.kind == SeqKind::power);
    CHECK(back.spec.theta == 1.5);
    CHECK(back.params == m.params);
    CHECK(back.seed == 42);
    CHECK(back.started == m.started);
    CHECK(back.outputs == m.outputs);
}

TEST_CASE("save and load") {
    const char* path = "manifest_test.json";
    const auto m = sample();
    m.save(path);
    const auto back = RunManifest::load(path);
    CHECK(back.argv == m.argv);
    CHECK(back.seed == m.seed);
    std::remove(path);
}

TEST_CASE("unknown schema version rejected") {
    auto j = sample().to_json();
    j["manifest_v"] = 99;
    CHECK_THROWS_AS(RunManifest::from_json(j), BadParams);
}

TEST_CASE("timestamps look like ISO-8601 UTC") {
    const auto t = iso_timestamp_now();
    REQUIRE(t.size() == 20);
    CHECK(t[4] == '-');
    CHECK(t[10] == 'T');
    CHECK(t.back() == 'Z');
}
