#include <cmath>
#include <string>

#include "doctest.h"
#include "test_support.hpp"
#include "cfusion/scenario.hpp"

using namespace cfusion;
using namespace testsupport;
using io::json;

namespace {

const char *kFull = R"(
algebra: {kind: complex, N: 2}
module: {dims: [2, 1]}
submodules:
  all: {full: true}
weights:
  one: [[1, 1]]
frames:
  P: {submodules: [all], weights: one}
commands:
  - {op: bounds, frame: P}
)";

std::string scenario_with(const std::string &commands) {
    return std::string(R"(
seed: 9
algebra: {kind: complex, N: 1}
module: {dims: [3]}
submodules:
  a: {fibers: [{span: [[1, 0, 0], [0, 1, 0]]}]}
  b: {fibers: [{span: [[0, 1, 1]]}]}
  c: {complement: a}
weights:
  w: [[1], [2], [1.5]]
frames:
  F: {submodules: [a, b, c], weights: w}
perturbations:
  r: {frame: F, random_rotation: {}}
commands:
)") + commands;
}

} // namespace

TEST_CASE("json round trips") {
    Rng rng(71);
    for (auto kind : {ScalarKind::Complex, ScalarKind::Quaternion}) {
        for (int t = 0; t < 50; ++t) {
            const auto shape = random_shape(kind, rng);
            const auto a = random_element(kind, shape.fiber_count(), rng);
            CHECK(max_fiber_diff(io::algebra_from_json(json::parse(io::dump(io::to_json(a)))), a) == 0.0);
            const auto x = random_vector(shape, rng);
            CHECK(max_diff(io::vector_from_json(json::parse(io::dump(io::to_json(x)))), x) == 0.0);
            const auto u = random_submodule(shape, rng);
            const auto u2 = io::submodule_from_json(json::parse(io::dump(io::to_json(u))));
            for (std::size_t k = 0; k < shape.fiber_count(); ++k) CHECK(linalg::max_abs(u2.projection(k) - u.projection(k)) == 0.0);
            const auto psi = random_map(shape, rng);
            const auto psi2 = io::map_from_json(json::parse(io::dump(io::to_json(psi))));
            CHECK(max_diff(apply_map(psi2, x), apply_map(psi, x)) == 0.0);
        }
    }
    const auto flat = io::to_json(AlgebraElement::from_quaternions({Quaternion(1, 2, 3, 4)}));
    CHECK(flat["kind"] == "quaternion");
    CHECK(flat["values"] == json::array({1.0, 2.0, 3.0, 4.0}));
    CHECK_THROWS_AS((void)io::algebra_from_json(json::parse(R"({"kind": "complex", "values": [1, 2, 3]})")), Error);
}

TEST_CASE("report numbers carry 17 significant digits") {
    CHECK(io::dump(json(0.1), -1) == "0.10000000000000001");
    CHECK(io::dump(json(2.0), -1) == "2.0");
    CHECK(io::dump(json(std::nan("")), -1) == "null");
    CHECK(io::dump(json{{"a", "x\"y"}}, -1) == R"({"a":"x\"y"})");
}

TEST_CASE("single full submodule gives a Parseval report") {
    const auto r = scenario::run_text(kFull);
    CHECK(r.exit_code == 0);
    CHECK(r.report["version"] == "cstar-fusion/1");
    const auto &res = r.report["results"][0]["result"];
    CHECK(res["parseval"] == true);
    CHECK(res["A"]["values"] == json::array({1.0, 0.0, 1.0, 0.0}));
    CHECK(res["B"]["values"] == json::array({1.0, 0.0, 1.0, 0.0}));
    CHECK(r.report["scenario"]["module"]["dims"] == json::array({2, 1}));
}

TEST_CASE("bundled block scenario reports the tight constant") {
    for (const auto &[name, text] : scenario::bundled_examples()) {
        const auto r = scenario::run_text(text);
        INFO(name);
        CHECK(r.exit_code == 0);
        if (name == "blocks.yaml" || name == "quaternion.yaml") {
            const auto res = scenario::run_text(text, {std::string("multiplier"), {}}).report["results"];
            REQUIRE(res.size() == 1);
            const auto values = res[0]["result"]["tight_constant"]["values"].get<std::vector<double>>();
            const std::size_t stride = name == "blocks.yaml" ? 2 : 4;
            CHECK(values[0] == 1.0);
            CHECK(std::abs(values[stride] - std::sqrt(2.0)) <= 1e-12);
            CHECK(values[2 * stride] == 1.0);
        }
    }
}

TEST_CASE("validation errors carry positions") {
    const std::string bad = R"(algebra: {kind: complex, N: 1}
submodules:
  all: {full: true}
weights:
  one: [[1]]
frames:
  P: {submodules: [all], weights: missing}
commands:
  - {op: bounds, frame: P}
)";
    const auto r = scenario::run_text(bad);
    CHECK(r.exit_code == 2);
    CHECK(r.report["error"]["code"] == "ValidationError");
    CHECK(r.report["error"]["line"] == 7);
    CHECK(r.report["error"]["path"] == "frames.P.weights");

    const auto unknown = scenario::run_text(std::string(kFull) + "  - {op: fly, frame: P}\n");
    CHECK(unknown.exit_code == 2);
    CHECK(unknown.report["error"]["path"] == "commands[1].op");

    const auto shape = scenario::run_text(R"(algebra: {kind: quaternion, N: 1}
module: {dims: [2]}
commands: []
)");
    CHECK(shape.exit_code == 2);
    CHECK(shape.report["error"]["code"] == "ValidationError");

    const auto parse = scenario::run_text("algebra: {kind: complex, N: [1\n");
    CHECK(parse.exit_code == 2);
    CHECK(parse.report["error"]["code"] == "ParseError");
    CHECK(parse.report["error"].contains("line"));

    const auto missing = scenario::run_file("/nonexistent/scenario.yaml");
    CHECK(missing.exit_code == 2);
}

TEST_CASE("a failing command is reported and sets the exit status") {
    const std::string text = R"(algebra: {kind: complex, N: 2}
submodules:
  first: {block: [1]}
weights:
  one: [[1, 1]]
frames:
  G: {submodules: [first], weights: one}
commands:
  - {op: check-frame, frame: G}
  - {op: tightness, frame: G}
)";
    const auto r = scenario::run_text(text);
    CHECK(r.exit_code == 1);
    CHECK(r.report["results"][0]["status"] == "ok");
    CHECK(r.report["results"][0]["result"]["is_frame"] == false);
    CHECK(r.report["results"][1]["status"] == "error");
    CHECK(r.report["results"][1]["error"]["code"] == "NotAFrame");
}

TEST_CASE("reports are deterministic for a seed") {
    const auto text = scenario_with("  - {op: perturb, perturbation: r, p: 2}\n  - {op: verify-oracle, frame: F, samples: 50}\n");
    const auto a = io::dump(scenario::run_text(text).report);
    const auto b = io::dump(scenario::run_text(text).report);
    CHECK(a == b);
    const auto c = scenario::run_text(text, {{}, std::uint64_t{10}});
    CHECK(io::dump(c.report) != a);
    CHECK(c.report["seed"] == 10);
    CHECK(c.report["scenario"]["seed"] == 10);
    const auto res = scenario::run_text(text).report["results"][0]["result"];
    CHECK(res["guaranteed"] == true);
    CHECK(res["confirmed"] == true);
}

TEST_CASE("command filter") {
    const auto text = scenario_with("  - {op: bounds, frame: F}\n  - {op: tightness, frame: F}\n  - {op: bounds, frame: F}\n");
    const auto r = scenario::run_text(text, {std::string("bounds"), {}});
    REQUIRE(r.report["results"].size() == 2);
    CHECK(r.report["results"][1]["index"] == 2);
    CHECK(scenario::run_text(text, {std::string("nope"), {}}).exit_code == 2);
}
