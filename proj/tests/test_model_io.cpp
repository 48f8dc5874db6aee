#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "rel/errors.hpp"
#include "rel/model_io.hpp"
#include "rel/rbd.hpp"

using namespace rel;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const auto dir = fs::temp_directory_path() / "relkit_model_io_tests";
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const std::string& name, const std::string& content) {
  const auto path = scratch_dir() / name;
  std::ofstream out(path, std::ios::trunc);
  out << content;
  return path;
}

bool mentions(const ValidationError& e, const std::string& needle) {
  for (const auto& v : e.violations()) {
    if (v.find(needle) != std::string::npos) return true;
  }
  return false;
}

const char* kParametersModel = R"({
  "components": [
    {"name": "pathloss", "distribution": {"family": "exponential", "parameters": {"rate": 1.0}}},
    {"name": "shadowing", "distribution": {"family": "lognormal", "parameters": {"mu": 1.0, "sigma": 2.0}}},
    {"name": "multipath", "distribution": {"family": "rayleigh", "parameters": {"scale": 2.0}}}
  ],
  "structure": {"series": [{"ref": "pathloss"}, {"ref": "shadowing"}, {"ref": "multipath"}]},
  "grid": {"t_max": 5.0, "steps": 500},
  "deadlines": [0.5, 1.0, 2.0],
  "retransmissions": 1
})";

}  // namespace

TEST_CASE("loads a parameters-form model file") {
  const auto path = write_file("parameters.json", kParametersModel);
  const auto m = load_model_file(path);

  REQUIRE(m.model.components().size() == 3);
  CHECK(m.model.components()[0].name == "pathloss");
  CHECK(std::get<Exponential>(m.model.components()[0].dist.params()).rate == 1.0);
  CHECK(std::get<LogNormal>(m.model.components()[1].dist.params()).mu == 1.0);
  CHECK(std::get<LogNormal>(m.model.components()[1].dist.params()).sigma == 2.0);
  CHECK(std::get<Rayleigh>(m.model.components()[2].dist.params()).scale == 2.0);
  CHECK(m.model.structure().kind() == RbdNode::Kind::Series);
  REQUIRE(m.grid.has_value());
  CHECK(m.grid->t_max() == 5.0);
  CHECK(m.grid->steps() == 500);
  CHECK(m.deadlines == std::vector<double>{0.5, 1.0, 2.0});
  CHECK(m.retransmissions == 1);
}

TEST_CASE("moments form converts to parameters at load") {
  const auto path = write_file("moments.json", R"({
    "components": [
      {"name": "pathloss", "distribution": {"family": "exponential", "moments": {"mean": 1.0, "variance": 1.0}}},
      {"name": "shadowing", "distribution": {"family": "lognormal", "moments": {"mean": 20.085536923187668, "variance": 21623.037001313981}}},
      {"name": "multipath", "distribution": {"family": "rayleigh", "moments": {"mean": 2.5066282746310002, "variance": 1.7168146928204135}}}
    ],
    "structure": {"series": [{"ref": "pathloss"}, {"ref": "shadowing"}, {"ref": "multipath"}]}
  })");
  const auto m = load_model_file(path);

  CHECK(std::get<Exponential>(m.model.components()[0].dist.params()).rate ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::get<LogNormal>(m.model.components()[1].dist.params()).mu ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::get<LogNormal>(m.model.components()[1].dist.params()).sigma ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::get<Rayleigh>(m.model.components()[2].dist.params()).scale ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK_FALSE(m.grid.has_value());
  CHECK(m.deadlines.empty());
  CHECK(m.retransmissions == 0);
}

TEST_CASE("canonical export reloads to an identical model") {
  const auto path = write_file("roundtrip_in.json", kParametersModel);
  const auto original = load_model_file(path);

  const auto exported = to_canonical_json(original);
  const auto path2 = write_file("roundtrip_out.json", exported);
  const auto reloaded = load_model_file(path2);

  CHECK(reloaded.model.components() == original.model.components());
  CHECK(reloaded.model.structure() == original.model.structure());
  CHECK(reloaded.grid == original.grid);
  CHECK(reloaded.deadlines == original.deadlines);
  CHECK(reloaded.retransmissions == original.retransmissions);

  // exporting the reloaded model is byte-stable
  CHECK(to_canonical_json(reloaded) == exported);
}

TEST_CASE("nested structures survive the round trip") {
  const auto path = write_file("nested.json", R"({
    "components": [
      {"name": "a", "distribution": {"family": "exponential", "parameters": {"rate": 1.0}}},
      {"name": "b", "distribution": {"family": "exponential", "parameters": {"rate": 2.0}}},
      {"name": "c", "distribution": {"family": "rayleigh", "parameters": {"scale": 1.0}}}
    ],
    "structure": {"parallel": [
      {"series": [{"ref": "a"}, {"ref": "b"}]},
      {"ref": "c"}
    ]}
  })");
  const auto m = load_model_file(path);
  CHECK(m.model.structure() ==
        RbdNode::parallel({RbdNode::series({RbdNode::leaf("a"), RbdNode::leaf("b")}),
                           RbdNode::leaf("c")}));

  const auto path2 = write_file("nested_out.json", to_canonical_json(m));
  CHECK(load_model_file(path2).model.structure() == m.model.structure());
}

TEST_CASE("missing file raises an I/O error") {
  CHECK_THROWS_AS(load_model_file(scratch_dir() / "does_not_exist.json"), IoError);
}

TEST_CASE("malformed JSON is a validation failure") {
  const auto path = write_file("broken.json", "{ not json");
  try {
    load_model_file(path);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(mentions(e, "not valid JSON"));
  }
}

TEST_CASE("schema violations are all reported together") {
  const auto path = write_file("bad_schema.json", R"({
    "components": [
      {"name": "a", "distribution": {"family": "weibull", "parameters": {"shape": 1.0}}},
      {"distribution": {"family": "exponential", "parameters": {"rate": 1.0}}},
      {"name": "c", "distribution": {"family": "exponential", "parameters": {"rate": -2.0}}},
      {"name": "d", "distribution": {"family": "rayleigh", "parameters": {"scale": 1.0}, "moments": {"mean": 1.0, "variance": 1.0}}},
      {"name": "e", "distribution": {"family": "exponential", "moments": {"mean": 1.0, "variance": 3.0}}}
    ],
    "structure": {"series": [{"ref": "a"}]},
    "grid": {"t_max": -1.0, "steps": 500},
    "deadlines": [0.5, -2.0],
    "retransmissions": -3
  })");
  try {
    load_model_file(path);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.violations().size() >= 7);
    CHECK(mentions(e, "unknown family \"weibull\""));
    CHECK(mentions(e, "needs a \"name\""));
    CHECK(mentions(e, "rate must be strictly positive"));
    CHECK(mentions(e, "exactly one of \"parameters\" or \"moments\""));
    CHECK(mentions(e, "moments inconsistent"));
    CHECK(mentions(e, "t_max must be strictly positive"));
    CHECK(mentions(e, "deadlines[1]"));
    CHECK(mentions(e, "\"retransmissions\" must be an integer >= 0"));
  }
}

TEST_CASE("structural violations use the component names from the file") {
  const auto path = write_file("bad_structure.json", R"({
    "components": [
      {"name": "a", "distribution": {"family": "exponential", "parameters": {"rate": 1.0}}},
      {"name": "b", "distribution": {"family": "exponential", "parameters": {"rate": 1.0}}}
    ],
    "structure": {"series": [{"ref": "a"}, {"ref": "ghost"}]}
  })");
  try {
    load_model_file(path);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(mentions(e, "unknown component 'ghost'"));
    CHECK(mentions(e, "'b' declared but never referenced"));
  }
}

TEST_CASE("structure nodes need exactly one kind") {
  const auto path = write_file("bad_node.json", R"({
    "components": [
      {"name": "a", "distribution": {"family": "exponential", "parameters": {"rate": 1.0}}}
    ],
    "structure": {"ref": "a", "series": []}
  })");
  try {
    load_model_file(path);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(mentions(e, "exactly one of \"ref\", \"series\", \"parallel\""));
  }
}
