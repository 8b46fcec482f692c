#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "anisodnl/config.hpp"
#include "anisodnl/errors.hpp"
#include "anisodnl/reports.hpp"
#include "anisodnl_app/app.hpp"

using namespace anisodnl;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("anisodnl-test-" + name);
  fs::remove_all(p);
  return p;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("config documents") {
  auto doc = ConfigDocument::parse("# comment\nT = 1\n\np = 2 3 # trailing\nT = 2\n");
  REQUIRE(doc.find("T"));
  CHECK(doc.find("T")->value == "2");
  CHECK(doc.find("T")->line == 5);
  CHECK(config_reals(*doc.find("p")) == std::vector<double>{2, 3});
  CHECK_FALSE(doc.contains("m"));

  try {
    ConfigDocument::parse("T = 1\nthis line is wrong\n");
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 2);
  }
  auto bad = ConfigDocument::parse("dim = 2\nT = abc\n");
  try {
    config_real(*bad.find("T"));
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 2);
    CHECK(e.field() == "T");
  }
}

TEST_CASE("presets build") {
  for (const auto& name : preset_names()) {
    ConfigDocument doc;
    doc.set("preset", name);
    const ProblemSpec s = build_problem(doc);
    CHECK(s.name == name);
    CHECK(s.coeffs.a.size() == s.dim());
  }
  ConfigDocument unknown;
  unknown.set("preset", "nope");
  CHECK_THROWS_AS(build_problem(unknown), ConfigError);

  // Explicit keys override the preset.
  auto doc = ConfigDocument::parse("preset = porous-medium\nT = 0.5\n");
  CHECK(build_problem(doc).T == 0.5);
}

TEST_CASE("problem errors point at the key") {
  auto doc = ConfigDocument::parse("dim = 2\nT = 1\np = 2 2 2\nm = 1\nf = const 0\ng = const 1\nu0 = const 1\n");
  try {
    build_problem(doc);
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 3);
    CHECK(e.field() == "p");
  }
  doc = ConfigDocument::parse("dim = 1\nT = 1\np = 2\nm = 1\nf = wiggle 3\ng = const 1\nu0 = const 1\n");
  try {
    build_problem(doc);
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 5);
  }
  doc = ConfigDocument::parse("dim = 1\nT = 1\np = 2\nm = 1\nf = manufactured\ng = const 1\nu0 = const 1\n");
  CHECK_THROWS_AS(build_problem(doc), ConfigError);
}

TEST_CASE("run configuration") {
  auto doc = ConfigDocument::parse("preset = porous-medium\nscenario = cascade\nk = 1 2 4\ngrid = 9\n");
  auto cfg = app::make_run_config(doc);
  CHECK(cfg.ks == std::vector<int>{1, 2, 4});
  CHECK(cfg.grid == std::vector<std::size_t>{9});
  CHECK(cfg.solver.dt == doctest::Approx(0.05 / 32));

  try {
    app::make_run_config(ConfigDocument::parse("preset = porous-medium\nscenario = cascade\nspeed = 3\n"));
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 3);
    CHECK(e.field() == "speed");
  }
  CHECK_THROWS_AS(app::make_run_config(ConfigDocument::parse("preset = porous-medium\nscenario = fly\n")),
                  ConfigError);
  CHECK_THROWS_AS(app::make_run_config(ConfigDocument::parse("preset = porous-medium\nscenario = cascade\ngrid = 2\n")),
                  ConfigError);
}

TEST_CASE("validate reports capabilities") {
  auto ok = app::validate(ConfigDocument::parse("preset = anisotropic\n"), 200, 1);
  CHECK(ok["pass"].get<bool>());
  CHECK(ok["data"]["capabilities"]["cascade"] == "enabled");
  CHECK(validate_report(ok).empty());

  auto bad = app::validate(ConfigDocument::parse("preset = anisotropic\nm = 1 2\n"), 200, 1);
  CHECK(bad["data"]["capabilities"]["cascade"].get<std::string>().find("axis 2") != std::string::npos);

  auto edge = app::validate(ConfigDocument::parse("preset = porous-medium\nsigma = 2\n"), 200, 1);
  CHECK(edge["data"]["capabilities"]["degiorgi-report"].get<std::string>().rfind("disabled", 0) == 0);
}

TEST_CASE("scenario runs are deterministic and schema-valid") {
  for (const std::string scenario : {"constant", "cascade", "comparison", "degiorgi-report", "mollifier-demo"}) {
    CAPTURE(scenario);
    std::string manifests[2];
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path out = scratch(scenario + std::to_string(rep));
      auto doc = ConfigDocument::parse("preset = porous-medium\ngrid = 9\ndt = 0.0125\nk = 1 2 4\nseed = 5\n");
      doc.set("scenario", scenario);
      doc.set("out", out.string());
      const auto result = app::run(app::make_run_config(doc));
      CHECK(result.pass);
      CHECK(validate_report(result.report).empty());
      const auto report = nlohmann::json::parse(read_file(out / "report.json"));
      CHECK(validate_report(report).empty());
      manifests[rep] = read_file(out / "manifest.json");
      const auto manifest = nlohmann::json::parse(manifests[rep]);
      for (const auto& f : manifest["files"])
        CHECK(app::sha256_file(out / f["path"].get<std::string>()) == f["sha256"].get<std::string>());
      fs::remove_all(out);
    }
    CHECK(manifests[0] == manifests[1]);
  }
}

TEST_CASE("manufactured scenario") {
  const fs::path out = scratch("manufactured");
  auto doc = ConfigDocument::parse("preset = manufactured-1d\nscenario = manufactured\ngrid = 9\ndt = 0.125\n");
  doc.set("out", out.string());
  const auto result = app::run(app::make_run_config(doc));
  CHECK(result.pass);
  CHECK(result.report["data"]["errors"].size() == 3);
  fs::remove_all(out);
}

TEST_CASE("schema validation catches problems") {
  CHECK_FALSE(validate_report(nlohmann::json::array()).empty());
  auto r = make_report("cascade", true, {{"ks", {1, 2}}});
  CHECK_FALSE(validate_report(r).empty());
  r["schema"] = "other/9";
  CHECK(validate_report(r).size() >= 2);
  CHECK_FALSE(validate_report(make_report("mystery", true, nlohmann::json::object())).empty());
}
