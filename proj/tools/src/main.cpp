#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "anisodnl/errors.hpp"
#include "anisodnl/reports.hpp"
#include "anisodnl_app/app.hpp"

namespace {

enum Exit { kPass = 0, kViolation = 1, kConfig = 2, kSolve = 3, kOther = 4 };

struct Overrides {
  std::string out;
  std::string k;
  std::string grid;
  long long seed = -1;
  double dt = 0.0;
};

void apply(anisodnl::ConfigDocument& doc, const Overrides& o) {
  if (!o.out.empty()) doc.set("out", o.out);
  if (!o.k.empty()) doc.set("k", o.k);
  if (!o.grid.empty()) doc.set("grid", o.grid);
  if (o.seed >= 0) doc.set("seed", std::to_string(o.seed));
  if (o.dt > 0.0) {
    std::ostringstream s;
    s.precision(17);
    s << o.dt;
    doc.set("dt", s.str());
  }
}

int execute(anisodnl::ConfigDocument doc, const Overrides& o) {
  apply(doc, o);
  const anisodnl::app::RunConfig cfg = anisodnl::app::make_run_config(doc);
  const anisodnl::app::RunResult r = anisodnl::app::run(cfg);
  std::cout << cfg.scenario << ": " << (r.pass ? "pass" : "VIOLATION") << " (" << r.artifacts.size()
            << " files in " << cfg.out_dir.string() << ")\n";
  return r.pass ? kPass : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Solver and verification runner for anisotropic doubly nonlinear parabolic problems"};
  cli.require_subcommand(1);

  std::string config_path;
  Overrides overrides;
  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", config_path, "Configuration file");
    if (config_required) opt->required();
    opt->check(CLI::ExistingFile);
    sub->add_option("--out", overrides.out, "Output directory");
    sub->add_option("--seed", overrides.seed, "Seed for randomized audits")->check(CLI::NonNegativeNumber);
    sub->add_option("--k", overrides.k, "Truncation levels, e.g. 1,2,4,8");
    sub->add_option("--grid", overrides.grid, "Nodes per axis, e.g. 33 or 33,17");
    sub->add_option("--dt", overrides.dt, "Time step")->check(CLI::PositiveNumber);
  };

  CLI::App* run = cli.add_subcommand("run", "Run the scenario named in the configuration");
  add_common(run, true);
  CLI::App* validate = cli.add_subcommand("validate", "Check data conditions without solving");
  std::size_t samples = 2000;
  validate->add_option("--config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
  validate->add_option("--samples", samples, "Random points per condition");
  validate->add_option("--seed", overrides.seed, "Sampling seed")->check(CLI::NonNegativeNumber);
  CLI::App* calibrate = cli.add_subcommand("calibrate", "Recompute the swept constants");
  add_common(calibrate, false);
  CLI::App* presets = cli.add_subcommand("presets", "List the shipped problem presets");

  CLI11_PARSE(cli, argc, argv);

  try {
    if (*presets) {
      for (const auto& name : anisodnl::preset_names()) std::cout << name << '\n';
      return kPass;
    }
    if (*validate) {
      const auto doc = anisodnl::ConfigDocument::load(config_path);
      const auto report = anisodnl::app::validate(
          doc, samples, overrides.seed >= 0 ? static_cast<std::uint64_t>(overrides.seed) : 0);
      std::cout << report.dump(2) << '\n';
      const auto& caps = report["data"]["capabilities"];
      std::cerr << "cascade: " << caps["cascade"].get<std::string>() << '\n'
                << "degiorgi-report: " << caps["degiorgi-report"].get<std::string>() << '\n';
      return kPass;
    }
    if (*run) return execute(anisodnl::ConfigDocument::load(config_path), overrides);
    if (*calibrate) {
      anisodnl::ConfigDocument doc;
      if (!config_path.empty()) doc = anisodnl::ConfigDocument::load(config_path);
      doc.set("scenario", "calibrate");
      return execute(doc, overrides);
    }
  } catch (const anisodnl::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kConfig;
  } catch (const anisodnl::SolveError& e) {
    std::cerr << e.what() << '\n';
    const auto& steps = e.report().steps;
    if (!steps.empty()) {
      std::cerr << "last step " << steps.back().step << " residuals:";
      for (double r : steps.back().residuals) std::cerr << ' ' << r;
      std::cerr << '\n';
    }
    return kSolve;
  } catch (const anisodnl::CascadeError& e) {
    std::cerr << e.what() << '\n';
    return kSolve;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
  return kOther;
}
