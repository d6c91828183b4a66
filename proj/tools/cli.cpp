// SPDX-License-Identifier: MIT
#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <stdexcept>

#include "g2eh/suites.hpp"

namespace g2eh {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

SuiteResult guarded(const std::string& name, const std::function<SuiteResult()>& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const std::exception& e) {
    SuiteResult r;
    r.name = name;
    r.add({name + ".completed", "suite ran to completion", false, e.what(), "no exception", 0});
    return r;
  }
}

void write_outputs(const std::string& dir, const std::string& json, const std::vector<SuiteResult>& suites) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create output directory " + dir);
  auto put = [&](const fs::path& p, const std::string& text) {
    std::ofstream f(p);
    if (!f || !(f << text)) throw UsageError("cannot write " + p.string());
  };
  put(fs::path(dir) / "report.json", json);
  for (const auto& s : suites)
    for (const auto& t : s.tables) put(fs::path(dir) / (s.name + "_" + t.name + ".csv"), t.str());
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification driver for the G2 / Eguchi-Hanson resolution toolkit", "g2eh"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string mode = "exact", gamma, config_path, format;
  app.add_option("--config", config_path, "flat key = value config file; flags override it");
  app.add_option("--mode", mode, "exact | float")->check(CLI::IsMember({"exact", "float"}));
  auto* seed = app.add_option("--seed", cfg.seed, "seed for randomised checks");
  app.add_option("--gamma", gamma, "decay offset gamma as P/Q");
  auto* aopt = app.add_option("--a", cfg.a, "Eguchi-Hanson bolt scale a > 0");
  auto* topt = app.add_option("--t", cfg.t, "glue scale t > 0");
  auto* outopt = app.add_option("--out", cfg.out_dir, "directory for report.json and CSV tables");
  app.add_option("--format", format, "stdout format: json | csv")->check(CLI::IsMember({"json", "csv"}));

  std::string suite = "all", example = "all";
  auto* verify = app.add_subcommand("verify", "pointwise identities and exact linear algebra");
  verify->add_option("suite", suite, "identities | linearization | product-formulas | appendix-a | all")
      ->check(CLI::IsMember({"identities", "linearization", "product-formulas", "appendix-a", "all"}));
  auto* eh = app.add_subcommand("eh", "Eguchi-Hanson metric suite");
  auto* fibre = app.add_subcommand("solve-fibre", "radial Poisson problems on the Eguchi-Hanson fibre");
  auto* table = app.add_subcommand("torsion-table", "norm exponents of the gluing torsion per region");
  auto* alpha = app.add_subcommand("alpha-window", "admissible alpha from the aggregated exponents");
  auto* betti = app.add_subcommand("betti", "Betti numbers of the resolved examples");
  betti->add_option("--example", example, "ex7_1 | ex7_2 | ex7_3 | ex7_5 | all");
  for (auto* sc : {verify, eh, fibre, table, alpha, betti}) sc->fallthrough();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    // config file first, then explicit flags on top
    RunConfig base;
    if (!config_path.empty()) apply_config_file(base, config_path);
    if (app.count("--mode")) base.mode = mode == "float" ? Mode::Float : Mode::Exact;
    if (seed->count()) base.seed = cfg.seed;
    if (aopt->count()) base.a = cfg.a;
    if (topt->count()) base.t = cfg.t;
    if (outopt->count()) base.out_dir = cfg.out_dir;
    if (!gamma.empty()) base.gamma = parse_rational(gamma);
    cfg = base;
    if (!(cfg.a > 0) || !(cfg.t > 0)) throw UsageError("--a and --t must be positive");
    if (cfg.gamma && (*cfg.gamma <= 0 || *cfg.gamma >= 1)) throw UsageError("--gamma must lie in (0, 1)");
  } catch (const std::exception& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  std::string command = app.get_subcommands()[0]->get_name();
  std::vector<SuiteResult> suites;
  try {
    if (verify->parsed()) {
      std::vector<std::string> names = suite == "all" ? verify_suite_names() : std::vector<std::string>{suite};
      command += " " + suite;
      std::vector<std::future<SuiteResult>> jobs;
      for (const auto& n : names)
        jobs.push_back(std::async(std::launch::async, [n, &cfg] { return guarded(n, [&] { return run_verify_suite(n, cfg); }); }));
      for (auto& j : jobs) suites.push_back(j.get());
    } else if (eh->parsed()) {
      suites.push_back(guarded("eh", [&] { return suite_eguchi_hanson(cfg); }));
    } else if (fibre->parsed()) {
      suites.push_back(guarded("solve-fibre", [&] { return suite_fibre(cfg); }));
    } else if (table->parsed()) {
      suites.push_back(guarded("torsion-table", [&] { return suite_torsion_table(cfg); }));
      if (format.empty()) format = "csv";
    } else if (alpha->parsed()) {
      suites.push_back(guarded("alpha-window", [&] { return suite_alpha_window(cfg); }));
    } else if (betti->parsed()) {
      command += " --example " + example;
      suites.push_back(guarded("betti", [&] { return suite_betti(cfg, example); }));
    }

    std::string json = report_json(command, cfg, suites);
    if (format == "csv") {
      for (const auto& s : suites)
        for (const auto& t : s.tables) out << t.str();
    } else {
      out << json;
    }
    if (!cfg.out_dir.empty()) write_outputs(cfg.out_dir, json, suites);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  for (const auto& s : suites)
    if (!s.pass()) return 1;
  return 0;
}

}  // namespace g2eh
