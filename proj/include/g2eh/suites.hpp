// SPDX-License-Identifier: MIT
//
// Verification suites behind the command-line driver.  Each suite returns a
// list of named checks; reports are assembled in check-id order so that a
// fixed configuration always serialises to the same bytes.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "g2eh/scalar.hpp"

namespace g2eh {

enum class Mode { Exact, Float };

struct RunConfig {
  Mode mode = Mode::Exact;
  std::uint64_t seed = 20240601;
  std::optional<Rational> gamma;
  double a = 1.0;
  double t = 0.01;
  std::string out_dir;
  std::map<std::string, double> tolerances;

  double tol(const std::string& name, double fallback) const;
};

// "key = value" lines, '#' comments; keys: mode, seed, gamma, a, t, out, tol.<name>
void apply_config_file(RunConfig& cfg, const std::string& path);
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

struct Check {
  std::string id;
  std::string ref;  // what is being checked, in words
  bool pass = false;
  std::string measured, expected;
  double tolerance = 0;  // 0 for exact comparisons
};

struct CsvTable {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string str() const;
};

struct SuiteResult {
  std::string name;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  std::vector<CsvTable> tables;

  bool pass() const;
  void add(Check c) { checks.push_back(std::move(c)); }
  void exact(const std::string& id, const std::string& ref, const std::string& measured, const std::string& expected);
  void below(const std::string& id, const std::string& ref, double measured, double bound);
  void within(const std::string& id, const std::string& ref, double measured, double expected, double tol);
  void flag(const std::string& id, const std::string& ref, bool ok, const std::string& detail = "");
};

SuiteResult suite_identities(const RunConfig& cfg);
SuiteResult suite_linearization(const RunConfig& cfg);
SuiteResult suite_product_formulas(const RunConfig& cfg);
SuiteResult suite_appendix_a(const RunConfig& cfg);
SuiteResult suite_eguchi_hanson(const RunConfig& cfg);
SuiteResult suite_fibre(const RunConfig& cfg);
SuiteResult suite_torsion_table(const RunConfig& cfg);
SuiteResult suite_alpha_window(const RunConfig& cfg);
SuiteResult suite_betti(const RunConfig& cfg, const std::string& example);

const std::vector<std::string>& verify_suite_names();
SuiteResult run_verify_suite(const std::string& name, const RunConfig& cfg);

// sorted-key JSON of a run; the only non-deterministic input (none by default)
// would live under "header"
std::string report_json(const std::string& command, const RunConfig& cfg, const std::vector<SuiteResult>& suites);

}  // namespace g2eh
