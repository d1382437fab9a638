#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pdecanon/report.hpp"

namespace pdecanon {

/// Bundled .pde and .tf files, keyed by file name.
const std::map<std::string, std::string>& embedded_scenario_files();

/// Reads scenario files from a directory when one is given, otherwise from
/// the embedded copies. Throws Error(InvalidDeclaration) for a missing file.
class ScenarioFiles {
 public:
  explicit ScenarioFiles(std::optional<std::string> directory = std::nullopt);

  std::string read(const std::string& name) const;
  PdeDoc pde(const std::string& name) const;
  AffineTransform transform(const std::string& name, const PdeDoc& source) const;

 private:
  std::optional<std::string> directory_;
};

enum class CheckKind { PullbackEquality, Canonize, Match, DegenerateCase };

std::string to_string(CheckKind kind);

struct ScenarioResult {
  std::string name;
  CheckKind kind;
  bool passed = false;
  std::string summary;
  Json details;
};

/// Names of the bundled scenarios in run order.
std::vector<std::string> scenario_names();

/// Runs one bundled scenario. Parse and file errors propagate as exceptions.
ScenarioResult run_scenario(const std::string& name, const ScenarioFiles& files);

std::vector<ScenarioResult> run_all_scenarios(const ScenarioFiles& files);

}  // namespace pdecanon
