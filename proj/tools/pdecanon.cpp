#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "pdecanon/error.hpp"
#include "pdecanon/oracle.hpp"
#include "pdecanon/report.hpp"
#include "pdecanon/scenarios.hpp"

using namespace pdecanon;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;
constexpr int kOracleTrials = 5;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidDeclaration, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PdeDoc load_pde(const std::string& path) { return parse_pde(read_file(path), path); }

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::map<std::string, Rational> parse_assignments(const std::string& text) {
  std::map<std::string, Rational> out;
  for (const auto& item : split(text, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::InvalidDeclaration, "expected name=value, got '" + item + "'");
    std::string name = item.substr(0, eq);
    name.erase(name.find_last_not_of(" \t") + 1);
    std::string value = item.substr(eq + 1);
    value.erase(0, value.find_first_not_of(" \t"));
    out[name] = parse_rational(value);
  }
  return out;
}

/// Substitutes values for some parameters of a document and drops them from its list.
PdeDoc specialize(const PdeDoc& doc, const std::map<std::string, Rational>& values) {
  if (values.empty()) return doc;
  std::map<std::string, RatFun> assignment;
  std::vector<std::string> params;
  for (const auto& [k, v] : values) {
    if (std::find(doc.params.begin(), doc.params.end(), k) == doc.params.end())
      throw Error(ErrorKind::UndeclaredIdentifier, k + " is not a parameter of " + doc.name);
    assignment[k] = RatFun(v);
  }
  for (const auto& p : doc.params)
    if (!values.count(p)) params.push_back(p);
  return PdeDoc(doc.vars, params, subst_params(doc.lhs, assignment), doc.name);
}

std::string describe_first_difference(const DiffPoly& got, const DiffPoly& want) {
  auto gi = got.terms().begin();
  auto wi = want.terms().begin();
  const VarSet& vars = got.vars();
  while (gi != got.terms().end() || wi != want.terms().end()) {
    if (wi == want.terms().end() || (gi != got.terms().end() && gi->first < wi->first))
      return format_monomial(gi->first, vars, Notation::Subscript) + " occurs only in the result (coefficient " +
             gi->second.to_string() + ")";
    if (gi == got.terms().end() || wi->first < gi->first)
      return format_monomial(wi->first, vars, Notation::Subscript) +
             " occurs only in the expected equation (coefficient " + wi->second.to_string() + ")";
    if (!(gi->second == wi->second))
      return "coefficient of " + format_monomial(gi->first, vars, Notation::Subscript) + ": " +
             gi->second.to_string() + " vs expected " + wi->second.to_string();
    ++gi;
    ++wi;
  }
  return "none";
}

struct Options {
  bool json = false;
  std::optional<std::uint64_t> seed;
};

int cmd_verify(const Options& o, const std::string& pde_path, const std::string& tf_path,
               const std::string& expect_path) {
  const PdeDoc input = load_pde(pde_path);
  const AffineTransform t = parse_transform(read_file(tf_path), input.vars, input.params);
  const DiffPoly image = pullback(input.lhs, t);
  const PdeDoc result(image.vars(), input.params, image);
  const DegeneracyReport conditions = validity_conditions(t);

  // Randomized first-principles check of the chain rule at rational points.
  const std::uint64_t seed = resolve_seed(o.seed);
  std::mt19937_64 rng(seed);
  int consistent = 0;
  for (int k = 0; k < kOracleTrials; ++k) {
    const auto params = random_params(rng, input.params, conditions);
    const auto f = random_test_function(rng, input.vars, input.lhs.max_order() + 1, 6);
    if (pullback_consistency_check(input.lhs, t, f, random_point(rng, input.vars.size()), params).consistent)
      ++consistent;
  }

  Json j = {{"input", to_json(input.lhs)},
            {"transform", to_json(t)},
            {"result", to_json(image)},
            {"conditions", to_json(conditions)},
            {"inactive_variables", image.inactive_variables()},
            {"oracle", {{"seed", seed}, {"trials", kOracleTrials}, {"consistent", consistent}}}};
  std::ostringstream text;
  text << "input:      " << print_canonical(input) << "\n"
       << "transform:\n";
  for (const auto& line : split(format_transform(t), '\n')) text << "  " << line << "\n";
  text << "result:     " << print_canonical(result) << "\n";
  text << "conditions:";
  if (conditions.empty()) text << " none";
  for (const auto& c : conditions.conditions) text << " " << c.to_string() << " != 0;";
  text << "\n";
  for (const auto& v : image.inactive_variables()) text << "note:       " << v << " no longer occurs\n";
  text << "oracle:     " << consistent << "/" << kOracleTrials << " consistent (seed " << seed << ")\n";

  int status = consistent == kOracleTrials ? kOk : kMismatch;
  if (!expect_path.empty()) {
    const PdeDoc expected = load_pde(expect_path);
    DiffPoly want = expected.lhs;
    if (!(want.vars() == image.vars())) {
      if (want.vars().size() != image.vars().size())
        throw Error(ErrorKind::DimensionMismatch, "expected equation has " +
                                                      std::to_string(want.vars().size()) + " variables, result has " +
                                                      std::to_string(image.vars().size()));
      text << "note:       expected variables (" << want.vars().to_string() << ") read as ("
           << image.vars().to_string() << ")\n";
      want = want.relabeled(image.vars());
    }
    const bool equal = image == want;
    text << "expected:   " << print_canonical(PdeDoc(want.vars(), expected.params, want)) << "\n";
    text << (equal ? "MATCH" : "MISMATCH: " + describe_first_difference(image, want)) << "\n";
    j["expected"] = to_json(want);
    j["match"] = equal;
    if (!equal) {
      j["difference"] = describe_first_difference(image, want);
      status = kMismatch;
    }
  }
  std::cout << (o.json ? j.dump(2) + "\n" : text.str());
  return status;
}

int cmd_paper_check(const Options& o, const std::string& dir) {
  const ScenarioFiles files(dir.empty() ? std::nullopt : std::optional<std::string>(dir));
  const auto results = run_all_scenarios(files);
  std::size_t passed = 0;
  Json j = Json::array();
  for (const auto& r : results) {
    if (r.passed) ++passed;
    Json item = {{"name", r.name}, {"kind", to_string(r.kind)}, {"status", r.passed ? "pass" : "fail"},
                 {"summary", r.summary}};
    if (r.details.contains("witness")) item["witness"] = r.details["witness"];
    if (r.details.contains("conditions")) item["conditions"] = r.details["conditions"];
    item["details"] = r.details;
    j.push_back(std::move(item));
  }
  if (o.json) {
    std::cout << Json{{"scenarios", j}, {"passed", passed}, {"total", results.size()}}.dump(2) << "\n";
  } else {
    for (const auto& r : results)
      std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.summary << "\n";
    std::cout << passed << "/" << results.size() << " scenarios pass\n";
    for (const auto& r : results)
      if (!r.passed) std::cerr << "failing: " << r.name << "\n";
  }
  return passed == results.size() ? kOk : kMismatch;
}

int cmd_canon(const Options& o, const std::string& path, const std::string& eliminate,
              const std::string& freeze) {
  const PdeDoc doc = load_pde(path);
  CanonReport report = [&] {
    if (eliminate.empty()) return lagrange_diagonalize(principal_matrix(doc.lhs));
    std::vector<DerivKey> keys;
    for (const auto& k : split(eliminate, ',')) keys.push_back(parse_deriv_key(k, doc.vars));
    const auto frozen_list = split(freeze, ',');
    return derive_reduction(doc.lhs, keys, {frozen_list.begin(), frozen_list.end()});
  }();
  const DiffPoly image = pullback(doc.lhs, report.transform);
  Json j = to_json(report);
  j["result"] = to_json(image);
  if (o.json) {
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << "transform:\n";
  for (const auto& line : split(format_transform(report.transform), '\n')) std::cout << "  " << line << "\n";
  std::cout << "diagonal:";
  for (const auto& d : report.diagonal) std::cout << " [" << d.to_string() << "]";
  std::cout << "\nconditions:";
  if (report.degeneracy.empty()) std::cout << " none";
  for (const auto& c : report.degeneracy.conditions) std::cout << " " << c.to_string() << " != 0;";
  std::cout << "\n";
  for (const auto& n : report.normalization_notes) std::cout << "note: " << n.to_string() << "\n";
  std::cout << "result: " << print_canonical(PdeDoc(image.vars(), doc.params, image)) << "\n";
  return kOk;
}

int cmd_match(const Options& o, const std::string& first, const std::string& second,
              const std::string& params, const std::string& witness_path) {
  const PdeDoc p = specialize(load_pde(first), parse_assignments(params));
  const PdeDoc q = load_pde(second);
  if (!witness_path.empty()) {
    const WitnessData w = witness_from_json(Json::parse(read_file(witness_path)), p.params);
    const bool ok = verify_witness(p, q, w);
    if (o.json)
      std::cout << Json{{"status", ok ? "verified" : "rejected"}, {"witness", to_json(w)}}.dump(2) << "\n";
    else
      std::cout << (ok ? "witness verified" : "witness rejected") << "\n";
    return ok ? kOk : kMismatch;
  }
  MatchResult r = [&]() -> MatchResult {
    try {
      return match_modulo(p, q);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UnresolvedNonlinearSystem) throw;
      if (o.json)
        std::cout << Json{{"status", "inconclusive"}, {"reason", e.what()}}.dump(2) << "\n";
      else
        std::cout << "inconclusive: " << e.what() << "\n";
      throw;
    }
  }();
  if (o.json) {
    std::cout << to_json(r).dump(2) << "\n";
  } else if (const auto* w = std::get_if<MatchWitness>(&r)) {
    const auto& d = w->data();
    std::cout << "match (verified by substitution)\n";
    for (const auto& [from, to] : d.perm)
      std::cout << "  " << from << " -> " << to << ", scale " << d.var_scales.at(from).to_string() << "\n";
    std::cout << "  u -> (" << d.dep_scale.to_string() << ")*u\n";
    std::cout << "  overall factor " << d.overall.to_string() << "\n";
    for (const auto& [k, v] : d.param_map) std::cout << "  " << k << " -> " << v.to_string() << "\n";
  } else {
    const auto& c = std::get<RefutationCertificate>(r);
    std::cout << "refuted by " << to_string(c.invariant) << ": " << c.left << " vs " << c.right << "\n";
  }
  return std::holds_alternative<MatchWitness>(r) ? kOk : kMismatch;
}

int cmd_residual(const Options& o, const std::string& path, const std::string& fn, const std::string& at,
                 const std::string& params) {
  const PdeDoc doc = load_pde(path);
  const TestFunction f{doc.vars, parse_polynomial(fn, doc.vars)};
  std::vector<Rational> point;
  for (const auto& v : split(at, ',')) point.push_back(parse_rational(v));
  const Residual r = residual_eval(doc.lhs, f, point, parse_assignments(params));
  if (o.json) {
    std::cout << Json{{"value", to_string(r.value)}, {"warnings", r.warnings}}.dump(2) << "\n";
  } else {
    std::cout << to_string(r.value) << "\n";
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  }
  return kOk;
}

int cmd_print(const Options& o, const std::string& path) {
  const PdeDoc doc = load_pde(path);
  if (o.json)
    std::cout << Json{{"equation", to_json(doc.lhs)}, {"params", doc.params}}.dump(2) << "\n";
  else
    std::cout << print_canonical(doc) << "\n";
  return kOk;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::NoSolution:
    case ErrorKind::UnresolvedNonlinearSystem:
    case ErrorKind::SearchBudgetExceeded:
      return kMismatch;
    default:
      return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic canonical forms and equivalence checks for constant-coefficient PDEs"};
  app.require_subcommand(1);
  Options opts;
  std::uint64_t seed = 0;
  app.add_flag("--json", opts.json, "Machine-readable output");
  auto* seed_opt = app.add_option("--seed", seed, "Random seed (default: PDECANON_SEED)");

  std::string pde, pde2, tf, expect, eliminate, freeze, params, fn, at, scenario_dir, witness;

  auto* verify = app.add_subcommand("verify", "Pull an equation back through a transform");
  verify->add_option("pde", pde, "Equation file (.pde)")->required();
  verify->add_option("transform", tf, "Transform script (.tf)")->required();
  verify->add_option("--expect", expect, "Expected result (.pde)");

  auto* paper = app.add_subcommand("paper-check", "Run the bundled scenarios");
  paper->add_option("--scenario-dir", scenario_dir, "Read scenario files from this directory");

  auto* canon = app.add_subcommand("canon", "Canonical form of the second-order part");
  canon->add_option("pde", pde, "Equation file (.pde)")->required();
  canon->add_option("--eliminate", eliminate, "Comma-separated derivatives to remove, e.g. u_xt");
  canon->add_option("--freeze", freeze, "Comma-separated variables to keep unchanged");

  auto* match = app.add_subcommand("match", "Find a witness that two equations are equivalent");
  match->add_option("first", pde, "Source equation (.pde)")->required();
  match->add_option("second", pde2, "Target equation (.pde)")->required();
  match->add_option("--params", params, "Values substituted into the source, e.g. alpha=6/5");
  match->add_option("--check-witness", witness, "Verify a JSON witness instead of searching");

  auto* residual = app.add_subcommand("residual", "Exact residual on a polynomial test function");
  residual->add_option("pde", pde, "Equation file (.pde)")->required();
  residual->add_option("--fn", fn, "Test function, e.g. t^2 + x^4")->required();
  residual->add_option("--at", at, "Point, e.g. 1,1")->required();
  residual->add_option("--params", params, "Parameter values, e.g. beta=1,gamma=1");

  auto* print = app.add_subcommand("print", "Print the normal form");
  print->add_option("pde", pde, "Equation file (.pde)")->required();

  for (auto* sub : {verify, paper, canon, match, residual, print}) {
    sub->add_flag("--json", opts.json, "Machine-readable output");
    sub->add_option("--seed", seed, "Random seed (default: PDECANON_SEED)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  bool seeded = seed_opt->count() > 0;
  for (auto* sub : app.get_subcommands())
    if (sub->get_option("--seed")->count() > 0) seeded = true;
  if (seeded) opts.seed = seed;

  try {
    if (verify->parsed()) return cmd_verify(opts, pde, tf, expect);
    if (paper->parsed()) return cmd_paper_check(opts, scenario_dir);
    if (canon->parsed()) return cmd_canon(opts, pde, eliminate, freeze);
    if (match->parsed()) return cmd_match(opts, pde, pde2, params, witness);
    if (residual->parsed()) return cmd_residual(opts, pde, fn, at, params);
    if (print->parsed()) return cmd_print(opts, pde);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnresolvedNonlinearSystem) std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
