#include "pdecanon/report.hpp"

#include "pdecanon/error.hpp"

namespace pdecanon {

namespace {

Json names(const VarSet& v) { return Json(v.names()); }

Json ratfun_map(const std::map<std::string, RatFun>& m) {
  Json out = Json::object();
  for (const auto& [k, v] : m) out[k] = v.to_string();
  return out;
}

RatFun read_ratfun(const Json& j, std::span<const std::string> params) {
  if (!j.is_string()) throw Error(ErrorKind::InvalidDeclaration, "expected a coefficient string");
  return parse_ratfun(j.get<std::string>(), params);
}

}  // namespace

Json to_json(const DiffPoly& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms())
    terms.push_back({{"monomial", format_monomial(m, p.vars(), Notation::Explicit)},
                     {"coefficient", c.to_string()}});
  return {{"vars", names(p.vars())},
          {"lhs", format_diffpoly(p, Notation::Explicit)},
          {"terms", std::move(terms)}};
}

Json to_json(const AffineTransform& t) {
  Json matrix = Json::array();
  for (const auto& row : t.matrix) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(e.to_string());
    matrix.push_back(std::move(r));
  }
  Json offset = Json::array();
  for (const auto& e : t.offset) offset.push_back(e.to_string());
  return {{"source", names(t.source)},
          {"target", names(t.target)},
          {"matrix", std::move(matrix)},
          {"offset", std::move(offset)},
          {"script", format_transform(t)}};
}

Json to_json(const DegeneracyReport& r) {
  Json out = Json::array();
  for (const auto& c : r.conditions) out.push_back(c.to_string());
  return out;
}

Json to_json(const CanonReport& r) {
  Json diagonal = Json::array();
  for (const auto& d : r.diagonal) diagonal.push_back(d.to_string());
  Json reduced = Json::array();
  for (const auto& row : r.reduced) {
    Json jr = Json::array();
    for (const auto& e : row) jr.push_back(e.to_string());
    reduced.push_back(std::move(jr));
  }
  Json notes = Json::array();
  for (const auto& n : r.normalization_notes)
    notes.push_back({{"variable", n.variable}, {"radicand", n.radicand.to_string()}, {"text", n.to_string()}});
  return {{"transform", to_json(r.transform)},
          {"diagonal", std::move(diagonal)},
          {"reduced", std::move(reduced)},
          {"conditions", to_json(r.degeneracy)},
          {"normalization_notes", std::move(notes)}};
}

Json to_json(const WitnessData& w) {
  Json perm = Json::object();
  for (const auto& [k, v] : w.perm) perm[k] = v;
  return {{"perm", std::move(perm)},
          {"var_scales", ratfun_map(w.var_scales)},
          {"dep_scale", w.dep_scale.to_string()},
          {"overall", w.overall.to_string()},
          {"param_map", ratfun_map(w.param_map)}};
}

Json to_json(const RefutationCertificate& c) {
  return {{"invariant", to_string(c.invariant)}, {"left", c.left}, {"right", c.right}};
}

Json to_json(const MatchResult& r) {
  if (const auto* w = std::get_if<MatchWitness>(&r))
    return {{"status", "match"}, {"witness", to_json(w->data())}};
  return {{"status", "refuted"}, {"refutation", to_json(std::get<RefutationCertificate>(r))}};
}

WitnessData witness_from_json(const Json& j, std::span<const std::string> params) {
  const Json& w = j.contains("witness") ? j.at("witness") : j;
  if (!w.is_object()) throw Error(ErrorKind::InvalidDeclaration, "witness must be a JSON object");
  WitnessData out;
  try {
    for (const auto& [k, v] : w.at("perm").items()) out.perm[k] = v.get<std::string>();
    for (const auto& [k, v] : w.at("var_scales").items()) out.var_scales[k] = read_ratfun(v, params);
    out.dep_scale = read_ratfun(w.at("dep_scale"), params);
    out.overall = read_ratfun(w.at("overall"), params);
    for (const auto& [k, v] : w.at("param_map").items()) out.param_map[k] = read_ratfun(v, params);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidDeclaration, std::string("malformed witness: ") + e.what());
  }
  return out;
}

}  // namespace pdecanon
