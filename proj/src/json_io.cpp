#include "fockcalc/json_io.hpp"

#include <iomanip>

#include "fockcalc/errors.hpp"

namespace fockcalc {

Json subset_to_json(const SubsetIndex& sigma) {
  Json arr = Json::array();
  for (auto k : sigma.elements()) arr.push_back(k);
  return arr;
}

namespace {

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

[[noreturn]] void schema_fail(const std::string& where, const std::string& what) {
  throw SchemaError(where + ": " + what);
}

SubsetIndex parse_set(const Json& j, const std::string& where) {
  if (!j.is_array()) schema_fail(where, "expected an array of integers");
  std::vector<std::int64_t> elems;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& e = j[i];
    if (!e.is_number_integer()) schema_fail(where + "[" + std::to_string(i) + "]", "expected an integer");
    const auto v = e.get<std::int64_t>();
    if (v < 0) throw NegativeIndexError(where + "[" + std::to_string(i) + "]: negative index " + std::to_string(v));
    if (!elems.empty() && v <= elems.back()) schema_fail(where, "elements must be strictly ascending");
    elems.push_back(v);
  }
  return canonical_subset(elems);
}

double parse_number(const Json& j, const std::string& where) {
  if (!j.is_number()) schema_fail(where, "expected a number");
  return j.get<double>();
}

std::pair<int, int> line_col(std::string_view text, std::size_t byte) {
  int line = 1;
  int col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

Json functional_to_json(const FockFunctional& phi, const std::optional<GrowthEnvelope>& envelope) {
  Json terms = Json::array();
  for (const auto& [sigma, c] : phi.terms()) {
    terms.push_back({{"set", subset_to_json(sigma)}, {"coef", complex_to_json(c)}});
  }
  Json doc = {{"terms", std::move(terms)}};
  if (envelope) doc["envelope"] = {{"C", envelope->C}, {"p", envelope->p}};
  return doc;
}

std::string serialize_functional(const FockFunctional& phi, const std::optional<GrowthEnvelope>& envelope) {
  return functional_to_json(phi, envelope).dump();
}

FunctionalDocument functional_from_json(const Json& doc) {
  if (!doc.is_object()) schema_fail("$", "expected an object");
  if (!doc.contains("terms")) schema_fail("$", "missing field 'terms'");
  const auto& terms = doc["terms"];
  if (!terms.is_array()) schema_fail("terms", "expected an array");

  FockFunctional::Map map;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string where = "terms[" + std::to_string(i) + "]";
    const auto& t = terms[i];
    if (!t.is_object()) schema_fail(where, "expected an object");
    if (!t.contains("set")) schema_fail(where, "missing field 'set'");
    if (!t.contains("coef")) schema_fail(where, "missing field 'coef'");
    auto sigma = parse_set(t["set"], where + ".set");
    const auto& coef = t["coef"];
    if (!coef.is_array() || coef.size() != 2) schema_fail(where + ".coef", "expected [re, im]");
    const Complex c{parse_number(coef[0], where + ".coef[0]"), parse_number(coef[1], where + ".coef[1]")};
    if (!map.emplace(std::move(sigma), c).second) {
      throw DuplicateKeyError(where + ".set: duplicate subset");
    }
  }

  FunctionalDocument out{FockFunctional::from_map(std::move(map)), std::nullopt};
  if (doc.contains("envelope")) {
    const auto& env = doc["envelope"];
    if (!env.is_object() || !env.contains("C") || !env.contains("p")) {
      schema_fail("envelope", "expected {\"C\": number, \"p\": number}");
    }
    GrowthEnvelope e{parse_number(env["C"], "envelope.C"), parse_number(env["p"], "envelope.p")};
    if (e.C < 0.0 || e.p < 0.0) schema_fail("envelope", "C and p must be nonnegative");
    out.envelope = e;
  }
  return out;
}

FunctionalDocument parse_functional(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    throw SchemaError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
  }
  return functional_from_json(doc);
}

Json decomposition_to_json(const DecompositionReport& report) {
  Json terms = Json::object();
  for (const auto& [k, t] : report.terms) terms[std::to_string(k)] = functional_to_json(t);
  Json residuals = Json::array();
  for (const auto& r : report.residuals) residuals.push_back({{"n", r.n}, {"q", r.q}, {"residual", r.residual}});
  return {
      {"mean", functional_to_json(report.mean)},
      {"terms", std::move(terms)},
      {"termination_index", report.termination_index},
      {"residuals", std::move(residuals)},
      {"terminated", report.terminated},
  };
}

Json covariance_to_json(const CovarianceReport& report) {
  Json per_k = Json::object();
  for (const auto& [k, c] : report.per_k) per_k[std::to_string(k)] = complex_to_json(c);
  return {
      {"lhs", complex_to_json(report.lhs)},
      {"rhs", complex_to_json(report.rhs)},
      {"per_k", std::move(per_k)},
      {"gap", report.gap},
  };
}

Json verification_record(std::string_view check, int horizon, double max_gap, double tolerance) {
  return {{"check", std::string(check)}, {"N", horizon}, {"max_gap", max_gap}, {"pass", max_gap <= tolerance}};
}

void write_observable_csv(const PathObservable& obs, std::ostream& out) {
  const auto old_precision = out.precision(17);
  out << "path_index,re,im\n";
  for (std::size_t i = 0; i < obs.values.size(); ++i) {
    out << i << ',' << obs.values[i].real() << ',' << obs.values[i].imag() << '\n';
  }
  out.precision(old_precision);
}

}  // namespace fockcalc
