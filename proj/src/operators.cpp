#include "fockcalc/operators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "fockcalc/errors.hpp"

namespace fockcalc {

namespace {

SubsetIndex::value_type site(std::int64_t k) {
  if (k < 0) throw NegativeIndexError("operator site index must be >= 0, got " + std::to_string(k));
  return static_cast<SubsetIndex::value_type>(k);
}

}  // namespace

FockFunctional annihilate(const FockFunctional& phi, std::int64_t k) {
  const auto s = site(k);
  FockFunctional::Map out;
  for (const auto& [sigma, c] : phi.terms()) {
    if (sigma.contains(s)) out.emplace(sigma.without(s), c);
  }
  return FockFunctional::from_map(std::move(out));
}

FockFunctional create(const FockFunctional& phi, std::int64_t k) {
  const auto s = site(k);
  FockFunctional::Map out;
  for (const auto& [sigma, c] : phi.terms()) {
    if (!sigma.contains(s)) out.emplace(sigma.with(s), c);
  }
  return FockFunctional::from_map(std::move(out));
}

FockFunctional cond_expect(const FockFunctional& phi, std::int64_t k) {
  if (k < -1) throw NegativeIndexError("conditional expectation index must be >= -1");
  FockFunctional::Map out;
  for (const auto& [sigma, c] : phi.terms()) {
    if (sigma.max_element() <= k) out.emplace(sigma, c);
  }
  return FockFunctional::from_map(std::move(out));
}

FockFunctional expect(const FockFunctional& phi) {
  return FockFunctional::from_map({{SubsetIndex{}, phi.coefficient(SubsetIndex{})}});
}

double verify_car(const FockFunctional& phi, std::int64_t k) {
  const auto lhs = create(annihilate(phi, k), k) + annihilate(create(phi, k), k);
  return norm_dual(lhs - phi, 0.0);
}

NormBoundCheck verify_norm_bounds(const FockFunctional& phi, std::int64_t k, double p, double rel_slack) {
  NormBoundCheck out;
  const double base = norm_dual(phi, p);
  const double grow = std::pow(1.0 + static_cast<double>(site(k)), p);
  out.annihilation_factor = grow;
  out.creation_factor = 1.0 / grow;

  const double a = norm_dual(annihilate(phi, k), p);
  const double c = norm_dual(create(phi, k), p);
  const double e = norm_dual(cond_expect(phi, k), p);

  auto excess = [](double lhs, double bound) {
    if (bound > 0.0) return (lhs - bound) / bound;
    return lhs > 0.0 ? HUGE_VAL : 0.0;
  };
  const double ea = excess(a, grow * base);
  const double ec = excess(c, base / grow);
  const double ee = excess(e, base);
  out.annihilation_ok = ea <= rel_slack;
  out.creation_ok = ec <= rel_slack;
  out.cond_expect_ok = ee <= rel_slack;
  out.max_excess = std::max({ea, ec, ee});
  if (base > 0.0) {
    out.annihilation_ratio = a / base;
    out.creation_ratio = c / base;
    out.cond_expect_ratio = e / base;
  }
  return out;
}

CommutationResiduals verify_commutation(const FockFunctional& phi, std::int64_t k) {
  CommutationResiduals out;
  out.create_residual = norm_dual(cond_expect(create(phi, k), k) - create(cond_expect(phi, k), k), 0.0);
  const auto a = annihilate(phi, k);
  out.annihilate_residual = norm_dual(cond_expect(a, k) - cond_expect(a, k - 1), 0.0);
  return out;
}

OperatorTag parse_operator_tag(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text == "expect") return {OperatorKind::expect, -1};

  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw BadTagError("unknown operator tag '" + std::string(text) + "'");
  const auto name = text.substr(0, colon);
  const auto arg = trim(text.substr(colon + 1));

  OperatorKind kind;
  if (name == "annihilate") {
    kind = OperatorKind::annihilate;
  } else if (name == "create") {
    kind = OperatorKind::create;
  } else if (name == "condexp") {
    kind = OperatorKind::cond_expect;
  } else {
    throw BadTagError("unknown operator tag '" + std::string(text) + "'");
  }

  std::int64_t k = 0;
  const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), k);
  if (arg.empty() || ec != std::errc{} || ptr != arg.data() + arg.size()) {
    throw BadTagError("bad index in operator tag '" + std::string(text) + "'");
  }
  const std::int64_t lowest = kind == OperatorKind::cond_expect ? -1 : 0;
  if (k < lowest) throw NegativeIndexError("index out of domain in operator tag '" + std::string(text) + "'");
  return {kind, k};
}

std::vector<OperatorTag> parse_pipeline(std::string_view text) {
  std::vector<OperatorTag> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_operator_tag(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string to_string(const OperatorTag& tag) {
  switch (tag.kind) {
    case OperatorKind::annihilate: return "annihilate:" + std::to_string(tag.k);
    case OperatorKind::create: return "create:" + std::to_string(tag.k);
    case OperatorKind::cond_expect: return "condexp:" + std::to_string(tag.k);
    case OperatorKind::expect: return "expect";
  }
  return {};
}

FockFunctional apply(const OperatorTag& tag, const FockFunctional& phi) {
  switch (tag.kind) {
    case OperatorKind::annihilate: return annihilate(phi, tag.k);
    case OperatorKind::create: return create(phi, tag.k);
    case OperatorKind::cond_expect: return cond_expect(phi, tag.k);
    case OperatorKind::expect: return expect(phi);
  }
  return phi;
}

FockFunctional apply(std::span<const OperatorTag> pipeline, FockFunctional phi) {
  for (const auto& tag : pipeline) phi = apply(tag, phi);
  return phi;
}

}  // namespace fockcalc
