#include "ldsl/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "ldsl/rng.hpp"

namespace ldsl {

namespace {

std::string at(const char* name, Index n) { return std::string(name) + "(" + std::to_string(n) + ")"; }

void check_offset(const char* name, const RealSequence& s, Index expected) {
  if (s.offset() != expected)
    throw Error(std::string(name) + " must start at n=" + std::to_string(expected) + ", got offset " +
                std::to_string(s.offset()));
}

double param(const PresetParams& params, std::string_view key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void reject_unknown_keys(std::string_view preset, const PresetParams& params, std::set<std::string_view> allowed) {
  for (const auto& [key, value] : params) {
    if (!allowed.contains(key)) throw Error("preset '" + std::string(preset) + "' has no parameter '" + key + "'");
  }
}

template <class F>
std::vector<double> tabulate(Index from, Index to, F&& f) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(to - from + 1));
  for (Index n = from; n <= to; ++n) out.push_back(f(n));
  return out;
}

CoefficientSet build(Index length, auto&& p_of, auto&& q_of, auto&& w_of) {
  return CoefficientSet::create(RealSequence(0, tabulate(0, length - 1, p_of)),
                                RealSequence(0, tabulate(0, length - 1, q_of)),
                                RealSequence(1, tabulate(1, length - 1, w_of)));
}

std::vector<double> number_array(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) throw Error(std::string("coefficient document is missing \"") + key + "\"");
  const auto& arr = doc.at(key);
  if (!arr.is_array() || arr.empty()) throw Error(std::string("\"") + key + "\" must be a non-empty array of numbers");
  std::vector<double> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number())
      throw Error(std::string("\"") + key + "\"[" + std::to_string(i) + "] is not a number");
    out.push_back(arr[i].get<double>());
  }
  return out;
}

RealSequence checked_sequence(const char* name, Index offset, std::vector<double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw Error(at(name, offset + static_cast<Index>(i)) + " not finite");
  }
  return RealSequence(offset, std::move(values));
}

}  // namespace

CoefficientSet CoefficientSet::create(RealSequence p, RealSequence q, RealSequence w) {
  check_offset("p", p, 0);
  check_offset("q", q, 0);
  check_offset("w", w, 1);
  for (Index n = p.first(); n <= p.last(); ++n) {
    if (!(p(n) > 0.0)) throw Error(at("p", n) + " not strictly positive");
  }
  bool nontrivial = false;
  for (Index n = q.first(); n <= q.last(); ++n) {
    if (!(q(n) >= 0.0)) throw Error(at("q", n) + " negative");
    nontrivial = nontrivial || q(n) > 0.0;
  }
  return CoefficientSet(std::move(p), std::move(q), std::move(w), nontrivial);
}

Index CoefficientSet::top() const { return std::min({p_.last(), q_.last(), w_.last()}); }

void CoefficientSet::require_section(Index n_max) const {
  require_covers("p", p_, 0, n_max);
  require_covers("q", q_, 1, n_max);
  require_covers("w", w_, 1, n_max);
}

CoefficientSet make_preset(std::string_view name, const PresetParams& params, Index length, std::uint64_t seed) {
  if (length < 2) throw Error("preset length must be at least 2, got " + std::to_string(length));

  if (name == "constant") {
    reject_unknown_keys(name, params, {"p", "q", "w"});
    const double p = param(params, "p", 1.0), q = param(params, "q", 0.0), w = param(params, "w", 1.0);
    return build(length, [&](Index) { return p; }, [&](Index) { return q; }, [&](Index) { return w; });
  }

  if (name == "power") {
    reject_unknown_keys(name, params, {"p", "p_exp", "q", "q_exp", "w", "w_exp"});
    const double p = param(params, "p", 1.0), pe = param(params, "p_exp", 0.0);
    const double q = param(params, "q", 0.0), qe = param(params, "q_exp", 0.0);
    const double w = param(params, "w", 1.0), we = param(params, "w_exp", 0.0);
    return build(
        length, [&](Index n) { return p * std::pow(static_cast<double>(n + 1), pe); },
        [&](Index n) { return q * std::pow(static_cast<double>(n + 1), qe); },
        [&](Index n) { return w * std::pow(static_cast<double>(n), we); });
  }

  if (name == "periodic") {
    reject_unknown_keys(name, params, {"period", "p", "p_amp", "q", "q_amp", "w", "w_amp"});
    const double period = param(params, "period", 2.0);
    if (!(period >= 1.0) || period != std::floor(period))
      throw Error("periodic preset needs an integer period >= 1");
    const double p = param(params, "p", 1.0), pa = param(params, "p_amp", 0.0);
    const double q = param(params, "q", 0.0), qa = param(params, "q_amp", 0.0);
    const double w = param(params, "w", 0.0), wa = param(params, "w_amp", 1.0);
    if (!(p - std::abs(pa) > 0.0)) throw Error("periodic preset needs p > |p_amp| to keep p strictly positive");
    if (!(q - std::abs(qa) >= 0.0)) throw Error("periodic preset needs q >= |q_amp| to keep q non-negative");
    const auto phase = [period](Index n) {
      return std::cos(2.0 * std::numbers::pi * static_cast<double>(n % static_cast<Index>(period)) / period);
    };
    return build(
        length, [&](Index n) { return p + pa * phase(n); },
        [&](Index n) { return std::max(0.0, q + qa * phase(n)); }, [&](Index n) { return w + wa * phase(n); });
  }

  if (name == "random") {
    reject_unknown_keys(name, params, {"p_min", "p_max", "q_min", "q_max", "w_min", "w_max"});
    const double p_lo = param(params, "p_min", 0.1), p_hi = param(params, "p_max", 10.0);
    const double q_lo = param(params, "q_min", 0.0), q_hi = param(params, "q_max", 5.0);
    const double w_lo = param(params, "w_min", -5.0), w_hi = param(params, "w_max", 5.0);
    if (!(p_lo > 0.0) || !(p_lo <= p_hi)) throw Error("random preset needs 0 < p_min <= p_max");
    if (!(q_lo >= 0.0) || !(q_lo <= q_hi)) throw Error("random preset needs 0 <= q_min <= q_max");
    if (!(w_lo <= w_hi)) throw Error("random preset needs w_min <= w_max");
    Rng rng(seed);
    // p, q, w drawn in that order so a fixed seed pins every entry.
    auto p = tabulate(0, length - 1, [&](Index) { return rng.uniform(p_lo, p_hi); });
    auto q = tabulate(0, length - 1, [&](Index) { return rng.uniform(q_lo, q_hi); });
    auto w = tabulate(1, length - 1, [&](Index) { return rng.uniform(w_lo, w_hi); });
    return CoefficientSet::create(RealSequence(0, std::move(p)), RealSequence(0, std::move(q)),
                                  RealSequence(1, std::move(w)));
  }

  throw Error("unknown preset '" + std::string(name) + "'");
}

CoefficientSet coefficients_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error("coefficient document must be a JSON object");

  if (doc.contains("preset")) {
    const auto& pre = doc.at("preset");
    if (!pre.is_object() || !pre.contains("name") || !pre.at("name").is_string())
      throw Error("\"preset\" must be an object with a string \"name\"");
    PresetParams params;
    if (pre.contains("params")) {
      if (!pre.at("params").is_object()) throw Error("\"preset.params\" must be an object");
      for (const auto& [key, value] : pre.at("params").items()) {
        if (!value.is_number()) throw Error("preset parameter '" + key + "' is not a number");
        params[key] = value.get<double>();
      }
    }
    if (!pre.contains("length") || !pre.at("length").is_number_integer())
      throw Error("\"preset.length\" must be an integer");
    std::uint64_t seed = 0;
    if (pre.contains("seed")) {
      if (!pre.at("seed").is_number_unsigned()) throw Error("\"preset.seed\" must be a non-negative integer");
      seed = pre.at("seed").get<std::uint64_t>();
    }
    return make_preset(pre.at("name").get<std::string>(), params, pre.at("length").get<Index>(), seed);
  }

  return CoefficientSet::create(checked_sequence("p", 0, number_array(doc, "p")),
                                checked_sequence("q", 0, number_array(doc, "q")),
                                checked_sequence("w", 1, number_array(doc, "w")));
}

CoefficientSet load_coefficients(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed coefficient document: ") + e.what());
  }
  return coefficients_from_json(doc);
}

nlohmann::json to_json(const CoefficientSet& coeffs) {
  const auto array = [](const RealSequence& s) { return nlohmann::json(std::vector<double>(s.values().begin(), s.values().end())); };
  return nlohmann::json{{"p", array(coeffs.p())}, {"q", array(coeffs.q())}, {"w", array(coeffs.w())}};
}

}  // namespace ldsl
