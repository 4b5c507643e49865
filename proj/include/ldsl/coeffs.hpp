#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ldsl/sequence.hpp"

namespace ldsl {

/// The coefficient triple of -Δ(pΔu)(n-1) + q(n)u(n) = λ w(n) u(n).
///
/// p and q live on N₀ (offset 0), w on N (offset 1). p is strictly positive and
/// q non-negative at every stored index; w may take either sign. Whether q is
/// identically zero on the window is recorded rather than rejected, since only
/// the H₁ norm and the pointwise bound constants need it.
class CoefficientSet {
 public:
  /// Validates and builds a set. Violations name the offending index, e.g.
  /// "p(1) not strictly positive".
  static CoefficientSet create(RealSequence p, RealSequence q, RealSequence w);

  const RealSequence& p() const { return p_; }
  const RealSequence& q() const { return q_; }
  const RealSequence& w() const { return w_; }
  bool q_nontrivial() const { return q_nontrivial_; }

  /// Largest n such that p and q cover 0..n and w covers 1..n.
  Index top() const;

  /// Throws unless p covers 0..n_max, and q and w cover 1..n_max.
  void require_section(Index n_max) const;

  friend bool operator==(const CoefficientSet&, const CoefficientSet&) = default;

 private:
  CoefficientSet(RealSequence p, RealSequence q, RealSequence w, bool q_nontrivial)
      : p_(std::move(p)), q_(std::move(q)), w_(std::move(w)), q_nontrivial_(q_nontrivial) {}

  RealSequence p_;
  RealSequence q_;
  RealSequence w_;
  bool q_nontrivial_;
};

using PresetParams = std::map<std::string, double, std::less<>>;

/// Expands a named coefficient family over a window of `length` indices: p and
/// q on 0..length-1, w on 1..length-1.
///
///   constant  p, q, w                         (defaults 1, 0, 1)
///   power     p·(n+1)^p_exp, q·(n+1)^q_exp, w·n^w_exp
///   periodic  base + amp·cos(2πn/period) for each of p, q, w
///   random    uniform draws in [p_min,p_max], [q_min,q_max], [w_min,w_max]
///             (defaults [0.1,10], [0,5], [-5,5])
///
/// Unknown names or keys, and parameters that would break p > 0 or q >= 0, are
/// rejected.
CoefficientSet make_preset(std::string_view name, const PresetParams& params, Index length, std::uint64_t seed);

/// Parses {"p": [...], "q": [...], "w": [...]} or {"preset": {"name", "params", "length", "seed"}}.
CoefficientSet coefficients_from_json(const nlohmann::json& doc);
CoefficientSet load_coefficients(std::string_view text);

/// Explicit-array form; round-trips through load_coefficients bit-exactly.
nlohmann::json to_json(const CoefficientSet& coeffs);

}  // namespace ldsl
