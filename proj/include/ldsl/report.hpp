#pragma once

#include <algorithm>

namespace ldsl {

/// Relative tolerance for the summation identities and the lemma inequalities.
inline constexpr double kIdentityTolerance = 1e-12;

/// Absolute residual of an identity together with the magnitude it is measured against.
struct Residual {
  double value = 0.0;
  double scale = 1.0;

  bool within(double relative_tolerance) const { return value <= relative_tolerance * scale; }
};

/// The two sides of one inequality instance lhs <= rhs.
struct BoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool holds = true;
  double tolerance_used = 0.0;

  static BoundReport make(double lhs, double rhs, double tolerance) {
    return BoundReport{lhs, rhs, rhs - lhs, lhs <= rhs + tolerance, tolerance};
  }

  /// lhs <= rhs up to roundoff slack kIdentityTolerance * max(1, lhs, rhs).
  static BoundReport inequality(double lhs, double rhs) {
    return make(lhs, rhs, kIdentityTolerance * std::max({1.0, lhs, rhs}));
  }
};

}  // namespace ldsl
