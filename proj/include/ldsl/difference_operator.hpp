#pragma once

#include <array>

#include "ldsl/coeffs.hpp"
#include "ldsl/report.hpp"
#include "ldsl/sequence.hpp"

namespace ldsl {

/// Relative tolerance for the recurrence residual (Lu)(n) - λw(n)u(n).
inline constexpr double kRecurrenceTolerance = 1e-10;
/// Relative tolerance for Wronskian constancy.
inline constexpr double kWronskianTolerance = 1e-9;

/// How the two initial values of a recurrence solution are given.
enum class InitKind {
  value_pair,                 ///< (u(0), u(1))
  value_and_quasiderivative,  ///< (u(1), (pΔu)(0))
};

/// A solution of (Lu)(n) = λ w(n) u(n), n = 1..N, tabulated on 0..N+1.
struct Solution {
  Complex lambda;
  InitKind init_kind;
  std::array<Complex, 2> init;
  Sequence values;
};

struct WronskianValue {
  Index at_index;
  Complex value;
};

/// (Lu)(n) = -[p(n)(u(n+1)-u(n)) - p(n-1)(u(n)-u(n-1))] + q(n)u(n) for n = 1..N,
/// where u covers 0..N+1. The result has offset 1.
Sequence apply_operator(const CoefficientSet& coeffs, const Sequence& u);

/// Forward recurrence
///   u(n+1) = [(p(n) + p(n-1) + q(n) - λw(n))u(n) - p(n-1)u(n-1)] / p(n),  n = 1..N.
/// No rescaling is applied; an entry that overflows raises Error.
Solution solve_recurrence(const CoefficientSet& coeffs, Complex lambda, InitKind kind, Complex a, Complex b, Index N);

/// max_n |(Lu)(n) - λw(n)u(n)| over the interior, against the largest row
/// magnitude p(n)|u(n+1)| + p(n-1)|u(n-1)| + (p(n)+p(n-1)+q(n))|u(n)| + |λw(n)u(n)|.
Residual recurrence_residual(const CoefficientSet& coeffs, const Solution& solution);

/// W(n) = p(n)(φ(n)Δθ(n) - Δφ(n)θ(n)). No conjugation.
WronskianValue wronskian(const CoefficientSet& coeffs, const Sequence& phi, const Sequence& theta, Index n);

/// lhs = max_n |W(n) - W(0)| over the shared window; rhs = 1e-9·scale where
/// scale = max(1, |W(0)|, max_n p(n)(|φ(n)|+|φ(n+1)|)(|θ(n)|+|θ(n+1)|)).
/// Both solutions must carry the same λ.
BoundReport wronskian_constancy_report(const CoefficientSet& coeffs, const Solution& phi, const Solution& theta);

}  // namespace ldsl
