#pragma once

#include <span>
#include <vector>

#include "ldsl/coeffs.hpp"
#include "ldsl/report.hpp"
#include "ldsl/sequence.hpp"

namespace ldsl {

/// Finite-window H₁ scalar product
///   <u,v> = Σ_{n=0}^{L-2} p(n)Δu(n)·conj(Δv(n)) + Σ_{n=0}^{L-1} q(n)u(n)·conj(v(n))
/// for u, v with offset 0 and common length L >= 2. The infinite sums are
/// truncated at the window end, which is exact when u and v vanish near it.
Complex h1_inner(const CoefficientSet& coeffs, const Sequence& u, const Sequence& v);

/// sqrt(<u,u>).
double h1_norm(const CoefficientSet& coeffs, const Sequence& u);

/// Euclidean norm of the stored entries, any offset.
double l2_norm(const Sequence& u);

/// r is the least index >= N with Σ_{n=1}^{r} q(n) > 0,
/// C_r = (Σ_{l=1}^{r} 1/p(l))^{1/2} and C_N = C_r + (Σ_{n=1}^{r} q(n))^{-1/2}.
struct BoundConstants {
  Index r;
  double c_r;
  double c_n;
};

/// Throws when q vanishes on 1..top(): no admissible r exists in the window.
BoundConstants bound_constants(const CoefficientSet& coeffs, Index N);

/// |u(m)| <= |u(n)| + (Σ_{l>=1} p(l)|Δu(l)|²)^{1/2} (Σ_{l=n}^{m-1} 1/p(l))^{1/2}, for 1 <= n <= m.
/// The gradient sum runs over the whole stored window of u (from l = 1).
BoundReport check_lemma1(const RealSequence& p, const Sequence& u, Index n, Index m);

/// |u(m)|·Σq <= (Σq)^{1/2}(Σ q(n)|u(n)|²)^{1/2} + C_r (Σ_{l>=1} p(l)|Δu(l)|²)^{1/2}·Σq,
/// with all q-sums over 1..r and 1 <= m <= r.
BoundReport check_lemma2(const CoefficientSet& coeffs, const Sequence& u, Index m, Index r);

/// |u(m)| <= C_N·‖u‖ for 1 <= m <= N.
BoundReport check_pointwise_bound(const CoefficientSet& coeffs, const Sequence& u, Index m, Index N);

/// Numerical picture of an H₁-Cauchy family u_1, u_2, ... sharing one window.
///
/// The final member stands in for the limit (no extrapolation). The gradient
/// limit is v = √p·Δu_last; the pointwise limit is rebuilt from v through
/// u(k) = u(1) + Σ_{j=1}^{k-1} v(j)/√p(j) (and u(0) = u(1) - v(0)/√p(0)); the
/// weighted limit ν is √q·u_last taken directly from the family. The check
/// ν(k) = √q(k)·u(k) therefore compares two independent routes.
struct CauchyDiagnostics {
  Sequence grad_limit;
  Sequence pointwise_limit;
  Sequence weighted_limit;
  std::vector<double> norm_distances;        ///< ‖u_n - u_last‖
  std::vector<double> l2_grad_distances;     ///< ‖√pΔu_n - v‖₂
  std::vector<double> weighted_distances;    ///< ‖√q·u_n - ν‖₂
  std::vector<double> successive_distances;  ///< ‖u_{n+1} - u_n‖
  Residual weighted_mismatch;                ///< max_k |ν(k) - √q(k)u(k)|
  bool weighted_limit_consistent;            ///< weighted_mismatch within 1e-9
};

/// Throws when the last successive distance exceeds `threshold`: the family is
/// not numerically Cauchy and its last member is not a usable limit proxy.
CauchyDiagnostics cauchy_diagnostics(const CoefficientSet& coeffs, std::span<const Sequence> family, double threshold);

}  // namespace ldsl
