#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ldsl/coeffs.hpp"
#include "ldsl/sequence.hpp"

namespace ldsl {

/// Dirichlet section of the pencil (L, W) on n = 1..N, u(0) = u(N+1) = 0.
/// L is symmetric tridiagonal and positive definite; W = diag(w(1..N)).
struct FiniteSection {
  Index n = 0;
  std::vector<double> l_diag;     ///< p(n-1) + p(n) + q(n)
  std::vector<double> l_offdiag;  ///< -p(n), n = 1..N-1
  std::vector<double> w_diag;     ///< w(n)

  std::vector<double> apply_left(std::span<const double> x) const;
  std::vector<double> apply_weight(std::span<const double> x) const;
  double left_norm_inf() const;
  double weight_norm_inf() const;
};

FiniteSection finite_section(const CoefficientSet& coeffs, Index N);

/// u_λ(N+1) for the recurrence solution with u(0) = 0, u(1) = 1. A polynomial
/// of degree rank(W) in λ whose zeros are the Dirichlet eigenvalues.
double shooting_function(const CoefficientSet& coeffs, double lambda, Index N);

/// sign(λ)·(number of negative pivots of L - λW): the eigenvalue count in
/// (0, λ) for λ > 0, negated count in (λ, 0) for λ < 0. Differences give the
/// number of eigenvalues in an interval.
Index signed_inertia(const FiniteSection& section, double lambda);

/// Symmetric interval [-B, B] containing every finite eigenvalue, from
/// Gershgorin discs of W⁻¹L (padded by a relative 1e-6). Needs w(n) != 0
/// on the section.
std::pair<double, double> eigenvalue_enclosure(const FiniteSection& section);

enum class SpectralMethod { shooting, pencil };

struct Bracket {
  double lo;
  double hi;
};

struct SpectralResult {
  std::vector<double> eigenvalues;  ///< sorted ascending
  SpectralMethod method;
  std::vector<double> residuals;    ///< pencil: ‖Lu - λWu‖₂/‖u‖₂ per eigenpair
  std::vector<double> residual_scales;  ///< ‖L‖∞ + |λ|·‖W‖∞ per eigenpair
  std::vector<Bracket> brackets;    ///< shooting: final bisection brackets
  Index infinite_count = 0;         ///< pencil: modes with |μ| below the cutoff (no finite λ)
  Index expected_count = -1;        ///< shooting: inertia count over the scanned range
  std::vector<std::string> warnings;
};

struct ShootingOptions {
  double lambda_min;
  double lambda_max;
  Index grid;
  double tol;  ///< bracket width target, relative to max(1, |λ|)
};

/// Range from eigenvalue_enclosure, 512·N grid points, tol 1e-12.
ShootingOptions default_shooting_options(const CoefficientSet& coeffs, Index N);

/// Grid scan for sign changes of shooting_function, bisection of each bracket
/// to width <= tol·max(1,|λ|), and merging of roots closer than 10·tol·max(1,|λ|).
/// Grid cells whose inertia count exceeds one are split until every root is
/// bracketed on its own, so close pairs are not lost between grid points. A
/// final count that still disagrees with the inertia count over the range is
/// reported as a warning.
SpectralResult eigen_shooting(const CoefficientSet& coeffs, Index N, const ShootingOptions& options);
SpectralResult eigen_shooting(const CoefficientSet& coeffs, Index N, double lambda_min, double lambda_max, Index grid,
                              double tol);

struct PencilOptions {
  Index max_dimension = 512;
  double mu_cutoff_relative = 1e-12;  ///< times ‖W‖∞
};

/// Reduces W u = μ L u with L = C·Cᵀ to the symmetric C⁻¹WC⁻ᵀ, tridiagonalises
/// it with Householder reflections, finds every μ by Sturm-sequence bisection
/// and returns λ = 1/μ for |μ| above the cutoff. Residuals come from inverse
/// iteration on L - λW.
SpectralResult eigen_pencil(const CoefficientSet& coeffs, Index N, const PencilOptions& options = {});

}  // namespace ldsl
