#include "ldsl/space.hpp"

#include <algorithm>
#include <cmath>

namespace ldsl {

namespace {

void require_h1_operand(const CoefficientSet& coeffs, const Sequence& u) {
  if (u.offset() != 0) throw Error("H1 operands must start at n=0");
  if (u.size() < 2) throw Error("H1 operands need at least two entries");
  require_covers("p", coeffs.p(), 0, u.last() - 1);
  require_covers("q", coeffs.q(), 0, u.last());
}

// Σ_{l=1}^{last-1} p(l)|Δu(l)|² over the stored window of u.
double gradient_energy(const RealSequence& p, const Sequence& u) {
  if (u.offset() > 1) throw Error("operand must cover n=1");
  require_covers("p", p, 1, u.last() - 1);
  double sum = 0.0;
  for (Index l = 1; l < u.last(); ++l) sum += p(l) * std::norm(u(l + 1) - u(l));
  return sum;
}

double q_mass(const CoefficientSet& coeffs, Index r) {
  require_covers("q", coeffs.q(), 1, r);
  double sum = 0.0;
  for (Index n = 1; n <= r; ++n) sum += coeffs.q()(n);
  return sum;
}

double c_r(const RealSequence& p, Index r) {
  require_covers("p", p, 1, r);
  double sum = 0.0;
  for (Index l = 1; l <= r; ++l) sum += 1.0 / p(l);
  return std::sqrt(sum);
}

}  // namespace

Complex h1_inner(const CoefficientSet& coeffs, const Sequence& u, const Sequence& v) {
  require_h1_operand(coeffs, u);
  if (v.offset() != u.offset() || v.size() != u.size()) throw Error("H1 operands must share their window");
  const auto& p = coeffs.p();
  const auto& q = coeffs.q();
  Complex sum = 0.0;
  for (Index n = 0; n < u.last(); ++n) sum += p(n) * (u(n + 1) - u(n)) * std::conj(v(n + 1) - v(n));
  for (Index n = 0; n <= u.last(); ++n) sum += q(n) * u(n) * std::conj(v(n));
  return sum;
}

double h1_norm(const CoefficientSet& coeffs, const Sequence& u) {
  return std::sqrt(std::max(0.0, h1_inner(coeffs, u, u).real()));
}

double l2_norm(const Sequence& u) {
  double sum = 0.0;
  for (const auto& z : u.values()) sum += std::norm(z);
  return std::sqrt(sum);
}

BoundConstants bound_constants(const CoefficientSet& coeffs, Index N) {
  if (N < 1) throw Error("bound constants need N >= 1");
  const Index top = std::min(coeffs.q().last(), coeffs.p().last());
  if (N > top) throw Error("N=" + std::to_string(N) + " beyond the coefficient window (top " + std::to_string(top) + ")");

  double mass = 0.0;
  for (Index n = 1; n <= N; ++n) mass += coeffs.q()(n);
  Index r = N;
  while (!(mass > 0.0)) {
    if (r == top) throw Error("q identically zero on available window 1.." + std::to_string(top));
    ++r;
    mass += coeffs.q()(r);
  }
  const double cr = c_r(coeffs.p(), r);
  return {r, cr, cr + 1.0 / std::sqrt(mass)};
}

BoundReport check_lemma1(const RealSequence& p, const Sequence& u, Index n, Index m) {
  if (m < n) throw Error("check_lemma1 needs m >= n");
  if (n < 1) throw Error("check_lemma1 needs n >= 1");
  require_covers("u", u, n, m);
  const double energy = gradient_energy(p, u);
  double inverse = 0.0;
  for (Index l = n; l < m; ++l) inverse += 1.0 / p(l);
  return BoundReport::inequality(std::abs(u(m)), std::abs(u(n)) + std::sqrt(energy) * std::sqrt(inverse));
}

BoundReport check_lemma2(const CoefficientSet& coeffs, const Sequence& u, Index m, Index r) {
  if (m < 1 || m > r) throw Error("check_lemma2 needs 1 <= m <= r");
  require_covers("u", u, 1, r);
  const double mass = q_mass(coeffs, r);
  if (!(mass > 0.0)) throw Error("check_lemma2 needs q(1)+...+q(r) > 0");

  double weighted = 0.0;
  for (Index n = 1; n <= r; ++n) weighted += coeffs.q()(n) * std::norm(u(n));
  const double energy = gradient_energy(coeffs.p(), u);
  const double lhs = std::abs(u(m)) * mass;
  const double rhs = std::sqrt(mass) * std::sqrt(weighted) + c_r(coeffs.p(), r) * std::sqrt(energy) * mass;
  return BoundReport::inequality(lhs, rhs);
}

BoundReport check_pointwise_bound(const CoefficientSet& coeffs, const Sequence& u, Index m, Index N) {
  if (m < 1 || m > N) throw Error("pointwise bound needs 1 <= m <= N");
  const auto constants = bound_constants(coeffs, N);
  return BoundReport::inequality(std::abs(u(m)), constants.c_n * h1_norm(coeffs, u));
}

CauchyDiagnostics cauchy_diagnostics(const CoefficientSet& coeffs, std::span<const Sequence> family,
                                     double threshold) {
  if (family.size() < 2) throw Error("a Cauchy family needs at least two members");
  const Sequence& last = family.back();
  for (const auto& member : family) {
    if (member.offset() != last.offset() || member.size() != last.size())
      throw Error("family members must share their window");
  }
  require_h1_operand(coeffs, last);

  std::vector<double> successive;
  for (std::size_t i = 0; i + 1 < family.size(); ++i) {
    std::vector<Complex> diff(static_cast<std::size_t>(last.size()));
    for (Index k = 0; k <= last.last(); ++k) diff[static_cast<std::size_t>(k)] = family[i + 1](k) - family[i](k);
    successive.push_back(h1_norm(coeffs, Sequence(0, std::move(diff))));
  }
  if (!(successive.back() <= threshold))
    throw Error("family is not H1-Cauchy: last successive distance " + std::to_string(successive.back()) +
                " exceeds threshold " + std::to_string(threshold));

  const auto& p = coeffs.p();
  const auto& q = coeffs.q();
  const Index K = last.last();

  std::vector<Complex> v(static_cast<std::size_t>(K));
  for (Index k = 0; k < K; ++k) v[static_cast<std::size_t>(k)] = std::sqrt(p(k)) * (last(k + 1) - last(k));

  std::vector<Complex> u(static_cast<std::size_t>(K + 1));
  u[1] = last(1);
  u[0] = u[1] - v[0] / std::sqrt(p(0));
  for (Index k = 2; k <= K; ++k) {
    const auto j = static_cast<std::size_t>(k - 1);
    u[static_cast<std::size_t>(k)] = u[j] + v[j] / std::sqrt(p(k - 1));
  }

  std::vector<Complex> nu(static_cast<std::size_t>(K + 1));
  for (Index k = 0; k <= K; ++k) nu[static_cast<std::size_t>(k)] = std::sqrt(q(k)) * last(k);

  CauchyDiagnostics out{Sequence(0, v), Sequence(0, u), Sequence(0, nu), {}, {}, {}, std::move(successive),
                        Residual{}, false};

  double mismatch = 0.0;
  for (Index k = 0; k <= K; ++k) {
    const auto i = static_cast<std::size_t>(k);
    mismatch = std::max(mismatch, std::abs(nu[i] - std::sqrt(q(k)) * u[i]));
  }
  out.weighted_mismatch = {mismatch, std::max(1.0, out.weighted_limit.max_abs())};
  out.weighted_limit_consistent = out.weighted_mismatch.within(1e-9);

  for (const auto& member : family) {
    std::vector<Complex> diff(static_cast<std::size_t>(K + 1));
    double grad = 0.0, weighted = 0.0;
    for (Index k = 0; k <= K; ++k) {
      const auto i = static_cast<std::size_t>(k);
      diff[i] = member(k) - last(k);
      weighted += std::norm(std::sqrt(q(k)) * member(k) - nu[i]);
      if (k < K) grad += std::norm(std::sqrt(p(k)) * (member(k + 1) - member(k)) - v[i]);
    }
    out.norm_distances.push_back(h1_norm(coeffs, Sequence(0, std::move(diff))));
    out.l2_grad_distances.push_back(std::sqrt(grad));
    out.weighted_distances.push_back(std::sqrt(weighted));
  }
  return out;
}

}  // namespace ldsl
