#include "ldsl/calculus.hpp"

#include <algorithm>

namespace ldsl {

namespace {

void require_shared_window(const Sequence& f, const Sequence& g) {
  if (f.offset() != g.offset() || f.size() != g.size())
    throw Error("sequences must share offset and length");
  if (f.size() < 2) throw Error("sequences need at least two entries");
}

}  // namespace

Residual product_rule_residual(const Sequence& f, const Sequence& g) {
  require_shared_window(f, g);
  double worst = 0.0;
  for (Index n = f.first(); n < f.last(); ++n) {
    const Complex lhs = f(n + 1) * g(n + 1) - f(n) * g(n);
    const Complex rhs = g(n + 1) * (f(n + 1) - f(n)) + f(n) * (g(n + 1) - g(n));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return {worst, std::max(1.0, f.max_abs() * g.max_abs())};
}

Residual summation_by_parts_residual(const Sequence& f, const Sequence& g, Index j, Index N) {
  if (j > N) throw Error("summation by parts needs j <= N");
  require_covers("f", f, j, N + 1);
  require_covers("g", g, j, N + 1);

  Complex left = 0.0, right_sum = 0.0;
  double mass = 0.0;
  for (Index n = j; n <= N; ++n) {
    const Complex a = g(n + 1) * (f(n + 1) - f(n));
    const Complex b = f(n) * (g(n + 1) - g(n));
    left += a;
    right_sum += b;
    mass += std::abs(a) + std::abs(b);
  }
  const Complex hi = f(N + 1) * g(N + 1), lo = f(j) * g(j);
  mass += std::abs(hi) + std::abs(lo);
  const Complex right = hi - lo - right_sum;
  return {std::abs(left - right), std::max(1.0, mass)};
}

Residual greens_identity_residual(const RealSequence& p, const Sequence& u, const Sequence& v, Index N) {
  if (N < 1) throw Error("Green identity needs N >= 1");
  require_covers("p", p, 0, N);
  require_covers("u", u, 0, N + 1);
  require_covers("v", v, 1, N + 1);

  const auto flux = [&](Index n) { return p(n) * (u(n + 1) - u(n)); };  // (pΔu)(n)

  Complex left = 0.0, right_sum = 0.0;
  double mass = 0.0;
  for (Index n = 1; n <= N; ++n) {
    const Complex a = flux(n) * std::conj(v(n + 1) - v(n));
    const Complex b = (flux(n) - flux(n - 1)) * std::conj(v(n));
    left += a;
    right_sum += b;
    mass += std::abs(a) + std::abs(b);
  }
  const Complex hi = flux(N) * std::conj(v(N + 1)), lo = flux(0) * std::conj(v(1));
  mass += std::abs(hi) + std::abs(lo);
  const Complex right = hi - lo - right_sum;
  return {std::abs(left - right), std::max(1.0, mass)};
}

}  // namespace ldsl
