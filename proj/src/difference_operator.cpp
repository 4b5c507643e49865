#include "ldsl/difference_operator.hpp"

#include <algorithm>
#include <cmath>

namespace ldsl {

Sequence apply_operator(const CoefficientSet& coeffs, const Sequence& u) {
  if (u.offset() != 0) throw Error("operand must start at n=0");
  const Index N = u.last() - 1;
  if (N < 1) throw Error("operand must cover 0..N+1 with N >= 1");
  require_covers("p", coeffs.p(), 0, N);
  require_covers("q", coeffs.q(), 1, N);

  const auto& p = coeffs.p();
  const auto& q = coeffs.q();
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(N));
  for (Index n = 1; n <= N; ++n) {
    out.push_back(-(p(n) * (u(n + 1) - u(n)) - p(n - 1) * (u(n) - u(n - 1))) + q(n) * u(n));
  }
  return Sequence(1, std::move(out));
}

Solution solve_recurrence(const CoefficientSet& coeffs, Complex lambda, InitKind kind, Complex a, Complex b,
                          Index N) {
  if (N < 0) throw Error("N must be non-negative");
  if (!detail::is_finite(lambda) || !detail::is_finite(a) || !detail::is_finite(b))
    throw Error("spectral parameter and initial data must be finite");
  coeffs.require_section(N);

  const auto& p = coeffs.p();
  const auto& q = coeffs.q();
  const auto& w = coeffs.w();

  std::vector<Complex> u(static_cast<std::size_t>(N + 2));
  if (kind == InitKind::value_pair) {
    u[0] = a;
    u[1] = b;
  } else {
    u[1] = a;
    u[0] = a - b / p(0);
  }
  for (Index n = 1; n <= N; ++n) {
    const auto i = static_cast<std::size_t>(n);
    u[i + 1] = ((p(n) + p(n - 1) + q(n) - lambda * w(n)) * u[i] - p(n - 1) * u[i - 1]) / p(n);
    if (!detail::is_finite(u[i + 1])) throw Error("recurrence overflow at n=" + std::to_string(n + 1));
  }
  if (!detail::is_finite(u[0])) throw Error("recurrence overflow at n=0");
  return Solution{lambda, kind, {a, b}, Sequence(0, std::move(u))};
}

Residual recurrence_residual(const CoefficientSet& coeffs, const Solution& solution) {
  const auto& u = solution.values;
  const auto Lu = apply_operator(coeffs, u);
  const auto& p = coeffs.p();
  const auto& q = coeffs.q();
  const auto& w = coeffs.w();
  const Complex lambda = solution.lambda;

  Residual r{0.0, 1.0};
  for (Index n = Lu.first(); n <= Lu.last(); ++n) {
    const Complex rhs = lambda * w(n) * u(n);
    r.value = std::max(r.value, std::abs(Lu(n) - rhs));
    const double row = p(n) * std::abs(u(n + 1)) + p(n - 1) * std::abs(u(n - 1)) +
                       (p(n) + p(n - 1) + q(n)) * std::abs(u(n)) + std::abs(rhs);
    r.scale = std::max(r.scale, row);
  }
  return r;
}

WronskianValue wronskian(const CoefficientSet& coeffs, const Sequence& phi, const Sequence& theta, Index n) {
  require_covers("phi", phi, n, n + 1);
  require_covers("theta", theta, n, n + 1);
  require_covers("p", coeffs.p(), n, n);
  const Complex value = coeffs.p()(n) * (phi(n) * (theta(n + 1) - theta(n)) - (phi(n + 1) - phi(n)) * theta(n));
  return {n, value};
}

BoundReport wronskian_constancy_report(const CoefficientSet& coeffs, const Solution& phi, const Solution& theta) {
  if (phi.lambda != theta.lambda) throw Error("Wronskian constancy needs both solutions at the same lambda");
  const auto& f = phi.values;
  const auto& g = theta.values;
  if (f.offset() != g.offset() || f.size() != g.size()) throw Error("solutions must share their window");

  const Index first = f.first();
  const Index last = std::min(f.last() - 1, coeffs.p().last());
  if (last < first) throw Error("window too short for a Wronskian");

  const Complex w0 = wronskian(coeffs, f, g, first).value;
  double drift = 0.0;
  double scale = std::max(1.0, std::abs(w0));
  const auto& p = coeffs.p();
  for (Index n = first; n <= last; ++n) {
    drift = std::max(drift, std::abs(wronskian(coeffs, f, g, n).value - w0));
    scale = std::max(scale, p(n) * (std::abs(f(n)) + std::abs(f(n + 1))) * (std::abs(g(n)) + std::abs(g(n + 1))));
  }
  return BoundReport::make(drift, kWronskianTolerance * scale, 0.0);
}

}  // namespace ldsl
