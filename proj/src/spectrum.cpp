#include "ldsl/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ldsl/difference_operator.hpp"

namespace ldsl {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

using Matrix = std::vector<std::vector<double>>;

// Number of eigenvalues of the symmetric tridiagonal (d, e) strictly below x.
Index sturm_count(std::span<const double> d, std::span<const double> e, double x, double pivmin) {
  Index count = 0;
  double pivot = d[0] - x;
  for (std::size_t i = 0;; ++i) {
    if (std::abs(pivot) < pivmin) pivot = -pivmin;
    if (pivot < 0.0) ++count;
    if (i + 1 == d.size()) break;
    pivot = d[i + 1] - x - e[i] * e[i] / pivot;
  }
  return count;
}

// Householder reduction of a dense symmetric matrix (destroyed) to tridiagonal form.
void tridiagonalize(Matrix& a, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = a.size();
  d.assign(n, 0.0);
  e.assign(n > 0 ? n - 1 : 0, 0.0);
  std::vector<double> v(n), p(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double norm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) norm = std::hypot(norm, a[i][k]);
    if (norm == 0.0) continue;
    const double alpha = a[k + 1][k] > 0.0 ? -norm : norm;

    double vnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = a[i][k] - (i == k + 1 ? alpha : 0.0);
      vnorm = std::hypot(vnorm, v[i]);
    }
    if (vnorm == 0.0) continue;
    for (std::size_t i = k + 1; i < n; ++i) v[i] /= vnorm;

    // B <- B - 2(v qᵀ + q vᵀ), q = Bv - (vᵀBv)v, on the trailing block.
    double kappa = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += a[i][j] * v[j];
      p[i] = s;
      kappa += v[i] * s;
    }
    for (std::size_t i = k + 1; i < n; ++i) p[i] -= kappa * v[i];
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] -= 2.0 * (v[i] * p[j] + p[i] * v[j]);
    }
    a[k + 1][k] = a[k][k + 1] = alpha;
    for (std::size_t i = k + 2; i < n; ++i) a[i][k] = a[k][i] = 0.0;
  }
  for (std::size_t i = 0; i < n; ++i) d[i] = a[i][i];
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = a[i + 1][i];
}

// All eigenvalues of the symmetric tridiagonal (d, e), ascending, by bisection.
std::vector<double> tridiagonal_eigenvalues(std::span<const double> d, std::span<const double> e) {
  const std::size_t n = d.size();
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  double emax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double radius = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i + 1 < n ? std::abs(e[i]) : 0.0);
    lo = std::min(lo, d[i] - radius);
    hi = std::max(hi, d[i] + radius);
    if (i + 1 < n) emax = std::max(emax, e[i] * e[i]);
  }
  const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, emax);
  const double width = std::max(std::abs(lo), std::abs(hi));
  lo -= 2.0 * kEps * width + pivmin;
  hi += 2.0 * kEps * width + pivmin;

  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    // The k-th eigenvalue is the least x with more than k eigenvalues below or at x.
    double a = lo, b = hi;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (b - a <= 2.0 * kEps * std::max(std::abs(a), std::abs(b)) + pivmin) break;
      if (sturm_count(d, e, mid, pivmin) > static_cast<Index>(k))
        b = mid;
      else
        a = mid;
    }
    out[k] = 0.5 * (a + b);
  }
  return out;
}

// Solves the tridiagonal system (sub = super = off) x = b with partial pivoting.
std::vector<double> solve_tridiagonal(std::vector<double> diag, std::span<const double> off, std::vector<double> b,
                                      double tiny) {
  const std::size_t n = diag.size();
  if (n == 1) return {b[0] / (diag[0] == 0.0 ? tiny : diag[0])};
  std::vector<double> dl(off.begin(), off.end()), du(off.begin(), off.end());
  std::vector<double> du2(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(diag[i]) >= std::abs(dl[i])) {
      if (diag[i] == 0.0) diag[i] = tiny;
      const double fact = dl[i] / diag[i];
      diag[i + 1] -= fact * du[i];
      b[i + 1] -= fact * b[i];
      du2[i] = 0.0;
    } else {
      const double fact = diag[i] / dl[i];
      diag[i] = dl[i];
      const double temp = diag[i + 1];
      diag[i + 1] = du[i] - fact * temp;
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du2[i];
      }
      du[i] = temp;
      const double bt = b[i];
      b[i] = b[i + 1];
      b[i + 1] = bt - fact * b[i + 1];
    }
  }
  if (diag[n - 1] == 0.0) diag[n - 1] = tiny;
  b[n - 1] /= diag[n - 1];
  b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / diag[n - 2];
  for (std::size_t i = n - 2; i-- > 0;) b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / diag[i];
  return b;
}

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

// Relative residual ‖Lx - λWx‖/‖x‖ of the inverse-iteration eigenvector for λ.
double pencil_residual(const FiniteSection& s, double lambda) {
  const std::size_t n = s.l_diag.size();
  std::vector<double> shifted(n);
  for (std::size_t i = 0; i < n; ++i) shifted[i] = s.l_diag[i] - lambda * s.w_diag[i];
  const double tiny = kEps * (s.left_norm_inf() + std::abs(lambda) * s.weight_norm_inf());

  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.5 * std::sin(static_cast<double>(i) + 1.0);
  for (int it = 0; it < 3; ++it) {
    auto y = solve_tridiagonal(shifted, s.l_offdiag, s.apply_weight(x), tiny);
    const double ny = norm2(y);
    if (!(ny > 0.0) || !std::isfinite(ny)) break;
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ny;
  }
  const auto lx = s.apply_left(x);
  const auto wx = s.apply_weight(x);
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i) r += (lx[i] - lambda * wx[i]) * (lx[i] - lambda * wx[i]);
  return std::sqrt(r) / norm2(x);
}

}  // namespace

std::vector<double> FiniteSection::apply_left(std::span<const double> x) const {
  const auto m = l_diag.size();
  if (x.size() != m) throw Error("vector length does not match the section");
  std::vector<double> y(m);
  for (std::size_t i = 0; i < m; ++i) {
    y[i] = l_diag[i] * x[i];
    if (i > 0) y[i] += l_offdiag[i - 1] * x[i - 1];
    if (i + 1 < m) y[i] += l_offdiag[i] * x[i + 1];
  }
  return y;
}

std::vector<double> FiniteSection::apply_weight(std::span<const double> x) const {
  if (x.size() != w_diag.size()) throw Error("vector length does not match the section");
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = w_diag[i] * x[i];
  return y;
}

double FiniteSection::left_norm_inf() const {
  double m = 0.0;
  for (std::size_t i = 0; i < l_diag.size(); ++i) {
    double row = std::abs(l_diag[i]);
    if (i > 0) row += std::abs(l_offdiag[i - 1]);
    if (i < l_offdiag.size()) row += std::abs(l_offdiag[i]);
    m = std::max(m, row);
  }
  return m;
}

double FiniteSection::weight_norm_inf() const {
  double m = 0.0;
  for (double w : w_diag) m = std::max(m, std::abs(w));
  return m;
}

FiniteSection finite_section(const CoefficientSet& coeffs, Index N) {
  if (N < 1) throw Error("finite section needs N >= 1");
  coeffs.require_section(N);
  const auto& p = coeffs.p();
  const auto& q = coeffs.q();
  const auto& w = coeffs.w();
  FiniteSection s;
  s.n = N;
  for (Index n = 1; n <= N; ++n) {
    s.l_diag.push_back(p(n - 1) + p(n) + q(n));
    s.w_diag.push_back(w(n));
    if (n < N) s.l_offdiag.push_back(-p(n));
  }
  return s;
}

double shooting_function(const CoefficientSet& coeffs, double lambda, Index N) {
  const auto sol = solve_recurrence(coeffs, lambda, InitKind::value_pair, 0.0, 1.0, N);
  return sol.values(N + 1).real();
}

Index signed_inertia(const FiniteSection& s, double lambda) {
  if (lambda == 0.0) return 0;
  const std::size_t n = s.l_diag.size();
  const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, s.left_norm_inf() * s.left_norm_inf());
  Index negatives = 0;
  double pivot = s.l_diag[0] - lambda * s.w_diag[0];
  for (std::size_t i = 0;; ++i) {
    if (std::abs(pivot) < pivmin) pivot = -pivmin;
    if (pivot < 0.0) ++negatives;
    if (i + 1 == n) break;
    pivot = s.l_diag[i + 1] - lambda * s.w_diag[i + 1] - s.l_offdiag[i] * s.l_offdiag[i] / pivot;
  }
  return lambda > 0.0 ? negatives : -negatives;
}

std::pair<double, double> eigenvalue_enclosure(const FiniteSection& s) {
  double bound = 0.0;
  for (std::size_t i = 0; i < s.l_diag.size(); ++i) {
    if (s.w_diag[i] == 0.0)
      throw Error("w(" + std::to_string(i + 1) + ") = 0: no Gershgorin enclosure, supply an explicit range");
    double row = std::abs(s.l_diag[i]);
    if (i > 0) row += std::abs(s.l_offdiag[i - 1]);
    if (i < s.l_offdiag.size()) row += std::abs(s.l_offdiag[i]);
    bound = std::max(bound, row / std::abs(s.w_diag[i]));
  }
  bound = bound * (1.0 + 1e-6) + 1e-300;
  return {-bound, bound};
}

ShootingOptions default_shooting_options(const CoefficientSet& coeffs, Index N) {
  const auto [lo, hi] = eigenvalue_enclosure(finite_section(coeffs, N));
  return {lo, hi, 512 * N, 1e-12};
}

SpectralResult eigen_shooting(const CoefficientSet& coeffs, Index N, const ShootingOptions& opt) {
  if (!(opt.lambda_min < opt.lambda_max)) throw Error("shooting range needs lambda_min < lambda_max");
  if (opt.grid < 2) throw Error("shooting grid needs at least 2 points");
  if (!(opt.tol > 0.0)) throw Error("bisection tolerance must be positive");
  const auto section = finite_section(coeffs, N);

  const auto f = [&](double lambda) { return shooting_function(coeffs, lambda, N); };
  const auto width_ok = [&](double lo, double hi) {
    return hi - lo <= opt.tol * std::max(1.0, std::abs(0.5 * (lo + hi)));
  };

  std::vector<double> xs(static_cast<std::size_t>(opt.grid)), fs(xs.size());
  const double step = (opt.lambda_max - opt.lambda_min) / static_cast<double>(opt.grid - 1);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = i + 1 == xs.size() ? opt.lambda_max : opt.lambda_min + step * static_cast<double>(i);
    fs[i] = f(xs[i]);
  }

  SpectralResult result;
  result.method = SpectralMethod::shooting;
  std::vector<Bracket> found;

  const auto bisect = [&](double lo, double hi, bool lo_negative) {
    while (!width_ok(lo, hi)) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double fm = f(mid);
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      (std::signbit(fm) == lo_negative ? lo : hi) = mid;
    }
    found.push_back({lo, hi});
  };

  // The inertia difference counts the eigenvalues in a cell. Cells with more
  // than one are split until each root sits alone between two sign changes.
  const auto isolate = [&](auto&& self, double a, double fa, Index sa, double b, double fb, Index sb) -> void {
    const Index count = sb - sa;
    if (count <= 0 || fa == 0.0) return;
    if (fb == 0.0) return;
    const bool change = std::signbit(fa) != std::signbit(fb);
    if (count == 1 && change) return bisect(a, b, std::signbit(fa));
    if (width_ok(a, b)) {
      for (Index k = 0; k < count; ++k) found.push_back({a, b});
      return;
    }
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    const Index sm = signed_inertia(section, mid);
    if (fm == 0.0) found.push_back({mid, mid});
    self(self, a, fa, sa, mid, fm, sm);
    self(self, mid, fm, sm, b, fb, sb);
  };

  Index s_prev = signed_inertia(section, xs[0]);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (fs[i] == 0.0) found.push_back({xs[i], xs[i]});
    if (i + 1 == xs.size()) break;
    const Index s_next = signed_inertia(section, xs[i + 1]);
    isolate(isolate, xs[i], fs[i], s_prev, xs[i + 1], fs[i + 1], s_next);
    s_prev = s_next;
  }

  for (const auto& b : found) {
    const double root = 0.5 * (b.lo + b.hi);
    if (!result.eigenvalues.empty()) {
      const double prev = result.eigenvalues.back();
      if (root - prev <= 10.0 * opt.tol * std::max(1.0, std::abs(root))) continue;
    }
    result.eigenvalues.push_back(root);
    result.brackets.push_back(b);
  }

  result.expected_count = signed_inertia(section, opt.lambda_max) - signed_inertia(section, opt.lambda_min);
  if (result.expected_count != static_cast<Index>(result.eigenvalues.size())) {
    result.warnings.push_back("inertia count gives " + std::to_string(result.expected_count) +
                              " eigenvalues in range but shooting isolated " +
                              std::to_string(result.eigenvalues.size()));
  }
  return result;
}

SpectralResult eigen_shooting(const CoefficientSet& coeffs, Index N, double lambda_min, double lambda_max, Index grid,
                              double tol) {
  return eigen_shooting(coeffs, N, ShootingOptions{lambda_min, lambda_max, grid, tol});
}

SpectralResult eigen_pencil(const CoefficientSet& coeffs, Index N, const PencilOptions& options) {
  if (N > options.max_dimension)
    throw Error("N=" + std::to_string(N) + " exceeds the dense cap " + std::to_string(options.max_dimension));
  const auto s = finite_section(coeffs, N);
  const auto n = static_cast<std::size_t>(N);

  // L = C·Cᵀ with C lower bidiagonal (diagonal c, subdiagonal b).
  std::vector<double> c(n), b(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) {
    const double pivot = s.l_diag[i] - (i > 0 ? b[i - 1] * b[i - 1] : 0.0);
    if (!(pivot > 0.0)) throw Error("Cholesky breakdown at row " + std::to_string(i + 1) + ": L not positive definite");
    c[i] = std::sqrt(pivot);
    if (i + 1 < n) b[i] = s.l_offdiag[i] / c[i];
  }

  // X = C⁻¹ (lower triangular), then M = X·W·Xᵀ.
  Matrix x(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    x[j][j] = 1.0 / c[j];
    for (std::size_t i = j + 1; i < n; ++i) x[i][j] = -b[i - 1] * x[i - 1][j] / c[i];
  }
  Matrix m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k <= j; ++k) sum += x[i][k] * s.w_diag[k] * x[j][k];
      m[i][j] = m[j][i] = sum;
    }
  }

  std::vector<double> d, e;
  tridiagonalize(m, d, e);
  const auto mus = tridiagonal_eigenvalues(d, e);

  SpectralResult result;
  result.method = SpectralMethod::pencil;
  const double cutoff = options.mu_cutoff_relative * s.weight_norm_inf();
  for (double mu : mus) {
    if (std::abs(mu) <= cutoff) {
      ++result.infinite_count;
      continue;
    }
    result.eigenvalues.push_back(1.0 / mu);
  }
  std::sort(result.eigenvalues.begin(), result.eigenvalues.end());
  for (double lambda : result.eigenvalues) {
    result.residuals.push_back(pencil_residual(s, lambda));
    result.residual_scales.push_back(s.left_norm_inf() + std::abs(lambda) * s.weight_norm_inf());
  }
  return result;
}

}  // namespace ldsl
