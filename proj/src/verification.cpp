#include "ldsl/verification.hpp"

#include <algorithm>
#include <functional>

#include "ldsl/calculus.hpp"
#include "ldsl/coeffs.hpp"
#include "ldsl/difference_operator.hpp"
#include "ldsl/rng.hpp"
#include "ldsl/space.hpp"

namespace ldsl {

namespace {

Sequence random_sequence(Rng& rng, Index offset, Index length, double bound = 7.0) {
  std::vector<Complex> v(static_cast<std::size_t>(length));
  for (auto& z : v) z = Complex(rng.uniform(-bound, bound), rng.uniform(-bound, bound));
  return Sequence(offset, std::move(v));
}

// Zero from `support_end` on, so the truncated infinite sums are exact.
Sequence finitely_supported(Rng& rng, Index length, Index support_end) {
  std::vector<Complex> v(static_cast<std::size_t>(length));
  for (Index k = 0; k < support_end; ++k)
    v[static_cast<std::size_t>(k)] = Complex(rng.uniform(-7.0, 7.0), rng.uniform(-7.0, 7.0));
  return Sequence(0, std::move(v));
}

CoefficientSet random_coefficients(Rng& rng, Index length, double p_lo, double p_hi, double q_hi, double w_bound) {
  return make_preset("random",
                     {{"p_min", p_lo}, {"p_max", p_hi}, {"q_min", 0.0}, {"q_max", q_hi}, {"w_min", -w_bound},
                      {"w_max", w_bound}},
                     length, static_cast<std::uint64_t>(rng.integer(0, 1LL << 62)));
}

// q vanishes except on a few indices in 1..length-1, so r > N occurs.
CoefficientSet sparse_q_coefficients(Rng& rng, Index length) {
  std::vector<double> p(static_cast<std::size_t>(length)), q(p.size(), 0.0), w(p.size() - 1);
  for (auto& x : p) x = rng.uniform(0.1, 10.0);
  for (auto& x : w) x = rng.uniform(-5.0, 5.0);
  const Index spikes = rng.integer(1, 3);
  for (Index s = 0; s < spikes; ++s) q[static_cast<std::size_t>(rng.integer(1, length - 1))] = rng.uniform(0.01, 5.0);
  return CoefficientSet::create(RealSequence(0, std::move(p)), RealSequence(0, std::move(q)),
                                RealSequence(1, std::move(w)));
}

CoefficientSet lemma_coefficients(Rng& rng, Index length) {
  if (rng.coin()) return sparse_q_coefficients(rng, length);
  return random_coefficients(rng, length, 0.1, 10.0, 5.0, 5.0);
}

// Largest n >= 1 with q(n) > 0; every N up to it admits a bound-constant r.
Index last_positive_q(const CoefficientSet& coeffs) {
  for (Index n = coeffs.q().last(); n >= 1; --n) {
    if (coeffs.q()(n) > 0.0) return n;
  }
  throw Error("q vanishes on 1..top");
}

struct Tally {
  SuiteSummary summary;
  void add(double ratio) {
    ++summary.cases;
    summary.worst_ratio = std::max(summary.worst_ratio, ratio);
    if (!(ratio <= 1.0)) ++summary.failures;
  }
  void add(const Residual& r, double tol) { add(r.value / (tol * r.scale)); }
  void add(const BoundReport& b) {
    const double room = b.rhs + b.tolerance_used;
    add(room > 0.0 ? b.lhs / room : (b.lhs > 0.0 ? 2.0 : 0.0));
  }
};

SuiteSummary product_rule(Rng& rng, Index cases) {
  Tally t{{"product_rule"}};
  for (Index c = 0; c < cases; ++c) {
    const Index len = rng.integer(2, 200), off = rng.integer(0, 5);
    t.add(product_rule_residual(random_sequence(rng, off, len), random_sequence(rng, off, len)), kIdentityTolerance);
  }
  return t.summary;
}

SuiteSummary summation_by_parts(Rng& rng, Index cases) {
  Tally t{{"summation_by_parts"}};
  for (Index c = 0; c < cases; ++c) {
    const Index len = rng.integer(2, 200);
    const auto f = random_sequence(rng, 0, len), g = random_sequence(rng, 0, len);
    const Index N = rng.integer(0, len - 2), j = rng.integer(0, N);
    t.add(summation_by_parts_residual(f, g, j, N), kIdentityTolerance);
  }
  return t.summary;
}

SuiteSummary greens(Rng& rng, Index cases) {
  Tally t{{"greens"}};
  for (Index c = 0; c < cases; ++c) {
    const Index len = rng.integer(3, 200);
    std::vector<double> p(static_cast<std::size_t>(len - 1));
    for (auto& x : p) x = rng.uniform(0.1, 10.0);
    const auto u = random_sequence(rng, 0, len), v = random_sequence(rng, 0, len);
    t.add(greens_identity_residual(RealSequence(0, std::move(p)), u, v, len - 2), kIdentityTolerance);
  }
  return t.summary;
}

// Shared by the wronskian and recurrence suites: moderate coefficients keep
// N = 200 solutions below overflow for every λ in [-10, 10].
struct SolvedPair {
  CoefficientSet coeffs;
  Solution phi;
  Solution theta;
};

SolvedPair solved_pair(Rng& rng) {
  constexpr Index N = 200;
  auto coeffs = random_coefficients(rng, N + 1, 0.5, 2.0, 1.0, 0.2);
  const double lambda = rng.uniform(-10.0, 10.0);
  auto phi = solve_recurrence(coeffs, lambda, InitKind::value_pair, rng.uniform(-1, 1), rng.uniform(-1, 1), N);
  const auto kind = rng.coin() ? InitKind::value_pair : InitKind::value_and_quasiderivative;
  auto theta = solve_recurrence(coeffs, lambda, kind, rng.uniform(-1, 1), rng.uniform(-1, 1), N);
  return {std::move(coeffs), std::move(phi), std::move(theta)};
}

SuiteSummary wronskian_suite(Rng& rng, Index cases) {
  Tally t{{"wronskian"}};
  for (Index c = 0; c < cases; ++c) {
    const auto s = solved_pair(rng);
    const auto report = wronskian_constancy_report(s.coeffs, s.phi, s.theta);
    t.add(report.lhs / report.rhs);
  }
  return t.summary;
}

SuiteSummary recurrence_suite(Rng& rng, Index cases) {
  Tally t{{"recurrence"}};
  for (Index c = 0; c < cases; ++c) {
    const auto s = solved_pair(rng);
    t.add(recurrence_residual(s.coeffs, s.phi), kRecurrenceTolerance);
    t.add(recurrence_residual(s.coeffs, s.theta), kRecurrenceTolerance);
  }
  return t.summary;
}

SuiteSummary lemma1_suite(Rng& rng, Index cases) {
  Tally t{{"lemma1"}};
  for (Index c = 0; c < cases; ++c) {
    const Index len = rng.integer(3, 80);
    const auto coeffs = lemma_coefficients(rng, len);
    const auto u = finitely_supported(rng, len, rng.integer(1, len - 1));
    const Index n = rng.integer(1, len - 1), m = rng.integer(n, len - 1);
    t.add(check_lemma1(coeffs.p(), u, n, m));
  }
  return t.summary;
}

SuiteSummary lemma2_suite(Rng& rng, Index cases) {
  Tally t{{"lemma2"}};
  for (Index c = 0; c < cases; ++c) {
    const Index len = rng.integer(3, 80);
    const auto coeffs = lemma_coefficients(rng, len);
    const auto u = finitely_supported(rng, len, rng.integer(1, len - 1));
    const Index r = bound_constants(coeffs, rng.integer(1, last_positive_q(coeffs))).r;
    t.add(check_lemma2(coeffs, u, rng.integer(1, r), r));
  }
  return t.summary;
}

SuiteSummary pointwise_suite(Rng& rng, Index cases) {
  Tally t{{"pointwise_bound"}};
  for (Index c = 0; c < cases; ++c) {
    const Index len = rng.integer(3, 80);
    const auto coeffs = lemma_coefficients(rng, len);
    const auto u = finitely_supported(rng, len, rng.integer(1, len - 1));
    const Index N = rng.integer(1, last_positive_q(coeffs));
    t.add(check_pointwise_bound(coeffs, u, rng.integer(1, N), N));
  }
  return t.summary;
}

}  // namespace

const std::vector<std::string>& verification_suites() {
  static const std::vector<std::string> names{"product_rule", "summation_by_parts", "greens", "wronskian",
                                              "recurrence",   "lemma1",             "lemma2", "pointwise_bound"};
  return names;
}

std::vector<SuiteSummary> run_verification(std::string_view suite, std::uint64_t seed, Index cases) {
  if (cases < 1) throw Error("cases must be positive");
  using Runner = SuiteSummary (*)(Rng&, Index);
  const std::vector<std::pair<std::string_view, Runner>> table{
      {"product_rule", product_rule}, {"summation_by_parts", summation_by_parts},
      {"greens", greens},             {"wronskian", wronskian_suite},
      {"recurrence", recurrence_suite}, {"lemma1", lemma1_suite},
      {"lemma2", lemma2_suite},       {"pointwise_bound", pointwise_suite}};

  std::vector<SuiteSummary> out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (suite != "all" && suite != table[i].first) continue;
    Rng rng(seed * 0x9E3779B97F4A7C15ULL + i);
    out.push_back(table[i].second(rng, cases));
  }
  if (out.empty()) throw Error("unknown verification suite '" + std::string(suite) + "'");
  return out;
}

}  // namespace ldsl
