#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ldsl/difference_operator.hpp"
#include "ldsl/rng.hpp"
#include "ldsl/spectrum.hpp"

using namespace ldsl;

namespace {

std::vector<double> closed_form(Index N) {
  std::vector<double> out;
  for (Index k = 1; k <= N; ++k) {
    const double s = std::sin(static_cast<double>(k) * std::numbers::pi / (2.0 * static_cast<double>(N + 1)));
    out.push_back(4.0 * s * s);
  }
  return out;
}

CoefficientSet from_vectors(std::vector<double> p, std::vector<double> q, std::vector<double> w) {
  return CoefficientSet::create(RealSequence(0, std::move(p)), RealSequence(0, std::move(q)),
                                RealSequence(1, std::move(w)));
}

// det(L - λW) by the three-term recurrence for tridiagonal determinants.
double determinant(const FiniteSection& s, double lambda) {
  double prev = 1.0, cur = s.l_diag[0] - lambda * s.w_diag[0];
  for (std::size_t i = 1; i < s.l_diag.size(); ++i) {
    const double next = (s.l_diag[i] - lambda * s.w_diag[i]) * cur - s.l_offdiag[i - 1] * s.l_offdiag[i - 1] * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

CoefficientSet indefinite(std::uint64_t seed, Index N) {
  Rng rng(seed);
  std::vector<double> p, q, w;
  for (Index n = 0; n <= N + 1; ++n) {
    p.push_back(rng.uniform(0.5, 2.0));
    q.push_back(rng.uniform(0.0, 1.0));
  }
  for (Index n = 1; n <= N + 1; ++n) w.push_back((rng.coin() ? 1.0 : -1.0) * rng.uniform(0.5, 2.0));
  return from_vectors(std::move(p), std::move(q), std::move(w));
}

}  // namespace

TEST_SUITE("spectrum") {

TEST_CASE("finite section entries") {
  const auto unit = make_preset("constant", {}, 5, 0);
  const auto s = finite_section(unit, 3);
  CHECK(s.l_diag == std::vector<double>{2, 2, 2});
  CHECK(s.l_offdiag == std::vector<double>{-1, -1});
  CHECK(s.w_diag == std::vector<double>{1, 1, 1});

  const auto ramp = from_vectors({1, 2, 3, 4}, {0, 1, 1, 1}, {1, 1, 1});
  const auto r = finite_section(ramp, 3);
  CHECK(r.l_diag == std::vector<double>{4, 6, 8});
  CHECK(r.l_offdiag == std::vector<double>{-2, -3});
  CHECK(r.left_norm_inf() == 11.0);

  CHECK_THROWS_AS(finite_section(unit, 0), Error);
  CHECK_THROWS_AS(finite_section(unit, 5), Error);
  CHECK_THROWS_AS(s.apply_left(std::vector<double>{1, 2}), Error);
}

TEST_CASE("finite section matches the operator on Dirichlet-padded vectors") {
  Rng rng(31);
  for (int k = 0; k < 100; ++k) {
    const Index N = rng.integer(1, 40);
    const auto c = make_preset("random", {}, N + 2, static_cast<std::uint64_t>(k));
    const auto s = finite_section(c, N);
    std::vector<double> x;
    std::vector<Complex> padded{0.0};
    for (Index n = 1; n <= N; ++n) {
      x.push_back(rng.uniform(-3, 3));
      padded.push_back(x.back());
    }
    padded.push_back(0.0);
    const auto Lx = s.apply_left(x);
    const auto Wx = s.apply_weight(x);
    const auto tau = apply_operator(c, Sequence(0, std::move(padded)));
    for (Index n = 1; n <= N; ++n) {
      const auto i = static_cast<std::size_t>(n - 1);
      CHECK(std::abs(Lx[i] - tau(n).real()) <= 1e-12 * std::max(1.0, s.left_norm_inf() * 3));
      CHECK(Wx[i] == c.w()(n) * x[i]);
    }
  }
}

TEST_CASE("shooting function") {
  const auto unit = make_preset("constant", {}, 12, 0);
  CHECK(shooting_function(unit, 0.0, 1) == 2.0);
  CHECK(shooting_function(unit, 2.0, 1) == 0.0);
  for (Index N = 1; N <= 10; ++N) CHECK(shooting_function(unit, 0.0, N) == doctest::Approx(N + 1));

  // One sign change around each closed-form eigenvalue.
  const auto lam = closed_form(8);
  for (double l : lam) {
    const double a = shooting_function(unit, l - 1e-6, 8), b = shooting_function(unit, l + 1e-6, 8);
    CHECK(a * b < 0.0);
  }
}

TEST_CASE("signed inertia counts eigenvalues") {
  const auto unit = make_preset("constant", {}, 12, 0);
  const auto s = finite_section(unit, 8);
  const auto lam = closed_form(8);
  CHECK(signed_inertia(s, 0.5 * lam[0]) == 0);
  CHECK(signed_inertia(s, 0.5 * (lam[2] + lam[3])) == 3);
  CHECK(signed_inertia(s, 5.0) == 8);
  const auto neg = finite_section(make_preset("constant", {{"w", -1}}, 12, 0), 8);
  CHECK(signed_inertia(neg, -5.0) == -8);
  CHECK(signed_inertia(neg, 5.0) == 0);
}

TEST_CASE("closed form: both methods") {
  const auto unit = make_preset("constant", {}, 140, 0);
  for (Index N : {1, 2, 8, 32, 128}) {
    const auto exact = closed_form(N);
    const auto sh = eigen_shooting(unit, N, default_shooting_options(unit, N));
    const auto pe = eigen_pencil(unit, N);
    REQUIRE(sh.eigenvalues.size() == exact.size());
    REQUIRE(pe.eigenvalues.size() == exact.size());
    CHECK(sh.warnings.empty());
    CHECK(sh.expected_count == N);
    CHECK(pe.infinite_count == 0);
    for (std::size_t k = 0; k < exact.size(); ++k) {
      CHECK(std::abs(sh.eigenvalues[k] - exact[k]) <= 1e-10);
      CHECK(std::abs(pe.eigenvalues[k] - exact[k]) <= 1e-10);
      CHECK(pe.residuals[k] <= 1e-10 * pe.residual_scales[k]);
      CHECK(sh.brackets[k].lo <= sh.eigenvalues[k]);
      CHECK(sh.eigenvalues[k] <= sh.brackets[k].hi);
    }
  }
}

TEST_CASE("negative weight negates the spectrum") {
  const auto pos = make_preset("constant", {}, 20, 0);
  const auto neg = make_preset("constant", {{"w", -1}}, 20, 0);
  const auto a = eigen_pencil(pos, 16), b = eigen_pencil(neg, 16);
  const auto c = eigen_shooting(neg, 16, default_shooting_options(neg, 16));
  REQUIRE(a.eigenvalues.size() == 16);
  REQUIRE(b.eigenvalues.size() == 16);
  REQUIRE(c.eigenvalues.size() == 16);
  for (std::size_t k = 0; k < 16; ++k) {
    CHECK(std::abs(b.eigenvalues[15 - k] + a.eigenvalues[k]) <= 1e-10);
    CHECK(std::abs(c.eigenvalues[15 - k] + a.eigenvalues[k]) <= 1e-10);
  }
}

TEST_CASE("vanishing weight yields an infinite eigenvalue") {
  const auto c = from_vectors({1, 1, 1, 1, 1}, {0, 0, 0, 0, 0}, {1, 0, 1, 1});
  const auto s = finite_section(c, 3);
  CHECK_THROWS_AS(eigenvalue_enclosure(s), Error);

  const auto pe = eigen_pencil(c, 3);
  CHECK(pe.infinite_count == 1);
  REQUIRE(pe.eigenvalues.size() == 2);
  CHECK(pe.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pe.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-12));
  for (double l : pe.eigenvalues) CHECK(std::abs(determinant(s, l)) <= 1e-10);

  const auto sh = eigen_shooting(c, 3, -10.0, 10.0, 4096, 1e-13);
  REQUIRE(sh.eigenvalues.size() == 2);
  CHECK(sh.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sh.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(sh.expected_count == 2);
}

TEST_CASE("random definite instances: residuals and determinant oracle") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto c = make_preset("random", {{"w_min", 0.5}, {"w_max", 3}}, 18, seed);
    const auto s = finite_section(c, 16);
    const auto pe = eigen_pencil(c, 16);
    REQUIRE(pe.eigenvalues.size() == 16);
    CHECK(std::is_sorted(pe.eigenvalues.begin(), pe.eigenvalues.end()));
    for (std::size_t k = 0; k < 16; ++k) {
      CHECK(pe.eigenvalues[k] > 0.0);
      CHECK(pe.residuals[k] <= 1e-10 * pe.residual_scales[k]);
      // Sign change of the determinant straddles each eigenvalue.
      const double l = pe.eigenvalues[k], h = 1e-7 * std::max(1.0, l);
      CHECK(determinant(s, l - h) * determinant(s, l + h) <= 0.0);
    }
  }
}

TEST_CASE("methods agree on indefinite weights") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto c = indefinite(seed, 32);
    const auto pe = eigen_pencil(c, 32);
    const auto sh = eigen_shooting(c, 32, default_shooting_options(c, 32));
    REQUIRE(pe.eigenvalues.size() == 32);
    REQUIRE(sh.eigenvalues.size() == pe.eigenvalues.size());
    CHECK(sh.warnings.empty());
    for (std::size_t k = 0; k < 32; ++k) {
      const double l = pe.eigenvalues[k];
      CHECK(std::abs(sh.eigenvalues[k] - l) <= 1e-8 * std::max(1.0, std::abs(l)));
      CHECK(pe.residuals[k] <= 1e-8 * pe.residual_scales[k]);
    }
  }
}

TEST_CASE("eigenvalues scale with the coefficients") {
  const auto c = make_preset("random", {{"w_min", 0.5}, {"w_max", 2}}, 14, 3);
  std::vector<double> p2, q2, w2;
  for (double v : c.p().values()) p2.push_back(3 * v);
  for (double v : c.q().values()) q2.push_back(3 * v);
  for (double v : c.w().values()) w2.push_back(0.5 * v);
  const auto scaled = from_vectors(p2, q2, w2);
  const auto a = eigen_pencil(c, 12), b = eigen_pencil(scaled, 12);
  REQUIRE(a.eigenvalues.size() == b.eigenvalues.size());
  for (std::size_t k = 0; k < a.eigenvalues.size(); ++k)
    CHECK(b.eigenvalues[k] == doctest::Approx(6.0 * a.eigenvalues[k]).epsilon(1e-11));
}

TEST_CASE("option and size errors") {
  const auto c = make_preset("constant", {}, 600, 0);
  CHECK_THROWS_AS(eigen_pencil(c, 513), Error);
  CHECK_NOTHROW(eigen_pencil(c, 20, PencilOptions{.max_dimension = 20}));
  CHECK_THROWS_AS(eigen_pencil(c, 21, PencilOptions{.max_dimension = 20}), Error);
  CHECK_THROWS_AS(eigen_shooting(c, 4, 1.0, 1.0, 10, 1e-12), Error);
  CHECK_THROWS_AS(eigen_shooting(c, 4, 0.0, 1.0, 1, 1e-12), Error);
  CHECK_THROWS_AS(eigen_shooting(c, 4, 0.0, 1.0, 10, 0.0), Error);
}

TEST_CASE("explicit scan range") {
  const auto unit = make_preset("constant", {}, 10, 0);
  const auto sh = eigen_shooting(unit, 8, 0.0, 4.1, 4096, 1e-10);
  const auto exact = closed_form(8);
  REQUIRE(sh.eigenvalues.size() == 8);
  for (std::size_t k = 0; k < 8; ++k) CHECK(std::abs(sh.eigenvalues[k] - exact[k]) <= 1e-8);
}

TEST_CASE("a coarse grid still isolates every root") {
  const auto unit = make_preset("constant", {}, 20, 0);
  const auto sh = eigen_shooting(unit, 16, 0.0, 4.0, 2, 1e-12);
  const auto exact = closed_form(16);
  REQUIRE(sh.eigenvalues.size() == 16);
  CHECK(sh.expected_count == 16);
  CHECK(sh.warnings.empty());
  for (std::size_t k = 0; k < 16; ++k) CHECK(std::abs(sh.eigenvalues[k] - exact[k]) <= 1e-10);
}

}  // TEST_SUITE
