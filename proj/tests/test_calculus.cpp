#include <doctest.h>

#include "ldsl/calculus.hpp"
#include "ldsl/rng.hpp"

using namespace ldsl;

namespace {

Sequence real_seq(Index offset, std::initializer_list<double> v) {
  std::vector<Complex> out(v.begin(), v.end());
  return Sequence(offset, std::move(out));
}

Sequence random_seq(Rng& rng, Index offset, Index len, double bound = 7.0) {
  std::vector<Complex> v(static_cast<std::size_t>(len));
  for (auto& z : v) z = Complex(rng.uniform(-bound, bound), rng.uniform(-bound, bound));
  return Sequence(offset, std::move(v));
}

using LD = std::complex<long double>;
LD ld(Complex z) { return LD(z.real(), z.imag()); }

// Both sides of summation by parts straight from the definitions, in extended precision.
std::pair<LD, LD> sbp_sides(const Sequence& f, const Sequence& g, Index j, Index N) {
  LD left = 0, sum = 0;
  for (Index n = j; n <= N; ++n) {
    left += ld(g(n + 1)) * (ld(f(n + 1)) - ld(f(n)));
    sum += ld(f(n)) * (ld(g(n + 1)) - ld(g(n)));
  }
  return {left, ld(f(N + 1)) * ld(g(N + 1)) - ld(f(j)) * ld(g(j)) - sum};
}

std::pair<LD, LD> greens_sides(const RealSequence& p, const Sequence& u, const Sequence& v, Index N) {
  const auto flux = [&](Index n) { return static_cast<long double>(p(n)) * (ld(u(n + 1)) - ld(u(n))); };
  LD left = 0, sum = 0;
  for (Index n = 1; n <= N; ++n) {
    left += flux(n) * std::conj(ld(v(n + 1)) - ld(v(n)));
    sum += (flux(n) - flux(n - 1)) * std::conj(ld(v(n)));
  }
  return {left, flux(N) * std::conj(ld(v(N + 1))) - flux(0) * std::conj(ld(v(1))) - sum};
}

}  // namespace

TEST_SUITE("calculus") {

TEST_CASE("forward difference") {
  const auto c = forward_difference(real_seq(0, {2.5, 2.5, 2.5, 2.5}));
  CHECK(c.size() == 3);
  for (const auto& z : c.values()) CHECK(z == Complex(0.0));

  const auto lin = forward_difference(real_seq(0, {0, 1, 2, 3, 4}));
  for (const auto& z : lin.values()) CHECK(z == Complex(1.0));

  const auto sq = forward_difference(real_seq(3, {1, 4, 9, 16}));
  CHECK(sq.offset() == 3);
  CHECK(sq(3) == Complex(3.0));
  CHECK(sq(4) == Complex(5.0));
  CHECK(sq(5) == Complex(7.0));

  CHECK_THROWS_AS(forward_difference(real_seq(0, {1})), Error);
}

TEST_CASE("forward difference is linear") {
  Rng rng(101);
  for (int c = 0; c < 200; ++c) {
    const Index len = rng.integer(2, 100);
    const auto u = random_seq(rng, 0, len), v = random_seq(rng, 0, len);
    const Complex a(rng.uniform(-3, 3), rng.uniform(-3, 3)), b(rng.uniform(-3, 3), rng.uniform(-3, 3));
    std::vector<Complex> mix;
    for (Index n = 0; n < len; ++n) mix.push_back(a * u(n) + b * v(n));
    const auto dmix = forward_difference(Sequence(0, mix));
    const auto du = forward_difference(u), dv = forward_difference(v);
    const double scale = std::max(1.0, (std::abs(a) + std::abs(b)) * std::max(u.max_abs(), v.max_abs()));
    for (Index n = 0; n < len - 1; ++n) CHECK(std::abs(dmix(n) - (a * du(n) + b * dv(n))) <= 1e-13 * scale);
  }
}

TEST_CASE("differences telescope") {
  Rng rng(202);
  for (int c = 0; c < 200; ++c) {
    const Index len = rng.integer(2, 150);
    const auto u = random_seq(rng, 0, len);
    const auto du = forward_difference(u);
    const Index j = rng.integer(0, len - 2), k = rng.integer(j, len - 2);
    Complex sum = 0.0;
    double mass = 0.0;
    for (Index i = j; i <= k; ++i) {
      sum += du(i);
      mass += std::abs(du(i));
    }
    CHECK(std::abs(sum - (u(k + 1) - u(j))) <= 1e-12 * std::max(1.0, mass));
  }
}

TEST_CASE("product rule") {
  CHECK(product_rule_residual(real_seq(0, {1, 1, 1}), real_seq(0, {1, 1, 1})).value == 0.0);

  // Δ(n²) = 2n+1 = g(n+1)·1 + n·1 with f = g = n on 0..5.
  const auto n = real_seq(0, {0, 1, 2, 3, 4, 5});
  const auto r = product_rule_residual(n, n);
  CHECK(r.scale == 25.0);
  CHECK(r.value <= 1e-12 * 25.0);
  for (Index k = 0; k < 5; ++k) {
    const double lhs = static_cast<double>((k + 1) * (k + 1) - k * k);
    CHECK(lhs == static_cast<double>(2 * k + 1));
  }

  Rng rng(7);
  const auto f = random_seq(rng, 0, 64), g = random_seq(rng, 0, 64);
  CHECK(product_rule_residual(f, g).within(kIdentityTolerance));

  CHECK_THROWS_AS(product_rule_residual(real_seq(0, {1, 2}), real_seq(1, {1, 2})), Error);
  CHECK_THROWS_AS(product_rule_residual(real_seq(0, {1, 2}), real_seq(0, {1, 2, 3})), Error);
}

TEST_CASE("summation by parts") {
  const auto cst = real_seq(0, {3, 3, 3, 3, 3, 3});
  Rng rng(1);
  const auto g0 = random_seq(rng, 0, 6);
  CHECK(summation_by_parts_residual(cst, g0, 1, 4).within(kIdentityTolerance));

  // f = g = n, j = 1, N = 3: left 2+3+4 = 9, right 16 - 1 - (1+2+3) = 9.
  const auto n = real_seq(0, {0, 1, 2, 3, 4});
  const auto [l, rr] = sbp_sides(n, n, 1, 3);
  CHECK(l.real() == 9.0L);
  CHECK(rr.real() == 9.0L);
  CHECK(summation_by_parts_residual(n, n, 1, 3).value <= 1e-12 * 16);

  Rng r3(3);
  const auto f = random_seq(r3, 0, 42), g = random_seq(r3, 0, 42);
  const auto res = summation_by_parts_residual(f, g, 2, 40);
  CHECK(res.within(kIdentityTolerance));
  const auto [lo, ro] = sbp_sides(f, g, 2, 40);
  CHECK(static_cast<double>(std::abs(lo - ro)) <= 1e-12 * res.scale);

  CHECK_THROWS_AS(summation_by_parts_residual(f, g, 5, 4), Error);
  CHECK_THROWS_AS(summation_by_parts_residual(f, g, 2, 41), Error);
}

TEST_CASE("Green identity") {
  const RealSequence ones(0, std::vector<double>(6, 1.0));
  const auto cst = real_seq(0, {2, 2, 2, 2, 2});
  Rng rng(4);
  CHECK(greens_identity_residual(ones, cst, random_seq(rng, 0, 5), 3).value == 0.0);

  // p ≡ 1, u = v = n, N = 3: both sides equal 3.
  const auto n = real_seq(0, {0, 1, 2, 3, 4});
  const auto [l, r] = greens_sides(ones, n, n, 3);
  CHECK(l.real() == 3.0L);
  CHECK(r.real() == 3.0L);
  CHECK(greens_identity_residual(ones, n, n, 3).value <= 1e-12 * 16);

  Rng r11(11);
  std::vector<double> p(51);
  for (auto& x : p) x = r11.uniform(0.1, 10.0);
  const RealSequence ps(0, p);
  const auto u = random_seq(r11, 0, 52), v = random_seq(r11, 0, 52);
  const auto res = greens_identity_residual(ps, u, v, 50);
  CHECK(res.within(kIdentityTolerance));
  const auto [lo, ro] = greens_sides(ps, u, v, 50);
  CHECK(static_cast<double>(std::abs(lo - ro)) <= 1e-12 * res.scale);

  CHECK_THROWS_AS(greens_identity_residual(ps, u, v, 51), Error);
  CHECK_THROWS_AS(greens_identity_residual(ps, u, v, 0), Error);
}

TEST_CASE("all three identities hold on 1000 random inputs") {
  Rng rng(2024);
  int failures = 0;
  for (int c = 0; c < 1000; ++c) {
    const Index len = rng.integer(3, 200);
    const auto f = random_seq(rng, 0, len), g = random_seq(rng, 0, len);
    std::vector<double> p(static_cast<std::size_t>(len));
    for (auto& x : p) x = rng.uniform(0.1, 10.0);
    const Index N = rng.integer(1, len - 2), j = rng.integer(0, N);
    failures += !product_rule_residual(f, g).within(kIdentityTolerance);
    failures += !summation_by_parts_residual(f, g, j, N).within(kIdentityTolerance);
    failures += !greens_identity_residual(RealSequence(0, p), f, g, N).within(kIdentityTolerance);
  }
  CHECK(failures == 0);
}

}  // TEST_SUITE
