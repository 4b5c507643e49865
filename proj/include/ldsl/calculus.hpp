#pragma once

#include "ldsl/report.hpp"
#include "ldsl/sequence.hpp"

namespace ldsl {

/// (Δu)(n) = u(n+1) - u(n) on [u.first(), u.last()-1].
template <class T>
BasicSequence<T> forward_difference(const BasicSequence<T>& u) {
  if (u.size() < 2) throw Error("forward difference needs at least two entries");
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(u.size() - 1));
  const auto v = u.values();
  for (std::size_t i = 0; i + 1 < v.size(); ++i) out.push_back(v[i + 1] - v[i]);
  return BasicSequence<T>(u.offset(), std::move(out));
}

/// max_n |Δ(fg)(n) - (g(n+1)Δf(n) + f(n)Δg(n))| over the shared window.
/// Scale: max(1, max|f|·max|g|).
Residual product_rule_residual(const Sequence& f, const Sequence& g);

/// |Σ_{n=j}^{N} g(n+1)Δf(n) - [(fg)(N+1) - (fg)(j) - Σ_{n=j}^{N} f(n)Δg(n)]|.
/// Scale: max(1, sum of the magnitudes of every term on both sides).
Residual summation_by_parts_residual(const Sequence& f, const Sequence& g, Index j, Index N);

/// Green-type identity on [1, N], conjugating the second argument:
///   Σ_{n=1}^{N} (pΔu)(n)·conj(Δv(n))
///     = (pΔu)(N)·conj(v(N+1)) - (pΔu)(0)·conj(v(1)) - Σ_{n=1}^{N} Δ(pΔu)(n-1)·conj(v(n)).
/// Scale as for summation by parts.
Residual greens_identity_residual(const RealSequence& p, const Sequence& u, const Sequence& v, Index N);

}  // namespace ldsl
