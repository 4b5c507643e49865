#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ldsl/error.hpp"

namespace ldsl {

using Index = std::ptrdiff_t;
using Complex = std::complex<double>;

namespace detail {
inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const Complex& z) { return std::abs(z); }
}  // namespace detail

/// A finite window onto a sequence indexed by the naturals: entries are stored
/// for offset <= n < offset + size(). Every entry is finite.
template <class T>
class BasicSequence {
 public:
  using value_type = T;

  BasicSequence(Index offset, std::vector<T> values) : offset_(offset), values_(std::move(values)) {
    if (offset_ < 0) throw Error("sequence offset must be non-negative, got " + std::to_string(offset_));
    if (values_.empty()) throw Error("sequence must hold at least one entry");
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!detail::is_finite(values_[i]))
        throw Error("sequence entry at n=" + std::to_string(offset_ + static_cast<Index>(i)) + " is not finite");
    }
  }

  Index offset() const { return offset_; }
  Index size() const { return static_cast<Index>(values_.size()); }
  Index first() const { return offset_; }
  Index last() const { return offset_ + size() - 1; }

  bool covers(Index n) const { return n >= offset_ && n <= last(); }
  bool covers(Index from, Index to) const { return from > to || (covers(from) && covers(to)); }

  /// Checked access by absolute index n.
  const T& operator()(Index n) const {
    if (!covers(n))
      throw Error("index n=" + std::to_string(n) + " outside window [" + std::to_string(first()) + ", " +
                  std::to_string(last()) + "]");
    return values_[static_cast<std::size_t>(n - offset_)];
  }

  std::span<const T> values() const& { return values_; }
  std::span<const T> values() const&& = delete;

  /// Largest entry magnitude.
  double max_abs() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, detail::magnitude(v));
    return m;
  }

  friend bool operator==(const BasicSequence&, const BasicSequence&) = default;

 private:
  Index offset_;
  std::vector<T> values_;
};

using Sequence = BasicSequence<Complex>;
using RealSequence = BasicSequence<double>;

/// Widens a real sequence to complex entries on the same window.
inline Sequence to_complex(const RealSequence& s) {
  std::vector<Complex> v(s.values().begin(), s.values().end());
  return Sequence(s.offset(), std::move(v));
}

inline void require_covers(const char* name, const auto& seq, Index from, Index to) {
  if (!seq.covers(from, to))
    throw Error(std::string(name) + " must cover indices " + std::to_string(from) + ".." + std::to_string(to) +
                " but its window is [" + std::to_string(seq.first()) + ", " + std::to_string(seq.last()) + "]");
}

}  // namespace ldsl
