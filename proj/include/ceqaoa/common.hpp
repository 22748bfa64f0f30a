#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ceqaoa {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Default limit on n^m for anything that enumerates the encoded space.
inline constexpr std::size_t kDefaultEnumerationCap = 4096;

/// Raised when an operation's inputs violate its documented preconditions.
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when n^m exceeds the configured enumeration cap.
class CapExceededError : public std::length_error {
public:
  using std::length_error::length_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

/// A basis string z in [n]^m; symbols[b] is the symbol held by block b.
struct BlockString {
  std::vector<int> symbols;

  friend bool operator==(const BlockString&, const BlockString&) = default;
};

/// Canonical indexing of [n]^m: row-major with block 0 fastest,
/// i.e. index(z) = sum_b z_b * n^b.
class StringSpace {
public:
  StringSpace(int n, int m, std::size_t cap = kDefaultEnumerationCap);

  int symbols() const { return n_; }
  int blocks() const { return m_; }
  std::size_t size() const { return size_; }

  std::size_t index(const BlockString& z) const;
  BlockString decode(std::size_t index) const;
  /// Symbol held by `block` in the string with the given index.
  int symbol_at(std::size_t index, int block) const {
    return static_cast<int>((index / stride_[block]) % static_cast<std::size_t>(n_));
  }
  std::size_t stride(int block) const { return stride_[block]; }

  /// Renders a string as its symbols concatenated, e.g. "012"; symbols
  /// above 9 are separated by '.' so the encoding stays unambiguous.
  std::string label(std::size_t index) const;

private:
  int n_;
  int m_;
  std::size_t size_;
  std::vector<std::size_t> stride_;
};

/// Circular distance on the torus, in [0, pi].
double circular_distance(double a, double b);

/// Reduces an angle to the representative in (-pi, pi].
double wrap_angle(double x);

}  // namespace ceqaoa
