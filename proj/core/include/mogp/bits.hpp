#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mogp {

// Packed bit string of fixed length n, 64 bits per word, bit i of the string
// is bit (i % 64) of word i / 64. Bits past n are always zero.
class BitString {
 public:
  BitString() = default;
  explicit BitString(int n);

  // Low min(n, 64) bits taken from rank; remaining bits zero.
  static BitString from_rank(int n, std::uint64_t rank);
  // Inverse of to_hex().
  static BitString from_hex(int n, std::string_view hex);

  int size() const noexcept { return n_; }
  bool get(int i) const { return (words_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1u; }
  void set(int i, bool value);
  void flip(int i);

  // Rank as an integer; requires n <= 64.
  std::uint64_t rank() const;
  int popcount() const noexcept;
  BitString complement() const;

  // Hex digits, most significant first, of the integer sum_i bit_i 2^i.
  // Always ceil(n / 4) digits (at least one).
  std::string to_hex() const;

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

// Number of differing coordinates; throws DimensionMismatch on length mismatch.
int hamming(const BitString& a, const BitString& b);

namespace detail {
struct SpinTag {};
struct BoolTag {};
}  // namespace detail

// A point of a hypercube with a fixed interpretation of the bits. Distinct
// tags keep spin configurations and truth assignments from being mixed.
template <class Tag>
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(BitString bits) : bits_(std::move(bits)) {}

  static Configuration from_rank(int n, std::uint64_t rank) {
    return Configuration(BitString::from_rank(n, rank));
  }

  int size() const noexcept { return bits_.size(); }
  const BitString& bits() const noexcept { return bits_; }
  BitString& bits() noexcept { return bits_; }
  std::uint64_t rank() const { return bits_.rank(); }

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  BitString bits_;
};

// Point of {-1,+1}^n; bit = 1 means spin +1.
class SpinConfiguration : public Configuration<detail::SpinTag> {
 public:
  using Configuration::Configuration;
  SpinConfiguration(Configuration base) : Configuration(std::move(base)) {}

  static SpinConfiguration from_rank(int n, std::uint64_t rank) {
    return SpinConfiguration(BitString::from_rank(n, rank));
  }
  static SpinConfiguration all_plus(int n);
  static SpinConfiguration from_spins(const std::vector<int>& spins);

  int spin(int i) const { return bits().get(i) ? 1 : -1; }
  SpinConfiguration negated() const { return SpinConfiguration(bits().complement()); }
};

// Point of {0,1}^n.
class BooleanAssignment : public Configuration<detail::BoolTag> {
 public:
  using Configuration::Configuration;
  BooleanAssignment(Configuration base) : Configuration(std::move(base)) {}

  static BooleanAssignment from_rank(int n, std::uint64_t rank) {
    return BooleanAssignment(BitString::from_rank(n, rank));
  }
  // Parses a string of '0'/'1' characters, coordinate 0 first.
  static BooleanAssignment from_string(std::string_view bits);

  bool value(int i) const { return bits().get(i); }
};

int hamming(const SpinConfiguration& a, const SpinConfiguration& b);
int hamming(const BooleanAssignment& a, const BooleanAssignment& b);

// Sum_i a(i) b(i) = n - 2 hamming(a, b).
int overlap(const SpinConfiguration& a, const SpinConfiguration& b);

// Rank-level helpers for the enumeration kernels (n <= 64).
inline int hamming_rank(std::uint64_t a, std::uint64_t b) noexcept {
  return std::popcount(a ^ b);
}
inline std::uint64_t full_mask(int n) noexcept {
  return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

}  // namespace mogp
