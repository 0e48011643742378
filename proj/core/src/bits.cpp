#include "mogp/bits.hpp"

#include <cctype>

#include "mogp/error.hpp"

namespace mogp {

namespace {

std::size_t word_count(int n) { return (static_cast<std::size_t>(n) + 63) / 64; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  const int lower = std::tolower(static_cast<unsigned char>(c));
  if (lower >= 'a' && lower <= 'f') return lower - 'a' + 10;
  return -1;
}

}  // namespace

BitString::BitString(int n) : n_(n), words_(word_count(n), 0) {
  if (n < 0) throw DomainError("BitString: negative length");
}

BitString BitString::from_rank(int n, std::uint64_t rank) {
  BitString b(n);
  if (n > 0) b.words_[0] = rank & full_mask(n < 64 ? n : 64);
  return b;
}

BitString BitString::from_hex(int n, std::string_view hex) {
  BitString b(n);
  int bit = 0;
  for (auto it = hex.rbegin(); it != hex.rend(); ++it) {
    const int v = hex_value(*it);
    if (v < 0) throw FormatError("BitString::from_hex: invalid digit");
    for (int j = 0; j < 4; ++j, ++bit) {
      if ((v >> j) & 1) {
        if (bit >= n) throw FormatError("BitString::from_hex: value exceeds length");
        b.set(bit, true);
      }
    }
  }
  return b;
}

void BitString::set(int i, bool value) {
  auto& w = words_[static_cast<std::size_t>(i) >> 6];
  const std::uint64_t m = std::uint64_t{1} << (i & 63);
  w = value ? (w | m) : (w & ~m);
}

void BitString::flip(int i) { words_[static_cast<std::size_t>(i) >> 6] ^= std::uint64_t{1} << (i & 63); }

std::uint64_t BitString::rank() const {
  if (n_ > 64) throw DomainError("BitString::rank: length exceeds 64");
  return n_ == 0 ? 0 : words_[0];
}

int BitString::popcount() const noexcept {
  int c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

BitString BitString::complement() const {
  BitString out(n_);
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = ~words_[w];
  if (const int tail = n_ & 63; tail != 0) out.words_.back() &= full_mask(tail);
  return out;
}

std::string BitString::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const int digits = n_ == 0 ? 1 : (n_ + 3) / 4;
  std::string out(static_cast<std::size_t>(digits), '0');
  for (int d = 0; d < digits; ++d) {
    int v = 0;
    for (int j = 0; j < 4; ++j) {
      const int bit = 4 * d + j;
      if (bit < n_ && get(bit)) v |= 1 << j;
    }
    out[static_cast<std::size_t>(digits - 1 - d)] = kDigits[v];
  }
  return out;
}

int hamming(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) throw DimensionMismatch("hamming: lengths differ");
  int d = 0;
  const auto& wa = a.words();
  const auto& wb = b.words();
  for (std::size_t w = 0; w < wa.size(); ++w) d += std::popcount(wa[w] ^ wb[w]);
  return d;
}

SpinConfiguration SpinConfiguration::all_plus(int n) {
  return SpinConfiguration(BitString(n).complement());
}

SpinConfiguration SpinConfiguration::from_spins(const std::vector<int>& spins) {
  BitString b(static_cast<int>(spins.size()));
  for (std::size_t i = 0; i < spins.size(); ++i) {
    if (spins[i] != 1 && spins[i] != -1) throw DomainError("from_spins: spins must be +1 or -1");
    b.set(static_cast<int>(i), spins[i] == 1);
  }
  return SpinConfiguration(std::move(b));
}

BooleanAssignment BooleanAssignment::from_string(std::string_view s) {
  BitString b(static_cast<int>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1') throw FormatError("from_string: expected '0' or '1'");
    b.set(static_cast<int>(i), s[i] == '1');
  }
  return BooleanAssignment(std::move(b));
}

int hamming(const SpinConfiguration& a, const SpinConfiguration& b) { return hamming(a.bits(), b.bits()); }
int hamming(const BooleanAssignment& a, const BooleanAssignment& b) { return hamming(a.bits(), b.bits()); }

int overlap(const SpinConfiguration& a, const SpinConfiguration& b) {
  return a.size() - 2 * hamming(a.bits(), b.bits());
}

}  // namespace mogp
