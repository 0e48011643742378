#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace mogp {

// SplitMix64 output finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Order-sensitive hash of a word sequence; used to derive per-trial stream ids.
std::uint64_t hash_words(std::initializer_list<std::uint64_t> words) noexcept;

// xoshiro256++ stream keyed by (seed, stream id).
//
// Seeding: a SplitMix64 state z = seed ^ mix64(stream_id + 0x9e3779b97f4a7c15)
// is advanced four times and its outputs become the xoshiro state words.
//
// Normal variates use the polar Box-Muller method. Each accepted pair (u, v)
// yields u*f on the call that draws it and v*f on the following call; a
// rejected pair consumes two uniforms and is discarded.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return next_u64(); }
  std::uint64_t next_u64() noexcept;

  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  // Uniform integer on [0, bound); bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound) noexcept;
  bool bernoulli(double p) noexcept { return uniform() < p; }
  double standard_normal() noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

 private:
  std::array<std::uint64_t, 4> s_{};
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

// Convenience: a stream whose id is hash_words(words).
RandomStream derive_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> words) noexcept;

}  // namespace mogp
