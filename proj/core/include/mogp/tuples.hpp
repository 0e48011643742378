#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mogp/bits.hpp"
#include "mogp/error.hpp"
#include "mogp/random.hpp"

namespace mogp {

using BigInt = boost::multiprecision::cpp_int;

// Resource limits for exhaustive work. Node counts (not wall time) make
// budget exhaustion reproducible.
struct Budget {
  std::size_t memory_bytes = std::size_t{1} << 30;
  std::uint64_t max_nodes = std::uint64_t{1} << 36;
};

enum class ConstraintKind { spin_overlap, hamming_distance };

// Closed range [min_d, max_d] of allowed pairwise Hamming distances.
struct DistanceWindow {
  int min_d = 0;
  int max_d = -1;

  bool empty() const noexcept { return min_d > max_d; }
  bool contains(int d) const noexcept { return d >= min_d && d <= max_d; }
};

// Pairwise constraint on an m-tuple of points of a dimension-n hypercube.
//
// Spin families bound the overlap <s, s'> in [lower, upper] (only values with
// the parity of n are realizable). Assignment families bound the Hamming
// distance in [lower, upper]. lower > upper denotes an empty range.
class OverlapConstraint {
 public:
  // Overlaps n^{-1}<s, s'> in [xi - eta, xi]:
  //   ceil((xi - eta) n) <= <s, s'> <= floor(xi n).
  static OverlapConstraint spin_overlap(int n, int m, double xi, double eta);
  // Distances n^{-1} d_H in [beta - eta, beta]:
  //   ceil((beta - eta) n) <= d_H <= floor(beta n).
  static OverlapConstraint hamming_distance(int n, int m, double beta, double eta);
  static OverlapConstraint from_bounds(int n, int m, ConstraintKind kind, int lower, int upper);

  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }
  ConstraintKind kind() const noexcept { return kind_; }
  int lower() const noexcept { return lower_; }
  int upper() const noexcept { return upper_; }

  DistanceWindow distance_window() const noexcept;
  bool admits_distance(int d) const noexcept { return distance_window().contains(d); }

 private:
  OverlapConstraint(int n, int m, ConstraintKind kind, int lower, int upper);

  int n_;
  int m_;
  ConstraintKind kind_;
  int lower_;
  int upper_;
};

// A concrete m-tuple together with its pairwise overlap (spin) or distance
// (assignment) matrix, row-major m x m.
struct TupleWitness {
  ConstraintKind kind = ConstraintKind::spin_overlap;
  std::vector<BitString> configurations;
  std::vector<int> matrix;

  int m() const noexcept { return static_cast<int>(configurations.size()); }
  int n() const noexcept { return configurations.empty() ? 0 : configurations.front().size(); }
  int at(int i, int j) const { return matrix[static_cast<std::size_t>(i * m() + j)]; }
};

TupleWitness make_witness(ConstraintKind kind, std::vector<BitString> configurations);
TupleWitness make_witness(int n, ConstraintKind kind, std::span<const std::uint64_t> ranks);
bool satisfies(const TupleWitness& w, const OverlapConstraint& c);

// Visitor receives the member ranks of each tuple; returning false stops.
using TupleVisitor = std::function<bool(std::span<const std::uint64_t>)>;

struct EnumerationStats {
  std::uint64_t tuples = 0;
  std::uint64_t nodes = 0;
  bool stopped = false;
};

// Enumerates the family in deterministic order: anchors (first members) by
// binary rank, then (second, ..., m-th) lexicographic by rank. With an anchor
// only tuples whose first member equals it are produced. Candidates for each
// position are filtered against every previously fixed member.
// Requires n <= 62. Throws BudgetExceeded past budget.max_nodes.
EnumerationStats enumerate_family(const OverlapConstraint& c,
                                  std::optional<std::uint64_t> anchor,
                                  const TupleVisitor& visit,
                                  const Budget& budget = {});

// Up to `limit` witnesses in enumeration order.
std::vector<TupleWitness> collect_family(const OverlapConstraint& c,
                                         std::optional<std::uint64_t> anchor,
                                         std::size_t limit,
                                         const Budget& budget = {});

// Number of tuples whose first member is `anchor` (the L-count).
BigInt anchored_count(const OverlapConstraint& c, std::uint64_t anchor = 0, const Budget& budget = {});

// Exact family cardinality by exhaustive enumeration over every anchor,
// partitioned across `threads` workers (0 = hardware concurrency).
BigInt family_count(const OverlapConstraint& c, const Budget& budget = {}, unsigned threads = 0);

// sum_{d in window} C(n, d): the anchored count of a two-member family.
BigInt pair_count_closed_form(int n, DistanceWindow window);

// Offsets (member rank XOR anchor rank) of every anchored tuple, i.e. the
// anchored family at anchor 0. The constraint only sees XOR differences, so
// the full family is {(r, r ^ x_2, ..., r ^ x_m)} over all ranks r.
struct OffsetPatterns {
  int n = 0;
  int m = 1;
  std::vector<std::uint64_t> offsets;  // size() * (m - 1) entries

  std::size_t size() const noexcept {
    return m <= 1 ? 1 : offsets.size() / static_cast<std::size_t>(m - 1);
  }
  std::span<const std::uint64_t> pattern(std::size_t i) const noexcept {
    const auto w = static_cast<std::size_t>(m - 1);
    return std::span<const std::uint64_t>(offsets).subspan(i * w, w);
  }
};

OffsetPatterns anchored_patterns(const OverlapConstraint& c, const Budget& budget = {});

template <class Value>
struct MaximinResult {
  Value value{};
  std::vector<std::uint64_t> witness;  // member ranks
  std::uint64_t nodes = 0;
};

// max over tuples of min over members of table[rank]. Anchors are visited by
// rank and patterns in offset order; the witness is the first tuple reaching
// the maximum. Throws EmptyFamily when there are no patterns.
template <class Value>
MaximinResult<Value> maximin(std::span<const Value> table,
                             const OffsetPatterns& patterns,
                             const Budget& budget = {}) {
  if (patterns.m > 1 && patterns.offsets.empty()) throw EmptyFamily("maximin: empty tuple family");
  const std::uint64_t count = std::uint64_t{1} << patterns.n;
  if (table.size() != count) throw DimensionMismatch("maximin: table size is not 2^n");
  const std::size_t npat = patterns.size();
  const auto width = static_cast<std::size_t>(patterns.m - 1);

  MaximinResult<Value> out;
  bool found = false;
  std::uint64_t best_anchor = 0;
  std::size_t best_pattern = 0;
  std::uint64_t nodes = 0;

  for (std::uint64_t r = 0; r < count; ++r) {
    const Value a = table[r];
    ++nodes;
    if (found && !(out.value < a)) continue;
    for (std::size_t p = 0; p < npat; ++p) {
      ++nodes;
      if ((nodes & 0xfff) == 0 && nodes > budget.max_nodes)
        throw BudgetExceeded("maximin: node budget exhausted");
      Value v = a;
      bool dominated = false;
      const std::uint64_t* off = patterns.offsets.data() + p * width;
      for (std::size_t j = 0; j < width; ++j) {
        const Value b = table[r ^ off[j]];
        if (b < v) v = b;
        if (found && !(out.value < v)) {
          dominated = true;
          break;
        }
      }
      if (dominated) continue;
      if (!found || out.value < v) {
        out.value = v;
        found = true;
        best_anchor = r;
        best_pattern = p;
        if (!(v < a)) break;  // nothing better for this anchor
      }
    }
  }
  out.nodes = nodes;
  out.witness.push_back(best_anchor);
  for (auto x : patterns.pattern(best_pattern)) out.witness.push_back(best_anchor ^ x);
  return out;
}

// The product-measure sampler: coordinates i.i.d. +1 with probability p*,
// where (1 - 2 p*)^2 = xi - delta.
double product_sampler_bias(double xi, double delta);

// Samples m configurations with i.i.d. coordinates at bias p* and returns a
// witness when every pairwise normalized overlap is in [xi - 2 delta, xi];
// std::nullopt otherwise (callers retry with a fresh draw). Throws Infeasible
// unless 0 < xi - 2 delta, 2 delta < eta, and xi < 1.
std::optional<TupleWitness> construct_tuple_probabilistic(int n, int m, double xi, double eta,
                                                          double delta, RandomStream& stream);

struct TuplePair {
  TupleWitness first;
  TupleWitness second;
};

// Buckets of indices into the input pair list. close[i * m + j] holds pairs
// whose (i, j) cross distance d satisfies d / n in [0, eps] or [1 - eps, 1];
// a pair may appear in several close buckets. `separated` holds the pairs in
// no close bucket.
struct ClosenessPartition {
  int m = 0;
  std::vector<std::vector<std::size_t>> close;
  std::vector<std::size_t> separated;

  const std::vector<std::size_t>& bucket(int i, int j) const {
    return close[static_cast<std::size_t>(i * m + j)];
  }
};

ClosenessPartition partition_by_closeness(std::span<const TuplePair> pairs, double epsilon_star);

}  // namespace mogp
