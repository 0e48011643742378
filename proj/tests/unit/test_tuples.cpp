#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "mogp/bounds.hpp"
#include "mogp/error.hpp"
#include "mogp/tuples.hpp"
#include "oracles/brute_force.hpp"

using namespace mogp;

namespace {

BigInt brute_count(int n, int m, ConstraintKind kind, int lower, int upper) {
  BigInt count = 0;
  oracle::for_each_tuple(n, m, [&](const std::vector<std::uint64_t>& t) {
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = i + 1; j < t.size(); ++j) {
        const int d = oracle::distance(oracle::bits_of(n, t[i]), oracle::bits_of(n, t[j]));
        const int v = kind == ConstraintKind::spin_overlap ? n - 2 * d : d;
        if (v < lower || v > upper) return;
      }
    ++count;
  });
  return count;
}

}  // namespace

TEST_CASE("interval endpoints snap for exact products") {
  const auto c = OverlapConstraint::hamming_distance(10, 2, 0.3, 0.1);
  CHECK(c.lower() == 2);
  CHECK(c.upper() == 3);
  const auto s = OverlapConstraint::spin_overlap(10, 2, 0.5, 0.25);
  CHECK(s.lower() == 3);  // ceil(2.5)
  CHECK(s.upper() == 5);
  // overlap in [3, 5] means distance in [ceil(5/2), floor(7/2)] = {3}
  CHECK(s.distance_window().min_d == 3);
  CHECK(s.distance_window().max_d == 3);
}

TEST_CASE("m = 1 family is every singleton") {
  const auto c = OverlapConstraint::spin_overlap(5, 1, 0.5, 0.1);
  CHECK(family_count(c) == 32);
  CHECK(anchored_count(c, 3) == 1);
}

TEST_CASE("n = 2 with overlap forced to zero has two anchored partners") {
  const auto c = OverlapConstraint::spin_overlap(2, 2, 0.5, 0.5);
  CHECK(c.lower() == 0);
  CHECK(c.upper() == 1);
  CHECK(anchored_count(c, 0) == 2);
  CHECK(family_count(c) == 8);
}

TEST_CASE("empty range gives an empty family") {
  const auto c = OverlapConstraint::from_bounds(5, 2, ConstraintKind::hamming_distance, 3, 2);
  CHECK(c.distance_window().empty());
  CHECK(family_count(c) == 0);
  const auto p = anchored_patterns(c);
  CHECK_THROWS_AS(maximin<int>(std::vector<int>(32, 0), p), EmptyFamily);
}

TEST_CASE("unconstrained spin pairs number 2^(2n)") {
  for (int n = 1; n <= 6; ++n) {
    const auto c = OverlapConstraint::from_bounds(n, 2, ConstraintKind::spin_overlap, -n, n);
    CHECK(family_count(c) == BigInt(1) << (2 * n));
  }
}

TEST_CASE("three members at distance exactly 3 in dimension 6 do not exist") {
  const auto c = OverlapConstraint::from_bounds(6, 3, ConstraintKind::hamming_distance, 3, 3);
  const BigInt brute = brute_count(6, 3, ConstraintKind::hamming_distance, 3, 3);
  CHECK(brute == 0);
  CHECK(family_count(c) == brute);
}

TEST_CASE("family counts match brute force over all tuples") {
  struct Case {
    int n, m;
    ConstraintKind kind;
    int lo, hi;
  };
  const std::vector<Case> cases = {
      {6, 3, ConstraintKind::hamming_distance, 2, 4}, {6, 3, ConstraintKind::spin_overlap, -2, 2},
      {5, 3, ConstraintKind::spin_overlap, 1, 3},     {7, 2, ConstraintKind::hamming_distance, 1, 3},
      {4, 4, ConstraintKind::hamming_distance, 1, 2}, {6, 2, ConstraintKind::spin_overlap, 0, 6},
  };
  for (const auto& k : cases) {
    const auto c = OverlapConstraint::from_bounds(k.n, k.m, k.kind, k.lo, k.hi);
    const BigInt brute = brute_count(k.n, k.m, k.kind, k.lo, k.hi);
    CHECK(family_count(c, {}, 1) == brute);
    CHECK(family_count(c, {}, 3) == brute);
    CHECK(anchored_count(c) * (BigInt(1) << k.n) == brute);
  }
}

TEST_CASE("pair family closed form") {
  for (int n = 2; n <= 9; ++n)
    for (int lo = 0; lo <= n; ++lo)
      for (int hi = lo; hi <= n; hi += 2) {
        const auto c = OverlapConstraint::from_bounds(n, 2, ConstraintKind::hamming_distance, lo, hi);
        CHECK(anchored_count(c) == pair_count_closed_form(n, c.distance_window()));
      }
}

TEST_CASE("enumeration order, anchors and witnesses") {
  const auto c = OverlapConstraint::from_bounds(4, 3, ConstraintKind::hamming_distance, 1, 2);
  std::vector<std::vector<std::uint64_t>> seen;
  enumerate_family(c, std::nullopt, [&](std::span<const std::uint64_t> t) {
    seen.emplace_back(t.begin(), t.end());
    return true;
  });
  CHECK(seen.size() == static_cast<std::size_t>(brute_count(4, 3, ConstraintKind::hamming_distance, 1, 2)));
  for (std::size_t i = 1; i < seen.size(); ++i) CHECK(seen[i - 1] < seen[i]);

  const auto witnesses = collect_family(c, 5, 1000);
  for (const auto& w : witnesses) {
    CHECK(w.configurations.front().rank() == 5);
    CHECK(satisfies(w, c));
    CHECK(w.at(0, 0) == 0);
  }

  std::size_t visited = 0;
  const auto stats = enumerate_family(c, std::nullopt, [&](std::span<const std::uint64_t>) { return ++visited < 7; });
  CHECK(stats.stopped);
  CHECK(visited == 7);
}

TEST_CASE("enumeration respects the node budget") {
  const auto c = OverlapConstraint::from_bounds(12, 3, ConstraintKind::hamming_distance, 0, 12);
  Budget b;
  b.max_nodes = 10000;
  CHECK_THROWS_AS(family_count(c, b, 1), BudgetExceeded);
}

TEST_CASE("maximin equals brute force and returns an admissible witness") {
  RandomStream s(11, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 6;
    std::vector<int> table(64);
    for (auto& v : table) v = static_cast<int>(s.uniform_below(20));
    const auto c = OverlapConstraint::from_bounds(n, 3, ConstraintKind::hamming_distance, 2, 4);
    const auto r = maximin<int>(table, anchored_patterns(c));
    int best = -1;
    oracle::for_each_tuple(n, 3, [&](const std::vector<std::uint64_t>& t) {
      if (!oracle::assignment_tuple_ok(n, t, 4.0 / 6.0, 2.0 / 6.0)) return;
      best = std::max(best, std::min({table[t[0]], table[t[1]], table[t[2]]}));
    });
    CHECK(r.value == best);
    const auto w = make_witness(n, ConstraintKind::hamming_distance, r.witness);
    CHECK(satisfies(w, c));
    int wmin = 1 << 30;
    for (auto x : r.witness) wmin = std::min(wmin, table[x]);
    CHECK(wmin == best);
  }
}

TEST_CASE("product sampler bias solves the quadratic") {
  const double p = product_sampler_bias(0.5, 0.05);
  CHECK(p == doctest::Approx(0.16458980337503155).epsilon(1e-14));
  CHECK((1 - 2 * p) * (1 - 2 * p) == doctest::Approx(0.45).epsilon(1e-14));
  CHECK(product_sampler_bias(0.999, 0.000999) < 1e-3);
  CHECK_THROWS_AS(product_sampler_bias(1.0, 0.0), Infeasible);
}

TEST_CASE("sampler witnesses always satisfy the narrowed window") {
  int successes = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomStream s(seed, 1);
    const auto w = construct_tuple_probabilistic(200, 3, 0.5, 0.2, 0.05, s);
    if (!w) continue;
    ++successes;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        CHECK(w->at(i, j) >= 80);
        CHECK(w->at(i, j) <= 100);
      }
    CHECK(satisfies(*w, OverlapConstraint::spin_overlap(200, 3, 0.5, 0.2)));
  }
  CHECK(successes > 0);
  RandomStream s(0, 0);
  CHECK_THROWS_AS(construct_tuple_probabilistic(200, 3, 0.5, 0.2, 0.1, s), Infeasible);
  CHECK_THROWS_AS(construct_tuple_probabilistic(200, 3, 0.1, 0.2, 0.05, s), Infeasible);
}

TEST_CASE("closeness partition") {
  const int n = 8;
  SUBCASE("identical tuples land on the diagonal buckets") {
    const auto x = make_witness(n, ConstraintKind::spin_overlap, std::vector<std::uint64_t>{3, 200});
    const std::vector<TuplePair> pairs = {{x, x}};
    const auto part = partition_by_closeness(pairs, 0.2);
    CHECK(part.bucket(0, 0) == std::vector<std::size_t>{0});
    CHECK(part.bucket(1, 1) == std::vector<std::size_t>{0});
    CHECK(part.separated.empty());
  }
  SUBCASE("all cross distances n / 2 are separated") {
    const auto x = make_witness(n, ConstraintKind::spin_overlap, std::vector<std::uint64_t>{0x00, 0x0f});
    const auto y = make_witness(n, ConstraintKind::spin_overlap, std::vector<std::uint64_t>{0x33, 0x3c});
    const std::vector<TuplePair> pairs = {{x, y}};
    const auto part = partition_by_closeness(pairs, 0.25);
    CHECK(part.separated == std::vector<std::size_t>{0});
  }
  SUBCASE("random pairs match a direct classification") {
    RandomStream s(3, 3);
    std::vector<TuplePair> pairs;
    for (int i = 0; i < 300; ++i) {
      std::vector<std::uint64_t> a = {s.uniform_below(256), s.uniform_below(256)};
      std::vector<std::uint64_t> b = {s.uniform_below(256), s.uniform_below(256)};
      if (i % 3 == 0) b[1] = a[1] ^ 1;
      pairs.push_back({make_witness(n, ConstraintKind::spin_overlap, a), make_witness(n, ConstraintKind::spin_overlap, b)});
    }
    const double eps = 0.25;
    const auto part = partition_by_closeness(pairs, eps);
    std::vector<std::set<std::size_t>> close(4);
    std::set<std::size_t> separated;
    for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
      bool any = false;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          const int d = oracle::distance(oracle::bits_of(n, pairs[idx].first.configurations[static_cast<std::size_t>(i)].rank()),
                                         oracle::bits_of(n, pairs[idx].second.configurations[static_cast<std::size_t>(j)].rank()));
          const double r = static_cast<double>(d) / n;
          if (r <= eps || r >= 1 - eps) {
            close[static_cast<std::size_t>(i * 2 + j)].insert(idx);
            any = true;
          }
        }
      if (!any) separated.insert(idx);
    }
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const auto& got = part.bucket(i, j);
        CHECK(std::set<std::size_t>(got.begin(), got.end()) == close[static_cast<std::size_t>(i * 2 + j)]);
      }
    CHECK(std::set<std::size_t>(part.separated.begin(), part.separated.end()) == separated);
  }
}
