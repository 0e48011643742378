#include "mogp/tuples.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "mogp/numeric.hpp"

namespace mogp {

namespace {

constexpr int kMaxEnumerationDim = 62;

int clamp_int(std::int64_t v, int lo, int hi) {
  return static_cast<int>(std::clamp<std::int64_t>(v, lo, hi));
}

// Shared state for enumerating tuples with a fixed constraint.
struct FamilyEnumerator {
  int n;
  int m;
  DistanceWindow window;
  std::vector<std::uint64_t> offsets;  // ranks within the window of rank 0, ascending
  std::uint64_t max_nodes;
  std::uint64_t nodes = 0;

  FamilyEnumerator(const OverlapConstraint& c, const Budget& budget)
      : n(c.n()), m(c.m()), window(c.distance_window()), max_nodes(budget.max_nodes) {
    if (n > kMaxEnumerationDim) throw BudgetExceeded("enumerate_family: dimension too large");
    if (m < 2) return;
    const std::uint64_t count = std::uint64_t{1} << n;
    if (count > max_nodes) throw BudgetExceeded("enumerate_family: 2^n exceeds node budget");
    nodes += count;
    if (window.empty()) return;
    for (std::uint64_t x = 0; x < count; ++x) {
      if (window.contains(hamming_rank(x, 0))) offsets.push_back(x);
    }
    if (offsets.size() * sizeof(std::uint64_t) > budget.memory_bytes)
      throw BudgetExceeded("enumerate_family: candidate list exceeds memory budget");
  }

  void tick() {
    if (++nodes > max_nodes) throw BudgetExceeded("enumerate_family: node budget exhausted");
  }

  // Calls on_tuple(span of m ranks) for every tuple anchored at `anchor`.
  // Returns false if on_tuple asked to stop.
  template <class F>
  bool run_anchor(std::uint64_t anchor, F&& on_tuple) {
    std::vector<std::uint64_t> members(static_cast<std::size_t>(m));
    members[0] = anchor;
    if (m == 1) {
      tick();
      return on_tuple(std::span<const std::uint64_t>(members));
    }
    std::vector<std::uint64_t> candidates;
    const std::vector<std::uint64_t>* cand = &offsets;
    if (anchor != 0) {
      candidates.reserve(offsets.size());
      for (auto x : offsets) candidates.push_back(anchor ^ x);
      std::sort(candidates.begin(), candidates.end());
      cand = &candidates;
    }
    return descend(1, members, *cand, on_tuple);
  }

  template <class F>
  bool descend(int level, std::vector<std::uint64_t>& members,
               const std::vector<std::uint64_t>& cand, F& on_tuple) {
    for (auto c : cand) {
      tick();
      bool ok = true;
      for (int i = 1; i < level; ++i) {
        if (!window.contains(hamming_rank(c, members[static_cast<std::size_t>(i)]))) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      members[static_cast<std::size_t>(level)] = c;
      if (level + 1 == m) {
        if (!on_tuple(std::span<const std::uint64_t>(members))) return false;
      } else if (!descend(level + 1, members, cand, on_tuple)) {
        return false;
      }
    }
    return true;
  }
};

}  // namespace

OverlapConstraint::OverlapConstraint(int n, int m, ConstraintKind kind, int lower, int upper)
    : n_(n), m_(m), kind_(kind), lower_(lower), upper_(upper) {
  if (n < 1) throw DomainError("OverlapConstraint: n must be positive");
  if (m < 1) throw DomainError("OverlapConstraint: m must be positive");
}

OverlapConstraint OverlapConstraint::spin_overlap(int n, int m, double xi, double eta) {
  const auto lo = snapped_ceil((xi - eta) * n);
  const auto hi = snapped_floor(xi * n);
  return OverlapConstraint(n, m, ConstraintKind::spin_overlap, clamp_int(lo, -n - 1, n + 1),
                           clamp_int(hi, -n - 1, n + 1));
}

OverlapConstraint OverlapConstraint::hamming_distance(int n, int m, double beta, double eta) {
  const auto lo = snapped_ceil((beta - eta) * n);
  const auto hi = snapped_floor(beta * n);
  return OverlapConstraint(n, m, ConstraintKind::hamming_distance, clamp_int(lo, -1, n + 1),
                           clamp_int(hi, -1, n + 1));
}

OverlapConstraint OverlapConstraint::from_bounds(int n, int m, ConstraintKind kind, int lower, int upper) {
  return OverlapConstraint(n, m, kind, lower, upper);
}

DistanceWindow OverlapConstraint::distance_window() const noexcept {
  DistanceWindow w;
  if (kind_ == ConstraintKind::hamming_distance) {
    w.min_d = std::max(lower_, 0);
    w.max_d = std::min(upper_, n_);
  } else {
    // <s, s'> = n - 2d, so lower <= n - 2d <= upper.
    w.min_d = static_cast<int>(std::max<std::int64_t>(ceil_div(n_ - upper_, 2), 0));
    w.max_d = static_cast<int>(std::min<std::int64_t>(floor_div(n_ - lower_, 2), n_));
  }
  return w;
}

TupleWitness make_witness(ConstraintKind kind, std::vector<BitString> configurations) {
  TupleWitness w;
  w.kind = kind;
  w.configurations = std::move(configurations);
  const int m = w.m();
  w.matrix.assign(static_cast<std::size_t>(m * m), 0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const int d = hamming(w.configurations[static_cast<std::size_t>(i)],
                            w.configurations[static_cast<std::size_t>(j)]);
      w.matrix[static_cast<std::size_t>(i * m + j)] =
          kind == ConstraintKind::spin_overlap ? w.n() - 2 * d : d;
    }
  }
  return w;
}

TupleWitness make_witness(int n, ConstraintKind kind, std::span<const std::uint64_t> ranks) {
  std::vector<BitString> configs;
  configs.reserve(ranks.size());
  for (auto r : ranks) configs.push_back(BitString::from_rank(n, r));
  return make_witness(kind, std::move(configs));
}

bool satisfies(const TupleWitness& w, const OverlapConstraint& c) {
  if (w.m() != c.m() || w.n() != c.n()) return false;
  const auto window = c.distance_window();
  for (int i = 0; i < w.m(); ++i) {
    for (int j = i + 1; j < w.m(); ++j) {
      const int d = hamming(w.configurations[static_cast<std::size_t>(i)],
                            w.configurations[static_cast<std::size_t>(j)]);
      if (!window.contains(d)) return false;
    }
  }
  return true;
}

EnumerationStats enumerate_family(const OverlapConstraint& c, std::optional<std::uint64_t> anchor,
                                  const TupleVisitor& visit, const Budget& budget) {
  FamilyEnumerator e(c, budget);
  EnumerationStats stats;
  auto on_tuple = [&](std::span<const std::uint64_t> t) {
    ++stats.tuples;
    if (!visit(t)) {
      stats.stopped = true;
      return false;
    }
    return true;
  };
  if (anchor) {
    if (*anchor > full_mask(c.n())) throw DomainError("enumerate_family: anchor out of range");
    e.run_anchor(*anchor, on_tuple);
  } else {
    const std::uint64_t count = std::uint64_t{1} << c.n();
    for (std::uint64_t a = 0; a < count && !stats.stopped; ++a) e.run_anchor(a, on_tuple);
  }
  stats.nodes = e.nodes;
  return stats;
}

std::vector<TupleWitness> collect_family(const OverlapConstraint& c, std::optional<std::uint64_t> anchor,
                                         std::size_t limit, const Budget& budget) {
  std::vector<TupleWitness> out;
  if (limit == 0) return out;
  const auto kind = c.kind();
  enumerate_family(
      c, anchor,
      [&](std::span<const std::uint64_t> t) {
        out.push_back(make_witness(c.n(), kind, t));
        return out.size() < limit;
      },
      budget);
  return out;
}

BigInt anchored_count(const OverlapConstraint& c, std::uint64_t anchor, const Budget& budget) {
  FamilyEnumerator e(c, budget);
  std::uint64_t count = 0;
  e.run_anchor(anchor, [&](std::span<const std::uint64_t>) {
    ++count;
    return true;
  });
  return BigInt(count);
}

BigInt family_count(const OverlapConstraint& c, const Budget& budget, unsigned threads) {
  if (c.n() > kMaxEnumerationDim) throw BudgetExceeded("family_count: dimension too large");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t anchors = std::uint64_t{1} << c.n();
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, anchors));

  // Each worker owns a contiguous anchor range and a share of the node budget.
  Budget share = budget;
  share.max_nodes = budget.max_nodes / threads;
  std::vector<std::uint64_t> partial(threads, 0);
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned w) {
    try {
      FamilyEnumerator e(c, share);
      const std::uint64_t begin = anchors * w / threads;
      const std::uint64_t end = anchors * (w + 1) / threads;
      std::uint64_t count = 0;
      for (std::uint64_t a = begin; a < end; ++a) {
        e.run_anchor(a, [&](std::span<const std::uint64_t>) {
          ++count;
          return true;
        });
      }
      partial[w] = count;
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  BigInt total = 0;
  for (auto p : partial) total += p;
  return total;
}

BigInt pair_count_closed_form(int n, DistanceWindow window) {
  BigInt total = 0;
  BigInt binom = 1;  // C(n, d)
  for (int d = 0; d <= n; ++d) {
    if (window.contains(d)) total += binom;
    binom = binom * (n - d) / (d + 1);
  }
  return total;
}

OffsetPatterns anchored_patterns(const OverlapConstraint& c, const Budget& budget) {
  OffsetPatterns out;
  out.n = c.n();
  out.m = c.m();
  if (c.m() == 1) return out;
  const std::size_t width = static_cast<std::size_t>(c.m() - 1);
  enumerate_family(
      c, std::uint64_t{0},
      [&](std::span<const std::uint64_t> t) {
        if ((out.offsets.size() + width) * sizeof(std::uint64_t) > budget.memory_bytes)
          throw BudgetExceeded("anchored_patterns: pattern list exceeds memory budget");
        out.offsets.insert(out.offsets.end(), t.begin() + 1, t.end());
        return true;
      },
      budget);
  return out;
}

double product_sampler_bias(double xi, double delta) {
  const double target = xi - delta;
  if (!(target > 0.0 && target < 1.0)) throw Infeasible("product_sampler_bias: xi - delta must lie in (0, 1)");
  return 0.5 * (1.0 - std::sqrt(target));
}

std::optional<TupleWitness> construct_tuple_probabilistic(int n, int m, double xi, double eta,
                                                          double delta, RandomStream& stream) {
  if (n < 1 || m < 1) throw Infeasible("construct_tuple_probabilistic: n and m must be positive");
  if (!(delta > 0.0)) throw Infeasible("construct_tuple_probabilistic: delta must be positive");
  if (!(xi - 2.0 * delta > 0.0)) throw Infeasible("construct_tuple_probabilistic: requires xi - 2 delta > 0");
  if (!(xi - eta < xi - 2.0 * delta)) throw Infeasible("construct_tuple_probabilistic: requires 2 delta < eta");
  if (!(xi < 1.0)) throw Infeasible("construct_tuple_probabilistic: requires xi < 1");

  const double bias = product_sampler_bias(xi, delta);
  std::vector<BitString> configs;
  configs.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    BitString b(n);
    for (int k = 0; k < n; ++k) b.set(k, stream.bernoulli(bias));
    configs.push_back(std::move(b));
  }
  auto w = make_witness(ConstraintKind::spin_overlap, std::move(configs));
  const auto lo = snapped_ceil((xi - 2.0 * delta) * n);
  const auto hi = snapped_floor(xi * n);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const int q = w.at(i, j);
      if (q < lo || q > hi) return std::nullopt;
    }
  }
  return w;
}

ClosenessPartition partition_by_closeness(std::span<const TuplePair> pairs, double epsilon_star) {
  if (!(epsilon_star > 0.0 && epsilon_star < 0.5))
    throw DomainError("partition_by_closeness: epsilon_star must lie in (0, 1/2)");
  ClosenessPartition out;
  if (pairs.empty()) return out;
  out.m = pairs.front().first.m();
  const int m = out.m;
  out.close.resize(static_cast<std::size_t>(m * m));
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    const auto& [a, b] = pairs[idx];
    if (a.m() != m || b.m() != m) throw DimensionMismatch("partition_by_closeness: tuple sizes differ");
    const int n = a.n();
    const auto near = snapped_floor(epsilon_star * n);
    const auto far = snapped_ceil((1.0 - epsilon_star) * n);
    bool any_close = false;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const int d = hamming(a.configurations[static_cast<std::size_t>(i)],
                              b.configurations[static_cast<std::size_t>(j)]);
        if (d <= near || d >= far) {
          out.close[static_cast<std::size_t>(i * m + j)].push_back(idx);
          any_close = true;
        }
      }
    }
    if (!any_close) out.separated.push_back(idx);
  }
  return out;
}

}  // namespace mogp
