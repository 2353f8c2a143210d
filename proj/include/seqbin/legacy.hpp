#pragma once

#include <algorithm>
#include <limits>
#include <utility>
#include <vector>

#include "engines.hpp"
#include "instance.hpp"

namespace seqbin {

// Interval bounds of the forward (s) and backward (p) cost sets per x_{i,j}.
struct LegacyBounds {
  int n = 0;
  Value d = 0;
  std::vector<int> s_lo, s_hi, p_lo, p_hi;

  std::size_t index(int i, Value j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(d + 1) + static_cast<std::size_t>(j);
  }
};

// Min/max path costs over the given (B-coherent) domains, O(n d^2).
inline LegacyBounds legacy_bounds(const Instance& inst, const std::vector<Domain>& domains) {
  LegacyBounds lb;
  lb.n = inst.n;
  lb.d = inst.d;
  const std::size_t size = static_cast<std::size_t>(inst.n) * static_cast<std::size_t>(inst.d + 1);
  lb.s_lo.assign(size, 0);
  lb.s_hi.assign(size, 0);
  lb.p_lo.assign(size, 0);
  lb.p_hi.assign(size, 0);
  constexpr int kInf = std::numeric_limits<int>::max() / 2;

  for (Value j : domains[inst.n - 1]) lb.s_lo[lb.index(inst.n - 1, j)] = lb.s_hi[lb.index(inst.n - 1, j)] = 1;
  for (int i = inst.n - 2; i >= 0; --i) {
    const BinaryRelation& b = inst.b(i);
    const BinaryRelation& c = inst.c(i);
    for (Value j : domains[i]) {
      int lo = kInf, hi = -kInf;
      for (Value v : domains[i + 1]) {
        if (!b.contains(j, v)) continue;
        lo = std::min(lo, lb.s_lo[lb.index(i + 1, v)] + c.cost(j, v));
        hi = std::max(hi, lb.s_hi[lb.index(i + 1, v)] + c.cost(j, v));
      }
      lb.s_lo[lb.index(i, j)] = lo;
      lb.s_hi[lb.index(i, j)] = hi;
    }
  }
  for (Value j : domains[0]) lb.p_lo[lb.index(0, j)] = lb.p_hi[lb.index(0, j)] = 1;
  for (int i = 1; i < inst.n; ++i) {
    const BinaryRelation& b = inst.b(i - 1);
    const BinaryRelation& c = inst.c(i - 1);
    for (Value j : domains[i]) {
      int lo = kInf, hi = -kInf;
      for (Value u : domains[i - 1]) {
        if (!b.contains(u, j)) continue;
        lo = std::min(lo, lb.p_lo[lb.index(i - 1, u)] + c.cost(u, j));
        hi = std::max(hi, lb.p_hi[lb.index(i - 1, u)] + c.cost(u, j));
      }
      lb.p_lo[lb.index(i, j)] = lo;
      lb.p_hi[lb.index(i, j)] = hi;
    }
  }
  return lb;
}

struct LegacyOutcome {
  bool failed = false;
  int failed_var = -1;  // -1 with failed set means D(N) emptied
  std::vector<Domain> domains;
  std::vector<int> n_domain;
  int iterations = 0;
  std::vector<std::vector<std::pair<int, Value>>> pass_removals;  // phase-4 removals per pass
};

// The interval-bounds filtering (chain AC, N within [min s_lo, max s_hi],
// value kept iff some N value lies in [s_lo + p_lo - 1, s_hi + p_hi - 1]),
// repeated until a pass changes nothing. The count includes that last pass.
inline LegacyOutcome legacy_fixpoint(const Instance& inst, int max_passes = 1 << 20) {
  LegacyOutcome out;
  std::vector<Domain> dom = inst.domains;
  std::vector<int> nd = inst.n_domain;
  const bool monotone = all_b_monotone(inst);
  while (out.iterations < max_passes) {
    ++out.iterations;
    ChainFilter f = chain_filter(inst, dom, monotone);
    if (!f.ok()) {
      out.failed = true;
      out.failed_var = f.failed_var;
      out.domains = std::move(f.domains);
      out.n_domain = nd;
      return out;
    }
    std::vector<Domain> next = std::move(f.domains);
    const LegacyBounds lb = legacy_bounds(inst, next);

    int total_lo = std::numeric_limits<int>::max(), total_hi = std::numeric_limits<int>::min();
    for (Value j : next[0]) {
      total_lo = std::min(total_lo, lb.s_lo[lb.index(0, j)]);
      total_hi = std::max(total_hi, lb.s_hi[lb.index(0, j)]);
    }
    std::vector<int> n_next;
    for (int x : nd) {
      if (x >= total_lo && x <= total_hi) n_next.push_back(x);
    }
    if (n_next.empty()) {
      out.failed = true;
      out.domains = std::move(next);
      out.n_domain = std::move(n_next);
      return out;
    }

    std::vector<std::pair<int, Value>> removed;
    for (int i = 0; i < inst.n; ++i) {
      Domain kept;
      for (Value j : next[i]) {
        const std::size_t k = lb.index(i, j);
        const int lo = lb.s_lo[k] + lb.p_lo[k] - kDummyEdgeWeight;
        const int hi = lb.s_hi[k] + lb.p_hi[k] - kDummyEdgeWeight;
        auto it = std::lower_bound(n_next.begin(), n_next.end(), lo);
        if (it != n_next.end() && *it <= hi) {
          kept.push_back(j);
        } else {
          removed.emplace_back(i, j);
        }
      }
      next[i].swap(kept);
    }
    out.pass_removals.push_back(removed);
    for (int i = 0; i < inst.n; ++i) {
      if (next[i].empty()) {
        out.failed = true;
        out.failed_var = i;
        out.domains = std::move(next);
        out.n_domain = std::move(n_next);
        return out;
      }
    }
    if (next == dom && n_next == nd) break;
    dom = std::move(next);
    nd = std::move(n_next);
  }
  out.domains = std::move(dom);
  out.n_domain = std::move(nd);
  return out;
}

}  // namespace seqbin
