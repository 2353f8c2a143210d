#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cost_set.hpp"
#include "cost_table.hpp"
#include "graph.hpp"
#include "indicator.hpp"
#include "instance.hpp"
#include "relations.hpp"

namespace seqbin {

// Raised in strict mode when a cost set escapes the zipper / i-zipper shapes
// or the indicator windows.
class StructureError : public std::runtime_error {
 public:
  StructureError(int layer, const std::string& what)
      : std::runtime_error("layer " + std::to_string(layer) + ": " + what), layer_(layer) {}
  int layer() const { return layer_; }

 private:
  int layer_;
};

inline bool all_b_monotone(const Instance& inst) {
  for (const auto& b : inst.b_list) {
    if (!is_monotone(b, inst.pi)) return false;
  }
  return true;
}

// Every row and column of every B is a rank interval under pi, and every C or
// its complement is row and column convex under pi.
inline bool convex_applicable(const Instance& inst) {
  for (const auto& b : inst.b_list) {
    if (!is_row_convex(b, inst.pi) || !is_col_convex(b, inst.pi)) return false;
  }
  for (const auto& c : inst.c_list) {
    const bool direct = is_row_convex(c, inst.pi) && is_col_convex(c, inst.pi);
    if (direct) continue;
    const BinaryRelation neg = c.complement();
    if (!(is_row_convex(neg, inst.pi) && is_col_convex(neg, inst.pi))) return false;
  }
  return true;
}

struct ChainFilter {
  std::vector<Domain> domains;
  int failed_var = -1;  // first emptied domain, or -1
  bool ok() const { return failed_var < 0; }
};

// Arc consistency on the chain of B constraints: one forward and one backward
// sweep. With monotone B a value has a support iff the pi-top of the
// neighbouring domain supports it.
inline ChainFilter chain_filter(const Instance& inst, std::vector<Domain> domains, bool monotone) {
  ChainFilter out;
  auto top_of = [&](const Domain& dom) {
    Value best = dom.front();
    for (Value v : dom) {
      if (inst.pi.rank(v) > inst.pi.rank(best)) best = v;
    }
    return best;
  };
  auto keep_if = [](Domain& dom, auto pred) {
    Domain kept;
    kept.reserve(dom.size());
    for (Value v : dom) {
      if (pred(v)) kept.push_back(v);
    }
    dom.swap(kept);
  };
  for (int i = 0; i < inst.n; ++i) {
    if (domains[i].empty()) {
      out.failed_var = i;
      out.domains = std::move(domains);
      return out;
    }
  }
  for (int i = 0; i + 1 < inst.n; ++i) {
    const BinaryRelation& b = inst.b(i);
    const Domain& prev = domains[i];
    if (monotone) {
      const Value top = top_of(prev);
      keep_if(domains[i + 1], [&](Value v) { return b.contains(top, v); });
    } else {
      keep_if(domains[i + 1], [&](Value v) {
        for (Value j : prev) {
          if (b.contains(j, v)) return true;
        }
        return false;
      });
    }
    if (domains[i + 1].empty()) {
      out.failed_var = i + 1;
      out.domains = std::move(domains);
      return out;
    }
  }
  for (int i = inst.n - 2; i >= 0; --i) {
    const BinaryRelation& b = inst.b(i);
    const Domain& next = domains[i + 1];
    if (monotone) {
      const Value top = top_of(next);
      keep_if(domains[i], [&](Value j) { return b.contains(j, top); });
    } else {
      keep_if(domains[i], [&](Value j) {
        for (Value v : next) {
          if (b.contains(j, v)) return true;
        }
        return false;
      });
    }
    if (domains[i].empty()) {
      out.failed_var = i;
      out.domains = std::move(domains);
      return out;
    }
  }
  out.domains = std::move(domains);
  return out;
}

// Phase 1: the instance restricted to its B-coherent values, or nullopt.
inline std::optional<Instance> phase1_b_coherence(const Instance& inst) {
  ChainFilter f = chain_filter(inst, inst.domains, all_b_monotone(inst));
  if (!f.ok()) return std::nullopt;
  Instance out = inst;
  out.domains = std::move(f.domains);
  return out;
}

struct SweepOptions {
  bool strict = false;
  bool memoize = true;
};

namespace detail {

// One direction of the cost recurrence. Forward sets walk from the last layer
// towards the first; backward sets walk the other way over transposed pairs.
struct Direction {
  const Instance& inst;
  bool backward;

  int first() const { return backward ? 0 : inst.n - 1; }
  int step() const { return backward ? 1 : -1; }
  int pair(int layer) const { return backward ? layer - 1 : layer; }
  bool allowed(int pair_index, Value j, Value v) const {
    return backward ? inst.b(pair_index).contains(v, j) : inst.b(pair_index).contains(j, v);
  }
  int cost(int pair_index, Value j, Value v) const {
    return backward ? inst.c(pair_index).cost(v, j) : inst.c(pair_index).cost(j, v);
  }
};

inline CostSet explicit_support_union(const std::vector<std::pair<const CostSet*, int>>& parts) {
  ValueBits bits;
  for (auto [s, w] : parts) {
    for (int x : to_explicit(*s)) bits.set(x + w);
  }
  return classify(bits.values());
}

inline std::string describe_layer(const std::vector<CostSet>& sets, std::size_t base, const Domain& dom) {
  std::string out;
  for (Value v : dom) {
    if (!out.empty()) out += ", ";
    out += std::to_string(v) + ":" + to_string(sets[base + static_cast<std::size_t>(v)]);
  }
  return out;
}

// Per-layer cache of derived unions keyed by the two support words. Flat
// open addressing; reset() is O(1) through a generation stamp.
class DeriveMemo {
 public:
  explicit DeriveMemo(bool enabled) : enabled_(enabled) {}
  void reset(std::size_t expected) {
    if (!enabled_) return;
    std::size_t cap = 16;
    while (cap < 2 * expected) cap *= 2;
    if (slots_.size() < cap) {
      slots_.assign(cap, Slot{});
      generation_ = 0;
    }
    mask_ = slots_.size() - 1;
    ++generation_;
  }
  template <class F>
  std::optional<CostSet> get(std::uint32_t w0, std::uint32_t w1, F compute) {
    if (!enabled_) return compute();
    const std::uint64_t key = (std::uint64_t{w0} << 32) | w1;
    std::size_t h = static_cast<std::size_t>((key * 0x9E3779B97F4A7C15ull) >> 32) & mask_;
    for (;; h = (h + 1) & mask_) {
      Slot& slot = slots_[h];
      if (slot.generation != generation_) {
        slot.generation = generation_;
        slot.key = key;
        slot.value = compute();
        return slot.value;
      }
      if (slot.key == key) return slot.value;
    }
  }

 private:
  struct Slot {
    std::uint64_t key = 0;
    std::uint32_t generation = 0;
    std::optional<CostSet> value;
  };
  bool enabled_;
  std::vector<Slot> slots_;
  std::size_t mask_ = 0;
  std::uint32_t generation_ = 0;
};

}  // namespace detail

// Phase 2, general monotone engine: every vertex ORs the indicator words of
// its supports split by edge cost, O(d) per vertex.
inline std::vector<CostSet> sweep_structured(const Instance& inst, bool backward, const SweepOptions& opt,
                                             long& fallbacks) {
  const std::size_t width = static_cast<std::size_t>(inst.d) + 1;
  std::vector<CostSet> sets(static_cast<std::size_t>(inst.n) * width);
  detail::Direction dir{inst, backward};
  const int first = dir.first();
  for (Value j : inst.domains[first]) sets[first * width + j] = CostSet::singleton(1);

  std::vector<const CostSet*> row;
  std::vector<std::uint32_t> words(width, 0);
  detail::DeriveMemo memo(opt.memoize);
  for (int i = first + dir.step(); i >= 0 && i < inst.n; i += dir.step()) {
    const int nb = i - dir.step();
    const int pr = dir.pair(i);
    const Domain& nb_dom = inst.domains[nb];
    row.clear();
    for (Value v : nb_dom) row.push_back(&sets[nb * width + v]);
    const IndicatorWindow w = window_of(std::span<const CostSet* const>(row));
    for (std::size_t k = 0; k < nb_dom.size(); ++k) words[k] = IndicatorSummary::encode(*row[k], w);
    memo.reset(inst.domains[i].size());

    for (Value j : inst.domains[i]) {
      std::uint32_t w0 = 0, w1 = 0;
      for (std::size_t k = 0; k < nb_dom.size(); ++k) {
        const Value v = nb_dom[k];
        if (!dir.allowed(pr, j, v)) continue;
        (dir.cost(pr, j, v) ? w1 : w0) |= words[k];
      }
      std::optional<CostSet> s = memo.get(w0, w1, [&] { return derive_union(w0, w1, w); });
      if (!s) {
        if (opt.strict) {
          throw StructureError(nb, "support sets leave the indicator windows: " +
                                       detail::describe_layer(sets, nb * width, nb_dom));
        }
        ++fallbacks;
        std::vector<std::pair<const CostSet*, int>> parts;
        for (std::size_t k = 0; k < nb_dom.size(); ++k) {
          const Value v = nb_dom[k];
          if (dir.allowed(pr, j, v)) parts.emplace_back(row[k], dir.cost(pr, j, v));
        }
        s = detail::explicit_support_union(parts);
      }
      if (opt.strict && s->is_explicit()) {
        throw StructureError(i, "value " + std::to_string(j) + " has unstructured cost set " + to_string(*s));
      }
      sets[i * width + j] = std::move(*s);
    }
  }
  return sets;
}

namespace detail {

struct RankInterval {
  int lo = 0, hi = -1;
  bool empty() const { return lo > hi; }
};

inline RankInterval clip(RankInterval a, RankInterval b) { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

// Row j of `rel` (or column j when transposed) as a rank interval under pi.
inline RankInterval line_interval(const BinaryRelation& rel, const Ordering& pi, Value j, bool transposed) {
  RankInterval r{static_cast<int>(pi.size()), -1};
  for (int k = 0; k < static_cast<int>(pi.size()); ++k) {
    const Value v = pi.at(k);
    if (transposed ? rel.contains(v, j) : rel.contains(j, v)) {
      r.lo = std::min(r.lo, k);
      r.hi = std::max(r.hi, k);
    }
  }
  return r;
}

// Per-value support interval and cost split of one pair in one direction.
struct ConvexPair {
  std::vector<RankInterval> support;
  std::vector<RankInterval> special;  // cost-0 ranks, or cost-1 ranks when inverted
  bool inverted = false;

  ConvexPair(const BinaryRelation& b, const BinaryRelation& c, const Ordering& pi, bool transposed) {
    const Value d = b.max_value();
    const bool direct = transposed ? (is_col_convex(c, pi)) : (is_row_convex(c, pi));
    inverted = !direct;
    const BinaryRelation neg = inverted ? c.complement() : BinaryRelation();
    const BinaryRelation& sp = inverted ? neg : c;
    support.resize(static_cast<std::size_t>(d) + 1);
    special.resize(static_cast<std::size_t>(d) + 1);
    for (Value j = 0; j <= d; ++j) {
      support[j] = line_interval(b, pi, j, transposed);
      special[j] = line_interval(sp, pi, j, transposed);
    }
  }
};

}  // namespace detail

// Phase 2, convex engine: supports and cost classes are rank intervals, so each
// vertex needs at most three range queries on cumulative indicator counts.
inline std::vector<CostSet> sweep_convex(const Instance& inst, bool backward, const SweepOptions& opt,
                                         long& fallbacks) {
  if (!convex_applicable(inst)) {
    throw std::invalid_argument("convex engine needs row/column convex B and C (or complement of C) under pi");
  }
  const std::size_t width = static_cast<std::size_t>(inst.d) + 1;
  std::vector<CostSet> sets(static_cast<std::size_t>(inst.n) * width);
  detail::Direction dir{inst, backward};
  const int first = dir.first();
  for (Value j : inst.domains[first]) sets[first * width + j] = CostSet::singleton(1);

  const bool uniform = inst.uniform_b() && inst.uniform_c();
  std::optional<detail::ConvexPair> shared;
  std::vector<const CostSet*> row;
  std::vector<const CostSet*> by_rank(width, nullptr);
  std::vector<std::uint32_t> words(width, 0);
  detail::DeriveMemo memo(opt.memoize);
  for (int i = first + dir.step(); i >= 0 && i < inst.n; i += dir.step()) {
    const int nb = i - dir.step();
    const int pr = dir.pair(i);
    std::optional<detail::ConvexPair> local;
    if (uniform && !shared) shared.emplace(inst.b(pr), inst.c(pr), inst.pi, backward);
    if (!uniform) local.emplace(inst.b(pr), inst.c(pr), inst.pi, backward);
    const detail::ConvexPair& cp = uniform ? *shared : *local;

    const Domain& nb_dom = inst.domains[nb];
    row.clear();
    for (Value v : nb_dom) row.push_back(&sets[nb * width + v]);
    const IndicatorWindow w = window_of(std::span<const CostSet* const>(row));
    std::fill(words.begin(), words.end(), 0);
    std::fill(by_rank.begin(), by_rank.end(), nullptr);
    for (Value v : nb_dom) {
      const int r = inst.pi.rank(v);
      by_rank[r] = &sets[nb * width + v];
      words[r] = IndicatorSummary::encode(*by_rank[r], w);
    }
    const CumulativeIndicators cs(words);
    memo.reset(inst.domains[i].size());

    for (Value j : inst.domains[i]) {
      const detail::RankInterval sup = cp.support[j];
      const detail::RankInterval mid = detail::clip(sup, cp.special[j]);
      detail::RankInterval sides[2];
      if (mid.empty()) {
        sides[0] = sup;
        sides[1] = {};
      } else {
        sides[0] = {sup.lo, mid.lo - 1};
        sides[1] = {mid.hi + 1, sup.hi};
      }
      const std::uint32_t wmid = mid.empty() ? 0 : cs.range_word(mid.lo, mid.hi);
      std::uint32_t wside = 0;
      for (const auto& s : sides) {
        if (!s.empty()) wside |= cs.range_word(s.lo, s.hi);
      }
      const std::uint32_t w0 = cp.inverted ? wside : wmid;
      const std::uint32_t w1 = cp.inverted ? wmid : wside;
      std::optional<CostSet> s = memo.get(w0, w1, [&] { return derive_union(w0, w1, w); });
      if (!s) {
        if (opt.strict) {
          throw StructureError(nb, "support sets leave the indicator windows: " +
                                       detail::describe_layer(sets, nb * width, nb_dom));
        }
        ++fallbacks;
        std::vector<std::pair<const CostSet*, int>> parts;
        for (int r = sup.lo; r <= sup.hi; ++r) {
          if (!by_rank[r] || by_rank[r]->is_empty()) continue;
          const bool in_mid = !mid.empty() && r >= mid.lo && r <= mid.hi;
          parts.emplace_back(by_rank[r], in_mid != cp.inverted ? 0 : 1);
        }
        s = detail::explicit_support_union(parts);
      }
      if (opt.strict && s->is_explicit()) {
        throw StructureError(i, "value " + std::to_string(j) + " has unstructured cost set " + to_string(*s));
      }
      sets[i * width + j] = std::move(*s);
    }
  }
  return sets;
}

// Cumulative indicator counts of a row of sets (one position per set),
// relative to the row's own window.
inline CumulativeIndicators cumulative_indicators(std::span<const CostSet> row) {
  const IndicatorWindow w = window_of(row);
  std::vector<std::uint32_t> words;
  words.reserve(row.size());
  for (const CostSet& s : row) words.push_back(IndicatorSummary::encode(s, w));
  return CumulativeIndicators(words);
}

// Totals and the achievable N values from forward and backward sets.
inline StructuredCostTable assemble_table(const Instance& inst, std::vector<CostSet> fwd, std::vector<CostSet> bwd) {
  StructuredCostTable t(inst.n, inst.d);
  t.forward = std::move(fwd);
  t.backward = std::move(bwd);
  for (int i = 0; i < inst.n; ++i) {
    for (Value j : inst.domains[i]) {
      const std::size_t k = t.index(i, j);
      t.present[k] = 1;
      t.total[k] = minkowski(t.forward[k], t.backward[k], -kDummyEdgeWeight);
    }
  }
  detail::ValueBits bits;
  for (Value j : inst.domains[0]) {
    for (int x : to_explicit(t.f(0, j))) bits.set(x);
  }
  t.achievable = classify(bits.values());
  return t;
}

inline StructuredCostTable phase2_structured(const Instance& inst, const SweepOptions& opt, long& fallbacks) {
  auto fwd = sweep_structured(inst, false, opt, fallbacks);
  auto bwd = sweep_structured(inst, true, opt, fallbacks);
  return assemble_table(inst, std::move(fwd), std::move(bwd));
}

inline StructuredCostTable phase2_convex(const Instance& inst, const SweepOptions& opt, long& fallbacks) {
  auto fwd = sweep_convex(inst, false, opt, fallbacks);
  auto bwd = sweep_convex(inst, true, opt, fallbacks);
  return assemble_table(inst, std::move(fwd), std::move(bwd));
}

// Phase 3: D(N) restricted to the counts of complete B-coherent paths.
inline std::vector<int> phase3_prune_n(const Instance& inst, const std::vector<int>& achievable) {
  std::vector<int> out;
  std::set_intersection(inst.n_domain.begin(), inst.n_domain.end(), achievable.begin(), achievable.end(),
                        std::back_inserter(out));
  return out;
}

}  // namespace seqbin
