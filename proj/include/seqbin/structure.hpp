#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "cost_set.hpp"
#include "cost_table.hpp"
#include "instance.hpp"

namespace seqbin {

enum class LayerKind { AllZipper, Mixed, AllIZipper };

inline std::string to_string(LayerKind k) {
  switch (k) {
    case LayerKind::AllZipper: return "zipper";
    case LayerKind::Mixed: return "mixed";
    case LayerKind::AllIZipper: return "i-zipper";
  }
  return "?";
}

struct StructureViolation {
  int layer;      // 0-based variable index, -1 for whole-chain rules
  bool backward;  // checked on backward sets
  std::string rule;
  std::string detail;
};

// Shape of the forward sets layer by layer. n1 is the number of leading layers
// whose sets all contain an interval, n2 is one past the last layer with an
// interval (both counted from 1, so the zipper block is layers n2..n).
struct StructureReport {
  std::vector<std::vector<CostSet>> distinct_forward;
  std::vector<LayerKind> kinds;
  int n1 = 0;
  int n2 = 1;
  std::vector<StructureViolation> violations;

  int mixed_width() const { return n2 - n1 - 1; }
  std::vector<int> block_layers(LayerKind k) const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(kinds.size()); ++i) {
      if (kinds[i] == k) out.push_back(i + 1);
    }
    return out;
  }
};

namespace detail {

inline std::vector<CostSet> layer_sets(const Instance& inst, const StructuredCostTable& ct, int i, bool backward) {
  std::vector<CostSet> out;
  for (Value j : inst.domains[i]) {
    if (ct.has(i, j)) out.push_back(backward ? ct.b(i, j) : ct.f(i, j));
  }
  return out;
}

inline void check_layer(const Instance& inst, const StructuredCostTable& ct, int i, bool backward,
                        std::vector<StructureViolation>& out) {
  auto add = [&](std::string rule, std::string detail) {
    out.push_back({i, backward, std::move(rule), std::move(detail)});
  };
  std::vector<Value> vals;
  for (Value j : inst.domains[i]) {
    if (ct.has(i, j)) vals.push_back(j);
  }
  if (vals.empty()) return;
  auto set_of = [&](Value j) -> const CostSet& { return backward ? ct.b(i, j) : ct.f(i, j); };

  int lb_min = set_of(vals[0]).lb(), lb_max = lb_min, ub_min = set_of(vals[0]).ub(), ub_max = ub_min;
  bool any_iz = false;
  int max_b = 0, min_c = 0;
  for (Value j : vals) {
    const CostSet& s = set_of(j);
    if (!s.is_structured()) {
      add("uniqueness", std::to_string(j) + " -> " + to_string(s));
      continue;
    }
    lb_min = std::min(lb_min, s.lb());
    lb_max = std::max(lb_max, s.lb());
    ub_min = std::min(ub_min, s.ub());
    ub_max = std::max(ub_max, s.ub());
    if (s.is_izipper()) {
      if (s.b() - s.a() > 4 || s.d() - s.c() > 4) add("bounded-holes", std::to_string(j) + " -> " + to_string(s));
      if (!any_iz) {
        max_b = s.b();
        min_c = s.c();
        any_iz = true;
      } else {
        max_b = std::max(max_b, s.b());
        min_c = std::min(min_c, s.c());
      }
    }
  }
  // pairwise intersecting intervals share a common point
  if (any_iz && max_b > min_c) add("overlapping", "max b " + std::to_string(max_b) + " > min c " + std::to_string(min_c));
  if (lb_max - lb_min > 2) add("closeness", "lb spread " + std::to_string(lb_max - lb_min));
  if (ub_max - ub_min > 2) add("closeness", "ub spread " + std::to_string(ub_max - ub_min));

  // directional closeness for j below k in pi
  for (Value j : vals) {
    for (Value k : vals) {
      if (!inst.pi.precedes(j, k)) continue;
      const int uj = set_of(j).ub(), uk = set_of(k).ub();
      if (!((uj >= uk && uj <= uk + 1) || (uk >= uj && uk <= uj + 2))) {
        add("ub-direction", std::to_string(j) + "," + std::to_string(k));
      }
      const int lj = set_of(j).lb(), lk = set_of(k).lb();
      if (!((lj >= lk && lj <= lk + 2) || (lk >= lj && lk <= lj + 1))) {
        add("lb-direction", std::to_string(j) + "," + std::to_string(k));
      }
    }
  }
}

}  // namespace detail

inline StructureReport analyze_structure(const Instance& inst, const StructuredCostTable& ct) {
  StructureReport r;
  const int n = inst.n;
  r.distinct_forward.resize(n);
  r.kinds.resize(n);
  int last_interval_layer = 0;  // 1-based, 0 = none
  for (int i = 0; i < n; ++i) {
    std::vector<CostSet> sets = detail::layer_sets(inst, ct, i, false);
    bool any_iv = false, all_iv = !sets.empty();
    for (const CostSet& s : sets) {
      const bool iv = s.has_interval();
      any_iv = any_iv || iv;
      all_iv = all_iv && iv;
      if (std::find(r.distinct_forward[i].begin(), r.distinct_forward[i].end(), s) == r.distinct_forward[i].end()) {
        r.distinct_forward[i].push_back(s);
      }
    }
    r.kinds[i] = all_iv ? LayerKind::AllIZipper : (any_iv ? LayerKind::Mixed : LayerKind::AllZipper);
    if (any_iv) last_interval_layer = i + 1;
  }
  r.n2 = last_interval_layer + 1;
  r.n1 = 0;
  while (r.n1 < n && r.kinds[r.n1] == LayerKind::AllIZipper) ++r.n1;

  for (int i = 0; i < n; ++i) {
    detail::check_layer(inst, ct, i, false, r.violations);
    detail::check_layer(inst, ct, i, true, r.violations);
  }
  if (!(r.n1 < r.n2 && r.n2 <= r.n1 + 3)) {
    r.violations.push_back({-1, false, "blocks",
                            "n1 = " + std::to_string(r.n1) + ", n2 = " + std::to_string(r.n2)});
  }
  for (int layer = r.n1 + 3; layer <= n; ++layer) {
    if (layer < 1) continue;
    const auto& ds = r.distinct_forward[layer - 1];
    if (ds.size() > 4) {
      r.violations.push_back({layer - 1, false, "framed-count", std::to_string(ds.size()) + " distinct sets"});
    }
  }
  // the pi-top value keeps an interval up to the layer before the last
  // interval layer (n2 - 1), which is never past n1 + 1
  for (int layer = 1; layer <= std::min(r.n2 - 2, n); ++layer) {
    const Domain& dom = inst.domains[layer - 1];
    Value top = dom.front();
    for (Value v : dom) {
      if (inst.pi.rank(v) > inst.pi.rank(top)) top = v;
    }
    if (ct.has(layer - 1, top) && !ct.f(layer - 1, top).has_interval()) {
      r.violations.push_back({layer - 1, false, "top-interval", "top value " + std::to_string(top)});
    }
  }
  return r;
}

// Support-level consequences of two forward upper bounds p, p+2 (or lower
// bounds p+2, p) on values j below k. Returns one message per failed case.
inline std::vector<std::string> probe_bound_gaps(const Instance& inst, const StructuredCostTable& ct) {
  std::vector<std::string> out;
  for (int i = 0; i + 1 < inst.n; ++i) {
    const BinaryRelation& b = inst.b(i);
    const BinaryRelation& c = inst.c(i);
    const Domain& dom = inst.domains[i];
    const Domain& nxt = inst.domains[i + 1];
    for (Value j : dom) {
      for (Value k : dom) {
        if (!inst.pi.precedes(j, k) || !ct.has(i, j) || !ct.has(i, k)) continue;
        const std::string where = "layer " + std::to_string(i) + " values " + std::to_string(j) + "," + std::to_string(k);
        const CostSet& fj = ct.f(i, j);
        const CostSet& fk = ct.f(i, k);
        if (fk.ub() == fj.ub() + 2) {
          const int p = fj.ub();
          for (Value u : nxt) {
            if (b.contains(j, u) && ct.f(i + 1, u).ub() != p) out.push_back("ub all-supports " + where);
          }
          bool found = false;
          for (Value v : nxt) {
            for (Value w : nxt) {
              if (!inst.pi.precedes(v, w) || b.contains(j, v) || !b.contains(j, w)) continue;
              if (ct.f(i + 1, v).ub() == p + 1 && ct.f(i + 1, w).ub() == p && c.cost(k, v) == 1 && c.cost(j, w) == 0) {
                found = true;
              }
            }
          }
          if (!found) out.push_back("ub witness " + where);
        }
        if (fj.lb() == fk.lb() + 2) {
          const int p = fk.lb();
          for (Value u : nxt) {
            if (b.contains(j, u) && ct.f(i + 1, u).lb() != p + 1) out.push_back("lb all-supports " + where);
          }
          bool found = false;
          for (Value v : nxt) {
            for (Value w : nxt) {
              if (!inst.pi.precedes(v, w) || b.contains(j, v) || !b.contains(j, w)) continue;
              if (ct.f(i + 1, v).lb() == p && ct.f(i + 1, w).lb() == p + 1 && c.cost(k, v) == 0 && c.cost(j, w) == 1) {
                found = true;
              }
            }
          }
          if (!found) out.push_back("lb witness " + where);
        }
      }
    }
  }
  return out;
}

}  // namespace seqbin
