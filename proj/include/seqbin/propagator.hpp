#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cost_set.hpp"
#include "engines.hpp"
#include "graph.hpp"
#include "instance.hpp"
#include "legacy.hpp"
#include "structure.hpp"

namespace seqbin {

enum class Engine { Auto, Structured, Convex, PathDP, Legacy };
enum class Status { Consistent, Failed };

inline std::string to_string(Engine e) {
  switch (e) {
    case Engine::Auto: return "auto";
    case Engine::Structured: return "structured";
    case Engine::Convex: return "convex";
    case Engine::PathDP: return "pathdp";
    case Engine::Legacy: return "legacy";
  }
  return "?";
}

inline std::optional<Engine> engine_from_name(const std::string& s) {
  for (Engine e : {Engine::Auto, Engine::Structured, Engine::Convex, Engine::PathDP, Engine::Legacy}) {
    if (to_string(e) == s) return e;
  }
  return std::nullopt;
}

inline std::string to_string(Status s) { return s == Status::Consistent ? "consistent" : "failed"; }

struct PropagationResult {
  Status status = Status::Consistent;
  std::vector<Domain> domains;
  std::vector<int> n_domain;
  std::vector<std::pair<int, Value>> removed;  // (variable, value), variables from 0
  int iterations = 0;
  Engine mode = Engine::Auto;
  long fallback_count = 0;
  int failed_var = -1;  // first emptied domain; -1 when D(N) emptied or no failure
  std::optional<StructureReport> structure;

  bool failed() const { return status == Status::Failed; }
};

struct PropagateOptions {
  std::optional<bool> strict;     // default: on when every B is monotone under pi
  bool report_structure = false;  // structured and convex engines only
  bool memoize = true;
};

// The builtin increasing-nvalue pairing: C is eq and B is leq.
inline bool is_increasing_nvalue_pairing(const Instance& inst) {
  for (const auto& b : inst.b_list) {
    if (b.kind() != RelationKind::Leq) return false;
  }
  for (const auto& c : inst.c_list) {
    if (c.kind() != RelationKind::Eq) return false;
  }
  return !inst.b_list.empty() && !inst.c_list.empty();
}

inline Engine select_engine(const Instance& inst) {
  const bool monotone = all_b_monotone(inst);
  if ((monotone || is_increasing_nvalue_pairing(inst)) && convex_applicable(inst)) return Engine::Convex;
  if (monotone) return Engine::Structured;
  return Engine::PathDP;
}

namespace detail {

inline void record_removed(const std::vector<Domain>& before, const std::vector<Domain>& after,
                           std::vector<std::pair<int, Value>>& removed) {
  for (std::size_t i = 0; i < before.size(); ++i) {
    for (Value v : before[i]) {
      if (!in_domain(after[i], v)) removed.emplace_back(static_cast<int>(i), v);
    }
  }
}

inline PropagationResult fail_at(PropagationResult r, int var) {
  r.status = Status::Failed;
  r.failed_var = var;
  return r;
}

}  // namespace detail

// Phase 4 on structured totals: keep x_{i,j} iff its total meets the pruned D(N).
inline PropagationResult phase4_prune_values(const Instance& inst, const StructuredCostTable& ct,
                                             const std::vector<int>& pruned_n) {
  PropagationResult r;
  r.n_domain = pruned_n;
  r.iterations = 1;
  const ParityPrefix pp(pruned_n, inst.max_count() + 2);
  r.domains.resize(inst.n);
  for (int i = 0; i < inst.n; ++i) {
    for (Value j : inst.domains[i]) {
      if (intersects(ct.c(i, j), pp)) {
        r.domains[i].push_back(j);
      } else {
        r.removed.emplace_back(i, j);
      }
    }
  }
  for (int i = 0; i < inst.n; ++i) {
    if (r.domains[i].empty()) return detail::fail_at(std::move(r), i);
  }
  return r;
}

inline PropagationResult phase4_prune_values(const Instance& inst, const ExplicitCostTable& ct,
                                             const std::vector<int>& pruned_n) {
  PropagationResult r;
  r.n_domain = pruned_n;
  r.iterations = 1;
  std::vector<std::uint8_t> in_n(static_cast<std::size_t>(inst.max_count()) + 3, 0);
  for (int x : pruned_n) {
    if (x >= 0 && x < static_cast<int>(in_n.size())) in_n[x] = 1;
  }
  r.domains.resize(inst.n);
  for (int i = 0; i < inst.n; ++i) {
    for (Value j : inst.domains[i]) {
      bool hit = false;
      for (int x : ct.c(i, j)) {
        if (x >= 0 && x < static_cast<int>(in_n.size()) && in_n[x]) {
          hit = true;
          break;
        }
      }
      if (hit) {
        r.domains[i].push_back(j);
      } else {
        r.removed.emplace_back(i, j);
      }
    }
  }
  for (int i = 0; i < inst.n; ++i) {
    if (r.domains[i].empty()) return detail::fail_at(std::move(r), i);
  }
  return r;
}

inline PropagationResult propagate(const Instance& inst, Engine engine = Engine::Auto,
                                   const PropagateOptions& opt = {}) {
  inst.validate();
  if (engine == Engine::Auto) engine = select_engine(inst);
  PropagationResult r;
  r.mode = engine;

  if (engine == Engine::Legacy) {
    LegacyOutcome lo = legacy_fixpoint(inst);
    r.iterations = lo.iterations;
    r.domains = std::move(lo.domains);
    r.n_domain = std::move(lo.n_domain);
    detail::record_removed(inst.domains, r.domains, r.removed);
    if (lo.failed) return detail::fail_at(std::move(r), lo.failed_var);
    return r;
  }

  const bool monotone = all_b_monotone(inst);
  ChainFilter f = chain_filter(inst, inst.domains, monotone);
  if (!f.ok()) {
    r.domains = std::move(f.domains);
    r.n_domain = inst.n_domain;
    r.iterations = 1;
    detail::record_removed(inst.domains, r.domains, r.removed);
    return detail::fail_at(std::move(r), f.failed_var);
  }
  Instance coherent = inst;
  coherent.domains = std::move(f.domains);

  SweepOptions sweep;
  sweep.strict = opt.strict.value_or(monotone);
  sweep.memoize = opt.memoize;
  long fallbacks = 0;

  PropagationResult p4;
  std::optional<StructureReport> report;
  std::vector<int> pruned_n;
  if (engine == Engine::PathDP) {
    const ExplicitCostTable ct = pathdp(build_graph(coherent));
    pruned_n = phase3_prune_n(coherent, ct.achievable);
    if (!pruned_n.empty()) p4 = phase4_prune_values(coherent, ct, pruned_n);
  } else {
    if (engine == Engine::Structured && sweep.strict && !monotone) {
      throw std::invalid_argument("strict structured propagation needs B monotone under pi");
    }
    const StructuredCostTable ct = engine == Engine::Convex ? phase2_convex(coherent, sweep, fallbacks)
                                                            : phase2_structured(coherent, sweep, fallbacks);
    pruned_n = phase3_prune_n(coherent, to_explicit(ct.achievable));
    if (!pruned_n.empty()) p4 = phase4_prune_values(coherent, ct, pruned_n);
    if (opt.report_structure) report = analyze_structure(coherent, ct);
  }

  r.fallback_count = fallbacks;
  r.structure = std::move(report);
  r.iterations = 1;
  if (pruned_n.empty()) {
    r.domains = coherent.domains;
    r.n_domain = {};
    detail::record_removed(inst.domains, r.domains, r.removed);
    return detail::fail_at(std::move(r), -1);
  }
  r.domains = std::move(p4.domains);
  r.n_domain = std::move(p4.n_domain);
  detail::record_removed(inst.domains, r.domains, r.removed);
  if (p4.failed()) return detail::fail_at(std::move(r), p4.failed_var);
  return r;
}

// Forward, backward and total sets with the chosen engine, after phase 1.
inline std::optional<ExplicitCostTable> cost_table(const Instance& inst, Engine engine, long* fallbacks = nullptr) {
  auto coherent = phase1_b_coherence(inst);
  if (!coherent) return std::nullopt;
  if (engine == Engine::Auto) engine = select_engine(inst);
  if (engine == Engine::PathDP || engine == Engine::Legacy) return pathdp(build_graph(*coherent));
  SweepOptions sweep;
  long fb = 0;
  const StructuredCostTable ct =
      engine == Engine::Convex ? phase2_convex(*coherent, sweep, fb) : phase2_structured(*coherent, sweep, fb);
  if (fallbacks) *fallbacks += fb;
  return to_explicit(ct);
}

}  // namespace seqbin
