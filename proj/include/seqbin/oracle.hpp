#pragma once

#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cost_table.hpp"
#include "instance.hpp"
#include "propagator.hpp"

namespace seqbin {

inline constexpr double kDefaultEnumerationGuard = 1e7;
inline constexpr double kDefaultContinuityGuard = 1e6;

class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// SEQBIN_ORACLE_GUARD, when set to a positive number, replaces both guards.
inline double oracle_guard(double fallback) {
  if (const char* env = std::getenv("SEQBIN_ORACLE_GUARD")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0) return v;
  }
  return fallback;
}

inline double assignment_count(const Instance& inst) {
  double total = 1;
  for (const auto& dom : inst.domains) total *= static_cast<double>(dom.size());
  return total;
}

inline bool is_b_coherent(const std::vector<Value>& a, const Instance& inst) {
  for (int i = 0; i + 1 < static_cast<int>(a.size()); ++i) {
    if (!inst.b(i).contains(a[i], a[i + 1])) return false;
  }
  return true;
}

inline int count_violations(const std::vector<Value>& a, const Instance& inst) {
  if (static_cast<int>(a.size()) != inst.n) throw std::invalid_argument("assignment has the wrong length");
  if (!is_b_coherent(a, inst)) throw std::invalid_argument("assignment is not B-coherent");
  int k = 0;
  for (int i = 0; i + 1 < inst.n; ++i) k += inst.c(i).cost(a[i], a[i + 1]);
  return k;
}

inline int seqbin_count(const std::vector<Value>& a, const Instance& inst) { return count_violations(a, inst) + 1; }

// Calls visit(a, violations) for every B-coherent assignment, lexicographically.
inline void for_each_coherent(const Instance& inst, const std::function<void(const std::vector<Value>&, int)>& visit,
                              double guard = kDefaultEnumerationGuard) {
  const double limit = oracle_guard(guard);
  if (assignment_count(inst) > limit) {
    throw GuardExceeded("instance has more than " + std::to_string(static_cast<long long>(limit)) + " assignments");
  }
  std::vector<Value> a(inst.n);
  std::function<void(int, int)> rec = [&](int i, int k) {
    if (i == inst.n) {
      visit(a, k);
      return;
    }
    for (Value v : inst.domains[i]) {
      int step = 0;
      if (i > 0) {
        if (!inst.b(i - 1).contains(a[i - 1], v)) continue;
        step = inst.c(i - 1).cost(a[i - 1], v);
      }
      a[i] = v;
      rec(i + 1, k + step);
    }
  };
  rec(0, 0);
}

// Exact domain consistency by enumeration.
inline PropagationResult brute_force_dc(const Instance& inst) {
  inst.validate();
  const std::size_t width = static_cast<std::size_t>(inst.d) + 1;
  std::vector<std::uint8_t> keep(static_cast<std::size_t>(inst.n) * width, 0);
  std::vector<std::uint8_t> in_n(static_cast<std::size_t>(inst.n) + 2, 0), hit_n(in_n.size(), 0);
  for (int x : inst.n_domain) {
    if (x >= 0 && x < static_cast<int>(in_n.size())) in_n[x] = 1;
  }
  for_each_coherent(inst, [&](const std::vector<Value>& a, int k) {
    if (!in_n[k + 1]) return;
    hit_n[k + 1] = 1;
    for (int i = 0; i < inst.n; ++i) keep[i * width + a[i]] = 1;
  });
  PropagationResult r;
  r.mode = Engine::PathDP;
  r.iterations = 1;
  r.domains.resize(inst.n);
  for (int i = 0; i < inst.n; ++i) {
    for (Value v : inst.domains[i]) {
      if (keep[i * width + v]) {
        r.domains[i].push_back(v);
      } else {
        r.removed.emplace_back(i, v);
      }
    }
  }
  for (int x = 0; x < static_cast<int>(hit_n.size()); ++x) {
    if (hit_n[x]) r.n_domain.push_back(x);
  }
  if (r.n_domain.empty()) {
    r.status = Status::Failed;
    // report the first domain that has no surviving value
    for (int i = 0; i < inst.n; ++i) {
      if (r.domains[i].empty()) {
        r.failed_var = i;
        break;
      }
    }
  }
  return r;
}

// Totals c(x_{i,j}) and achievable N values by enumeration; forward and
// backward sets stay empty.
inline ExplicitCostTable exact_cost_sets(const Instance& inst) {
  inst.validate();
  ExplicitCostTable t(inst.n, inst.d);
  const std::size_t width = static_cast<std::size_t>(inst.d) + 1;
  const int span = inst.n + 2;
  std::vector<std::vector<std::uint8_t>> seen(t.size(), std::vector<std::uint8_t>());
  std::vector<std::uint8_t> all(span, 0);
  for (int i = 0; i < inst.n; ++i) {
    for (Value v : inst.domains[i]) t.present[i * width + v] = 1;
  }
  for_each_coherent(inst, [&](const std::vector<Value>& a, int k) {
    all[k + 1] = 1;
    for (int i = 0; i < inst.n; ++i) {
      auto& s = seen[i * width + a[i]];
      if (s.empty()) s.assign(span, 0);
      s[k + 1] = 1;
    }
  });
  for (std::size_t idx = 0; idx < t.size(); ++idx) {
    for (int x = 0; x < static_cast<int>(seen[idx].size()); ++x) {
      if (seen[idx][x]) t.total[idx].push_back(x);
    }
  }
  for (int x = 0; x < span; ++x) {
    if (all[x]) t.achievable.push_back(x);
  }
  return t;
}

// Every single-variable change between B-coherent assignments moves the
// violation count by at most one.
inline bool is_counting_continuous(const Instance& inst) {
  inst.validate();
  bool ok = true;
  for_each_coherent(
      inst,
      [&](const std::vector<Value>& a, int k) {
        if (!ok) return;
        std::vector<Value> b = a;
        for (int i = 0; i < inst.n && ok; ++i) {
          for (Value v : inst.domains[i]) {
            if (v == a[i]) continue;
            b[i] = v;
            if (is_b_coherent(b, inst)) {
              const int k2 = count_violations(b, inst);
              if (k2 < k - 1 || k2 > k + 1) ok = false;
            }
          }
          b[i] = a[i];
        }
      },
      kDefaultContinuityGuard);
  return ok;
}

}  // namespace seqbin
