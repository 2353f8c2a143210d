#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "instance.hpp"
#include "relations.hpp"

namespace seqbin {

// Alternating chain where the bounds-based filter removes one value per pass
// from the right end of the pattern while domain consistency prunes it all at
// once. p >= 1 controls the length (n = 2p + 2); legacy needs p + 2 passes.
inline Instance slow_bounds_chain(int p) {
  if (p < 1) throw std::invalid_argument("slow_bounds_chain needs p >= 1");
  const int last = 2 * p + 1;  // 1-based position of the last pattern variable
  const int n = last + 1;
  std::vector<Domain> doms{{0, 3}};
  for (int i = 2; i <= last; ++i) doms.push_back(i % 2 == 0 ? Domain{1, 2} : Domain{0, 2});
  doms.push_back({4});
  std::vector<int> n_domain;
  for (int x = 2; x <= n; x += 2) n_domain.push_back(x);
  const auto b = BinaryRelation::from_pairs(4, {{0, 1}, {1, 0}, {1, 2}, {2, 2}, {2, 4}, {0, 4}, {3, 2}});
  const auto c = BinaryRelation::from_pairs(4, {{0, 1}, {1, 0}, {0, 4}});
  return make_instance(std::move(doms), std::move(n_domain), b, c);
}

// Upward closed under the identity order: row j is {k >= t_j}, t non-increasing.
inline BinaryRelation random_monotone_b(std::mt19937& rng, Value d) {
  std::vector<int> t(d + 1);
  std::uniform_int_distribution<int> pick(0, d + 1);
  for (auto& x : t) x = pick(rng);
  std::sort(t.rbegin(), t.rend());
  return BinaryRelation::from_predicate(d, [&](Value j, Value k) { return k >= t[j]; });
}

inline BinaryRelation random_c(std::mt19937& rng, Value d, double density) {
  std::bernoulli_distribution on(density);
  return BinaryRelation::from_predicate(d, [&](Value, Value) { return on(rng); });
}

inline Domain random_domain(std::mt19937& rng, Value d) {
  Domain dom;
  while (dom.empty()) {
    for (Value v = 0; v <= d; ++v) {
      if (rng() % 2) dom.push_back(v);
    }
  }
  return dom;
}

// Random instance with monotone B under identity. Per-pair relations when
// per_pair is set.
inline Instance random_monotone_instance(std::mt19937& rng, int n, Value d, bool per_pair = false) {
  Instance inst;
  inst.n = n;
  inst.d = d;
  for (int i = 0; i < n; ++i) inst.domains.push_back(random_domain(rng, d));
  std::uniform_real_distribution<double> dens(0.1, 0.9);
  const int count = per_pair ? std::max(n - 1, 1) : 1;
  const double density = dens(rng);
  for (int k = 0; k < count; ++k) {
    inst.b_list.push_back(random_monotone_b(rng, d));
    inst.c_list.push_back(random_c(rng, d, per_pair ? dens(rng) : density));
  }
  for (int x = 1; x <= n; ++x) {
    if (rng() % 2) inst.n_domain.push_back(x);
  }
  if (inst.n_domain.empty()) inst.n_domain.push_back(1 + static_cast<int>(rng() % n));
  inst.pi = Ordering::identity(d);
  return inst;
}

enum class BenchFamily { Change, Smooth, IncreasingNValue, RandomMonotone };

inline std::string to_string(BenchFamily f) {
  switch (f) {
    case BenchFamily::Change: return "change";
    case BenchFamily::Smooth: return "smooth";
    case BenchFamily::IncreasingNValue: return "incnvalue";
    case BenchFamily::RandomMonotone: return "random-monotone";
  }
  return "?";
}

inline std::optional<BenchFamily> bench_family_from_name(const std::string& s) {
  for (auto f : {BenchFamily::Change, BenchFamily::Smooth, BenchFamily::IncreasingNValue, BenchFamily::RandomMonotone}) {
    if (to_string(f) == s) return f;
  }
  return std::nullopt;
}

// Deterministic benchmark instance. Catalog families use full domains; the
// random-monotone family keeps about two thirds of the values. N is left wide
// open so the run exercises every phase without failing early.
inline Instance bench_instance(BenchFamily family, int n, Value d, unsigned seed = 1) {
  std::mt19937 rng(seed * 7919u + static_cast<unsigned>(n) * 31u + static_cast<unsigned>(d));
  std::vector<Domain> doms(n, full_domain(d));
  if (family == BenchFamily::RandomMonotone) {
    for (auto& dom : doms) {
      dom.clear();
      for (Value v = 0; v <= d; ++v) {
        if (rng() % 3 != 0) dom.push_back(v);
      }
      if (dom.empty()) dom.push_back(static_cast<Value>(rng() % (d + 1)));
    }
  }
  std::vector<int> n_domain;
  for (int x = 1; x <= n; ++x) n_domain.push_back(x);
  switch (family) {
    case BenchFamily::Change: return make_change(n, d, std::move(doms), std::move(n_domain), RelationKind::Eq);
    case BenchFamily::Smooth: return make_smooth(n, d, std::move(doms), std::move(n_domain), 2);
    case BenchFamily::IncreasingNValue: return make_increasing_nvalue(n, d, std::move(doms), std::move(n_domain));
    case BenchFamily::RandomMonotone: {
      std::vector<int> t(d + 1);
      for (auto& x : t) x = static_cast<int>(rng() % (d / 2 + 1));
      std::sort(t.rbegin(), t.rend());
      const auto b = BinaryRelation::from_predicate(d, [&](Value j, Value k) { return k >= t[j]; });
      std::bernoulli_distribution on(0.5);
      const auto c = BinaryRelation::from_predicate(d, [&](Value, Value) { return on(rng); });
      return make_instance(std::move(doms), std::move(n_domain), b, c);
    }
  }
  throw std::invalid_argument("unknown family");
}

}  // namespace seqbin
