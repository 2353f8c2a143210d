#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "relations.hpp"

namespace seqbin {

using Domain = std::vector<Value>;  // sorted, distinct

// A SEQBIN instance over variables X_0..X_{n-1} with values 0..d.
// Pair i relates X_i and X_{i+1}; b_list / c_list hold one relation for all
// pairs or one per pair.
struct Instance {
  int n = 0;
  Value d = 0;
  std::vector<Domain> domains;
  std::vector<int> n_domain;  // D(N), sorted
  std::vector<BinaryRelation> b_list;
  std::vector<BinaryRelation> c_list;
  Ordering pi;

  const BinaryRelation& b(int pair) const { return b_list.size() == 1 ? b_list[0] : b_list[pair]; }
  const BinaryRelation& c(int pair) const { return c_list.size() == 1 ? c_list[0] : c_list[pair]; }
  bool uniform_b() const { return b_list.size() == 1; }
  bool uniform_c() const { return c_list.size() == 1; }
  int pairs() const { return std::max(n - 1, 0); }

  // Largest possible N value: every pair violated.
  int max_count() const { return std::max(n - 1, 0) + 1; }

  void validate() const {
    if (n < 1) throw std::invalid_argument("instance needs at least one variable");
    if (d < 0) throw std::invalid_argument("value_max must be non-negative");
    if (static_cast<int>(domains.size()) != n) {
      throw std::invalid_argument("expected " + std::to_string(n) + " domains, got " + std::to_string(domains.size()));
    }
    for (int i = 0; i < n; ++i) {
      const Domain& dom = domains[i];
      if (dom.empty()) throw std::invalid_argument("domain of X" + std::to_string(i) + " is empty");
      for (std::size_t k = 0; k < dom.size(); ++k) {
        if (dom[k] < 0 || dom[k] > d) {
          throw std::invalid_argument("domain of X" + std::to_string(i) + " has value " + std::to_string(dom[k]) +
                                      " outside 0.." + std::to_string(d));
        }
        if (k && dom[k] <= dom[k - 1]) throw std::invalid_argument("domain of X" + std::to_string(i) + " is not sorted");
      }
    }
    for (std::size_t k = 0; k < n_domain.size(); ++k) {
      if (n_domain[k] < 0) throw std::invalid_argument("D(N) has a negative value");
      if (k && n_domain[k] <= n_domain[k - 1]) throw std::invalid_argument("D(N) is not sorted");
    }
    auto check_list = [&](const std::vector<BinaryRelation>& list, const char* name) {
      if (list.size() != 1 && static_cast<int>(list.size()) != pairs()) {
        if (!(list.empty() && pairs() == 0)) {
          throw std::invalid_argument(std::string(name) + " needs 1 or " + std::to_string(pairs()) + " relations");
        }
      }
      for (const auto& r : list) {
        if (r.max_value() != d) throw std::invalid_argument(std::string(name) + " relation has the wrong value_max");
      }
    };
    check_list(b_list, "B");
    check_list(c_list, "C");
    if (pi.max_value() != d) throw std::invalid_argument("ordering pi must cover values 0..value_max");
  }

  friend bool operator==(const Instance&, const Instance&) = default;
};

inline Domain normalize_domain(Domain v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline Domain full_domain(Value d) {
  Domain v(static_cast<std::size_t>(d) + 1);
  for (Value x = 0; x <= d; ++x) v[x] = x;
  return v;
}

inline Instance make_instance(std::vector<Domain> domains, std::vector<int> n_domain, BinaryRelation b,
                              BinaryRelation c, std::optional<Ordering> pi = std::nullopt) {
  Instance inst;
  inst.n = static_cast<int>(domains.size());
  inst.d = b.max_value();
  for (auto& dom : domains) dom = normalize_domain(std::move(dom));
  inst.domains = std::move(domains);
  inst.n_domain = normalize_domain(std::move(n_domain));
  inst.b_list = {std::move(b)};
  inst.c_list = {std::move(c)};
  inst.pi = pi ? *pi : Ordering::identity(inst.d);
  inst.validate();
  return inst;
}

inline bool in_domain(const Domain& dom, Value v) { return std::binary_search(dom.begin(), dom.end(), v); }

}  // namespace seqbin
