#pragma once

#include <cstdint>
#include <vector>

#include "cost_set.hpp"
#include "instance.hpp"

namespace seqbin {

// Weight of the edges out of the source and into the sink. Partial forward and
// backward sets include one such edge, so they are already counts + 1; a total
// c_f + c_b includes both and is shifted back by this once.
inline constexpr int kDummyEdgeWeight = 1;

using ExplicitSet = std::vector<int>;

// Forward, backward and total cost sets for every x_{i,j}, i in 0..n-1.
template <class Set>
struct CostTable {
  int n = 0;
  Value d = 0;
  std::vector<Set> forward;
  std::vector<Set> backward;
  std::vector<Set> total;
  std::vector<std::uint8_t> present;
  Set achievable{};  // N values of full paths: union of c_f over the first layer

  CostTable() = default;
  CostTable(int n_, Value d_)
      : n(n_), d(d_),
        forward(size()), backward(size()), total(size()), present(size(), 0) {}

  std::size_t size() const { return static_cast<std::size_t>(n) * static_cast<std::size_t>(d + 1); }
  std::size_t index(int i, Value j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(d + 1) + static_cast<std::size_t>(j);
  }
  bool has(int i, Value j) const { return present[index(i, j)] != 0; }
  const Set& f(int i, Value j) const { return forward[index(i, j)]; }
  const Set& b(int i, Value j) const { return backward[index(i, j)]; }
  const Set& c(int i, Value j) const { return total[index(i, j)]; }
  Set& f(int i, Value j) { return forward[index(i, j)]; }
  Set& b(int i, Value j) { return backward[index(i, j)]; }
  Set& c(int i, Value j) { return total[index(i, j)]; }
};

using ExplicitCostTable = CostTable<ExplicitSet>;
using StructuredCostTable = CostTable<CostSet>;

inline ExplicitCostTable to_explicit(const StructuredCostTable& t) {
  ExplicitCostTable out(t.n, t.d);
  out.present = t.present;
  for (std::size_t k = 0; k < t.size(); ++k) {
    out.forward[k] = to_explicit(t.forward[k]);
    out.backward[k] = to_explicit(t.backward[k]);
    out.total[k] = to_explicit(t.total[k]);
  }
  out.achievable = to_explicit(t.achievable);
  return out;
}

}  // namespace seqbin
