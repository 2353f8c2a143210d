#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "instance.hpp"
#include "relations.hpp"

namespace seqbin {

namespace detail {

inline void check_catalog_shape(int n, const std::vector<Domain>& domains) {
  if (static_cast<int>(domains.size()) != n) {
    throw std::invalid_argument("expected " + std::to_string(n) + " domains, got " + std::to_string(domains.size()));
  }
}

}  // namespace detail

// CHANGE: N - 1 counts the consecutive pairs violating `op`; B is TRUE.
inline Instance make_change(int n, Value d, std::vector<Domain> domains, std::vector<int> n_domain, RelationKind op) {
  switch (op) {
    case RelationKind::Eq: case RelationKind::Neq: case RelationKind::Lt:
    case RelationKind::Leq: case RelationKind::Gt: case RelationKind::Geq: break;
    default: throw std::invalid_argument("change needs one of eq, neq, lt, leq, gt, geq");
  }
  detail::check_catalog_shape(n, domains);
  return make_instance(std::move(domains), std::move(n_domain), BinaryRelation::builtin(RelationKind::True, d),
                       BinaryRelation::builtin(op, d));
}

// SMOOTH: N - 1 counts the pairs with |X_i - X_{i+1}| <= cst.
inline Instance make_smooth(int n, Value d, std::vector<Domain> domains, std::vector<int> n_domain, int cst) {
  if (cst < 0) throw std::invalid_argument("smooth needs cst >= 0");
  detail::check_catalog_shape(n, domains);
  return make_instance(std::move(domains), std::move(n_domain), BinaryRelation::builtin(RelationKind::True, d),
                       BinaryRelation::builtin(RelationKind::AbsGt, d, cst));
}

// INCREASING_NVALUE: non-decreasing sequence, N = number of distinct values.
inline Instance make_increasing_nvalue(int n, Value d, std::vector<Domain> domains, std::vector<int> n_domain) {
  detail::check_catalog_shape(n, domains);
  return make_instance(std::move(domains), std::move(n_domain), BinaryRelation::builtin(RelationKind::Leq, d),
                       BinaryRelation::builtin(RelationKind::Eq, d));
}

}  // namespace seqbin
