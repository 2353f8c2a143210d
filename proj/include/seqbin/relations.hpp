#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace seqbin {

using Value = int;

// Total order over the values 0..d. perm()[r] is the value of rank r, so
// perm().front() is the bottom of the order and perm().back() the top.
class Ordering {
 public:
  Ordering() = default;

  explicit Ordering(std::vector<Value> perm) : perm_(std::move(perm)), rank_(perm_.size(), -1) {
    for (std::size_t r = 0; r < perm_.size(); ++r) {
      const Value v = perm_[r];
      if (v < 0 || static_cast<std::size_t>(v) >= perm_.size() || rank_[v] != -1) {
        throw std::invalid_argument("ordering is not a permutation of 0..d");
      }
      rank_[v] = static_cast<int>(r);
    }
  }

  static Ordering identity(Value d) {
    std::vector<Value> p(static_cast<std::size_t>(d) + 1);
    std::iota(p.begin(), p.end(), 0);
    return Ordering(std::move(p));
  }

  static Ordering reversed(Value d) {
    std::vector<Value> p(static_cast<std::size_t>(d) + 1);
    std::iota(p.rbegin(), p.rend(), 0);
    return Ordering(std::move(p));
  }

  Value max_value() const { return static_cast<Value>(perm_.size()) - 1; }
  std::size_t size() const { return perm_.size(); }
  const std::vector<Value>& perm() const { return perm_; }
  Value at(int rank) const { return perm_[rank]; }
  int rank(Value v) const { return rank_[v]; }
  bool precedes(Value a, Value b) const { return rank_[a] < rank_[b]; }
  Value bottom() const { return perm_.front(); }
  Value top() const { return perm_.back(); }

  bool is_identity() const {
    for (std::size_t r = 0; r < perm_.size(); ++r) {
      if (perm_[r] != static_cast<Value>(r)) return false;
    }
    return true;
  }

  friend bool operator==(const Ordering& a, const Ordering& b) { return a.perm_ == b.perm_; }

 private:
  std::vector<Value> perm_;
  std::vector<int> rank_;
};

enum class RelationKind { True, Eq, Neq, Lt, Leq, Gt, Geq, AbsGt, Table };

inline std::string to_string(RelationKind k) {
  switch (k) {
    case RelationKind::True: return "true";
    case RelationKind::Eq: return "eq";
    case RelationKind::Neq: return "neq";
    case RelationKind::Lt: return "lt";
    case RelationKind::Leq: return "leq";
    case RelationKind::Gt: return "gt";
    case RelationKind::Geq: return "geq";
    case RelationKind::AbsGt: return "abs_gt";
    case RelationKind::Table: return "table";
  }
  return "table";
}

inline std::optional<RelationKind> relation_kind_from_name(const std::string& name) {
  for (auto k : {RelationKind::True, RelationKind::Eq, RelationKind::Neq, RelationKind::Lt,
                 RelationKind::Leq, RelationKind::Gt, RelationKind::Geq, RelationKind::AbsGt}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

// Dense (d+1)x(d+1) boolean relation over values 0..d. The soft cost of a
// tuple is 0 when the tuple is allowed and 1 otherwise.
class BinaryRelation {
 public:
  BinaryRelation() = default;

  static BinaryRelation builtin(RelationKind kind, Value d, int cst = 0) {
    if (kind == RelationKind::Table) throw std::invalid_argument("table is not a builtin relation");
    if (d < 0) throw std::invalid_argument("value_max must be non-negative");
    BinaryRelation r(kind, d, cst);
    for (Value j = 0; j <= d; ++j) {
      for (Value k = 0; k <= d; ++k) r.set(j, k, builtin_holds(kind, cst, j, k));
    }
    return r;
  }

  static BinaryRelation from_pairs(Value d, const std::vector<std::pair<Value, Value>>& pairs) {
    if (d < 0) throw std::invalid_argument("value_max must be non-negative");
    BinaryRelation r(RelationKind::Table, d, 0);
    for (auto [j, k] : pairs) {
      if (j < 0 || k < 0 || j > d || k > d) {
        throw std::invalid_argument("relation tuple (" + std::to_string(j) + "," + std::to_string(k) +
                                    ") outside 0.." + std::to_string(d));
      }
      r.set(j, k, true);
    }
    return r;
  }

  static BinaryRelation from_predicate(Value d, auto&& pred) {
    BinaryRelation r(RelationKind::Table, d, 0);
    for (Value j = 0; j <= d; ++j) {
      for (Value k = 0; k <= d; ++k) r.set(j, k, static_cast<bool>(pred(j, k)));
    }
    return r;
  }

  static bool builtin_holds(RelationKind kind, int cst, Value j, Value k) {
    switch (kind) {
      case RelationKind::True: return true;
      case RelationKind::Eq: return j == k;
      case RelationKind::Neq: return j != k;
      case RelationKind::Lt: return j < k;
      case RelationKind::Leq: return j <= k;
      case RelationKind::Gt: return j > k;
      case RelationKind::Geq: return j >= k;
      case RelationKind::AbsGt: return std::abs(j - k) > cst;
      case RelationKind::Table: break;
    }
    return false;
  }

  Value max_value() const { return d_; }
  RelationKind kind() const { return kind_; }
  int cst() const { return cst_; }

  bool contains(Value j, Value k) const { return table_[index(j, k)] != 0; }
  int cost(Value j, Value k) const { return contains(j, k) ? 0 : 1; }

  std::vector<std::pair<Value, Value>> pairs() const {
    std::vector<std::pair<Value, Value>> out;
    for (Value j = 0; j <= d_; ++j) {
      for (Value k = 0; k <= d_; ++k) {
        if (contains(j, k)) out.emplace_back(j, k);
      }
    }
    return out;
  }

  BinaryRelation transposed() const {
    RelationKind k = kind_;
    switch (kind_) {
      case RelationKind::Lt: k = RelationKind::Gt; break;
      case RelationKind::Gt: k = RelationKind::Lt; break;
      case RelationKind::Leq: k = RelationKind::Geq; break;
      case RelationKind::Geq: k = RelationKind::Leq; break;
      default: break;
    }
    BinaryRelation r(k, d_, cst_);
    for (Value j = 0; j <= d_; ++j) {
      for (Value v = 0; v <= d_; ++v) r.set(v, j, contains(j, v));
    }
    return r;
  }

  // Always a table: builtin names are never inferred from contents.
  BinaryRelation complement() const {
    BinaryRelation r(RelationKind::Table, d_, 0);
    for (std::size_t i = 0; i < table_.size(); ++i) r.table_[i] = table_[i] ? 0 : 1;
    return r;
  }

  // Same tuples, regardless of the tag.
  bool same_tuples(const BinaryRelation& o) const { return d_ == o.d_ && table_ == o.table_; }

  friend bool operator==(const BinaryRelation& a, const BinaryRelation& b) {
    return a.kind_ == b.kind_ && a.cst_ == b.cst_ && a.same_tuples(b);
  }

 private:
  BinaryRelation(RelationKind kind, Value d, int cst)
      : kind_(kind), d_(d), cst_(cst),
        table_(static_cast<std::size_t>(d + 1) * static_cast<std::size_t>(d + 1), 0) {}

  std::size_t index(Value j, Value k) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(d_ + 1) + static_cast<std::size_t>(k);
  }
  void set(Value j, Value k, bool on) { table_[index(j, k)] = on ? 1 : 0; }

  RelationKind kind_ = RelationKind::Table;
  Value d_ = 0;
  int cst_ = 0;
  std::vector<std::uint8_t> table_;
};

// Upward closure in both coordinates under the order: a support value may be
// replaced by any larger value, on either side of the tuple.
inline bool is_monotone(const BinaryRelation& b, const Ordering& order) {
  const Value d = b.max_value();
  if (order.max_value() != d) throw std::invalid_argument("ordering and relation disagree on value_max");
  for (int r = 0; r < d; ++r) {
    const Value lo = order.at(r), hi = order.at(r + 1);
    for (Value x = 0; x <= d; ++x) {
      if (b.contains(lo, x) && !b.contains(hi, x)) return false;
      if (b.contains(x, lo) && !b.contains(x, hi)) return false;
    }
  }
  return true;
}

namespace detail {

inline bool line_is_contiguous(const BinaryRelation& rel, const Ordering& order, Value fixed, bool row) {
  const Value d = rel.max_value();
  int state = 0;  // 0 before the run, 1 inside, 2 after
  for (int r = 0; r <= d; ++r) {
    const Value v = order.at(r);
    const bool on = row ? rel.contains(fixed, v) : rel.contains(v, fixed);
    if (on) {
      if (state == 2) return false;
      state = 1;
    } else if (state == 1) {
      state = 2;
    }
  }
  return true;
}

}  // namespace detail

inline bool is_row_convex(const BinaryRelation& rel, const Ordering& order) {
  for (Value j = 0; j <= rel.max_value(); ++j) {
    if (!detail::line_is_contiguous(rel, order, j, true)) return false;
  }
  return true;
}

inline bool is_col_convex(const BinaryRelation& rel, const Ordering& order) {
  for (Value k = 0; k <= rel.max_value(); ++k) {
    if (!detail::line_is_contiguous(rel, order, k, false)) return false;
  }
  return true;
}

inline bool is_row_convex(const BinaryRelation& rel) {
  return is_row_convex(rel, Ordering::identity(rel.max_value()));
}
inline bool is_col_convex(const BinaryRelation& rel) {
  return is_col_convex(rel, Ordering::identity(rel.max_value()));
}

// Tries identity, then reversed identity, then every permutation when d <= 8.
inline std::optional<Ordering> find_monotone_order(const BinaryRelation& b) {
  const Value d = b.max_value();
  for (auto candidate : {Ordering::identity(d), Ordering::reversed(d)}) {
    if (is_monotone(b, candidate)) return candidate;
  }
  if (d > 8) return std::nullopt;
  std::vector<Value> perm(static_cast<std::size_t>(d) + 1);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    Ordering candidate(perm);
    if (is_monotone(b, candidate)) return candidate;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace seqbin
