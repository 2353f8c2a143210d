#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "cost_set.hpp"

namespace seqbin {

// Reference bounds for one layer: p = smallest lb, q + 2 = largest ub.
struct IndicatorWindow {
  int p = 0;
  int q = 0;
};

// Indicator bits of a family of structured cost sets, relative to a window.
// Packed layout:
//   0..2    left zip lower bound a   in [p, p+2]
//   3..5    right zip upper bound d  in [q, q+2]
//   6..12   middle lower bound b     in [p, p+6]
//   13..19  middle upper bound c     in [q-4, q+2]
//   20..28  zipper (a, b) with a in [p, p+2], b in [q, q+2], index 3*(a-p) + (b-q)
//   29      overflow: a bound outside its window or an unstructured set
// Bits 0..19 are the twenty indicators; OR-ing words is set union of indicators.
class IndicatorSummary {
 public:
  static constexpr int kLeftZip = 0;
  static constexpr int kRightZip = 3;
  static constexpr int kMiddleLb = 6;
  static constexpr int kMiddleUb = 13;
  static constexpr int kZipper = 20;
  static constexpr int kOverflow = 29;
  static constexpr int kIndicatorBits = 20;
  static constexpr int kWordBits = 30;

  IndicatorSummary() = default;
  explicit IndicatorSummary(std::uint32_t word) : word_(word) {}

  static std::uint32_t encode(const CostSet& s, IndicatorWindow w) {
    const std::uint32_t overflow = std::uint32_t{1} << kOverflow;
    switch (s.kind()) {
      case CostSetKind::Empty: return 0;
      case CostSetKind::Explicit: return overflow;
      case CostSetKind::Zipper: {
        const int a = s.a() - w.p, b = s.b() - w.q;
        if (a < 0 || a > 2 || b < 0 || b > 2) return overflow;
        return std::uint32_t{1} << (kZipper + 3 * a + b);
      }
      case CostSetKind::IZipper: {
        const int a = s.a() - w.p, d = s.d() - w.q;
        const int b = s.b() - w.p, c = s.c() - (w.q - 4);
        if (a < 0 || a > 2 || d < 0 || d > 2 || b < 0 || b > 6 || c < 0 || c > 6) return overflow;
        return (std::uint32_t{1} << (kLeftZip + a)) | (std::uint32_t{1} << (kRightZip + d)) |
               (std::uint32_t{1} << (kMiddleLb + b)) | (std::uint32_t{1} << (kMiddleUb + c));
      }
    }
    return overflow;
  }

  std::uint32_t word() const { return word_; }
  bool overflow() const { return (word_ >> kOverflow) & 1u; }
  bool left_zip(int y, IndicatorWindow w) const { return in_group(kLeftZip, 3, y - w.p); }
  bool right_zip(int y, IndicatorWindow w) const { return in_group(kRightZip, 3, y - w.q); }
  bool middle_lb(int y, IndicatorWindow w) const { return in_group(kMiddleLb, 7, y - w.p); }
  bool middle_ub(int y, IndicatorWindow w) const { return in_group(kMiddleUb, 7, y - (w.q - 4)); }
  bool zipper(int a, int b, IndicatorWindow w) const {
    const int x = a - w.p, y = b - w.q;
    if (x < 0 || x > 2 || y < 0 || y > 2) return false;
    return (word_ >> (kZipper + 3 * x + y)) & 1u;
  }
  int indicator_count() const { return std::popcount(word_ & ((std::uint32_t{1} << kIndicatorBits) - 1)); }

 private:
  bool in_group(int offset, int width, int i) const {
    return i >= 0 && i < width && ((word_ >> (offset + i)) & 1u);
  }
  std::uint32_t word_ = 0;
};

namespace detail {

// Union of parts (lo..hi dense, or lo..hi step 2) classified into a CostSet.
class PartUnion {
 public:
  void add_dense(int lo, int hi) { push({lo, hi, true}); }
  void add_sparse(int lo, int hi) { push({lo, hi, false}); }
  bool empty() const { return count_ == 0; }

  CostSet classify_union() const {
    if (count_ == 0) return CostSet::empty();
    int l = parts_[0].lo, h = parts_[0].hi;
    for (const Part& pt : parts()) {
      l = std::min(l, pt.lo);
      h = std::max(h, pt.hi);
    }
    if (h - l < 64) {
      std::uint64_t m = 0;
      for (const Part& pt : parts()) m |= part_mask(pt.lo - l, pt.hi - l, pt.dense);
      if (auto s = from_mask(m, [l](int y) { return l + y; })) return *s;
      return explicit_union();
    }

    // compress the middle stretch, which every part either spans or avoids
    const int g = h - l - 2 * kW + 1;
    const int gc = (g & 1) ? 5 : 4;
    const int gap_lo = l + kW, gap_hi = h - kW;
    auto compress = [&](int x) {
      if (x < gap_lo) return x - l;
      if (x > gap_hi) return x - l - (g - gc);
      return -1;
    };
    std::uint64_t m = 0;
    for (const Part& pt : parts()) {
      const int clo = compress(pt.lo), chi = compress(pt.hi);
      if (clo < 0 || chi < 0) return explicit_union();
      m |= part_mask(clo, chi, pt.dense);
    }
    auto expand = [&](int y) {
      if (y < kW) return l + y;
      if (y >= kW + gc) return y + l + (g - gc);
      const int t = y - kW;
      if (t < 2) return gap_lo + t;
      if (t >= gc - 2) return gap_hi - (gc - 1 - t);
      return -1;
    };
    if (auto s = from_mask(m, expand)) return *s;
    return explicit_union();
  }

 private:
  static constexpr int kW = 29;
  struct Part {
    int lo, hi;
    bool dense;
  };

  static std::uint64_t range_mask(int lo, int hi) {
    const std::uint64_t upto = hi >= 63 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (hi + 1)) - 1);
    return upto & ~((std::uint64_t{1} << lo) - 1);
  }
  static std::uint64_t zip_mask(int lo, int hi) {
    const std::uint64_t alt = (lo & 1) ? 0xAAAAAAAAAAAAAAAAull : 0x5555555555555555ull;
    return range_mask(lo, hi) & alt;
  }
  static std::uint64_t part_mask(int lo, int hi, bool dense) {
    return dense ? range_mask(lo, hi) : zip_mask(lo, hi);
  }

  // Lowest set bit of m is position 0.
  template <class Expand>
  static std::optional<CostSet> from_mask(std::uint64_t m, Expand expand) {
    const int top = 63 - std::countl_zero(m);
    if (m == zip_mask(0, top)) {
      const int a = expand(0), b = expand(top);
      if (a < 0 || b < 0) return std::nullopt;
      return CostSet::zipper(a, b);
    }
    const std::uint64_t r = m & (m >> 1);
    if (r == 0) return std::nullopt;
    const int b = std::countr_zero(r);
    const int c = 63 - std::countl_zero(r) + 1;
    if ((b & 1) || ((top - c) & 1) || m != (zip_mask(0, b) | range_mask(b, c) | zip_mask(c, top))) {
      return std::nullopt;
    }
    const int xa = expand(0), xb = expand(b), xc = expand(c), xd = expand(top);
    if (xa < 0 || xb < 0 || xc < 0 || xd < 0) return std::nullopt;
    return CostSet::izipper(xa, xb, xc, xd);
  }

  CostSet explicit_union() const {
    ValueBits bits;
    for (const Part& pt : parts()) {
      for (int x = pt.lo; x <= pt.hi; x += pt.dense ? 1 : 2) bits.set(x);
    }
    return classify(bits.values());
  }

  void push(Part pt) {
    if (count_ == parts_.size()) throw std::logic_error("too many parts in cost-set union");
    parts_[count_++] = pt;
  }
  std::span<const Part> parts() const { return {parts_.data(), count_}; }

  // two groups of at most 1 + 3 + 3 + 9 parts
  std::array<Part, 32> parts_{};
  std::size_t count_ = 0;
};

// Adds the parts encoded in one summary word, translated by `shift`.
inline bool add_summary_parts(PartUnion& u, std::uint32_t word, IndicatorWindow w, int shift) {
  if ((word >> IndicatorSummary::kOverflow) & 1u) return false;
  const std::uint32_t lz = (word >> IndicatorSummary::kLeftZip) & 0x7u;
  const std::uint32_t rz = (word >> IndicatorSummary::kRightZip) & 0x7u;
  const std::uint32_t mlb = (word >> IndicatorSummary::kMiddleLb) & 0x7Fu;
  const std::uint32_t mub = (word >> IndicatorSummary::kMiddleUb) & 0x7Fu;
  const std::uint32_t zip = (word >> IndicatorSummary::kZipper) & 0x1FFu;

  if (mlb) {
    // the middle intervals all share a point, so their union is [min b, max c]
    const int min_b = w.p + std::countr_zero(mlb);
    const int max_b = w.p + 31 - std::countl_zero(mlb);
    const int min_c = w.q - 4 + std::countr_zero(mub);
    const int max_c = w.q - 4 + 31 - std::countl_zero(mub);
    if (max_b > min_c) return false;
    u.add_dense(min_b + shift, max_c + shift);
    for (int i = 0; i < 3; ++i) {
      if (!((lz >> i) & 1u)) continue;
      const int a = w.p + i;
      if (a < min_b) u.add_sparse(a + shift, min_b - ((min_b - a) & 1) + shift);
    }
    for (int i = 0; i < 3; ++i) {
      if (!((rz >> i) & 1u)) continue;
      const int d = w.q + i;
      if (d > max_c) u.add_sparse(max_c + ((d - max_c) & 1) + shift, d + shift);
    }
  }
  for (int i = 0; i < 9; ++i) {
    if (!((zip >> i) & 1u)) continue;
    const int a = w.p + i / 3, b = w.q + i % 3;
    if (a > b || ((b - a) & 1)) return false;
    u.add_sparse(a + shift, b + shift);
  }
  return true;
}

}  // namespace detail

// c0 u (c1 + 1) for the cost-0 and cost-1 support groups of one vertex, from
// their OR-ed summary words. nullopt when the summaries cannot represent the
// union exactly; callers fall back to the explicit union.
inline std::optional<CostSet> derive_union(std::uint32_t word0, std::uint32_t word1, IndicatorWindow w) {
  detail::PartUnion u;
  if (!detail::add_summary_parts(u, word0, w, 0)) return std::nullopt;
  if (!detail::add_summary_parts(u, word1, w, 1)) return std::nullopt;
  return u.classify_union();
}

namespace detail {
inline const CostSet& deref(const CostSet& s) { return s; }
inline const CostSet& deref(const CostSet* s) { return *s; }

template <class T>
IndicatorWindow window_over(std::span<const T> sets) {
  IndicatorWindow w{0, 0};
  bool first = true;
  int ub = 0;
  for (const T& item : sets) {
    const CostSet& s = deref(item);
    if (s.is_empty()) continue;
    if (first) {
      w.p = s.lb();
      ub = s.ub();
      first = false;
    } else {
      w.p = std::min(w.p, s.lb());
      ub = std::max(ub, s.ub());
    }
  }
  w.q = ub - 2;
  return w;
}
}  // namespace detail

inline IndicatorWindow window_of(std::span<const CostSet> sets) { return detail::window_over(sets); }
inline IndicatorWindow window_of(std::span<const CostSet* const> sets) { return detail::window_over(sets); }

inline CostSet explicit_union(std::span<const CostSet> sets) {
  detail::ValueBits bits;
  for (const CostSet& s : sets) {
    for (int x : to_explicit(s)) bits.set(x);
  }
  return classify(bits.values());
}

// Union of cost sets through one indicator pass; counts fallbacks.
inline CostSet union_structured(std::span<const CostSet> sets, long* fallback_count = nullptr) {
  const IndicatorWindow w = window_of(sets);
  std::uint32_t word = 0;
  for (const CostSet& s : sets) word |= IndicatorSummary::encode(s, w);
  if (auto r = derive_union(word, 0, w)) return *r;
  if (fallback_count) ++*fallback_count;
  return explicit_union(sets);
}

inline CostSet union_structured(std::initializer_list<CostSet> sets, long* fallback_count = nullptr) {
  return union_structured(std::span<const CostSet>(sets.begin(), sets.size()), fallback_count);
}

// Per-position cumulative counts of every indicator bit over a row of sets
// (positions with no set contribute nothing). counts(bit, v) is the number of
// positions in [0, v) whose summary has `bit` set.
class CumulativeIndicators {
 public:
  CumulativeIndicators() = default;
  CumulativeIndicators(std::span<const std::uint32_t> words)
      : size_(words.size()), cs_((words.size() + 1) * IndicatorSummary::kWordBits, 0) {
    for (std::size_t v = 0; v < words.size(); ++v) {
      const int* prev = &cs_[v * IndicatorSummary::kWordBits];
      int* cur = &cs_[(v + 1) * IndicatorSummary::kWordBits];
      for (int b = 0; b < IndicatorSummary::kWordBits; ++b) cur[b] = prev[b] + ((words[v] >> b) & 1);
    }
  }

  std::size_t size() const { return size_; }
  int count(int bit, std::size_t v) const { return cs_[v * IndicatorSummary::kWordBits + bit]; }

  // OR of the summaries at positions [lo, hi].
  std::uint32_t range_word(int lo, int hi) const {
    if (lo > hi) return 0;
    const int* a = &cs_[static_cast<std::size_t>(lo) * IndicatorSummary::kWordBits];
    const int* b = &cs_[static_cast<std::size_t>(hi + 1) * IndicatorSummary::kWordBits];
    std::uint32_t w = 0;
    for (int bit = 0; bit < IndicatorSummary::kWordBits; ++bit) {
      w |= static_cast<std::uint32_t>(b[bit] != a[bit]) << bit;
    }
    return w;
  }

  std::vector<int> row(int bit) const {
    std::vector<int> r(size_ + 1);
    for (std::size_t v = 0; v <= size_; ++v) r[v] = count(bit, v);
    return r;
  }

 private:
  std::size_t size_ = 0;
  std::vector<int> cs_;
};

}  // namespace seqbin
