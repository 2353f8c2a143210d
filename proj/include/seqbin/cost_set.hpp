#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqbin {

namespace detail {

// Growable bitset over non-negative integers; backs every explicit set
// operation (union, Minkowski sum) in the fallbacks and in PATHDP totals.
class ValueBits {
 public:
  ValueBits() = default;
  explicit ValueBits(int max_value) : words_(static_cast<std::size_t>(max_value / 64 + 1), 0) {}

  void set(int x) {
    ensure(x);
    words_[static_cast<std::size_t>(x) >> 6] |= std::uint64_t{1} << (x & 63);
  }
  bool test(int x) const {
    if (x < 0) return false;
    const std::size_t w = static_cast<std::size_t>(x) >> 6;
    return w < words_.size() && ((words_[w] >> (x & 63)) & 1u);
  }

  // this |= other << shift (shift >= 0)
  void or_shifted(const ValueBits& other, int shift) {
    if (other.words_.empty()) return;
    const std::size_t ws = static_cast<std::size_t>(shift) >> 6;
    const int bs = shift & 63;
    const std::size_t need = other.words_.size() + ws + 1;
    if (words_.size() < need) words_.resize(need, 0);
    for (std::size_t i = 0; i < other.words_.size(); ++i) {
      const std::uint64_t w = other.words_[i];
      if (!w) continue;
      words_[i + ws] |= w << bs;
      if (bs) words_[i + ws + 1] |= w >> (64 - bs);
    }
  }

  bool any() const {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
  }

  std::vector<int> values() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        const int b = __builtin_ctzll(w);
        out.push_back(static_cast<int>(i * 64) + b);
        w &= w - 1;
      }
    }
    return out;
  }

 private:
  void ensure(int x) {
    const std::size_t w = static_cast<std::size_t>(x) >> 6;
    if (w >= words_.size()) words_.resize(w + 1, 0);
  }
  std::vector<std::uint64_t> words_;
};

inline bool same_parity(int x, int y) { return ((x ^ y) & 1) == 0; }

}  // namespace detail

enum class CostSetKind : std::uint8_t { Empty, Zipper, IZipper, Explicit };

// A set of achievable costs. Structured variants:
//   Zipper(a,b)      {a, a+2, ..., b}, a = b (mod 2)
//   IZipper(a,b,c,d) [a~b] u [b,c] u [c~d] with a <= b < c <= d
// A plain interval [b,c] is IZipper(b,b,c,c); a singleton is Zipper(a,a).
// Explicit holds anything else as a sorted list.
class CostSet {
 public:
  CostSet() = default;

  static CostSet empty() { return CostSet(); }

  static CostSet zipper(int a, int b) {
    if (a > b || !detail::same_parity(a, b)) {
      throw std::invalid_argument("zipper bounds must satisfy a <= b and a = b (mod 2)");
    }
    return CostSet(CostSetKind::Zipper, a, b, b, b);
  }

  static CostSet izipper(int a, int b, int c, int d) {
    if (!(a <= b && b < c && c <= d) || !detail::same_parity(a, b) || !detail::same_parity(c, d)) {
      throw std::invalid_argument("i-zipper bounds must satisfy a <= b < c <= d with matching parities");
    }
    return CostSet(CostSetKind::IZipper, a, b, c, d);
  }

  static CostSet singleton(int x) { return zipper(x, x); }

  static CostSet interval(int lo, int hi) {
    if (lo > hi) return CostSet();
    if (lo == hi) return singleton(lo);
    return izipper(lo, lo, hi, hi);
  }

  // Stores the list as-is; use classify() for the canonical form.
  static CostSet explicit_values(std::vector<int> sorted_values) {
    if (sorted_values.empty()) return CostSet();
    CostSet s(CostSetKind::Explicit, sorted_values.front(), sorted_values.front(), sorted_values.back(),
              sorted_values.back());
    s.values_ = std::make_shared<const std::vector<int>>(std::move(sorted_values));
    return s;
  }

  CostSetKind kind() const { return kind_; }
  bool is_empty() const { return kind_ == CostSetKind::Empty; }
  bool is_zipper() const { return kind_ == CostSetKind::Zipper; }
  bool is_izipper() const { return kind_ == CostSetKind::IZipper; }
  bool is_explicit() const { return kind_ == CostSetKind::Explicit; }
  bool is_structured() const { return kind_ == CostSetKind::Zipper || kind_ == CostSetKind::IZipper; }
  // Contains two consecutive integers.
  bool has_interval() const {
    if (kind_ == CostSetKind::IZipper) return true;
    if (kind_ != CostSetKind::Explicit) return false;
    const auto& v = *values_;
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (v[i] == v[i - 1] + 1) return true;
    }
    return false;
  }

  int a() const { return a_; }
  int b() const { return b_; }
  int c() const { return c_; }
  int d() const { return d_; }
  int lb() const { return a_; }
  int ub() const { return d_; }

  const std::vector<int>& values() const {
    static const std::vector<int> none;
    return values_ ? *values_ : none;
  }

  bool contains(int x) const {
    switch (kind_) {
      case CostSetKind::Empty: return false;
      case CostSetKind::Zipper: return x >= a_ && x <= b_ && detail::same_parity(x, a_);
      case CostSetKind::IZipper:
        if (x >= b_ && x <= c_) return true;
        if (x >= a_ && x < b_) return detail::same_parity(x, a_);
        if (x > c_ && x <= d_) return detail::same_parity(x, d_);
        return false;
      case CostSetKind::Explicit: return std::binary_search(values_->begin(), values_->end(), x);
    }
    return false;
  }

  friend bool operator==(const CostSet& x, const CostSet& y) {
    if (x.kind_ != y.kind_) return false;
    if (x.kind_ == CostSetKind::Explicit) return *x.values_ == *y.values_;
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
  }

 private:
  CostSet(CostSetKind k, int a, int b, int c, int d) : kind_(k), a_(a), b_(b), c_(c), d_(d) {}

  CostSetKind kind_ = CostSetKind::Empty;
  int a_ = 0, b_ = 0, c_ = 0, d_ = 0;
  std::shared_ptr<const std::vector<int>> values_;
};

// Parts of an i-zipper: l.zip = [a~b], i.val = [b,c], r.zip = [c~d].
struct ZipPart {
  int lo, hi;
};
inline ZipPart left_zip(const CostSet& s) { return {s.a(), s.b()}; }
inline ZipPart middle_interval(const CostSet& s) { return {s.b(), s.c()}; }
inline ZipPart right_zip(const CostSet& s) { return {s.c(), s.d()}; }

inline std::vector<int> to_explicit(const CostSet& s) {
  std::vector<int> out;
  switch (s.kind()) {
    case CostSetKind::Empty: break;
    case CostSetKind::Zipper:
      for (int x = s.a(); x <= s.b(); x += 2) out.push_back(x);
      break;
    case CostSetKind::IZipper:
      for (int x = s.a(); x < s.b(); x += 2) out.push_back(x);
      for (int x = s.b(); x <= s.c(); ++x) out.push_back(x);
      for (int x = s.c() + 2; x <= s.d(); x += 2) out.push_back(x);
      break;
    case CostSetKind::Explicit: out = s.values(); break;
  }
  return out;
}

// Canonical CostSet for a sorted, duplicate-free list.
inline CostSet classify(std::span<const int> v) {
  if (v.empty()) return CostSet::empty();
  const std::size_t n = v.size();
  bool zip = true;
  for (std::size_t i = 1; i < n && zip; ++i) zip = v[i] == v[i - 1] + 2;
  if (zip) return CostSet::zipper(v.front(), v.back());

  // exactly one maximal run of consecutive integers, zippers on both sides
  std::size_t run_start = n, run_end = n;
  for (std::size_t i = 1; i < n; ++i) {
    if (v[i] != v[i - 1] + 1) continue;
    if (run_start == n) {
      run_start = i - 1;
    } else if (run_end != i - 1) {
      return CostSet::explicit_values({v.begin(), v.end()});
    }
    run_end = i;
  }
  if (run_start == n) return CostSet::explicit_values({v.begin(), v.end()});
  for (std::size_t i = 1; i <= run_start; ++i) {
    if (v[i] != v[i - 1] + 2) return CostSet::explicit_values({v.begin(), v.end()});
  }
  for (std::size_t i = run_end + 1; i < n; ++i) {
    if (v[i] != v[i - 1] + 2) return CostSet::explicit_values({v.begin(), v.end()});
  }
  return CostSet::izipper(v.front(), v[run_start], v[run_end], v.back());
}

inline CostSet classify(const std::vector<int>& v) { return classify(std::span<const int>(v)); }

inline CostSet shift(const CostSet& s, int by) {
  switch (s.kind()) {
    case CostSetKind::Empty: return s;
    case CostSetKind::Zipper: return CostSet::zipper(s.a() + by, s.b() + by);
    case CostSetKind::IZipper: return CostSet::izipper(s.a() + by, s.b() + by, s.c() + by, s.d() + by);
    case CostSetKind::Explicit: {
      std::vector<int> v = s.values();
      for (int& x : v) x += by;
      return CostSet::explicit_values(std::move(v));
    }
  }
  return s;
}

inline std::vector<int> minkowski_explicit(const std::vector<int>& s, const std::vector<int>& t) {
  if (s.empty() || t.empty()) return {};
  // negative members are not supported; offset keeps the bitset indices valid
  const int off_s = s.front(), off_t = t.front();
  detail::ValueBits tb(t.back() - off_t);
  for (int x : t) tb.set(x - off_t);
  detail::ValueBits acc(s.back() - off_s + t.back() - off_t);
  for (int x : s) acc.or_shifted(tb, x - off_s);
  std::vector<int> out = acc.values();
  for (int& x : out) x += off_s + off_t;
  return out;
}

// {s + t + offset}. Structured operands use constant-time closed forms.
inline CostSet minkowski(const CostSet& s, const CostSet& t, int offset = 0) {
  if (s.is_empty() || t.is_empty()) return CostSet::empty();
  if (s.is_explicit() || t.is_explicit()) {
    std::vector<int> v = minkowski_explicit(to_explicit(s), to_explicit(t));
    for (int& x : v) x += offset;
    return classify(v);
  }
  if (s.is_zipper() && t.is_zipper()) return CostSet::zipper(s.a() + t.a() + offset, s.b() + t.b() + offset);
  if (s.is_izipper() && t.is_izipper()) {
    // [a~b-r~q] + [c~d-f~e]
    const int a = s.a(), b = s.b(), r = s.c(), q = s.d();
    const int c = t.a(), d = t.b(), f = t.c(), e = t.d();
    return CostSet::izipper(a + c + offset, std::min(b + c, a + d) + offset, std::max(r + e, q + f) + offset,
                            e + q + offset);
  }
  const CostSet& z = s.is_zipper() ? s : t;
  const CostSet& iz = s.is_zipper() ? t : s;
  // [a~b] + [c~d-f~e]
  const int a = z.a() + offset, b = z.b() + offset;
  return CostSet::izipper(a + iz.a(), a + iz.b(), b + iz.c(), b + iz.d());
}

inline std::string to_string(const CostSet& s) {
  const std::string sim = "∼", minus = "−";
  auto n = [](int x) { return std::to_string(x); };
  switch (s.kind()) {
    case CostSetKind::Empty: return "∅";
    case CostSetKind::Zipper: return "[" + n(s.a()) + sim + n(s.b()) + "]";
    case CostSetKind::IZipper: {
      std::string out = "[";
      if (s.a() != s.b()) out += n(s.a()) + sim;
      out += n(s.b()) + minus + n(s.c());
      if (s.c() != s.d()) out += sim + n(s.d());
      return out + "]";
    }
    case CostSetKind::Explicit: {
      std::string out = "{";
      const auto& v = s.values();
      for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + n(v[i]);
      return out + "}";
    }
  }
  return "?";
}

// Cumulative counts of odd and even members of a set N over [0, max_cost]:
// odd_[j] = number of odd members < j.
class ParityPrefix {
 public:
  ParityPrefix() = default;
  ParityPrefix(std::span<const int> members, int max_cost)
      : max_cost_(max_cost),
        odd_(static_cast<std::size_t>(max_cost) + 2, 0),
        even_(static_cast<std::size_t>(max_cost) + 2, 0) {
    std::vector<std::uint8_t> in(static_cast<std::size_t>(max_cost) + 1, 0);
    for (int x : members) {
      if (x >= 0 && x <= max_cost) in[x] = 1;
    }
    for (int j = 0; j <= max_cost; ++j) {
      odd_[j + 1] = odd_[j] + ((in[j] && (j & 1)) ? 1 : 0);
      even_[j + 1] = even_[j] + ((in[j] && !(j & 1)) ? 1 : 0);
    }
  }

  int max_cost() const { return max_cost_; }
  const std::vector<int>& odd_prefix() const { return odd_; }
  const std::vector<int>& even_prefix() const { return even_; }

  int count_odd(int lo, int hi) const { return count(odd_, lo, hi); }
  int count_even(int lo, int hi) const { return count(even_, lo, hi); }
  int count_parity(int lo, int hi, int parity) const {
    return (parity & 1) ? count_odd(lo, hi) : count_even(lo, hi);
  }

 private:
  int count(const std::vector<int>& s, int lo, int hi) const {
    lo = std::max(lo, 0);
    hi = std::min(hi, max_cost_);
    if (lo > hi) return 0;
    return s[hi + 1] - s[lo];
  }

  int max_cost_ = -1;
  std::vector<int> odd_, even_;
};

inline ParityPrefix build_parity_prefix(std::span<const int> members, int max_cost) {
  return ParityPrefix(members, max_cost);
}

inline bool intersects(const CostSet& s, const ParityPrefix& pp) {
  switch (s.kind()) {
    case CostSetKind::Empty: return false;
    case CostSetKind::Zipper: return pp.count_parity(s.a(), s.b(), s.a()) > 0;
    case CostSetKind::IZipper:
      return pp.count_parity(s.a(), s.b(), s.a()) > 0 ||
             pp.count_odd(s.b(), s.c()) + pp.count_even(s.b(), s.c()) > 0 ||
             pp.count_parity(s.c(), s.d(), s.d()) > 0;
    case CostSetKind::Explicit:
      for (int x : s.values()) {
        if (pp.count_odd(x, x) + pp.count_even(x, x) > 0) return true;
      }
      return false;
  }
  return false;
}

}  // namespace seqbin
