#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace semitop {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// Cantor pairing N x N -> N and its inverse. Used throughout as the
// canonical bijection when a construction needs to treat N as N x N.
inline u64 pair2(u64 a, u64 b) {
  u64 s = a + b;
  return s * (s + 1) / 2 + b;
}

inline std::pair<u64, u64> unpair2(u64 n) {
  // Largest s with s(s+1)/2 <= n.
  u64 s = static_cast<u64>((std::sqrt(8.0 * static_cast<double>(n) + 1.0) - 1.0) / 2.0);
  while (s * (s + 1) / 2 > n) --s;
  while ((s + 1) * (s + 2) / 2 <= n) ++s;
  u64 b = n - s * (s + 1) / 2;
  return {s - b, b};
}

// n-fold pairing, right associated: (x0, x1, ..., xk) -> pair2(x0, pair2(x1, ...)).
inline u64 pair_vec(const std::vector<u64>& xs) {
  if (xs.empty()) throw std::invalid_argument("pair_vec: empty tuple");
  u64 acc = xs.back();
  for (std::size_t i = xs.size() - 1; i-- > 0;) acc = pair2(xs[i], acc);
  return acc;
}

inline std::vector<u64> unpair_vec(u64 n, std::size_t arity) {
  std::vector<u64> out;
  out.reserve(arity);
  for (std::size_t i = 0; i + 1 < arity; ++i) {
    auto [a, b] = unpair2(n);
    out.push_back(a);
    n = b;
  }
  out.push_back(n);
  return out;
}

// Three-valued verdict for membership and probe queries. "unknown" carries
// the reason the query could not be decided with the available data.
struct Verdict {
  enum Kind { True, False, Unknown } kind;
  std::string reason;

  static Verdict yes() { return {True, {}}; }
  static Verdict no() { return {False, {}}; }
  static Verdict unknown(std::string why) { return {Unknown, std::move(why)}; }

  bool is_true() const { return kind == True; }
  bool is_false() const { return kind == False; }
  bool is_unknown() const { return kind == Unknown; }
  bool decided() const { return kind != Unknown; }

  friend bool operator==(const Verdict& a, const Verdict& b) { return a.kind == b.kind; }
};

// A subset of N that is either finite or cofinite, represented by the
// finite exceptional set. Supports the set algebra needed for membership
// queries about images and domains of finitely supported maps.
struct FinCof {
  bool cofinite = false;           // if true, the set is N \ elems
  std::set<u64> elems;             // the finite part (or the finite complement)

  static FinCof finite(std::set<u64> xs) { return {false, std::move(xs)}; }
  static FinCof cofinite_excluding(std::set<u64> xs) { return {true, std::move(xs)}; }
  static FinCof empty() { return {false, {}}; }
  static FinCof all() { return {true, {}}; }

  bool contains(u64 x) const { return cofinite ? !elems.count(x) : elems.count(x) > 0; }

  friend bool operator==(const FinCof&, const FinCof&) = default;

  FinCof complement() const { return {!cofinite, elems}; }

  bool is_finite() const { return !cofinite; }

  bool subset_of(const FinCof& other) const {
    if (!cofinite && !other.cofinite) {
      for (u64 x : elems)
        if (!other.elems.count(x)) return false;
      return true;
    }
    if (!cofinite && other.cofinite) {
      for (u64 x : elems)
        if (other.elems.count(x)) return false;
      return true;
    }
    if (cofinite && !other.cofinite) return false;  // cofinite set is never inside a finite one
    // both cofinite: N\A ⊆ N\B iff B ⊆ A
    for (u64 x : other.elems)
      if (!elems.count(x)) return false;
    return true;
  }

  FinCof intersect(const FinCof& other) const {
    if (!cofinite && !other.cofinite) {
      std::set<u64> out;
      for (u64 x : elems)
        if (other.elems.count(x)) out.insert(x);
      return finite(std::move(out));
    }
    if (!cofinite) {
      std::set<u64> out;
      for (u64 x : elems)
        if (other.contains(x)) out.insert(x);
      return finite(std::move(out));
    }
    if (!other.cofinite) return other.intersect(*this);
    std::set<u64> out = elems;
    out.insert(other.elems.begin(), other.elems.end());
    return cofinite_excluding(std::move(out));
  }

  bool empty_set() const { return !cofinite && elems.empty(); }
};

// Exact rational in [0, 1] for metric values. Numerators and denominators
// stay tiny (metric values are 0, 1 or 1/(m+1)), so 64-bit arithmetic
// is ample.
struct Rational {
  i64 num = 0;
  i64 den = 1;

  Rational() = default;
  Rational(i64 n, i64 d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    i64 g = gcd64(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  static i64 gcd64(i64 a, i64 b) { while (b) { i64 t = a % b; a = b; b = t; } return a < 0 ? -a : a; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.num * b.den <= b.num * a.den; }

  Rational operator+(const Rational& o) const { return Rational(num * o.den + o.num * den, den * o.den); }

  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

inline Rational rat_max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// Deterministic RNG for all seeded sampling. A thin wrapper so every module
// draws numbers the same way regardless of platform.
class Rng {
 public:
  explicit Rng(u64 seed) : eng_(seed) {}

  u64 below(u64 n) {  // uniform in [0, n)
    if (n == 0) throw std::invalid_argument("Rng::below(0)");
    return std::uniform_int_distribution<u64>(0, n - 1)(eng_);
  }
  u64 range(u64 lo, u64 hi) { return lo + below(hi - lo + 1); }  // inclusive
  bool coin() { return below(2) == 1; }
  double real() { return std::uniform_real_distribution<double>(0.0, 1.0)(eng_); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 eng_;
};

// Incrementally discovered order isomorphism between
//   { n : !skip_source(n) }  and  { n : !skip_target(n) },
// both enumerated in increasing order. Evaluation scans forward once and
// caches everything, so repeated queries are cheap. Used to complete
// partially pinned permutations canonically.
class OrderIso {
 public:
  OrderIso(std::function<bool(u64)> skip_source, std::function<bool(u64)> skip_target)
      : skip_src_(std::move(skip_source)), skip_tgt_(std::move(skip_target)) {}

  u64 map(u64 src) {
    std::size_t r = source_rank(src);
    return nth_target(r);
  }

  u64 inv(u64 tgt) {
    std::size_t r = target_rank(tgt);
    return nth_source(r);
  }

  std::size_t source_rank(u64 src) {
    extend_sources(src);
    auto it = src_rank_.find(src);
    if (it == src_rank_.end()) throw std::logic_error("OrderIso: not a source");
    return it->second;
  }

 private:
  void extend_sources(u64 upto) {
    while (src_frontier_ <= upto) {
      if (!skip_src_(src_frontier_)) {
        src_rank_[src_frontier_] = sources_.size();
        sources_.push_back(src_frontier_);
      }
      ++src_frontier_;
    }
  }
  void extend_targets(u64 upto) {
    while (tgt_frontier_ <= upto) {
      if (!skip_tgt_(tgt_frontier_)) {
        tgt_rank_[tgt_frontier_] = targets_.size();
        targets_.push_back(tgt_frontier_);
      }
      ++tgt_frontier_;
    }
  }
  std::size_t target_rank(u64 tgt) {
    extend_targets(tgt);
    auto it = tgt_rank_.find(tgt);
    if (it == tgt_rank_.end()) throw std::logic_error("OrderIso: not a target");
    return it->second;
  }
  u64 nth_target(std::size_t r) {
    while (targets_.size() <= r) {
      if (!skip_tgt_(tgt_frontier_)) {
        tgt_rank_[tgt_frontier_] = targets_.size();
        targets_.push_back(tgt_frontier_);
      }
      ++tgt_frontier_;
    }
    return targets_[r];
  }
  u64 nth_source(std::size_t r) {
    while (sources_.size() <= r) {
      if (!skip_src_(src_frontier_)) {
        src_rank_[src_frontier_] = sources_.size();
        sources_.push_back(src_frontier_);
      }
      ++src_frontier_;
    }
    return sources_[r];
  }

  std::function<bool(u64)> skip_src_, skip_tgt_;
  u64 src_frontier_ = 0, tgt_frontier_ = 0;
  std::vector<u64> sources_, targets_;
  std::map<u64, std::size_t> src_rank_, tgt_rank_;
};

}  // namespace semitop
