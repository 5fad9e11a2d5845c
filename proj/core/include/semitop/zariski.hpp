#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semitop/computable.hpp"
#include "semitop/fintop.hpp"

namespace semitop {

enum class ZariskiMode { Semigroup, Inverse };
enum class WordMode { Strict, WithConstants };

// One letter of a word: contributes t * s^eps, with t drawn from the monoid
// completion of the ambient semigroup and eps in {+1, -1} (-1 only in
// inverse mode).
struct WordLetter {
  u64 t;
  int eps = 1;
  friend bool operator==(const WordLetter&, const WordLetter&) = default;
};

// A map S -> S induced by a word t0 s^e0 t1 s^e1 ... (k >= 1), or a constant
// map when `constant` is set (admitted in WithConstants mode only).
struct WordFunction {
  std::vector<u64> induced;
  std::vector<WordLetter> word;
  std::optional<u64> constant;

  u64 at(u64 x) const { return induced[static_cast<std::size_t>(x)]; }
  friend bool operator==(const WordFunction&, const WordFunction&) = default;
};

// Replays the witness word on the completion and compares with `induced`.
bool word_witness_valid(const FiniteSemigroup& s, const WordFunction& w);

// All word-induced maps by fixed-point closure over "append one letter",
// one shortest witness per distinct map, deterministically ordered by the
// induced map. Inverse mode requires an inversion map on s.
std::vector<WordFunction> word_functions(const FiniteSemigroup& s, ZariskiMode mode,
                                         WordMode words);

// Independent oracle: the induced maps of all words of length 1, 2, ...,
// level by level, until a whole level contributes no new induced map.
// Returns the sorted set of induced maps. Throws if level_cap is hit
// before stabilization (cannot happen below n^n + 2 levels).
std::vector<std::vector<u64>> word_functions_bruteforce(const FiniteSemigroup& s,
                                                        ZariskiMode mode, WordMode words,
                                                        u64 level_cap = 600);

struct ElementaryAlgebraicSet {
  Mask points = 0;
  std::size_t phi0 = 0, phi1 = 0;  // indices into the family's word list
};

struct ElementaryAlgebraicFamily {
  std::vector<WordFunction> words;
  std::vector<ElementaryAlgebraicSet> sets;  // deduplicated by point set
};

ElementaryAlgebraicFamily elementary_algebraic(const FiniteSemigroup& s, ZariskiMode mode,
                                               WordMode words);

FiniteTopology zariski_topology(const FiniteSemigroup& s, ZariskiMode mode, WordMode words);

// All table-preserving bijections of s (or table-reversing, when anti).
std::vector<std::vector<u64>> semigroup_automorphisms(const FiniteSemigroup& s, bool anti = false);

// Expected elementary algebraic sets on the n-chain with max as product:
// {x : max(a,x) = max(b,x)} and {x : max(a,x) = b}.
Mask chain_expected_eq(u64 n, u64 a, u64 b);
Mask chain_expected_level(u64 n, u64 a, u64 b);

struct PointwiseHypothesesReport {
  Verdict cond_point_split = Verdict::unknown("not checked");   // (y)a = (y)b iff y != x
  Verdict cond_image = Verdict::unknown("not checked");         // x in im(c_i) for all i
  Verdict cond_fiber_avoid = Verdict::unknown("not checked");   // per sampled s, y != (x)s
  std::string detail;

  Verdict overall() const {
    for (const Verdict* v : {&cond_point_split, &cond_image, &cond_fiber_avoid})
      if (v->is_false()) return Verdict::no();
    for (const Verdict* v : {&cond_point_split, &cond_image, &cond_fiber_avoid})
      if (v->is_unknown()) return Verdict::unknown(v->reason);
    return Verdict::yes();
  }
};

// Window check of the three separation hypotheses at the point x: a and b
// agree exactly off x; x lies in every im(c_i); and for every sampled s and
// every y != (x)s below the window, some im(c_i) misses the s-fiber of y.
// Sampled elements are drawn from `ambient` with the given seed.
PointwiseHypothesesReport check_pointwise_hypotheses(Family ambient, u64 x,
                                                     const ComputableElement& a,
                                                     const ComputableElement& b,
                                                     const std::vector<ComputableElement>& cs,
                                                     u64 window, u64 samples = 8, u64 seed = 0);

}  // namespace semitop
