#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "semitop/common.hpp"

namespace semitop {

// Subsets of {0..n-1} as bitmasks; n stays small (<= ~20) so explicit
// open-set families are cheap.
using Mask = u64;

struct FiniteTopology {
  u64 n = 0;
  std::set<Mask> opens;

  static FiniteTopology discrete(u64 n);
  static FiniteTopology indiscrete(u64 n);

  Mask full() const { return n == 0 ? 0 : (Mask(1) << n) - 1; }
  bool is_open(Mask m) const { return opens.count(m) > 0; }
  bool valid() const;

  // Finite spaces have a least open set around each point.
  Mask min_open(u64 x) const;
  Mask interior(Mask m) const;
  Mask closure(Mask m) const;

  bool t0() const;
  bool t1() const;
  bool t2() const;

  friend bool operator==(const FiniteTopology&, const FiniteTopology&) = default;
  friend auto operator<=>(const FiniteTopology&, const FiniteTopology&) = default;
};

// Least topology containing the given sets. Throws if a set leaks outside
// the ground set.
FiniteTopology generate_topology(const std::vector<Mask>& subbasis, u64 n);

struct SeparationFlags {
  bool t0 = false, t1 = false, t2 = false;
};
SeparationFlags separation(const FiniteTopology& t);

FiniteTopology intersect_topologies(const std::vector<FiniteTopology>& ts);

// All topologies on n labeled points, each exactly once (sorted). Two
// independent routes: filtering every family of subsets, and closing every
// subbasis then deduplicating. Capped (default 4; SEMITOP_CAP applies at
// the CLI layer).
std::vector<FiniteTopology> enumerate_topologies(u64 n, u64 cap = 4);
std::vector<FiniteTopology> enumerate_topologies_by_closure(u64 n, u64 cap = 4);

struct FiniteSemigroup {
  u64 n = 0;
  std::vector<u64> table;  // table[a * n + b] = value of a followed by b
  std::optional<u64> identity_idx;
  std::vector<u64> inverse;  // semigroup inverses, empty when not an inverse semigroup

  u64 mul(u64 a, u64 b) const { return table[static_cast<std::size_t>(a * n + b)]; }
  bool associative() const;
  bool commutative() const;
  std::optional<u64> find_identity() const;
  std::optional<u64> find_zero() const;
  // Unique y with xyx = x and yxy = y for every x, if such exists.
  std::optional<std::vector<u64>> find_inversion() const;
  void annotate();  // fill identity_idx and inverse when they exist
  bool is_inverse() const { return !inverse.empty(); }
  bool is_group() const;

  // Adjoin an identity unconditionally; new element has index n.
  FiniteSemigroup with_identity_adjoined() const;
  // S^1: the semigroup itself when it has an identity, else adjoin one.
  FiniteSemigroup monoid_completion() const;

  FiniteSemigroup relabel(const std::vector<u64>& perm) const;
  // Lexicographically least table over all relabelings; isomorphism invariant.
  std::vector<u64> canonical_table() const;

  friend bool operator==(const FiniteSemigroup&, const FiniteSemigroup&) = default;
};

FiniteSemigroup direct_product(const FiniteSemigroup& a, const FiniteSemigroup& b);

// Stock constructions.
FiniteSemigroup left_zero_semigroup(u64 n);
FiniteSemigroup right_zero_semigroup(u64 n);
FiniteSemigroup null_semigroup(u64 n);        // every product is 0
FiniteSemigroup cyclic_group(u64 n);
FiniteSemigroup chain_semilattice(u64 n, bool use_max = true);
FiniteSemigroup monogenic(u64 index, u64 period);  // a^{index+period} = a^{index}
FiniteSemigroup full_transformation_monoid(u64 k);  // order k^k
FiniteSemigroup symmetric_inverse_monoid(u64 k);    // partial bijections of {0..k-1}
FiniteSemigroup symmetric_group(u64 k);

// All semigroups of order n up to isomorphism (exhaustive; n <= 3).
std::vector<FiniteSemigroup> all_semigroups_upto_iso(u64 n);
// A library of >= 50 semigroups of order <= 4: everything of order <= 3 plus
// pairwise non-isomorphic order-4 entries built from the stock constructions.
std::vector<FiniteSemigroup> semigroup_library();

struct ContinuityCounterexample {
  u64 a = 0, b = 0;
  Mask open_u = 0;
};

struct SemigroupTopologyCheck {
  bool topological = false;
  bool left_semitopological = false;   // every map x -> a.x continuous
  bool right_semitopological = false;  // every map x -> x.a continuous
  std::optional<ContinuityCounterexample> counterexample;  // for the joint check
};

SemigroupTopologyCheck check_semigroup_topology(const FiniteSemigroup& s, const FiniteTopology& t);

// Is x -> inverse[x] continuous?
bool inversion_continuous(const FiniteSemigroup& s, const FiniteTopology& t);

// JSON I/O. Cayley: {"order": n, "table": [[..],..], "identity": i?, "inverse": [..]?}
// Topology: {"n": n, "opens": [[..],..]}.
std::string semigroup_to_json(const FiniteSemigroup& s);
FiniteSemigroup semigroup_from_json(const std::string& text);
std::string topology_to_json(const FiniteTopology& t);
FiniteTopology topology_from_json(const std::string& text);

}  // namespace semitop
