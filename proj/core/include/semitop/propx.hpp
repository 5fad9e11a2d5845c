#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "semitop/cardinal.hpp"
#include "semitop/computable.hpp"

namespace semitop {

// Monoids that come with a constructive factorization witness, plus the two
// ambient monoids the witness permutations live in. Sym and XX appear as
// neighborhood tags only; witness() rejects Sym.
enum class WitnessMonoid { XX, PX, IX, InjX, BX, FullClone, Sym };

std::string witness_monoid_name(WitnessMonoid m);
WitnessMonoid parse_witness_monoid(const std::string& name);

// One conjunct of a basic neighborhood: a pinned value h(x) = y, a domain or
// image exclusion, an exact co-image cardinality, or a contained pair.
struct Constraint {
  enum Kind { PointValue, DomainExcludes, ImageExcludes, CoimageIs, PairContained } kind =
      PointValue;
  u64 x = 0;
  u64 y = 0;
  Cardinal kappa;

  static Constraint point(u64 x, u64 y) { return {PointValue, x, y, {}}; }
  static Constraint no_domain(u64 x) { return {DomainExcludes, x, 0, {}}; }
  static Constraint no_image(u64 y) { return {ImageExcludes, 0, y, {}}; }
  static Constraint coimage(Cardinal k) { return {CoimageIs, 0, 0, k}; }
  static Constraint pair(u64 x, u64 y) { return {PairContained, x, y, {}}; }

  std::string str() const;
};

// A finite conjunction of constraints cutting out a basic open set in the
// tagged monoid's topology.
struct BasicNbhdDescriptor {
  WitnessMonoid monoid = WitnessMonoid::Sym;
  std::vector<Constraint> constraints;

  // Does e satisfy every constraint? Exact where the element's metadata
  // allows; unknown carries the first undecidable constraint.
  Verdict contains(const ComputableElement& e, u64 window = 64) const;
  std::string str() const;
};

struct IdentityReport {
  bool ok = true;
  u64 points_checked = 0;
  std::optional<u64> first_failure;  // probe point; a pair2 code for BX
  std::string detail;
};

struct TransferResult {
  BasicNbhdDescriptor U;  // neighborhood of s
  std::function<ComputableElement(const ComputableElement&)> k_to_tk;
};

// The data of one factorization witness: s = f . t_s . g with t_s in the
// ambient monoid, together with the neighborhood transfer taking a basic
// neighborhood B of t_s to a neighborhood U of s and a procedure sending
// each k in U to t_k in B with f . t_k . g = k.
//
// Bundles are immutable once built, but t_s and every t_k memoize their lazy
// completions as they are probed. Those memo tables are not guarded: confine
// each element to one caller, or warm the window of interest on a single
// thread before sharing it read-only.
struct WitnessBundle {
  WitnessMonoid monoid = WitnessMonoid::XX;
  WitnessMonoid ambient = WitnessMonoid::Sym;
  u64 arity = 1;  // FullClone only: s acts on packed arity-tuples
  ComputableElement s;
  ComputableElement f, g;
  ComputableElement t_s;
  std::function<ComputableElement(const ComputableElement&)> t_builder;
  std::function<TransferResult(const BasicNbhdDescriptor&)> transfer;
  // BX only: decides (i, j) in f . t . g through the block structure of the
  // constructed permutation t.
  std::function<Verdict(const ComputableElement& t, u64 i, u64 j)> composite_relates;
};

// Builds the witness bundle for s in the tagged monoid. clone_arity is
// consulted only for FullClone, where s is the packed unary form of an
// arity-ary operation: s(code) = op(unpair_vec(code, arity)).
// Throws std::invalid_argument if s does not belong to the monoid or lacks
// metadata the construction needs to stay computable.
WitnessBundle witness(WitnessMonoid m, const ComputableElement& s, u64 clone_arity = 1);

// Checks s = f . t_s . g pointwise on [0, window), pairwise on the window
// square for BX. Failures land in the report, never in exceptions.
IdentityReport verify_identity(const WitnessBundle& b, const ComputableElement& s,
                               u64 window = 64);

// Full transfer exercise for one k: k satisfies U, t_k satisfies B, t_k is a
// permutation on the window (forward/backward agreement both ways), and
// f . t_k . g = k on the window.
IdentityReport verify_transfer(const WitnessBundle& b, const BasicNbhdDescriptor& B,
                               const ComputableElement& k, u64 window = 64);

// Composes witnesses along a chain: outer factors through the monoid inner
// lives in, inner through its own ambient. The result witnesses outer's
// monoid against inner's ambient.
WitnessBundle compose_bundles(const WitnessBundle& outer, const WitnessBundle& inner);

// Canonical basic neighborhood of t_s pinning its first npins values.
BasicNbhdDescriptor pin_neighborhood(const WitnessBundle& b, u64 npins);

// Seeded element of b's monoid satisfying every constraint of U.
ComputableElement sample_in_neighborhood(const WitnessBundle& b, const BasicNbhdDescriptor& U,
                                         Rng& rng, u64 window = 64);

// JSON verdict report: verify_identity plus `samples` seeded transfer
// exercises. Deterministic for a fixed (monoid, element, window, seed).
std::string propx_report_json(WitnessMonoid m, const ComputableElement& s, u64 window,
                              u64 samples, u64 seed, u64 clone_arity = 1);

}  // namespace semitop
