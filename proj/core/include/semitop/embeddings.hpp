#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semitop/common.hpp"
#include "semitop/elements.hpp"
#include "semitop/fintop.hpp"

namespace semitop {

// Partition of {0..n-1}, stored as a class index per element and normalized
// so class ids appear in first-occurrence order.
struct RightCongruence {
  u64 n = 0;
  std::vector<u64> class_of;

  static RightCongruence identity(u64 n);
  static RightCongruence universal(u64 n);
  // Throws unless the classes partition {0..n-1} exactly.
  static RightCongruence from_classes(u64 n, const std::vector<std::vector<u64>>& classes);

  void normalize();
  u64 class_count() const;
  std::vector<std::vector<u64>> classes() const;
  friend bool operator==(const RightCongruence&, const RightCongruence&) = default;
};

std::string congruence_to_json(const RightCongruence& rho);  // {"classes": [[..],..]}
RightCongruence congruence_from_json(const std::string& text);

struct CongruenceCounterexample {
  u64 a = 0, b = 0, c = 0;  // a,b share a class but ac, bc do not
};

struct CongruenceCheck {
  bool ok = false;
  std::optional<CongruenceCounterexample> counterexample;
};

// Right compatibility of the partition: (a,b) in a class implies (ac,bc) in
// a class, checked over all triples. Throws on a malformed partition.
CongruenceCheck is_right_congruence(const FiniteSemigroup& s, const RightCongruence& rho);

// All right congruences of s, each exactly once, by filtering every
// partition. Capped at |S| <= 8.
std::vector<RightCongruence> enumerate_right_congruences(const FiniteSemigroup& s);

// Per-element record of the dichotomy: either every t in s's class has
// t t^-1 in the identity class (branch a), or the class absorbs right
// multiplication (branch b).
struct VPBranch {
  u64 s = 0;
  bool branch_a = false;
  bool branch_b = false;
  std::optional<u64> a_violation;  // t in s/rho with t t^-1 outside 1's class
  std::optional<u64> b_violation;  // t with st/rho != s/rho
};

struct VPCertificate {
  bool ok = false;
  std::vector<VPBranch> branches;    // one per element
  std::optional<u64> violating_s;    // set when ok is false
};

// Requires an inverse monoid (identity and inversion present after
// annotate()); throws otherwise.
VPCertificate is_vagner_preston(const FiniteSemigroup& s, const RightCongruence& rho);

struct EmbedCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

// Action of a monoid on the disjoint union of the congruences' class sets:
// the class c of rho_i is the point offset[i] + c, and m sends n/rho_i to
// (nm)/rho_i. Classes of distinct congruences stay distinct points even
// when equal as subsets.
struct Luke1Embedding {
  FiniteSemigroup s1;        // monoid completion the action is built on
  bool identity_adjoined = false;
  std::vector<RightCongruence> rhos;  // on s1; extended by a singleton class when adjoined
  u64 points = 0;
  std::vector<u64> offset;
  std::vector<FiniteTransformation> images;  // per element of s1
  bool homomorphism = false;
  bool injective = false;
  std::vector<EmbedCheck> checks;
};

Luke1Embedding luke1_embed(const FiniteSemigroup& m, const std::vector<RightCongruence>& rhos);

// Total map on n+1 points fixing the sentinel n and sending undefined
// points to it.
FiniteTransformation natural_embed(const FinitePartialMap& f);

struct UnembedResult {
  std::optional<FinitePartialMap> map;
  std::string reason;  // set when the input does not fix the sentinel
};

UnembedResult natural_unembed(const FiniteTransformation& g);

// Partial-bijection action on the class points: n/rho_i maps to (nf)/rho_i
// when n n^-1 lies in the identity class and n/rho_i = n f f^-1 /rho_i,
// and is undefined otherwise.
struct VPEmbedding {
  std::vector<RightCongruence> rhos;
  u64 points = 0;
  std::vector<u64> offset;
  std::vector<FinitePartialBijection> images;  // per element of s
  bool homomorphism = false;
  bool injective = false;
  bool inversion_preserved = false;
  bool separating = false;  // classes and their inverse images split every pair
  std::vector<EmbedCheck> checks;
};

// Requires an inverse monoid and Vagner-Preston congruences; throws
// otherwise. Injectivity is verified on the images, never assumed.
VPEmbedding vp_embed(const FiniteSemigroup& s, const std::vector<RightCongruence>& rhos);

std::string luke1_report_json(const Luke1Embedding& e);
std::string vp_report_json(const VPEmbedding& e);

// The congruences induced by a concrete action on {0..d-1}: f and g share a
// class of rho_i when both are undefined at i or both are defined with the
// same value. The element list must be duplicate-free and closed under
// composition, and form an inverse monoid.
struct ActionCongruences {
  FiniteSemigroup s;  // Cayley table of the listed elements, annotated
  std::vector<RightCongruence> rhos;          // one per action point
  std::vector<VPCertificate> certificates;    // each expected ok
};

ActionCongruences vp_congruences_from_action(const std::vector<FinitePartialBijection>& elems);

}  // namespace semitop
