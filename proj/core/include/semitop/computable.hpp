#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "semitop/cardinal.hpp"
#include "semitop/common.hpp"
#include "semitop/elements.hpp"

namespace semitop {

enum class Family {
  Transformation,   // total map N -> N
  PartialMap,       // partial map
  PartialBijection, // partial injective map
  Injection,        // total injective map
  Surjection,       // total surjective map
  Relation,         // arbitrary binary relation
  Permutation,      // total bijection
};

std::string family_name(Family f);

// Behavior beyond the explicit table of a finitely supported element.
struct TailRule {
  enum Kind { Identity, Undefined, Affine, FloorDiv } kind = Identity;
  u64 m = 1;  // Affine: x -> m*x + c ; FloorDiv: x -> x / m
  u64 c = 0;

  std::optional<u64> apply(u64 x) const {
    switch (kind) {
      case Identity: return x;
      case Undefined: return std::nullopt;
      case Affine: return m * x + c;
      case FloorDiv: return x / m;
    }
    return std::nullopt;
  }
  std::string str() const;
  friend bool operator==(const TailRule&, const TailRule&) = default;
};

// Explicit values on [0, cutoff), a tail rule beyond. This is the decidable
// backbone: image, domain, fibers and co-image cardinality are all exactly
// computable from it.
struct FiniteSupport {
  u64 cutoff = 0;
  std::vector<std::optional<u64>> table;  // size == cutoff
  TailRule tail;

  std::optional<u64> eval(u64 x) const {
    return x < cutoff ? table[static_cast<std::size_t>(x)] : tail.apply(x);
  }
  FinCof domain() const;
  bool in_image(u64 y) const;
  Cardinal coimage() const;
  Cardinal fiber(u64 y) const;
  std::vector<u64> fiber_elements(u64 y) const;  // exact preimage list (always finite)
  bool injective() const;
  bool total() const;
};

// Finite pair set plus an optional diagonal tail, for relation elements.
struct RelationSupport {
  std::set<std::pair<u64, u64>> pairs;
  bool diagonal_tail = false;  // if set, (x, x) for all x >= cutoff
  u64 cutoff = 0;

  bool contains(u64 x, u64 y) const {
    if (diagonal_tail && x == y && x >= cutoff) return true;
    return pairs.count({x, y}) > 0;
  }
};

// An element of one of the studied monoids on N, given by procedures. The
// optional support/metadata make global questions (image membership,
// co-image size, fibers) decidable; without them such queries come back
// unknown with a reason.
struct ComputableElement {
  Family family = Family::Transformation;
  std::function<std::optional<u64>(u64)> eval;       // functional families
  std::function<std::optional<u64>(u64)> inv_eval;   // optional
  std::function<bool(u64, u64)> rel_contains;        // Relation family
  std::optional<Cardinal> coimage_hint;              // |N \ im|, if declared
  std::function<std::optional<Cardinal>(u64)> fiber_hint;  // declared fiber profile
  std::optional<FiniteSupport> support;
  std::optional<RelationSupport> rel_support;
  // Set when rel_contains is a bounded witness search: a false answer is then
  // inconclusive and membership queries should degrade to unknown.
  bool approx_relation = false;
  std::string label;

  std::optional<u64> operator()(u64 x) const { return eval(x); }
  bool is_functional() const { return family != Family::Relation; }
  bool relates(u64 x, u64 y) const;
};

// Constructors.
ComputableElement from_support(Family fam, FiniteSupport sup, std::string label = {});
ComputableElement from_relation_support(RelationSupport sup, std::string label = {});
ComputableElement from_partial_map(const FinitePartialMap& f, TailRule tail = {TailRule::Undefined});
ComputableElement from_partial_bijection(const FinitePartialBijection& f,
                                         TailRule tail = {TailRule::Undefined});

// Rule registry: identity, shift(k), double, pairing, floordiv(m),
// table([..];tail). Throws on unknown names.
ComputableElement make_rule(const std::string& name, const std::vector<u64>& args = {});
ComputableElement parse_computable(const std::string& dsl);  // "rule:shift(3)", "[2,-,1]", "{(0,1)}"

ComputableElement compose(const ComputableElement& f, const ComputableElement& g);
ComputableElement invert(const ComputableElement& f);

struct CardinalData {
  std::optional<Cardinal> coimage;
  std::string coimage_reason;  // set when coimage is nullopt
  std::function<std::pair<std::optional<Cardinal>, std::string>(u64)> fiber;
};

// Answers co-image and fiber questions from declared metadata or the finite
// support; falls back to window probing only to report what was seen, never
// to fabricate an exact answer.
CardinalData cardinal_data(const ComputableElement& a, u64 window);

// Pointwise equality of two elements on [0, window).
bool equal_on_window(const ComputableElement& a, const ComputableElement& b, u64 window);

// True if y has a preimage under f; exact when decidable, otherwise unknown.
Verdict image_member(const ComputableElement& f, u64 y, u64 window);
Verdict domain_member(const ComputableElement& f, u64 x);

// Seeded random finitely-supported element of the given family; size_hint
// controls the explicit-table width. Every produced element carries a
// support, so cardinality questions about it stay decidable.
ComputableElement sample_element(Family fam, Rng& rng, u64 size_hint = 8);

}  // namespace semitop
