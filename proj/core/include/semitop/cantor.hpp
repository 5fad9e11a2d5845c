#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "semitop/common.hpp"

namespace semitop {

// Points of the Cantor space are infinite bit sequences; everything here
// works on finite prefixes of them.
using Bits = std::vector<uint8_t>;

std::string bits_str(const Bits& b);
Bits parse_bits(const std::string& s);
Bits pad_zero(Bits b, u64 len);

// Exact dyadic rational num / 2^exp.
struct Dyadic {
  u64 num = 0;
  u64 exp = 0;

  Dyadic normalized() const;
  std::string str() const;  // "p/2^k"
  static Dyadic parse(const std::string& s);
};

Dyadic dy(u64 num, u64 exp);
bool operator==(const Dyadic& a, const Dyadic& b);
bool operator<(const Dyadic& a, const Dyadic& b);
bool operator<=(const Dyadic& a, const Dyadic& b);
Dyadic dy_add(const Dyadic& a, const Dyadic& b);
Dyadic dy_max(const Dyadic& a, const Dyadic& b);

struct DyadicInterval {
  Dyadic lower, upper;
  std::string str() const;
};

// A continuous self-map of the Cantor space given by prefix data: to produce
// k output bits the evaluator may read up to modulus(k) input bits. The
// modulus must be monotone; evaluators must be consistent under refinement
// (longer inputs extend, never contradict, shorter outputs).
struct PrefixMap {
  std::function<u64(u64)> modulus;
  std::function<Bits(const Bits&, u64)> eval;
  std::shared_ptr<PrefixMap> inverse;  // carried when the map is a homeomorphism
  std::string label;

  Bits apply(const Bits& in, u64 k) const;  // checks in.size() >= modulus(k)
};

PrefixMap pm_id();
PrefixMap pm_flip(u64 i);
PrefixMap pm_xor(Bits mask);
PrefixMap pm_stream_swap();  // exchanges the even- and odd-indexed bit streams
PrefixMap pm_compose(const PrefixMap& f, const PrefixMap& g);  // apply f, then g
PrefixMap parse_prefix_map(const std::string& dsl);

// Pairs of Cantor points ride on single sequences by bit interleaving:
// merge(a, b) has a on the even positions and b on the odd ones.
Bits interleave_bits(const Bits& a, const Bits& b);
std::pair<Bits, Bits> deinterleave_bits(const Bits& x);

struct PairCodec {
  PrefixMap to_first;   // x -> even-position bits
  PrefixMap to_second;  // x -> odd-position bits
};
PairCodec interleave();

// Closed subsets as pruned binary trees: a prefix is extendable when some
// point of the set extends it. Extendable prefixes always have an extendable
// child.
struct ClosedTree {
  std::function<bool(const Bits&)> extendable;
  std::string label;
  bool empty() const { return !extendable({}); }
};

ClosedTree tree_all();
ClosedTree tree_cylinder(Bits prefix);
ClosedTree tree_diag();  // interleaved diagonal: bit 2i equals bit 2i+1
// Graph of s as a set of interleaved pairs (s(x), x); search_cap bounds the
// lookahead used when the modulus of s outruns the known input prefix.
ClosedTree tree_graph(const PrefixMap& s, u64 search_cap = 12);

// The canonical retraction onto a nonempty closed set: follow the input while
// it stays extendable, then continue along the lexicographically least
// branch. Fixes the set pointwise; modulus k+1.
PrefixMap retract(const ClosedTree& F);

// Extension of a near-identity homeomorphism phi : A -> B to a homeomorphism
// of the whole pair space that moves points less than eps, with the exact
// certified distance-to-identity interval and the split depth used for the
// tail bound.
struct MillExtension {
  PrefixMap map;
  DyadicInterval rho_inf_id;
  u64 split_depth = 0;
};

MillExtension mill_extend(const ClosedTree& A, const ClosedTree& B, const PrefixMap& phi,
                          const Dyadic& eps, u64 probe_depth = 16);

struct CantorWitness {
  PrefixMap f, t_s, g;
};

CantorWitness cantor_propx_witness(const PrefixMap& s);

// Exact interval for sup_x d(f(x), g(x)): lower bound achieved by a witness
// prefix at the given depth, upper bound lower + 2^-depth. Throws when the
// required input depth exceeds enum_cap.
DyadicInterval dinf_estimate(const PrefixMap& f, const PrefixMap& g, u64 depth,
                             u64 enum_cap = 20);

struct CantorCheck {
  bool ok = true;
  u64 points = 0;
  std::string detail;
};

CantorCheck pm_check_refinement(const PrefixMap& f, u64 depth);
CantorCheck verify_mill_identity(const MillExtension& ext, const ClosedTree& A,
                                 const PrefixMap& phi, u64 depth);
CantorCheck verify_cantor_witness(const CantorWitness& w, const PrefixMap& s, u64 depth);

std::string cantor_report_json(const std::string& map_dsl, u64 depth);

}  // namespace semitop
