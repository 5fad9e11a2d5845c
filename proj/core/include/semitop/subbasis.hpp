#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semitop/cardinal.hpp"
#include "semitop/common.hpp"
#include "semitop/computable.hpp"

namespace semitop {

// Ambient monoids the named subbasic sets live on. The first six sit on N,
// MaxChainZ is the integers under max.
enum class Ambient { XX, PX, BX, IX, InjX, SurjX, MaxChainZ };

std::string ambient_name(Ambient a);
Ambient parse_ambient(const std::string& s);

enum class SetVariant {
  U,          // {h : (x,y) in h}
  W,          // {h : x not in dom h}
  Winv,       // {h : y not in im h}
  V,          // {h : (x,y) not in h}
  VYZ,        // {h : (Y)h subset of Z}, Y/Z finite or cofinite
  Fcard,      // {f injective : |N \ im f| = kappa}
  UFiber,     // {f surjective : |fiber of x| = kappa}
  GroupPart,  // the permutations inside Surj(N)
  OrderDown,  // {y in Z : y < x}
  OrderUp,    // {y in Z : y > x}
  BFM,        // {y in U : y > x}, U cofinite in Z, x optional (absent = no bound)
};

struct NamedSet {
  Ambient ambient = Ambient::IX;
  SetVariant variant = SetVariant::U;
  u64 x = 0, y = 0;             // U/V points, W's x, Winv's y, UFiber's x
  FinCof Y, Z;                  // VYZ
  Cardinal kappa;               // Fcard / UFiber
  std::optional<i64> cx;        // chain bound; nullopt on BFM = adjoined identity
  std::vector<i64> holes;       // chain BFM: complement of the cofinite U

  std::string str() const;
  friend bool operator==(const NamedSet&, const NamedSet&) = default;
};

NamedSet set_U(Ambient a, u64 x, u64 y);
NamedSet set_W(Ambient a, u64 x);
NamedSet set_Winv(Ambient a, u64 y);
NamedSet set_V(u64 x, u64 y);                    // I_N
NamedSet set_VYZ(FinCof Y, FinCof Z);            // B_N
NamedSet set_Fcard(Cardinal kappa);              // Inj(N)
NamedSet set_UFiber(Cardinal kappa, u64 x);      // Surj(N)
NamedSet set_GroupPart();                        // Surj(N)
NamedSet chain_down(i64 x);
NamedSet chain_up(i64 x);
NamedSet chain_bfm(std::optional<i64> x, std::vector<i64> holes);

// Text forms: "U(0,1)", "W(2)", "Winv(3)", "V(0,1)", "VYZ({0,1}, cof{2})",
// "F(inf)", "UF(3,0)", "Sym", "Down(3)", "Up(-2)", "BFM(0, cof{1})",
// "BFM(id, cof{})". The ambient argument applies to variants that occur in
// more than one monoid.
NamedSet parse_named_set(const std::string& text,
                         std::optional<Ambient> ambient = std::nullopt);

// Membership of a computable element, exact whenever the element's support or
// declared cardinal data decides it. Chain sets reject computable elements.
Verdict member(const ComputableElement& e, const NamedSet& s, u64 window = 64);
bool chain_member(i64 v, const NamedSet& s);

// R_{k,Y,Z} = {g : k subset of g, dom(g) disjoint from Y, im(g) disjoint from
// Z}; the basis of the topology generated by U, W and Winv on I_N. Empty marks
// an inconsistent constraint list.
struct BasicRSet {
  bool empty = false;
  std::vector<std::pair<u64, u64>> k;  // sorted, functional, injective
  std::vector<u64> Y, Z;               // sorted

  static BasicRSet make_empty() { return {true, {}, {}, {}}; }
  std::string str() const;
  friend bool operator==(const BasicRSet&, const BasicRSet&) = default;
};

// Intersects a list of U/W/Winv sets on I_N into the equivalent BasicRSet.
// Throws on any other variant.
BasicRSet normalize_I4(const std::vector<NamedSet>& sets);

Verdict rset_member(const ComputableElement& e, const BasicRSet& r, u64 window = 64);

enum class MetricId { d_I1, d1, d2, d4, d_inj };

std::string metric_name(MetricId m);
MetricId parse_metric_id(const std::string& s);

// Exact metric evaluation on finitely supported elements. d_I1 compares
// restrictions to n x n squares, d1/d2 go through the embedding that sends
// undefined points to a sentinel, d4 = max(d1, d2), d_inj adds a co-image
// cardinality test. Throws when an element carries no support.
Rational metric(MetricId id, const ComputableElement& f, const ComputableElement& g);

// The open ball {g : d4(f,g) < 1/(m+1)} as a BasicRSet: keeps the pairs of f
// meeting [0,m) on either side, and forbids the missing points of dom/im
// below m.
BasicRSet ball_to_basic(const ComputableElement& f, u64 m);

// The named topologies. Each owns an indexed enumeration of its subbasis.
enum class NamedTopologyId {
  Pointwise, P, B1, B2, I1, I2, I3, I4, J, S1, S2, MaxChainOrder, MaxChainFM,
};

std::string topology_name(NamedTopologyId id);
NamedTopologyId parse_topology_id(const std::string& s);
Ambient topology_ambient(NamedTopologyId id);
NamedSet topology_subbasis_at(NamedTopologyId id, u64 index);

// Separation witnesses: a center element, a family of probed basic
// neighborhoods, and for each one a checked element inside the neighborhood
// but outside the target set.
struct WitnessProbe {
  std::string neighborhood;
  std::vector<NamedSet> nbhd_sets;
  std::optional<ComputableElement> witness;
  std::optional<i64> chain_witness;
  bool in_neighborhood = false;
  bool outside_target = false;
};

struct SeparationWitness {
  std::string case_id;
  std::string claim;
  std::optional<ComputableElement> center;
  std::optional<i64> chain_center;
  std::optional<NamedSet> target;
  std::vector<WitnessProbe> probes;

  bool ok() const;
};

struct WitnessParams {
  u64 x = 0;                              // distinguished point
  std::vector<u64> Y;                     // explicit neighborhood parameters
  std::vector<std::pair<u64, u64>> h;     // finite partial bijection constraint
  u64 m = 6;                              // antichain size
  u64 bound = 3;                          // neighborhood enumeration bound
  i64 c = 0;                              // chain threshold
};

// case_id in {"Winv_not_in_I2", "ZariskiSet_not_I1", "B2_antichain",
// "MaxChain_FM_vs_HM"}.
SeparationWitness separation_witness(const std::string& case_id, const WitnessParams& p);

}  // namespace semitop
