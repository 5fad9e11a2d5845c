#include "semitop/propx.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

namespace semitop {
namespace {

using std::optional;

u64 need(const optional<u64>& v, const char* what) {
  if (!v) throw std::logic_error(std::string("undefined value where a total map was promised: ") + what);
  return *v;
}

bool total_family(Family f) {
  return f == Family::Transformation || f == Family::Injection || f == Family::Surjection ||
         f == Family::Permutation;
}

bool injective_family(Family f) {
  return f == Family::PartialBijection || f == Family::Injection || f == Family::Permutation;
}

ComputableElement make_perm(std::function<u64(u64)> fwd, std::function<u64(u64)> bwd,
                            std::string label) {
  ComputableElement e;
  e.family = Family::Permutation;
  e.eval = [fn = std::move(fwd)](u64 x) -> optional<u64> { return fn(x); };
  e.inv_eval = [fn = std::move(bwd)](u64 y) -> optional<u64> { return fn(y); };
  e.coimage_hint = Cardinal::fin(0);
  e.label = std::move(label);
  return e;
}

// Exact image/domain/inverse/co-image answers, from a finite support or from
// a permutation's own inverse. Everything the lazy completions consult must
// come through here so an undecidable input fails loudly instead of probing.
struct ElementMeta {
  std::function<bool(u64)> in_dom;
  std::function<bool(u64)> in_im;
  std::function<u64(u64)> inv;  // unique preimage; only called when in_im holds
  Cardinal coim;
  FinCof dom;
};

ElementMeta meta_for(const ComputableElement& e, const std::string& who) {
  ElementMeta m;
  if (e.support) {
    auto sup = std::make_shared<FiniteSupport>(*e.support);
    m.in_dom = [sup](u64 x) { return sup->eval(x).has_value(); };
    m.in_im = [sup](u64 y) { return sup->in_image(y); };
    m.inv = [sup, who](u64 y) -> u64 {
      auto xs = sup->fiber_elements(y);
      if (xs.empty()) throw std::logic_error(who + ": inverse probed outside the image");
      return xs.front();
    };
    m.coim = sup->coimage();
    m.dom = sup->domain();
    return m;
  }
  if (e.family == Family::Permutation && e.inv_eval) {
    auto inv = e.inv_eval;
    m.in_dom = [](u64) { return true; };
    m.in_im = [](u64) { return true; };
    m.inv = [inv, who](u64 y) { return need(inv(y), who.c_str()); };
    m.coim = Cardinal::fin(0);
    m.dom = FinCof::all();
    return m;
  }
  throw std::invalid_argument(who + ": image and domain questions about '" +
                              (e.label.empty() ? std::string("the element") : e.label) +
                              "' are undecidable without a finite support");
}

std::string elem_name(const ComputableElement& e) {
  return e.label.empty() ? std::string("element") : e.label;
}

// Pins (x, y) extracted from a descriptor expected to cut out a basic
// neighborhood of the total map t in a monoid of total maps. Exclusion and
// cardinality constraints can only throw t out of B.
std::map<u64, u64> extract_pins(const BasicNbhdDescriptor& B, const ComputableElement& t,
                                const std::string& who) {
  std::map<u64, u64> pins;
  for (const auto& c : B.constraints) {
    switch (c.kind) {
      case Constraint::PointValue:
      case Constraint::PairContained: {
        u64 have = need(t.eval(c.x), "t_s");
        if (have != c.y)
          throw std::invalid_argument(who + ": B is not centered at t_s (t_s(" +
                                      std::to_string(c.x) + ") = " + std::to_string(have) +
                                      ", constraint wants " + std::to_string(c.y) + ")");
        auto [it, fresh] = pins.emplace(c.x, c.y);
        if (!fresh && it->second != c.y)
          throw std::invalid_argument(who + ": B pins a point twice with different values");
        break;
      }
      case Constraint::DomainExcludes:
        throw std::invalid_argument(who + ": B is not centered at t_s (t_s is total but B excludes " +
                                    std::to_string(c.x) + " from the domain)");
      case Constraint::ImageExcludes:
        throw std::invalid_argument(who + ": B is not centered at t_s (t_s is surjective but B excludes " +
                                    std::to_string(c.y) + " from the image)");
      case Constraint::CoimageIs:
        if (!(c.kappa == Cardinal::fin(0)))
          throw std::invalid_argument(who + ": B is not centered at t_s (t_s has empty co-image)");
        break;  // vacuous on the ambient monoid
    }
  }
  return pins;
}

void require_in_U(bool ok, const std::string& who, const std::string& what) {
  if (!ok) throw std::invalid_argument(who + ": k does not satisfy U (" + what + ")");
}

// ---------------------------------------------------------------------------
// N^N over Sym. Pair codes stand in for X x X: code c names unpair2(c). The
// witness permutation t pushes the diagonal along s, (x,x) -> (x, s(x)), and
// completes the off-diagonal codes onto the unclaimed codes in order.

ComputableElement xx_f() {
  ComputableElement e;
  e.family = Family::Injection;
  e.eval = [](u64 x) -> optional<u64> { return pair2(x, x); };
  e.inv_eval = [](u64 c) -> optional<u64> {
    auto [a, b] = unpair2(c);
    if (a != b) return std::nullopt;
    return a;
  };
  e.coimage_hint = Cardinal::aleph0();
  e.label = "diag";
  return e;
}

ComputableElement xx_g() {
  ComputableElement e;
  e.family = Family::Surjection;
  e.eval = [](u64 c) -> optional<u64> { return unpair2(c).second; };
  e.label = "snd";
  return e;
}

ComputableElement xx_t(const ComputableElement& s) {
  if (!total_family(s.family) || !s.eval)
    throw std::invalid_argument("XX witness: s must be a total map on N");
  if (s.support && !s.support->total())
    throw std::invalid_argument("XX witness: s must be a total map on N");
  auto sv = s.eval;
  auto claimed = [sv](u64 v) {  // v is an image of the pinned diagonal part
    auto [a, b] = unpair2(v);
    auto w = sv(a);
    return w && *w == b;
  };
  auto iso = std::make_shared<OrderIso>(
      [](u64 c) {
        auto [a, b] = unpair2(c);
        return a == b;
      },
      claimed);
  auto fwd = [sv, iso](u64 c) -> u64 {
    auto [a, b] = unpair2(c);
    if (a == b) return pair2(a, need(sv(a), "XX t_s"));
    return iso->map(c);
  };
  auto bwd = [sv, iso](u64 v) -> u64 {
    auto [a, b] = unpair2(v);
    auto w = sv(a);
    if (w && *w == b) return pair2(a, a);
    return iso->inv(v);
  };
  return make_perm(fwd, bwd, "t[" + elem_name(s) + "]");
}

// t_k for the pinned neighborhood: keep the pinned codes, send each free
// diagonal (x,x) to (z_x, k(x)) with the z_x marching through the values no
// pinned image uses as a first coordinate, and complete the rest in order.
ComputableElement xx_tk(const std::map<u64, u64>& pins, const ComputableElement& k) {
  if (!total_family(k.family) || !k.eval)
    throw std::invalid_argument("XX transfer: k must be a total map on N");
  auto kv = k.eval;
  auto pin = std::make_shared<std::map<u64, u64>>(pins);
  auto pinval = std::make_shared<std::map<u64, u64>>();
  auto first_coords = std::make_shared<std::set<u64>>();
  for (const auto& [c, v] : pins) {
    (*pinval)[v] = c;
    first_coords->insert(unpair2(v).first);
  }
  auto ziso = std::make_shared<OrderIso>(
      [pin](u64 x) { return pin->count(pair2(x, x)) > 0; },
      [first_coords](u64 v) { return first_coords->count(v) > 0; });
  auto diag_image = [kv, ziso, first_coords](u64 v) {
    auto [al, be] = unpair2(v);
    if (first_coords->count(al)) return false;
    return need(kv(ziso->inv(al)), "XX t_k") == be;
  };
  auto iso = std::make_shared<OrderIso>(
      [pin](u64 c) {
        auto [a, b] = unpair2(c);
        return a == b || pin->count(c) > 0;
      },
      [pinval, diag_image](u64 v) { return pinval->count(v) > 0 || diag_image(v); });
  auto fwd = [pin, kv, ziso, iso](u64 c) -> u64 {
    auto it = pin->find(c);
    if (it != pin->end()) return it->second;
    auto [a, b] = unpair2(c);
    if (a == b) return pair2(ziso->map(a), need(kv(a), "XX t_k"));
    return iso->map(c);
  };
  auto bwd = [pinval, kv, ziso, iso, first_coords](u64 v) -> u64 {
    auto it = pinval->find(v);
    if (it != pinval->end()) return it->second;
    auto [al, be] = unpair2(v);
    if (!first_coords->count(al)) {
      u64 x = ziso->inv(al);
      if (need(kv(x), "XX t_k") == be) return pair2(x, x);
    }
    return iso->inv(v);
  };
  return make_perm(fwd, bwd, "t[" + elem_name(k) + "|pinned]");
}

// ---------------------------------------------------------------------------
// P_N over N^N. 0 is the absorbing point and x -> x+1 shifts N onto N \ {0}:
// t reads s off the shifted copy and parks everything undefined at 0.

ComputableElement px_f() {
  ComputableElement e;
  e.family = Family::Injection;
  e.eval = [](u64 x) -> optional<u64> { return x + 1; };
  e.inv_eval = [](u64 y) -> optional<u64> {
    if (y == 0) return std::nullopt;
    return y - 1;
  };
  e.coimage_hint = Cardinal::fin(1);
  e.label = "shift";
  return e;
}

ComputableElement px_g() {
  ComputableElement e;
  e.family = Family::PartialBijection;
  e.eval = [](u64 x) -> optional<u64> {
    if (x == 0) return std::nullopt;
    return x - 1;
  };
  e.inv_eval = [](u64 y) -> optional<u64> { return y + 1; };
  e.label = "unshift";
  return e;
}

ComputableElement px_t(const ComputableElement& s) {
  if (s.family == Family::Relation || !s.eval)
    throw std::invalid_argument("PX witness: s must be a partial map on N");
  auto sv = s.eval;
  ComputableElement e;
  e.family = Family::Transformation;
  e.eval = [sv](u64 x) -> optional<u64> {
    if (x == 0) return 0;
    auto v = sv(x - 1);
    return v ? *v + 1 : 0;
  };
  e.label = "t[" + elem_name(s) + "]";
  return e;
}

// ---------------------------------------------------------------------------
// I_N over Sym. f doubles; the completion t carries the doubled domain along
// s, parks the doubled co-domain on residue 1 mod 4, and spends the odd
// points on whatever is left, in order.

ComputableElement ix_f() {
  ComputableElement e;
  e.family = Family::Injection;
  e.eval = [](u64 x) -> optional<u64> { return 2 * x; };
  e.inv_eval = [](u64 y) -> optional<u64> {
    if (y % 2) return std::nullopt;
    return y / 2;
  };
  e.coimage_hint = Cardinal::aleph0();
  e.label = "double";
  return e;
}

ComputableElement ix_g() {
  ComputableElement e;
  e.family = Family::PartialBijection;
  e.eval = [](u64 y) -> optional<u64> {
    if (y % 2) return std::nullopt;
    return y / 2;
  };
  e.inv_eval = [](u64 x) -> optional<u64> { return 2 * x; };
  e.label = "halve";
  return e;
}

ComputableElement ix_t(const ComputableElement& s) {
  if (!injective_family(s.family))
    throw std::invalid_argument("IX witness: s must be a partial injective map");
  if (s.support && !s.support->injective())
    throw std::invalid_argument("IX witness: s must be a partial injective map");
  auto m = std::make_shared<ElementMeta>(meta_for(s, "IX witness"));
  auto sv = s.eval;
  auto iso = std::make_shared<OrderIso>(
      [](u64 x) { return x % 2 == 0; },
      [m](u64 v) {
        if (v % 2 == 0) return m->in_im(v / 2);          // carried by the domain sweep
        return v % 4 == 1 && !m->in_dom((v - 1) / 4);    // parked co-domain
      });
  auto fwd = [sv, iso](u64 x) -> u64 {
    if (x % 2) return iso->map(x);
    auto v = sv(x / 2);
    return v ? 2 * *v : 2 * x + 1;
  };
  auto bwd = [m, iso](u64 v) -> u64 {
    if (v % 2 == 0 && m->in_im(v / 2)) return 2 * m->inv(v / 2);
    if (v % 2 == 1 && v % 4 == 1 && !m->in_dom((v - 1) / 4)) return (v - 1) / 2;
    return iso->inv(v);
  };
  return make_perm(fwd, bwd, "t[" + elem_name(s) + "]");
}

// t_u for a pinned neighborhood R(pins, -, -) around t_s: keep the pins,
// carry dom(u) doubled, park the rest of the evens on the unpinned residue
// 1 mod 4, and spend the free odds on what remains.
ComputableElement ix_tk(const std::map<u64, u64>& pins, const ComputableElement& u) {
  if (!injective_family(u.family))
    throw std::invalid_argument("IX transfer: k must be a partial injective map");
  if (u.support && !u.support->injective())
    throw std::invalid_argument("IX transfer: k must be a partial injective map");
  auto m = std::make_shared<ElementMeta>(meta_for(u, "IX transfer"));
  auto uv = u.eval;
  auto kf = std::make_shared<std::map<u64, u64>>(pins);
  auto kb = std::make_shared<std::map<u64, u64>>();
  for (const auto& [x, y] : pins) (*kb)[y] = x;

  auto phi2 = std::make_shared<OrderIso>(
      [m, kf](u64 x) { return x % 2 == 1 || kf->count(x) > 0 || m->in_dom(x / 2); },
      [kb](u64 v) { return v % 4 != 1 || kb->count(v) > 0; });
  // How much of the 1 mod 4 pool the even sweep consumes: all of it when
  // dom(u) is finite, the first `budget` values when it is cofinite.
  optional<u64> budget;
  if (m->dom.cofinite) {
    u64 n = 0;
    for (u64 d : m->dom.elems)
      if (!kf->count(2 * d)) ++n;
    budget = n;
  }
  auto consumed_by_phi2 = [kb, budget](u64 v) {
    if (v % 4 != 1 || kb->count(v)) return false;
    if (!budget) return true;
    u64 rank = 0;  // position of v in the pool
    for (u64 w = 1; w < v; w += 4)
      if (!kb->count(w)) ++rank;
    return rank < *budget;
  };
  auto phi3 = std::make_shared<OrderIso>(
      [kf](u64 x) { return x % 2 == 0 || kf->count(x) > 0; },
      [m, kb, consumed_by_phi2](u64 v) {
        if (kb->count(v)) return true;
        if (v % 2 == 0) return m->in_im(v / 2);
        return consumed_by_phi2(v);
      });
  auto fwd = [kf, m, uv, phi2, phi3](u64 x) -> u64 {
    auto it = kf->find(x);
    if (it != kf->end()) return it->second;
    if (x % 2 == 0) {
      if (m->in_dom(x / 2)) return 2 * need(uv(x / 2), "IX t_k");
      return phi2->map(x);
    }
    return phi3->map(x);
  };
  auto bwd = [kb, m, phi2, phi3, consumed_by_phi2](u64 v) -> u64 {
    auto it = kb->find(v);
    if (it != kb->end()) return it->second;
    if (v % 2 == 0 && m->in_im(v / 2)) return 2 * m->inv(v / 2);
    if (consumed_by_phi2(v)) return phi2->inv(v);
    return phi3->inv(v);
  };
  return make_perm(fwd, bwd, "t[" + elem_name(u) + "|pinned]");
}

// ---------------------------------------------------------------------------
// B_N over Sym. Odd numbers are the free block Y; the evens split into the
// blocks X_i = { 2*pair2(i, m) } and f relates i to all of X_i. A permutation
// t then satisfies f.t.f~ = s exactly when its even-to-even pairs realize the
// pairs of s blockwise, so the completion plants one designated pair per
// relation pair and otherwise swaps parities, which can never add a crossing.

u64 bx_block_of(u64 even_point) { return unpair2(even_point / 2).first; }
u64 bx_a(u64 i, u64 j, u64 r) { return 2 * pair2(i, 2 * pair2(j, r)); }
u64 bx_b(u64 i, u64 j, u64 r) { return 2 * pair2(j, 2 * pair2(i, r) + 1); }

optional<std::tuple<u64, u64, u64>> bx_decode_a(u64 x) {
  if (x % 2) return std::nullopt;
  auto [i, m] = unpair2(x / 2);
  if (m % 2) return std::nullopt;
  auto [j, r] = unpair2(m / 2);
  return std::tuple<u64, u64, u64>{i, j, r};
}

optional<std::tuple<u64, u64, u64>> bx_decode_b(u64 y) {
  if (y % 2) return std::nullopt;
  auto [j, m] = unpair2(y / 2);
  if (m % 2 == 0) return std::nullopt;
  auto [i, r] = unpair2((m - 1) / 2);
  return std::tuple<u64, u64, u64>{i, j, r};
}

ComputableElement bx_f() {
  ComputableElement e;
  e.family = Family::Relation;
  e.rel_contains = [](u64 i, u64 y) { return y % 2 == 0 && bx_block_of(y) == i; };
  e.label = "blocks";
  return e;
}

ComputableElement bx_g() {
  ComputableElement e;
  e.family = Family::Relation;
  e.rel_contains = [](u64 y, u64 i) { return y % 2 == 0 && bx_block_of(y) == i; };
  e.label = "blocks~";
  return e;
}

// The shared plan of one blockwise completion: the target relation, the
// pinned pairs, and the designated crossing pair for each relation pair.
struct BxPlan {
  std::function<bool(u64, u64)> rel;
  std::map<u64, u64> kf, kb;

  optional<std::pair<u64, u64>> pin_witness(u64 i, u64 j) const {
    for (const auto& [a, b] : kf)
      if (a % 2 == 0 && b % 2 == 0 && bx_block_of(a) == i && bx_block_of(b) == j) return {{a, b}};
    return std::nullopt;
  }
  u64 rmin(u64 i, u64 j) const {
    for (u64 r = 0;; ++r)
      if (!kf.count(bx_a(i, j, r)) && !kb.count(bx_b(i, j, r))) return r;
  }
  // Is x / v the designated source / target of some relation pair?
  bool designated_source(u64 x) const {
    auto dec = bx_decode_a(x);
    if (!dec) return false;
    auto [i, j, r] = *dec;
    return rel(i, j) && !pin_witness(i, j) && r == rmin(i, j);
  }
  bool designated_target(u64 v) const {
    auto dec = bx_decode_b(v);
    if (!dec) return false;
    auto [i, j, r] = *dec;
    return rel(i, j) && !pin_witness(i, j) && r == rmin(i, j);
  }
};

std::function<bool(u64, u64)> bx_rel_of(const ComputableElement& s, const char* who) {
  if (!s.rel_support)
    throw std::invalid_argument(std::string(who) +
                                ": a finitary relation with declared support is required");
  auto sup = std::make_shared<RelationSupport>(*s.rel_support);
  return [sup](u64 i, u64 j) { return sup->contains(i, j); };
}

ComputableElement bx_t(std::shared_ptr<BxPlan> plan, std::string label) {
  auto even_onto_odd = std::make_shared<OrderIso>(
      [plan](u64 x) { return x % 2 == 1 || plan->kf.count(x) > 0 || plan->designated_source(x); },
      [plan](u64 v) { return v % 2 == 0 || plan->kb.count(v) > 0; });
  auto odd_onto_even = std::make_shared<OrderIso>(
      [plan](u64 x) { return x % 2 == 0 || plan->kf.count(x) > 0; },
      [plan](u64 v) { return v % 2 == 1 || plan->kb.count(v) > 0 || plan->designated_target(v); });
  auto fwd = [plan, even_onto_odd, odd_onto_even](u64 x) -> u64 {
    auto it = plan->kf.find(x);
    if (it != plan->kf.end()) return it->second;
    if (auto dec = bx_decode_a(x)) {
      auto [i, j, r] = *dec;
      if (plan->rel(i, j) && !plan->pin_witness(i, j) && r == plan->rmin(i, j))
        return bx_b(i, j, r);
    }
    return x % 2 == 0 ? even_onto_odd->map(x) : odd_onto_even->map(x);
  };
  auto bwd = [plan, even_onto_odd, odd_onto_even](u64 v) -> u64 {
    auto it = plan->kb.find(v);
    if (it != plan->kb.end()) return it->second;
    if (auto dec = bx_decode_b(v)) {
      auto [i, j, r] = *dec;
      if (plan->rel(i, j) && !plan->pin_witness(i, j) && r == plan->rmin(i, j))
        return bx_a(i, j, r);
    }
    return v % 2 == 1 ? even_onto_odd->inv(v) : odd_onto_even->inv(v);
  };
  return make_perm(fwd, bwd, std::move(label));
}

// Membership of (i, j) in f.t.f~ for a permutation built by bx_t: check the
// pinned and designated witnesses first, then sweep the first `window` slots
// of block i. Exact for these completions, which add no other crossings; a
// corrupted t shows up as a missing witness or as a stray crossing in the
// sweep.
Verdict bx_composite(const ComputableElement& t, const BxPlan& plan, u64 i, u64 j, u64 window) {
  auto in_block_j = [j](u64 v) { return v % 2 == 0 && bx_block_of(v) == j; };
  if (auto w = plan.pin_witness(i, j)) {
    if (in_block_j(need(t.eval(w->first), "BX composite"))) return Verdict::yes();
  } else if (plan.rel(i, j)) {
    u64 a = bx_a(i, j, plan.rmin(i, j));
    if (in_block_j(need(t.eval(a), "BX composite"))) return Verdict::yes();
  }
  for (u64 m = 0; m < window; ++m) {
    u64 a = 2 * pair2(i, m);
    if (in_block_j(need(t.eval(a), "BX composite"))) return Verdict::yes();
  }
  return Verdict::no();
}

// ---------------------------------------------------------------------------
// Inj(N) over Sym. The factorization is s = s . 1 . 1; all the content is in
// the transfer, which rebuilds k as s followed by a permutation that fixes
// the pinned points, carries im(s) to im(k), and matches up the leftovers in
// increasing order.

ComputableElement identity_perm() {
  return make_perm([](u64 x) { return x; }, [](u64 y) { return y; }, "1");
}

struct InjData {
  std::set<u64> ypinned;   // all pinned points
  std::set<u64> yfree;     // pinned points outside im(s)
  ElementMeta ms;
  ComputableElement s;
};

ComputableElement inj_tk(std::shared_ptr<InjData> d, const ComputableElement& k) {
  if (!total_family(k.family) || !injective_family(k.family))
    throw std::invalid_argument("InjX transfer: k must be a total injective map");
  auto mk = std::make_shared<ElementMeta>(meta_for(k, "InjX transfer"));
  if (k.support && !(k.support->total() && k.support->injective()))
    throw std::invalid_argument("InjX transfer: k must be a total injective map");
  require_in_U(mk->coim == d->ms.coim, "InjX transfer",
               "co-image size " + mk->coim.str() + " differs from " + d->ms.coim.str());
  for (u64 y : d->yfree)
    require_in_U(!mk->in_im(y), "InjX transfer", std::to_string(y) + " must stay outside im(k)");
  for (u64 y : d->ypinned)
    if (d->ms.in_im(y))
      require_in_U(need(k.eval(d->ms.inv(y)), "InjX transfer") == y, "InjX transfer",
                   "k must send " + std::to_string(d->ms.inv(y)) + " to " + std::to_string(y));
  auto kv = k.eval;
  auto sv = d->s.eval;
  auto iso = std::make_shared<OrderIso>(
      [d](u64 v) { return d->yfree.count(v) > 0 || d->ms.in_im(v); },
      [d, mk](u64 w) { return d->yfree.count(w) > 0 || mk->in_im(w); });
  auto fwd = [d, kv, iso](u64 v) -> u64 {
    if (d->yfree.count(v)) return v;
    if (d->ms.in_im(v)) return need(kv(d->ms.inv(v)), "InjX t_k");
    return iso->map(v);
  };
  auto bwd = [d, mk, sv, iso](u64 w) -> u64 {
    if (d->yfree.count(w)) return w;
    if (mk->in_im(w)) return need(sv(mk->inv(w)), "InjX t_k");
    return iso->inv(w);
  };
  return make_perm(fwd, bwd, "t[" + elem_name(k) + "|pinned]");
}

// ---------------------------------------------------------------------------
// O_N over Sym. Arity-n operations ride as unary maps on packed tuple codes.
// f doubles the code, g reads the first coordinate back off, and t carries
// each doubled code 2c to the pair <s(c), 2c>, which stays injective and
// leaves infinitely many values untouched.

ComputableElement fc_f(u64 arity) {
  ComputableElement e;
  e.family = Family::Injection;
  e.eval = [](u64 c) -> optional<u64> { return 2 * c; };
  e.inv_eval = [](u64 y) -> optional<u64> {
    if (y % 2) return std::nullopt;
    return y / 2;
  };
  e.coimage_hint = Cardinal::aleph0();
  e.label = "pack" + std::to_string(arity);
  return e;
}

ComputableElement fc_g() {
  ComputableElement e;
  e.family = Family::Surjection;
  e.eval = [](u64 y) -> optional<u64> { return unpair2(y).first; };
  e.label = "fst";
  return e;
}

ComputableElement fc_t(const ComputableElement& s) {
  if (!total_family(s.family) || !s.eval)
    throw std::invalid_argument("FullClone witness: s must be total on packed tuple codes");
  if (s.support && !s.support->total())
    throw std::invalid_argument("FullClone witness: s must be total on packed tuple codes");
  auto sv = s.eval;
  auto claimed = [sv](u64 v) {
    auto [w, m] = unpair2(v);
    return m % 2 == 0 && need(sv(m / 2), "FullClone t_s") == w;
  };
  auto iso = std::make_shared<OrderIso>([](u64 x) { return x % 2 == 0; }, claimed);
  auto fwd = [sv, iso](u64 x) -> u64 {
    if (x % 2 == 0) return pair2(need(sv(x / 2), "FullClone t_s"), x);
    return iso->map(x);
  };
  auto bwd = [sv, iso](u64 v) -> u64 {
    auto [w, m] = unpair2(v);
    if (m % 2 == 0 && need(sv(m / 2), "FullClone t_s") == w) return m;
    return iso->inv(v);
  };
  return make_perm(fwd, bwd, "t[" + elem_name(s) + "]");
}

ComputableElement fc_tk(const std::map<u64, u64>& pins, const ComputableElement& k) {
  if (!total_family(k.family) || !k.eval)
    throw std::invalid_argument("FullClone transfer: k must be total on packed tuple codes");
  auto kv = k.eval;
  auto pin = std::make_shared<std::map<u64, u64>>(pins);
  auto pinval = std::make_shared<std::map<u64, u64>>();
  for (const auto& [x, v] : pins) (*pinval)[v] = x;
  // Free even codes pick the least second-coordinate slot that dodges the
  // pinned values.
  auto slot = [pin, pinval, kv](u64 a) -> u64 {
    for (u64 r = 0;; ++r)
      if (!pinval->count(pair2(need(kv(a / 2), "FullClone t_k"), pair2(a, r)))) return pair2(a, r);
  };
  auto claimed = [pin, pinval, kv, slot](u64 v) {
    if (pinval->count(v)) return true;
    auto [w, m] = unpair2(v);
    auto [a, r] = unpair2(m);
    (void)r;
    if (a % 2 != 0 || pin->count(a)) return false;
    return need(kv(a / 2), "FullClone t_k") == w && m == slot(a);
  };
  auto iso = std::make_shared<OrderIso>(
      [pin](u64 x) { return x % 2 == 0 || pin->count(x) > 0; }, claimed);
  auto fwd = [pin, kv, slot, iso](u64 x) -> u64 {
    auto it = pin->find(x);
    if (it != pin->end()) return it->second;
    if (x % 2 == 0) return pair2(need(kv(x / 2), "FullClone t_k"), slot(x));
    return iso->map(x);
  };
  auto bwd = [pin, pinval, kv, slot, iso](u64 v) -> u64 {
    auto it = pinval->find(v);
    if (it != pinval->end()) return it->second;
    auto [w, m] = unpair2(v);
    auto [a, r] = unpair2(m);
    (void)r;
    if (a % 2 == 0 && !pin->count(a) && need(kv(a / 2), "FullClone t_k") == w && m == slot(a))
      return a;
    return iso->inv(v);
  };
  return make_perm(fwd, bwd, "t[" + elem_name(k) + "|pinned]");
}

Verdict constraint_verdict(const ComputableElement& e, const Constraint& c, u64 window) {
  switch (c.kind) {
    case Constraint::PointValue:
    case Constraint::PairContained: {
      if (!e.is_functional()) {
        if (e.relates(c.x, c.y)) return Verdict::yes();
        if (e.approx_relation)
          return Verdict::unknown("pair membership is only a bounded witness search");
        return Verdict::no();
      }
      auto v = e.eval ? e.eval(c.x) : std::nullopt;
      return v && *v == c.y ? Verdict::yes() : Verdict::no();
    }
    case Constraint::DomainExcludes: {
      Verdict d = domain_member(e, c.x);
      if (d.is_unknown()) return d;
      return d.is_true() ? Verdict::no() : Verdict::yes();
    }
    case Constraint::ImageExcludes: {
      Verdict d = image_member(e, c.y, window);
      if (d.is_unknown()) return d;
      return d.is_true() ? Verdict::no() : Verdict::yes();
    }
    case Constraint::CoimageIs: {
      auto cd = cardinal_data(e, window);
      if (!cd.coimage) return Verdict::unknown(cd.coimage_reason);
      return *cd.coimage == c.kappa ? Verdict::yes() : Verdict::no();
    }
  }
  return Verdict::unknown("unhandled constraint kind");
}

optional<u64> chain_eval(const ComputableElement& f, const ComputableElement& t,
                         const ComputableElement& g, u64 x) {
  auto a = f.eval(x);
  if (!a) return std::nullopt;
  auto b = t.eval(*a);
  if (!b) return std::nullopt;
  return g.eval(*b);
}

std::string opt_str(const optional<u64>& v) {
  return v ? std::to_string(*v) : std::string("undefined");
}

}  // namespace

std::string witness_monoid_name(WitnessMonoid m) {
  switch (m) {
    case WitnessMonoid::XX: return "XX";
    case WitnessMonoid::PX: return "PX";
    case WitnessMonoid::IX: return "IX";
    case WitnessMonoid::InjX: return "InjX";
    case WitnessMonoid::BX: return "BX";
    case WitnessMonoid::FullClone: return "FullClone";
    case WitnessMonoid::Sym: return "Sym";
  }
  return "?";
}

WitnessMonoid parse_witness_monoid(const std::string& name) {
  if (name == "XX") return WitnessMonoid::XX;
  if (name == "PX") return WitnessMonoid::PX;
  if (name == "IX") return WitnessMonoid::IX;
  if (name == "InjX") return WitnessMonoid::InjX;
  if (name == "BX") return WitnessMonoid::BX;
  if (name == "FullClone") return WitnessMonoid::FullClone;
  if (name == "Sym") return WitnessMonoid::Sym;
  throw std::invalid_argument("unknown witness monoid: " + name);
}

std::string Constraint::str() const {
  switch (kind) {
    case PointValue:
      return "h(" + std::to_string(x) + ")=" + std::to_string(y);
    case DomainExcludes:
      return std::to_string(x) + " notin dom";
    case ImageExcludes:
      return std::to_string(y) + " notin im";
    case CoimageIs:
      return "|coim|=" + kappa.str();
    case PairContained:
      return "(" + std::to_string(x) + "," + std::to_string(y) + ") in h";
  }
  return "?";
}

Verdict BasicNbhdDescriptor::contains(const ComputableElement& e, u64 window) const {
  optional<Verdict> pending;
  for (const auto& c : constraints) {
    Verdict v = constraint_verdict(e, c, window);
    if (v.is_false()) return v;
    if (v.is_unknown() && !pending) pending = v;
  }
  return pending ? *pending : Verdict::yes();
}

std::string BasicNbhdDescriptor::str() const {
  std::string out = witness_monoid_name(monoid) + "{";
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    if (i) out += ", ";
    out += constraints[i].str();
  }
  return out + "}";
}

WitnessBundle witness(WitnessMonoid m, const ComputableElement& s, u64 clone_arity) {
  WitnessBundle b;
  b.monoid = m;
  b.s = s;
  switch (m) {
    case WitnessMonoid::XX: {
      b.ambient = WitnessMonoid::Sym;
      b.f = xx_f();
      b.g = xx_g();
      b.t_builder = [](const ComputableElement& e) { return xx_t(e); };
      b.t_s = b.t_builder(s);
      auto ts = b.t_s;
      auto sref = s;
      b.transfer = [ts, sref](const BasicNbhdDescriptor& B) -> TransferResult {
        if (B.monoid != WitnessMonoid::Sym)
          throw std::invalid_argument("XX transfer: B must live in Sym");
        auto pins = extract_pins(B, ts, "XX transfer");
        TransferResult out;
        out.U.monoid = WitnessMonoid::XX;
        for (const auto& [c, v] : pins) {
          (void)v;
          auto [a, bb] = unpair2(c);
          if (a == bb) out.U.constraints.push_back(Constraint::point(a, need(sref.eval(a), "s")));
        }
        auto ucons = out.U.constraints;
        out.k_to_tk = [pins, ucons](const ComputableElement& k) {
          for (const auto& c : ucons)
            require_in_U(k.eval && k.eval(c.x) == optional<u64>(c.y), "XX transfer", c.str());
          return xx_tk(pins, k);
        };
        return out;
      };
      break;
    }
    case WitnessMonoid::PX: {
      b.ambient = WitnessMonoid::XX;
      b.f = px_f();
      b.g = px_g();
      b.t_builder = [](const ComputableElement& e) { return px_t(e); };
      b.t_s = b.t_builder(s);
      auto ts = b.t_s;
      b.transfer = [ts](const BasicNbhdDescriptor& B) -> TransferResult {
        if (B.monoid != WitnessMonoid::XX)
          throw std::invalid_argument("PX transfer: B must live in N^N");
        auto pins = extract_pins(B, ts, "PX transfer");
        TransferResult out;
        out.U.monoid = WitnessMonoid::PX;
        for (const auto& [x, y] : pins) {
          if (x == 0) continue;  // t(0) = 0 holds for every image under the formula
          if (y == 0)
            out.U.constraints.push_back(Constraint::no_domain(x - 1));
          else
            out.U.constraints.push_back(Constraint::point(x - 1, y - 1));
        }
        auto ucons = out.U.constraints;
        out.k_to_tk = [ucons](const ComputableElement& k) {
          if (k.family == Family::Relation || !k.eval)
            throw std::invalid_argument("PX transfer: k must be a partial map");
          for (const auto& c : ucons) {
            if (c.kind == Constraint::PointValue)
              require_in_U(k.eval(c.x) == optional<u64>(c.y), "PX transfer", c.str());
            else
              require_in_U(!k.eval(c.x).has_value(), "PX transfer", c.str());
          }
          return px_t(k);
        };
        return out;
      };
      break;
    }
    case WitnessMonoid::IX: {
      b.ambient = WitnessMonoid::Sym;
      b.f = ix_f();
      b.g = ix_g();
      b.t_builder = [](const ComputableElement& e) { return ix_t(e); };
      b.t_s = b.t_builder(s);
      auto ts = b.t_s;
      b.transfer = [ts](const BasicNbhdDescriptor& B) -> TransferResult {
        if (B.monoid != WitnessMonoid::Sym)
          throw std::invalid_argument("IX transfer: B must live in Sym");
        auto pins = extract_pins(B, ts, "IX transfer");
        TransferResult out;
        out.U.monoid = WitnessMonoid::IX;
        for (const auto& [x, y] : pins) {
          if (x % 2 == 0 && y % 2 == 0)
            out.U.constraints.push_back(Constraint::pair(x / 2, y / 2));
          else if (x % 2 == 0)
            out.U.constraints.push_back(Constraint::no_domain(x / 2));
          else if (y % 2 == 0)
            out.U.constraints.push_back(Constraint::no_image(y / 2));
        }
        auto ucons = out.U.constraints;
        out.k_to_tk = [pins, ucons](const ComputableElement& u) {
          auto mu = meta_for(u, "IX transfer");
          for (const auto& c : ucons) {
            if (c.kind == Constraint::PairContained)
              require_in_U(u.eval && u.eval(c.x) == optional<u64>(c.y), "IX transfer", c.str());
            else if (c.kind == Constraint::DomainExcludes)
              require_in_U(!mu.in_dom(c.x), "IX transfer", c.str());
            else
              require_in_U(!mu.in_im(c.y), "IX transfer", c.str());
          }
          return ix_tk(pins, u);
        };
        return out;
      };
      break;
    }
    case WitnessMonoid::InjX: {
      if (!total_family(s.family) || !injective_family(s.family))
        throw std::invalid_argument("InjX witness: s must be a total injective map");
      if (s.support && !(s.support->total() && s.support->injective()))
        throw std::invalid_argument("InjX witness: s must be a total injective map");
      b.ambient = WitnessMonoid::Sym;
      b.f = s;
      b.g = identity_perm();
      b.t_builder = [](const ComputableElement&) { return identity_perm(); };
      b.t_s = identity_perm();
      auto sref = s;
      b.transfer = [sref](const BasicNbhdDescriptor& B) -> TransferResult {
        if (B.monoid != WitnessMonoid::Sym)
          throw std::invalid_argument("InjX transfer: B must live in Sym");
        auto d = std::make_shared<InjData>(
            InjData{{}, {}, meta_for(sref, "InjX transfer"), sref});
        auto pins = extract_pins(B, identity_perm(), "InjX transfer");
        TransferResult out;
        out.U.monoid = WitnessMonoid::InjX;
        for (const auto& [y, v] : pins) {
          (void)v;  // centered check already forced v == y
          d->ypinned.insert(y);
          if (d->ms.in_im(y))
            out.U.constraints.push_back(Constraint::point(d->ms.inv(y), y));
          else {
            d->yfree.insert(y);
            out.U.constraints.push_back(Constraint::no_image(y));
          }
        }
        out.U.constraints.push_back(Constraint::coimage(d->ms.coim));
        out.k_to_tk = [d](const ComputableElement& k) { return inj_tk(d, k); };
        return out;
      };
      break;
    }
    case WitnessMonoid::BX: {
      b.ambient = WitnessMonoid::Sym;
      b.f = bx_f();
      b.g = bx_g();
      b.t_builder = [](const ComputableElement& e) {
        auto plan = std::make_shared<BxPlan>(BxPlan{bx_rel_of(e, "BX witness"), {}, {}});
        return bx_t(plan, "t[" + elem_name(e) + "]");
      };
      b.t_s = b.t_builder(s);
      auto splan = std::make_shared<BxPlan>(BxPlan{bx_rel_of(s, "BX witness"), {}, {}});
      b.composite_relates = [splan](const ComputableElement& t, u64 i, u64 j) {
        return bx_composite(t, *splan, i, j, 64);
      };
      auto ts = b.t_s;
      b.transfer = [ts](const BasicNbhdDescriptor& B) -> TransferResult {
        if (B.monoid != WitnessMonoid::Sym)
          throw std::invalid_argument("BX transfer: B must live in Sym");
        auto pins = extract_pins(B, ts, "BX transfer");
        TransferResult out;
        out.U.monoid = WitnessMonoid::BX;
        for (const auto& [a, v] : pins)
          if (a % 2 == 0 && v % 2 == 0)
            out.U.constraints.push_back(Constraint::pair(bx_block_of(a), bx_block_of(v)));
        auto ucons = out.U.constraints;
        out.k_to_tk = [pins, ucons](const ComputableElement& u) {
          auto rel = bx_rel_of(u, "BX transfer");
          for (const auto& c : ucons) require_in_U(rel(c.x, c.y), "BX transfer", c.str());
          auto plan = std::make_shared<BxPlan>(BxPlan{rel, pins, {}});
          for (const auto& [x, y] : pins) plan->kb[y] = x;
          return bx_t(plan, "t[" + elem_name(u) + "|pinned]");
        };
        return out;
      };
      break;
    }
    case WitnessMonoid::FullClone: {
      if (clone_arity == 0)
        throw std::invalid_argument("FullClone witness: arity must be at least 1");
      b.arity = clone_arity;
      b.ambient = WitnessMonoid::Sym;
      b.f = fc_f(clone_arity);
      b.g = fc_g();
      b.t_builder = [](const ComputableElement& e) { return fc_t(e); };
      b.t_s = b.t_builder(s);
      auto ts = b.t_s;
      auto sref = s;
      b.transfer = [ts, sref](const BasicNbhdDescriptor& B) -> TransferResult {
        if (B.monoid != WitnessMonoid::Sym)
          throw std::invalid_argument("FullClone transfer: B must live in Sym");
        auto pins = extract_pins(B, ts, "FullClone transfer");
        TransferResult out;
        out.U.monoid = WitnessMonoid::FullClone;
        for (const auto& [x, v] : pins) {
          (void)v;
          if (x % 2 == 0)
            out.U.constraints.push_back(Constraint::point(x / 2, need(sref.eval(x / 2), "s")));
        }
        auto ucons = out.U.constraints;
        out.k_to_tk = [pins, ucons](const ComputableElement& k) {
          for (const auto& c : ucons)
            require_in_U(k.eval && k.eval(c.x) == optional<u64>(c.y), "FullClone transfer",
                         c.str());
          return fc_tk(pins, k);
        };
        return out;
      };
      break;
    }
    case WitnessMonoid::Sym:
      throw std::invalid_argument("witness: Sym is an ambient tag, not a witnessed monoid");
  }
  return b;
}

IdentityReport verify_identity(const WitnessBundle& b, const ComputableElement& s, u64 window) {
  IdentityReport rep;
  if (b.monoid == WitnessMonoid::BX) {
    if (!b.composite_relates) {
      rep.ok = false;
      rep.detail = "bundle carries no composite membership procedure";
      return rep;
    }
    for (u64 i = 0; i < window && rep.ok; ++i)
      for (u64 j = 0; j < window; ++j) {
        bool lhs = s.relates(i, j);
        Verdict rhs = b.composite_relates(b.t_s, i, j);
        ++rep.points_checked;
        if (rhs.is_unknown() || (rhs.is_true() != lhs)) {
          rep.ok = false;
          rep.first_failure = pair2(i, j);
          rep.detail = "pair (" + std::to_string(i) + "," + std::to_string(j) + "): s says " +
                       (lhs ? "yes" : "no") + ", f.t.g says " +
                       (rhs.is_unknown() ? "unknown" : rhs.is_true() ? "yes" : "no");
          break;
        }
      }
    return rep;
  }
  for (u64 x = 0; x < window; ++x) {
    optional<u64> lhs = s.eval ? s.eval(x) : optional<u64>{};
    optional<u64> rhs = chain_eval(b.f, b.t_s, b.g, x);
    ++rep.points_checked;
    if (lhs != rhs) {
      rep.ok = false;
      rep.first_failure = x;
      rep.detail = "point " + std::to_string(x) + ": s gives " + opt_str(lhs) +
                   ", f.t.g gives " + opt_str(rhs);
      return rep;
    }
  }
  return rep;
}

IdentityReport verify_transfer(const WitnessBundle& b, const BasicNbhdDescriptor& B,
                               const ComputableElement& k, u64 window) {
  IdentityReport rep;
  auto fail = [&rep](std::string why) {
    rep.ok = false;
    rep.detail = std::move(why);
  };
  TransferResult tr = b.transfer(B);

  Verdict inU = tr.U.contains(k, window);
  if (!inU.is_true()) {
    fail("k is not in U: " + (inU.is_unknown() ? inU.reason : tr.U.str()));
    return rep;
  }
  ComputableElement tk = tr.k_to_tk(k);

  for (const auto& c : B.constraints) {
    Verdict v = constraint_verdict(tk, c, window);
    if (!v.is_true()) {
      fail("t_k violates B constraint " + c.str());
      return rep;
    }
  }

  if (b.ambient == WitnessMonoid::Sym) {
    std::set<u64> seen;
    for (u64 x = 0; x < window; ++x) {
      auto v = tk.eval(x);
      if (!v || !seen.insert(*v).second) {
        rep.first_failure = x;
        fail("t_k is not injective-total at " + std::to_string(x));
        return rep;
      }
      auto back = tk.inv_eval(*v);
      if (back != optional<u64>(x)) {
        rep.first_failure = x;
        fail("inverse disagrees at " + std::to_string(x));
        return rep;
      }
      ++rep.points_checked;
    }
    for (u64 y = 0; y < window; ++y) {
      auto x = tk.inv_eval(y);
      if (!x || tk.eval(*x) != optional<u64>(y)) {
        rep.first_failure = y;
        fail("t_k misses " + std::to_string(y) + " on the probed window");
        return rep;
      }
      ++rep.points_checked;
    }
  } else {
    // The ambient monoid is all total transformations: probe totality only.
    for (u64 x = 0; x < window; ++x) {
      if (!tk.eval(x)) {
        rep.first_failure = x;
        fail("t_k is undefined at " + std::to_string(x));
        return rep;
      }
      ++rep.points_checked;
    }
  }

  if (b.monoid == WitnessMonoid::BX) {
    auto rel = bx_rel_of(k, "BX verify");
    std::map<u64, u64> pins;
    for (const auto& c : B.constraints)
      if (c.kind == Constraint::PointValue || c.kind == Constraint::PairContained)
        pins[c.x] = c.y;
    BxPlan plan{rel, pins, {}};
    for (const auto& [x, y] : pins) plan.kb[y] = x;
    u64 side = std::min<u64>(window, 24);
    for (u64 i = 0; i < side; ++i)
      for (u64 j = 0; j < side; ++j) {
        bool lhs = rel(i, j);
        Verdict rhs = bx_composite(tk, plan, i, j, window);
        ++rep.points_checked;
        if (rhs.is_true() != lhs) {
          rep.first_failure = pair2(i, j);
          fail("pair (" + std::to_string(i) + "," + std::to_string(j) +
               "): k says " + (lhs ? "yes" : "no") + ", f.t_k.g disagrees");
          return rep;
        }
      }
    return rep;
  }

  for (u64 x = 0; x < window; ++x) {
    optional<u64> lhs = k.eval ? k.eval(x) : optional<u64>{};
    optional<u64> rhs = chain_eval(b.f, tk, b.g, x);
    ++rep.points_checked;
    if (lhs != rhs) {
      rep.first_failure = x;
      fail("point " + std::to_string(x) + ": k gives " + opt_str(lhs) + ", f.t_k.g gives " +
           opt_str(rhs));
      return rep;
    }
  }
  return rep;
}

WitnessBundle compose_bundles(const WitnessBundle& outer, const WitnessBundle& inner) {
  if (outer.ambient != inner.monoid)
    throw std::invalid_argument("compose_bundles: outer factors through " +
                                witness_monoid_name(outer.ambient) + " but inner witnesses " +
                                witness_monoid_name(inner.monoid));
  WitnessBundle b;
  b.monoid = outer.monoid;
  b.ambient = inner.ambient;
  b.arity = outer.arity;
  b.s = outer.s;
  b.f = compose(outer.f, inner.f);
  b.g = compose(inner.g, outer.g);
  b.t_s = inner.t_s;
  auto ob = outer.t_builder;
  auto ib = inner.t_builder;
  b.t_builder = [ob, ib](const ComputableElement& e) { return ib(ob(e)); };
  auto ot = outer.transfer;
  auto it = inner.transfer;
  b.transfer = [ot, it](const BasicNbhdDescriptor& B) -> TransferResult {
    TransferResult step = it(B);
    TransferResult out = ot(step.U);
    auto h1 = step.k_to_tk;
    auto h2 = out.k_to_tk;
    out.k_to_tk = [h1, h2](const ComputableElement& k) { return h1(h2(k)); };
    return out;
  };
  return b;
}

BasicNbhdDescriptor pin_neighborhood(const WitnessBundle& b, u64 npins) {
  BasicNbhdDescriptor B;
  B.monoid = b.ambient;
  bool pairs = b.monoid == WitnessMonoid::IX || b.monoid == WitnessMonoid::BX;
  for (u64 x = 0; x < npins; ++x) {
    u64 v = need(b.t_s.eval(x), "pin_neighborhood");
    B.constraints.push_back(pairs ? Constraint::pair(x, v) : Constraint::point(x, v));
  }
  return B;
}

ComputableElement sample_in_neighborhood(const WitnessBundle& b, const BasicNbhdDescriptor& U,
                                         Rng& rng, u64 window) {
  if (U.monoid != b.monoid)
    throw std::invalid_argument("sample_in_neighborhood: U belongs to " +
                                witness_monoid_name(U.monoid) + ", bundle to " +
                                witness_monoid_name(b.monoid));
  u64 top = 8;
  for (const auto& c : U.constraints) top = std::max({top, c.x + 1, c.y + 1});
  u64 L = std::max(window, top);

  switch (b.monoid) {
    case WitnessMonoid::XX:
    case WitnessMonoid::FullClone: {
      FiniteSupport sup;
      sup.cutoff = L;
      sup.table.resize(static_cast<std::size_t>(L));
      for (u64 x = 0; x < L; ++x) sup.table[static_cast<std::size_t>(x)] = rng.below(L);
      for (const auto& c : U.constraints) sup.table[static_cast<std::size_t>(c.x)] = c.y;
      sup.tail = {TailRule::Identity};
      return from_support(Family::Transformation, sup, "k");
    }
    case WitnessMonoid::PX: {
      FiniteSupport sup;
      sup.cutoff = L;
      sup.table.resize(static_cast<std::size_t>(L));
      for (u64 x = 0; x < L; ++x)
        sup.table[static_cast<std::size_t>(x)] =
            rng.coin() ? optional<u64>(rng.below(L)) : std::nullopt;
      for (const auto& c : U.constraints) {
        if (c.kind == Constraint::PointValue)
          sup.table[static_cast<std::size_t>(c.x)] = c.y;
        else
          sup.table[static_cast<std::size_t>(c.x)] = std::nullopt;
      }
      sup.tail = rng.coin() ? TailRule{TailRule::Identity} : TailRule{TailRule::Undefined};
      return from_support(Family::PartialMap, sup, "k");
    }
    case WitnessMonoid::IX: {
      FiniteSupport sup;
      sup.cutoff = L;
      sup.table.resize(static_cast<std::size_t>(L));
      std::set<u64> dom_banned, im_banned, used;
      for (const auto& c : U.constraints) {
        if (c.kind == Constraint::DomainExcludes) dom_banned.insert(c.x);
        if (c.kind == Constraint::ImageExcludes) im_banned.insert(c.y);
      }
      for (const auto& c : U.constraints)
        if (c.kind == Constraint::PairContained) {
          sup.table[static_cast<std::size_t>(c.x)] = c.y;
          used.insert(c.y);
        }
      for (u64 x = 0; x < L; ++x) {
        auto& cell = sup.table[static_cast<std::size_t>(x)];
        if (cell || dom_banned.count(x) || rng.below(3) != 0) continue;
        for (int tries = 0; tries < 8; ++tries) {
          u64 y = rng.below(L);
          if (!used.count(y) && !im_banned.count(y)) {
            cell = y;
            used.insert(y);
            break;
          }
        }
      }
      sup.tail = rng.coin() ? TailRule{TailRule::Identity} : TailRule{TailRule::Undefined};
      return from_support(Family::PartialBijection, sup, "k");
    }
    case WitnessMonoid::InjX: {
      std::set<u64> fixed;
      for (const auto& c : U.constraints) {
        if (c.kind == Constraint::PointValue) fixed.insert(c.y);
        if (c.kind == Constraint::ImageExcludes) fixed.insert(c.y);
      }
      u64 M = L;
      for (u64 y : fixed) M = std::max(M, y + 1);
      // A finite permutation fixing the pinned values; k = s . h keeps the
      // co-image size and every pin.
      std::vector<u64> spots;
      for (u64 v = 0; v < M; ++v)
        if (!fixed.count(v)) spots.push_back(v);
      std::vector<u64> img = spots;
      rng.shuffle(img);
      std::vector<u64> h(static_cast<std::size_t>(M));
      for (u64 v = 0; v < M; ++v) h[static_cast<std::size_t>(v)] = v;
      for (std::size_t i = 0; i < spots.size(); ++i) h[static_cast<std::size_t>(spots[i])] = img[i];
      if (b.s.support) {
        const FiniteSupport& ss = *b.s.support;
        FiniteSupport sup;
        sup.cutoff = std::max(M, ss.cutoff);
        sup.tail = ss.tail;
        sup.table.resize(static_cast<std::size_t>(sup.cutoff));
        for (u64 x = 0; x < sup.cutoff; ++x) {
          u64 sx = need(ss.eval(x), "InjX sample");
          sup.table[static_cast<std::size_t>(x)] = sx < M ? h[static_cast<std::size_t>(sx)] : sx;
        }
        return from_support(Family::Injection, sup, "k");
      }
      if (b.s.family == Family::Permutation && b.s.inv_eval) {
        auto hv = std::make_shared<std::vector<u64>>(h);
        std::vector<u64> hinv(static_cast<std::size_t>(M));
        for (u64 v = 0; v < M; ++v) hinv[static_cast<std::size_t>(h[static_cast<std::size_t>(v)])] = v;
        auto hb = std::make_shared<std::vector<u64>>(hinv);
        auto helt = make_perm(
            [hv, M](u64 x) { return x < M ? (*hv)[static_cast<std::size_t>(x)] : x; },
            [hb, M](u64 y) { return y < M ? (*hb)[static_cast<std::size_t>(y)] : y; }, "h");
        return compose(b.s, helt);
      }
      throw std::invalid_argument(
          "sample_in_neighborhood: sampling around an InjX element needs a finite support or a "
          "permutation inverse");
    }
    case WitnessMonoid::BX: {
      RelationSupport sup;
      for (const auto& c : U.constraints)
        if (c.kind == Constraint::PairContained) sup.pairs.insert({c.x, c.y});
      u64 extra = 1 + rng.below(4);
      for (u64 n = 0; n < extra; ++n) sup.pairs.insert({rng.below(8), rng.below(8)});
      sup.diagonal_tail = rng.coin();
      u64 cut = 0;
      for (const auto& [x, y] : sup.pairs) cut = std::max({cut, x + 1, y + 1});
      sup.cutoff = cut;
      return from_relation_support(sup, "k");
    }
    default:
      throw std::invalid_argument("sample_in_neighborhood: no sampler for " +
                                  witness_monoid_name(b.monoid));
  }
}

std::string propx_report_json(WitnessMonoid m, const ComputableElement& s, u64 window,
                              u64 samples, u64 seed, u64 clone_arity) {
  WitnessBundle b = witness(m, s, clone_arity);
  nlohmann::json j;
  j["command"] = "propx-verify";
  j["monoid"] = witness_monoid_name(m);
  j["element"] = elem_name(s);
  if (m == WitnessMonoid::FullClone) j["arity"] = clone_arity;
  j["window"] = window;
  j["samples"] = samples;
  j["seed"] = seed;

  IdentityReport idrep = verify_identity(b, s, window);
  j["identity"] = {{"ok", idrep.ok}, {"points", idrep.points_checked}};
  if (!idrep.ok) j["identity"]["detail"] = idrep.detail;

  bool all = idrep.ok;
  Rng rng(seed);
  nlohmann::json arr = nlohmann::json::array();
  for (u64 n = 0; n < samples; ++n) {
    u64 npins = 1 + rng.below(4);
    BasicNbhdDescriptor B = pin_neighborhood(b, npins);
    TransferResult tr = b.transfer(B);
    ComputableElement k = sample_in_neighborhood(b, tr.U, rng, window);
    IdentityReport rep = verify_transfer(b, B, k, window);
    nlohmann::json row = {{"pins", npins},
                          {"constraints", tr.U.constraints.size()},
                          {"points", rep.points_checked},
                          {"ok", rep.ok}};
    if (!rep.ok) row["detail"] = rep.detail;
    all = all && rep.ok;
    arr.push_back(row);
  }
  j["transfers"] = arr;
  j["ok"] = all;
  return j.dump(2);
}

}  // namespace semitop
