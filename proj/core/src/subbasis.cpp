#include "semitop/subbasis.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>

namespace semitop {

std::string ambient_name(Ambient a) {
  switch (a) {
    case Ambient::XX: return "XX";
    case Ambient::PX: return "PX";
    case Ambient::BX: return "BX";
    case Ambient::IX: return "IX";
    case Ambient::InjX: return "InjX";
    case Ambient::SurjX: return "SurjX";
    case Ambient::MaxChainZ: return "MaxChainZ";
  }
  return "?";
}

Ambient parse_ambient(const std::string& s) {
  for (Ambient a : {Ambient::XX, Ambient::PX, Ambient::BX, Ambient::IX, Ambient::InjX,
                    Ambient::SurjX, Ambient::MaxChainZ})
    if (ambient_name(a) == s) return a;
  throw std::invalid_argument("unknown monoid tag '" + s + "'");
}

namespace {

Verdict bool_verdict(bool b) { return b ? Verdict::yes() : Verdict::no(); }

Verdict negate(const Verdict& v) {
  if (v.is_unknown()) return v;
  return v.is_true() ? Verdict::no() : Verdict::yes();
}

Verdict relate_verdict(const ComputableElement& e, u64 x, u64 y) {
  bool r = e.relates(x, y);
  if (!r && e.approx_relation)
    return Verdict::unknown("composite relation only supports a bounded witness search");
  return bool_verdict(r);
}

std::string fincof_str(const FinCof& s) {
  std::string out = s.cofinite ? "cof{" : "{";
  bool first = true;
  for (u64 x : s.elems) {
    if (!first) out += ",";
    out += std::to_string(x);
    first = false;
  }
  return out + "}";
}

void require_n_ambient(Ambient a, const char* variant) {
  if (a == Ambient::MaxChainZ)
    throw std::invalid_argument(std::string(variant) + " sets live on the N monoids");
}

}  // namespace

std::string NamedSet::str() const {
  switch (variant) {
    case SetVariant::U: return "U(" + std::to_string(x) + "," + std::to_string(y) + ")";
    case SetVariant::W: return "W(" + std::to_string(x) + ")";
    case SetVariant::Winv: return "Winv(" + std::to_string(y) + ")";
    case SetVariant::V: return "V(" + std::to_string(x) + "," + std::to_string(y) + ")";
    case SetVariant::VYZ: return "VYZ(" + fincof_str(Y) + ", " + fincof_str(Z) + ")";
    case SetVariant::Fcard: return "F(" + kappa.str() + ")";
    case SetVariant::UFiber: return "UF(" + kappa.str() + "," + std::to_string(x) + ")";
    case SetVariant::GroupPart: return "Sym";
    case SetVariant::OrderDown: return "Down(" + std::to_string(*cx) + ")";
    case SetVariant::OrderUp: return "Up(" + std::to_string(*cx) + ")";
    case SetVariant::BFM: {
      std::string out = "BFM(";
      out += cx ? std::to_string(*cx) : std::string("id");
      out += ", cof{";
      for (std::size_t i = 0; i < holes.size(); ++i)
        out += (i ? "," : "") + std::to_string(holes[i]);
      return out + "})";
    }
  }
  return "?";
}

NamedSet set_U(Ambient a, u64 x, u64 y) {
  require_n_ambient(a, "U");
  NamedSet s;
  s.ambient = a;
  s.variant = SetVariant::U;
  s.x = x;
  s.y = y;
  return s;
}

NamedSet set_W(Ambient a, u64 x) {
  require_n_ambient(a, "W");
  NamedSet s;
  s.ambient = a;
  s.variant = SetVariant::W;
  s.x = x;
  return s;
}

NamedSet set_Winv(Ambient a, u64 y) {
  require_n_ambient(a, "Winv");
  NamedSet s;
  s.ambient = a;
  s.variant = SetVariant::Winv;
  s.y = y;
  return s;
}

NamedSet set_V(u64 x, u64 y) {
  NamedSet s;
  s.ambient = Ambient::IX;
  s.variant = SetVariant::V;
  s.x = x;
  s.y = y;
  return s;
}

NamedSet set_VYZ(FinCof Y, FinCof Z) {
  NamedSet s;
  s.ambient = Ambient::BX;
  s.variant = SetVariant::VYZ;
  s.Y = std::move(Y);
  s.Z = std::move(Z);
  return s;
}

NamedSet set_Fcard(Cardinal kappa) {
  NamedSet s;
  s.ambient = Ambient::InjX;
  s.variant = SetVariant::Fcard;
  s.kappa = kappa;
  return s;
}

NamedSet set_UFiber(Cardinal kappa, u64 x) {
  NamedSet s;
  s.ambient = Ambient::SurjX;
  s.variant = SetVariant::UFiber;
  s.kappa = kappa;
  s.x = x;
  return s;
}

NamedSet set_GroupPart() {
  NamedSet s;
  s.ambient = Ambient::SurjX;
  s.variant = SetVariant::GroupPart;
  return s;
}

NamedSet chain_down(i64 x) {
  NamedSet s;
  s.ambient = Ambient::MaxChainZ;
  s.variant = SetVariant::OrderDown;
  s.cx = x;
  return s;
}

NamedSet chain_up(i64 x) {
  NamedSet s;
  s.ambient = Ambient::MaxChainZ;
  s.variant = SetVariant::OrderUp;
  s.cx = x;
  return s;
}

NamedSet chain_bfm(std::optional<i64> x, std::vector<i64> holes) {
  NamedSet s;
  s.ambient = Ambient::MaxChainZ;
  s.variant = SetVariant::BFM;
  s.cx = x;
  std::sort(holes.begin(), holes.end());
  holes.erase(std::unique(holes.begin(), holes.end()), holes.end());
  s.holes = std::move(holes);
  return s;
}

namespace {

// --- text parsing -----------------------------------------------------------

struct Cursor {
  const std::string& s;
  std::size_t i = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("set syntax error at position " + std::to_string(i) + ": " + why);
  }
  bool done() const { return i >= s.size(); }
  char peek() const { return done() ? '\0' : s[i]; }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++i;
  }
};

u64 parse_u64_tok(Cursor& c) {
  if (!std::isdigit(static_cast<unsigned char>(c.peek()))) c.fail("expected a number");
  u64 v = 0;
  while (std::isdigit(static_cast<unsigned char>(c.peek()))) v = v * 10 + (c.s[c.i++] - '0');
  return v;
}

i64 parse_i64_tok(Cursor& c) {
  bool neg = c.peek() == '-';
  if (neg) ++c.i;
  u64 v = parse_u64_tok(c);
  return neg ? -static_cast<i64>(v) : static_cast<i64>(v);
}

FinCof parse_fincof_tok(Cursor& c) {
  bool cof = false;
  if (c.s.compare(c.i, 3, "cof") == 0) {
    cof = true;
    c.i += 3;
  }
  c.expect('{');
  std::set<u64> xs;
  while (c.peek() != '}') {
    xs.insert(parse_u64_tok(c));
    if (c.peek() == ',') ++c.i;
  }
  c.expect('}');
  return cof ? FinCof::cofinite_excluding(std::move(xs)) : FinCof::finite(std::move(xs));
}

std::vector<i64> parse_holes_tok(Cursor& c) {
  if (c.s.compare(c.i, 3, "cof") != 0) c.fail("the BFM set needs a cofinite part 'cof{..}'");
  c.i += 3;
  c.expect('{');
  std::vector<i64> out;
  while (c.peek() != '}') {
    out.push_back(parse_i64_tok(c));
    if (c.peek() == ',') ++c.i;
  }
  c.expect('}');
  return out;
}

}  // namespace

NamedSet parse_named_set(const std::string& text, std::optional<Ambient> ambient) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t == "Sym") return set_GroupPart();

  Cursor c{t};
  std::string head;
  while (std::isalpha(static_cast<unsigned char>(c.peek()))) head += c.s[c.i++];
  c.expect('(');
  auto comma = [&c] { c.expect(','); };
  auto close = [&c] {
    c.expect(')');
    if (!c.done()) c.fail("trailing characters");
  };

  if (head == "U") {
    u64 x = parse_u64_tok(c);
    comma();
    u64 y = parse_u64_tok(c);
    close();
    return set_U(ambient.value_or(Ambient::IX), x, y);
  }
  if (head == "W") {
    u64 x = parse_u64_tok(c);
    close();
    return set_W(ambient.value_or(Ambient::IX), x);
  }
  if (head == "Winv") {
    u64 y = parse_u64_tok(c);
    close();
    return set_Winv(ambient.value_or(Ambient::IX), y);
  }
  if (head == "V") {
    u64 x = parse_u64_tok(c);
    comma();
    u64 y = parse_u64_tok(c);
    close();
    return set_V(x, y);
  }
  if (head == "VYZ") {
    FinCof Y = parse_fincof_tok(c);
    comma();
    FinCof Z = parse_fincof_tok(c);
    close();
    return set_VYZ(std::move(Y), std::move(Z));
  }
  if (head == "F") {
    std::string arg;
    while (c.peek() != ')') arg += c.s[c.i++];
    close();
    return set_Fcard(Cardinal::parse(arg));
  }
  if (head == "UF") {
    std::string arg;
    while (c.peek() != ',') arg += c.s[c.i++];
    comma();
    u64 x = parse_u64_tok(c);
    close();
    return set_UFiber(Cardinal::parse(arg), x);
  }
  if (head == "Down") {
    i64 x = parse_i64_tok(c);
    close();
    return chain_down(x);
  }
  if (head == "Up") {
    i64 x = parse_i64_tok(c);
    close();
    return chain_up(x);
  }
  if (head == "BFM") {
    std::optional<i64> x;
    if (c.s.compare(c.i, 2, "id") == 0) c.i += 2;
    else x = parse_i64_tok(c);
    comma();
    std::vector<i64> holes = parse_holes_tok(c);
    close();
    return chain_bfm(x, std::move(holes));
  }
  throw std::invalid_argument("unknown set head '" + head + "'");
}

namespace {

// --- membership -------------------------------------------------------------

// Does e contain a pair (a, b) with a in Y and b outside Z? Exact whenever the
// element carries a support; otherwise decided by finite probing when the
// quantifiers collapse, unknown when they do not.
Verdict relation_violates(const ComputableElement& e, const FinCof& Y, const FinCof& Z,
                          u64 window) {
  auto bad = [&](u64 a, u64 b) { return Y.contains(a) && !Z.contains(b); };

  if (e.rel_support) {
    const auto& rs = *e.rel_support;
    for (const auto& [a, b] : rs.pairs)
      if (bad(a, b)) return Verdict::yes();
    if (rs.diagonal_tail) {
      FinCof diag = Y.intersect(Z.complement());
      if (diag.cofinite) return Verdict::yes();
      for (u64 x : diag.elems)
        if (x >= rs.cutoff) return Verdict::yes();
    }
    return Verdict::no();
  }

  if (e.support) {
    const auto& sup = *e.support;
    for (u64 a = 0; a < sup.cutoff; ++a)
      if (auto v = sup.eval(a); v && bad(a, *v)) return Verdict::yes();
    const TailRule& t = sup.tail;
    switch (t.kind) {
      case TailRule::Undefined: return Verdict::no();
      case TailRule::Identity: {
        FinCof diag = Y.intersect(Z.complement());
        if (diag.cofinite) return Verdict::yes();
        for (u64 x : diag.elems)
          if (x >= sup.cutoff) return Verdict::yes();
        return Verdict::no();
      }
      case TailRule::Affine: {
        if (Y.is_finite()) {
          for (u64 a : Y.elems)
            if (a >= sup.cutoff && !Z.contains(t.m * a + t.c)) return Verdict::yes();
          return Verdict::no();
        }
        if (t.m == 0) return bool_verdict(!Z.contains(t.c));
        if (Z.is_finite()) return Verdict::yes();  // tail values grow without bound
        for (u64 hole : Z.elems) {
          if (hole < t.c || (hole - t.c) % t.m) continue;
          u64 a = (hole - t.c) / t.m;
          if (a >= sup.cutoff && Y.contains(a)) return Verdict::yes();
        }
        return Verdict::no();
      }
      case TailRule::FloorDiv: {
        if (Y.is_finite()) {
          for (u64 a : Y.elems)
            if (a >= sup.cutoff && !Z.contains(a / t.m)) return Verdict::yes();
          return Verdict::no();
        }
        if (Z.is_finite()) return Verdict::yes();
        for (u64 q : Z.elems)
          for (u64 a = std::max(sup.cutoff, q * t.m); a < q * t.m + t.m; ++a)
            if (Y.contains(a)) return Verdict::yes();
        return Verdict::no();
      }
    }
    return Verdict::no();
  }

  if (e.is_functional() && e.eval) {
    if (Y.is_finite()) {
      for (u64 a : Y.elems)
        if (auto v = e.eval(a); v && !Z.contains(*v)) return Verdict::yes();
      return Verdict::no();
    }
    for (u64 a = 0; a < window; ++a)
      if (Y.contains(a))
        if (auto v = e.eval(a); v && !Z.contains(*v)) return Verdict::yes();
    return Verdict::unknown("cofinite source set and no support: probed below window only");
  }

  if (e.rel_contains) {
    if (Y.is_finite() && !Z.is_finite()) {
      for (u64 a : Y.elems)
        for (u64 b : Z.elems)
          if (Y.contains(a) && !Z.contains(b) && e.rel_contains(a, b)) return Verdict::yes();
      if (!e.approx_relation) return Verdict::no();
      return Verdict::unknown("composite relation only supports a bounded witness search");
    }
    for (u64 a = 0; a < window; ++a)
      for (u64 b = 0; b < window; ++b)
        if (bad(a, b) && e.rel_contains(a, b)) return Verdict::yes();
    return Verdict::unknown("relation has no support: probed below window only");
  }

  return Verdict::unknown("element has no evaluator");
}

Verdict fcard_member(const ComputableElement& e, const Cardinal& kappa, u64 window) {
  if (!e.support && e.rel_support) {
    const auto& rs = *e.rel_support;
    if (!rs.diagonal_tail) return bool_verdict(Cardinal::aleph0() == kappa);
    std::set<u64> im;
    for (const auto& [a, b] : rs.pairs)
      if (b < rs.cutoff) im.insert(b);
    return bool_verdict(Cardinal::fin(rs.cutoff - im.size()) == kappa);
  }
  CardinalData cd = cardinal_data(e, window);
  if (cd.coimage) return bool_verdict(*cd.coimage == kappa);
  return Verdict::unknown(cd.coimage_reason);
}

Verdict ufiber_member(const ComputableElement& e, const Cardinal& kappa, u64 x, u64 window) {
  CardinalData cd = cardinal_data(e, window);
  auto [card, why] = cd.fiber(x);
  if (card) return bool_verdict(*card == kappa);
  return Verdict::unknown(why);
}

Verdict group_part_member(const ComputableElement& e, u64 window) {
  if (e.family == Family::Permutation) return Verdict::yes();
  if (e.support) {
    const auto& sup = *e.support;
    return bool_verdict(sup.total() && sup.injective() && sup.coimage() == Cardinal::fin(0));
  }
  if (!e.is_functional()) {
    if (!e.rel_support) return Verdict::unknown("relation without support: bijectivity is undeclared");
    const auto& rs = *e.rel_support;
    if (!rs.diagonal_tail) return Verdict::no();  // finite relations are never total
    std::map<u64, u64> val, pre;
    std::set<u64> doms, ims;
    for (const auto& [a, b] : rs.pairs) {
      if (a >= rs.cutoff && a != b) return Verdict::no();  // clashes with the diagonal
      if (b >= rs.cutoff && a != b) return Verdict::no();
      if (!val.emplace(a, b).second && val[a] != b) return Verdict::no();
      if (!pre.emplace(b, a).second && pre[b] != a) return Verdict::no();
      doms.insert(a);
      ims.insert(b);
    }
    for (u64 x = 0; x < rs.cutoff; ++x)
      if (!doms.count(x) || !ims.count(x)) return Verdict::no();
    return Verdict::yes();
  }
  std::map<u64, u64> seen;
  for (u64 x = 0; x < window; ++x) {
    auto v = e.eval ? e.eval(x) : std::optional<u64>{};
    if (!v) return Verdict::no();  // a hole in the domain rules a permutation out
    if (!seen.emplace(*v, x).second) return Verdict::no();
  }
  if (e.coimage_hint && !(*e.coimage_hint == Cardinal::fin(0))) return Verdict::no();
  return Verdict::unknown("no support: bijectivity beyond the window is undeclared");
}

}  // namespace

Verdict member(const ComputableElement& e, const NamedSet& s, u64 window) {
  switch (s.variant) {
    case SetVariant::U: return relate_verdict(e, s.x, s.y);
    case SetVariant::V: return negate(relate_verdict(e, s.x, s.y));
    case SetVariant::W: return negate(domain_member(e, s.x));
    case SetVariant::Winv: return negate(image_member(e, s.y, window));
    case SetVariant::VYZ: return negate(relation_violates(e, s.Y, s.Z, window));
    case SetVariant::Fcard: return fcard_member(e, s.kappa, window);
    case SetVariant::UFiber: return ufiber_member(e, s.kappa, s.x, window);
    case SetVariant::GroupPart: return group_part_member(e, window);
    case SetVariant::OrderDown:
    case SetVariant::OrderUp:
    case SetVariant::BFM:
      throw std::invalid_argument("set " + s.str() + " takes integer points, not elements of N monoids");
  }
  throw std::logic_error("unhandled set variant");
}

bool chain_member(i64 v, const NamedSet& s) {
  switch (s.variant) {
    case SetVariant::OrderDown: return v < *s.cx;
    case SetVariant::OrderUp: return v > *s.cx;
    case SetVariant::BFM:
      if (s.cx && !(v > *s.cx)) return false;
      return !std::binary_search(s.holes.begin(), s.holes.end(), v);
    default: throw std::invalid_argument("set " + s.str() + " lives on N, not on the chain");
  }
}

std::string BasicRSet::str() const {
  if (empty) return "Empty";
  std::string out = "R({";
  for (std::size_t i = 0; i < k.size(); ++i)
    out += (i ? ",(" : "(") + std::to_string(k[i].first) + "," + std::to_string(k[i].second) + ")";
  out += "}, {";
  for (std::size_t i = 0; i < Y.size(); ++i) out += (i ? "," : "") + std::to_string(Y[i]);
  out += "}, {";
  for (std::size_t i = 0; i < Z.size(); ++i) out += (i ? "," : "") + std::to_string(Z[i]);
  return out + "})";
}

BasicRSet normalize_I4(const std::vector<NamedSet>& sets) {
  std::map<u64, u64> k, kinv;
  std::set<u64> Y, Z;
  for (const auto& s : sets) {
    switch (s.variant) {
      case SetVariant::U: {
        auto [it, fresh] = k.emplace(s.x, s.y);
        if (!fresh && it->second != s.y) return BasicRSet::make_empty();
        auto [jt, freshj] = kinv.emplace(s.y, s.x);
        if (!freshj && jt->second != s.x) return BasicRSet::make_empty();
        break;
      }
      case SetVariant::W: Y.insert(s.x); break;
      case SetVariant::Winv: Z.insert(s.y); break;
      default:
        throw std::invalid_argument("normalize_I4 accepts U, W and Winv sets only; got " + s.str());
    }
  }
  for (u64 y : Y)
    if (k.count(y)) return BasicRSet::make_empty();
  for (u64 z : Z)
    if (kinv.count(z)) return BasicRSet::make_empty();
  BasicRSet out;
  out.k.assign(k.begin(), k.end());
  out.Y.assign(Y.begin(), Y.end());
  out.Z.assign(Z.begin(), Z.end());
  return out;
}

Verdict rset_member(const ComputableElement& e, const BasicRSet& r, u64 window) {
  if (r.empty) return Verdict::no();
  std::optional<Verdict> pending;
  auto want = [&pending](Verdict v, bool expected) -> bool {
    // Returns true when the caller should report a definite miss.
    if (v.is_unknown()) {
      if (!pending) pending = v;
      return false;
    }
    return v.is_true() != expected;
  };
  for (const auto& [a, b] : r.k)
    if (want(relate_verdict(e, a, b), true)) return Verdict::no();
  for (u64 y : r.Y)
    if (want(domain_member(e, y), false)) return Verdict::no();
  for (u64 z : r.Z)
    if (want(image_member(e, z, window), false)) return Verdict::no();
  return pending ? *pending : Verdict::yes();
}

std::string metric_name(MetricId m) {
  switch (m) {
    case MetricId::d_I1: return "d_I1";
    case MetricId::d1: return "d1";
    case MetricId::d2: return "d2";
    case MetricId::d4: return "d4";
    case MetricId::d_inj: return "d_inj";
  }
  return "?";
}

MetricId parse_metric_id(const std::string& s) {
  for (MetricId m : {MetricId::d_I1, MetricId::d1, MetricId::d2, MetricId::d4, MetricId::d_inj})
    if (metric_name(m) == s) return m;
  throw std::invalid_argument("unknown metric '" + s + "'");
}

namespace {

// --- exact metrics ----------------------------------------------------------

const FiniteSupport& require_support(const ComputableElement& e) {
  if (!e.support)
    throw std::invalid_argument("metric: element '" + e.label +
                                "' has no finite support; the minimum disagreement index is "
                                "undecidable");
  return *e.support;
}

TailRule normalize_tail(TailRule t) {
  if (t.kind == TailRule::Undefined) return {TailRule::Undefined};
  if (t.kind == TailRule::Identity) return {TailRule::Identity};
  if (t.kind == TailRule::Affine && t.m == 1 && t.c == 0) return {TailRule::Identity};
  if (t.kind == TailRule::FloorDiv && t.m == 1) return {TailRule::Identity};
  return t;
}

// Least x >= from where the two (normalized, distinct) tails' values differ.
// Distinct rules agree on at most finitely many points, all below the bound.
u64 first_tail_difference(const TailRule& a, const TailRule& b, u64 from) {
  u64 span = (a.m + a.c + 2) * (b.m + b.c + 2) + 8;
  for (u64 x = from; x < from + span; ++x)
    if (a.apply(x) != b.apply(x)) return x;
  throw std::logic_error("distinct tail rules did not separate within the scan bound");
}

// Least x in N where f and g differ as partial maps (equivalently, where the
// embeddings into maps on N + sentinel differ); nullopt when f = g.
std::optional<u64> first_embed_difference(const FiniteSupport& f, const FiniteSupport& g) {
  u64 cut = std::max(f.cutoff, g.cutoff);
  for (u64 x = 0; x < cut; ++x)
    if (f.eval(x) != g.eval(x)) return x;
  TailRule ta = normalize_tail(f.tail), tb = normalize_tail(g.tail);
  if (ta == tb) return std::nullopt;
  return first_tail_difference(ta, tb, cut);
}

std::optional<u64> inverse_at(const FiniteSupport& f, u64 y) {
  auto xs = f.fiber_elements(y);
  if (xs.empty()) return std::nullopt;
  return xs.front();
}

// Least y where the embedded inverses differ, given x0 with f(x0) != g(x0):
// whichever of those two values is defined bounds the search, since a pair
// present on one side only is already an inverse disagreement at its image.
u64 first_inverse_difference(const FiniteSupport& f, const FiniteSupport& g, u64 x0) {
  u64 cap = 0;
  bool have = false;
  if (auto v = f.eval(x0)) cap = *v, have = true;
  if (auto v = g.eval(x0)) cap = have ? std::min(cap, *v) : *v, have = true;
  if (!have) throw std::logic_error("embed difference point carries no value on either side");
  for (u64 y = 0; y <= cap; ++y)
    if (inverse_at(f, y) != inverse_at(g, y)) return y;
  throw std::logic_error("inverse embeddings failed to separate below the witness bound");
}

void require_injective(const FiniteSupport& f, const ComputableElement& e) {
  if (!f.injective())
    throw std::invalid_argument("metric: element '" + e.label + "' is not injective");
}

// Least max(a, b) over the pairs lying in exactly one of f, g. Such a pair
// first tells the n x n restrictions apart at n = max(a, b) + 1. Precondition:
// f != g as partial maps.
u64 min_square_witness(const FiniteSupport& f, const FiniteSupport& g) {
  u64 best = ~u64{0};
  auto consider = [&best](u64 a, std::optional<u64> va, std::optional<u64> vb) {
    if (va == vb) return;
    if (va) best = std::min(best, std::max(a, *va));
    if (vb) best = std::min(best, std::max(a, *vb));
  };
  u64 cut = std::max(f.cutoff, g.cutoff);
  for (u64 x = 0; x < cut; ++x) consider(x, f.eval(x), g.eval(x));
  TailRule ta = normalize_tail(f.tail), tb = normalize_tail(g.tail);
  if (!(ta == tb)) {
    // Tail values are nondecreasing, so the first disagreement minimizes
    // max(x, value) over the whole tail.
    u64 x = first_tail_difference(ta, tb, cut);
    consider(x, ta.apply(x), tb.apply(x));
  }
  if (best == ~u64{0}) throw std::logic_error("square scan invoked on equal elements");
  return best;
}

}  // namespace

Rational metric(MetricId id, const ComputableElement& fe, const ComputableElement& ge) {
  const FiniteSupport& f = require_support(fe);
  const FiniteSupport& g = require_support(ge);
  auto diff = first_embed_difference(f, g);
  switch (id) {
    case MetricId::d1:
      return diff ? Rational(1, static_cast<i64>(*diff) + 1) : Rational(0, 1);
    case MetricId::d2: {
      if (!diff) return {0, 1};
      require_injective(f, fe);
      require_injective(g, ge);
      u64 m = first_inverse_difference(f, g, *diff);
      return {1, static_cast<i64>(m) + 1};
    }
    case MetricId::d4: {
      if (!diff) return {0, 1};
      require_injective(f, fe);
      require_injective(g, ge);
      u64 m = std::min(*diff, first_inverse_difference(f, g, *diff));
      return {1, static_cast<i64>(m) + 1};
    }
    case MetricId::d_I1:
      if (!diff) return {0, 1};
      return {1, static_cast<i64>(min_square_witness(f, g)) + 2};
    case MetricId::d_inj:
      if (!(f.coimage() == g.coimage())) return {1, 1};
      if (!diff) return {0, 1};
      return {1, static_cast<i64>(min_square_witness(f, g)) + 2};
  }
  throw std::logic_error("unhandled metric id");
}

BasicRSet ball_to_basic(const ComputableElement& fe, u64 m) {
  const FiniteSupport& f = require_support(fe);
  require_injective(f, fe);
  BasicRSet out;
  std::set<std::pair<u64, u64>> k;
  for (u64 a = 0; a < m; ++a) {
    if (auto v = f.eval(a)) k.insert({a, *v});
    else out.Y.push_back(a);
  }
  for (u64 b = 0; b < m; ++b) {
    auto xs = f.fiber_elements(b);
    if (xs.empty()) out.Z.push_back(b);
    else k.insert({xs.front(), b});
  }
  out.k.assign(k.begin(), k.end());
  return out;
}

std::string topology_name(NamedTopologyId id) {
  switch (id) {
    case NamedTopologyId::Pointwise: return "pointwise";
    case NamedTopologyId::P: return "P";
    case NamedTopologyId::B1: return "B1";
    case NamedTopologyId::B2: return "B2";
    case NamedTopologyId::I1: return "I1";
    case NamedTopologyId::I2: return "I2";
    case NamedTopologyId::I3: return "I3";
    case NamedTopologyId::I4: return "I4";
    case NamedTopologyId::J: return "J";
    case NamedTopologyId::S1: return "S1";
    case NamedTopologyId::S2: return "S2";
    case NamedTopologyId::MaxChainOrder: return "max-chain-order";
    case NamedTopologyId::MaxChainFM: return "max-chain-fm";
  }
  return "?";
}

NamedTopologyId parse_topology_id(const std::string& s) {
  for (NamedTopologyId id :
       {NamedTopologyId::Pointwise, NamedTopologyId::P, NamedTopologyId::B1, NamedTopologyId::B2,
        NamedTopologyId::I1, NamedTopologyId::I2, NamedTopologyId::I3, NamedTopologyId::I4,
        NamedTopologyId::J, NamedTopologyId::S1, NamedTopologyId::S2,
        NamedTopologyId::MaxChainOrder, NamedTopologyId::MaxChainFM})
    if (topology_name(id) == s) return id;
  throw std::invalid_argument("unknown topology '" + s + "'");
}

Ambient topology_ambient(NamedTopologyId id) {
  switch (id) {
    case NamedTopologyId::Pointwise: return Ambient::XX;
    case NamedTopologyId::P: return Ambient::PX;
    case NamedTopologyId::B1:
    case NamedTopologyId::B2: return Ambient::BX;
    case NamedTopologyId::I1:
    case NamedTopologyId::I2:
    case NamedTopologyId::I3:
    case NamedTopologyId::I4: return Ambient::IX;
    case NamedTopologyId::J: return Ambient::InjX;
    case NamedTopologyId::S1:
    case NamedTopologyId::S2: return Ambient::SurjX;
    case NamedTopologyId::MaxChainOrder:
    case NamedTopologyId::MaxChainFM: return Ambient::MaxChainZ;
  }
  throw std::logic_error("unhandled topology id");
}

namespace {

std::set<u64> bits_of(u64 t) {
  std::set<u64> out;
  for (u64 i = 0; t; ++i, t >>= 1)
    if (t & 1) out.insert(i);
  return out;
}

FinCof fincof_at(u64 k) {
  auto xs = bits_of(k >> 1);
  return (k & 1) ? FinCof::cofinite_excluding(std::move(xs)) : FinCof::finite(std::move(xs));
}

Cardinal cardinal_at(u64 k) { return k == 0 ? Cardinal::aleph0() : Cardinal::fin(k - 1); }

i64 zigzag(u64 j) {
  return (j & 1) ? static_cast<i64>((j + 1) / 2) : -static_cast<i64>(j / 2);
}

}  // namespace

NamedSet topology_subbasis_at(NamedTopologyId id, u64 i) {
  switch (id) {
    case NamedTopologyId::Pointwise: {
      auto [x, y] = unpair2(i);
      return set_U(Ambient::XX, x, y);
    }
    case NamedTopologyId::P: {
      if (i % 2 == 0) {
        auto [x, y] = unpair2(i / 2);
        return set_U(Ambient::PX, x, y);
      }
      return set_W(Ambient::PX, i / 2);
    }
    case NamedTopologyId::B1: {
      auto [x, y] = unpair2(i);
      return set_U(Ambient::BX, x, y);
    }
    case NamedTopologyId::B2: {
      if (i % 2 == 0) {
        auto [x, y] = unpair2(i / 2);
        return set_U(Ambient::BX, x, y);
      }
      auto [yk, zk] = unpair2(i / 2);
      return set_VYZ(fincof_at(yk), fincof_at(zk));
    }
    case NamedTopologyId::I1: {
      auto [x, y] = unpair2(i / 2);
      return i % 2 == 0 ? set_U(Ambient::IX, x, y) : set_V(x, y);
    }
    case NamedTopologyId::I2: {
      if (i % 2 == 0) {
        auto [x, y] = unpair2(i / 2);
        return set_U(Ambient::IX, x, y);
      }
      return set_W(Ambient::IX, i / 2);
    }
    case NamedTopologyId::I3: {
      if (i % 2 == 0) {
        auto [x, y] = unpair2(i / 2);
        return set_U(Ambient::IX, x, y);
      }
      return set_Winv(Ambient::IX, i / 2);
    }
    case NamedTopologyId::I4: {
      u64 j = i / 3;
      if (i % 3 == 0) {
        auto [x, y] = unpair2(j);
        return set_U(Ambient::IX, x, y);
      }
      return i % 3 == 1 ? set_W(Ambient::IX, j) : set_Winv(Ambient::IX, j);
    }
    case NamedTopologyId::J: {
      u64 j = i / 3;
      if (i % 3 == 0) {
        auto [x, y] = unpair2(j);
        return set_U(Ambient::InjX, x, y);
      }
      return i % 3 == 1 ? set_Winv(Ambient::InjX, j) : set_Fcard(cardinal_at(j));
    }
    case NamedTopologyId::S1: {
      if (i == 0) return set_GroupPart();
      auto [x, y] = unpair2(i - 1);
      return set_U(Ambient::SurjX, x, y);
    }
    case NamedTopologyId::S2: {
      if (i % 2 == 0) {
        auto [x, y] = unpair2(i / 2);
        return set_U(Ambient::SurjX, x, y);
      }
      auto [kk, x] = unpair2(i / 2);
      return set_UFiber(cardinal_at(kk), x);
    }
    case NamedTopologyId::MaxChainOrder:
      return i % 2 == 0 ? chain_up(zigzag(i / 2)) : chain_down(zigzag(i / 2));
    case NamedTopologyId::MaxChainFM: {
      auto [a, t] = unpair2(i);
      std::vector<i64> holes;
      for (u64 b = 0, tt = t; tt; ++b, tt >>= 1)
        if (tt & 1) holes.push_back(zigzag(b));
      return chain_bfm(a ? std::optional<i64>(zigzag(a - 1)) : std::nullopt, std::move(holes));
    }
  }
  throw std::logic_error("unhandled topology id");
}

bool SeparationWitness::ok() const {
  if (probes.empty()) return false;
  for (const auto& p : probes)
    if (!p.in_neighborhood || !p.outside_target) return false;
  return true;
}

namespace {

// --- separation witnesses ---------------------------------------------------

ComputableElement finite_pb(const std::vector<std::pair<u64, u64>>& pairs, std::string label) {
  FiniteSupport sup;
  sup.tail = {TailRule::Undefined};
  for (const auto& [a, b] : pairs) sup.cutoff = std::max(sup.cutoff, a + 1);
  sup.table.assign(static_cast<std::size_t>(sup.cutoff), std::nullopt);
  for (const auto& [a, b] : pairs) sup.table[static_cast<std::size_t>(a)] = b;
  return from_support(Family::PartialBijection, std::move(sup), std::move(label));
}

std::string pairs_str(const std::vector<std::pair<u64, u64>>& pairs) {
  std::string out = "{";
  for (std::size_t i = 0; i < pairs.size(); ++i)
    out += (i ? ",(" : "(") + std::to_string(pairs[i].first) + "," +
           std::to_string(pairs[i].second) + ")";
  return out + "}";
}

std::string nbhd_str(const std::vector<NamedSet>& sets) {
  if (sets.empty()) return "whole space";
  std::string out;
  for (std::size_t i = 0; i < sets.size(); ++i) out += (i ? " & " : "") + sets[i].str();
  return out;
}

// The image-complement set Winv(x) holds the empty map, yet every finite
// intersection of W sets around the empty map also admits a map onto x.
SeparationWitness winv_not_in_I2(const WitnessParams& p) {
  SeparationWitness out;
  out.case_id = "Winv_not_in_I2";
  out.target = set_Winv(Ambient::IX, p.x);
  out.claim = "no W-intersection around the empty map fits inside " + out.target->str();
  out.center = finite_pb({}, "empty");
  if (!member(*out.center, *out.target).is_true())
    throw std::logic_error("empty map left the target set");

  std::vector<std::vector<u64>> domains;
  if (!p.Y.empty()) {
    domains.push_back(p.Y);
  } else {
    if (p.bound == 0 || p.bound > 16)
      throw std::invalid_argument("neighborhood bound out of range");
    for (u64 mask = 0; mask < (u64{1} << p.bound); ++mask) {
      std::vector<u64> ys;
      for (u64 b = 0; b < p.bound; ++b)
        if (mask >> b & 1) ys.push_back(b);
      domains.push_back(std::move(ys));
    }
  }

  for (const auto& ys : domains) {
    WitnessProbe probe;
    u64 fresh = 0;
    while (std::find(ys.begin(), ys.end(), fresh) != ys.end() || fresh == p.x) ++fresh;
    probe.witness = finite_pb({{fresh, p.x}}, pairs_str({{fresh, p.x}}));
    bool inside = true;
    for (u64 y : ys) {
      probe.nbhd_sets.push_back(set_W(Ambient::IX, y));
      inside = inside && member(*out.center, probe.nbhd_sets.back()).is_true() &&
               member(*probe.witness, probe.nbhd_sets.back()).is_true();
    }
    probe.neighborhood = nbhd_str(probe.nbhd_sets);
    probe.in_neighborhood = inside;
    probe.outside_target = member(*probe.witness, *out.target).is_false();
    out.probes.push_back(std::move(probe));
  }
  return out;
}

// The set {s : moving x twice through s does not fix x} is open in the
// Zariski topology and holds the empty map, but every basic neighborhood
// {s : h and s disjoint} of the empty map contains a two-cycle through x.
SeparationWitness zariski_set_not_I1(const WitnessParams& p) {
  SeparationWitness out;
  out.case_id = "ZariskiSet_not_I1";
  out.claim = "the word set {s : {(x,x)}s^2 != {(x,x)}} with x=" + std::to_string(p.x) +
              " has empty interior at the empty map";
  out.center = finite_pb({}, "empty");

  std::vector<std::vector<std::pair<u64, u64>>> hs;
  if (!p.h.empty()) {
    hs.push_back(p.h);
  } else {
    if (p.bound == 0 || p.bound > 4)
      throw std::invalid_argument("neighborhood bound out of range");
    // all partial injective maps with domain and image below the bound
    std::vector<std::pair<u64, u64>> cur;
    std::vector<bool> used(p.bound, false);
    auto rec = [&](auto&& self, u64 a) -> void {
      if (a == p.bound) {
        hs.push_back(cur);
        return;
      }
      self(self, a + 1);
      for (u64 b = 0; b < p.bound; ++b) {
        if (used[b]) continue;
        used[b] = true;
        cur.push_back({a, b});
        self(self, a + 1);
        cur.pop_back();
        used[b] = false;
      }
    };
    rec(rec, 0);
  }

  // s is outside the target exactly when s^2 returns x to itself.
  auto outside_target = [&p](const ComputableElement& s) {
    auto v = s.eval(p.x);
    if (!v) return false;
    return s.eval(*v) == std::optional<u64>(p.x);
  };
  if (outside_target(*out.center)) throw std::logic_error("empty map left the target set");

  for (const auto& h : hs) {
    WitnessProbe probe;
    u64 fresh = 0;
    auto taken = [&h, &p](u64 v) {
      if (v == p.x) return true;
      for (const auto& [a, b] : h)
        if (a == v || b == v) return true;
      return false;
    };
    while (taken(fresh)) ++fresh;
    std::vector<std::pair<u64, u64>> spairs = {{p.x, fresh}, {fresh, p.x}};
    probe.witness = finite_pb(spairs, pairs_str(spairs));
    bool inside = true;
    for (const auto& [a, b] : h) {
      probe.nbhd_sets.push_back(set_V(a, b));
      inside = inside && member(*out.center, probe.nbhd_sets.back()).is_true() &&
               member(*probe.witness, probe.nbhd_sets.back()).is_true();
    }
    probe.neighborhood = nbhd_str(probe.nbhd_sets);
    probe.in_neighborhood = inside;
    probe.outside_target = outside_target(*probe.witness);
    out.probes.push_back(std::move(probe));
  }
  return out;
}

// m relations with pairwise incomparable images: each one's image-constraint
// neighborhood excludes all the others, so no basis below them can be small.
SeparationWitness b2_antichain(const WitnessParams& p) {
  if (p.m < 2) throw std::invalid_argument("antichain needs at least two members");
  SeparationWitness out;
  out.case_id = "B2_antichain";
  out.claim = "relations with image N minus {i} meet VYZ(N, N minus {j}) only at i = j";

  std::vector<ComputableElement> fs;
  for (u64 i = 0; i < p.m; ++i) {
    RelationSupport rs;
    rs.diagonal_tail = true;
    rs.cutoff = i + 1;
    for (u64 n = 0; n < i; ++n) rs.pairs.insert({n, n});
    rs.pairs.insert({i, i + 1});
    fs.push_back(from_relation_support(std::move(rs), "f" + std::to_string(i)));
  }

  for (u64 i = 0; i < p.m; ++i) {
    NamedSet vi = set_VYZ(FinCof::all(), FinCof::cofinite_excluding({i}));
    for (u64 j = 0; j < p.m; ++j) {
      if (j == i) continue;
      WitnessProbe probe;
      probe.neighborhood = vi.str() + " around f" + std::to_string(i);
      probe.nbhd_sets.push_back(vi);
      probe.witness = fs[j];
      probe.in_neighborhood = member(fs[i], vi).is_true();
      probe.outside_target = member(fs[j], vi).is_false();
      out.probes.push_back(std::move(probe));
    }
  }
  return out;
}

// On the chain, the down-set below c is open in the order topology but every
// basic open set of the cofinite-above form is unbounded above.
SeparationWitness maxchain_fm_vs_hm(const WitnessParams& p) {
  if (p.bound == 0 || p.bound > 6)
    throw std::invalid_argument("neighborhood bound out of range");
  SeparationWitness out;
  out.case_id = "MaxChain_FM_vs_HM";
  out.target = chain_down(p.c);
  out.chain_center = p.c - 1;
  out.claim = "every basic set of the cofinite-above topology leaves " + out.target->str();
  if (!chain_member(*out.chain_center, *out.target))
    throw std::logic_error("chain center left the target set");

  std::vector<std::optional<i64>> lows = {std::nullopt};
  for (u64 d = 1; d <= p.bound; ++d) lows.push_back(*out.chain_center - static_cast<i64>(d));
  for (const auto& low : lows) {
    for (u64 mask = 0; mask < (u64{1} << p.bound); ++mask) {
      std::vector<i64> holes;
      for (u64 b = 0; b < p.bound; ++b)
        if (mask >> b & 1) holes.push_back(p.c + static_cast<i64>(b));
      NamedSet nb = chain_bfm(low, holes);
      WitnessProbe probe;
      probe.neighborhood = nb.str();
      probe.nbhd_sets.push_back(nb);
      i64 w = p.c;
      for (i64 h : holes) w = std::max(w, h + 1);
      probe.chain_witness = w;
      probe.in_neighborhood = chain_member(*out.chain_center, nb) && chain_member(w, nb);
      probe.outside_target = !chain_member(w, *out.target);
      out.probes.push_back(std::move(probe));
    }
  }
  return out;
}

}  // namespace

SeparationWitness separation_witness(const std::string& case_id, const WitnessParams& p) {
  if (case_id == "Winv_not_in_I2") return winv_not_in_I2(p);
  if (case_id == "ZariskiSet_not_I1") return zariski_set_not_I1(p);
  if (case_id == "B2_antichain") return b2_antichain(p);
  if (case_id == "MaxChain_FM_vs_HM") return maxchain_fm_vs_hm(p);
  throw std::invalid_argument(
      "unknown separation case '" + case_id +
      "' (expected Winv_not_in_I2, ZariskiSet_not_I1, B2_antichain or MaxChain_FM_vs_HM)");
}

}  // namespace semitop
