#include "semitop/computable.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace semitop {

std::string family_name(Family f) {
  switch (f) {
    case Family::Transformation: return "transformation";
    case Family::PartialMap: return "partial-map";
    case Family::PartialBijection: return "partial-bijection";
    case Family::Injection: return "injection";
    case Family::Surjection: return "surjection";
    case Family::Relation: return "relation";
    case Family::Permutation: return "permutation";
  }
  return "?";
}

std::string TailRule::str() const {
  switch (kind) {
    case Identity: return "identity";
    case Undefined: return "undefined";
    case Affine:
      if (m == 1) return "shift(" + std::to_string(c) + ")";
      if (m == 2 && c == 0) return "double";
      return "affine(" + std::to_string(m) + "," + std::to_string(c) + ")";
    case FloorDiv: return "floordiv(" + std::to_string(m) + ")";
  }
  return "?";
}

FinCof FiniteSupport::domain() const {
  std::set<u64> defined, missing;
  for (u64 x = 0; x < cutoff; ++x)
    (table[static_cast<std::size_t>(x)] ? defined : missing).insert(x);
  if (tail.kind == TailRule::Undefined) return FinCof::finite(std::move(defined));
  return FinCof::cofinite_excluding(std::move(missing));
}

bool FiniteSupport::in_image(u64 y) const {
  for (u64 x = 0; x < cutoff; ++x)
    if (table[static_cast<std::size_t>(x)] == std::optional<u64>(y)) return true;
  switch (tail.kind) {
    case TailRule::Undefined: return false;
    case TailRule::Identity: return y >= cutoff;
    case TailRule::Affine:
      return y >= tail.c && (y - tail.c) % tail.m == 0 && (y - tail.c) / tail.m >= cutoff;
    case TailRule::FloorDiv: return y >= cutoff / tail.m;
  }
  return false;
}

Cardinal FiniteSupport::coimage() const {
  // Values attained by the tail form [t0, inf) for identity/shift/floordiv,
  // a sparse infinite set for affine with m >= 2, or nothing.
  std::set<u64> values;
  for (u64 x = 0; x < cutoff; ++x)
    if (auto v = table[static_cast<std::size_t>(x)]) values.insert(*v);

  u64 tail_from = 0;
  switch (tail.kind) {
    case TailRule::Undefined: return Cardinal::aleph0();
    case TailRule::Identity: tail_from = cutoff; break;
    case TailRule::Affine:
      if (tail.m >= 2) return Cardinal::aleph0();
      tail_from = cutoff + tail.c;
      break;
    case TailRule::FloorDiv: tail_from = cutoff / tail.m; break;
  }
  u64 missing = 0;
  for (u64 y = 0; y < tail_from; ++y)
    if (!values.count(y)) ++missing;
  return Cardinal::fin(missing);
}

Cardinal FiniteSupport::fiber(u64 y) const {
  u64 cnt = 0;
  for (u64 x = 0; x < cutoff; ++x)
    if (table[static_cast<std::size_t>(x)] == std::optional<u64>(y)) ++cnt;
  switch (tail.kind) {
    case TailRule::Undefined: break;
    case TailRule::Identity:
      if (y >= cutoff) ++cnt;
      break;
    case TailRule::Affine:
      if (y >= tail.c && (y - tail.c) % tail.m == 0 && (y - tail.c) / tail.m >= cutoff) ++cnt;
      break;
    case TailRule::FloorDiv: {
      u64 lo = std::max(cutoff, y * tail.m), hi = y * tail.m + tail.m;
      if (hi > lo) cnt += hi - lo;
      break;
    }
  }
  return Cardinal::fin(cnt);
}

std::vector<u64> FiniteSupport::fiber_elements(u64 y) const {
  std::vector<u64> out;
  for (u64 x = 0; x < cutoff; ++x)
    if (table[static_cast<std::size_t>(x)] == std::optional<u64>(y)) out.push_back(x);
  switch (tail.kind) {
    case TailRule::Undefined: break;
    case TailRule::Identity:
      if (y >= cutoff) out.push_back(y);
      break;
    case TailRule::Affine:
      if (y >= tail.c && (y - tail.c) % tail.m == 0 && (y - tail.c) / tail.m >= cutoff)
        out.push_back((y - tail.c) / tail.m);
      break;
    case TailRule::FloorDiv:
      for (u64 x = std::max(cutoff, y * tail.m); x < y * tail.m + tail.m; ++x) out.push_back(x);
      break;
  }
  return out;
}

bool FiniteSupport::injective() const {
  std::set<u64> seen;
  for (u64 x = 0; x < cutoff; ++x) {
    auto v = table[static_cast<std::size_t>(x)];
    if (!v) continue;
    if (!seen.insert(*v).second) return false;
    // Also collide with the tail image?
    FiniteSupport tail_only{cutoff, std::vector<std::optional<u64>>(cutoff, std::nullopt), tail};
    if (tail_only.in_image(*v)) return false;
  }
  return tail.kind != TailRule::FloorDiv || tail.m == 1;
}

bool FiniteSupport::total() const {
  if (tail.kind == TailRule::Undefined) return false;
  for (u64 x = 0; x < cutoff; ++x)
    if (!table[static_cast<std::size_t>(x)]) return false;
  return true;
}

bool ComputableElement::relates(u64 x, u64 y) const {
  if (rel_contains) return rel_contains(x, y);
  if (eval) return eval(x) == std::optional<u64>(y);
  throw std::logic_error("element has no evaluator");
}

namespace {

struct FamilyFlags {
  bool total, functional, injective, surjective;
};

FamilyFlags flags_of(Family f) {
  switch (f) {
    case Family::Transformation: return {true, true, false, false};
    case Family::PartialMap: return {false, true, false, false};
    case Family::PartialBijection: return {false, true, true, false};
    case Family::Injection: return {true, true, true, false};
    case Family::Surjection: return {true, true, false, true};
    case Family::Permutation: return {true, true, true, true};
    case Family::Relation: return {false, false, false, false};
  }
  return {false, false, false, false};
}

Family family_from_flags(const FamilyFlags& fl) {
  if (!fl.functional) return Family::Relation;
  if (fl.total && fl.injective && fl.surjective) return Family::Permutation;
  if (fl.total && fl.injective) return Family::Injection;
  if (fl.total && fl.surjective) return Family::Surjection;
  if (fl.total) return Family::Transformation;
  if (fl.injective) return Family::PartialBijection;
  return Family::PartialMap;
}

std::optional<TailRule> compose_tails(const TailRule& a, const TailRule& b) {
  if (a.kind == TailRule::Undefined) return TailRule{TailRule::Undefined};
  if (b.kind == TailRule::Undefined) return TailRule{TailRule::Undefined};
  auto affine = [](u64 m, u64 c) { return TailRule{TailRule::Affine, m, c}; };
  bool a_aff = a.kind == TailRule::Identity || a.kind == TailRule::Affine;
  bool b_aff = b.kind == TailRule::Identity || b.kind == TailRule::Affine;
  u64 am = a.kind == TailRule::Identity ? 1 : a.m, ac = a.kind == TailRule::Identity ? 0 : a.c;
  u64 bm = b.kind == TailRule::Identity ? 1 : b.m, bc = b.kind == TailRule::Identity ? 0 : b.c;
  if (a_aff && b_aff) return affine(am * bm, bm * ac + bc);
  if (a_aff && b.kind == TailRule::FloorDiv) {
    // floor((am x + ac)/d) is affine only when d divides both pieces
    if (am % b.m == 0 && ac % b.m == 0) return affine(am / b.m, ac / b.m);
    if (am == 1 && ac == 0) return TailRule{TailRule::FloorDiv, b.m};
    return std::nullopt;
  }
  if (a.kind == TailRule::FloorDiv && b_aff) {
    if (bm == 1 && bc == 0) return TailRule{TailRule::FloorDiv, a.m};
    return std::nullopt;
  }
  if (a.kind == TailRule::FloorDiv && b.kind == TailRule::FloorDiv)
    return TailRule{TailRule::FloorDiv, a.m * b.m};
  return std::nullopt;
}

// Smallest x such that the tail of `a` applied at any point >= x lands at or
// beyond `target` (so the second tail is the one that sees it).
std::optional<u64> tail_clear_point(const TailRule& a, u64 from, u64 target) {
  switch (a.kind) {
    case TailRule::Undefined: return from;
    case TailRule::Identity: return std::max(from, target);
    case TailRule::Affine: {
      if (a.m == 0) return std::nullopt;
      u64 x = target > a.c ? (target - a.c + a.m - 1) / a.m : 0;
      return std::max(from, x);
    }
    case TailRule::FloorDiv: return std::max(from, target * a.m);
  }
  return std::nullopt;
}

}  // namespace

ComputableElement from_support(Family fam, FiniteSupport sup, std::string label) {
  ComputableElement e;
  e.family = fam;
  e.label = std::move(label);
  auto sp = std::make_shared<FiniteSupport>(std::move(sup));
  e.support = *sp;
  e.eval = [sp](u64 x) { return sp->eval(x); };
  FamilyFlags fl = flags_of(fam);
  if (fl.injective) {
    e.inv_eval = [sp](u64 y) -> std::optional<u64> {
      for (u64 x = 0; x < sp->cutoff; ++x)
        if (sp->table[static_cast<std::size_t>(x)] == std::optional<u64>(y)) return x;
      switch (sp->tail.kind) {
        case TailRule::Undefined: return std::nullopt;
        case TailRule::Identity: return y >= sp->cutoff ? std::optional<u64>(y) : std::nullopt;
        case TailRule::Affine: {
          if (y < sp->tail.c || (y - sp->tail.c) % sp->tail.m) return std::nullopt;
          u64 x = (y - sp->tail.c) / sp->tail.m;
          return x >= sp->cutoff ? std::optional<u64>(x) : std::nullopt;
        }
        case TailRule::FloorDiv:
          return sp->tail.m == 1 && y >= sp->cutoff ? std::optional<u64>(y) : std::nullopt;
      }
      return std::nullopt;
    };
  }
  e.coimage_hint = sp->coimage();
  return e;
}

ComputableElement from_relation_support(RelationSupport sup, std::string label) {
  ComputableElement e;
  e.family = Family::Relation;
  e.label = std::move(label);
  auto sp = std::make_shared<RelationSupport>(std::move(sup));
  e.rel_support = *sp;
  e.rel_contains = [sp](u64 x, u64 y) { return sp->contains(x, y); };
  e.eval = [sp](u64 x) -> std::optional<u64> {
    // First related value, if any, scanning the finite part; diagonal tail.
    std::optional<u64> out;
    for (const auto& [a, b] : sp->pairs)
      if (a == x && (!out || b < *out)) out = b;
    if (sp->diagonal_tail && x >= sp->cutoff && (!out || x < *out)) out = x;
    return out;
  };
  return e;
}

ComputableElement from_partial_map(const FinitePartialMap& f, TailRule tail) {
  FiniteSupport sup;
  sup.cutoff = f.degree;
  sup.table = f.images;
  sup.tail = tail;
  Family fam = sup.total() ? (sup.injective() ? Family::Injection : Family::Transformation)
                           : (sup.injective() ? Family::PartialBijection : Family::PartialMap);
  if (fam == Family::Injection && sup.coimage() == Cardinal::fin(0)) fam = Family::Permutation;
  return from_support(fam, std::move(sup), print_partial_map(f));
}

ComputableElement from_partial_bijection(const FinitePartialBijection& f, TailRule tail) {
  u64 cutoff = f.degree;
  for (const auto& [a, b] : f.pairs) cutoff = std::max({cutoff, a + 1});
  FiniteSupport sup;
  sup.cutoff = cutoff;
  sup.table.assign(static_cast<std::size_t>(cutoff), std::nullopt);
  for (const auto& [a, b] : f.pairs) sup.table[static_cast<std::size_t>(a)] = b;
  sup.tail = tail;
  if (tail.kind == TailRule::Identity) {
    // keep injectivity: table values clashing with the identity tail are a caller bug
    if (!sup.injective()) throw std::invalid_argument("partial bijection with identity tail is not injective");
  }
  Family fam = sup.total() ? (sup.coimage() == Cardinal::fin(0) ? Family::Permutation : Family::Injection)
                           : Family::PartialBijection;
  return from_support(fam, std::move(sup), print_partial_bijection(f));
}

ComputableElement make_rule(const std::string& name, const std::vector<u64>& args) {
  if (name == "identity") {
    auto e = from_support(Family::Permutation, FiniteSupport{0, {}, {TailRule::Identity}}, "rule:identity");
    e.fiber_hint = [](u64) { return Cardinal::fin(1); };
    return e;
  }
  if (name == "shift") {
    u64 k = args.empty() ? 1 : args[0];
    auto e = from_support(k == 0 ? Family::Permutation : Family::Injection,
                          FiniteSupport{0, {}, {TailRule::Affine, 1, k}},
                          "rule:shift(" + std::to_string(k) + ")");
    e.fiber_hint = [k](u64 y) { return Cardinal::fin(y >= k ? 1 : 0); };
    return e;
  }
  if (name == "double") {
    auto e = from_support(Family::Injection, FiniteSupport{0, {}, {TailRule::Affine, 2, 0}}, "rule:double");
    e.fiber_hint = [](u64 y) { return Cardinal::fin(y % 2 == 0 ? 1 : 0); };
    return e;
  }
  if (name == "floordiv") {
    u64 m = args.empty() ? 2 : args[0];
    if (m == 0) throw std::invalid_argument("floordiv(0)");
    auto e = from_support(m == 1 ? Family::Permutation : Family::Surjection,
                          FiniteSupport{0, {}, {TailRule::FloorDiv, m}},
                          "rule:floordiv(" + std::to_string(m) + ")");
    e.fiber_hint = [m](u64) { return Cardinal::fin(m); };
    return e;
  }
  if (name == "pairing") {
    // The involution of N swapping the two Cantor coordinates.
    ComputableElement e;
    e.family = Family::Permutation;
    e.label = "rule:pairing";
    e.eval = [](u64 x) -> std::optional<u64> {
      auto [a, b] = unpair2(x);
      return pair2(b, a);
    };
    e.inv_eval = e.eval;
    e.coimage_hint = Cardinal::fin(0);
    e.fiber_hint = [](u64) { return Cardinal::fin(1); };
    return e;
  }
  throw std::invalid_argument("unknown rule '" + name + "'");
}

ComputableElement parse_computable(const std::string& dsl) {
  if (dsl.rfind("rule:", 0) == 0) {
    std::string body = dsl.substr(5);
    auto paren = body.find('(');
    if (paren == std::string::npos) return make_rule(body);
    std::string name = body.substr(0, paren);
    std::string inner = body.substr(paren + 1, body.rfind(')') - paren - 1);
    if (name == "table") {
      auto semi = inner.rfind(';');
      if (semi == std::string::npos) throw std::invalid_argument("rule:table needs ';tail'");
      FinitePartialMap pm = parse_partial_map(inner.substr(0, semi));
      std::string tail_s = inner.substr(semi + 1);
      TailRule tail;
      if (tail_s == "identity") tail = {TailRule::Identity};
      else if (tail_s == "undefined") tail = {TailRule::Undefined};
      else if (tail_s == "double") tail = {TailRule::Affine, 2, 0};
      else if (tail_s.rfind("shift(", 0) == 0)
        tail = {TailRule::Affine, 1, std::stoull(tail_s.substr(6))};
      else if (tail_s.rfind("floordiv(", 0) == 0)
        tail = {TailRule::FloorDiv, std::stoull(tail_s.substr(9))};
      else throw std::invalid_argument("unknown tail '" + tail_s + "'");
      return from_partial_map(pm, tail);
    }
    std::vector<u64> args;
    std::size_t i = 0;
    while (i < inner.size()) {
      std::size_t j = inner.find(',', i);
      if (j == std::string::npos) j = inner.size();
      args.push_back(std::stoull(inner.substr(i, j - i)));
      i = j + 1;
    }
    return make_rule(name, args);
  }
  if (!dsl.empty() && dsl[0] == '{') {
    RelationSupport rs;
    rs.pairs = parse_relation(dsl).pairs;
    std::set<u64> srcs, tgts;
    bool one_to_one = true;
    for (const auto& [x, y] : rs.pairs)
      one_to_one = one_to_one && srcs.insert(x).second && tgts.insert(y).second;
    if (one_to_one) {
      // Functional and injective pairs double as a partial bijection; keep
      // the relation view alongside so relation monoids accept it too.
      ComputableElement e = from_partial_bijection(parse_partial_bijection(dsl));
      e.rel_support = std::move(rs);
      e.label = dsl;
      return e;
    }
    return from_relation_support(std::move(rs), dsl);
  }
  if (!dsl.empty() && dsl[0] == '[') return from_partial_map(parse_partial_map(dsl));
  throw std::invalid_argument("cannot parse element '" + dsl + "'");
}

ComputableElement compose(const ComputableElement& f, const ComputableElement& g) {
  ComputableElement h;
  FamilyFlags ff = flags_of(f.family), gf = flags_of(g.family);
  h.family = family_from_flags({ff.total && gf.total, ff.functional && gf.functional,
                                ff.injective && gf.injective, ff.surjective && gf.surjective});
  h.label = "(" + f.label + ")(" + g.label + ")";

  if (f.is_functional() && g.is_functional()) {
    h.eval = [fe = f.eval, ge = g.eval](u64 x) -> std::optional<u64> {
      auto y = fe(x);
      return y ? ge(*y) : std::nullopt;
    };
    if (f.inv_eval && g.inv_eval) {
      h.inv_eval = [fi = f.inv_eval, gi = g.inv_eval](u64 z) -> std::optional<u64> {
        auto y = gi(z);
        return y ? fi(*y) : std::nullopt;
      };
    }
    if (ff.total && ff.injective && gf.total && gf.injective && f.coimage_hint && g.coimage_hint)
      h.coimage_hint = *f.coimage_hint + *g.coimage_hint;
    if (f.support && g.support) {
      auto ct = compose_tails(f.support->tail, g.support->tail);
      if (ct) {
        auto clear = tail_clear_point(f.support->tail, f.support->cutoff, g.support->cutoff);
        if (clear) {
          FiniteSupport sup;
          sup.cutoff = std::max(*clear, f.support->cutoff);
          sup.tail = *ct;
          sup.table.resize(static_cast<std::size_t>(sup.cutoff));
          for (u64 x = 0; x < sup.cutoff; ++x) sup.table[static_cast<std::size_t>(x)] = h.eval(x);
          h.support = std::move(sup);
        }
      }
    }
  } else {
    // Relation composition; exact only via supports.
    if (f.rel_support && g.rel_support) {
      const auto& a = *f.rel_support;
      const auto& b = *g.rel_support;
      RelationSupport out;
      out.diagonal_tail = a.diagonal_tail && b.diagonal_tail;
      out.cutoff = std::max(a.cutoff, b.cutoff);
      for (const auto& [x, y] : a.pairs)
        for (const auto& [u, v] : b.pairs)
          if (y == u) out.pairs.insert({x, v});
      if (b.diagonal_tail)
        for (const auto& [x, y] : a.pairs)
          if (y >= b.cutoff) out.pairs.insert({x, y});
      if (a.diagonal_tail)
        for (const auto& [u, v] : b.pairs)
          if (u >= a.cutoff) out.pairs.insert({u, v});
      auto res = from_relation_support(std::move(out), h.label);
      res.family = Family::Relation;
      return res;
    }
    // Fall back to a window-bounded witness search; membership queries on
    // such composites should go through construction-aware closures instead.
    h.family = Family::Relation;
    h.approx_relation = true;
    h.rel_contains = [f = f, g = g](u64 x, u64 y) {
      constexpr u64 kWitnessBound = 4096;
      for (u64 z = 0; z < kWitnessBound; ++z)
        if (f.relates(x, z) && g.relates(z, y)) return true;
      return false;
    };
    h.eval = [](u64) -> std::optional<u64> { return std::nullopt; };
  }
  return h;
}

ComputableElement invert(const ComputableElement& f) {
  ComputableElement h;
  h.label = "(" + f.label + ")^-1";
  switch (f.family) {
    case Family::Permutation: h.family = Family::Permutation; break;
    case Family::Injection: h.family = Family::PartialBijection; break;
    case Family::PartialBijection: h.family = Family::PartialBijection; break;
    case Family::Relation: h.family = Family::Relation; break;
    default:
      throw std::invalid_argument("invert: element of family " + family_name(f.family) +
                                  " has no functional inverse");
  }
  if (f.family == Family::Relation) {
    if (f.rel_support) {
      RelationSupport out;
      out.diagonal_tail = f.rel_support->diagonal_tail;
      out.cutoff = f.rel_support->cutoff;
      for (const auto& [x, y] : f.rel_support->pairs) out.pairs.insert({y, x});
      return from_relation_support(std::move(out), h.label);
    }
    h.rel_contains = [fc = f.rel_contains](u64 x, u64 y) { return fc(y, x); };
    h.approx_relation = f.approx_relation;
    h.eval = [](u64) -> std::optional<u64> { return std::nullopt; };
    return h;
  }
  if (!f.inv_eval) throw std::invalid_argument("invert: no inverse evaluator available");
  h.eval = f.inv_eval;
  h.inv_eval = f.eval;
  if (f.family == Family::Permutation) h.coimage_hint = Cardinal::fin(0);
  // The inverse of a finitely supported injection is finitely supported too,
  // but only simple tails are representable; skip otherwise.
  if (f.support && f.support->tail.kind == TailRule::Identity) {
    FiniteSupport sup;
    sup.cutoff = f.support->cutoff;
    sup.tail = {TailRule::Identity};
    sup.table.assign(static_cast<std::size_t>(sup.cutoff), std::nullopt);
    for (u64 y = 0; y < sup.cutoff; ++y) sup.table[static_cast<std::size_t>(y)] = h.eval(y);
    h.support = std::move(sup);
  }
  return h;
}

CardinalData cardinal_data(const ComputableElement& a, u64 window) {
  CardinalData out;
  if (a.support) {
    out.coimage = a.support->coimage();
    auto sup = *a.support;
    out.fiber = [sup](u64 y) {
      return std::pair<std::optional<Cardinal>, std::string>{sup.fiber(y), {}};
    };
    return out;
  }
  if (a.coimage_hint) out.coimage = *a.coimage_hint;
  else out.coimage_reason = "no finite support and no declared co-image";
  if (a.fiber_hint) {
    out.fiber = [hint = a.fiber_hint](u64 y) -> std::pair<std::optional<Cardinal>, std::string> {
      if (auto c = hint(y)) return {*c, {}};
      return {std::nullopt, "declared fiber profile has no answer"};
    };
  } else {
    // Probe: count preimages below the window; only a lower bound, so the
    // answer stays unknown but carries what was seen.
    out.fiber = [a, window](u64 y) -> std::pair<std::optional<Cardinal>, std::string> {
      u64 seen = 0;
      for (u64 x = 0; x < window; ++x)
        if (a.eval && a.eval(x) == std::optional<u64>(y)) ++seen;
      return {std::nullopt,
              "probed window [0," + std::to_string(window) + ") saw " + std::to_string(seen) +
                  " preimages; tail behavior undeclared"};
    };
  }
  return out;
}

bool equal_on_window(const ComputableElement& a, const ComputableElement& b, u64 window) {
  for (u64 x = 0; x < window; ++x)
    if (a.eval(x) != b.eval(x)) return false;
  return true;
}

Verdict image_member(const ComputableElement& f, u64 y, u64 window) {
  if (f.support) return f.support->in_image(y) ? Verdict::yes() : Verdict::no();
  if (f.rel_support) {
    if (f.rel_support->diagonal_tail && y >= f.rel_support->cutoff) return Verdict::yes();
    for (const auto& [a, b] : f.rel_support->pairs)
      if (b == y) return Verdict::yes();
    return Verdict::no();
  }
  if (f.inv_eval) return f.inv_eval(y) ? Verdict::yes() : Verdict::no();
  for (u64 x = 0; x < window; ++x) {
    if (f.eval && f.eval(x) == std::optional<u64>(y)) return Verdict::yes();
    if (f.rel_contains && f.rel_contains(x, y)) return Verdict::yes();
  }
  return Verdict::unknown("no witness below window " + std::to_string(window) +
                          " and image membership is otherwise undecidable");
}

Verdict domain_member(const ComputableElement& f, u64 x) {
  if (f.is_functional()) return f.eval(x) ? Verdict::yes() : Verdict::no();
  if (f.rel_support) {
    if (f.rel_support->diagonal_tail && x >= f.rel_support->cutoff) return Verdict::yes();
    for (const auto& [a, b] : f.rel_support->pairs)
      if (a == x) return Verdict::yes();
    return Verdict::no();
  }
  for (u64 y = 0; y < 64; ++y)
    if (f.rel_contains && f.rel_contains(x, y)) return Verdict::yes();
  return Verdict::unknown("relation domain membership needs a support");
}

ComputableElement sample_element(Family fam, Rng& rng, u64 m) {
  if (m == 0) m = 1;
  FiniteSupport sup;
  sup.cutoff = m;
  sup.table.assign(static_cast<std::size_t>(m), std::nullopt);
  auto cell = [&sup](u64 x) -> std::optional<u64>& { return sup.table[static_cast<std::size_t>(x)]; };
  switch (fam) {
    case Family::Transformation: {
      for (u64 x = 0; x < m; ++x) cell(x) = rng.below(2 * m);
      sup.tail = {TailRule::Identity};
      return from_support(fam, std::move(sup), "sampled");
    }
    case Family::PartialMap: {
      for (u64 x = 0; x < m; ++x)
        if (rng.below(4) != 0) cell(x) = rng.below(2 * m);
      sup.tail = rng.coin() ? TailRule{TailRule::Undefined} : TailRule{TailRule::Identity};
      return from_support(fam, std::move(sup), "sampled");
    }
    case Family::PartialBijection: {
      std::vector<u64> pool;
      for (u64 v = 0; v < 2 * m; ++v) pool.push_back(v);
      rng.shuffle(pool);
      std::size_t next = 0;
      for (u64 x = 0; x < m; ++x)
        if (rng.coin()) cell(x) = pool[next++];
      sup.tail = {TailRule::Undefined};
      return from_support(fam, std::move(sup), "sampled");
    }
    case Family::Injection: {
      u64 r = rng.below(4);
      std::vector<u64> pool;
      for (u64 v = 0; v < m + r; ++v) pool.push_back(v);
      rng.shuffle(pool);
      for (u64 x = 0; x < m; ++x) cell(x) = pool[static_cast<std::size_t>(x)];
      sup.tail = {TailRule::Affine, 1, r};
      return from_support(fam, std::move(sup), "sampled");
    }
    case Family::Permutation: {
      std::vector<u64> pool;
      for (u64 v = 0; v < m; ++v) pool.push_back(v);
      rng.shuffle(pool);
      for (u64 x = 0; x < m; ++x) cell(x) = pool[static_cast<std::size_t>(x)];
      sup.tail = {TailRule::Identity};
      return from_support(fam, std::move(sup), "sampled");
    }
    case Family::Surjection: {
      for (u64 x = 0; x < m; ++x) cell(x) = rng.below(m);
      for (u64 y = 0; 2 * y < m; ++y) cell(2 * y) = y;  // cover what the tail misses
      sup.tail = {TailRule::FloorDiv, 2};
      return from_support(fam, std::move(sup), "sampled");
    }
    case Family::Relation: {
      RelationSupport rs;
      rs.cutoff = m;
      rs.diagonal_tail = rng.coin();
      u64 k = rng.below(2 * m + 1);
      for (u64 i = 0; i < k; ++i) rs.pairs.insert({rng.below(m), rng.below(m)});
      return from_relation_support(std::move(rs), "sampled");
    }
  }
  throw std::logic_error("sample_element: bad family");
}

}  // namespace semitop
