#include "semitop/cantor.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace semitop {
namespace {

Bits take(const Bits& b, u64 k) {
  if (b.size() < k) throw std::logic_error("prefix shorter than requested");
  return Bits(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(k));
}

u64 half_up(u64 k) { return (k + 1) / 2; }

using u128 = unsigned __int128;

u128 scaled(const Dyadic& a, u64 exp) {
  return static_cast<u128>(a.num) << (exp - a.exp);
}

// Sum_{i<depth} |x_i - y_i| / 2^(i+1), an exact dyadic with exponent depth.
Dyadic d_trunc(const Bits& x, const Bits& y, u64 depth) {
  u64 num = 0;
  for (u64 i = 0; i < depth; ++i)
    if (x[i] != y[i]) num += u64{1} << (depth - 1 - i);
  return dy(num, depth);
}

// All extendable prefixes of T with the given length.
std::vector<Bits> tree_prefixes(const ClosedTree& T, u64 len) {
  std::vector<Bits> out, frontier{Bits{}};
  if (T.empty()) return out;
  for (u64 d = 0; d < len; ++d) {
    std::vector<Bits> next;
    for (const auto& p : frontier)
      for (uint8_t b : {uint8_t{0}, uint8_t{1}}) {
        Bits q = p;
        q.push_back(b);
        if (T.extendable(q)) next.push_back(std::move(q));
      }
    frontier = std::move(next);
  }
  return frontier;
}

// Least-branch extension of an extendable prefix to the given length.
Bits extend_in_tree(const ClosedTree& T, Bits p, u64 len) {
  while (p.size() < len) {
    p.push_back(0);
    if (!T.extendable(p)) {
      p.back() = 1;
      if (!T.extendable(p)) throw std::logic_error("closed tree has no extendable child");
    }
  }
  return p;
}

PrefixMap pm_compose_impl(const PrefixMap& f, const PrefixMap& g, bool with_inverse) {
  PrefixMap h;
  auto mf = f.modulus;
  auto mg = g.modulus;
  auto fe = f.eval;
  auto ge = g.eval;
  h.modulus = [mf, mg](u64 k) { return mf(mg(k)); };
  h.eval = [fe, ge, mg](const Bits& in, u64 k) { return ge(fe(in, mg(k)), k); };
  h.label = f.label + "." + g.label;
  if (with_inverse && f.inverse && g.inverse)
    h.inverse = std::make_shared<PrefixMap>(pm_compose_impl(*g.inverse, *f.inverse, false));
  return h;
}

struct DslParser {
  const std::string& s;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c))
      throw std::invalid_argument("prefix map dsl: expected '" + std::string(1, c) +
                                  "' at position " + std::to_string(i));
  }
  std::string word() {
    skip();
    std::size_t a = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
    if (a == i) throw std::invalid_argument("prefix map dsl: name expected at position " + std::to_string(i));
    return s.substr(a, i - a);
  }

  PrefixMap parse() {
    std::string name = word();
    if (name == "id") return pm_id();
    if (name == "interleave") return pm_stream_swap();
    if (name == "flip") {
      expect('(');
      std::string n = word();
      expect(')');
      return pm_flip(std::stoull(n));
    }
    if (name == "xor") {
      expect('(');
      std::string m = word();
      expect(')');
      return pm_xor(parse_bits(m));
    }
    if (name == "compose") {
      expect('(');
      PrefixMap acc = parse();
      while (eat(',')) acc = pm_compose(acc, parse());
      expect(')');
      return acc;
    }
    throw std::invalid_argument("prefix map dsl: unknown map '" + name + "'");
  }
};

// Enumerate leaf prefixes of T at depth `len`, throwing when the count would
// explode past the cap.
std::vector<Bits> tree_prefixes_capped(const ClosedTree& T, u64 len, u64 cap_bits) {
  if (len > cap_bits)
    throw std::invalid_argument("prefix enumeration at depth " + std::to_string(len) +
                                " exceeds the cap 2^" + std::to_string(cap_bits));
  return tree_prefixes(T, len);
}

}  // namespace

std::string bits_str(const Bits& b) {
  std::string out;
  out.reserve(b.size());
  for (uint8_t x : b) out.push_back(x ? '1' : '0');
  return out;
}

Bits parse_bits(const std::string& s) {
  Bits out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '0')
      out.push_back(0);
    else if (c == '1')
      out.push_back(1);
    else
      throw std::invalid_argument("bit string may contain only 0 and 1");
  }
  return out;
}

Bits pad_zero(Bits b, u64 len) {
  if (b.size() < len) b.resize(static_cast<std::size_t>(len), 0);
  return b;
}

Dyadic dy(u64 num, u64 exp) { return Dyadic{num, exp}.normalized(); }

Dyadic Dyadic::normalized() const {
  Dyadic d = *this;
  while (d.exp > 0 && d.num % 2 == 0) {
    d.num /= 2;
    d.exp -= 1;
  }
  if (d.num == 0) d.exp = 0;
  return d;
}

std::string Dyadic::str() const {
  Dyadic d = normalized();
  return std::to_string(d.num) + "/2^" + std::to_string(d.exp);
}

Dyadic Dyadic::parse(const std::string& s) {
  auto slash = s.find("/2^");
  if (slash == std::string::npos) return dy(std::stoull(s), 0);
  return dy(std::stoull(s.substr(0, slash)), std::stoull(s.substr(slash + 3)));
}

bool operator==(const Dyadic& a, const Dyadic& b) {
  u64 e = std::max(a.exp, b.exp);
  return scaled(a, e) == scaled(b, e);
}
bool operator<(const Dyadic& a, const Dyadic& b) {
  u64 e = std::max(a.exp, b.exp);
  return scaled(a, e) < scaled(b, e);
}
bool operator<=(const Dyadic& a, const Dyadic& b) { return a < b || a == b; }

Dyadic dy_add(const Dyadic& a, const Dyadic& b) {
  u64 e = std::max(a.exp, b.exp);
  u128 sum = scaled(a, e) + scaled(b, e);
  if (sum > ~u64{0}) throw std::overflow_error("dyadic sum overflows");
  return dy(static_cast<u64>(sum), e);
}

Dyadic dy_max(const Dyadic& a, const Dyadic& b) { return b < a ? a : b; }

std::string DyadicInterval::str() const { return "[" + lower.str() + ", " + upper.str() + "]"; }

Bits PrefixMap::apply(const Bits& in, u64 k) const {
  u64 need = modulus(k);
  if (in.size() < need)
    throw std::invalid_argument("prefix map '" + label + "' needs " + std::to_string(need) +
                                " input bits for " + std::to_string(k) + " output bits, got " +
                                std::to_string(in.size()));
  Bits out = eval(in, k);
  if (out.size() != k) throw std::logic_error("prefix map '" + label + "' returned wrong length");
  return out;
}

PrefixMap pm_id() {
  PrefixMap m;
  m.modulus = [](u64 k) { return k; };
  m.eval = [](const Bits& in, u64 k) { return take(in, k); };
  m.label = "id";
  m.inverse = std::make_shared<PrefixMap>();
  m.inverse->modulus = m.modulus;
  m.inverse->eval = m.eval;
  m.inverse->label = "id";
  return m;
}

PrefixMap pm_flip(u64 i) {
  auto mk = [i]() {
    PrefixMap m;
    m.modulus = [](u64 k) { return k; };
    m.eval = [i](const Bits& in, u64 k) {
      Bits out = take(in, k);
      if (i < k) out[static_cast<std::size_t>(i)] ^= 1;
      return out;
    };
    m.label = "flip(" + std::to_string(i) + ")";
    return m;
  };
  PrefixMap m = mk();
  m.inverse = std::make_shared<PrefixMap>(mk());
  return m;
}

PrefixMap pm_xor(Bits mask) {
  auto mk = [&mask]() {
    PrefixMap m;
    m.modulus = [](u64 k) { return k; };
    m.eval = [mask](const Bits& in, u64 k) {
      Bits out = take(in, k);
      for (std::size_t j = 0; j < out.size() && j < mask.size(); ++j) out[j] ^= mask[j];
      return out;
    };
    m.label = "xor(" + bits_str(mask) + ")";
    return m;
  };
  PrefixMap m = mk();
  m.inverse = std::make_shared<PrefixMap>(mk());
  return m;
}

PrefixMap pm_stream_swap() {
  auto mk = []() {
    PrefixMap m;
    m.modulus = [](u64 k) { return k + 1; };
    m.eval = [](const Bits& in, u64 k) {
      Bits out(static_cast<std::size_t>(k));
      for (u64 j = 0; j < k; ++j) out[static_cast<std::size_t>(j)] = in[static_cast<std::size_t>(j ^ 1)];
      return out;
    };
    m.label = "interleave";
    return m;
  };
  PrefixMap m = mk();
  m.inverse = std::make_shared<PrefixMap>(mk());
  return m;
}

PrefixMap pm_compose(const PrefixMap& f, const PrefixMap& g) { return pm_compose_impl(f, g, true); }

PrefixMap parse_prefix_map(const std::string& dsl) {
  DslParser p{dsl};
  PrefixMap m = p.parse();
  p.skip();
  if (p.i != dsl.size())
    throw std::invalid_argument("prefix map dsl: trailing input at position " + std::to_string(p.i));
  return m;
}

Bits interleave_bits(const Bits& a, const Bits& b) {
  // The merged prefix is only determined while both streams last.
  std::size_t len = a.size() > b.size() ? 2 * b.size() + 1 : 2 * a.size();
  Bits out(len);
  for (std::size_t i = 0; 2 * i < len; ++i) out[2 * i] = a[i];
  for (std::size_t i = 0; 2 * i + 1 < len; ++i) out[2 * i + 1] = b[i];
  return out;
}

std::pair<Bits, Bits> deinterleave_bits(const Bits& x) {
  Bits a, b;
  for (std::size_t i = 0; i < x.size(); ++i) (i % 2 ? b : a).push_back(x[i]);
  return {a, b};
}

PairCodec interleave() {
  PairCodec c;
  c.to_first.modulus = [](u64 k) { return 2 * k; };
  c.to_first.eval = [](const Bits& in, u64 k) {
    Bits out(static_cast<std::size_t>(k));
    for (u64 j = 0; j < k; ++j) out[static_cast<std::size_t>(j)] = in[static_cast<std::size_t>(2 * j)];
    return out;
  };
  c.to_first.label = "fst";
  c.to_second.modulus = [](u64 k) { return 2 * k + 1; };
  c.to_second.eval = [](const Bits& in, u64 k) {
    Bits out(static_cast<std::size_t>(k));
    for (u64 j = 0; j < k; ++j) out[static_cast<std::size_t>(j)] = in[static_cast<std::size_t>(2 * j + 1)];
    return out;
  };
  c.to_second.label = "snd";
  return c;
}

ClosedTree tree_all() {
  return ClosedTree{[](const Bits&) { return true; }, "all"};
}

ClosedTree tree_cylinder(Bits prefix) {
  auto p = std::make_shared<Bits>(std::move(prefix));
  return ClosedTree{[p](const Bits& q) {
                      for (std::size_t i = 0; i < q.size() && i < p->size(); ++i)
                        if (q[i] != (*p)[i]) return false;
                      return true;
                    },
                    "cyl(" + bits_str(*p) + ")"};
}

ClosedTree tree_diag() {
  return ClosedTree{[](const Bits& p) {
                      for (std::size_t i = 0; 2 * i + 1 < p.size(); ++i)
                        if (p[2 * i] != p[2 * i + 1]) return false;
                      return true;
                    },
                    "diag"};
}

ClosedTree tree_graph(const PrefixMap& s, u64 search_cap) {
  auto sm = std::make_shared<PrefixMap>(s);
  auto ext = [sm, search_cap](const Bits& p) {
    auto [evens, odds] = deinterleave_bits(p);
    u64 he = evens.size();
    if (he == 0) return true;
    u64 need = sm->modulus(he);
    u64 have = odds.size();
    if (need <= have) {
      Bits sx = sm->apply(odds, he);
      return std::equal(sx.begin(), sx.end(), evens.begin());
    }
    u64 gap = need - have;
    if (gap > search_cap)
      throw std::invalid_argument("graph tree for '" + sm->label +
                                  "' needs a lookahead of " + std::to_string(gap) +
                                  " bits, beyond the cap");
    for (u64 mask = 0; mask < (u64{1} << gap); ++mask) {
      Bits x = odds;
      for (u64 j = 0; j < gap; ++j) x.push_back((mask >> j) & 1);
      Bits sx = sm->apply(x, he);
      if (std::equal(sx.begin(), sx.end(), evens.begin())) return true;
    }
    return false;
  };
  return ClosedTree{ext, "graph(" + s.label + ")"};
}

PrefixMap retract(const ClosedTree& F) {
  if (F.empty()) throw std::invalid_argument("retract: the closed set is empty");
  auto T = std::make_shared<ClosedTree>(F);
  PrefixMap m;
  m.modulus = [](u64 k) { return k + 1; };
  m.eval = [T](const Bits& in, u64 k) {
    Bits p;
    bool diverged = false;
    for (u64 j = 0; j < k; ++j) {
      if (!diverged) {
        p.push_back(in[static_cast<std::size_t>(j)]);
        if (T->extendable(p)) continue;
        p.pop_back();
        diverged = true;
      }
      p.push_back(0);
      if (!T->extendable(p)) {
        p.back() = 1;
        if (!T->extendable(p)) throw std::logic_error("closed tree has no extendable child");
      }
    }
    return p;
  };
  m.label = "retract(" + F.label + ")";
  return m;
}

MillExtension mill_extend(const ClosedTree& A, const ClosedTree& B, const PrefixMap& phi,
                          const Dyadic& eps, u64 probe_depth) {
  if (A.empty() || B.empty()) throw std::invalid_argument("mill_extend: empty closed set");
  if (eps.num == 0) throw std::invalid_argument("mill_extend: eps must be positive");
  if (!phi.inverse)
    throw std::invalid_argument("mill_extend: phi must carry inverse data");

  u64 n = 0;
  while (n < 64 && !(dy(1, n) < eps)) ++n;
  if (n == 64) throw std::invalid_argument("mill_extend: eps is too small to split against");

  auto gA = std::make_shared<PrefixMap>(retract(A));
  auto gB = std::make_shared<PrefixMap>(retract(B));
  auto ph = std::make_shared<PrefixMap>(phi);
  auto phinv = phi.inverse;

  // Certify the precondition d_inf(phi, id_A) < eps on prefixes deep enough
  // to pin phi's output at probe_depth, and probe the phi / phi-inverse
  // round trip on the way.
  u64 pd = probe_depth;
  u64 enum_len = std::max(pd, ph->modulus(pd));
  Dyadic supA = dy(0, 0);
  for (const auto& p : tree_prefixes_capped(A, enum_len, 22)) {
    Bits out = ph->apply(p, pd);
    if (!B.extendable(out))
      throw std::invalid_argument("precondition certification failure: phi leaves B on prefix " +
                                  bits_str(p));
    Bits p2 = extend_in_tree(A, p, ph->modulus(phinv->modulus(pd)));
    Bits back = phinv->apply(ph->apply(p2, phinv->modulus(pd)), pd);
    if (back != take(p2, pd))
      throw std::invalid_argument("precondition certification failure: phi round trip breaks on " +
                                  bits_str(take(p2, pd)));
    supA = dy_max(supA, d_trunc(p, out, pd));
  }
  Dyadic dinfA_upper = dy_add(supA, dy(1, pd));
  if (!(dinfA_upper < eps))
    throw std::invalid_argument(
        "precondition certification failure: d_inf(phi, id_A) only certified <= " +
        dinfA_upper.str() + ", need < " + eps.str());

  // The three building blocks act on interleaved pair codes; the second
  // component is split at depth n and only its tail is ever altered.
  auto m_phi = ph->modulus;
  auto m_phinv = phinv->modulus;
  auto m_gA = gA->modulus;
  auto m_gB = gB->modulus;

  auto mk_phi0 = [n]() {
    PrefixMap m;
    m.modulus = [](u64 k) { return k; };
    m.eval = [n](const Bits& in, u64 k) {
      Bits out = take(in, k);
      for (u64 i = n; 2 * i + 1 < k; ++i) out[static_cast<std::size_t>(2 * i + 1)] ^= in[static_cast<std::size_t>(2 * (i - n))];
      return out;
    };
    m.label = "mill0";
    return m;
  };
  auto mk_phi1 = [n, gA, ph, m_phi, m_gA]() {
    auto depth_gac = [m_phi](u64 ia) { return std::max(ia, m_phi(ia)); };
    PrefixMap m;
    m.modulus = [n, depth_gac, m_gA](u64 k) {
      u64 ia = half_up(k);
      return std::max(k, 2 * (n + m_gA(depth_gac(ia))));
    };
    m.eval = [n, gA, ph, depth_gac](const Bits& in, u64 k) {
      u64 ia = half_up(k);
      auto [a, y] = deinterleave_bits(in);
      Bits c(y.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(n, y.size())), y.end());
      Bits gac = gA->apply(c, depth_gac(ia));
      Bits fgac = ph->apply(gac, ia);
      Bits out = take(in, k);
      for (u64 i = 0; 2 * i < k; ++i)
        out[static_cast<std::size_t>(2 * i)] ^= gac[static_cast<std::size_t>(i)] ^ fgac[static_cast<std::size_t>(i)];
      return out;
    };
    m.label = "mill1";
    return m;
  };
  auto mk_phi2 = [n, gB, phinv, m_phinv, m_gB]() {
    auto depth_gba = [m_phinv](u64 iw) { return std::max(iw, m_phinv(iw)); };
    PrefixMap m;
    m.modulus = [depth_gba, m_gB](u64 k) {
      u64 iw = half_up(k);
      return std::max(k, 2 * m_gB(depth_gba(iw)));
    };
    m.eval = [n, gB, phinv, depth_gba](const Bits& in, u64 k) {
      u64 iw = half_up(k);
      auto [a, y] = deinterleave_bits(in);
      Bits gba = gB->apply(a, depth_gba(iw));
      Bits w = phinv->apply(gba, iw);
      Bits out = take(in, k);
      for (u64 i = n; 2 * i + 1 < k; ++i)
        out[static_cast<std::size_t>(2 * i + 1)] ^= w[static_cast<std::size_t>(i - n)];
      return out;
    };
    m.label = "mill2";
    return m;
  };

  PrefixMap fwd = pm_compose_impl(pm_compose_impl(mk_phi0(), mk_phi1(), false), mk_phi2(), false);
  PrefixMap bwd = pm_compose_impl(pm_compose_impl(mk_phi2(), mk_phi1(), false), mk_phi0(), false);
  fwd.inverse = std::make_shared<PrefixMap>(std::move(bwd));
  fwd.label = "mill(" + phi.label + ")";

  // Lower bound for the distance to the identity, witnessed at probe depth;
  // the upper bound is structural: the second component moves below 2^-n and
  // the first moves by at most the certified distance of phi to the identity.
  Dyadic lower = dy(0, 0);
  u64 hp = pd / 2;
  if (hp > 0) {
    u64 L = fwd.modulus(pd);
    for (u64 mask = 0; mask < (u64{1} << pd); ++mask) {
      Bits z(static_cast<std::size_t>(pd));
      for (u64 j = 0; j < pd; ++j) z[static_cast<std::size_t>(j)] = (mask >> j) & 1;
      Bits out = fwd.apply(pad_zero(z, L), pd);
      auto [a0, a1] = deinterleave_bits(take(z, pd));
      auto [b0, b1] = deinterleave_bits(out);
      lower = dy_max(lower, dy_max(d_trunc(a0, b0, hp), d_trunc(a1, b1, hp)));
    }
  }
  Dyadic upper = dy_max(dy(1, n), dinfA_upper);
  return MillExtension{std::move(fwd), DyadicInterval{lower, dy_max(lower, upper)}, n};
}

CantorWitness cantor_propx_witness(const PrefixMap& s) {
  CantorWitness w;
  w.f.modulus = [](u64 k) { return k; };
  w.f.eval = [](const Bits& in, u64 k) {
    Bits out(static_cast<std::size_t>(k), 0);
    for (u64 j = 0; j < k; j += 2) out[static_cast<std::size_t>(j)] = in[static_cast<std::size_t>(j / 4)];
    return out;
  };
  w.f.label = "pairup";

  w.g.modulus = [](u64 k) { return 4 * k; };
  w.g.eval = [](const Bits& in, u64 k) {
    Bits out(static_cast<std::size_t>(k));
    for (u64 j = 0; j < k; ++j) out[static_cast<std::size_t>(j)] = in[static_cast<std::size_t>(4 * j)];
    return out;
  };
  w.g.label = "unpair";

  auto sm = std::make_shared<PrefixMap>(s);
  PrefixMap phi;
  phi.modulus = [sm](u64 k) {
    u64 he = half_up(k);
    return 2 * std::max(sm->modulus(he), he) + 2;
  };
  phi.eval = [sm](const Bits& in, u64 k) {
    auto [evens, odds] = deinterleave_bits(in);
    (void)evens;
    Bits sx = sm->apply(odds, half_up(k));
    return take(interleave_bits(sx, odds), k);
  };
  phi.label = "graphof(" + s.label + ")";
  phi.inverse = std::make_shared<PrefixMap>();
  phi.inverse->modulus = [](u64 k) { return 2 * half_up(k) + 2; };
  phi.inverse->eval = [](const Bits& in, u64 k) {
    auto [evens, odds] = deinterleave_bits(in);
    (void)evens;
    return take(interleave_bits(odds, odds), k);
  };
  phi.inverse->label = "ungraph";

  MillExtension ext = mill_extend(tree_diag(), tree_graph(s), phi, dy(2, 0), 10);
  w.t_s = std::move(ext.map);
  w.t_s.label = "t[" + s.label + "]";
  return w;
}

DyadicInterval dinf_estimate(const PrefixMap& f, const PrefixMap& g, u64 depth, u64 enum_cap) {
  u64 L = std::max({f.modulus(depth), g.modulus(depth), u64{1}});
  if (L > enum_cap)
    throw std::invalid_argument("dinf_estimate at depth " + std::to_string(depth) +
                                " needs 2^" + std::to_string(L) + " prefixes, beyond the cap");
  Dyadic lower = dy(0, 0);
  for (u64 mask = 0; mask < (u64{1} << L); ++mask) {
    Bits p(static_cast<std::size_t>(L));
    for (u64 j = 0; j < L; ++j) p[static_cast<std::size_t>(j)] = (mask >> j) & 1;
    lower = dy_max(lower, d_trunc(f.apply(p, depth), g.apply(p, depth), depth));
  }
  return DyadicInterval{lower, dy_add(lower, dy(1, depth))};
}

CantorCheck pm_check_refinement(const PrefixMap& f, u64 depth) {
  CantorCheck rep;
  u64 L = f.modulus(depth) + 2;
  if (L > 22) {
    rep.ok = false;
    rep.detail = "modulus too deep to probe exhaustively";
    return rep;
  }
  for (u64 mask = 0; mask < (u64{1} << L); ++mask) {
    Bits p(static_cast<std::size_t>(L));
    for (u64 j = 0; j < L; ++j) p[static_cast<std::size_t>(j)] = (mask >> j) & 1;
    Bits full = f.apply(p, depth);
    for (u64 k = 0; k + 1 <= depth; k += 3) {
      Bits shorter = f.apply(take(p, f.modulus(k)), k);
      ++rep.points;
      if (shorter != take(full, k)) {
        rep.ok = false;
        rep.detail = "output at depth " + std::to_string(k) + " disagrees on input " + bits_str(p);
        return rep;
      }
    }
  }
  return rep;
}

CantorCheck verify_mill_identity(const MillExtension& ext, const ClosedTree& A,
                                 const PrefixMap& phi, u64 depth) {
  CantorCheck rep;
  u64 hp = depth / 2;
  u64 La = std::max({hp, phi.modulus(hp), (ext.map.modulus(depth) + 1) / 2});
  for (const auto& p : tree_prefixes_capped(A, La, 22)) {
    Bits z = pad_zero(interleave_bits(p, Bits(p.size(), 0)), ext.map.modulus(depth));
    Bits out = ext.map.apply(z, depth);
    auto [first, second] = deinterleave_bits(out);
    Bits want = phi.apply(p, hp);
    ++rep.points;
    if (take(first, hp) != want || second != Bits(second.size(), 0)) {
      rep.ok = false;
      rep.detail = "extension identity fails on prefix " + bits_str(p);
      return rep;
    }
    if (ext.map.inverse) {
      u64 ds = depth / 2;
      Bits z2 = pad_zero(z, ext.map.modulus(ext.map.inverse->modulus(ds)));
      Bits back = ext.map.inverse->apply(ext.map.apply(z2, ext.map.inverse->modulus(ds)), ds);
      if (back != take(z2, ds)) {
        rep.ok = false;
        rep.detail = "inverse round trip fails on prefix " + bits_str(p);
        return rep;
      }
    }
  }
  return rep;
}

CantorCheck verify_cantor_witness(const CantorWitness& w, const PrefixMap& s, u64 depth) {
  CantorCheck rep;
  u64 mid2 = w.g.modulus(depth);
  u64 mid1 = w.t_s.modulus(mid2);
  u64 L = std::max(w.f.modulus(mid1), s.modulus(depth));
  for (u64 mask = 0; mask < (u64{1} << depth); ++mask) {
    Bits x(static_cast<std::size_t>(depth));
    for (u64 j = 0; j < depth; ++j) x[static_cast<std::size_t>(j)] = (mask >> j) & 1;
    Bits xp = pad_zero(x, L);
    Bits lhs = s.apply(xp, depth);
    Bits rhs = w.g.apply(w.t_s.apply(w.f.apply(xp, mid1), mid2), depth);
    ++rep.points;
    if (lhs != rhs) {
      rep.ok = false;
      rep.detail = "identity fails on input " + bits_str(x) + ": map gives " + bits_str(lhs) +
                   ", chain gives " + bits_str(rhs);
      return rep;
    }
  }
  return rep;
}

std::string cantor_report_json(const std::string& map_dsl, u64 depth) {
  PrefixMap s = parse_prefix_map(map_dsl);
  nlohmann::json j;
  j["command"] = "cantor-witness";
  j["map"] = map_dsl;
  j["depth"] = depth;

  CantorCheck refine = pm_check_refinement(s, std::min<u64>(depth, 10));
  j["refinement"] = {{"ok", refine.ok}, {"points", refine.points}};
  if (!refine.ok) j["refinement"]["detail"] = refine.detail;

  CantorWitness w = cantor_propx_witness(s);
  CantorCheck idc = verify_cantor_witness(w, s, depth);
  j["identity"] = {{"ok", idc.ok}, {"points", idc.points}};
  if (!idc.ok) j["identity"]["detail"] = idc.detail;

  DyadicInterval dist = dinf_estimate(s, pm_id(), std::min<u64>(depth, 16));
  j["dinf_to_id"] = {{"lower", dist.lower.str()}, {"upper", dist.upper.str()}};
  j["ok"] = refine.ok && idc.ok;
  return j.dump(2);
}

}  // namespace semitop
