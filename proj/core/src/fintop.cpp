#include "semitop/fintop.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <json.hpp>

namespace semitop {

FiniteTopology FiniteTopology::discrete(u64 n) {
  FiniteTopology t;
  t.n = n;
  for (Mask m = 0; m <= t.full(); ++m) {
    t.opens.insert(m);
    if (t.full() == 0) break;
  }
  return t;
}

FiniteTopology FiniteTopology::indiscrete(u64 n) {
  FiniteTopology t;
  t.n = n;
  t.opens = {0, t.full()};
  return t;
}

bool FiniteTopology::valid() const {
  if (!opens.count(0) || !opens.count(full())) return false;
  for (Mask a : opens) {
    if ((a & ~full()) != 0) return false;
    for (Mask b : opens) {
      if (!opens.count(a | b) || !opens.count(a & b)) return false;
    }
  }
  return true;
}

Mask FiniteTopology::min_open(u64 x) const {
  Mask acc = full();
  for (Mask u : opens)
    if (u & (Mask(1) << x)) acc &= u;
  return acc;
}

Mask FiniteTopology::interior(Mask m) const {
  Mask acc = 0;
  for (Mask u : opens)
    if ((u & ~m) == 0) acc |= u;
  return acc;
}

Mask FiniteTopology::closure(Mask m) const { return full() & ~interior(full() & ~m); }

bool FiniteTopology::t0() const {
  for (u64 x = 0; x < n; ++x)
    for (u64 y = x + 1; y < n; ++y)
      if (min_open(x) == min_open(y)) return false;
  return true;
}

bool FiniteTopology::t1() const {
  for (u64 x = 0; x < n; ++x)
    if (min_open(x) != (Mask(1) << x)) return false;
  return true;
}

bool FiniteTopology::t2() const {
  for (u64 x = 0; x < n; ++x)
    for (u64 y = x + 1; y < n; ++y)
      if (min_open(x) & min_open(y)) return false;
  return true;
}

FiniteTopology generate_topology(const std::vector<Mask>& subbasis, u64 n) {
  FiniteTopology t;
  t.n = n;
  for (Mask m : subbasis)
    if (m & ~t.full()) throw std::invalid_argument("generate_topology: set outside ground");
  t.opens.insert(0);
  t.opens.insert(t.full());
  t.opens.insert(subbasis.begin(), subbasis.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Mask> cur(t.opens.begin(), t.opens.end());
    for (Mask a : cur)
      for (Mask b : cur) {
        if (t.opens.insert(a | b).second) grew = true;
        if (t.opens.insert(a & b).second) grew = true;
      }
  }
  return t;
}

SeparationFlags separation(const FiniteTopology& t) { return {t.t0(), t.t1(), t.t2()}; }

FiniteTopology intersect_topologies(const std::vector<FiniteTopology>& ts) {
  if (ts.empty()) throw std::invalid_argument("intersect_topologies: empty list");
  FiniteTopology out = ts[0];
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (ts[i].n != out.n) throw std::invalid_argument("intersect_topologies: ground size mismatch");
    std::set<Mask> kept;
    for (Mask m : out.opens)
      if (ts[i].opens.count(m)) kept.insert(m);
    out.opens = std::move(kept);
  }
  return out;
}

std::vector<FiniteTopology> enumerate_topologies(u64 n, u64 cap) {
  if (n > cap) throw std::invalid_argument("enumerate_topologies: n exceeds cap");
  u64 subsets = u64(1) << n;
  Mask fullm = subsets - 1;
  std::vector<FiniteTopology> out;
  // A family of subsets is a bitset over the 2^n possible masks.
  for (u64 fam = 0; fam < (u64(1) << subsets); ++fam) {
    if (!(fam & 1) || !(fam & (u64(1) << fullm))) continue;
    std::vector<Mask> members;
    for (Mask m = 0; m < subsets; ++m)
      if (fam & (u64(1) << m)) members.push_back(m);
    bool closed = true;
    for (std::size_t i = 0; i < members.size() && closed; ++i)
      for (std::size_t j = i; j < members.size(); ++j) {
        if (!(fam & (u64(1) << (members[i] | members[j]))) ||
            !(fam & (u64(1) << (members[i] & members[j])))) {
          closed = false;
          break;
        }
      }
    if (!closed) continue;
    FiniteTopology t;
    t.n = n;
    t.opens.insert(members.begin(), members.end());
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FiniteTopology> enumerate_topologies_by_closure(u64 n, u64 cap) {
  if (n > cap) throw std::invalid_argument("enumerate_topologies_by_closure: n exceeds cap");
  u64 subsets = u64(1) << n;
  std::set<FiniteTopology> seen;
  for (u64 fam = 0; fam < (u64(1) << subsets); ++fam) {
    std::vector<Mask> sub;
    for (Mask m = 0; m < subsets; ++m)
      if (fam & (u64(1) << m)) sub.push_back(m);
    seen.insert(generate_topology(sub, n));
  }
  return {seen.begin(), seen.end()};
}

bool FiniteSemigroup::associative() const {
  for (u64 a = 0; a < n; ++a)
    for (u64 b = 0; b < n; ++b)
      for (u64 c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
  return true;
}

bool FiniteSemigroup::commutative() const {
  for (u64 a = 0; a < n; ++a)
    for (u64 b = a + 1; b < n; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::optional<u64> FiniteSemigroup::find_identity() const {
  for (u64 e = 0; e < n; ++e) {
    bool ok = true;
    for (u64 x = 0; x < n && ok; ++x) ok = mul(e, x) == x && mul(x, e) == x;
    if (ok) return e;
  }
  return std::nullopt;
}

std::optional<u64> FiniteSemigroup::find_zero() const {
  for (u64 z = 0; z < n; ++z) {
    bool ok = true;
    for (u64 x = 0; x < n && ok; ++x) ok = mul(z, x) == z && mul(x, z) == z;
    if (ok) return z;
  }
  return std::nullopt;
}

std::optional<std::vector<u64>> FiniteSemigroup::find_inversion() const {
  std::vector<u64> inv(static_cast<std::size_t>(n));
  for (u64 x = 0; x < n; ++x) {
    std::optional<u64> found;
    for (u64 y = 0; y < n; ++y) {
      if (mul(mul(x, y), x) == x && mul(mul(y, x), y) == y) {
        if (found) return std::nullopt;  // inverse not unique
        found = y;
      }
    }
    if (!found) return std::nullopt;
    inv[static_cast<std::size_t>(x)] = *found;
  }
  return inv;
}

void FiniteSemigroup::annotate() {
  identity_idx = find_identity();
  if (auto inv = find_inversion()) inverse = *inv;
}

bool FiniteSemigroup::is_group() const {
  auto e = find_identity();
  if (!e) return false;
  for (u64 x = 0; x < n; ++x) {
    bool has = false;
    for (u64 y = 0; y < n && !has; ++y) has = mul(x, y) == *e && mul(y, x) == *e;
    if (!has) return false;
  }
  return true;
}

FiniteSemigroup FiniteSemigroup::with_identity_adjoined() const {
  FiniteSemigroup out;
  out.n = n + 1;
  out.table.assign(static_cast<std::size_t>(out.n * out.n), 0);
  for (u64 a = 0; a < n; ++a)
    for (u64 b = 0; b < n; ++b) out.table[static_cast<std::size_t>(a * out.n + b)] = mul(a, b);
  for (u64 a = 0; a <= n; ++a) {
    out.table[static_cast<std::size_t>(a * out.n + n)] = a;
    out.table[static_cast<std::size_t>(n * out.n + a)] = a;
  }
  out.identity_idx = n;
  return out;
}

FiniteSemigroup FiniteSemigroup::monoid_completion() const {
  if (auto e = find_identity()) {
    FiniteSemigroup out = *this;
    out.identity_idx = *e;
    return out;
  }
  return with_identity_adjoined();
}

FiniteSemigroup FiniteSemigroup::relabel(const std::vector<u64>& perm) const {
  FiniteSemigroup out;
  out.n = n;
  out.table.assign(table.size(), 0);
  for (u64 a = 0; a < n; ++a)
    for (u64 b = 0; b < n; ++b)
      out.table[static_cast<std::size_t>(perm[static_cast<std::size_t>(a)] * n +
                                         perm[static_cast<std::size_t>(b)])] =
          perm[static_cast<std::size_t>(mul(a, b))];
  return out;
}

std::vector<u64> FiniteSemigroup::canonical_table() const {
  if (n > 6) throw std::invalid_argument("canonical_table: order too large");
  std::vector<u64> perm(static_cast<std::size_t>(n));
  for (u64 i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::vector<u64> best = table;
  do {
    auto cand = relabel(perm).table;
    if (cand < best) best = cand;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

FiniteSemigroup direct_product(const FiniteSemigroup& a, const FiniteSemigroup& b) {
  FiniteSemigroup out;
  out.n = a.n * b.n;
  out.table.assign(static_cast<std::size_t>(out.n * out.n), 0);
  for (u64 x1 = 0; x1 < a.n; ++x1)
    for (u64 y1 = 0; y1 < b.n; ++y1)
      for (u64 x2 = 0; x2 < a.n; ++x2)
        for (u64 y2 = 0; y2 < b.n; ++y2) {
          u64 p = x1 * b.n + y1, q = x2 * b.n + y2;
          out.table[static_cast<std::size_t>(p * out.n + q)] =
              a.mul(x1, x2) * b.n + b.mul(y1, y2);
        }
  return out;
}

namespace {
FiniteSemigroup from_rule(u64 n, const std::function<u64(u64, u64)>& f) {
  FiniteSemigroup s;
  s.n = n;
  s.table.resize(static_cast<std::size_t>(n * n));
  for (u64 a = 0; a < n; ++a)
    for (u64 b = 0; b < n; ++b) s.table[static_cast<std::size_t>(a * n + b)] = f(a, b);
  return s;
}
}  // namespace

FiniteSemigroup left_zero_semigroup(u64 n) { return from_rule(n, [](u64 a, u64) { return a; }); }
FiniteSemigroup right_zero_semigroup(u64 n) { return from_rule(n, [](u64, u64 b) { return b; }); }
FiniteSemigroup null_semigroup(u64 n) { return from_rule(n, [](u64, u64) { return u64(0); }); }
FiniteSemigroup cyclic_group(u64 n) {
  auto s = from_rule(n, [n](u64 a, u64 b) { return (a + b) % n; });
  s.annotate();
  return s;
}
FiniteSemigroup chain_semilattice(u64 n, bool use_max) {
  auto s = from_rule(n, [use_max](u64 a, u64 b) { return use_max ? std::max(a, b) : std::min(a, b); });
  s.annotate();
  return s;
}

FiniteSemigroup monogenic(u64 index, u64 period) {
  if (index == 0 || period == 0) throw std::invalid_argument("monogenic: index, period >= 1");
  u64 m = index + period - 1;  // exponents 1..m, element i is a^(i+1)
  auto fold = [index, period, m](u64 e) { return e <= m ? e : index + (e - index) % period; };
  return from_rule(m, [fold](u64 a, u64 b) { return fold(a + 1 + b + 1) - 1; });
}

FiniteSemigroup full_transformation_monoid(u64 k) {
  u64 count = 1;
  for (u64 i = 0; i < k; ++i) count *= k;
  std::vector<std::vector<u64>> maps;
  for (u64 code = 0; code < count; ++code) {
    std::vector<u64> im(static_cast<std::size_t>(k));
    u64 c = code;
    for (u64 i = 0; i < k; ++i) {
      im[static_cast<std::size_t>(i)] = c % k;
      c /= k;
    }
    maps.push_back(std::move(im));
  }
  std::sort(maps.begin(), maps.end());
  std::map<std::vector<u64>, u64> idx;
  for (u64 i = 0; i < count; ++i) idx[maps[static_cast<std::size_t>(i)]] = i;
  auto s = from_rule(count, [&](u64 a, u64 b) {
    std::vector<u64> c(static_cast<std::size_t>(k));
    for (u64 x = 0; x < k; ++x)
      c[static_cast<std::size_t>(x)] = maps[static_cast<std::size_t>(b)][static_cast<std::size_t>(
          maps[static_cast<std::size_t>(a)][static_cast<std::size_t>(x)])];
    return idx.at(c);
  });
  s.annotate();
  return s;
}

FiniteSemigroup symmetric_inverse_monoid(u64 k) {
  // Partial bijections of {0..k-1}; value k encodes "undefined".
  u64 codes = 1;
  for (u64 i = 0; i < k; ++i) codes *= (k + 1);
  std::vector<std::vector<u64>> maps;
  for (u64 code = 0; code < codes; ++code) {
    std::vector<u64> im(static_cast<std::size_t>(k));
    u64 c = code;
    bool inj = true;
    std::set<u64> seen;
    for (u64 i = 0; i < k; ++i) {
      u64 v = c % (k + 1);
      c /= (k + 1);
      im[static_cast<std::size_t>(i)] = v;
      if (v < k && !seen.insert(v).second) inj = false;
    }
    if (inj) maps.push_back(std::move(im));
  }
  std::sort(maps.begin(), maps.end());
  std::map<std::vector<u64>, u64> idx;
  for (u64 i = 0; i < maps.size(); ++i) idx[maps[static_cast<std::size_t>(i)]] = i;
  auto s = from_rule(maps.size(), [&](u64 a, u64 b) {
    std::vector<u64> c(static_cast<std::size_t>(k));
    for (u64 x = 0; x < k; ++x) {
      u64 mid = maps[static_cast<std::size_t>(a)][static_cast<std::size_t>(x)];
      c[static_cast<std::size_t>(x)] =
          mid < k ? maps[static_cast<std::size_t>(b)][static_cast<std::size_t>(mid)] : k;
    }
    return idx.at(c);
  });
  s.annotate();
  return s;
}

FiniteSemigroup symmetric_group(u64 k) {
  std::vector<std::vector<u64>> perms;
  std::vector<u64> p(static_cast<std::size_t>(k));
  for (u64 i = 0; i < k; ++i) p[static_cast<std::size_t>(i)] = i;
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<u64>, u64> idx;
  for (u64 i = 0; i < perms.size(); ++i) idx[perms[static_cast<std::size_t>(i)]] = i;
  auto s = from_rule(perms.size(), [&](u64 a, u64 b) {
    std::vector<u64> c(static_cast<std::size_t>(k));
    for (u64 x = 0; x < k; ++x)
      c[static_cast<std::size_t>(x)] = perms[static_cast<std::size_t>(b)][static_cast<std::size_t>(
          perms[static_cast<std::size_t>(a)][static_cast<std::size_t>(x)])];
    return idx.at(c);
  });
  s.annotate();
  return s;
}

std::vector<FiniteSemigroup> all_semigroups_upto_iso(u64 n) {
  if (n > 3) throw std::invalid_argument("all_semigroups_upto_iso: exhaustive search capped at 3");
  u64 cells = n * n, tables = 1;
  for (u64 i = 0; i < cells; ++i) tables *= n;
  std::set<std::vector<u64>> canon;
  std::vector<FiniteSemigroup> out;
  for (u64 code = 0; code < tables; ++code) {
    FiniteSemigroup s;
    s.n = n;
    s.table.resize(static_cast<std::size_t>(cells));
    u64 c = code;
    for (u64 i = 0; i < cells; ++i) {
      s.table[static_cast<std::size_t>(i)] = c % n;
      c /= n;
    }
    if (!s.associative()) continue;
    if (canon.insert(s.canonical_table()).second) {
      s.annotate();
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<FiniteSemigroup> semigroup_library() {
  std::vector<FiniteSemigroup> lib;
  for (u64 n = 1; n <= 3; ++n) {
    auto all = all_semigroups_upto_iso(n);
    lib.insert(lib.end(), all.begin(), all.end());
  }
  // Order-4 entries from constructions, deduplicated up to isomorphism.
  std::vector<FiniteSemigroup> order2 = all_semigroups_upto_iso(2);
  std::vector<FiniteSemigroup> cand;
  for (const auto& a : order2)
    for (const auto& b : order2) cand.push_back(direct_product(a, b));
  for (const auto& s3 : all_semigroups_upto_iso(3)) cand.push_back(s3.with_identity_adjoined());
  cand.push_back(cyclic_group(4));
  cand.push_back(monogenic(2, 3));
  cand.push_back(monogenic(3, 2));
  cand.push_back(monogenic(4, 1));
  cand.push_back(chain_semilattice(4));
  cand.push_back(left_zero_semigroup(4));
  cand.push_back(right_zero_semigroup(4));
  cand.push_back(null_semigroup(4));
  cand.push_back(full_transformation_monoid(2));
  // Meet semilattices of the diamond and the three-branch tree.
  cand.push_back(from_rule(4, [](u64 a, u64 b) -> u64 {
    if (a == b) return a;
    if (a == 3) return b;
    if (b == 3) return a;
    return 0;  // 0 below 1,2; 3 on top
  }));
  cand.push_back(from_rule(4, [](u64 a, u64 b) -> u64 { return a == b ? a : 0; }));
  std::set<std::vector<u64>> canon;
  for (auto& s : cand) {
    if (!s.associative()) throw std::logic_error("semigroup_library: construction not associative");
    if (canon.insert(s.canonical_table()).second) {
      s.annotate();
      lib.push_back(std::move(s));
    }
  }
  return lib;
}

SemigroupTopologyCheck check_semigroup_topology(const FiniteSemigroup& s, const FiniteTopology& t) {
  if (s.n != t.n) throw std::invalid_argument("check_semigroup_topology: size mismatch");
  SemigroupTopologyCheck out;
  std::vector<Mask> minopen(static_cast<std::size_t>(s.n));
  for (u64 x = 0; x < s.n; ++x) minopen[static_cast<std::size_t>(x)] = t.min_open(x);

  out.topological = true;
  for (u64 a = 0; a < s.n && out.topological; ++a)
    for (u64 b = 0; b < s.n && out.topological; ++b) {
      Mask prod = 0;
      for (u64 x = 0; x < s.n; ++x)
        if (minopen[static_cast<std::size_t>(a)] & (Mask(1) << x))
          for (u64 y = 0; y < s.n; ++y)
            if (minopen[static_cast<std::size_t>(b)] & (Mask(1) << y))
              prod |= Mask(1) << s.mul(x, y);
      for (Mask u : t.opens) {
        if (!(u & (Mask(1) << s.mul(a, b)))) continue;
        if (prod & ~u) {
          out.topological = false;
          out.counterexample = ContinuityCounterexample{a, b, u};
          break;
        }
      }
    }

  auto map_continuous = [&](const std::function<u64(u64)>& f) {
    for (Mask u : t.opens) {
      Mask pre = 0;
      for (u64 x = 0; x < s.n; ++x)
        if (u & (Mask(1) << f(x))) pre |= Mask(1) << x;
      if (!t.is_open(pre)) return false;
    }
    return true;
  };
  out.left_semitopological = out.right_semitopological = true;
  for (u64 a = 0; a < s.n; ++a) {
    if (!map_continuous([&](u64 x) { return s.mul(a, x); })) out.left_semitopological = false;
    if (!map_continuous([&](u64 x) { return s.mul(x, a); })) out.right_semitopological = false;
  }
  return out;
}

bool inversion_continuous(const FiniteSemigroup& s, const FiniteTopology& t) {
  if (!s.is_inverse()) throw std::invalid_argument("inversion_continuous: no inversion map");
  for (Mask u : t.opens) {
    Mask pre = 0;
    for (u64 x = 0; x < s.n; ++x)
      if (u & (Mask(1) << s.inverse[static_cast<std::size_t>(x)])) pre |= Mask(1) << x;
    if (!t.is_open(pre)) return false;
  }
  return true;
}

std::string semigroup_to_json(const FiniteSemigroup& s) {
  nlohmann::json j;
  j["order"] = s.n;
  std::vector<std::vector<u64>> rows;
  for (u64 a = 0; a < s.n; ++a) {
    std::vector<u64> row;
    for (u64 b = 0; b < s.n; ++b) row.push_back(s.mul(a, b));
    rows.push_back(std::move(row));
  }
  j["table"] = rows;
  if (s.identity_idx) j["identity"] = *s.identity_idx;
  if (!s.inverse.empty()) j["inverse"] = s.inverse;
  return j.dump();
}

FiniteSemigroup semigroup_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  FiniteSemigroup s;
  s.n = j.at("order").get<u64>();
  auto rows = j.at("table");
  if (rows.size() != s.n) throw std::invalid_argument("semigroup_from_json: bad table shape");
  for (const auto& row : rows) {
    if (row.size() != s.n) throw std::invalid_argument("semigroup_from_json: bad row length");
    for (const auto& v : row) {
      u64 x = v.get<u64>();
      if (x >= s.n) throw std::invalid_argument("semigroup_from_json: entry out of range");
      s.table.push_back(x);
    }
  }
  if (!s.associative()) throw std::invalid_argument("semigroup_from_json: table is not associative");
  if (j.contains("identity")) s.identity_idx = j["identity"].get<u64>();
  if (j.contains("inverse")) s.inverse = j["inverse"].get<std::vector<u64>>();
  if (!s.identity_idx && s.inverse.empty()) s.annotate();
  return s;
}

std::string topology_to_json(const FiniteTopology& t) {
  nlohmann::json j;
  j["n"] = t.n;
  std::vector<std::vector<u64>> opens;
  for (Mask m : t.opens) {
    std::vector<u64> pts;
    for (u64 x = 0; x < t.n; ++x)
      if (m & (Mask(1) << x)) pts.push_back(x);
    opens.push_back(std::move(pts));
  }
  j["opens"] = opens;
  return j.dump();
}

FiniteTopology topology_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  FiniteTopology t;
  t.n = j.at("n").get<u64>();
  for (const auto& pts : j.at("opens")) {
    Mask m = 0;
    for (const auto& v : pts) {
      u64 x = v.get<u64>();
      if (x >= t.n) throw std::invalid_argument("topology_from_json: point out of range");
      m |= Mask(1) << x;
    }
    t.opens.insert(m);
  }
  if (!t.valid()) throw std::invalid_argument("topology_from_json: family is not a topology");
  return t;
}

}  // namespace semitop
