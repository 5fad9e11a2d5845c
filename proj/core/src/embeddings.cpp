#include "semitop/embeddings.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace semitop {

RightCongruence RightCongruence::identity(u64 n) {
  RightCongruence r;
  r.n = n;
  for (u64 i = 0; i < n; ++i) r.class_of.push_back(i);
  return r;
}

RightCongruence RightCongruence::universal(u64 n) {
  RightCongruence r;
  r.n = n;
  r.class_of.assign(static_cast<std::size_t>(n), 0);
  return r;
}

RightCongruence RightCongruence::from_classes(u64 n, const std::vector<std::vector<u64>>& classes) {
  RightCongruence r;
  r.n = n;
  r.class_of.assign(static_cast<std::size_t>(n), ~u64{0});
  u64 id = 0;
  for (const auto& cls : classes) {
    if (cls.empty()) throw std::invalid_argument("partition has an empty class");
    for (u64 x : cls) {
      if (x >= n) throw std::invalid_argument("partition mentions element " + std::to_string(x) +
                                              " outside {0.." + std::to_string(n - 1) + "}");
      if (r.class_of[static_cast<std::size_t>(x)] != ~u64{0})
        throw std::invalid_argument("partition repeats element " + std::to_string(x));
      r.class_of[static_cast<std::size_t>(x)] = id;
    }
    ++id;
  }
  for (u64 x = 0; x < n; ++x)
    if (r.class_of[static_cast<std::size_t>(x)] == ~u64{0})
      throw std::invalid_argument("partition misses element " + std::to_string(x));
  r.normalize();
  return r;
}

void RightCongruence::normalize() {
  std::map<u64, u64> remap;
  for (u64& c : class_of) {
    auto [it, fresh] = remap.emplace(c, remap.size());
    c = it->second;
  }
}

u64 RightCongruence::class_count() const {
  u64 top = 0;
  for (u64 c : class_of) top = std::max(top, c + 1);
  return class_of.empty() ? 0 : top;
}

std::vector<std::vector<u64>> RightCongruence::classes() const {
  std::vector<std::vector<u64>> out(static_cast<std::size_t>(class_count()));
  for (u64 x = 0; x < n; ++x) out[static_cast<std::size_t>(class_of[static_cast<std::size_t>(x)])].push_back(x);
  return out;
}

std::string congruence_to_json(const RightCongruence& rho) {
  nlohmann::json j;
  j["classes"] = rho.classes();
  return j.dump();
}

RightCongruence congruence_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  auto classes = j.at("classes").get<std::vector<std::vector<u64>>>();
  u64 n = 0;
  for (const auto& cls : classes)
    for (u64 x : cls) n = std::max(n, x + 1);
  return RightCongruence::from_classes(n, classes);
}

namespace {

void require_partition_shape(const FiniteSemigroup& s, const RightCongruence& rho) {
  if (rho.n != s.n || rho.class_of.size() != static_cast<std::size_t>(s.n))
    throw std::invalid_argument("partition is over " + std::to_string(rho.n) +
                                " elements, semigroup has " + std::to_string(s.n));
  for (u64 c : rho.class_of)
    if (c >= rho.n) throw std::invalid_argument("partition class index out of range");
}

}  // namespace

CongruenceCheck is_right_congruence(const FiniteSemigroup& s, const RightCongruence& rho) {
  require_partition_shape(s, rho);
  auto cls = [&rho](u64 x) { return rho.class_of[static_cast<std::size_t>(x)]; };
  for (u64 a = 0; a < s.n; ++a)
    for (u64 b = a + 1; b < s.n; ++b) {
      if (cls(a) != cls(b)) continue;
      for (u64 c = 0; c < s.n; ++c)
        if (cls(s.mul(a, c)) != cls(s.mul(b, c)))
          return {false, CongruenceCounterexample{a, b, c}};
    }
  return {true, std::nullopt};
}

std::vector<RightCongruence> enumerate_right_congruences(const FiniteSemigroup& s) {
  if (s.n > 8)
    throw std::invalid_argument("right congruence enumeration is capped at order 8, got " +
                                std::to_string(s.n));
  std::vector<RightCongruence> out;
  RightCongruence cur;
  cur.n = s.n;
  cur.class_of.assign(static_cast<std::size_t>(s.n), 0);
  // restricted growth strings: class_of[0] = 0, each entry at most max+1
  auto rec = [&](auto&& self, u64 i, u64 top) -> void {
    if (i == s.n) {
      if (is_right_congruence(s, cur).ok) out.push_back(cur);
      return;
    }
    for (u64 c = 0; c <= top + 1 && c < s.n; ++c) {
      cur.class_of[static_cast<std::size_t>(i)] = c;
      self(self, i + 1, std::max(top, c));
    }
  };
  if (s.n == 0) return {};
  rec(rec, 1, 0);
  return out;
}

namespace {

void require_inverse_monoid(const FiniteSemigroup& s) {
  if (!s.identity_idx || !s.is_inverse())
    throw std::invalid_argument(
        "the construction needs an inverse monoid; run annotate() and check identity/inversion");
}

}  // namespace

VPCertificate is_vagner_preston(const FiniteSemigroup& s, const RightCongruence& rho) {
  require_inverse_monoid(s);
  require_partition_shape(s, rho);
  auto cls = [&rho](u64 x) { return rho.class_of[static_cast<std::size_t>(x)]; };
  u64 one = cls(*s.identity_idx);

  VPCertificate cert;
  cert.ok = true;
  for (u64 e = 0; e < s.n; ++e) {
    VPBranch br;
    br.s = e;
    br.branch_a = true;
    br.branch_b = true;
    for (u64 t = 0; t < s.n; ++t) {
      if (cls(t) == cls(e) && cls(s.mul(t, s.inverse[static_cast<std::size_t>(t)])) != one) {
        if (br.branch_a) br.a_violation = t;
        br.branch_a = false;
      }
      if (cls(s.mul(e, t)) != cls(e)) {
        if (br.branch_b) br.b_violation = t;
        br.branch_b = false;
      }
    }
    if (!br.branch_a && !br.branch_b && !cert.violating_s) {
      cert.ok = false;
      cert.violating_s = e;
    }
    cert.branches.push_back(br);
  }
  return cert;
}

namespace {

std::vector<u64> class_reps(const RightCongruence& rho) {
  std::vector<u64> rep(static_cast<std::size_t>(rho.class_count()), ~u64{0});
  for (u64 x = 0; x < rho.n; ++x) {
    u64 c = rho.class_of[static_cast<std::size_t>(x)];
    if (rep[static_cast<std::size_t>(c)] == ~u64{0}) rep[static_cast<std::size_t>(c)] = x;
  }
  return rep;
}

void push_check(std::vector<EmbedCheck>& checks, std::string name, bool ok,
                std::string detail = {}) {
  checks.push_back({std::move(name), ok, std::move(detail)});
}

}  // namespace

Luke1Embedding luke1_embed(const FiniteSemigroup& m, const std::vector<RightCongruence>& rhos) {
  for (const auto& rho : rhos) {
    auto chk = is_right_congruence(m, rho);
    if (!chk.ok) {
      const auto& w = *chk.counterexample;
      throw std::invalid_argument("not a right congruence: elements " + std::to_string(w.a) +
                                  "," + std::to_string(w.b) + " split under right factor " +
                                  std::to_string(w.c));
    }
  }

  Luke1Embedding out;
  out.s1 = m.monoid_completion();
  out.identity_adjoined = out.s1.n != m.n;
  for (RightCongruence rho : rhos) {
    if (out.identity_adjoined) {
      rho.n = out.s1.n;
      rho.class_of.push_back(rho.class_count());  // the new identity forms its own class
    }
    out.rhos.push_back(std::move(rho));
  }

  for (const auto& rho : out.rhos) {
    out.offset.push_back(out.points);
    out.points += rho.class_count();
    push_check(out.checks, "congruence on completion", is_right_congruence(out.s1, rho).ok);
  }

  for (u64 g = 0; g < out.s1.n; ++g) {
    FiniteTransformation t;
    t.degree = static_cast<std::size_t>(out.points);
    for (std::size_t i = 0; i < out.rhos.size(); ++i) {
      const auto& rho = out.rhos[i];
      for (u64 rep : class_reps(rho))
        t.images.push_back(out.offset[i] + rho.class_of[static_cast<std::size_t>(out.s1.mul(rep, g))]);
    }
    out.images.push_back(std::move(t));
  }

  out.homomorphism = true;
  for (u64 a = 0; a < out.s1.n && out.homomorphism; ++a)
    for (u64 b = 0; b < out.s1.n; ++b)
      if (!(compose(out.images[static_cast<std::size_t>(a)],
                    out.images[static_cast<std::size_t>(b)]) ==
            out.images[static_cast<std::size_t>(out.s1.mul(a, b))])) {
        out.homomorphism = false;
        push_check(out.checks, "homomorphism", false,
                   "pair (" + std::to_string(a) + "," + std::to_string(b) + ")");
        break;
      }
  if (out.homomorphism) push_check(out.checks, "homomorphism", true);

  out.injective = true;
  for (u64 a = 0; a < out.s1.n && out.injective; ++a)
    for (u64 b = a + 1; b < out.s1.n; ++b)
      if (out.images[static_cast<std::size_t>(a)] == out.images[static_cast<std::size_t>(b)]) {
        out.injective = false;
        push_check(out.checks, "injective", false,
                   "elements " + std::to_string(a) + " and " + std::to_string(b) +
                       " share an image");
        break;
      }
  if (out.injective) push_check(out.checks, "injective", true);
  return out;
}

FiniteTransformation natural_embed(const FinitePartialMap& f) {
  FiniteTransformation t;
  t.degree = f.degree + 1;
  u64 sentinel = f.degree;
  for (const auto& v : f.images) t.images.push_back(v ? *v : sentinel);
  t.images.push_back(sentinel);
  return t;
}

UnembedResult natural_unembed(const FiniteTransformation& g) {
  if (g.degree == 0) return {std::nullopt, "degree 0 has no sentinel point"};
  u64 sentinel = g.degree - 1;
  if (g.images.back() != sentinel)
    return {std::nullopt, "the sentinel point " + std::to_string(sentinel) +
                              " maps to " + std::to_string(g.images.back()) +
                              ", so the map is outside the embedded copy"};
  FinitePartialMap f;
  f.degree = g.degree - 1;
  for (std::size_t x = 0; x + 1 < g.images.size(); ++x) {
    u64 v = g.images[x];
    f.images.push_back(v == sentinel ? std::optional<u64>{} : std::optional<u64>{v});
  }
  return {std::move(f), {}};
}

VPEmbedding vp_embed(const FiniteSemigroup& s, const std::vector<RightCongruence>& rhos) {
  require_inverse_monoid(s);
  for (const auto& rho : rhos) {
    auto chk = is_right_congruence(s, rho);
    if (!chk.ok) throw std::invalid_argument("not a right congruence");
    auto cert = is_vagner_preston(s, rho);
    if (!cert.ok)
      throw std::invalid_argument("congruence is not Vagner-Preston: element " +
                                  std::to_string(*cert.violating_s) + " fits neither branch");
  }

  VPEmbedding out;
  out.rhos = rhos;
  for (const auto& rho : rhos) {
    out.offset.push_back(out.points);
    out.points += rho.class_count();
  }
  u64 one = *s.identity_idx;
  auto inv = [&s](u64 x) { return s.inverse[static_cast<std::size_t>(x)]; };

  bool well_defined = true;
  for (u64 f = 0; f < s.n; ++f) {
    FinitePartialBijection pb;
    pb.degree = static_cast<std::size_t>(out.points);
    for (std::size_t i = 0; i < rhos.size(); ++i) {
      const auto& rho = rhos[i];
      auto cls = [&rho](u64 x) { return rho.class_of[static_cast<std::size_t>(x)]; };
      for (u64 c = 0; c < rho.class_count(); ++c) {
        std::optional<u64> value;
        bool first = true;
        for (u64 a = 0; a < s.n; ++a) {
          if (cls(a) != c) continue;
          bool defined = cls(s.mul(a, inv(a))) == cls(one) &&
                         cls(s.mul(s.mul(a, f), inv(f))) == c;
          std::optional<u64> v =
              defined ? std::optional<u64>(out.offset[i] + cls(s.mul(a, f))) : std::nullopt;
          if (first) value = v, first = false;
          else if (value != v) well_defined = false;
        }
        if (value) pb.pairs.push_back({out.offset[i] + c, *value});
      }
    }
    pb.normalize();  // validates injectivity of the constructed partial map
    out.images.push_back(std::move(pb));
  }
  push_check(out.checks, "action well-defined on classes", well_defined);

  out.homomorphism = true;
  for (u64 a = 0; a < s.n && out.homomorphism; ++a)
    for (u64 b = 0; b < s.n; ++b)
      if (!(compose(out.images[static_cast<std::size_t>(a)],
                    out.images[static_cast<std::size_t>(b)]) ==
            out.images[static_cast<std::size_t>(s.mul(a, b))])) {
        out.homomorphism = false;
        break;
      }
  push_check(out.checks, "homomorphism", out.homomorphism);

  out.inversion_preserved = true;
  for (u64 a = 0; a < s.n; ++a)
    if (!(invert(out.images[static_cast<std::size_t>(a)]) ==
          out.images[static_cast<std::size_t>(inv(a))])) {
      out.inversion_preserved = false;
      break;
    }
  push_check(out.checks, "inversion preserved", out.inversion_preserved);

  out.separating = true;
  std::string sep_detail;
  for (u64 a = 0; a < s.n && out.separating; ++a)
    for (u64 b = a + 1; b < s.n; ++b) {
      bool split = false;
      for (const auto& rho : rhos) {
        auto cls = [&rho](u64 x) { return rho.class_of[static_cast<std::size_t>(x)]; };
        if (cls(a) != cls(b) || cls(inv(a)) != cls(inv(b))) {
          split = true;
          break;
        }
      }
      if (!split) {
        out.separating = false;
        sep_detail = "elements " + std::to_string(a) + " and " + std::to_string(b) +
                     " share all classes and inverse classes";
        break;
      }
    }
  push_check(out.checks, "classes separate points", out.separating, sep_detail);

  out.injective = true;
  for (u64 a = 0; a < s.n && out.injective; ++a)
    for (u64 b = a + 1; b < s.n; ++b)
      if (out.images[static_cast<std::size_t>(a)] == out.images[static_cast<std::size_t>(b)]) {
        out.injective = false;
        break;
      }
  push_check(out.checks, "injective", out.injective);
  return out;
}

namespace {

nlohmann::json checks_json(const std::vector<EmbedCheck>& checks) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json j;
    j["name"] = c.name;
    j["ok"] = c.ok;
    if (!c.detail.empty()) j["detail"] = c.detail;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace

std::string luke1_report_json(const Luke1Embedding& e) {
  nlohmann::json j;
  j["points"] = e.points;
  j["identity_adjoined"] = e.identity_adjoined;
  j["homomorphism"] = e.homomorphism;
  j["injective"] = e.injective;
  std::vector<std::vector<u64>> images;
  for (const auto& t : e.images) images.push_back(t.images);
  j["images"] = images;
  j["checks"] = checks_json(e.checks);
  return j.dump();
}

std::string vp_report_json(const VPEmbedding& e) {
  nlohmann::json j;
  j["points"] = e.points;
  j["homomorphism"] = e.homomorphism;
  j["injective"] = e.injective;
  j["inversion_preserved"] = e.inversion_preserved;
  j["separating"] = e.separating;
  nlohmann::json images = nlohmann::json::array();
  for (const auto& pb : e.images) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& [a, b] : pb.pairs) pairs.push_back({a, b});
    images.push_back(std::move(pairs));
  }
  j["images"] = images;
  j["checks"] = checks_json(e.checks);
  return j.dump();
}

ActionCongruences vp_congruences_from_action(const std::vector<FinitePartialBijection>& elems) {
  if (elems.empty()) throw std::invalid_argument("empty element list");
  std::size_t deg = elems[0].degree;
  for (const auto& e : elems)
    if (e.degree != deg) throw std::invalid_argument("elements have mixed degrees");
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j)
      if (elems[i] == elems[j]) throw std::invalid_argument("duplicate elements in the list");

  auto index_of = [&elems](const FinitePartialBijection& x) -> u64 {
    for (std::size_t k = 0; k < elems.size(); ++k)
      if (elems[k] == x) return static_cast<u64>(k);
    throw std::invalid_argument("element list is not closed under composition");
  };

  ActionCongruences out;
  out.s.n = static_cast<u64>(elems.size());
  for (const auto& a : elems)
    for (const auto& b : elems) out.s.table.push_back(index_of(compose(a, b)));
  out.s.annotate();
  require_inverse_monoid(out.s);

  for (u64 i = 0; i < deg; ++i) {
    // key: the value at i, or a sentinel for "undefined at i"
    std::map<u64, u64> key_class;
    RightCongruence rho;
    rho.n = out.s.n;
    for (const auto& e : elems) {
      auto v = e.apply(i);
      u64 key = v ? *v : ~u64{0};
      auto [it, fresh] = key_class.emplace(key, key_class.size());
      rho.class_of.push_back(it->second);
    }
    rho.normalize();
    out.certificates.push_back(is_vagner_preston(out.s, rho));
    out.rhos.push_back(std::move(rho));
  }
  return out;
}

}  // namespace semitop
