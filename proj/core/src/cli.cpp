#include "semitop/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "semitop/cantor.hpp"
#include "semitop/clones.hpp"
#include "semitop/computable.hpp"
#include "semitop/elements.hpp"
#include "semitop/embeddings.hpp"
#include "semitop/fintop.hpp"
#include "semitop/propx.hpp"
#include "semitop/subbasis.hpp"
#include "semitop/zariski.hpp"

namespace semitop {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string join(const std::vector<std::string>& toks) {
  std::string out;
  for (const auto& t : toks) {
    if (!out.empty()) out += ' ';
    bool ws = t.empty() || t.find_first_of(" \t") != std::string::npos;
    out += ws ? "'" + t + "'" : t;
  }
  return out;
}

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto next = s.find(sep, pos);
    parts.push_back(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return parts;
}

Verdict conjunction(const std::vector<Verdict>& vs) {
  for (const auto& v : vs)
    if (v.is_false()) return Verdict::no();
  for (const auto& v : vs)
    if (v.is_unknown()) return Verdict::unknown(v.reason);
  return Verdict::yes();
}

void add_verdict(Report& rep, const std::string& name, const Verdict& v,
                 const std::string& yes, const std::string& no) {
  if (v.is_unknown())
    rep.add_unknown(name, v.reason);
  else
    rep.add(name, true, v.is_true() ? yes : no);
}

Family witness_family(WitnessMonoid m) {
  switch (m) {
    case WitnessMonoid::XX: return Family::Transformation;
    case WitnessMonoid::PX: return Family::PartialMap;
    case WitnessMonoid::IX: return Family::PartialBijection;
    case WitnessMonoid::InjX: return Family::Injection;
    case WitnessMonoid::BX: return Family::Relation;
    case WitnessMonoid::FullClone: return Family::Transformation;
    case WitnessMonoid::Sym: return Family::Permutation;
  }
  throw std::logic_error("unreachable monoid");
}

FiniteSemigroup load_cayley(const std::string& path) {
  FiniteSemigroup s = semigroup_from_json(read_file(path));
  if (!s.associative()) throw std::invalid_argument("'" + path + "' is not associative");
  s.annotate();
  return s;
}

// ---- subcommand runners ------------------------------------------------

Report run_zariski(const std::string& cayley, const std::string& words, const std::string& mode,
                   u64 seed) {
  FiniteSemigroup s = load_cayley(cayley);
  ZariskiMode zmode = mode == "inverse" ? ZariskiMode::Inverse : ZariskiMode::Semigroup;
  WordMode wmode = words == "with-constants" ? WordMode::WithConstants : WordMode::Strict;
  if (zmode == ZariskiMode::Inverse && !s.is_inverse())
    throw std::invalid_argument("inverse mode needs an inverse semigroup");

  Report rep;
  rep.command = "zariski --cayley " + cayley + " --words " + words + " --mode " + mode;
  rep.provenance.inputs = {cayley};
  rep.provenance.seed = seed;

  auto wf = word_functions(s, zmode, wmode);
  std::vector<std::vector<u64>> induced;
  for (const auto& w : wf) induced.push_back(w.induced);
  std::sort(induced.begin(), induced.end());
  auto brute = word_functions_bruteforce(s, zmode, wmode);
  rep.add("word-closure-matches-bruteforce", induced == brute,
          std::to_string(induced.size()) + " closure maps vs " + std::to_string(brute.size()) +
              " brute-force maps");

  bool witnesses_ok = true;
  for (const auto& w : wf) witnesses_ok = witnesses_ok && word_witness_valid(s, w);
  rep.add("word-witnesses-replay", witnesses_ok, std::to_string(wf.size()) + " words checked");

  FiniteTopology topo = zariski_topology(s, zmode, wmode);
  rep.add("topology-valid", topo.valid(), std::to_string(topo.opens.size()) + " open sets");

  auto chk = check_semigroup_topology(s, topo);
  rep.add("left-translations-continuous", chk.left_semitopological,
          chk.left_semitopological ? "all maps x -> ax continuous" : "counterexample found");
  rep.add("right-translations-continuous", chk.right_semitopological,
          chk.right_semitopological ? "all maps x -> xa continuous" : "counterexample found");
  if (s.is_inverse())
    rep.add("inversion-continuous", inversion_continuous(s, topo), "x -> x^-1 against every open");

  auto sep = separation(topo);
  rep.add("separation", true,
          std::string("t0=") + (sep.t0 ? "yes" : "no") + " t1=" + (sep.t1 ? "yes" : "no") +
              " t2=" + (sep.t2 ? "yes" : "no"));
  return rep;
}

Report run_propx(const std::string& monoid, const std::string& element, u64 arity, u64 window,
                 u64 samples, u64 seed) {
  WitnessMonoid m = parse_witness_monoid(monoid);
  ComputableElement e;
  if (element.empty()) {
    Rng rng(seed * 0x9e3779b97f4a7c15ULL + 1);
    e = sample_element(witness_family(m), rng, 8);
  } else {
    e = parse_computable(element);
  }
  if (arity == 0) arity = m == WitnessMonoid::FullClone ? 2 : 1;

  Report rep;
  rep.command = "propx verify --monoid " + monoid +
                (element.empty() ? "" : " --element " + element) + " --window " +
                std::to_string(window) + " --samples " + std::to_string(samples) + " --seed " +
                std::to_string(seed);
  rep.provenance.seed = seed;
  if (!element.empty()) rep.provenance.inputs = {element};

  nlohmann::json j = nlohmann::json::parse(propx_report_json(m, e, window, samples, seed, arity));
  rep.add("factorization-identity", j["identity"]["ok"].get<bool>(),
          std::to_string(j["identity"]["points"].get<u64>()) + " points" +
              (j["identity"].contains("detail")
                   ? "; " + j["identity"]["detail"].get<std::string>()
                   : ""));
  u64 i = 0;
  for (const auto& row : j["transfers"]) {
    rep.add("transfer-" + std::to_string(i++), row["ok"].get<bool>(),
            "pins=" + std::to_string(row["pins"].get<u64>()) +
                " constraints=" + std::to_string(row["constraints"].get<u64>()) +
                " points=" + std::to_string(row["points"].get<u64>()) +
                (row.contains("detail") ? "; " + row["detail"].get<std::string>() : ""));
  }
  return rep;
}

Report run_partition(const std::string& left, const std::string& right) {
  Bipartition a = parse_bipartition(left);
  Bipartition b = parse_bipartition(right);
  BipartitionProduct prod = bipartition_product(a, b);

  Report rep;
  rep.command = "partition mul " + left + " " + right;
  rep.add("product", true, print_bipartition(prod.product));
  bool certs = true;
  for (const auto& c : prod.certificates) certs = certs && certificate_valid(a, b, c);
  rep.add("certificates-valid", certs,
          std::to_string(prod.certificates.size()) + " joined pairs re-checked");
  return rep;
}

Report run_fintop(u64 n) {
  u64 cap = enumeration_cap(4);
  Report rep;
  rep.command = "fintop count --n " + std::to_string(n);
  auto by_filter = enumerate_topologies(n, cap);
  auto by_closure = enumerate_topologies_by_closure(n, cap);
  rep.add("routes-agree", by_filter == by_closure,
          std::to_string(by_filter.size()) + " topologies by filtering, " +
              std::to_string(by_closure.size()) + " by subbasis closure");
  static const u64 known[] = {1, 1, 4, 29, 355};
  if (n < 5)
    rep.add("known-count", by_filter.size() == known[n],
            "expected " + std::to_string(known[n]) + ", got " + std::to_string(by_filter.size()));
  return rep;
}

Report run_member(const std::string& element, const std::string& setspec,
                  const std::string& ambient, u64 window) {
  std::optional<Ambient> amb;
  if (!ambient.empty()) amb = parse_ambient(ambient);
  NamedSet ns = parse_named_set(setspec, amb);
  ComputableElement e = parse_computable(element);

  Report rep;
  rep.command = "member --element " + element + " --set " + setspec +
                (ambient.empty() ? "" : " --ambient " + ambient) + " --window " +
                std::to_string(window);
  rep.provenance.inputs = {element, setspec};
  add_verdict(rep, ns.str(), member(e, ns, window), "member", "not a member");
  return rep;
}

Report run_metric(const std::string& id, const std::string& fdsl, const std::string& gdsl) {
  MetricId mid = parse_metric_id(id);
  ComputableElement f = parse_computable(fdsl);
  ComputableElement g = parse_computable(gdsl);

  Report rep;
  rep.command = "metric --id " + id + " --f " + fdsl + " --g " + gdsl;
  rep.provenance.inputs = {fdsl, gdsl};
  Rational d = metric(mid, f, g);
  rep.add("value", true, d.str());
  rep.add("symmetric", metric(mid, g, f) == d, "d(g,f) recomputed");
  rep.add("self-distance-zero", metric(mid, f, f) == Rational(0, 1), "d(f,f)");
  return rep;
}

Report run_normalize(const std::string& sets, const std::string& element, u64 window) {
  std::vector<NamedSet> parsed;
  for (const auto& part : split_list(sets, ';'))
    if (!part.empty()) parsed.push_back(parse_named_set(part, Ambient::IX));
  BasicRSet r = normalize_I4(parsed);

  Report rep;
  rep.command = "normalize --sets " + sets + (element.empty() ? "" : " --element " + element) +
                " --window " + std::to_string(window);
  rep.provenance.inputs = {sets};
  rep.add("normal-form", true, r.str());
  if (!element.empty()) {
    ComputableElement e = parse_computable(element);
    std::vector<Verdict> each;
    for (const auto& ns : parsed) each.push_back(member(e, ns, window));
    Verdict direct = conjunction(each);
    Verdict via = rset_member(e, r, window);
    if (direct.is_unknown() || via.is_unknown())
      rep.add_unknown("membership-agrees",
                      direct.is_unknown() ? direct.reason : via.reason);
    else
      rep.add("membership-agrees", direct.is_true() == via.is_true(),
              std::string("conjunction=") + (direct.is_true() ? "in" : "out") +
                  " normal-form=" + (via.is_true() ? "in" : "out"));
  }
  return rep;
}

Report run_ball(const std::string& element, u64 m, u64 window) {
  ComputableElement e = parse_computable(element);
  BasicRSet r = ball_to_basic(e, m);

  Report rep;
  rep.command = "ball --element " + element + " --m " + std::to_string(m);
  rep.provenance.inputs = {element};
  rep.add("basic-form", true, r.str());
  Verdict inside = rset_member(e, r, window);
  if (inside.is_unknown())
    rep.add_unknown("center-inside", inside.reason);
  else
    rep.add("center-inside", inside.is_true(), "center against its own ball constraints");
  return rep;
}

Report run_witness(const std::string& case_id, const WitnessParams& p) {
  SeparationWitness w = separation_witness(case_id, p);
  Report rep;
  rep.command = "witness --case " + case_id + " --x " + std::to_string(p.x) + " --m " +
                std::to_string(p.m) + " --bound " + std::to_string(p.bound) + " --c " +
                std::to_string(p.c);
  for (const auto& probe : w.probes)
    rep.add(probe.neighborhood, probe.in_neighborhood && probe.outside_target,
            probe.in_neighborhood
                ? (probe.outside_target ? "witness inside the neighborhood, outside the target"
                                        : "witness failed to leave the target")
                : "witness missed the neighborhood");
  rep.add("claim", w.ok(), w.claim);
  return rep;
}

Report run_embed_luke1(const std::string& cayley, const std::string& rho) {
  FiniteSemigroup m = load_cayley(cayley);
  std::vector<RightCongruence> rhos;
  if (rho == "all")
    rhos = enumerate_right_congruences(m);
  else
    rhos = {RightCongruence::identity(m.n)};
  Luke1Embedding e = luke1_embed(m, rhos);

  Report rep;
  rep.command = "embed luke1 --cayley " + cayley + " --rho " + rho;
  rep.provenance.inputs = {cayley};
  rep.add("homomorphism", e.homomorphism,
          std::to_string(e.images.size()) + " images on " + std::to_string(e.points) + " points");
  rep.add("injective", e.injective, std::to_string(e.rhos.size()) + " congruences used");
  for (const auto& c : e.checks) rep.add(c.name, c.ok, c.detail);
  return rep;
}

Report run_embed_vp(const std::string& cayley) {
  FiniteSemigroup s = load_cayley(cayley);
  std::vector<RightCongruence> vps;
  for (const auto& rho : enumerate_right_congruences(s))
    if (is_vagner_preston(s, rho).ok) vps.push_back(rho);
  VPEmbedding e = vp_embed(s, vps);

  Report rep;
  rep.command = "embed vp --cayley " + cayley;
  rep.provenance.inputs = {cayley};
  rep.add("homomorphism", e.homomorphism,
          std::to_string(e.images.size()) + " images on " + std::to_string(e.points) + " points");
  rep.add("injective", e.injective, std::to_string(e.rhos.size()) + " congruences used");
  rep.add("inversion-preserved", e.inversion_preserved, "images of x and x^-1 are mutual inverses");
  rep.add("separating", e.separating, "classes split every pair");
  for (const auto& c : e.checks) rep.add(c.name, c.ok, c.detail);
  return rep;
}

Report run_embed_natural(const std::string& map) {
  FinitePartialMap f = parse_partial_map(map);
  FiniteTransformation g = natural_embed(f);
  UnembedResult back = natural_unembed(g);

  Report rep;
  rep.command = "embed natural --map " + map;
  rep.provenance.inputs = {map};
  rep.add("embedding", true, print_transformation(g));
  rep.add("round-trip", back.map.has_value() && *back.map == f,
          back.reason.empty() ? "recovered the partial map" : back.reason);
  return rep;
}

Report run_cantor(const std::string& map, u64 depth) {
  Report rep;
  rep.command = "cantor --map " + map + " --depth " + std::to_string(depth);
  rep.provenance.inputs = {map};
  nlohmann::json j = nlohmann::json::parse(cantor_report_json(map, depth));
  rep.add("refinement", j["refinement"]["ok"].get<bool>(),
          std::to_string(j["refinement"]["points"].get<u64>()) + " prefixes" +
              (j["refinement"].contains("detail")
                   ? "; " + j["refinement"]["detail"].get<std::string>()
                   : ""));
  rep.add("factorization-identity", j["identity"]["ok"].get<bool>(),
          std::to_string(j["identity"]["points"].get<u64>()) + " points" +
              (j["identity"].contains("detail") ? "; " + j["identity"]["detail"].get<std::string>()
                                                : ""));
  rep.add("distance-to-identity", true,
          j["dinf_to_id"]["lower"].get<std::string>() + " .. " +
              j["dinf_to_id"]["upper"].get<std::string>());
  return rep;
}

Report run_clone(const std::vector<std::string>& inner, const std::string& outer, u64 bound) {
  Report rep;
  rep.command = "clone compose";
  for (const auto& f : inner) rep.command += " --inner " + f;
  rep.command += " --outer " + outer + " --bound " + std::to_string(bound);
  rep.provenance.inputs = inner;
  rep.provenance.inputs.push_back(outer);

  nlohmann::json j = nlohmann::json::parse(clone_report_json(inner, outer, bound));
  std::string iset = j["iset"].dump();
  std::string detected = j["detected_iset"].dump();
  rep.add("kernel-set-matches-oracle", j["iset_ok"].get<bool>(),
          "declared " + iset + ", detected " + detected);
  rep.add("declared-coimage", true, j["coimage"].get<std::string>());
  rep.add("window-coimage", true,
          "window=" + std::to_string(j["window_coimage"]["window"].get<u64>()) +
              " missing=" + std::to_string(j["window_coimage"]["missing"].get<u64>()));
  return rep;
}

Report run_schema() {
  Report rep;
  rep.command = "schema";
  std::string why;
  Report sample;
  sample.command = "sample";
  sample.add("example", true, "");
  rep.add("self-validates", validate_report_json(sample.to_json(), &why),
          why.empty() ? "empty report conforms" : why);
  return rep;
}

}  // namespace

u64 enumeration_cap(u64 fallback) {
  const char* env = std::getenv("SEMITOP_CAP");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) return fallback;
  return static_cast<u64>(v);
}

Report run_batch(const std::string& manifest_text, const std::string& manifest_name) {
  Report rep;
  rep.command = "batch " + manifest_name;
  rep.provenance.inputs = {manifest_name};
  nlohmann::json j = nlohmann::json::parse(manifest_text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("entries") || !j["entries"].is_array())
    throw std::invalid_argument("manifest must be a JSON object with an 'entries' array");

  u64 i = 0;
  for (const auto& entry : j["entries"]) {
    std::string name = "entry-" + std::to_string(i++);
    try {
      if (!entry.is_array()) throw std::invalid_argument("entry is not an array of tokens");
      std::vector<std::string> toks;
      for (const auto& t : entry) {
        if (!t.is_string()) throw std::invalid_argument("entry token is not a string");
        toks.push_back(t.get<std::string>());
      }
      DispatchResult r = dispatch(toks);
      if (r.code == 2)
        rep.add(name + ": " + join(toks), false, "usage error: " + r.error);
      else
        rep.add(name + ": " + join(toks), r.code == 0,
                "verdict: " + outcome_str(r.report.outcome()));
    } catch (const std::exception& e) {
      rep.add(name, false, e.what());
    }
  }
  return rep;
}

DispatchResult dispatch(const std::vector<std::string>& args) {
  CLI::App app{"verification toolkit for monoid topologies"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string format = "text";
  std::function<Report()> runner;
  std::optional<std::string> raw_output;

  auto add_format = [&format](CLI::App* sub) {
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
  };

  // zariski
  {
    auto* sub = app.add_subcommand("zariski", "Zariski topology of a finite semigroup");
    auto cayley = std::make_shared<std::string>();
    auto words = std::make_shared<std::string>("strict");
    auto mode = std::make_shared<std::string>("semigroup");
    auto seed = std::make_shared<u64>(0);
    sub->add_option("--cayley", *cayley, "Cayley table JSON file")->required();
    sub->add_option("--words", *words)->check(CLI::IsMember({"strict", "with-constants"}));
    sub->add_option("--mode", *mode)->check(CLI::IsMember({"semigroup", "inverse"}));
    sub->add_option("--seed", *seed);
    add_format(sub);
    sub->callback([&runner, cayley, words, mode, seed] {
      runner = [=] { return run_zariski(*cayley, *words, *mode, *seed); };
    });
  }

  // propx verify
  {
    auto* propx = app.add_subcommand("propx", "factorization witnesses");
    propx->require_subcommand(1);
    auto* sub = propx->add_subcommand("verify", "verify witness identities and transfers");
    auto monoid = std::make_shared<std::string>();
    auto element = std::make_shared<std::string>();
    auto arity = std::make_shared<u64>(0);
    auto window = std::make_shared<u64>(64);
    auto samples = std::make_shared<u64>(10);
    auto seed = std::make_shared<u64>(0);
    sub->add_option("--monoid", *monoid, "XX, PX, IX, InjX, BX or FullClone")->required();
    sub->add_option("--element", *element, "element DSL; seeded sample when absent");
    sub->add_option("--arity", *arity, "operation arity (FullClone)");
    sub->add_option("--window", *window);
    sub->add_option("--samples", *samples);
    sub->add_option("--seed", *seed);
    add_format(sub);
    sub->callback([&runner, monoid, element, arity, window, samples, seed] {
      runner = [=] { return run_propx(*monoid, *element, *arity, *window, *samples, *seed); };
    });
  }

  // partition mul
  {
    auto* part = app.add_subcommand("partition", "bipartition arithmetic");
    part->require_subcommand(1);
    auto* sub = part->add_subcommand("mul", "multiply two bipartitions");
    auto left = std::make_shared<std::string>();
    auto right = std::make_shared<std::string>();
    sub->add_option("left", *left, "left factor")->required();
    sub->add_option("right", *right, "right factor")->required();
    add_format(sub);
    sub->callback([&runner, left, right] {
      runner = [=] { return run_partition(*left, *right); };
    });
  }

  // fintop count
  {
    auto* fin = app.add_subcommand("fintop", "finite topologies");
    fin->require_subcommand(1);
    auto* sub = fin->add_subcommand("count", "enumerate topologies two ways");
    auto n = std::make_shared<u64>(2);
    sub->add_option("--n", *n, "points")->required();
    add_format(sub);
    sub->callback([&runner, n] {
      runner = [=] { return run_fintop(*n); };
    });
  }

  // member
  {
    auto* sub = app.add_subcommand("member", "membership in a named subbasic set");
    auto element = std::make_shared<std::string>();
    auto setspec = std::make_shared<std::string>();
    auto ambient = std::make_shared<std::string>();
    auto window = std::make_shared<u64>(64);
    sub->add_option("--element", *element)->required();
    sub->add_option("--set", *setspec)->required();
    sub->add_option("--ambient", *ambient);
    sub->add_option("--window", *window);
    add_format(sub);
    sub->callback([&runner, element, setspec, ambient, window] {
      runner = [=] { return run_member(*element, *setspec, *ambient, *window); };
    });
  }

  // metric
  {
    auto* sub = app.add_subcommand("metric", "distance between two elements");
    auto id = std::make_shared<std::string>();
    auto f = std::make_shared<std::string>();
    auto g = std::make_shared<std::string>();
    sub->add_option("--id", *id, "d_I1, d1, d2, d4 or d_inj")->required();
    sub->add_option("--f", *f)->required();
    sub->add_option("--g", *g)->required();
    add_format(sub);
    sub->callback([&runner, id, f, g] {
      runner = [=] { return run_metric(*id, *f, *g); };
    });
  }

  // normalize
  {
    auto* sub = app.add_subcommand("normalize", "intersect subbasic sets into a basic set");
    auto sets = std::make_shared<std::string>();
    auto element = std::make_shared<std::string>();
    auto window = std::make_shared<u64>(64);
    sub->add_option("--sets", *sets, "semicolon-separated named sets")->required();
    sub->add_option("--element", *element, "cross-check membership with this element");
    sub->add_option("--window", *window);
    add_format(sub);
    sub->callback([&runner, sets, element, window] {
      runner = [=] { return run_normalize(*sets, *element, *window); };
    });
  }

  // ball
  {
    auto* sub = app.add_subcommand("ball", "metric ball as a basic set");
    auto element = std::make_shared<std::string>();
    auto m = std::make_shared<u64>(4);
    auto window = std::make_shared<u64>(64);
    sub->add_option("--element", *element)->required();
    sub->add_option("--m", *m, "radius parameter: ball of radius 1/(m+1)")->required();
    sub->add_option("--window", *window);
    add_format(sub);
    sub->callback([&runner, element, m, window] {
      runner = [=] { return run_ball(*element, *m, *window); };
    });
  }

  // witness
  {
    auto* sub = app.add_subcommand("witness", "separation witnesses between topologies");
    auto case_id = std::make_shared<std::string>();
    auto p = std::make_shared<WitnessParams>();
    sub->add_option("--case", *case_id)->required();
    sub->add_option("--x", p->x);
    sub->add_option("--m", p->m);
    sub->add_option("--bound", p->bound);
    sub->add_option("--c", p->c);
    add_format(sub);
    sub->callback([&runner, case_id, p] {
      runner = [=] { return run_witness(*case_id, *p); };
    });
  }

  // embed
  {
    auto* embed = app.add_subcommand("embed", "embeddings and congruence actions");
    embed->require_subcommand(1);
    auto* l1 = embed->add_subcommand("luke1", "monoid action on congruence classes");
    auto cayley1 = std::make_shared<std::string>();
    auto rho = std::make_shared<std::string>("identity");
    l1->add_option("--cayley", *cayley1)->required();
    l1->add_option("--rho", *rho)->check(CLI::IsMember({"identity", "all"}));
    add_format(l1);
    l1->callback([&runner, cayley1, rho] {
      runner = [=] { return run_embed_luke1(*cayley1, *rho); };
    });

    auto* vp = embed->add_subcommand("vp", "partial-bijection action of an inverse monoid");
    auto cayley2 = std::make_shared<std::string>();
    vp->add_option("--cayley", *cayley2)->required();
    add_format(vp);
    vp->callback([&runner, cayley2] {
      runner = [=] { return run_embed_vp(*cayley2); };
    });

    auto* nat = embed->add_subcommand("natural", "partial map into the sentinel completion");
    auto map = std::make_shared<std::string>();
    nat->add_option("--map", *map)->required();
    add_format(nat);
    nat->callback([&runner, map] {
      runner = [=] { return run_embed_natural(*map); };
    });
  }

  // cantor
  {
    auto* sub = app.add_subcommand("cantor", "prefix-map witnesses on the Cantor space");
    auto map = std::make_shared<std::string>();
    auto depth = std::make_shared<u64>(12);
    sub->add_option("--map", *map, "prefix map DSL")->required();
    sub->add_option("--depth", *depth);
    add_format(sub);
    sub->callback([&runner, map, depth] {
      runner = [=] { return run_cantor(*map, *depth); };
    });
  }

  // clone compose
  {
    auto* clone = app.add_subcommand("clone", "operations with kernel metadata");
    clone->require_subcommand(1);
    auto* sub = clone->add_subcommand("compose", "compose and cross-check metadata");
    auto inner = std::make_shared<std::vector<std::string>>();
    auto outer = std::make_shared<std::string>();
    auto bound = std::make_shared<u64>(4);
    sub->add_option("--inner", *inner, "inner operation DSL (repeat per argument)")->required();
    sub->add_option("--outer", *outer, "outer operation DSL")->required();
    sub->add_option("--bound", *bound, "oracle grid bound");
    add_format(sub);
    sub->callback([&runner, inner, outer, bound] {
      runner = [=] { return run_clone(*inner, *outer, *bound); };
    });
  }

  // batch
  {
    auto* sub = app.add_subcommand("batch", "run a manifest of commands");
    auto manifest = std::make_shared<std::string>();
    sub->add_option("--manifest", *manifest, "JSON manifest file")->required();
    add_format(sub);
    sub->callback([&runner, manifest] {
      runner = [=] { return run_batch(read_file(*manifest), *manifest); };
    });
  }

  // schema
  {
    auto* sub = app.add_subcommand("schema", "print the report JSON schema");
    add_format(sub);
    sub->callback([&runner, &raw_output] {
      raw_output = report_schema_json();
      runner = [] { return run_schema(); };
    });
  }

  std::vector<const char*> cargv;
  cargv.push_back("semitop");
  for (const auto& t : args) cargv.push_back(t.c_str());

  DispatchResult out;
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp&) {
    out.code = 0;
    out.rendered = app.help();
    return out;
  } catch (const CLI::CallForAllHelp&) {
    out.code = 0;
    out.rendered = app.help("", CLI::AppFormatMode::All);
    return out;
  } catch (const CLI::CallForVersion&) {
    out.code = 0;
    out.rendered = kVersion;
    return out;
  } catch (const CLI::ParseError& e) {
    out.code = 2;
    out.error = e.what();
    return out;
  }
  if (!runner) {
    out.code = 2;
    out.error = "no command selected";
    return out;
  }

  try {
    out.report = runner();
  } catch (const std::invalid_argument& e) {
    out.code = 2;
    out.error = e.what();
    return out;
  } catch (const std::exception& e) {
    out.report.add("execution", false, e.what());
  }
  out.code = exit_code(out.report);
  out.rendered = raw_output ? *raw_output
                            : (format == "json" ? out.report.to_json() : out.report.to_text());
  return out;
}

int run_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  DispatchResult r = dispatch(args);
  if (r.code == 2) {
    std::cerr << "error: " << r.error << "\n";
    return 2;
  }
  std::cout << r.rendered;
  if (!r.rendered.empty() && r.rendered.back() != '\n') std::cout << "\n";
  return r.code;
}

}  // namespace semitop
