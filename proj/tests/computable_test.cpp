#include <doctest.h>

#include "semitop/computable.hpp"

using namespace semitop;

TEST_CASE("rule registry basics") {
  ComputableElement id = make_rule("identity");
  CHECK(id.family == Family::Permutation);
  CHECK(id.eval(5) == std::optional<u64>(5));
  CHECK(id.inv_eval(7) == std::optional<u64>(7));
  CHECK(cardinal_data(id, 16).coimage == Cardinal::fin(0));

  ComputableElement sh = make_rule("shift", {3});
  CHECK(sh.family == Family::Injection);
  CHECK(sh.eval(0) == std::optional<u64>(3));
  CHECK(cardinal_data(sh, 16).coimage == Cardinal::fin(3));
  CHECK(image_member(sh, 2, 16).is_false());
  CHECK(image_member(sh, 3, 16).is_true());

  ComputableElement dbl = make_rule("double");
  CHECK(cardinal_data(dbl, 16).coimage == Cardinal::aleph0());

  ComputableElement fd = make_rule("floordiv", {3});
  CHECK(fd.family == Family::Surjection);
  auto fib = cardinal_data(fd, 16).fiber(5);
  CHECK(fib.first == Cardinal::fin(3));

  CHECK_THROWS_AS((void)make_rule("nonsense"), std::invalid_argument);
}

TEST_CASE("composition is left to right and tails compose") {
  ComputableElement a = make_rule("shift", {2});
  ComputableElement b = make_rule("shift", {3});
  ComputableElement ab = compose(a, b);
  CHECK(ab.eval(0) == std::optional<u64>(5));
  REQUIRE(ab.support.has_value());
  CHECK(cardinal_data(ab, 16).coimage == Cardinal::fin(5));

  ComputableElement id = make_rule("identity");
  ComputableElement f = parse_computable("[2,0,1]");
  CHECK(equal_on_window(compose(id, f), f, 32));
  CHECK(equal_on_window(compose(f, id), f, 32));
}

TEST_CASE("co-image additivity for composed injections") {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    ComputableElement f = sample_element(Family::Injection, rng, 6);
    ComputableElement g = sample_element(Family::Injection, rng, 6);
    ComputableElement fg = compose(f, g);
    auto cf = cardinal_data(f, 64).coimage;
    auto cg = cardinal_data(g, 64).coimage;
    auto cfg = cardinal_data(fg, 64).coimage;
    REQUIRE(cf.has_value());
    REQUIRE(cg.has_value());
    REQUIRE(cfg.has_value());
    CHECK(*cfg == *cf + *cg);
  }
}

TEST_CASE("fiber summation for composed surjections") {
  Rng rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    ComputableElement f = sample_element(Family::Surjection, rng, 5);
    ComputableElement g = sample_element(Family::Surjection, rng, 5);
    ComputableElement fg = compose(f, g);
    REQUIRE(fg.support.has_value());
    auto df = cardinal_data(f, 64);
    auto dg = cardinal_data(g, 64);
    auto dfg = cardinal_data(fg, 64);
    for (u64 n = 0; n < 8; ++n) {
      auto whole = dfg.fiber(n).first;
      REQUIRE(whole.has_value());
      Cardinal sum = Cardinal::fin(0);
      for (u64 i : g.support->fiber_elements(n)) {
        auto part = df.fiber(i).first;
        REQUIRE(part.has_value());
        sum = sum + *part;
      }
      CHECK(*whole == sum);
    }
  }
}

TEST_CASE("inversion of computable elements") {
  ComputableElement pb = parse_computable("{(0,2),(1,0)}");
  CHECK(pb.family == Family::PartialBijection);
  ComputableElement inv = invert(pb);
  CHECK(inv.eval(2) == std::optional<u64>(0));
  CHECK(inv.eval(0) == std::optional<u64>(1));
  CHECK(inv.eval(1) == std::nullopt);

  Rng rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    ComputableElement f = sample_element(Family::Permutation, rng, 6);
    ComputableElement g = sample_element(Family::Permutation, rng, 6);
    CHECK(equal_on_window(invert(compose(f, g)), compose(invert(g), invert(f)), 48));
  }
}

TEST_CASE("element DSL parses every surface form") {
  CHECK(parse_computable("[2,-,1]").family == Family::PartialMap);
  CHECK(parse_computable("[1,0]").family == Family::PartialMap ||
        parse_computable("[1,0]").family == Family::PartialBijection ||
        parse_computable("[1,0]").family == Family::Permutation);
  CHECK(parse_computable("{(0,1)}").family == Family::PartialBijection);
  CHECK(parse_computable("{(0,1)}").rel_support.has_value());
  CHECK(parse_computable("{(0,0),(0,1)}").family == Family::Relation);

  ComputableElement t = parse_computable("rule:table([0];shift(2))");
  CHECK(t.eval(0) == std::optional<u64>(0));
  CHECK(t.eval(1) == std::optional<u64>(3));
  CHECK(t.eval(5) == std::optional<u64>(7));

  CHECK_THROWS_AS((void)parse_computable("nonsense"), std::invalid_argument);
}

TEST_CASE("membership queries degrade to unknown without data") {
  ComputableElement opaque;
  opaque.family = Family::Injection;
  opaque.eval = [](u64 x) -> std::optional<u64> { return x + 1; };
  Verdict v = image_member(opaque, 0, 32);
  CHECK(v.is_unknown());
  CHECK(!v.reason.empty());

  CardinalData cd = cardinal_data(opaque, 32);
  CHECK(!cd.coimage.has_value());
  CHECK(!cd.coimage_reason.empty());
  auto fib = cd.fiber(3);
  CHECK(!fib.first.has_value());
  CHECK(fib.second.find("probed window") != std::string::npos);

  ComputableElement pm = parse_computable("[2,-,1]");
  CHECK(domain_member(pm, 0).is_true());
  CHECK(domain_member(pm, 1).is_false());
  CHECK(domain_member(pm, 5).is_false());
}

TEST_CASE("sampled elements honor their family on the window") {
  Rng rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    ComputableElement t = sample_element(Family::Transformation, rng, 8);
    for (u64 x = 0; x < 32; ++x) CHECK(t.eval(x).has_value());

    ComputableElement inj = sample_element(Family::Injection, rng, 8);
    REQUIRE(inj.support.has_value());
    CHECK(inj.support->injective());
    CHECK(inj.support->total());

    ComputableElement sur = sample_element(Family::Surjection, rng, 8);
    REQUIRE(sur.support.has_value());
    for (u64 y = 0; y < 16; ++y) CHECK(sur.support->in_image(y));

    ComputableElement perm = sample_element(Family::Permutation, rng, 8);
    CHECK(cardinal_data(perm, 32).coimage == Cardinal::fin(0));

    ComputableElement rel = sample_element(Family::Relation, rng, 8);
    CHECK(rel.rel_support.has_value());
  }
}
