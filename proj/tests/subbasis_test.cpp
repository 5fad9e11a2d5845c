#include <doctest.h>

#include "semitop/subbasis.hpp"

using namespace semitop;

TEST_CASE("named set text forms round trip") {
  for (const char* text : {"U(0,1)", "W(2)", "Winv(3)", "V(0,1)", "F(inf)", "F(2)", "UF(3,0)",
                           "Sym", "Down(3)", "Up(-2)"}) {
    NamedSet s = parse_named_set(text, Ambient::IX);
    CHECK(parse_named_set(s.str(), s.ambient) == s);
  }
  NamedSet vyz = parse_named_set("VYZ({0,1},cof{2})");
  CHECK(vyz.variant == SetVariant::VYZ);
  CHECK(vyz.Y == FinCof::finite({0, 1}));
  CHECK(vyz.Z == FinCof::cofinite_excluding({2}));

  NamedSet bfm = parse_named_set("BFM(0,cof{1})");
  CHECK(bfm.cx == std::optional<i64>(0));
  CHECK(bfm.holes == std::vector<i64>{1});
  NamedSet bfm_id = parse_named_set("BFM(id,cof{})");
  CHECK(!bfm_id.cx.has_value());
}

TEST_CASE("membership of subbasic sets") {
  ComputableElement e = parse_computable("{(0,1)}");
  CHECK(member(e, set_U(Ambient::IX, 0, 1)).is_true());
  CHECK(member(e, set_U(Ambient::IX, 0, 2)).is_false());
  CHECK(member(e, set_W(Ambient::IX, 0)).is_false());
  CHECK(member(e, set_W(Ambient::IX, 2)).is_true());
  CHECK(member(e, set_Winv(Ambient::IX, 1)).is_false());
  CHECK(member(e, set_Winv(Ambient::IX, 3)).is_true());
  CHECK(member(e, set_V(0, 1)).is_false());
  CHECK(member(e, set_V(0, 2)).is_true());
  CHECK(member(e, set_V(5, 1)).is_true());

  ComputableElement rel = parse_computable("{(0,0),(0,1)}");
  CHECK(member(rel, set_VYZ(FinCof::finite({0}), FinCof::finite({0, 1, 2}))).is_true());
  CHECK(member(rel, set_VYZ(FinCof::finite({0}), FinCof::finite({0}))).is_false());

  CHECK(member(make_rule("shift", {2}), set_Fcard(Cardinal::fin(2))).is_true());
  CHECK(member(make_rule("shift", {2}), set_Fcard(Cardinal::fin(1))).is_false());
  CHECK(member(make_rule("double"), set_Fcard(Cardinal::aleph0())).is_true());

  CHECK(member(make_rule("floordiv", {3}), set_UFiber(Cardinal::fin(3), 0)).is_true());
  CHECK(member(make_rule("floordiv", {3}), set_UFiber(Cardinal::fin(2), 0)).is_false());

  CHECK(member(make_rule("identity"), set_GroupPart()).is_true());
  CHECK(member(make_rule("floordiv", {2}), set_GroupPart()).is_false());

  ComputableElement opaque;
  opaque.family = Family::Injection;
  opaque.eval = [](u64 x) -> std::optional<u64> { return x + 1; };
  Verdict v = member(opaque, set_Fcard(Cardinal::fin(1)));
  CHECK(v.is_unknown());
  CHECK(!v.reason.empty());
}

TEST_CASE("chain membership") {
  CHECK(chain_member(2, chain_down(3)));
  CHECK(!chain_member(3, chain_down(3)));
  CHECK(chain_member(0, chain_up(-2)));
  CHECK(chain_member(2, chain_bfm(0, {1})));
  CHECK(!chain_member(1, chain_bfm(0, {1})));
  CHECK(!chain_member(0, chain_bfm(0, {1})));
  CHECK(chain_member(-100, chain_bfm(std::nullopt, {})));
}

TEST_CASE("V decomposes through U and W on finitary elements") {
  Rng rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    ComputableElement e = sample_element(Family::PartialBijection, rng, 6);
    u64 x = rng.below(8), y = rng.below(8);
    bool in_v = member(e, set_V(x, y)).is_true();

    bool route_a = member(e, set_W(Ambient::IX, x)).is_true();
    bool route_b = member(e, set_Winv(Ambient::IX, y)).is_true();
    for (u64 z = 0; z < 16 && !route_a; ++z)
      if (z != y) route_a = member(e, set_U(Ambient::IX, x, z)).is_true();
    for (u64 z = 0; z < 16 && !route_b; ++z)
      if (z != x) route_b = member(e, set_U(Ambient::IX, z, y)).is_true();

    CHECK(in_v == route_a);
    CHECK(in_v == route_b);
  }
}

TEST_CASE("normalization of subbasic intersections") {
  auto u01 = set_U(Ambient::IX, 0, 1);
  BasicRSet r = normalize_I4({u01, set_W(Ambient::IX, 2), set_Winv(Ambient::IX, 3)});
  CHECK(!r.empty);
  CHECK(r.k == std::vector<std::pair<u64, u64>>{{0, 1}});
  CHECK(r.Y == std::vector<u64>{2});
  CHECK(r.Z == std::vector<u64>{3});
  CHECK(r.str() == "R({(0,1)},{2},{3})");

  CHECK(normalize_I4({u01, set_W(Ambient::IX, 0)}).empty);
  CHECK(normalize_I4({u01, set_U(Ambient::IX, 0, 2)}).empty);
  CHECK(normalize_I4({u01, set_U(Ambient::IX, 1, 1)}).empty);
  CHECK(normalize_I4({u01, set_Winv(Ambient::IX, 1)}).empty);
  CHECK(normalize_I4({u01, u01}).k == std::vector<std::pair<u64, u64>>{{0, 1}});
  CHECK_THROWS_AS((void)normalize_I4({set_V(0, 1)}), std::invalid_argument);
}

TEST_CASE("normalization agrees with direct membership") {
  Rng rng(67);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<NamedSet> sets;
    for (u64 i = rng.range(1, 4); i > 0; --i) {
      switch (rng.below(3)) {
        case 0: sets.push_back(set_U(Ambient::IX, rng.below(5), rng.below(5))); break;
        case 1: sets.push_back(set_W(Ambient::IX, rng.below(5))); break;
        default: sets.push_back(set_Winv(Ambient::IX, rng.below(5))); break;
      }
    }
    BasicRSet r = normalize_I4(sets);
    ComputableElement e = sample_element(Family::PartialBijection, rng, 5);
    bool direct = true;
    for (const NamedSet& s : sets) direct = direct && member(e, s).is_true();
    CHECK(rset_member(e, r).is_true() == direct);
  }
}

TEST_CASE("metric worked values") {
  ComputableElement f = parse_computable("{(0,0)}");
  ComputableElement none = parse_computable("[-]");
  CHECK(metric(MetricId::d4, f, f) == Rational(0, 1));
  CHECK(metric(MetricId::d_I1, none, f) == Rational(1, 2));
  CHECK(metric(MetricId::d1, none, f) == Rational(1, 1));
  CHECK(metric(MetricId::d2, none, f) == Rational(1, 1));
  CHECK(metric(MetricId::d4, none, f) == Rational(1, 1));

  ComputableElement a = parse_computable("[2,-,1]");
  ComputableElement b = parse_computable("[2,0,1]");
  CHECK(metric(MetricId::d1, a, b) == Rational(1, 2));
  CHECK(metric(MetricId::d4, a, b) == Rational(1, 1));

  CHECK(metric(MetricId::d_inj, make_rule("identity"), make_rule("shift", {1})) == Rational(1, 1));
}

TEST_CASE("metric axioms and the max law on random pairs") {
  Rng rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    ComputableElement f = sample_element(Family::PartialBijection, rng, 5);
    ComputableElement g = sample_element(Family::PartialBijection, rng, 5);
    ComputableElement h = sample_element(Family::PartialBijection, rng, 5);
    for (MetricId id : {MetricId::d_I1, MetricId::d1, MetricId::d2, MetricId::d4}) {
      Rational fg = metric(id, f, g), gf = metric(id, g, f);
      CHECK(fg == gf);
      CHECK(metric(id, f, f) == Rational(0, 1));
      Rational fh = metric(id, f, h), gh = metric(id, g, h);
      CHECK(fh <= fg + gh);
    }
    CHECK(metric(MetricId::d4, f, g) ==
          rat_max(metric(MetricId::d1, f, g), metric(MetricId::d2, f, g)));
  }
}

TEST_CASE("balls translate to basic sets") {
  ComputableElement f = parse_computable("{(0,0)}");
  BasicRSet b2 = ball_to_basic(f, 2);
  CHECK(b2.k == std::vector<std::pair<u64, u64>>{{0, 0}});
  CHECK(b2.Y == std::vector<u64>{1});
  CHECK(b2.Z == std::vector<u64>{1});

  BasicRSet b0 = ball_to_basic(f, 0);
  CHECK(!b0.empty);
  CHECK(b0.k.empty());
  CHECK(b0.Y.empty());
  CHECK(b0.Z.empty());

  Rng rng(73);
  for (int trial = 0; trial < 200; ++trial) {
    ComputableElement c = sample_element(Family::PartialBijection, rng, 5);
    ComputableElement g = sample_element(Family::PartialBijection, rng, 5);
    u64 m = rng.below(6);
    // The metric takes values 1/(n+1), so "agrees through the window [0,m)"
    // reads d4 <= 1/(m+1), equivalently d4 < 1/m.
    bool in_ball = metric(MetricId::d4, c, g) <= Rational(1, static_cast<i64>(m) + 1);
    CHECK(rset_member(g, ball_to_basic(c, m)).is_true() == in_ball);
  }
}

TEST_CASE("indexed subbases stay inside their ambient monoid") {
  for (NamedTopologyId id : {NamedTopologyId::Pointwise, NamedTopologyId::P, NamedTopologyId::B1,
                             NamedTopologyId::B2, NamedTopologyId::I1, NamedTopologyId::I2,
                             NamedTopologyId::I3, NamedTopologyId::I4, NamedTopologyId::J,
                             NamedTopologyId::S1, NamedTopologyId::S2,
                             NamedTopologyId::MaxChainOrder, NamedTopologyId::MaxChainFM}) {
    Ambient amb = topology_ambient(id);
    for (u64 index = 0; index < 12; ++index) {
      NamedSet s = topology_subbasis_at(id, index);
      CHECK(s.ambient == amb);
      CHECK(s == topology_subbasis_at(id, index));
    }
    CHECK(parse_topology_id(topology_name(id)) == id);
  }
}

TEST_CASE("separation witnesses hold up under replay") {
  WitnessParams winv;
  winv.x = 0;
  winv.Y = {1, 2};
  SeparationWitness w1 = separation_witness("Winv_not_in_I2", winv);
  CHECK(w1.ok());
  CHECK(!w1.probes.empty());
  for (const WitnessProbe& p : w1.probes) {
    CHECK(p.in_neighborhood);
    CHECK(p.outside_target);
  }

  WitnessParams zar;
  zar.x = 0;
  zar.h = {{5, 5}};
  SeparationWitness w2 = separation_witness("ZariskiSet_not_I1", zar);
  CHECK(w2.ok());

  WitnessParams anti;
  anti.m = 6;
  SeparationWitness w3 = separation_witness("B2_antichain", anti);
  CHECK(w3.ok());

  WitnessParams chain;
  chain.c = 0;
  SeparationWitness w4 = separation_witness("MaxChain_FM_vs_HM", chain);
  CHECK(w4.ok());

  CHECK_THROWS_AS((void)separation_witness("nonsense", winv), std::invalid_argument);
}
