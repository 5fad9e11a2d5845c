#include <doctest.h>

#include "semitop/propx.hpp"

using namespace semitop;

namespace {

ComputableElement constant_zero() {
  return from_support(Family::Transformation, FiniteSupport{0, {}, {TailRule::Affine, 0, 0}},
                      "const0");
}

void exercise(WitnessMonoid m, const ComputableElement& s, u64 window, u64 arity = 1) {
  WitnessBundle b = witness(m, s, arity);
  IdentityReport id = verify_identity(b, s, window);
  CHECK(id.ok);
  CHECK(id.points_checked > 0);

  BasicNbhdDescriptor B = pin_neighborhood(b, 4);
  CHECK(B.contains(b.t_s, window).is_true());
  TransferResult tr = b.transfer(B);
  CHECK(tr.U.contains(s, window).is_true());

  Rng rng(911);
  for (int i = 0; i < 3; ++i) {
    ComputableElement k = sample_in_neighborhood(b, tr.U, rng, window);
    CHECK(tr.U.contains(k, window).is_true());
    IdentityReport t = verify_transfer(b, B, k, window);
    CHECK(t.ok);
  }
}

}  // namespace

TEST_CASE("factorization witnesses across the monoid suite") {
  exercise(WitnessMonoid::XX, constant_zero(), 64);
  exercise(WitnessMonoid::XX, make_rule("floordiv", {2}), 64);
  exercise(WitnessMonoid::PX, parse_computable("[2,-,1]"), 64);
  exercise(WitnessMonoid::IX, parse_computable("{(0,2),(1,0)}"), 64);
  exercise(WitnessMonoid::IX, parse_computable("{}"), 64);
  exercise(WitnessMonoid::InjX, make_rule("shift", {3}), 64);
  exercise(WitnessMonoid::InjX, make_rule("identity"), 64);
  exercise(WitnessMonoid::BX, parse_computable("{(0,0)}"), 16);
  exercise(WitnessMonoid::BX, parse_computable("{(0,1),(1,0),(0,0)}"), 16);
}

TEST_CASE("witness rejects elements outside the monoid") {
  CHECK_THROWS_AS((void)witness(WitnessMonoid::InjX, make_rule("floordiv", {2})),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)witness(WitnessMonoid::IX, parse_computable("[0,0]")),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)witness(WitnessMonoid::Sym, make_rule("identity")),
                  std::invalid_argument);
}

TEST_CASE("identity verification reports corrupted factors") {
  ComputableElement s = parse_computable("[2,0,1]");
  WitnessBundle b = witness(WitnessMonoid::XX, s);
  ComputableElement shifted_g = compose(b.g, make_rule("shift", {1}));
  WitnessBundle bad = b;
  bad.g = shifted_g;
  IdentityReport rep = verify_identity(bad, s, 32);
  CHECK(!rep.ok);
  CHECK(rep.first_failure.has_value());
  CHECK(!rep.detail.empty());
}

TEST_CASE("transfer rejects elements outside the neighborhood") {
  ComputableElement s = constant_zero();
  WitnessBundle b = witness(WitnessMonoid::XX, s);
  BasicNbhdDescriptor B = pin_neighborhood(b, 3);
  // shift(1) is total but disagrees with s on the transferred pins.
  IdentityReport rep = verify_transfer(b, B, make_rule("shift", {1}), 32);
  CHECK(!rep.ok);
}

TEST_CASE("neighborhood descriptors answer membership with metadata") {
  BasicNbhdDescriptor d;
  d.monoid = WitnessMonoid::InjX;
  d.constraints = {Constraint::point(0, 3), Constraint::no_image(1),
                   Constraint::coimage(Cardinal::fin(3))};
  ComputableElement sh = make_rule("shift", {3});
  CHECK(d.contains(sh).is_true());

  d.constraints.push_back(Constraint::no_image(5));
  CHECK(d.contains(sh).is_false());

  ComputableElement opaque;
  opaque.family = Family::Injection;
  opaque.eval = [](u64 x) -> std::optional<u64> { return x + 3; };
  BasicNbhdDescriptor cd;
  cd.monoid = WitnessMonoid::InjX;
  cd.constraints = {Constraint::coimage(Cardinal::fin(3))};
  CHECK(cd.contains(opaque).is_unknown());
}

TEST_CASE("witness composition factors through the middle monoid") {
  ComputableElement s = parse_computable("[2,-,1]");
  WitnessBundle outer = witness(WitnessMonoid::PX, s);
  REQUIRE(outer.ambient == WitnessMonoid::XX);
  WitnessBundle inner = witness(WitnessMonoid::XX, outer.t_s);
  WitnessBundle composed = compose_bundles(outer, inner);
  CHECK(composed.monoid == WitnessMonoid::PX);
  CHECK(composed.ambient == WitnessMonoid::Sym);
  CHECK(verify_identity(composed, s, 48).ok);

  BasicNbhdDescriptor B = pin_neighborhood(composed, 3);
  TransferResult tr = composed.transfer(B);
  Rng rng(31);
  ComputableElement k = sample_in_neighborhood(composed, tr.U, rng, 48);
  CHECK(verify_transfer(composed, B, k, 48).ok);
}

TEST_CASE("json reports are deterministic") {
  ComputableElement s = parse_computable("{(0,2),(1,0)}");
  std::string a = propx_report_json(WitnessMonoid::IX, s, 32, 4, 7);
  std::string b = propx_report_json(WitnessMonoid::IX, s, 32, 4, 7);
  CHECK(a == b);
  CHECK(a.find("\"ok\"") != std::string::npos);
}

TEST_CASE("monoid names round trip") {
  for (WitnessMonoid m : {WitnessMonoid::XX, WitnessMonoid::PX, WitnessMonoid::IX,
                          WitnessMonoid::InjX, WitnessMonoid::BX, WitnessMonoid::FullClone,
                          WitnessMonoid::Sym})
    CHECK(parse_witness_monoid(witness_monoid_name(m)) == m);
  CHECK_THROWS_AS((void)parse_witness_monoid("nope"), std::invalid_argument);
}
