#include <doctest.h>

#include "semitop/common.hpp"
#include "semitop/elements.hpp"

using namespace semitop;

TEST_CASE("transformation composition is left to right") {
  FiniteTransformation id3 = FiniteTransformation::identity(3);
  FiniteTransformation f = parse_transformation("[2,0,1]");
  CHECK(compose(id3, f) == f);
  CHECK(compose(f, id3) == f);

  FiniteTransformation a = parse_transformation("[1,2,0]");
  FiniteTransformation b = parse_transformation("[0,0,2]");
  CHECK(compose(a, b) == parse_transformation("[0,2,0]"));
}

TEST_CASE("relation composition matches the exists-z oracle") {
  FiniteBinaryRelation f = parse_relation("{(0,1),(1,2)}", 3);
  FiniteBinaryRelation g = parse_relation("{(1,0),(2,0)}", 3);
  CHECK(compose(f, g) == parse_relation("{(0,0),(1,0)}", 3));

  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng.below(4);
    FiniteBinaryRelation r{n, {}}, s{n, {}};
    for (u64 k = rng.below(6); k > 0; --k) r.pairs.insert({rng.below(n), rng.below(n)});
    for (u64 k = rng.below(6); k > 0; --k) s.pairs.insert({rng.below(n), rng.below(n)});
    FiniteBinaryRelation rs = compose(r, s);
    for (u64 x = 0; x < n; ++x)
      for (u64 y = 0; y < n; ++y) {
        bool direct = false;
        for (u64 z = 0; z < n; ++z) direct = direct || (r.contains(x, z) && s.contains(z, y));
        CHECK(rs.contains(x, y) == direct);
      }
  }
}

TEST_CASE("inversion") {
  CHECK(invert(parse_relation("{(0,1)}", 2)) == parse_relation("{(1,0)}", 2));
  FinitePartialBijection pb = parse_partial_bijection("{(0,2),(1,0)}");
  FinitePartialBijection expect = parse_partial_bijection("{(2,0),(0,1)}");
  CHECK(invert(pb) == expect);

  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + rng.below(5);
    FiniteBinaryRelation r{n, {}};
    for (u64 k = rng.below(8); k > 0; --k) r.pairs.insert({rng.below(n), rng.below(n)});
    CHECK(invert(invert(r)) == r);
  }
}

TEST_CASE("relation inversion swaps composition order") {
  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng.below(4);
    FiniteBinaryRelation f{n, {}}, g{n, {}};
    for (u64 k = rng.below(6); k > 0; --k) f.pairs.insert({rng.below(n), rng.below(n)});
    for (u64 k = rng.below(6); k > 0; --k) g.pairs.insert({rng.below(n), rng.below(n)});
    CHECK(invert(compose(f, g)) == compose(invert(g), invert(f)));
  }
}

TEST_CASE("partial bijection apply and inverse agree") {
  FinitePartialBijection pb = parse_partial_bijection("{(0,2),(3,1)}");
  CHECK(pb.apply(0) == std::optional<u64>(2));
  CHECK(pb.apply(1) == std::nullopt);
  CHECK(pb.apply_inv(2) == std::optional<u64>(0));
  CHECK(pb.apply_inv(0) == std::nullopt);
  FinitePartialBijection round = invert(invert(pb));
  CHECK(round == pb);
}

TEST_CASE("bipartition identity and the one-point example") {
  Bipartition id2 = Bipartition::identity(2);
  Bipartition t = parse_bipartition("[[0,1'],[1,0']]");
  CHECK(bipartition_product(id2, t).product == t);
  CHECK(bipartition_product(t, id2).product == t);

  Bipartition singletons = parse_bipartition("[[0],[0']]");
  CHECK(bipartition_product(singletons, singletons).product == singletons);
}

namespace {

Bipartition random_bipartition(Rng& rng, std::size_t n) {
  Bipartition b;
  b.degree = n;
  b.block.resize(2 * n);
  u64 next = 0;
  for (auto& id : b.block) id = rng.below(next + 1) == 0 ? next++ : rng.below(next);
  b.normalize();
  return b;
}

}  // namespace

TEST_CASE("bipartition product is associative and certified") {
  Rng rng(31);
  for (int trial = 0; trial < 400; ++trial) {
    std::size_t n = 1 + rng.below(5);
    Bipartition a = random_bipartition(rng, n);
    Bipartition b = random_bipartition(rng, n);
    Bipartition c = random_bipartition(rng, n);
    auto ab = bipartition_product(a, b);
    auto bc = bipartition_product(b, c);
    CHECK(bipartition_product(ab.product, c).product == bipartition_product(a, bc.product).product);
    for (const auto& cert : ab.certificates) CHECK(certificate_valid(a, b, cert));
  }
}

TEST_CASE("certificates reject foreign factors") {
  Bipartition a = parse_bipartition("[[0,1,0'],[1']]");
  Bipartition b = parse_bipartition("[[0,1'],[1,0']]");
  auto prod = bipartition_product(a, b);
  REQUIRE(!prod.certificates.empty());
  Bipartition c = parse_bipartition("[[0],[1],[0'],[1']]");
  bool all_still_valid = true;
  for (const auto& cert : prod.certificates)
    all_still_valid = all_still_valid && certificate_valid(c, c, cert);
  CHECK(!all_still_valid);
}

TEST_CASE("element DSL round trips") {
  CHECK(print_transformation(parse_transformation("[2,0,1]")) == "[2,0,1]");
  CHECK(print_partial_map(parse_partial_map("[2,-,1]")) == "[2,-,1]");
  CHECK(print_partial_bijection(parse_partial_bijection("{(0,2),(1,0)}")) == "{(0,2),(1,0)}");
  CHECK(print_bipartition(parse_bipartition("[[0,1,1'],[0']]")) == "[[0,1,1'],[0']]");
  CHECK_THROWS_AS((void)parse_transformation("[3,0,1]"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_partial_bijection("{(0,1),(2,1)}"), std::invalid_argument);
}
