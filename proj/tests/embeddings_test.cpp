#include <doctest.h>

#include <algorithm>

#include "semitop/embeddings.hpp"

using namespace semitop;

namespace {

void collect_partial_bijections(u64 k, u64 src, FinitePartialBijection& cur, u64 used,
                                std::vector<FinitePartialBijection>& out) {
  if (src == k) {
    FinitePartialBijection copy = cur;
    copy.normalize();
    out.push_back(copy);
    return;
  }
  collect_partial_bijections(k, src + 1, cur, used, out);
  for (u64 tgt = 0; tgt < k; ++tgt) {
    if ((used >> tgt) & 1) continue;
    cur.pairs.push_back({src, tgt});
    collect_partial_bijections(k, src + 1, cur, used | (u64(1) << tgt), out);
    cur.pairs.pop_back();
  }
}

std::vector<FinitePartialBijection> all_partial_bijections(u64 k) {
  std::vector<FinitePartialBijection> out;
  FinitePartialBijection cur;
  cur.degree = k;
  collect_partial_bijections(k, 0, cur, 0, out);
  return out;
}

}  // namespace

TEST_CASE("right congruence partitions") {
  RightCongruence id = RightCongruence::identity(3);
  CHECK(id.class_count() == 3);
  RightCongruence uni = RightCongruence::universal(3);
  CHECK(uni.class_count() == 1);

  RightCongruence rho = RightCongruence::from_classes(4, {{2, 0}, {1, 3}});
  CHECK(rho.class_count() == 2);
  CHECK(rho.class_of[0] == rho.class_of[2]);
  CHECK(rho.class_of[1] == rho.class_of[3]);
  CHECK_THROWS_AS((void)RightCongruence::from_classes(3, {{0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS((void)RightCongruence::from_classes(3, {{0, 1}, {1, 2}}), std::invalid_argument);

  CHECK(congruence_from_json(congruence_to_json(rho)) == rho);
}

TEST_CASE("right compatibility checks") {
  // Splitting the full transformation monoid on two points into constants
  // and non-constants is right compatible: post-composition preserves being
  // constant, and non-constants compose with bijections to non-constants.
  FiniteSemigroup t2 = full_transformation_monoid(2);
  std::vector<u64> constants, others;
  for (u64 e = 0; e < t2.n; ++e) {
    bool absorbing = true;
    for (u64 a = 0; a < t2.n; ++a) absorbing = absorbing && t2.mul(a, e) == e;
    (absorbing ? constants : others).push_back(e);
  }
  CHECK(constants.size() == 2);
  RightCongruence split = RightCongruence::from_classes(t2.n, {constants, others});
  CHECK(is_right_congruence(t2, split).ok);

  // In the cyclic group of order 3, lumping two elements cannot be right
  // compatible; the counterexample must replay.
  FiniteSemigroup z3 = cyclic_group(3);
  RightCongruence lump = RightCongruence::from_classes(3, {{0, 1}, {2}});
  CongruenceCheck chk = is_right_congruence(z3, lump);
  CHECK(!chk.ok);
  REQUIRE(chk.counterexample.has_value());
  const auto& ce = *chk.counterexample;
  CHECK(lump.class_of[ce.a] == lump.class_of[ce.b]);
  CHECK(lump.class_of[z3.mul(ce.a, ce.c)] != lump.class_of[z3.mul(ce.b, ce.c)]);
}

TEST_CASE("enumerating right congruences") {
  CHECK(enumerate_right_congruences(cyclic_group(1)).size() == 1);
  CHECK(enumerate_right_congruences(symmetric_inverse_monoid(1)).size() == 2);
  // Right congruences of a group are partitions into cosets; Z_3 has only
  // the trivial subgroups.
  CHECK(enumerate_right_congruences(cyclic_group(3)).size() == 2);

  FiniteSemigroup chain = chain_semilattice(2, true);
  for (const RightCongruence& rho : enumerate_right_congruences(chain))
    CHECK(is_right_congruence(chain, rho).ok);
}

TEST_CASE("the dichotomy certificate") {
  FiniteSemigroup i1 = symmetric_inverse_monoid(1);
  CHECK(is_vagner_preston(i1, RightCongruence::identity(i1.n)).ok);
  CHECK(is_vagner_preston(i1, RightCongruence::universal(i1.n)).ok);

  FiniteSemigroup i2 = symmetric_inverse_monoid(2);
  bool found_failing = false;
  for (const RightCongruence& rho : enumerate_right_congruences(i2)) {
    VPCertificate cert = is_vagner_preston(i2, rho);
    if (!cert.ok) {
      found_failing = true;
      REQUIRE(cert.violating_s.has_value());
      // The named element must really violate both branches.
      bool has_branch = false;
      for (const VPBranch& br : cert.branches)
        if (br.s == *cert.violating_s) {
          has_branch = true;
          CHECK(!br.branch_a);
          CHECK(!br.branch_b);
        }
      CHECK(has_branch);
    }
  }
  CHECK(found_failing);

  CHECK_THROWS_AS((void)is_vagner_preston(right_zero_semigroup(2), RightCongruence::identity(2)),
                  std::invalid_argument);
}

TEST_CASE("action embedding from the identity congruence is the right regular representation") {
  FiniteSemigroup chain = chain_semilattice(2, true);
  Luke1Embedding e = luke1_embed(chain, {RightCongruence::identity(2)});
  CHECK(!e.identity_adjoined);
  CHECK(e.points == 2);
  CHECK(e.homomorphism);
  CHECK(e.injective);
  for (u64 g = 0; g < e.s1.n; ++g)
    for (u64 n = 0; n < e.s1.n; ++n)
      CHECK(e.images[g].images[n] == e.s1.mul(n, g));
}

TEST_CASE("action embedding of the chain with both congruences lands in three points") {
  FiniteSemigroup chain = chain_semilattice(2, true);
  Luke1Embedding e =
      luke1_embed(chain, {RightCongruence::identity(2), RightCongruence::universal(2)});
  CHECK(e.points == 3);
  CHECK(e.homomorphism);
  CHECK(e.injective);
  for (const EmbedCheck& c : e.checks) CHECK(c.ok);
}

TEST_CASE("the universal congruence alone cannot separate") {
  FiniteSemigroup chain = chain_semilattice(2, true);
  Luke1Embedding e = luke1_embed(chain, {RightCongruence::universal(2)});
  CHECK(e.homomorphism);
  CHECK(!e.injective);
}

TEST_CASE("semigroups without identity get one adjoined") {
  FiniteSemigroup null2 = null_semigroup(2);
  REQUIRE(!null2.find_identity().has_value());
  Luke1Embedding e = luke1_embed(null2, {RightCongruence::identity(2)});
  CHECK(e.identity_adjoined);
  CHECK(e.s1.n == 3);
  CHECK(e.points == 3);
  CHECK(e.homomorphism);
  CHECK(e.injective);
}

TEST_CASE("the natural embedding and its inverse") {
  CHECK(natural_embed(parse_partial_map("[-,1]")) == parse_transformation("[2,1,2]"));

  Rng rng(79);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + rng.below(5);
    FinitePartialMap f;
    f.degree = n;
    for (std::size_t i = 0; i < n; ++i)
      f.images.push_back(rng.below(3) == 0 ? std::nullopt : std::optional<u64>(rng.below(n)));
    UnembedResult back = natural_unembed(natural_embed(f));
    REQUIRE(back.map.has_value());
    CHECK(*back.map == f);
  }

  UnembedResult bad = natural_unembed(parse_transformation("[0,0,0]"));
  CHECK(!bad.map.has_value());
  CHECK(!bad.reason.empty());
}

TEST_CASE("partial bijection action embedding") {
  FiniteSemigroup i1 = symmetric_inverse_monoid(1);
  std::vector<RightCongruence> rhos{RightCongruence::identity(i1.n),
                                    RightCongruence::universal(i1.n)};
  VPEmbedding e = vp_embed(i1, rhos);
  CHECK(e.homomorphism);
  CHECK(e.injective);
  CHECK(e.inversion_preserved);
  CHECK(e.separating);

  VPEmbedding flat = vp_embed(i1, {RightCongruence::universal(i1.n)});
  CHECK(flat.homomorphism);
  CHECK(!flat.injective);
  CHECK(!flat.separating);
}

TEST_CASE("congruences read off a concrete action reconstruct it") {
  std::vector<FinitePartialBijection> i2 = all_partial_bijections(2);
  REQUIRE(i2.size() == 7);
  ActionCongruences ac = vp_congruences_from_action(i2);
  CHECK(ac.s.n == 7);
  CHECK(ac.rhos.size() == 2);
  for (const VPCertificate& cert : ac.certificates) CHECK(cert.ok);

  VPEmbedding e = vp_embed(ac.s, ac.rhos);
  CHECK(e.homomorphism);
  CHECK(e.injective);
  CHECK(e.inversion_preserved);

  ActionCongruences solo = vp_congruences_from_action({FinitePartialBijection::identity(3)});
  CHECK(solo.s.n == 1);
  CHECK(solo.rhos.size() == 3);
  for (const RightCongruence& rho : solo.rhos) CHECK(rho.class_count() == 1);
}
