#include <doctest.h>

#include <algorithm>

#include "semitop/zariski.hpp"

using namespace semitop;

namespace {

std::vector<std::vector<u64>> induced_set(const std::vector<WordFunction>& ws) {
  std::vector<std::vector<u64>> out;
  for (const WordFunction& w : ws) out.push_back(w.induced);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("word functions on a right zero semigroup collapse to the identity") {
  FiniteSemigroup rz = right_zero_semigroup(2);
  std::vector<WordFunction> ws = word_functions(rz, ZariskiMode::Semigroup, WordMode::Strict);
  CHECK(induced_set(ws) == std::vector<std::vector<u64>>{{0, 1}});
}

TEST_CASE("word functions on the two point max chain") {
  FiniteSemigroup chain = chain_semilattice(2, true);
  std::vector<WordFunction> ws = word_functions(chain, ZariskiMode::Semigroup, WordMode::Strict);
  CHECK(induced_set(ws) == std::vector<std::vector<u64>>{{0, 1}, {1, 1}});
  for (const WordFunction& w : ws) CHECK(word_witness_valid(chain, w));
}

TEST_CASE("group word functions include inversion in inverse mode") {
  FiniteSemigroup g = cyclic_group(3);
  REQUIRE(g.is_inverse());
  std::vector<WordFunction> ws = word_functions(g, ZariskiMode::Inverse, WordMode::Strict);
  bool found = false;
  for (const WordFunction& w : ws) found = found || w.induced == g.inverse;
  CHECK(found);
}

TEST_CASE("closure route matches levelwise brute force") {
  for (const FiniteSemigroup& s : {right_zero_semigroup(3), chain_semilattice(3, true),
                                   cyclic_group(4), monogenic(2, 2)}) {
    for (WordMode wm : {WordMode::Strict, WordMode::WithConstants}) {
      std::vector<WordFunction> fast = word_functions(s, ZariskiMode::Semigroup, wm);
      CHECK(induced_set(fast) == word_functions_bruteforce(s, ZariskiMode::Semigroup, wm));
      for (const WordFunction& w : fast) CHECK(word_witness_valid(s, w));
    }
  }
}

TEST_CASE("corrupted witnesses are rejected") {
  FiniteSemigroup chain = chain_semilattice(2, true);
  std::vector<WordFunction> ws = word_functions(chain, ZariskiMode::Semigroup, WordMode::Strict);
  REQUIRE(!ws.empty());
  WordFunction bad = ws.front();
  bad.induced[0] ^= 1;
  CHECK(!word_witness_valid(chain, bad));
}

TEST_CASE("zariski topology of the two point chain") {
  FiniteSemigroup chain = chain_semilattice(2, true);
  FiniteTopology strict = zariski_topology(chain, ZariskiMode::Semigroup, WordMode::Strict);
  CHECK(strict.opens == std::set<Mask>{0, 1, 3});

  FiniteTopology with_c = zariski_topology(chain, ZariskiMode::Semigroup, WordMode::WithConstants);
  CHECK(with_c == FiniteTopology::discrete(2));
}

TEST_CASE("elementary algebraic sets of max chains match the case analysis") {
  for (u64 n : {2, 3, 4}) {
    FiniteSemigroup chain = chain_semilattice(n, true);
    ElementaryAlgebraicFamily fam =
        elementary_algebraic(chain, ZariskiMode::Semigroup, WordMode::WithConstants);
    std::set<Mask> points;
    for (const ElementaryAlgebraicSet& e : fam.sets) points.insert(e.points);
    for (u64 a = 0; a < n; ++a)
      for (u64 b = 0; b < n; ++b) {
        CHECK(points.count(chain_expected_eq(n, a, b)));
        Mask level = chain_expected_level(n, a, b);
        if (level != 0) CHECK(points.count(level));
      }
  }
}

TEST_CASE("chain case helpers") {
  // a < b: the equalizer is the up-set of b and the level set is {b}.
  CHECK(chain_expected_eq(4, 1, 3) == 0b1000);
  CHECK(chain_expected_level(4, 1, 3) == 0b1000);
  // a == b: everything, and the down-set of a.
  CHECK(chain_expected_eq(4, 2, 2) == 0b1111);
  CHECK(chain_expected_level(4, 2, 2) == 0b0111);
  // a > b: the level set is empty.
  CHECK(chain_expected_level(4, 3, 1) == 0);
}

TEST_CASE("elementary algebraic point sets are automorphism invariant") {
  for (const FiniteSemigroup& s : {right_zero_semigroup(3), cyclic_group(3),
                                   chain_semilattice(3, true)}) {
    ElementaryAlgebraicFamily fam =
        elementary_algebraic(s, ZariskiMode::Semigroup, WordMode::Strict);
    std::set<Mask> points;
    for (const ElementaryAlgebraicSet& e : fam.sets) points.insert(e.points);
    for (const std::vector<u64>& phi : semigroup_automorphisms(s)) {
      for (Mask m : points) {
        Mask image = 0;
        for (u64 x = 0; x < s.n; ++x)
          if ((m >> x) & 1) image |= Mask(1) << phi[static_cast<std::size_t>(x)];
        CHECK(points.count(image));
      }
    }
  }
}

TEST_CASE("zariski topologies are semitopological on the library") {
  for (const FiniteSemigroup& s : {chain_semilattice(3, true), right_zero_semigroup(2),
                                   cyclic_group(4)}) {
    FiniteTopology t = zariski_topology(s, ZariskiMode::Semigroup, WordMode::WithConstants);
    CHECK(t.valid());
    SemigroupTopologyCheck chk = check_semigroup_topology(s, t);
    CHECK(chk.left_semitopological);
    CHECK(chk.right_semitopological);
  }
}

TEST_CASE("pointwise separation hypotheses on a worked instance") {
  ComputableElement a =
      from_support(Family::Injection, FiniteSupport{1, {0}, {TailRule::Affine, 1, 2}}, "a");
  ComputableElement b =
      from_support(Family::Injection, FiniteSupport{1, {1}, {TailRule::Affine, 1, 2}}, "b");
  ComputableElement c0 = make_rule("double");
  ComputableElement c1 =
      from_support(Family::Injection, FiniteSupport{1, {0}, {TailRule::Affine, 2, 1}}, "c1");

  PointwiseHypothesesReport ok =
      check_pointwise_hypotheses(Family::Injection, 0, a, b, {c0, c1}, 64);
  CHECK(ok.cond_point_split.is_true());
  CHECK(ok.cond_image.is_true());
  CHECK(ok.cond_fiber_avoid.is_true());
  CHECK(ok.overall().is_true());

  // a == b breaks the point split.
  PointwiseHypothesesReport eq =
      check_pointwise_hypotheses(Family::Injection, 0, a, a, {c0, c1}, 64);
  CHECK(eq.cond_point_split.is_false());
  CHECK(eq.overall().is_false());

  // A constant list whose images all miss x breaks the image condition.
  ComputableElement c_bad = make_rule("shift", {2});
  PointwiseHypothesesReport img =
      check_pointwise_hypotheses(Family::Injection, 0, a, b, {c_bad}, 64);
  CHECK(img.cond_image.is_false());
  CHECK(img.overall().is_false());
}
