#include <doctest.h>

#include <map>

#include "semitop/fintop.hpp"

using namespace semitop;

TEST_CASE("generating topologies from subbases") {
  FiniteTopology empty2 = generate_topology({}, 2);
  CHECK(empty2.opens == std::set<Mask>{0, 3});

  FiniteTopology disc3 = generate_topology({1, 2, 4}, 3);
  CHECK(disc3.opens.size() == 8);
  CHECK(disc3 == FiniteTopology::discrete(3));

  FiniteTopology two3 = generate_topology({1, 2}, 3);
  CHECK(two3.opens == std::set<Mask>{0, 1, 2, 3, 7});

  CHECK_THROWS_AS((void)generate_topology({8}, 3), std::invalid_argument);
}

TEST_CASE("separation axioms on finite spaces") {
  SeparationFlags disc = separation(FiniteTopology::discrete(4));
  CHECK(disc.t0);
  CHECK(disc.t1);
  CHECK(disc.t2);

  SeparationFlags ind = separation(FiniteTopology::indiscrete(2));
  CHECK(!ind.t0);
  CHECK(!ind.t1);
  CHECK(!ind.t2);

  FiniteTopology sierp = generate_topology({1}, 2);
  CHECK(sierp.opens == std::set<Mask>{0, 1, 3});
  SeparationFlags s = separation(sierp);
  CHECK(s.t0);
  CHECK(!s.t1);
  CHECK(!s.t2);
}

TEST_CASE("on finite spaces T1, T2 and discreteness coincide") {
  for (const FiniteTopology& t : enumerate_topologies(3)) {
    SeparationFlags f = separation(t);
    bool discrete = t == FiniteTopology::discrete(3);
    CHECK(f.t1 == discrete);
    CHECK(f.t2 == discrete);
  }
}

TEST_CASE("topology counts and route agreement") {
  CHECK(enumerate_topologies(1).size() == 1);
  CHECK(enumerate_topologies(2).size() == 4);
  std::vector<FiniteTopology> direct = enumerate_topologies(3);
  CHECK(direct.size() == 29);
  CHECK(direct == enumerate_topologies_by_closure(3));
  for (const FiniteTopology& t : direct) CHECK(t.valid());
}

TEST_CASE("interior and closure") {
  FiniteTopology sierp = generate_topology({1}, 2);
  CHECK(sierp.min_open(0) == 1);
  CHECK(sierp.min_open(1) == 3);
  CHECK(sierp.interior(2) == 0);
  CHECK(sierp.closure(1) == 3);
  CHECK(sierp.closure(2) == 2);
}

TEST_CASE("right zero semigroups are topological under any topology") {
  for (u64 n : {2, 3}) {
    FiniteSemigroup rz = right_zero_semigroup(n);
    for (const FiniteTopology& t : enumerate_topologies(n)) {
      SemigroupTopologyCheck chk = check_semigroup_topology(rz, t);
      CHECK(chk.topological);
      CHECK(chk.left_semitopological);
      CHECK(chk.right_semitopological);
    }
  }
}

TEST_CASE("the two point chain under max is topological for the expected opens") {
  FiniteSemigroup chain = chain_semilattice(2, true);
  FiniteTopology up = generate_topology({2}, 2);  // {}, {1}, X
  CHECK(check_semigroup_topology(chain, up).topological);
  FiniteTopology down = generate_topology({1}, 2);  // {}, {0}, X
  CHECK(check_semigroup_topology(chain, down).topological);
  CHECK(check_semigroup_topology(chain, FiniteTopology::discrete(2)).topological);

  SemigroupTopologyCheck ind = check_semigroup_topology(chain, FiniteTopology::indiscrete(2));
  CHECK(ind.topological);
  CHECK(!ind.counterexample.has_value());
}

TEST_CASE("continuity counterexamples are real") {
  // On the 2-element null semigroup every product is 0, so {1} open breaks
  // joint continuity at any pair mapping into it? It cannot: products never
  // hit 1. Use the monogenic a^2 = a^3 semigroup instead and scan all
  // topologies; whenever the check fails it must name a pair whose product
  // lies in the cited open while no neighborhood product stays inside.
  FiniteSemigroup s = monogenic(2, 1);
  for (const FiniteTopology& t : enumerate_topologies(s.n)) {
    SemigroupTopologyCheck chk = check_semigroup_topology(s, t);
    if (!chk.topological) {
      REQUIRE(chk.counterexample.has_value());
      const auto& ce = *chk.counterexample;
      CHECK(t.is_open(ce.open_u));
      CHECK((ce.open_u >> s.mul(ce.a, ce.b)) & 1);
    }
  }
}

TEST_CASE("intersection of topologies") {
  FiniteTopology disc = FiniteTopology::discrete(2);
  FiniteTopology ind = FiniteTopology::indiscrete(2);
  CHECK(intersect_topologies({disc, disc}) == disc);
  CHECK(intersect_topologies({disc, ind}) == ind);

  // All T0 semigroup topologies on the max chain of length 2 intersect to
  // the indiscrete topology: the two Sierpinski variants kill each other.
  FiniteSemigroup chain = chain_semilattice(2, true);
  std::vector<FiniteTopology> t0s;
  for (const FiniteTopology& t : enumerate_topologies(2))
    if (separation(t).t0 && check_semigroup_topology(chain, t).topological) t0s.push_back(t);
  CHECK(t0s.size() == 3);
  CHECK(intersect_topologies(t0s) == ind);
}

TEST_CASE("stock semigroups") {
  CHECK(full_transformation_monoid(2).n == 4);
  CHECK(full_transformation_monoid(2).identity_idx.has_value());

  FiniteSemigroup i2 = symmetric_inverse_monoid(2);
  CHECK(i2.n == 7);
  CHECK(i2.associative());
  CHECK(i2.is_inverse());

  FiniteSemigroup s3 = symmetric_group(3);
  CHECK(s3.n == 6);
  CHECK(s3.is_group());

  FiniteSemigroup mono = monogenic(2, 3);
  CHECK(mono.n == 5);
  CHECK(mono.associative());
  CHECK(mono.commutative());

  FiniteSemigroup chain4 = chain_semilattice(4, true);
  CHECK(chain4.associative());
  CHECK(chain4.commutative());
  CHECK(chain4.identity_idx == std::optional<u64>(0));
}

TEST_CASE("canonical tables are relabeling invariant") {
  FiniteSemigroup s = monogenic(1, 3);
  std::vector<u64> perm{2, 0, 3, 1};
  FiniteSemigroup r = s.relabel(perm);
  CHECK(r.associative());
  CHECK(s.canonical_table() == r.canonical_table());
}

TEST_CASE("exhaustive small semigroup census") {
  CHECK(all_semigroups_upto_iso(1).size() == 1);
  CHECK(all_semigroups_upto_iso(2).size() == 5);
  CHECK(all_semigroups_upto_iso(3).size() == 24);
}

TEST_CASE("the semigroup library is big, associative and duplicate free") {
  std::vector<FiniteSemigroup> lib = semigroup_library();
  CHECK(lib.size() >= 50);
  std::map<u64, std::set<std::vector<u64>>> canon_by_order;
  for (const FiniteSemigroup& s : lib) {
    CHECK(s.n <= 4);
    CHECK(s.associative());
    CHECK(canon_by_order[s.n].insert(s.canonical_table()).second);
  }
  CHECK(canon_by_order[1].size() == 1);
  CHECK(canon_by_order[2].size() == 5);
  CHECK(canon_by_order[3].size() == 24);
}

TEST_CASE("json round trips") {
  FiniteSemigroup s = symmetric_inverse_monoid(2);
  CHECK(semigroup_from_json(semigroup_to_json(s)) == s);

  FiniteTopology t = generate_topology({1, 6}, 3);
  CHECK(topology_from_json(topology_to_json(t)) == t);
}
