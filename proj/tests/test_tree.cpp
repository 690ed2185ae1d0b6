#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "opdh/tree.hpp"

using namespace opdh;

TEST_CASE("encode / decode round trip") {
  CHECK(encode(corolla(3)) == "(1 2 3)");
  CHECK(encode(trivial_tree()) == "1");
  for (const char* s : {"(1 2 3)", "((1 2) 3)", "(1 (2 3))", "((1 (2 3)) 4 5)"}) {
    PlanarTree t = decode_tree(s);
    CHECK(encode(t) == s);
    CHECK(df_ordered(t));
  }
  CHECK_THROWS(decode_tree("(1 2"));
  CHECK_THROWS(decode_tree("()"));
}

TEST_CASE("graft basics") {
  // grafting a 2-corolla onto leg 1 of a 2-corolla: left-branch shape
  PlanarTree g = graft(corolla(2), corolla(2), 1);
  CHECK(g.n_leaves == 3);
  CHECK(g.n_vertices() == 2);
  CHECK(encode(g) == "((1 2) 3)");
  // onto leg 2: right-branch shape
  CHECK(encode(graft(corolla(2), corolla(2), 2)) == "(1 (2 3))");
  // unary on unary: linear 2-vertex tree with one leaf
  PlanarTree u = graft(corolla(1), corolla(1), 1);
  CHECK(u.n_vertices() == 2);
  CHECK(u.n_leaves == 1);
  CHECK(encode(u) == "((1))");
  // trivial tree is a unit for grafting
  CHECK(encode(graft(trivial_tree(), corolla(3), 2)) == "(1 2 3)");
  CHECK(encode(graft(corolla(3), trivial_tree(), 1)) == "(1 2 3)");
}

TEST_CASE("graft adds vertex counts and satisfies associativity shapes") {
  auto small = enumerate_trees(2, 2, {1, 2});
  for (auto& s : small)
    for (auto& t : small)
      for (int x = 1; x <= t.n_leaves; ++x) {
        PlanarTree g = graft(s, t, x);
        CHECK(g.n_vertices() == s.n_vertices() + t.n_vertices());
        CHECK(g.n_leaves == s.n_leaves + t.n_leaves - 1);
        CHECK(df_ordered(g));
      }
  // sequential: (s grafted into t at x) then u at a leaf of s equals
  // grafting (u into s) first
  PlanarTree s = corolla(2), t = corolla(3), u = corolla(2);
  for (int x = 1; x <= 3; ++x)
    for (int y = 1; y <= 2; ++y) {
      PlanarTree a = graft(u, graft(s, t, x), x + y - 1);
      PlanarTree b = graft(graft(u, s, y), t, x);
      CHECK(canonical_encode(a) == canonical_encode(b));
    }
  // parallel: grafts at distinct legs of t commute
  for (int x = 1; x <= 2; ++x)
    for (int xp = x + 1; xp <= 3; ++xp) {
      PlanarTree a = graft(u, graft(s, t, x), xp + s.n_leaves - 1);
      PlanarTree b = graft(s, graft(u, t, xp), x);
      CHECK(canonical_encode(a) == canonical_encode(b));
    }
}

TEST_CASE("contract") {
  PlanarTree t = decode_tree("((1 2) 3)");
  // contracting everything gives the corolla
  int w = -1;
  PlanarTree c = contract(t, {0, 1}, &w);
  CHECK(encode(c) == "(1 2 3)");
  CHECK(w == 0);
  // contracting a single vertex is the identity
  CHECK(canonical_encode(contract(t, {0})) == canonical_encode(t));
  CHECK(canonical_encode(contract(t, {1})) == canonical_encode(t));
  // a middle contraction
  PlanarTree t3 = decode_tree("(((1 2) 3) 4)");
  PlanarTree m = contract(t3, {1, 2}, &w);
  CHECK(encode(m) == "((1 2 3) 4)");
  CHECK(w == 1);
  // leaf labels are preserved
  PlanarTree t4 = decode_tree("(1 (2 (3 4)))");
  CHECK(encode(contract(t4, {1, 2})) == "(1 (2 3 4))");
  CHECK_THROWS(contract(decode_tree("((1 2) (3 4))"), {1, 2}));  // not connected
}

TEST_CASE("graft-then-contract recovers the corolla replacement") {
  // grafting a 2-vertex tree s and contracting its image replaces leaf x
  // of t by a corolla on s's legs
  PlanarTree s = decode_tree("((1 2) 3)");
  for (auto& t : enumerate_trees(3, 2, {1, 2, 3})) {
    for (int x = 1; x <= t.n_leaves; ++x) {
      PlanarTree g = graft(s, t, x);
      // image of s: the connected 2-vertex subtree with leaves {x,x+1,x+2}
      std::vector<int> img;
      for (auto& vs : connected_subtrees(g)) {
        if (vs.size() != 2) continue;
        auto lo = leaf_order(extract_subtree(g, vs));
        PlanarTree ex = extract_subtree(g, vs);
        if (ex.n_leaves != 3) continue;
        // check the legs of the subtree inside g are exactly x..x+2
        PlanarTree c = contract(g, vs);
        if (canonical_encode(c) == canonical_encode(graft(corolla(3), t, x))) {
          img = vs;
          break;
        }
      }
      CHECK(!img.empty());
    }
  }
}

TEST_CASE("enumerate_trees counts") {
  // binary trees with 3 leaves: 3 labeled shapes
  auto b3 = enumerate_trees(3, 2, {2});
  CHECK(b3.size() == 3);
  // with 4 leaves: 15 binary labeled trees
  CHECK(enumerate_trees(4, 3, {2}).size() == 15);
  // 2 leaves, one vertex
  auto c2 = enumerate_trees(2, 1, {1, 2, 3});
  REQUIRE(c2.size() == 1);
  CHECK(encode(c2[0]) == "(1 2)");
  // idempotence / determinism
  auto again = enumerate_trees(4, 3, {2});
  REQUIRE(again.size() == 15);
  for (size_t i = 0; i < again.size(); ++i) CHECK(encode(again[i]) == encode(enumerate_trees(4, 3, {2})[i]));
  // all enumerated trees are canonical and depth-first ordered
  for (auto& t : enumerate_trees(4, 4, {1, 2, 3})) {
    CHECK(df_ordered(t));
    CHECK(canonical_encode(t) == encode(t));
  }
}

TEST_CASE("canonical form is relabeling-covariant") {
  std::mt19937 rng(99);
  for (auto& t : enumerate_trees(4, 3, {1, 2, 3})) {
    auto perms = all_perms(4);
    const Perm& s = perms[rng() % perms.size()];
    PlanarTree r = relabel(t, s);
    // relabeled tree canonicalizes to the canonical form of the relabeling
    PlanarTree expect = relabel(t, s);
    CHECK(canonical_encode(r) == canonical_encode(expect));
    // and double relabel by inverse returns t
    CHECK(canonical_encode(relabel(r, perm_inverse(s))) == encode(t));
  }
}

TEST_CASE("planar structures") {
  CHECK(planar_structures(corolla(2)).size() == 2);
  PlanarTree t = decode_tree("((1 2) 3)");
  auto ps = planar_structures(t);
  CHECK(ps.size() == 4);  // 2! * 2!
  // all are the same labeled tree
  for (auto& p : ps) CHECK(canonical_encode(p) == canonical_encode(t));
  // distinct as planar trees
  std::set<std::string> enc;
  for (auto& p : ps) enc.insert(encode(p));
  CHECK(enc.size() == 4);
  // unary linear tree is planar-rigid
  CHECK(planar_structures(decode_tree("((1))")).size() == 1);
}

TEST_CASE("reorder_between connects planar structures") {
  PlanarTree t = decode_tree("((1 2) (3 4))");
  for (auto& p : planar_structures(t)) {
    Reordering re = reorder_between(p, t);
    // the reordering maps vertices onto vertices of matching arity
    for (int v = 0; v < p.n_vertices(); ++v) {
      CHECK(p.arity(v) == t.arity(re.vperm[v]));
      CHECK(perm_is_valid(re.cperm[v]));
    }
  }
  CHECK_THROWS(reorder_between(decode_tree("((1 2) 3)"), decode_tree("(1 (2 3))")));
}

TEST_CASE("automorphisms") {
  // distinct leaf labels rigidify nothing here: automorphisms may permute
  // labels; the planar-rigid chain has only the identity
  CHECK(automorphisms(decode_tree("((1))")).size() == 1);
  // binary corolla: one nontrivial swap
  auto a2 = automorphisms(corolla(2));
  CHECK(a2.size() == 2);
  // root with two isomorphic unary children
  PlanarTree t = decode_tree("((1) (2))");
  auto at = automorphisms(t);
  CHECK(at.size() == 2);
  // brute force count: bijections preserving shape
  PlanarTree u = decode_tree("((1 2) (3 4))");
  CHECK(automorphisms(u).size() == 8);  // wreath (S2 x S2) x S2
  // closure under composition: leaf perms form a group
  std::set<Perm> perms;
  for (auto& a : automorphisms(u)) perms.insert(a.leaf_perm);
  CHECK(perms.size() == 8);
  for (auto& p : perms)
    for (auto& q : perms) CHECK(perms.count(perm_compose(p, q)) == 1);
}

TEST_CASE("connected subtrees and extraction") {
  PlanarTree t = decode_tree("(((1 2) 3) 4)");
  auto subs = connected_subtrees(t);
  // single vertices: 3; pairs: {0,1},{1,2}; triple: {0,1,2}
  CHECK(subs.size() == 6);
  for (auto& s : subs) CHECK(is_connected_subtree(t, s));
  CHECK(!is_connected_subtree(t, {0, 2}));
  PlanarTree ex = extract_subtree(t, {1, 2});
  CHECK(encode(ex) == "((1 2) 3)");
  PlanarTree ex2 = extract_subtree(t, {0});
  CHECK(encode(ex2) == "(1 2)");
}

TEST_CASE("leaf-ordered planar trees") {
  // one vertex: just the corolla
  auto l1 = leaf_ordered_planar_trees(3, 1, {2, 3});
  REQUIRE(l1.size() == 1);
  CHECK(encode(l1[0]) == "(1 2 3)");
  // two binary vertices on 3 leaves: ((1 2) 3) and (1 (2 3))
  auto l2 = leaf_ordered_planar_trees(3, 2, {2});
  CHECK(l2.size() == 2);
  for (auto& t : l2) {
    auto lo = leaf_order(t);
    for (size_t i = 0; i < lo.size(); ++i) CHECK(lo[i] == (int)i + 1);
  }
  // 4 leaves, three binary vertices: 5 planar binary trees
  CHECK(leaf_ordered_planar_trees(4, 3, {2}).size() == 5);
  // 5 leaves: Catalan number 14
  CHECK(leaf_ordered_planar_trees(5, 4, {2}).size() == 14);
}
