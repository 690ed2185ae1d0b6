#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "opdh/graded.hpp"

using namespace opdh;

TEST_CASE("koszul sign basics") {
  // swapping two odd symbols
  CHECK(koszul_sign({1, 0}, {1, 1}) == -1);
  CHECK(koszul_sign({1, 0}, {1, 0}) == 1);
  CHECK(koszul_sign({1, 0}, {2, 1}) == 1);
  // 3-cycle on three odd symbols: two inversions, both odd*odd
  CHECK(koszul_sign({1, 2, 0}, {1, 1, 1}) == 1);
  CHECK(koszul_sign(perm_identity(4), {1, 1, 1, 1}) == 1);
}

TEST_CASE("koszul sign is multiplicative under composition") {
  std::mt19937 rng(12345);
  for (int n = 2; n <= 5; ++n) {
    auto perms = all_perms(n);
    for (int trial = 0; trial < 40; ++trial) {
      const Perm& s = perms[rng() % perms.size()];
      const Perm& t = perms[rng() % perms.size()];
      std::vector<int> degs(n);
      for (auto& d : degs) d = (int)(rng() % 5) - 2;
      // degrees after applying t: slot i holds the item from t^{-1}(i)
      Perm tinv = perm_inverse(t);
      std::vector<int> tdegs(n);
      for (int i = 0; i < n; ++i) tdegs[i] = degs[tinv[i]];
      Perm st = perm_compose(s, t);
      CHECK(koszul_sign(st, degs) == koszul_sign(s, tdegs) * koszul_sign(t, degs));
    }
  }
}

TEST_CASE("permute_factors composes consistently") {
  auto V = GradedSpace::make({{"a", 0}, {"b", 1}});
  auto W = GradedSpace::make({{"x", 1}, {"y", 2}});
  auto U = GradedSpace::make({{"u", -1}});
  std::vector<SpacePtr> fac = {V, W, U};
  auto perms = all_perms(3);
  for (const Perm& s : perms) {
    for (const Perm& t : perms) {
      auto pt = permute_factors(t, fac);
      std::vector<SpacePtr> mid(3);
      for (int i = 0; i < 3; ++i) mid[t[i]] = fac[i];
      auto ps = permute_factors(s, mid);
      auto both = compose(ps, pt);
      auto direct = permute_factors(perm_compose(s, t), fac);
      CHECK(both == direct);
    }
  }
}

TEST_CASE("tensor of maps has Koszul signs") {
  // V = even (x) odd, f = identity of degree 0, g of odd degree
  auto V = GradedSpace::make({{"e", 0}, {"o", 1}});
  auto W = GradedSpace::make({{"w", 2}});
  GradedMap g(V, W, 1);  // odd map: o |-> w
  g.set(0, 1, 1);
  auto idV = identity_map(V);
  auto fg = tensor_maps({g, idV});
  auto gf = tensor_maps({idV, g});
  // (id (x) g)(o (x) o) = (-1)^{|g||o|} o (x) g(o) = -o (x) w
  std::vector<SpacePtr> fac = {V, V};
  SparseVec oo;
  oo.add(tensor_index(fac, {1, 1}), 1);
  SparseVec r = gf.apply(oo);
  std::vector<SpacePtr> tfac = {V, W};
  REQUIRE(r.c.size() == 1);
  CHECK(r.c.begin()->first == tensor_index(tfac, {1, 0}));
  CHECK(r.c.begin()->second == -1);
  // (g (x) id)(o (x) e) has no sign
  SparseVec oe;
  oe.add(tensor_index(fac, {1, 0}), 1);
  SparseVec r2 = fg.apply(oe);
  REQUIRE(r2.c.size() == 1);
  CHECK(r2.c.begin()->second == 1);
}

TEST_CASE("tensor interchange: (f(x)id)(id(x)g) = (-1)^{|f||g|} (id(x)g)(f(x)id)") {
  auto V = GradedSpace::make({{"e", 0}, {"o", 1}});
  GradedMap f(V, V, 1);
  f.set(1, 0, 1);  // e -> o, odd
  GradedMap g(V, V, 1);
  g.set(1, 0, 3);  // e -> 3o, odd
  auto idV = identity_map(V);
  auto lhs = compose(tensor_maps({f, idV}), tensor_maps({idV, g}));
  auto rhs = compose(tensor_maps({idV, g}), tensor_maps({f, idV})).scaled(-1);
  CHECK(lhs == rhs);
}

TEST_CASE("shift conventions") {
  // two-term complex Q -> Q in degrees 0,1 with d = id: acyclic
  auto V = GradedSpace::make({{"x", 0}, {"y", 1}});
  GradedMap d(V, V, 1);
  d.set(1, 0, 1);
  CHECK(compose(d, d).is_zero());
  auto H = cohomology(d, d);
  CHECK(H.total_dim() == 0);

  // shifting an odd map negates it
  auto d1 = shift_map(d, 1);
  CHECK(d1.at(1, 0) == -1);
  CHECK(d1.src()->degree(0) == 1);
  // shift is additive: [1] then [1] agrees with [2]
  auto d2 = shift_map(shift_map(d, 1), 1);
  CHECK(d2 == shift_map(d, 2));
  auto dm1 = shift_map(d, -1);
  CHECK(dm1.at(1, 0) == -1);

  // suspension squares with the map: s . d = (-1)^{...} d[1] . s
  auto s = suspension(V, 1);
  CHECK(compose(s, d) == compose(shift_map(d, 1), s).scaled(-1));
}

TEST_CASE("rank, kernel, image on a random sparse map") {
  std::mt19937 rng(777);
  std::vector<std::pair<std::string, int>> bs, bt;
  for (int i = 0; i < 12; ++i) bs.push_back({"s" + std::to_string(i), i % 3});
  for (int i = 0; i < 9; ++i) bt.push_back({"t" + std::to_string(i), i % 3});
  auto S = GradedSpace::make(bs);
  auto T = GradedSpace::make(bt);
  GradedMap f(S, T, 0);
  for (int c = 0; c < 12; ++c)
    for (int r = 0; r < 9; ++r)
      if (T->degree(r) == S->degree(c) && rng() % 3 == 0)
        f.set(r, c, (int)(rng() % 7) - 3);
  int rk = rank(f);
  CHECK((int)kernel_basis(f).size() == 12 - rk);
  CHECK((int)image_basis(f).size() == rk);
  // every kernel vector maps to zero
  for (auto& k : kernel_basis(f)) CHECK(f.apply(k).is_zero());
}

TEST_CASE("cohomology of a small explicit complex") {
  // 0 -> Q^2 --d--> Q^2 -> 0 with d of rank 1 gives H = ker/im of dim 1+1
  auto A = GradedSpace::make({{"a1", 0}, {"a2", 0}});
  auto B = GradedSpace::make({{"b1", 1}, {"b2", 1}});
  GradedMap d(A, B, 1);
  d.set(0, 0, 1);
  d.set(0, 1, 1);
  auto zin = zero_map(zero_space(), A, 1);
  auto zout = zero_map(B, zero_space(), 1);
  auto HA = cohomology(zin, d);
  CHECK(HA.dims[0] == 1);
  auto HB = cohomology(d, zout);
  CHECK(HB.dims[1] == 1);
  // representative is a genuine cocycle not in the image
  auto rep = HA.reps[0][0];
  CHECK(d.apply(rep).is_zero());
}

TEST_CASE("SpanBuilder coordinates") {
  SpanBuilder sb(true);
  SparseVec v1, v2, v3;
  v1.add(0, 2);
  v1.add(1, 1);
  v2.add(1, 3);
  v3.add(0, 4);  // v3 = 2*v1 - (2/3)*v2
  CHECK(sb.insert(v1));
  CHECK(sb.insert(v2));
  std::vector<Rational> coords;
  REQUIRE(sb.coords(v3, &coords));
  CHECK(coords[0] == 2);
  CHECK(coords[1] == Rational(-2, 3));
}
