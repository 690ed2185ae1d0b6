#include "opdh/operad.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace opdh {

namespace {

// entry-wise equality, ignoring the space objects (parenthesized tensor
// products share flat indexing with the flattened one)
bool same_matrix(const GradedMap& a, const GradedMap& b) { return a == b; }

}  // namespace

const GradedMap& Operad::comp(int n, int i, int m) const {
  auto key = std::make_tuple(n, i, m);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  GradedMap r;
  if (!within(n, m)) {
    ++trunc_events_;
    r = zero_map(tensor_space({C.at(n), C.at(m)}), zero_space(), 0);
  } else {
    r = builder_(n, i, m);
  }
  return cache_.emplace(std::move(key), std::move(r)).first->second;
}

Perm block_perm(const Perm& tau, int x, const Perm& sigma) {
  int n = (int)tau.size(), m = (int)sigma.size();
  int x0 = x - 1, y0 = tau[x0];
  Perm u(n + m - 1);
  for (int k0 = 0; k0 < n + m - 1; ++k0) {
    if (k0 >= x0 && k0 < x0 + m) {
      u[k0] = y0 + sigma[k0 - x0];
    } else {
      int i0 = k0 < x0 ? k0 : k0 - m + 1;
      int s0 = tau[i0];
      u[k0] = s0 < y0 ? s0 : s0 + m - 1;
    }
  }
  return u;
}

CheckReport check_operad_axioms(const Operad& P) {
  CheckReport rep = check_collection(P.C);
  if (!rep.ok) return rep;
  const Collection& C = P.C;
  int N = C.max_arity();

  // unit laws, elementwise
  if (!P.unit_vec.is_zero()) {
    for (int n = 1; n <= N && rep.ok; ++n) {
      for (int b = 0; b < C.dim(n); ++b) {
        // b o_x 1 = b
        for (int x = 1; x <= n; ++x) {
          SparseVec arg;
          for (auto& [j, c] : P.unit_vec.c)
            arg.add(tensor_index({C.at(n), C.at(1)}, {b, j}), c);
          SparseVec res = P.comp(n, x, 1).apply(arg);
          SparseVec want;
          want.add(b, 1);
          if (!(res == want)) {
            rep.fail("right unit law fails: arity " + std::to_string(n) + ", slot " +
                     std::to_string(x) + ", element " + C.at(n)->name(b));
            break;
          }
        }
        // 1 o_1 b = b
        SparseVec arg;
        for (auto& [j, c] : P.unit_vec.c)
          arg.add(tensor_index({C.at(1), C.at(n)}, {j, b}), c);
        SparseVec res = P.comp(1, 1, n).apply(arg);
        SparseVec want;
        want.add(b, 1);
        if (!(res == want)) {
          rep.fail("left unit law fails: arity " + std::to_string(n) + ", element " +
                   C.at(n)->name(b));
        }
        if (!rep.ok) break;
      }
    }
    if (!rep.ok) return rep;
  }

  // comp sanity + equivariance on the action generators
  for (int n = 1; n <= N; ++n) {
    for (int m = 1; n + m - 1 <= N; ++m) {
      for (int x = 1; x <= n; ++x) {
        const GradedMap& g = P.comp(n, x, m);
        if (g.deg() != 0) {
          rep.fail("composition has nonzero degree at (" + std::to_string(n) + "," +
                   std::to_string(x) + "," + std::to_string(m) + ")");
          return rep;
        }
        // generators of S_n x S_m, plus identities
        std::vector<Perm> taus = {perm_identity(n)}, sigmas = {perm_identity(m)};
        for (int i = 0; i + 1 < n; ++i) {
          Perm t = perm_identity(n);
          std::swap(t[i], t[i + 1]);
          taus.push_back(t);
        }
        for (int i = 0; i + 1 < m; ++i) {
          Perm s = perm_identity(m);
          std::swap(s[i], s[i + 1]);
          sigmas.push_back(s);
        }
        for (const Perm& tau : taus)
          for (const Perm& sigma : sigmas) {
            int y = tau[x - 1] + 1;
            GradedMap lhs = compose(g, tensor_maps({C.action(n, tau), C.action(m, sigma)}));
            GradedMap rhs =
                compose(C.action(n + m - 1, block_perm(tau, x, sigma)), P.comp(n, y, m));
            if (!same_matrix(lhs, rhs)) {
              rep.fail("equivariance fails at comp(" + std::to_string(n) + "," +
                       std::to_string(x) + "," + std::to_string(m) + ")");
              return rep;
            }
          }
      }
    }
  }

  // associativity, sequential: (f o_x g) o_{x+y-1} h == f o_x (g o_y h)
  for (int n = 1; n <= N; ++n)
    for (int m = 1; m <= N; ++m)
      for (int k = 1; n + m + k - 2 <= N; ++k)
        for (int x = 1; x <= n; ++x)
          for (int y = 1; y <= m; ++y) {
            GradedMap lhs = compose(P.comp(n + m - 1, x + y - 1, k),
                                    tensor_maps({P.comp(n, x, m), identity_map(C.at(k))}));
            GradedMap rhs = compose(P.comp(n, x, m + k - 1),
                                    tensor_maps({identity_map(C.at(n)), P.comp(m, y, k)}));
            if (!same_matrix(lhs, rhs)) {
              rep.fail("sequential associativity fails at n=" + std::to_string(n) +
                       " x=" + std::to_string(x) + " m=" + std::to_string(m) +
                       " y=" + std::to_string(y) + " k=" + std::to_string(k));
              return rep;
            }
          }

  // associativity, parallel: (f o_x g) o_{y+m-1} h == +-(f o_y h) o_x g, x < y
  for (int n = 2; n <= N; ++n)
    for (int m = 1; m <= N; ++m)
      for (int k = 1; n + m + k - 2 <= N; ++k)
        for (int x = 1; x <= n; ++x)
          for (int y = x + 1; y <= n; ++y) {
            GradedMap lhs = compose(P.comp(n + m - 1, y + m - 1, k),
                                    tensor_maps({P.comp(n, x, m), identity_map(C.at(k))}));
            GradedMap rhs = compose(
                compose(P.comp(n + k - 1, x, m),
                        tensor_maps({P.comp(n, y, k), identity_map(C.at(m))})),
                permute_factors({0, 2, 1}, {C.at(n), C.at(m), C.at(k)}));
            if (!same_matrix(lhs, rhs)) {
              rep.fail("parallel associativity fails at n=" + std::to_string(n) +
                       " x=" + std::to_string(x) + " y=" + std::to_string(y) +
                       " m=" + std::to_string(m) + " k=" + std::to_string(k));
              return rep;
            }
          }

  // derivation rule for the differential
  bool any_diff = false;
  for (int n = 1; n <= N; ++n) any_diff = any_diff || C.has_diff(n);
  if (any_diff) {
    for (int n = 1; n <= N; ++n)
      for (int m = 1; n + m - 1 <= N; ++m)
        for (int x = 1; x <= n; ++x) {
          GradedMap lhs = compose(C.d(n + m - 1), P.comp(n, x, m));
          GradedMap rhs = compose(
              P.comp(n, x, m),
              add(tensor_maps({C.d(n), identity_map(C.at(m))}),
                  tensor_maps({identity_map(C.at(n)), C.d(m)})));
          if (!same_matrix(lhs, rhs)) {
            rep.fail("derivation rule fails at comp(" + std::to_string(n) + "," +
                     std::to_string(x) + "," + std::to_string(m) + ")");
            return rep;
          }
        }
  }
  return rep;
}

// ---------------- endomorphism operad ----------------

namespace {

std::vector<int> unflatten(int flat, int base, int len) {
  std::vector<int> out(len);
  for (int j = len - 1; j >= 0; --j) {
    out[j] = flat % base;
    flat /= base;
  }
  return out;
}

int flatten(const std::vector<int>& idx, int base) {
  int f = 0;
  for (int v : idx) f = f * base + v;
  return f;
}

}  // namespace

Operad endomorphism_operad(SpacePtr V, int max_arity) {
  int dv = V->dim();
  if (dv == 0) throw std::runtime_error("endomorphism operad of the zero space");
  Operad E;
  E.C = Collection(max_arity);
  std::vector<SpacePtr> spaces(max_arity + 1);
  for (int n = 1; n <= max_arity; ++n) {
    std::vector<std::pair<std::string, int>> basis;
    int pw = 1;
    for (int j = 0; j < n; ++j) pw *= dv;
    for (int fi = 0; fi < pw; ++fi) {
      std::vector<int> I = unflatten(fi, dv, n);
      int din = 0;
      std::string nm = "[";
      for (int j = 0; j < n; ++j) {
        din += V->degree(I[j]);
        if (j) nm += "|";
        nm += V->name(I[j]);
      }
      for (int o = 0; o < dv; ++o)
        basis.push_back({nm + "->" + V->name(o) + "]", V->degree(o) - din});
    }
    spaces[n] = GradedSpace::make(std::move(basis));
    E.C.set_space(n, spaces[n]);
  }
  // actions on the generators: (I,o).s = (K,o) with K[j] = I[s[j]], signed
  for (int n = 2; n <= max_arity; ++n) {
    for (int i = 0; i + 1 < n; ++i) {
      Perm s = perm_identity(n);
      std::swap(s[i], s[i + 1]);
      GradedMap a(spaces[n], spaces[n], 0);
      for (int col = 0; col < spaces[n]->dim(); ++col) {
        int o = col % dv;
        std::vector<int> I = unflatten(col / dv, dv, n);
        std::vector<int> K(n);
        std::vector<int> kd(n);
        for (int j = 0; j < n; ++j) {
          K[j] = I[s[j]];
          kd[j] = V->degree(K[j]);
        }
        a.set(flatten(K, dv) * dv + o, col, koszul_sign(s, kd));
      }
      E.C.set_transposition(n, i, std::move(a));
    }
  }
  // unit = sum_i (i -> i)
  for (int i = 0; i < dv; ++i) E.unit_vec.add(i * dv + i, 1);
  // composition by substitution
  E.set_comp_builder([V, dv, spaces](int n, int x, int m) {
    SpacePtr src = tensor_space({spaces[n], spaces[m]});
    GradedMap g(src, spaces[n + m - 1], 0);
    for (int a = 0; a < spaces[n]->dim(); ++a) {
      int o = a % dv;
      std::vector<int> I = unflatten(a / dv, dv, n);
      int sgn_base = 0;  // sum of input degrees left of the slot
      for (int j = 0; j < x - 1; ++j) sgn_base += V->degree(I[j]);
      for (int b = 0; b < spaces[m]->dim(); ++b) {
        int p = b % dv;
        if (I[x - 1] != p) continue;
        std::vector<int> J = unflatten(b / dv, dv, m);
        std::vector<int> K;
        K.reserve(n + m - 1);
        for (int j = 0; j < x - 1; ++j) K.push_back(I[j]);
        for (int q = 0; q < m; ++q) K.push_back(J[q]);
        for (int j = x; j < n; ++j) K.push_back(I[j]);
        int sgn = (spaces[m]->degree(b) * sgn_base) % 2 ? -1 : 1;
        g.add_to(flatten(K, dv) * dv + o, tensor_index({spaces[n], spaces[m]}, {a, b}),
                 sgn);
      }
    }
    return g;
  });
  return E;
}

GradedMap end_as_map(const Operad& E, SpacePtr V, int n, const SparseVec& v) {
  int dv = V->dim();
  std::vector<SpacePtr> fs(n, V);
  SpacePtr src = tensor_space(fs);
  if (v.is_zero()) return zero_map(src, V, 0);
  int deg = E.C.at(n)->degree(v.c.begin()->first);
  for (auto& [i, c] : v.c)
    if (E.C.at(n)->degree(i) != deg)
      throw std::runtime_error("end_as_map: inhomogeneous element");
  GradedMap f(src, V, deg);
  for (auto& [i, c] : v.c) f.add_to(i % dv, i / dv, c);
  return f;
}

SparseVec end_from_map(const Operad& E, int n, const GradedMap& f) {
  int dv = f.tgt()->dim();
  SparseVec v;
  for (auto& [rc, val] : f.entries()) v.add(rc.second * dv + rc.first, val);
  return v;
}

// ---------------- gamma over a planar tree ----------------

namespace {

// leaves under each vertex
std::vector<int> leaf_counts(const PlanarTree& t) {
  std::vector<int> lc(t.n_vertices(), 0);
  for (int v = t.n_vertices() - 1; v >= 0; --v)
    for (int e : t.verts[v].ch) lc[v] += PlanarTree::is_leaf(e) ? 1 : lc[PlanarTree::child_vertex(e)];
  return lc;
}

// gamma for the planar structure, inputs taken in planar leaf order
GradedMap gamma_std(const Operad& P, const PlanarTree& t, const std::vector<int>& lc, int v) {
  int a = t.arity(v);
  GradedMap M = identity_map(P.C.at(a));
  int cur = a, pos = 1;
  for (int e : t.verts[v].ch) {
    if (PlanarTree::is_leaf(e)) {
      pos += 1;
      continue;
    }
    int c = PlanarTree::child_vertex(e);
    GradedMap Mc = gamma_std(P, t, lc, c);
    M = compose(P.comp(cur, pos, lc[c]), tensor_maps({M, Mc}));
    cur += lc[c] - 1;
    pos += lc[c];
  }
  return M;
}

}  // namespace

GradedMap gamma_map(const Operad& P, const PlanarTree& t) {
  if (t.trivial()) {
    GradedMap u(tensor_space({}), P.C.at(1), 0);
    for (auto& [j, c] : P.unit_vec.c) u.add_to(j, 0, c);
    return u;
  }
  std::vector<int> lc = leaf_counts(t);
  GradedMap g = gamma_std(P, t, lc, 0);
  int n = t.n_leaves;
  std::vector<int> L = leaf_order(t);
  Perm L0(n);
  for (int p = 0; p < n; ++p) L0[p] = L[p] - 1;
  if (L0 != perm_identity(n)) g = compose(P.C.action(n, perm_inverse(L0)), g);
  return g;
}

// ---------------- free operad ----------------

namespace {

struct FreeData {
  Collection gen;  // the generating collection (with its actions)
  int N = 0;
  std::vector<std::vector<PlanarTree>> trees;                 // [arity]
  std::vector<std::vector<FreeOperadBasis::Elem>> elems;      // [arity]
  std::vector<std::map<std::pair<std::string, std::vector<int>>, int>> index;
  std::vector<SpacePtr> space;                                // [arity]

  int lookup(int arity, const std::string& enc, const std::vector<int>& dec) const {
    auto it = index[arity].find({enc, dec});
    if (it == index[arity].end())
      throw std::runtime_error("free operad: unknown basis element " + enc);
    return it->second;
  }

  // the class of (t, dec) in the canonical basis, scaled by coeff
  void add_transported(const PlanarTree& t, const std::vector<int>& dec,
                       const Rational& coeff, SparseVec* out) const {
    if (t.trivial()) {
      out->add(0, coeff);  // arity-1 unit
      return;
    }
    auto [tc, r] = canonicalize(t);
    std::string enc = encode(tc);
    int nv = t.n_vertices();
    std::vector<int> degs(nv);
    for (int i = 0; i < nv; ++i) degs[i] = gen.at(t.arity(i))->degree(dec[i]);
    Rational c = coeff * koszul_sign(r.vperm, degs);
    // per-vertex transported decorations (each a sparse vector)
    std::vector<SparseVec> tdec(nv);
    for (int i = 0; i < nv; ++i) {
      int a = t.arity(i);
      tdec[i] = r.cperm[i] == perm_identity(a)
                    ? SparseVec{{{dec[i], 1}}}
                    : gen.action(a, perm_inverse(r.cperm[i])).apply_basis(dec[i]);
    }
    // expand the product over vertices; decoration position i lands at
    // tc vertex r.vperm[i]
    std::vector<int> cd(nv);
    std::function<void(int, Rational)> rec = [&](int i, Rational acc) {
      if (i == nv) {
        out->add(lookup(t.n_leaves, enc, cd), acc);
        return;
      }
      for (auto& [b, val] : tdec[i].c) {
        cd[r.vperm[i]] = b;
        rec(i + 1, acc * val);
      }
    };
    rec(0, c);
  }
};

}  // namespace

Operad free_operad(const Collection& C, int max_arity, FreeOperadBasis* basis_out) {
  if (C.at(1)->dim() > 0)
    throw std::runtime_error("free operad: arity-1 generators are not supported");
  auto D = std::make_shared<FreeData>();
  D->gen = C;
  D->N = max_arity;
  D->trees.resize(max_arity + 1);
  D->elems.resize(max_arity + 1);
  D->index.resize(max_arity + 1);
  D->space.resize(max_arity + 1, zero_space());
  std::vector<int> arities;
  for (int a = 2; a <= C.max_arity(); ++a)
    if (C.at(a)->dim() > 0) arities.push_back(a);

  for (int n = 1; n <= max_arity; ++n) {
    std::vector<std::pair<std::string, int>> basis;
    if (n == 1) {
      D->trees[1].push_back(trivial_tree());
      D->elems[1].push_back({encode(trivial_tree()), {}});
      D->index[1][{encode(trivial_tree()), {}}] = 0;
      basis.push_back({"1", 0});
    }
    for (const PlanarTree& t : enumerate_trees(n, std::max(1, n - 1), arities)) {
      std::string enc = encode(t);
      int nv = t.n_vertices();
      std::vector<int> dims(nv);
      for (int v = 0; v < nv; ++v) dims[v] = C.at(t.arity(v))->dim();
      std::vector<int> dec(nv, 0);
      while (true) {
        int deg = 0;
        std::string nm = enc + "#";
        for (int v = 0; v < nv; ++v) {
          deg += C.at(t.arity(v))->degree(dec[v]);
          if (v) nm += ",";
          nm += C.at(t.arity(v))->name(dec[v]);
        }
        D->index[n][{enc, dec}] = (int)basis.size();
        D->elems[n].push_back({enc, dec});
        basis.push_back({nm, deg});
        // next decoration tuple
        int v = nv - 1;
        while (v >= 0 && ++dec[v] == dims[v]) dec[v--] = 0;
        if (v < 0) break;
      }
      D->trees[n].push_back(t);
    }
    D->space[n] = GradedSpace::make(std::move(basis));
  }

  Operad F;
  F.C = Collection(max_arity);
  for (int n = 1; n <= max_arity; ++n) F.C.set_space(n, D->space[n]);
  F.unit_vec.add(0, 1);

  // actions: relabel leaves, transport back to the canonical basis
  for (int n = 2; n <= max_arity; ++n) {
    for (int i = 0; i + 1 < n; ++i) {
      Perm s = perm_identity(n);
      std::swap(s[i], s[i + 1]);
      GradedMap a(D->space[n], D->space[n], 0);
      for (int col = 0; col < D->space[n]->dim(); ++col) {
        const auto& el = D->elems[n][col];
        SparseVec img;
        D->add_transported(relabel(decode_tree(el.tree), s), el.dec, 1, &img);
        for (auto& [row, val] : img.c) a.add_to(row, col, val);
      }
      F.C.set_transposition(n, i, std::move(a));
    }
  }

  F.set_comp_builder([D](int n, int x, int m) {
    SpacePtr src = tensor_space({D->space[n], D->space[m]});
    GradedMap g(src, D->space[n + m - 1], 0);
    for (int a = 0; a < D->space[n]->dim(); ++a) {
      const auto& ea = D->elems[n][a];
      PlanarTree t = decode_tree(ea.tree);
      for (int b = 0; b < D->space[m]->dim(); ++b) {
        const auto& eb = D->elems[m][b];
        PlanarTree s = decode_tree(eb.tree);
        std::vector<int> origin;
        PlanarTree g0 = graft(s, t, x, &origin);
        int nt = t.n_vertices(), ns = s.n_vertices(), nv = g0.n_vertices();
        // interleave: factor p of (dec_t, dec_s) lands at DF slot of g0
        Perm sigma(nv);
        std::vector<int> dec0(nv), degs(nt + ns);
        for (int gv = 0; gv < nv; ++gv) {
          int o = origin[gv];
          int p = o >= 0 ? o : nt + ~o;
          sigma[p] = gv;
          dec0[gv] = o >= 0 ? ea.dec[o] : eb.dec[~o];
          degs[p] = D->gen.at(g0.arity(gv))->degree(dec0[gv]);
        }
        SparseVec img;
        D->add_transported(g0, dec0, koszul_sign(sigma, degs), &img);
        int col = tensor_index({D->space[n], D->space[m]}, {a, b});
        for (auto& [row, val] : img.c) g.add_to(row, col, val);
      }
    }
    return g;
  });

  if (basis_out) {
    basis_out->elems = D->elems;
    basis_out->trees = D->trees;
  }
  return F;
}

// ---------------- presented operads ----------------

namespace {

// collection of free generators from a presentation
Collection presentation_collection(const OperadPresentation& pres, int max_arity,
                                   std::map<std::string, std::pair<int, int>>* gen_pos) {
  // gen_pos: name -> (arity, first basis index)
  int top = 2;
  for (auto& g : pres.generators) top = std::max(top, g.arity);
  Collection C(std::max(top, max_arity));
  std::vector<std::vector<std::pair<std::string, int>>> basis(C.max_arity() + 1);
  std::vector<std::vector<const OperadPresentation::Generator*>> gens_by_index;
  for (auto& g : pres.generators) {
    if (g.arity < 2) throw std::runtime_error("generator arity must be >= 2: " + g.name);
    if (g.action != OperadPresentation::Generator::REGULAR && g.arity != 2)
      throw std::runtime_error("(anti)symmetric generators must be binary: " + g.name);
    (*gen_pos)[g.name] = {g.arity, (int)basis[g.arity].size()};
    if (g.action == OperadPresentation::Generator::REGULAR) {
      for (const Perm& s : all_perms(g.arity)) {
        std::string nm = g.name + ".";
        for (int v : s) nm += std::to_string(v + 1);
        basis[g.arity].push_back({nm, g.degree});
      }
    } else {
      basis[g.arity].push_back({g.name, g.degree});
    }
  }
  for (int n = 1; n <= C.max_arity(); ++n)
    C.set_space(n, GradedSpace::make(basis[n]));
  // actions
  for (int n = 2; n <= C.max_arity(); ++n) {
    if (C.at(n)->dim() == 0) continue;
    for (int i = 0; i + 1 < n; ++i) {
      Perm si = perm_identity(n);
      std::swap(si[i], si[i + 1]);
      GradedMap a(C.at(n), C.at(n), 0);
      for (auto& g : pres.generators) {
        if (g.arity != n) continue;
        int base = (*gen_pos)[g.name].second;
        if (g.action == OperadPresentation::Generator::REGULAR) {
          auto perms = all_perms(n);
          std::map<Perm, int> pidx;
          for (int k = 0; k < (int)perms.size(); ++k) pidx[perms[k]] = k;
          for (int k = 0; k < (int)perms.size(); ++k)
            a.set(base + pidx[perm_compose(perms[k], si)], base + k, 1);
        } else {
          a.set(base, base, g.action == OperadPresentation::Generator::SYMMETRIC ? 1 : -1);
        }
      }
      C.set_transposition(n, i, std::move(a));
    }
  }
  return C;
}

// parse a decorated monomial "(gen child child ...)"; children are leaf
// labels or nested monomials
struct MonNode {
  std::string gen;
  std::vector<int> leaf_children;  // interleaved via order below
  std::vector<std::pair<bool, int>> order;  // (is_leaf, index into leaves/subs)
  std::vector<MonNode> subs;
};

MonNode parse_monomial(const std::string& s, size_t* pos) {
  auto skip = [&] { while (*pos < s.size() && s[*pos] == ' ') ++*pos; };
  skip();
  if (*pos >= s.size() || s[*pos] != '(')
    throw std::runtime_error("monomial: expected '(' in " + s);
  ++*pos;
  skip();
  MonNode n;
  while (*pos < s.size() && s[*pos] != ' ' && s[*pos] != '(' && s[*pos] != ')')
    n.gen += s[(*pos)++];
  if (n.gen.empty()) throw std::runtime_error("monomial: missing generator name in " + s);
  skip();
  while (*pos < s.size() && s[*pos] != ')') {
    if (s[*pos] == '(') {
      n.order.push_back({false, (int)n.subs.size()});
      n.subs.push_back(parse_monomial(s, pos));
    } else {
      int v = 0;
      bool any = false;
      while (*pos < s.size() && isdigit((unsigned char)s[*pos])) {
        v = v * 10 + (s[*pos] - '0');
        ++*pos;
        any = true;
      }
      if (!any) throw std::runtime_error("monomial: bad token in " + s);
      n.order.push_back({true, (int)n.leaf_children.size()});
      n.leaf_children.push_back(v);
    }
    skip();
  }
  if (*pos >= s.size()) throw std::runtime_error("monomial: missing ')' in " + s);
  ++*pos;
  return n;
}

void flatten_monomial(const MonNode& n, PlanarTree* t, std::vector<std::string>* gens) {
  int me = (int)t->verts.size();
  t->verts.push_back({});
  gens->push_back(n.gen);
  for (auto& [is_leaf, k] : n.order) {
    if (is_leaf) {
      t->verts[me].ch.push_back(n.leaf_children[k]);
      t->n_leaves = std::max(t->n_leaves, n.leaf_children[k]);
    } else {
      int cv = (int)t->verts.size();
      t->verts[me].ch.push_back(~cv);
      flatten_monomial(n.subs[k], t, gens);
    }
  }
}

struct QuotientData {
  std::shared_ptr<Operad> T;
  std::vector<SpanBuilder> ideal;           // [arity]
  std::vector<std::map<int, int>> pivrow;   // pivot col -> row, per arity
  std::vector<GradedMap> pi, sec;           // [arity]
  std::vector<SpacePtr> qspace;

  SparseVec reduce_full(int n, SparseVec v) const {
    const auto& rows = ideal[n].rows();
    const auto& pr = pivrow[n];
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto& [i, val] : v.c) {
        auto it = pr.find(i);
        if (it == pr.end()) continue;
        const SparseVec& row = rows[it->second];
        v.add(row, -val / row.c.begin()->second);
        changed = true;
        break;
      }
    }
    return v;
  }
};

}  // namespace

Operad presented_operad(const OperadPresentation& pres, int max_arity) {
  std::map<std::string, std::pair<int, int>> gen_pos;
  Collection C = presentation_collection(pres, max_arity, &gen_pos);
  FreeOperadBasis B;
  auto T = std::make_shared<Operad>(free_operad(C, max_arity, &B));

  auto D = std::make_shared<QuotientData>();
  D->T = T;
  D->ideal.resize(max_arity + 1);
  D->pivrow.resize(max_arity + 1);
  D->pi.resize(max_arity + 1);
  D->sec.resize(max_arity + 1);
  D->qspace.resize(max_arity + 1, zero_space());

  // the T-basis index of a decorated corolla (corollas are canonical)
  auto corolla_index = [&](int a, int dec) {
    std::string enc = encode(corolla(a));
    for (int k = 0; k < (int)B.elems[a].size(); ++k)
      if (B.elems[a][k].tree == enc && B.elems[a][k].dec == std::vector<int>{dec})
        return k;
    throw std::runtime_error("presented operad: corolla not in free basis");
  };

  // element of T for a decorated planar monomial: gamma over the tree
  // applied to the tensor of corolla classes
  auto monomial_vec = [&](const OperadPresentation::Term& term, int* arity) {
    size_t pos = 0;
    MonNode mn = parse_monomial(term.tree, &pos);
    PlanarTree t;
    std::vector<std::string> gens;
    flatten_monomial(mn, &t, &gens);
    if (!df_ordered(t)) throw std::runtime_error("monomial: not depth-first");
    std::vector<int> seen = leaf_order(t);
    std::sort(seen.begin(), seen.end());
    for (int i = 0; i < (int)seen.size(); ++i)
      if (seen[i] != i + 1)
        throw std::runtime_error("monomial: leaf labels must be 1..n: " + term.tree);
    std::vector<int> dec(t.n_vertices());
    for (int v = 0; v < t.n_vertices(); ++v) {
      auto it = gen_pos.find(gens[v]);
      if (it == gen_pos.end())
        throw std::runtime_error("monomial: unknown generator " + gens[v]);
      auto [ga, base] = it->second;
      if (ga != t.arity(v))
        throw std::runtime_error("monomial: arity mismatch at " + gens[v]);
      dec[v] = base;  // identity decoration for REGULAR, the element otherwise
    }
    *arity = t.n_leaves;
    GradedMap gm = gamma_map(*D->T, t);
    std::vector<SpacePtr> fac;
    std::vector<int> tidx;
    for (int v = 0; v < t.n_vertices(); ++v) {
      int a = t.arity(v);
      fac.push_back(D->T->C.at(a));
      tidx.push_back(corolla_index(a, dec[v]));
    }
    SparseVec arg;
    arg.add(tensor_index(fac, tidx), 1);
    return gm.apply(arg);
  };

  // insert relations and saturate the operadic ideal
  std::deque<std::pair<int, SparseVec>> work;
  auto push = [&](int n, const SparseVec& v) {
    if (n > max_arity || v.is_zero()) return;
    SparseVec r = D->ideal[n].reduce(v);
    if (r.is_zero()) return;
    D->ideal[n].insert(r);
    const SparseVec& row = D->ideal[n].rows().back();
    D->pivrow[n][row.c.begin()->first] = D->ideal[n].dim() - 1;
    work.push_back({n, r});
  };

  for (auto& rel : pres.relations) {
    int arity = -1;
    SparseVec v;
    for (auto& term : rel) {
      int a = 0;
      SparseVec tv = monomial_vec(term, &a);
      if (arity < 0) arity = a;
      if (arity != a) throw std::runtime_error("relation mixes arities");
      v.add(tv, term.coeff);
    }
    if (arity > 0) push(arity, v);
  }

  while (!work.empty()) {
    auto [p, v] = work.front();
    work.pop_front();
    // S-closure
    for (int i = 0; i + 1 < p; ++i) push(p, T->C.transposition(p, i).apply(v));
    // compositions with the free basis, both sides
    for (int q = 2; p + q - 1 <= max_arity; ++q) {
      SpacePtr Tp = T->C.at(p), Tq = T->C.at(q);
      for (int x = 1; x <= p; ++x) {
        const GradedMap& g = T->comp(p, x, q);
        for (int j = 0; j < Tq->dim(); ++j) {
          SparseVec arg;
          for (auto& [i, val] : v.c) arg.add(tensor_index({Tp, Tq}, {i, j}), val);
          push(p + q - 1, g.apply(arg));
        }
      }
      for (int x = 1; x <= q; ++x) {
        const GradedMap& g = T->comp(q, x, p);
        for (int j = 0; j < Tq->dim(); ++j) {
          SparseVec arg;
          for (auto& [i, val] : v.c) arg.add(tensor_index({Tq, Tp}, {j, i}), val);
          push(p + q - 1, g.apply(arg));
        }
      }
    }
  }

  // quotient spaces and projections
  Operad Q;
  Q.C = Collection(max_arity);
  for (int n = 1; n <= max_arity; ++n) {
    SpacePtr Tn = T->C.at(n);
    std::vector<int> qb;
    for (int j = 0; j < Tn->dim(); ++j)
      if (!D->pivrow[n].count(j)) qb.push_back(j);
    std::vector<std::pair<std::string, int>> basis;
    for (int j : qb) basis.push_back({Tn->name(j), Tn->degree(j)});
    D->qspace[n] = GradedSpace::make(std::move(basis));
    Q.C.set_space(n, D->qspace[n]);
    std::map<int, int> qpos;
    for (int k = 0; k < (int)qb.size(); ++k) qpos[qb[k]] = k;
    D->sec[n] = GradedMap(D->qspace[n], Tn, 0);
    for (int k = 0; k < (int)qb.size(); ++k) D->sec[n].set(qb[k], k, 1);
    D->pi[n] = GradedMap(Tn, D->qspace[n], 0);
    for (int j = 0; j < Tn->dim(); ++j) {
      SparseVec e;
      e.add(j, 1);
      for (auto& [i, val] : D->reduce_full(n, e).c) D->pi[n].add_to(qpos.at(i), j, val);
    }
  }
  for (int n = 2; n <= max_arity; ++n)
    for (int i = 0; i + 1 < n; ++i)
      Q.C.set_transposition(
          n, i, compose(D->pi[n], compose(T->C.transposition(n, i), D->sec[n])));
  Q.unit_vec = D->pi[1].apply(T->unit_vec);
  Q.set_comp_builder([D](int n, int x, int m) {
    return compose(D->pi[n + m - 1],
                   compose(D->T->comp(n, x, m),
                           tensor_maps({D->sec[n], D->sec[m]})));
  });
  return Q;
}

// ---------------- builtin models ----------------

Operad ass_operad(int max_arity) {
  Operad A;
  A.C = Collection(max_arity);
  std::vector<std::vector<Perm>> words(max_arity + 1);
  std::vector<std::map<Perm, int>> widx(max_arity + 1);
  for (int n = 1; n <= max_arity; ++n) {
    words[n] = all_perms(n);
    std::vector<std::pair<std::string, int>> basis;
    for (int k = 0; k < (int)words[n].size(); ++k) {
      widx[n][words[n][k]] = k;
      std::string nm;
      for (int v : words[n][k]) nm += std::to_string(v + 1);
      basis.push_back({nm, 0});
    }
    A.C.set_space(n, GradedSpace::make(std::move(basis)));
  }
  for (int n = 2; n <= max_arity; ++n) {
    for (int i = 0; i + 1 < n; ++i) {
      Perm si = perm_identity(n);
      std::swap(si[i], si[i + 1]);
      Perm si_inv = si;  // transpositions are involutions
      GradedMap a(A.C.at(n), A.C.at(n), 0);
      for (int k = 0; k < (int)words[n].size(); ++k)
        a.set(widx[n].at(perm_compose(si_inv, words[n][k])), k, 1);
      A.C.set_transposition(n, i, std::move(a));
    }
  }
  A.unit_vec.add(0, 1);
  auto sp = std::make_shared<std::vector<std::vector<Perm>>>(words);
  auto ix = std::make_shared<std::vector<std::map<Perm, int>>>(widx);
  std::vector<SpacePtr> spaces(max_arity + 1);
  for (int n = 1; n <= max_arity; ++n) spaces[n] = A.C.at(n);
  A.set_comp_builder([sp, ix, spaces](int n, int x, int m) {
    SpacePtr Sn = spaces[n], Sm = spaces[m];
    GradedMap g(tensor_space({Sn, Sm}), spaces[n + m - 1], 0);
    int x0 = x - 1;
    for (int a = 0; a < (int)(*sp)[n].size(); ++a) {
      const Perm& w = (*sp)[n][a];
      for (int b = 0; b < (int)(*sp)[m].size(); ++b) {
        const Perm& u = (*sp)[m][b];
        Perm r;
        r.reserve(n + m - 1);
        for (int p = 0; p < n; ++p) {
          if (w[p] == x0)
            for (int q = 0; q < m; ++q) r.push_back(u[q] + x0);
          else
            r.push_back(w[p] < x0 ? w[p] : w[p] + m - 1);
        }
        g.set((*ix)[n + m - 1].at(r), tensor_index({Sn, Sm}, {a, b}), 1);
      }
    }
    return g;
  });
  return A;
}

Operad com_operad(int max_arity) {
  Operad P;
  P.C = Collection(max_arity);
  for (int n = 1; n <= max_arity; ++n)
    P.C.set_space(n, GradedSpace::make({{"c", 0}}));
  for (int n = 2; n <= max_arity; ++n)
    for (int i = 0; i + 1 < n; ++i)
      P.C.set_transposition(n, i, identity_map(P.C.at(n)));
  P.unit_vec.add(0, 1);
  std::vector<SpacePtr> spaces(max_arity + 1);
  for (int n = 1; n <= max_arity; ++n) spaces[n] = P.C.at(n);
  P.set_comp_builder([spaces](int n, int x, int m) {
    GradedMap g(tensor_space({spaces[n], spaces[m]}), spaces[n + m - 1], 0);
    g.set(0, 0, 1);
    return g;
  });
  return P;
}

Operad lie_operad(int max_arity) {
  OperadPresentation p;
  p.generators.push_back(
      {"b", 2, 0, OperadPresentation::Generator::ANTISYMMETRIC});
  p.relations.push_back({{1, "(b (b 1 2) 3)"},
                         {1, "(b (b 2 3) 1)"},
                         {1, "(b (b 3 1) 2)"}});
  return presented_operad(p, max_arity);
}

// ---------------- operad maps ----------------

CheckReport check_operad_map(const Operad& P, const Operad& Q, const OperadMap& m) {
  CheckReport rep;
  int N = std::min(P.C.max_arity(), Q.C.max_arity());
  if ((int)m.f.size() < N + 1) {
    rep.fail("operad map: missing arity components");
    return rep;
  }
  for (int n = 1; n <= N; ++n) {
    if (m.f[n].deg() != 0) {
      rep.fail("operad map: component at arity " + std::to_string(n) +
               " has nonzero degree");
      return rep;
    }
  }
  // unit
  if (!(m.f[1].apply(P.unit_vec) == Q.unit_vec)) rep.fail("operad map: unit not preserved");
  // actions
  for (int n = 2; n <= N && rep.ok; ++n)
    for (int i = 0; i + 1 < n; ++i)
      if (!same_matrix(compose(m.f[n], P.C.transposition(n, i)),
                       compose(Q.C.transposition(n, i), m.f[n])))
        rep.fail("operad map: not equivariant at arity " + std::to_string(n));
  // compositions
  for (int n = 1; n <= N && rep.ok; ++n)
    for (int mm = 1; n + mm - 1 <= N && rep.ok; ++mm)
      for (int x = 1; x <= n; ++x)
        if (!same_matrix(compose(m.f[n + mm - 1], P.comp(n, x, mm)),
                         compose(Q.comp(n, x, mm), tensor_maps({m.f[n], m.f[mm]}))))
          rep.fail("operad map: composition not preserved at comp(" + std::to_string(n) +
                   "," + std::to_string(x) + "," + std::to_string(mm) + ")");
  // differentials
  for (int n = 1; n <= N && rep.ok; ++n)
    if (P.C.has_diff(n) || Q.C.has_diff(n))
      if (!same_matrix(compose(m.f[n], P.C.d(n)), compose(Q.C.d(n), m.f[n])))
        rep.fail("operad map: does not commute with d at arity " + std::to_string(n));
  return rep;
}

OperadMap algebra_structure_map(const Operad& ass, const Operad& endv,
                                const GradedMap& mu) {
  SpacePtr V = mu.tgt();
  if (mu.deg() != 0) throw std::runtime_error("algebra product must have degree 0");
  int N = std::min(ass.C.max_arity(), endv.C.max_arity());
  OperadMap out;
  out.f.resize(N + 1);
  // left-normed products
  std::vector<GradedMap> M(N + 1);
  M[1] = identity_map(V);
  for (int n = 2; n <= N; ++n)
    M[n] = compose(mu, tensor_maps({M[n - 1], identity_map(V)}));
  for (int n = 1; n <= N; ++n) {
    SpacePtr An = ass.C.at(n);
    GradedMap fn(An, endv.C.at(n), 0);
    std::vector<SpacePtr> fac(n, V);
    for (int k = 0; k < An->dim(); ++k) {
      // recover the word from its name (digits)
      const std::string& nm = An->name(k);
      Perm w(n);
      for (int p = 0; p < n; ++p) w[p] = nm[p] - '1';
      GradedMap fw = n == 1 ? M[1]
                            : compose(M[n], permute_factors(perm_inverse(w), fac));
      SparseVec img = end_from_map(endv, n, fw);
      for (auto& [row, val] : img.c) fn.add_to(row, k, val);
    }
    out.f[n] = std::move(fn);
  }
  return out;
}

}  // namespace opdh
