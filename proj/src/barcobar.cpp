#include "opdh/cooperad.hpp"

#include <stdexcept>

namespace opdh {

namespace {

std::vector<int> unflatten(const std::vector<SpacePtr>& fs, int flat) {
  std::vector<int> idx(fs.size());
  for (int k = (int)fs.size() - 1; k >= 0; --k) {
    idx[k] = flat % fs[k]->dim();
    flat /= fs[k]->dim();
  }
  return idx;
}

// degree-p map with identity entries V -> V[p]
GradedMap susp_down(SpacePtr v, SpacePtr vp, int p) {
  GradedMap m(v, vp, p);
  for (int i = 0; i < v->dim(); ++i) m.set(i, i, 1);
  return m;
}

// inverse, degree -p: V[p] -> V
GradedMap susp_up(SpacePtr vp, SpacePtr v, int p) {
  GradedMap m(vp, v, -p);
  for (int i = 0; i < v->dim(); ++i) m.set(i, i, 1);
  return m;
}

}  // namespace

const GradedMap& Cooperad::decomp(int n, int i, int m) const {
  if (n < 1 || m < 1 || i < 1 || i > n || n + m - 1 > C.max_arity())
    throw std::runtime_error("decomp: indices out of range");
  auto key = std::make_tuple(n, i, m);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  GradedMap g = builder_ ? builder_(n, i, m)
                         : zero_map(C.at(n + m - 1), tensor_space({C.at(n), C.at(m)}), 0);
  return cache_.emplace(key, std::move(g)).first->second;
}

GradedMap adjoint_map(const GradedMap& f, SpacePtr new_src, SpacePtr new_tgt) {
  GradedMap out(new_src, new_tgt, f.deg());
  for (auto& [rc, v] : f.entries()) out.set(rc.second, rc.first, v);
  return out;
}

SpacePtr dual_space(SpacePtr v) {
  std::vector<std::pair<std::string, int>> b;
  for (int i = 0; i < v->dim(); ++i) b.push_back({v->name(i), -v->degree(i)});
  return GradedSpace::make(std::move(b));
}

Operad transpose_operad(const Cooperad& A) {
  int N = A.C.max_arity();
  std::vector<SpacePtr> dual(N + 1, zero_space());
  for (int n = 1; n <= N; ++n) dual[n] = dual_space(A.C.at(n));
  Operad P;
  P.C = Collection(N);
  for (int n = 1; n <= N; ++n) P.C.set_space(n, dual[n]);
  for (int n = 2; n <= N; ++n)
    for (int i = 0; i + 1 < n; ++i)
      P.C.set_transposition(
          n, i,
          adjoint_map(A.C.transposition(n, i), dual[n], dual[n]));
  for (int n = 1; n <= N; ++n)
    if (A.C.has_diff(n))
      P.C.set_diff(n, adjoint_map(A.C.d(n), dual[n], dual[n]));
  // unit = dual of the counit functional
  for (auto& [rc, v] : A.counit.entries()) P.unit_vec.add(rc.second, v);
  auto Ap = std::make_shared<Cooperad>(A);
  P.set_comp_builder([Ap, dual](int n, int x, int m) {
    return adjoint_map(Ap->decomp(n, x, m),
                       tensor_space({dual[n], dual[m]}), dual[n + m - 1]);
  });
  return P;
}

Cooperad transpose_cooperad(const Operad& P) {
  int N = P.C.max_arity();
  std::vector<SpacePtr> dual(N + 1, zero_space());
  for (int n = 1; n <= N; ++n) dual[n] = dual_space(P.C.at(n));
  Cooperad A;
  A.C = Collection(N);
  for (int n = 1; n <= N; ++n) A.C.set_space(n, dual[n]);
  for (int n = 2; n <= N; ++n)
    for (int i = 0; i + 1 < n; ++i)
      A.C.set_transposition(
          n, i,
          adjoint_map(P.C.transposition(n, i), dual[n], dual[n]));
  for (int n = 1; n <= N; ++n)
    if (P.C.has_diff(n))
      A.C.set_diff(n, adjoint_map(P.C.d(n), dual[n], dual[n]));
  A.counit = GradedMap(dual[1], tensor_space({}), 0);
  for (auto& [i, v] : P.unit_vec.c) {
    A.counit.set(0, i, v);
    A.coaug.add(i, v);
  }
  auto Pp = std::make_shared<Operad>(P);
  A.set_decomp_builder([Pp, dual](int n, int x, int m) {
    return adjoint_map(Pp->comp(n, x, m), dual[n + m - 1],
                       tensor_space({dual[n], dual[m]}));
  });
  return A;
}

CheckReport check_cooperad_axioms(const Cooperad& A) {
  CheckReport rep = check_collection(A.C);
  if (!rep.ok) return rep;
  // counit laws: counit . coaug = 1
  SparseVec e = A.counit.apply(A.coaug);
  SparseVec one;
  one.add(0, 1);
  if (!(e == one)) {
    rep.fail("counit(coaug) != 1");
    return rep;
  }
  rep.merge(check_operad_axioms(transpose_operad(A)));
  return rep;
}

Cooperad cofree_cooperad(const Collection& C, int max_arity, FreeOperadBasis* basis_out) {
  auto F = std::make_shared<Operad>(free_operad(C, max_arity, basis_out));
  Cooperad A;
  A.C = F->C;
  A.counit = GradedMap(A.C.at(1), tensor_space({}), 0);
  A.counit.set(0, 0, 1);  // coefficient of the trivial-tree class
  A.coaug.add(0, 1);
  // cocomposition dual to grafting on the self-dual decorated-tree basis
  A.set_decomp_builder([F](int n, int x, int m) {
    return adjoint_map(F->comp(n, x, m), F->C.at(n + m - 1),
                       tensor_space({F->C.at(n), F->C.at(m)}));
  });
  return A;
}

GradedMap delta_map(const Cooperad& A, const PlanarTree& t) {
  Operad P = transpose_operad(A);
  GradedMap g = gamma_map(P, t);
  std::vector<SpacePtr> fs;
  for (int v = 0; v < t.n_vertices(); ++v) fs.push_back(A.C.at(t.arity(v)));
  return adjoint_map(g, A.C.at(t.n_leaves), tensor_space(fs));
}

int free_corolla_index(const FreeOperadBasis& B, int arity, int gen) {
  std::string enc = encode(corolla(arity));
  for (int i = 0; i < (int)B.elems[arity].size(); ++i)
    if (B.elems[arity][i].tree == enc && B.elems[arity][i].dec == std::vector<int>{gen})
      return i;
  throw std::runtime_error("free basis: corolla element not found");
}

namespace {

// Differential of the tree coalgebra on generators G(n) = P(n) desuspended:
// edge contraction through gamma plus the internal differential of P,
// extended over the decorated-tree basis of the free operad F on G.
std::vector<GradedMap> bar_tree_diff(const Operad& P,
                                     const std::vector<SpacePtr>& G,
                                     const Operad& F,
                                     const FreeOperadBasis& B) {
  int N = P.C.max_arity();
  std::vector<GradedMap> dfull(N + 1);
  for (int n = 1; n <= N; ++n) {
    GradedMap d(F.C.at(n), F.C.at(n), 1);
    for (int col = 0; col < F.C.at(n)->dim(); ++col) {
      const auto& el = B.elems[n][col];
      PlanarTree t = decode_tree(el.tree);
      if (t.trivial()) continue;
      int nv = t.n_vertices();
      std::vector<int> gdeg(nv);
      for (int v = 0; v < nv; ++v) gdeg[v] = G[t.arity(v)]->degree(el.dec[v]);
      SparseVec total;
      for (const auto& vs : connected_subtrees(t)) {
        if ((int)vs.size() > 2) continue;
        int merged = -1;
        PlanarTree sub = extract_subtree(t, vs);
        PlanarTree tq = contract(t, vs, &merged);
        // sign: permute factors into collapsed order, then move the odd
        // operation past the factors standing before the merged slot
        std::vector<char> in_vs(nv, 0);
        for (int v : vs) in_vs[v] = 1;
        std::vector<int> order;  // t-vertices in collapsed order
        std::vector<int> group_of(nv);
        {
          int k = 0;
          for (int v = 0; v < nv; ++v) {
            if (v == vs[0]) {
              for (int w : vs) { order.push_back(w); group_of[w] = k; }
              ++k;
            } else if (!in_vs[v]) {
              order.push_back(v);
              group_of[v] = k++;
            }
          }
        }
        Perm sigma(nv);
        for (int p = 0; p < nv; ++p) sigma[order[p]] = p;
        int sign = koszul_sign(sigma, gdeg);
        int before = 0;
        for (int v = 0; v < nv; ++v)
          if (group_of[v] < group_of[vs[0]]) before += gdeg[v];
        if (before & 1) sign = -sign;
        // the value of the collapsed vertex in the generator space
        SparseVec w;
        if (vs.size() == 1) {
          int a = t.arity(vs[0]);
          if (!P.C.has_diff(a)) continue;
          w = shift_map(P.C.d(a), -1).apply_basis(el.dec[vs[0]]);
        } else {
          int ap = t.arity(vs[0]), ac = t.arity(vs[1]);
          GradedMap op1 =
              compose(susp_down(P.C.at(sub.n_leaves), G[sub.n_leaves], -1),
                      compose(gamma_map(P, sub),
                              tensor_maps({susp_up(G[ap], P.C.at(ap), -1),
                                           susp_up(G[ac], P.C.at(ac), -1)})));
          SparseVec arg;
          arg.add(el.dec[vs[0]] * G[ac]->dim() + el.dec[vs[1]], 1);
          w = op1.apply(arg);
        }
        if (w.is_zero()) continue;
        // class of the collapsed decorated tree via gamma on corolla classes
        std::vector<int> corr;
        for (int v = 0; v < nv; ++v) {
          if (v == vs[0]) corr.push_back(-1);
          else if (!in_vs[v]) corr.push_back(v);
        }
        std::vector<SpacePtr> tqf;
        for (int k = 0; k < tq.n_vertices(); ++k) tqf.push_back(F.C.at(tq.arity(k)));
        GradedMap g = gamma_map(F, tq);
        for (auto& [gi, gc] : w.c) {
          std::vector<int> idx(tq.n_vertices());
          for (int k = 0; k < tq.n_vertices(); ++k) {
            if (corr[k] == -1)
              idx[k] = free_corolla_index(B, sub.n_leaves, gi);
            else
              idx[k] = free_corolla_index(B, t.arity(corr[k]), el.dec[corr[k]]);
          }
          SparseVec arg;
          arg.add(tensor_index(tqf, idx), 1);
          total.add(g.apply(arg), gc * sign);
        }
      }
      for (auto& [row, val] : total.c) d.add_to(row, col, val);
    }
    dfull[n] = std::move(d);
  }
  return dfull;
}

}  // namespace

BarCooperad bar(const Operad& P, int max_weight) {
  int N = P.C.max_arity();
  if (P.C.at(1)->dim() != 1 || P.unit_vec.c.size() != 1 ||
      P.C.at(1)->degree(0) != 0)
    throw std::runtime_error("bar: operad must be augmented and 1-reduced");
  if (max_weight < 1) throw std::runtime_error("bar: max_weight must be >= 1");

  // generators: the desuspended augmentation ideal, n >= 2
  Collection gen(N);
  std::vector<SpacePtr> G(N + 1, zero_space());
  for (int n = 2; n <= N; ++n) {
    G[n] = shift_space(P.C.at(n), -1);
    gen.set_space(n, G[n]);
    if (G[n]->dim() == 0) continue;
    for (int i = 0; i + 1 < n; ++i)
      gen.set_transposition(n, i, shift_map(P.C.transposition(n, i), -1));
  }
  FreeOperadBasis B;
  Operad F = free_operad(gen, N, &B);
  std::vector<GradedMap> dfull = bar_tree_diff(P, G, F, B);

  // weight filtration
  BarCooperad R;
  R.max_weight = max_weight;
  R.weight.resize(N + 1);
  R.basis.elems.resize(N + 1);
  R.basis.trees.resize(N + 1);
  std::vector<GradedMap> inc(N + 1), pr(N + 1);
  Collection WC(N);
  for (int n = 1; n <= N; ++n) {
    std::vector<std::pair<std::string, int>> wb;
    std::vector<int> kept;
    SpacePtr full = F.C.at(n);
    for (int i = 0; i < full->dim(); ++i) {
      PlanarTree t = decode_tree(B.elems[n][i].tree);
      if (t.n_vertices() > max_weight) continue;
      kept.push_back(i);
      R.weight[n].push_back(t.n_vertices());
      R.basis.elems[n].push_back(B.elems[n][i]);
      wb.push_back({full->name(i), full->degree(i)});
    }
    SpacePtr ws = GradedSpace::make(std::move(wb));
    WC.set_space(n, ws);
    inc[n] = GradedMap(ws, full, 0);
    pr[n] = GradedMap(full, ws, 0);
    for (int k = 0; k < (int)kept.size(); ++k) {
      inc[n].set(kept[k], k, 1);
      pr[n].set(k, kept[k], 1);
    }
  }
  for (int n = 2; n <= N; ++n)
    for (int i = 0; i + 1 < n; ++i)
      WC.set_transposition(n, i,
                           compose(pr[n], compose(F.C.transposition(n, i), inc[n])));
  for (int n = 1; n <= N; ++n) {
    GradedMap d = compose(pr[n], compose(dfull[n], inc[n]));
    if (!d.is_zero()) WC.set_diff(n, std::move(d));
  }
  R.A.C = WC;
  R.A.counit = GradedMap(WC.at(1), tensor_space({}), 0);
  R.A.counit.set(0, 0, 1);
  R.A.coaug.add(0, 1);
  auto Fp = std::make_shared<Operad>(std::move(F));
  auto incp = std::make_shared<std::vector<GradedMap>>(inc);
  auto prp = std::make_shared<std::vector<GradedMap>>(pr);
  R.A.set_decomp_builder([Fp, incp, prp](int n, int x, int m) {
    GradedMap full = adjoint_map(
        Fp->comp(n, x, m), Fp->C.at(n + m - 1),
        tensor_space({Fp->C.at(n), Fp->C.at(m)}));
    return compose(tensor_maps({(*prp)[n], (*prp)[m]}),
                   compose(full, (*incp)[n + m - 1]));
  });
  // weight-one embedding of the generators
  R.gen_incl.resize(N + 1);
  R.gen_proj.resize(N + 1);
  for (int n = 1; n <= N; ++n) {
    R.gen_incl[n] = GradedMap(G[n], WC.at(n), 0);
    R.gen_proj[n] = GradedMap(WC.at(n), G[n], 0);
    if (n < 2) continue;
    for (int g = 0; g < G[n]->dim(); ++g) {
      int full_idx = free_corolla_index(B, n, g);
      // position within the filtered basis (weight 1 always kept)
      int k = -1;
      for (int j = 0; j < (int)R.basis.elems[n].size(); ++j)
        if (R.basis.elems[n][j].tree == B.elems[n][full_idx].tree &&
            R.basis.elems[n][j].dec == B.elems[n][full_idx].dec) {
          k = j;
          break;
        }
      R.gen_incl[n].set(k, g, 1);
      R.gen_proj[n].set(g, k, 1);
    }
  }
  return R;
}

CobarOperad cobar(const Cooperad& A, int max_weight) {
  int N = A.C.max_arity();
  if (A.C.at(1)->dim() != 1 || A.coaug.c.size() != 1 || A.C.at(1)->degree(0) != 0)
    throw std::runtime_error("cobar: cooperad must be coaugmented and 1-reduced");
  if (max_weight < 1) throw std::runtime_error("cobar: max_weight must be >= 1");

  // generators: the suspended coaugmentation coideal, n >= 2
  Collection gen(N);
  std::vector<SpacePtr> G(N + 1, zero_space());
  for (int n = 2; n <= N; ++n) {
    G[n] = shift_space(A.C.at(n), 1);
    gen.set_space(n, G[n]);
    if (G[n]->dim() == 0) continue;
    for (int i = 0; i + 1 < n; ++i)
      gen.set_transposition(n, i, shift_map(A.C.transposition(n, i), 1));
  }
  FreeOperadBasis B;
  Operad F = free_operad(gen, N, &B);

  // The tree space on A(n)[1] is the degree-wise dual of the tree space on
  // P'(n)[-1] for P' the transposed operad, basis element for basis element.
  // The splitting differential (internal d + reduced cocompositions) is the
  // transpose of the contraction differential on the dual side.
  Operad Pd = transpose_operad(A);
  Collection gend(N);
  std::vector<SpacePtr> Gd(N + 1, zero_space());
  for (int n = 2; n <= N; ++n) {
    Gd[n] = shift_space(Pd.C.at(n), -1);
    gend.set_space(n, Gd[n]);
    if (Gd[n]->dim() == 0) continue;
    for (int i = 0; i + 1 < n; ++i)
      gend.set_transposition(n, i, shift_map(Pd.C.transposition(n, i), -1));
  }
  FreeOperadBasis Bd;
  Operad Fd = free_operad(gend, N, &Bd);
  std::vector<GradedMap> dbar = bar_tree_diff(Pd, Gd, Fd, Bd);
  std::vector<GradedMap> dfull(N + 1);
  for (int n = 1; n <= N; ++n)
    dfull[n] = adjoint_map(dbar[n], F.C.at(n), F.C.at(n));

  // weight filtration
  CobarOperad R;
  R.max_weight = max_weight;
  R.weight.resize(N + 1);
  R.basis.elems.resize(N + 1);
  R.basis.trees.resize(N + 1);
  std::vector<GradedMap> inc(N + 1), pr(N + 1);
  Collection WC(N);
  for (int n = 1; n <= N; ++n) {
    std::vector<std::pair<std::string, int>> wb;
    std::vector<int> kept;
    SpacePtr full = F.C.at(n);
    for (int i = 0; i < full->dim(); ++i) {
      PlanarTree t = decode_tree(B.elems[n][i].tree);
      if (t.n_vertices() > max_weight) continue;
      kept.push_back(i);
      R.weight[n].push_back(t.n_vertices());
      R.basis.elems[n].push_back(B.elems[n][i]);
      wb.push_back({full->name(i), full->degree(i)});
    }
    SpacePtr ws = GradedSpace::make(std::move(wb));
    WC.set_space(n, ws);
    inc[n] = GradedMap(ws, full, 0);
    pr[n] = GradedMap(full, ws, 0);
    for (int k = 0; k < (int)kept.size(); ++k) {
      inc[n].set(kept[k], k, 1);
      pr[n].set(k, kept[k], 1);
    }
  }
  for (int n = 2; n <= N; ++n)
    for (int i = 0; i + 1 < n; ++i)
      WC.set_transposition(n, i,
                           compose(pr[n], compose(F.C.transposition(n, i), inc[n])));
  for (int n = 1; n <= N; ++n) {
    GradedMap d = compose(pr[n], compose(dfull[n], inc[n]));
    if (!d.is_zero()) WC.set_diff(n, std::move(d));
  }
  R.P.C = WC;
  R.P.unit_vec.add(0, 1);
  auto Fp = std::make_shared<Operad>(std::move(F));
  auto incp = std::make_shared<std::vector<GradedMap>>(inc);
  auto prp = std::make_shared<std::vector<GradedMap>>(pr);
  R.P.set_comp_builder([Fp, incp, prp](int n, int x, int m) {
    return compose((*prp)[n + m - 1],
                   compose(Fp->comp(n, x, m),
                           tensor_maps({(*incp)[n], (*incp)[m]})));
  });
  R.gen_incl.resize(N + 1);
  R.gen_proj.resize(N + 1);
  for (int n = 1; n <= N; ++n) {
    R.gen_incl[n] = GradedMap(G[n], WC.at(n), 0);
    R.gen_proj[n] = GradedMap(WC.at(n), G[n], 0);
    if (n < 2) continue;
    for (int g = 0; g < G[n]->dim(); ++g) {
      int full_idx = free_corolla_index(B, n, g);
      int k = -1;
      for (int j = 0; j < (int)R.basis.elems[n].size(); ++j)
        if (R.basis.elems[n][j].tree == B.elems[n][full_idx].tree &&
            R.basis.elems[n][j].dec == B.elems[n][full_idx].dec) {
          k = j;
          break;
        }
      R.gen_incl[n].set(k, g, 1);
      R.gen_proj[n].set(g, k, 1);
    }
  }
  return R;
}

}  // namespace opdh
