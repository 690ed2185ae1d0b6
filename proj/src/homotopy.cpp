#include "opdh/homotopy.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <numeric>
#include <stdexcept>

namespace opdh {

namespace {

// DF order of contract(t, vs): surviving vertices keep their relative
// depth-first order, with the merged vertex at the position of the subtree
// root vs[0]. Verified against the independently computed merged index and
// the arity sequence.
std::vector<int> contract_order(const PlanarTree& t, const std::vector<int>& vs,
                                const PlanarTree& tc, int merged, int legs) {
  std::vector<char> in_vs(t.n_vertices(), 0);
  for (int v : vs) in_vs[v] = 1;
  std::vector<int> corr;
  for (int v = 0; v < t.n_vertices(); ++v) {
    if (v == vs[0])
      corr.push_back(-1);
    else if (!in_vs[v])
      corr.push_back(v);
  }
  if ((int)corr.size() != tc.n_vertices() || corr[merged] != -1)
    throw std::logic_error("contract_order: vertex order assumption violated");
  for (int k = 0; k < (int)corr.size(); ++k) {
    int want = corr[k] == -1 ? legs : t.arity(corr[k]);
    if (tc.arity(k) != want)
      throw std::logic_error("contract_order: arity mismatch");
  }
  return corr;
}

// permutation of the t-DF factor positions bringing them into the grouped
// order: for each quotient position k, the t-vertices groups[k] ascending
Perm collapse_perm(int n_vertices, const std::vector<std::vector<int>>& groups) {
  Perm sigma(n_vertices, -1);
  int dst = 0;
  for (const auto& g : groups)
    for (int v : g) sigma[v] = dst++;
  if (dst != n_vertices) throw std::logic_error("collapse_perm: group mismatch");
  return sigma;
}

std::vector<int> arities_of(const Collection& C) {
  std::vector<int> out;
  for (int a = 1; a <= C.max_arity(); ++a)
    if (C.at(a)->dim() > 0) out.push_back(a);
  return out;
}

// all canonical labeled trees within the truncation (arity and weight)
std::vector<PlanarTree> trees_within(const Collection& C, int max_weight) {
  std::vector<int> ar = arities_of(C);
  std::vector<PlanarTree> out;
  for (int n = 1; n <= C.max_arity(); ++n)
    for (PlanarTree& t : enumerate_trees(n, max_weight, ar))
      out.push_back(std::move(t));
  return out;
}

std::vector<SpacePtr> shifted_factors(const Collection& C, int shift,
                                      const PlanarTree& t) {
  std::vector<SpacePtr> fs;
  for (int v = 0; v < t.n_vertices(); ++v)
    fs.push_back(shift_space(C.at(t.arity(v)), shift));
  return fs;
}

// degree-(+1) map with identity entries sh(a) -> P(a)
GradedMap up(const Collection& C, int a) {
  SpacePtr sh = shift_space(C.at(a), -1);
  GradedMap u(sh, C.at(a), 1);
  for (int i = 0; i < sh->dim(); ++i) u.set(i, i, 1);
  return u;
}

// degree-(-1) map with identity entries P(a) -> sh(a)
GradedMap down(const Collection& C, int a) {
  SpacePtr sh = shift_space(C.at(a), -1);
  GradedMap s(C.at(a), sh, -1);
  for (int i = 0; i < sh->dim(); ++i) s.set(i, i, 1);
  return s;
}

}  // namespace

SpacePtr HomotopyOperad::tree_space(const PlanarTree& t) const {
  return opdh::tensor_space(shifted_factors(P, -1, t));
}

std::vector<int> HomotopyOperad::vertex_arities() const { return arities_of(P); }

GradedMap HomotopyOperad::action_sh(int n, const Perm& sigma) const {
  return shift_map(P.action(n, sigma), -1);
}

GradedMap tree_transport(const Collection& C, int shift, const PlanarTree& from,
                         const PlanarTree& to, const Reordering& r) {
  std::vector<SpacePtr> fs = shifted_factors(C, shift, from);
  std::vector<GradedMap> acts;
  for (int i = 0; i < from.n_vertices(); ++i) {
    int a = from.arity(i);
    if (r.cperm[i] == perm_identity(a))
      acts.push_back(identity_map(fs[i]));
    else
      acts.push_back(shift_map(C.action(a, perm_inverse(r.cperm[i])), shift));
  }
  GradedMap m = tensor_maps(acts);
  if (r.vperm != perm_identity(from.n_vertices()))
    m = compose(permute_factors(r.vperm, fs), m);
  (void)to;
  return m;
}

GradedMap HomotopyOperad::op_for(const PlanarTree& t) const {
  auto [tc, r] = canonicalize(t);
  auto it = ops.find(encode(tc));
  if (it == ops.end())
    return zero_map(tree_space(t), shifted(t.n_leaves), 1);
  return compose(it->second, tree_transport(P, -1, t, tc, r));
}

GradedMap subtree_collapse(const HomotopyOperad& H, const PlanarTree& t,
                           const std::vector<int>& vs, PlanarTree* quotient) {
  PlanarTree sub = extract_subtree(t, vs);
  int merged = -1;
  PlanarTree tc = contract(t, vs, &merged);
  std::vector<int> corr = contract_order(t, vs, tc, merged, sub.n_leaves);
  if (quotient) *quotient = tc;

  std::vector<std::vector<int>> groups;
  for (int k = 0; k < tc.n_vertices(); ++k)
    groups.push_back(corr[k] == -1 ? vs : std::vector<int>{corr[k]});
  Perm sigma = collapse_perm(t.n_vertices(), groups);
  GradedMap m = permute_factors(sigma, shifted_factors(H.P, -1, t));

  std::vector<GradedMap> fs;
  for (int k = 0; k < tc.n_vertices(); ++k) {
    if (corr[k] == -1)
      fs.push_back(H.op_for(sub));
    else
      fs.push_back(identity_map(shift_space(H.P.at(tc.arity(k)), -1)));
  }
  return compose(tensor_maps(fs), m);
}

CheckReport check_square_zero(const HomotopyOperad& H) {
  CheckReport rep;
  for (const PlanarTree& t : trees_within(H.P, H.max_weight)) {
    SpacePtr src = H.tree_space(t);
    if (src->dim() == 0) continue;
    GradedMap total = zero_map(src, H.shifted(t.n_leaves), 2);
    for (const auto& vs : connected_subtrees(t)) {
      PlanarTree q;
      GradedMap coll = subtree_collapse(H, t, vs, &q);
      total = add(total, compose(H.op_for(q), coll));
    }
    if (!total.is_zero()) {
      auto& e = *total.entries().begin();
      rep.fail("square-zero fails on tree " + encode(t) + " at basis element " +
               src->name(e.first.second) + " (residual in " +
               H.P.at(t.n_leaves)->name(e.first.first) + ")");
      return rep;
    }
  }
  return rep;
}

CheckReport check_homotopy_equivariance(const HomotopyOperad& H) {
  CheckReport rep;
  for (const PlanarTree& t : trees_within(H.P, H.max_weight)) {
    int n = t.n_leaves;
    if (n < 2) continue;
    GradedMap op = H.op_for(t);
    for (int i = 0; i + 1 < n; ++i) {
      Perm s = perm_identity(n);
      std::swap(s[i], s[i + 1]);
      GradedMap lhs = H.op_for(relabel(t, s));
      GradedMap rhs = compose(H.action_sh(n, s), op);
      if (!(lhs == rhs)) {
        rep.fail("operation on tree " + encode(t) + " is not equivariant");
        return rep;
      }
    }
  }
  return rep;
}

bool is_strict(const HomotopyOperad& H) {
  for (const auto& [enc, m] : H.ops)
    if (decode_tree(enc).n_vertices() >= 3 && !m.is_zero()) return false;
  return true;
}

bool is_minimal(const HomotopyOperad& H) {
  for (const auto& [enc, m] : H.ops)
    if (decode_tree(enc).n_vertices() == 1 && !m.is_zero()) return false;
  return true;
}

HomotopyOperad strict_from_operad(const Operad& P, int max_weight) {
  HomotopyOperad H;
  H.P = P.C;
  H.max_weight = max_weight;
  std::vector<int> ar = arities_of(P.C);
  for (int n : ar) {
    // one-vertex tree: the internal differential on the shifted space
    if (P.C.has_diff(n)) {
      GradedMap d = shift_map(P.C.d(n), -1);
      if (!d.is_zero()) {
        GradedMap op(H.tree_space(corolla(n)), H.shifted(n), 1);
        for (auto& [rc, val] : d.entries()) op.set(rc.first, rc.second, val);
        H.ops[encode(corolla(n))] = std::move(op);
      }
    }
  }
  // two-vertex trees: the partial compositions, conjugated by suspensions
  for (int n = 1; n <= P.C.max_arity(); ++n) {
    for (PlanarTree& t : enumerate_trees(n, 2, ar)) {
      if (t.n_vertices() != 2) continue;
      int a = t.arity(0), b = t.arity(1);
      GradedMap g = gamma_map(P, t);
      GradedMap op = compose(down(P.C, n),
                             compose(g, tensor_maps({up(P.C, a), up(P.C, b)})));
      if (!op.is_zero()) H.ops[encode(t)] = std::move(op);
    }
  }
  return H;
}

Operad operad_from_strict(const HomotopyOperad& H) {
  Operad R;
  R.C = H.P;
  std::vector<int> ar = arities_of(H.P);
  for (int n : ar) {
    auto it = H.ops.find(encode(corolla(n)));
    if (it == H.ops.end()) continue;
    // d_sh = -d entrywise on the shift
    GradedMap d(H.P.at(n), H.P.at(n), 1);
    for (auto& [rc, val] : it->second.entries()) d.set(rc.first, rc.second, -val);
    if (!d.is_zero()) R.C.set_diff(n, std::move(d));
  }
  // note: homotopy data does not carry the operad unit; R is returned
  // without one (unit laws are skipped by the axiom checker)
  auto Hp = std::make_shared<HomotopyOperad>(H);
  R.set_comp_builder([Hp](int n, int x, int m) {
    PlanarTree t = graft(corolla(m), corolla(n), x);
    GradedMap op = Hp->op_for(t);
    const Collection& C = Hp->P;
    GradedMap c = compose(up(C, n + m - 1),
                          compose(op, tensor_maps({down(C, n), down(C, m)})));
    return c.scaled(-1);
  });
  return R;
}

GradedMap HomotopyMorphism::phi_for(const PlanarTree& t) const {
  auto [tc, r] = canonicalize(t);
  auto it = phi.find(encode(tc));
  if (it == phi.end())
    return zero_map(src->tree_space(t), tgt->shifted(t.n_leaves), 0);
  return compose(it->second, tree_transport(src->P, -1, t, tc, r));
}

std::vector<TreePartition> connected_partitions(const PlanarTree& t) {
  int nv = t.n_vertices();
  std::vector<std::vector<std::vector<int>>> raw;
  std::vector<std::vector<int>> cur;
  std::function<void(int)> gen = [&](int v) {
    if (v == nv) {
      raw.push_back(cur);
      return;
    }
    size_t nb = cur.size();
    for (size_t b = 0; b < nb; ++b) {
      cur[b].push_back(v);
      gen(v + 1);
      cur[b].pop_back();
    }
    cur.push_back({v});
    gen(v + 1);
    cur.pop_back();
  };
  gen(0);

  std::vector<TreePartition> out;
  for (auto& blocks : raw) {
    bool ok = true;
    for (auto& b : blocks)
      if (!is_connected_subtree(t, b)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    TreePartition tp;
    tp.blocks = blocks;
    // iterated contraction, tracking where each t-vertex ends up
    PlanarTree q = t;
    std::vector<int> pos(nv);
    std::iota(pos.begin(), pos.end(), 0);
    std::vector<int> block_of(nv);
    for (int b = 0; b < (int)blocks.size(); ++b)
      for (int v : blocks[b]) block_of[v] = b;
    for (auto& b : blocks) {
      if (b.size() == 1) continue;
      std::vector<int> vs;
      for (int v : b) vs.push_back(pos[v]);
      std::sort(vs.begin(), vs.end());
      int merged = -1;
      PlanarTree sub = extract_subtree(q, vs);
      PlanarTree qc = contract(q, vs, &merged);
      std::vector<int> corr = contract_order(q, vs, qc, merged, sub.n_leaves);
      std::vector<int> newpos(q.n_vertices(), -1);
      for (int k = 0; k < (int)corr.size(); ++k)
        if (corr[k] >= 0) newpos[corr[k]] = k;
      for (int v : vs) newpos[v] = merged;
      for (int v = 0; v < nv; ++v) pos[v] = newpos[pos[v]];
      q = qc;
    }
    tp.quotient = q;
    tp.block_at.assign(q.n_vertices(), -1);
    for (int v = 0; v < nv; ++v) tp.block_at[pos[v]] = block_of[v];
    out.push_back(std::move(tp));
  }
  return out;
}

CheckReport check_morphism(const HomotopyMorphism& m) {
  CheckReport rep;
  const HomotopyOperad& S = *m.src;
  const HomotopyOperad& T = *m.tgt;
  for (const PlanarTree& t : trees_within(S.P, S.max_weight)) {
    SpacePtr src = S.tree_space(t);
    if (src->dim() == 0) continue;
    GradedMap lhs = zero_map(src, T.shifted(t.n_leaves), 1);
    for (const auto& vs : connected_subtrees(t)) {
      PlanarTree q;
      GradedMap coll = subtree_collapse(S, t, vs, &q);
      lhs = add(lhs, compose(m.phi_for(q), coll));
    }
    GradedMap rhs = zero_map(src, T.shifted(t.n_leaves), 1);
    for (const TreePartition& tp : connected_partitions(t)) {
      std::vector<std::vector<int>> groups;
      std::vector<GradedMap> fs;
      for (int k = 0; k < tp.quotient.n_vertices(); ++k) {
        const auto& blk = tp.blocks[tp.block_at[k]];
        groups.push_back(blk);
        fs.push_back(m.phi_for(extract_subtree(t, blk)));
      }
      Perm sigma = collapse_perm(t.n_vertices(), groups);
      GradedMap term = compose(
          T.op_for(tp.quotient),
          compose(tensor_maps(fs), permute_factors(sigma, shifted_factors(S.P, -1, t))));
      rhs = add(rhs, term);
    }
    if (!(lhs == rhs)) {
      rep.fail("homotopy morphism relation fails on tree " + encode(t));
      return rep;
    }
  }
  return rep;
}

// ---------------- cooperads up to homotopy ----------------

SpacePtr HomotopyCooperad::tree_space(const PlanarTree& t) const {
  return opdh::tensor_space(shifted_factors(A, 1, t));
}

std::vector<int> HomotopyCooperad::vertex_arities() const { return arities_of(A); }

GradedMap HomotopyCooperad::op_for(const PlanarTree& t) const {
  auto [tc, r] = canonicalize(t);
  auto it = ops.find(encode(tc));
  if (it == ops.end()) return zero_map(shifted(t.n_leaves), tree_space(t), 1);
  // transpose of the operad-side transport: permute the canonical factors
  // into t's depth-first order, then act vertexwise on the child slots
  GradedMap m = it->second;
  if (r.vperm != perm_identity(t.n_vertices()))
    m = compose(permute_factors(perm_inverse(r.vperm), shifted_factors(A, 1, tc)), m);
  std::vector<GradedMap> acts;
  for (int i = 0; i < t.n_vertices(); ++i) {
    int a = t.arity(i);
    if (r.cperm[i] == perm_identity(a))
      acts.push_back(identity_map(shift_space(A.at(a), 1)));
    else
      acts.push_back(shift_map(A.action(a, r.cperm[i]), 1));
  }
  return compose(tensor_maps(acts), m);
}

GradedMap subtree_expand(const HomotopyCooperad& H, const PlanarTree& t,
                         const std::vector<int>& vs, PlanarTree* quotient) {
  PlanarTree sub = extract_subtree(t, vs);
  int merged = -1;
  PlanarTree tc = contract(t, vs, &merged);
  std::vector<int> corr = contract_order(t, vs, tc, merged, sub.n_leaves);
  if (quotient) *quotient = tc;

  std::vector<GradedMap> fs;
  std::vector<std::vector<int>> groups;
  for (int k = 0; k < tc.n_vertices(); ++k) {
    if (corr[k] == -1) {
      fs.push_back(H.op_for(sub));
      groups.push_back(vs);
    } else {
      fs.push_back(identity_map(shift_space(H.A.at(tc.arity(k)), 1)));
      groups.push_back({corr[k]});
    }
  }
  Perm sigma = collapse_perm(t.n_vertices(), groups);
  // factors currently in grouped order; send them back to t's DF order
  std::vector<SpacePtr> grouped;
  for (const auto& g : groups)
    for (int v : g) grouped.push_back(shift_space(H.A.at(t.arity(v)), 1));
  return compose(permute_factors(perm_inverse(sigma), grouped), tensor_maps(fs));
}

CheckReport check_cosquare_zero(const HomotopyCooperad& H) {
  CheckReport rep;
  for (const PlanarTree& t : trees_within(H.A, H.max_weight)) {
    if (H.tree_space(t)->dim() == 0) continue;
    GradedMap total = zero_map(H.shifted(t.n_leaves), H.tree_space(t), 2);
    for (const auto& vs : connected_subtrees(t)) {
      PlanarTree q;
      GradedMap exp = subtree_expand(H, t, vs, &q);
      total = add(total, compose(exp, H.op_for(q)));
    }
    if (!total.is_zero()) {
      auto& e = *total.entries().begin();
      rep.fail("dual square-zero fails on tree " + encode(t) + " at basis element " +
               H.A.at(t.n_leaves)->name(e.first.second));
      return rep;
    }
  }
  return rep;
}

}  // namespace opdh
