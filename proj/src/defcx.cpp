#include "opdh/defcx.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace opdh {
namespace {

// identity-entry map between two spaces with matching basis order
GradedMap reindex(SpacePtr src, SpacePtr tgt, int deg) {
  if (src->dim() != tgt->dim())
    throw std::logic_error("reindex: dimension mismatch");
  GradedMap m(src, tgt, deg);
  for (int i = 0; i < src->dim(); ++i) m.set(i, i, 1);
  return m;
}

SpacePtr unit_space() { return tensor_space({}); }

// the basis element b of hom_space(a, p) as an actual map a -> p
GradedMap basis_hom(const SpacePtr& a, const SpacePtr& p, const SpacePtr& h,
                    int b) {
  SparseVec v;
  v.add(b, 1);
  return hom_as_map(a, p, v, h->degree(b));
}

// the operad unit as a map k -> P(1)
GradedMap unit_map(const Operad& P) {
  GradedMap u(unit_space(), P.C.at(1), 0);
  for (auto& [i, c] : P.unit_vec.c) u.set(i, 0, c);
  return u;
}

std::vector<int> hom_arities(const Collection& A, const Collection& P) {
  std::vector<int> out;
  for (int n = 1; n <= std::min(A.max_arity(), P.max_arity()); ++n)
    if (A.at(n)->dim() > 0 && P.at(n)->dim() > 0) out.push_back(n);
  return out;
}

// conjugation action (phi sigma)(c) = (phi(c sigma)) sigma for a
// transposition sigma, as a matrix on the hom space
GradedMap hom_transposition(const SpacePtr& a, const SpacePtr& p,
                            const SpacePtr& h, const GradedMap& rho_a,
                            const GradedMap& rho_p) {
  GradedMap m(h, h, 0);
  for (int b = 0; b < h->dim(); ++b) {
    GradedMap f = basis_hom(a, p, h, b);
    GradedMap g = compose(rho_p, compose(f, rho_a));
    for (auto& [i, c] : hom_from_map(a, p, g).c) m.add_to(i, b, c);
  }
  return m;
}

// d phi = d_P . phi - (-1)^{|phi|} phi . d_A on the hom space
GradedMap hom_differential(const SpacePtr& a, const SpacePtr& p,
                           const SpacePtr& h, const GradedMap& d_a,
                           const GradedMap& d_p) {
  GradedMap m(h, h, 1);
  for (int b = 0; b < h->dim(); ++b) {
    GradedMap f = basis_hom(a, p, h, b);
    GradedMap g = compose(d_p, f);
    Rational sgn = h->degree(b) % 2 == 0 ? -1 : 1;
    g = add(g, compose(f, d_a).scaled(sgn));
    for (auto& [i, c] : hom_from_map(a, p, g).c) m.add_to(i, b, c);
  }
  return m;
}

// unshift of the homotopy-cooperad convention: the tree cocomposition on
// the plain (unshifted) spaces, delta_t: A(n) -> (x)_v A(a_v), deg 2 - k
GradedMap plain_delta(const HomotopyCooperad& A, const PlanarTree& t) {
  GradedMap d = A.op_for(t);
  std::vector<GradedMap> downs;
  for (int av : arity_sequence(t))
    downs.push_back(reindex(A.shifted(av), A.A.at(av), -1));
  GradedMap up = reindex(A.A.at(t.n_leaves), A.shifted(t.n_leaves), 1);
  return compose(tensor_maps(downs), compose(d, up));
}

GradedMap up_sh(const Collection& C, int a) {
  return reindex(shift_space(C.at(a), -1), C.at(a), 1);
}
GradedMap down_sh(const Collection& C, int a) {
  return reindex(C.at(a), shift_space(C.at(a), -1), -1);
}

// enumerate k-subsets of {0..d-1} in lexicographic order
std::vector<std::vector<int>> subsets_k(int d, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > d) return out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int from) {
    if ((int)cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (int x = from; x < d; ++x) {
      cur.push_back(x);
      rec(x + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

SparseVec tensor2(const SparseVec& x, const SparseVec& y, int dim_y) {
  SparseVec out;
  for (auto& [i, ci] : x.c)
    for (auto& [j, cj] : y.c) out.add(i * dim_y + j, ci * cj);
  return out;
}

void require_ungraded(const SpacePtr& v, const char* who) {
  for (int i = 0; i < v->dim(); ++i)
    if (v->degree(i) != 0)
      throw std::invalid_argument(std::string(who) +
                                  ": expected an ungraded space");
}

}  // namespace

Operad hadamard_operad(const Operad& P, const Operad& Q) {
  int N = std::min(P.C.max_arity(), Q.C.max_arity());
  Operad R;
  R.C = Collection(N);
  bool any_diff = false;
  for (int n = 1; n <= N; ++n) {
    SpacePtr pn = P.C.at(n), qn = Q.C.at(n);
    R.C.set_space(n, tensor_space({pn, qn}));
    for (int i = 0; i + 1 < n; ++i)
      R.C.set_transposition(
          n, i, tensor_maps({P.C.transposition(n, i), Q.C.transposition(n, i)}));
    if (P.C.has_diff(n) || Q.C.has_diff(n)) any_diff = true;
  }
  if (any_diff)
    for (int n = 1; n <= N; ++n) {
      GradedMap d = add(tensor_maps({P.C.d(n), identity_map(Q.C.at(n))}),
                        tensor_maps({identity_map(P.C.at(n)), Q.C.d(n)}));
      R.C.set_diff(n, std::move(d));
    }
  for (auto& [i, c] : P.unit_vec.c)
    for (auto& [j, e] : Q.unit_vec.c)
      R.unit_vec.add(tensor_index({P.C.at(1), Q.C.at(1)}, {i, j}), c * e);
  R.set_comp_builder([P, Q](int n, int i, int m) {
    std::vector<SpacePtr> f = {P.C.at(n), Q.C.at(n), P.C.at(m), Q.C.at(m)};
    GradedMap mid = permute_factors({0, 2, 1, 3}, f);
    return compose(tensor_maps({P.comp(n, i, m), Q.comp(n, i, m)}), mid);
  });
  return R;
}

Operad suspension_twist_operad(int max_arity) {
  return endomorphism_operad(GradedSpace::make({{"s", -1}}), max_arity);
}

SpacePtr hom_space(const SpacePtr& a, const SpacePtr& p) {
  std::vector<std::pair<std::string, int>> basis;
  for (int j = 0; j < a->dim(); ++j)
    for (int i = 0; i < p->dim(); ++i)
      basis.push_back({p->name(i) + "<-" + a->name(j),
                       p->degree(i) - a->degree(j)});
  return GradedSpace::make(std::move(basis));
}

int hom_index(const SpacePtr& a, const SpacePtr& p, int pi, int aj) {
  (void)a;
  return aj * p->dim() + pi;
}

SparseVec hom_from_map(const SpacePtr& a, const SpacePtr& p,
                       const GradedMap& f) {
  SparseVec out;
  for (auto& [rc, v] : f.entries())
    out.add(hom_index(a, p, rc.first, rc.second), v);
  return out;
}

GradedMap hom_as_map(const SpacePtr& a, const SpacePtr& p, const SparseVec& v,
                     int deg) {
  GradedMap f(a, p, deg);
  for (auto& [idx, c] : v.c) f.set(idx % p->dim(), idx / p->dim(), c);
  return f;
}

ConvolutionOperad convolution(const Cooperad& A, const Operad& P) {
  if (A.C.max_arity() != P.C.max_arity())
    throw std::invalid_argument("convolution: arity bounds differ");
  int N = P.C.max_arity();
  ConvolutionOperad R;
  R.A = A;
  R.P = P;
  R.conv.C = Collection(N);
  bool any_diff = false;
  for (int n = 1; n <= N; ++n) {
    SpacePtr an = A.C.at(n), pn = P.C.at(n);
    SpacePtr h = hom_space(an, pn);
    R.conv.C.set_space(n, h);
    for (int i = 0; i + 1 < n; ++i)
      R.conv.C.set_transposition(
          n, i,
          hom_transposition(an, pn, h, A.C.transposition(n, i),
                            P.C.transposition(n, i)));
    if (A.C.has_diff(n) || P.C.has_diff(n)) any_diff = true;
  }
  if (any_diff)
    for (int n = 1; n <= N; ++n) {
      SpacePtr an = A.C.at(n), pn = P.C.at(n);
      R.conv.C.set_diff(
          n, hom_differential(an, pn, R.conv.C.at(n), A.C.d(n), P.C.d(n)));
    }
  R.conv.unit_vec =
      hom_from_map(A.C.at(1), P.C.at(1), compose(unit_map(P), A.counit));
  Cooperad Ac = A;
  Operad Pc = P;
  Collection H = R.conv.C;
  R.conv.set_comp_builder([Ac, Pc, H](int n, int i, int m) {
    SpacePtr hn = H.at(n), hm = H.at(m), ho = H.at(n + m - 1);
    SpacePtr an = Ac.C.at(n), am = Ac.C.at(m), ao = Ac.C.at(n + m - 1);
    SpacePtr pn = Pc.C.at(n), pm = Pc.C.at(m), po = Pc.C.at(n + m - 1);
    GradedMap out(tensor_space({hn, hm}), ho, 0);
    const GradedMap& gp = Pc.comp(n, i, m);
    const GradedMap& da = Ac.decomp(n, i, m);
    // the column for a basis pair (f, g) is gamma_P . (f (x) g) . delta_A;
    // assemble it entrywise: an entry of delta_A picks the sources of f and
    // g, an entry of gamma_P picks their targets, and the Koszul sign of
    // f (x) g is (-1)^{|g| |a1|} for a1 the source basis element of f
    for (auto& [da_rc, alpha] : da.entries()) {
      int j1 = da_rc.first / am->dim(), j2 = da_rc.first % am->dim();
      int c = da_rc.second;
      for (auto& [gp_rc, beta] : gp.entries()) {
        int p1 = gp_rc.second / pm->dim(), p2 = gp_rc.second % pm->dim();
        int r = gp_rc.first;
        int b1 = hom_index(an, pn, p1, j1), b2 = hom_index(am, pm, p2, j2);
        Rational v = alpha * beta;
        if ((hm->degree(b2) * an->degree(j1)) % 2) v = -v;
        out.add_to(hom_index(ao, po, r, c), b1 * hm->dim() + b2, v);
      }
    }
    return out;
  });
  return R;
}

HomotopyOperad convolution_homotopy(const HomotopyCooperad& A,
                                    const Operad& P) {
  if (A.A.max_arity() != P.C.max_arity())
    throw std::invalid_argument("convolution_homotopy: arity bounds differ");
  int N = P.C.max_arity();
  HomotopyOperad H;
  H.P = Collection(N);
  H.max_weight = A.max_weight;
  for (int n = 1; n <= N; ++n) {
    SpacePtr an = A.A.at(n), pn = P.C.at(n);
    SpacePtr h = hom_space(an, pn);
    H.P.set_space(n, h);
    for (int i = 0; i + 1 < n; ++i)
      H.P.set_transposition(n, i,
                            hom_transposition(an, pn, h, A.A.transposition(n, i),
                                              P.C.transposition(n, i)));
  }
  std::vector<int> va = hom_arities(A.A, P.C);
  for (int n = 1; n <= N; ++n) {
    SpacePtr an = A.A.at(n), pn = P.C.at(n), h = H.P.at(n);
    if (h->dim() == 0) continue;
    // one-vertex tree: the convolution differential on the shifted space
    PlanarTree cn = corolla(n);
    GradedMap delta1(an, an, 1);
    if (A.ops.count(encode(cn))) delta1 = plain_delta(A, cn);
    GradedMap d =
        hom_differential(an, pn, h, delta1, P.C.d(n));
    GradedMap dsh = shift_map(d, -1);
    if (!dsh.is_zero()) {
      GradedMap op(H.tree_space(cn), H.shifted(n), 1);
      for (auto& [rc, val] : dsh.entries()) op.set(rc.first, rc.second, val);
      H.ops[encode(cn)] = std::move(op);
    }
    for (PlanarTree& t : enumerate_trees(n, A.max_weight, va)) {
      int k = t.n_vertices();
      if (k < 2) continue;
      if (!A.ops.count(canonical_encode(t))) continue;
      GradedMap delta = plain_delta(A, t);
      GradedMap gp = gamma_map(P, t);
      std::vector<int> ars = arity_sequence(t);
      std::vector<SpacePtr> hs;
      for (int av : ars) hs.push_back(H.P.at(av));
      GradedMap G(tensor_space(hs), h, 2 - k);
      std::vector<int> word(k, 0);
      std::function<void(int)> rec = [&](int pos) {
        if (pos == k) {
          std::vector<GradedMap> fs;
          for (int v = 0; v < k; ++v)
            fs.push_back(basis_hom(A.A.at(ars[v]), P.C.at(ars[v]), hs[v],
                                   word[v]));
          GradedMap cm = compose(gp, compose(tensor_maps(fs), delta));
          int col = tensor_index(hs, word);
          for (auto& [r, c] : hom_from_map(an, pn, cm).c) G.add_to(r, col, c);
          return;
        }
        for (int b = 0; b < hs[pos]->dim(); ++b) {
          word[pos] = b;
          rec(pos + 1);
        }
      };
      rec(0);
      std::vector<GradedMap> ups;
      for (int av : ars) ups.push_back(up_sh(H.P, av));
      GradedMap op = compose(down_sh(H.P, n), compose(G, tensor_maps(ups)));
      if (!op.is_zero()) H.ops[encode(t)] = std::move(op);
    }
  }
  return H;
}

ConvolutionAlgebra convolution_algebra(const Cooperad& A, const Operad& P) {
  ConvolutionAlgebra R;
  R.C = convolution(A, P);
  R.H = strict_from_operad(R.C.conv, 2);
  R.T = linf_from_homotopy(R.H, LinfVariant::coinvariant);
  return R;
}

MCElement mc_from_map(const ConvolutionAlgebra& CA,
                      const std::vector<GradedMap>& gen) {
  const TotalLinf& T = CA.T;
  MCElement out;
  out.positive = true;
  for (int n = 0; n < (int)gen.size(); ++n) {
    if (gen[n].entries().empty()) continue;
    if (n < 2)
      throw std::invalid_argument("mc_from_map: generator map below arity 2");
    if (gen[n].deg() != 1)
      throw std::invalid_argument("mc_from_map: generator map must have degree 1");
    SpacePtr an = CA.C.A.C.at(n), pn = CA.C.P.C.at(n);
    SparseVec v = hom_from_map(an, pn, gen[n]);
    if (v.is_zero()) continue;
    if (n >= (int)T.offset.size() || T.offset[n] < 0)
      throw std::invalid_argument("mc_from_map: arity outside truncation");
    SparseVec local = T.pi[n].apply(v);
    if (!(T.s[n].apply(local) == v))
      throw std::invalid_argument("mc_from_map: generator map not equivariant");
    for (auto& [i, c] : local.c) out.phi.add(T.offset[n] + i, c);
  }
  return out;
}

std::vector<GradedMap> map_from_mc(const ConvolutionAlgebra& CA,
                                   const MCElement& phi) {
  const TotalLinf& T = CA.T;
  int N = CA.C.P.C.max_arity();
  std::vector<SparseVec> local(N + 1);
  for (auto& [i, c] : phi.phi.c) {
    int n = T.arity_of[i];
    if (n < 2)
      throw std::invalid_argument("map_from_mc: arity-1 support");
    local[n].add(i - T.offset[n], c);
  }
  std::vector<GradedMap> out(N + 1);
  for (int n = 2; n <= N; ++n) {
    SpacePtr an = CA.C.A.C.at(n), pn = CA.C.P.C.at(n);
    out[n] = hom_as_map(an, pn, T.s[n].apply(local[n]), 1);
  }
  return out;
}

QuadraticModel quadratic_model(const std::string& name, int max_arity) {
  QuadraticModel M;
  M.name = name;
  Operad dual;  // the quadratic-dual operad: ass <-> ass, com <-> lie
  if (name == "ass") {
    M.Q = ass_operad(max_arity);
    dual = ass_operad(max_arity);
  } else if (name == "com") {
    M.Q = com_operad(max_arity);
    dual = lie_operad(max_arity);
  } else if (name == "lie") {
    M.Q = lie_operad(max_arity);
    dual = com_operad(max_arity);
  } else {
    throw std::invalid_argument("quadratic_model: unknown name " + name);
  }
  Operad lam = hadamard_operad(suspension_twist_operad(max_arity), dual);
  M.Qperp = transpose_cooperad(lam);
  // identify the binary parts; the sign on the odd permutation makes the
  // identification equivariant against the twisted dual action
  M.iota2 = GradedMap(M.Qperp.C.at(2), M.Q.C.at(2), 1);
  M.iota2.set(0, 0, 1);
  if (name == "ass") M.iota2.set(1, 1, -1);
  return M;
}

std::vector<GradedMap> qperp_to_bar(const QuadraticModel& M,
                                    const BarCooperad& B) {
  int N = B.A.C.max_arity();
  SpacePtr w2 = B.gen_incl[2].src();
  GradedMap h2 = compose(reindex(M.Q.C.at(2), w2, -1), M.iota2);
  std::vector<GradedMap> out(N + 1);
  out[1] = GradedMap(M.Qperp.C.at(1), B.A.C.at(1), 0);
  out[1].set(0, 0, 1);
  for (int n = 2; n <= N; ++n) {
    SpacePtr qn = M.Qperp.C.at(n), bn = B.A.C.at(n);
    GradedMap io(qn, bn, 0);
    for (int e = 0; e < (int)B.basis.elems[n].size(); ++e) {
      const auto& el = B.basis.elems[n][e];
      PlanarTree t = decode_tree(el.tree);
      std::vector<int> ars = arity_sequence(t);
      if (std::any_of(ars.begin(), ars.end(), [](int a) { return a != 2; }))
        continue;
      std::vector<GradedMap> hs(t.n_vertices(), h2);
      GradedMap comp_map = compose(tensor_maps(hs), delta_map(M.Qperp, t));
      std::vector<SpacePtr> ws(t.n_vertices(), w2);
      int row_src = tensor_index(ws, el.dec);
      for (int x = 0; x < qn->dim(); ++x) {
        SparseVec y = comp_map.apply_basis(x);
        auto it = y.c.find(row_src);
        if (it != y.c.end()) io.add_to(e, x, it->second);
      }
    }
    if (!compose(B.A.C.d(n), io).is_zero())
      throw std::logic_error("qperp_to_bar: not a chain map");
    if (rank(io) != qn->dim())
      throw std::logic_error("qperp_to_bar: not injective");
    out[n] = std::move(io);
  }
  return out;
}

namespace {

GradedMap assemble_diff(const LInfinity& L) {
  GradedMap D(L.g, L.g, 1);
  if (L.l.size() > 1)
    for (auto& [w, col] : L.l[1])
      for (auto& [r, c] : col.c) D.add_to(r, w[0], c);
  return D;
}

DeformationComplex finish_complex(ConvolutionAlgebra CA,
                                  const std::vector<GradedMap>& gen, int N) {
  DeformationComplex DC;
  DC.base = mc_from_map(CA, gen);
  DC.L = perturb(CA.T.L, DC.base);
  DC.D = assemble_diff(DC.L);
  DC.max_arity = N;
  DC.exact_below = N - 1;
  DC.conv = std::move(CA);
  return DC;
}

}  // namespace

DeformationComplex deformation_complex(const QuadraticModel& M,
                                       const Operad& P, const OperadMap& phi) {
  int N = P.C.max_arity();
  if (M.Q.C.max_arity() != N)
    throw std::invalid_argument("deformation_complex: arity bounds differ");
  ConvolutionAlgebra CA = convolution_algebra(M.Qperp, P);
  std::vector<GradedMap> gen(3);
  gen[2] = compose(phi.f[2], M.iota2);
  return finish_complex(std::move(CA), gen, N);
}

DeformationComplex deformation_complex_bar(const Operad& Q, const Operad& P,
                                           const OperadMap& phi,
                                           BarCooperad* bar_out) {
  int N = P.C.max_arity();
  if (Q.C.max_arity() != N)
    throw std::invalid_argument("deformation_complex_bar: arity bounds differ");
  BarCooperad B = bar(Q, N - 1);
  ConvolutionAlgebra CA = convolution_algebra(B.A, P);
  std::vector<GradedMap> gen(N + 1);
  Rational c = 1;  // 2^{n-1}/n!, the coinvariant-bracket normalization
  for (int n = 2; n <= N; ++n) {
    c = c * Rational(2, n);
    GradedMap u = reindex(B.gen_incl[n].src(), Q.C.at(n), 1);
    gen[n] = compose(phi.f[n], compose(u, B.gen_proj[n])).scaled(c);
  }
  if (bar_out) *bar_out = B;
  return finish_complex(std::move(CA), gen, N);
}

std::vector<CohomologyRow> operad_cohomology(const DeformationComplex& DC,
                                             int k_min, int k_max) {
  CohomologyResult res = cohomology(DC.D, DC.D);
  std::vector<CohomologyRow> rows;
  const SpacePtr& g = DC.L.g;
  for (int k = k_min; k <= k_max; ++k) {
    int q = k - 1;  // degree on the desuspended total space
    CohomologyRow row;
    row.degree = k;
    row.dim = res.dims.count(q) ? res.dims.at(q) : 0;
    if (res.reps.count(q)) row.reps = res.reps.at(q);
    row.exact = k < DC.exact_below;
    int arity = -1;
    bool mixed = false;
    for (int i = 0; i < g->dim(); ++i) {
      if (g->degree(i) != q) continue;
      int a = DC.conv.T.arity_of[i];
      if (arity == -1)
        arity = a;
      else if (arity != a)
        mixed = true;
    }
    row.arity = (mixed || arity == -1) ? 0 : arity;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::map<int, int> hochschild_oracle(const SpacePtr& V, const GradedMap& mult,
                                     int k_max, bool reduced) {
  require_ungraded(V, "hochschild_oracle");
  GradedMap id = identity_map(V);
  GradedMap lhs = compose(mult, tensor_maps({mult, id}));
  GradedMap rhs = compose(mult, tensor_maps({id, mult}));
  if (!(lhs.entries() == rhs.entries()))
    throw std::invalid_argument("hochschild_oracle: product not associative");
  int k_start = reduced ? 1 : 0;
  // cochain spaces Hom(V^k, V) and the bar differential
  std::vector<SpacePtr> pow(k_max + 2);
  std::vector<SpacePtr> cc(k_max + 2);
  for (int k = k_start; k <= k_max + 1; ++k) {
    pow[k] = tensor_space(std::vector<SpacePtr>(k, V));
    cc[k] = hom_space(pow[k], V);
  }
  std::vector<GradedMap> d(k_max + 1);
  for (int k = k_start; k <= k_max; ++k) {
    d[k] = GradedMap(cc[k], cc[k + 1], 0);
    for (int b = 0; b < cc[k]->dim(); ++b) {
      GradedMap f = basis_hom(pow[k], V, cc[k], b);
      GradedMap df = compose(mult, tensor_maps({id, f}));
      for (int i = 1; i <= k; ++i) {
        std::vector<GradedMap> fac(k + 1 - 1, id);
        fac[i - 1] = mult;
        GradedMap t = compose(f, tensor_maps(fac));
        df = add(df, t.scaled(i % 2 ? -1 : 1));
      }
      GradedMap last = compose(mult, tensor_maps({f, id}));
      df = add(df, last.scaled((k + 1) % 2 ? -1 : 1));
      for (auto& [r, c] : hom_from_map(pow[k + 1], V, df).c)
        d[k].add_to(r, b, c);
    }
    if (k > k_start && !compose(d[k], d[k - 1]).is_zero())
      throw std::logic_error("hochschild_oracle: differential does not square to zero");
  }
  std::map<int, int> out;
  for (int k = k_start; k <= k_max; ++k) {
    int dim_ker = cc[k]->dim() - rank(d[k]);
    int dim_im = k > k_start ? rank(d[k - 1]) : 0;
    out[k] = dim_ker - dim_im;
  }
  return out;
}

std::map<int, int> chevalley_eilenberg_oracle(const LieAlgebraData& g,
                                              int k_max, bool reduced) {
  require_ungraded(g.g, "chevalley_eilenberg_oracle");
  int d = g.g->dim();
  const GradedMap& br = g.bracket;
  GradedMap sw = permute_factors({1, 0}, {g.g, g.g});
  if (!(compose(br, sw).entries() == br.scaled(-1).entries()))
    throw std::invalid_argument("chevalley_eilenberg_oracle: bracket not antisymmetric");
  auto ev = [&](const SparseVec& x, const SparseVec& y) {
    return br.apply(tensor2(x, y, d));
  };
  auto e = [&](int i) {
    SparseVec v;
    v.add(i, 1);
    return v;
  };
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c) {
        SparseVec j = ev(ev(e(a), e(b)), e(c));
        j.add(ev(ev(e(b), e(c)), e(a)));
        j.add(ev(ev(e(c), e(a)), e(b)));
        if (!j.is_zero())
          throw std::invalid_argument("chevalley_eilenberg_oracle: Jacobi fails");
      }
  int k_start = reduced ? 1 : 0;
  // C^k = Hom(Lambda^k g, g): basis (ascending k-subset, output index)
  std::vector<std::vector<std::vector<int>>> sub(k_max + 2);
  std::vector<int> dim_c(k_max + 2, 0);
  for (int k = k_start; k <= k_max + 1; ++k) {
    sub[k] = subsets_k(d, k);
    dim_c[k] = (int)sub[k].size() * d;
  }
  auto rank_of = [](const std::vector<std::vector<int>>& ss,
                    const std::vector<int>& s) {
    return (int)(std::lower_bound(ss.begin(), ss.end(), s) - ss.begin());
  };
  std::vector<GradedMap> dd(k_max + 1);
  for (int k = k_start; k <= k_max; ++k) {
    auto cochain_space = [](int dim, int lvl) {
      std::vector<std::pair<std::string, int>> b;
      for (int i = 0; i < dim; ++i)
        b.push_back({"c" + std::to_string(lvl) + "." + std::to_string(i), 0});
      return GradedSpace::make(std::move(b));
    };
    SpacePtr ck = cochain_space(dim_c[k], k);
    SpacePtr ck1 = cochain_space(dim_c[k + 1], k + 1);
    dd[k] = GradedMap(ck, ck1, 0);
    for (int si = 0; si < (int)sub[k].size(); ++si) {
      const std::vector<int>& S = sub[k][si];
      for (int u = 0; u < d; ++u) {
        int col = si * d + u;
        for (int ti = 0; ti < (int)sub[k + 1].size(); ++ti) {
          const std::vector<int>& T = sub[k + 1][ti];
          // sum_i (-1)^i [x_i, w(T \ x_i)]
          for (int i = 0; i <= k; ++i) {
            std::vector<int> R = T;
            R.erase(R.begin() + i);
            if (R != S) continue;
            SparseVec v = ev(e(T[i]), e(u));
            Rational sgn = i % 2 ? -1 : 1;
            for (auto& [a, c] : v.c) dd[k].add_to(ti * d + a, col, c * sgn);
          }
          // sum_{i<j} (-1)^{i+j} w([x_i,x_j], T \ {x_i,x_j})
          for (int i = 0; i <= k; ++i)
            for (int j = i + 1; j <= k; ++j) {
              std::vector<int> R = T;
              R.erase(R.begin() + j);
              R.erase(R.begin() + i);
              SparseVec v = ev(e(T[i]), e(T[j]));
              for (auto& [a, ca] : v.c) {
                if (std::find(R.begin(), R.end(), a) != R.end()) continue;
                std::vector<int> S2 = R;
                int p = (int)(std::lower_bound(S2.begin(), S2.end(), a) -
                              S2.begin());
                S2.insert(S2.begin() + p, a);
                if (S2 != S) continue;
                Rational sgn = ((i + j + p) % 2) ? -1 : 1;
                dd[k].add_to(ti * d + u, col, ca * sgn);
              }
            }
        }
      }
    }
    if (k > k_start && !compose(dd[k], dd[k - 1]).is_zero())
      throw std::logic_error("chevalley_eilenberg_oracle: differential does not square to zero");
  }
  std::map<int, int> out;
  for (int k = k_start; k <= k_max; ++k) {
    int dim_ker = dim_c[k] - rank(dd[k]);
    int dim_im = k > k_start ? rank(dd[k - 1]) : 0;
    out[k] = dim_ker - dim_im;
  }
  return out;
}

LowDegreeReport low_degree_compare(const QuadraticModel& M, const Operad& P,
                                   const OperadMap& phi, int k_max) {
  int N = P.C.max_arity();
  DeformationComplex DCp = deformation_complex(M, P, phi);
  BarCooperad B;
  DeformationComplex DCb = deformation_complex_bar(M.Q, P, phi, &B);
  std::vector<GradedMap> iota = qperp_to_bar(M, B);
  const TotalLinf& Tb = DCb.conv.T;
  const TotalLinf& Tp = DCp.conv.T;
  // restriction along iota, block by block on the coinvariant spaces
  GradedMap F(DCb.L.g, DCp.L.g, 0);
  for (int n = 1; n <= N; ++n) {
    if (n >= (int)Tb.offset.size() || Tb.offset[n] < 0) continue;
    if (n >= (int)Tp.offset.size() || Tp.offset[n] < 0) continue;
    SpacePtr bn = B.A.C.at(n), qn = M.Qperp.C.at(n), pn = P.C.at(n);
    int dim_b = Tb.s[n].src()->dim();
    for (int b = 0; b < dim_b; ++b) {
      SparseVec eb;
      eb.add(b, 1);
      SparseVec v = Tb.s[n].apply(eb);
      int dg = DCb.L.g->degree(Tb.offset[n] + b) + 1;
      GradedMap fm = hom_as_map(bn, pn, v, dg);
      SparseVec w = hom_from_map(qn, pn, compose(fm, iota[n]));
      SparseVec lp = Tp.pi[n].apply(w);
      for (auto& [r, c] : lp.c) F.add_to(Tp.offset[n] + r, Tb.offset[n] + b, c);
    }
  }
  if (!(F.apply(DCb.base.phi) == DCp.base.phi))
    throw std::logic_error("low_degree_compare: base points do not match");
  LInfinityMorphism Fm;
  Fm.src = DCb.L;
  Fm.tgt = DCp.L;
  Fm.complete = true;
  Fm.f.resize(2);
  for (int i = 0; i < DCb.L.g->dim(); ++i) {
    SparseVec col = F.apply_basis(i);
    if (!col.is_zero()) Fm.f[1][{i}] = std::move(col);
  }
  CheckReport cr = check_linf_morphism(Fm, 2);
  if (!cr.ok)
    throw std::logic_error("low_degree_compare: restriction is not a morphism: " +
                           cr.witness);
  std::vector<CohomologyRow> rb = operad_cohomology(DCb, 0, k_max);
  std::vector<CohomologyRow> rp = operad_cohomology(DCp, 0, k_max);
  std::vector<SparseVec> im_p = image_basis(DCp.D);
  LowDegreeReport rep;
  rep.ok = true;
  for (int k = 0; k <= k_max; ++k) {
    LowDegreeReport::Cell cell;
    cell.degree = k;
    cell.dim_bar = rb[k].dim;
    cell.dim_perp = rp[k].dim;
    cell.exact = rb[k].exact && rp[k].exact;
    SpanBuilder span;
    for (const SparseVec& v : im_p) span.insert(v);
    int fresh = 0;
    for (const SparseVec& r : rb[k].reps)
      if (span.insert(F.apply(r))) ++fresh;
    cell.iso = cell.dim_bar == cell.dim_perp && fresh == cell.dim_bar;
    if (cell.exact && !cell.iso) rep.ok = false;
    rep.cells.push_back(cell);
  }
  return rep;
}

std::vector<SparseVec> formal_deformation_check(
    const DeformationComplex& DC, const std::vector<SparseVec>& phi_t,
    int t_max) {
  if (!phi_t.empty() && !phi_t[0].is_zero())
    throw std::invalid_argument("formal_deformation_check: constant term present");
  const LInfinity& L = DC.L;
  for (const SparseVec& v : phi_t)
    for (auto& [i, c] : v.c) {
      (void)c;
      if (L.g->degree(i) != 0)
        throw std::invalid_argument(
            "formal_deformation_check: family must have degree 1");
    }
  std::vector<SparseVec> res(std::max(t_max, 1));
  int kmax_n = L.complete ? L.K : (int)L.l.size() - 1;
  for (int k = 1; k < t_max; ++k) {
    // sum over n and ordered compositions k_1+..+k_n = k, k_j >= 1
    for (int n = 1; n <= std::min(kmax_n, k); ++n) {
      std::vector<int> parts(n);
      std::vector<int> word(n);
      std::function<void(int, int)> pick_parts = [&](int pos, int left) {
        if (pos == n) {
          if (left != 0) return;
          std::function<void(int, Rational)> pick_word = [&](int wp,
                                                             Rational coef) {
            if (wp == n) {
              res[k].add(L.bracket(n, word), coef);
              return;
            }
            if (parts[wp] >= (int)phi_t.size()) return;
            for (auto& [i, v] : phi_t[parts[wp]].c) {
              word[wp] = i;
              pick_word(wp + 1, coef * v);
            }
          };
          pick_word(0, 1);
          return;
        }
        for (int p = 1; p <= left - (n - pos - 1); ++p) {
          parts[pos] = p;
          pick_parts(pos + 1, left - p);
        }
      };
      pick_parts(0, k);
    }
  }
  return res;
}

}  // namespace opdh
