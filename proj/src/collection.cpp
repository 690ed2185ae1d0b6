#include "opdh/collection.hpp"

#include <sstream>
#include <stdexcept>

namespace opdh {

void Collection::set_transposition(int n, int i, GradedMap m) {
  if ((int)transp_[n].size() != n - 1)
    transp_[n].assign(std::max(0, n - 1), GradedMap());
  transp_[n][i] = std::move(m);
}

GradedMap Collection::d(int n) const {
  if (diff_[n]) return *diff_[n];
  return zero_map(comp_[n], comp_[n], 1);
}

const GradedMap& Collection::action(int n, const Perm& sigma) const {
  auto key = std::make_pair(n, sigma);
  auto it = action_cache_.find(key);
  if (it != action_cache_.end()) return it->second;
  GradedMap result;
  if (sigma == perm_identity(n)) {
    result = identity_map(comp_[n]);
  } else {
    // peel adjacent transpositions: sigma = s_{i_k} . ... . s_{i_1} with
    // each step removing an adjacent inversion; then
    // rho(sigma) = rho(s_{i_1}) . ... . rho(s_{i_k}).
    Perm tau = sigma;
    std::vector<int> gens;
    while (tau != perm_identity(n)) {
      int i = -1;
      for (int j = 0; j + 1 < n; ++j)
        if (tau[j] > tau[j + 1]) {
          i = j;
          break;
        }
      gens.push_back(i);
      std::swap(tau[i], tau[i + 1]);  // tau := tau . s_i
    }
    // gens recorded first-applied-last: sigma = s_{g_last} ... s_{g_first}
    result = transp_[n][gens.back()];
    for (int k = (int)gens.size() - 2; k >= 0; --k)
      result = compose(transp_[n][gens[k]], result);
  }
  return action_cache_.emplace(std::move(key), std::move(result)).first->second;
}

CheckReport check_collection(const Collection& C) {
  CheckReport rep;
  for (int n = 1; n <= C.max_arity(); ++n) {
    if (C.at(n)->dim() == 0) continue;
    auto id = identity_map(C.at(n));
    for (int i = 0; i + 1 < n; ++i) {
      const GradedMap& si = C.transposition(n, i);
      if (si.deg() != 0) {
        rep.fail("action generator has nonzero degree, arity " + std::to_string(n));
        return rep;
      }
      if (!(compose(si, si) == id))
        rep.fail("s_i^2 != id at arity " + std::to_string(n) + ", i=" + std::to_string(i));
      for (int j = i + 2; j + 1 < n; ++j) {
        const GradedMap& sj = C.transposition(n, j);
        if (!(compose(si, sj) == compose(sj, si)))
          rep.fail("commuting generators fail at arity " + std::to_string(n));
      }
      if (i + 2 < n) {
        const GradedMap& sj = C.transposition(n, i + 1);
        auto lhs = compose(si, compose(sj, si));
        auto rhs = compose(sj, compose(si, sj));
        if (!(lhs == rhs)) rep.fail("braid relation fails at arity " + std::to_string(n));
      }
    }
    if (C.has_diff(n)) {
      auto d = C.d(n);
      if (d.deg() != 1) rep.fail("differential degree != +1 at arity " + std::to_string(n));
      if (!compose(d, d).is_zero()) rep.fail("d^2 != 0 at arity " + std::to_string(n));
      for (int i = 0; i + 1 < n; ++i) {
        const GradedMap& si = C.transposition(n, i);
        if (!(compose(d, si) == compose(si, d)))
          rep.fail("differential not equivariant at arity " + std::to_string(n));
      }
    }
  }
  return rep;
}

Coinvariants coinvariants(const Collection& C, int n) {
  SpacePtr V = C.at(n);
  // averaging operator e = (1/n!) sum_sigma rho(sigma)
  GradedMap e = zero_map(V, V, 0);
  auto perms = all_perms(n);
  for (const Perm& s : perms) e = add(e, C.action(n, s));
  e = e.scaled(Rational(1, (long)perms.size()));
  // gather the columns of e in one pass; per-column extraction is quadratic
  std::vector<SparseVec> ecols(V->dim());
  for (auto& [rc, val] : e.entries()) ecols[rc.second].add(rc.first, val);
  // invariant basis = column span of e
  SpanBuilder sb;
  std::vector<int> pivots;
  for (int c = 0; c < V->dim(); ++c) sb.insert(ecols[c]);
  std::vector<std::pair<std::string, int>> names;
  for (const SparseVec& r : sb.rows()) {
    int piv = r.c.begin()->first;
    names.push_back({V->name(piv), V->degree(piv)});
  }
  Coinvariants out;
  out.space = GradedSpace::make(std::move(names));
  out.s = GradedMap(out.space, V, 0);
  for (int k = 0; k < (int)sb.rows().size(); ++k)
    for (auto& [i, val] : sb.rows()[k].c) out.s.set(i, k, val);
  out.pi = GradedMap(V, out.space, 0);
  for (int c = 0; c < V->dim(); ++c) {
    std::vector<Rational> coords;
    if (!sb.row_coords(ecols[c], &coords))
      throw std::runtime_error("coinvariants: averaging image escaped its span");
    for (int k = 0; k < (int)coords.size(); ++k) out.pi.add_to(k, c, coords[k]);
  }
  return out;
}

}  // namespace opdh
