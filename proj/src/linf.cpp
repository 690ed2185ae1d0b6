#include "opdh/linf.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace opdh {

namespace {

// Koszul sign of the arrangement relative to the (sorted) multiset: one
// factor (-1)^{d_i d_j} per inverted pair of indices.
int arrangement_sign(const std::vector<int>& word, const GradedSpace& sp) {
  int s = 1;
  for (size_t i = 0; i < word.size(); ++i)
    for (size_t j = i + 1; j < word.size(); ++j)
      if (word[i] > word[j] && (sp.degree(word[i]) & 1) && (sp.degree(word[j]) & 1))
        s = -s;
  return s;
}

// All distinct arrangements of the sorted multiset with Koszul signs; the
// empty map when the symmetric word vanishes (a repeated odd index).
std::map<std::vector<int>, Rational> orbit_word(const std::vector<int>& multiset,
                                                const GradedSpace& sp) {
  std::map<std::vector<int>, Rational> W;
  for (size_t i = 0; i + 1 < multiset.size(); ++i)
    if (multiset[i] == multiset[i + 1] && (sp.degree(multiset[i]) & 1)) return W;
  std::vector<int> w = multiset;
  std::sort(w.begin(), w.end());
  do {
    W[w] = arrangement_sign(w, sp);
  } while (std::next_permutation(w.begin(), w.end()));
  return W;
}

// l_n^k = Sh_{1,k} . (l_n (x) id^k) applied to a signed word sum over
// (n+k)-words; the result is a signed sum over (k+1)-words.
std::map<std::vector<int>, Rational> apply_lnk(
    const LInfinity& L, int n, int k,
    const std::map<std::vector<int>, Rational>& W) {
  std::map<std::vector<int>, Rational> out;
  for (auto& [w, c] : W) {
    std::vector<int> head(w.begin(), w.begin() + n);
    SparseVec y = L.bracket(n, head);
    if (y.is_zero()) continue;
    for (auto& [gi, gc] : y.c) {
      int dy = L.g->degree(gi);
      // shuffle the bracket value past the k spectators
      int sign = 1;
      for (int j = 0; j <= k; ++j) {
        std::vector<int> v;
        for (int q = 0; q < j; ++q) v.push_back(w[n + q]);
        v.push_back(gi);
        for (int q = j; q < k; ++q) v.push_back(w[n + q]);
        Rational add = c * gc * sign;
        auto it = out.find(v);
        if (it == out.end())
          out.emplace(std::move(v), add);
        else if ((it->second += add) == 0)
          out.erase(it);
        if (j < k && (dy & 1) && (L.g->degree(w[n + j]) & 1)) sign = -sign;
      }
    }
  }
  return out;
}

int max_weight_of(const LInfinity& L) {
  int W = 0;
  for (int x : L.wt) W = std::max(W, x);
  return W;
}

// Resolve the bound of a Maurer-Cartan type series with terms of word
// length 1..stored; throws when no termination certificate applies.
int series_bound(const LInfinity& L, const MCElement& phi, int bound, int stored,
                 bool complete, const char* what) {
  for (auto& [i, v] : phi.phi.c) {
    (void)v;
    if (L.g->degree(i) != 0)
      throw std::runtime_error(std::string(what) +
                               ": element not concentrated in degree 1");
  }
  if (bound >= 0) {
    if (bound > stored)
      throw std::runtime_error(std::string(what) +
                               ": requested bound exceeds the stored truncation");
    return bound;
  }
  if (complete) return stored;
  if (!L.wt.empty() && phi.positive) {
    for (auto& [i, v] : phi.phi.c) {
      (void)v;
      if (L.wt[i] < 1)
        throw std::runtime_error(std::string(what) +
                                 ": support violates the positive-grading contract");
    }
    int W = max_weight_of(L);
    if (W > stored)
      throw std::runtime_error(std::string(what) +
                               ": positive grading needs terms beyond the truncation");
    return W;
  }
  throw std::runtime_error(std::string(what) +
                           ": no termination certificate (give an explicit bound)");
}

void add_column(std::map<std::vector<int>, SparseVec>& cols,
                const std::vector<int>& word, const SparseVec& v,
                const Rational& scale) {
  if (v.is_zero() || scale == 0) return;
  auto& slot = cols[word];
  slot.add(v, scale);
  if (slot.is_zero()) cols.erase(word);
}

}  // namespace

std::vector<Perm> shuffle_perms(int p, int q) {
  std::vector<Perm> out;
  std::vector<int> pick(p + q, 0);
  std::fill(pick.begin(), pick.begin() + p, 1);
  std::sort(pick.begin(), pick.end());
  // iterate all position sets of the first block
  do {
    Perm sigma(p + q);
    int a = 0, b = 0;
    for (int slot = 0; slot < p + q; ++slot) {
      if (pick[slot])
        sigma[a++] = slot;
      else
        sigma[p + b++] = slot;
    }
    out.push_back(std::move(sigma));
  } while (std::next_permutation(pick.begin(), pick.end()));
  return out;
}

GradedMap shuffle_map(const std::vector<SpacePtr>& factors, int p, int q) {
  if ((int)factors.size() != p + q)
    throw std::runtime_error("shuffle_map: factor count mismatch");
  SpacePtr sp = tensor_space(factors);
  GradedMap out(sp, sp, 0);
  for (const Perm& sigma : shuffle_perms(p, q)) {
    GradedMap m = permute_factors(sigma, factors);
    for (auto& [rc, v] : m.entries()) out.add_to(rc.first, rc.second, v);
  }
  return out;
}

SparseVec LInfinity::bracket(int n, const std::vector<int>& word) const {
  SparseVec z;
  if (n < 1 || n >= (int)l.size()) return z;
  auto it = l[n].find(word);
  return it == l[n].end() ? z : it->second;
}

SparseVec LInfinity::bracket_sym(int n, const std::vector<int>& multiset) const {
  SparseVec out;
  for (auto& [w, c] : orbit_word(multiset, *g)) out.add(bracket(n, w), c);
  return out;
}

bool LInfinity::operator==(const LInfinity& o) const {
  if (g->dim() != o.g->dim() || K != o.K || wt != o.wt) return false;
  if (l.size() != o.l.size()) return false;
  for (size_t n = 0; n < l.size(); ++n)
    if (l[n] != o.l[n]) return false;
  return true;
}

SparseVec LInfinityMorphism::component(int n, const std::vector<int>& word) const {
  SparseVec z;
  if (n < 1 || n >= (int)f.size()) return z;
  auto it = f[n].find(word);
  return it == f[n].end() ? z : it->second;
}

LInfinityMorphism identity_linf_morphism(const LInfinity& L) {
  LInfinityMorphism m;
  m.src = L;
  m.tgt = L;
  m.complete = true;
  m.f.resize(2);
  for (int i = 0; i < L.g->dim(); ++i) {
    SparseVec e;
    e.add(i, 1);
    m.f[1].emplace(std::vector<int>{i}, std::move(e));
  }
  return m;
}

GradedMap aut_action(const Collection& C, const PlanarTree& t,
                     const TreeAutomorphism& a) {
  return tree_transport(C, -1, t, t, a.reord);
}

std::map<std::string, SparseVec> symmetrize_i(const Collection& C, const SymWord& w) {
  // symmetry of the input in the desuspended degrees
  for (auto& [word, c] : w) {
    for (size_t i = 0; i + 1 < word.size(); ++i) {
      auto swapped = word;
      std::swap(swapped[i], swapped[i + 1]);
      int di = C.at(word[i].first)->degree(word[i].second) - 1;
      int dj = C.at(word[i + 1].first)->degree(word[i + 1].second) - 1;
      Rational expect = ((di & 1) && (dj & 1)) ? -c : c;
      auto it = w.find(swapped);
      Rational got = it == w.end() ? Rational(0) : it->second;
      if (got != expect)
        throw std::runtime_error(
            "symmetrize_i: input not symmetric at factor swap " +
            std::to_string(i) + "," + std::to_string(i + 1) + " of a word of length " +
            std::to_string(word.size()));
    }
  }
  std::map<std::string, SparseVec> out;
  for (auto& [word, c] : w) {
    int m = (int)word.size();
    std::vector<int> arities, locals;
    std::vector<SpacePtr> factors;
    int leaves = 1;
    for (auto& [a, idx] : word) {
      arities.push_back(a);
      locals.push_back(idx);
      factors.push_back(shift_space(C.at(a), -1));
      leaves += a - 1;
    }
    if (leaves < 1 || leaves > C.max_arity()) continue;
    std::vector<int> arity_set(arities);
    std::sort(arity_set.begin(), arity_set.end());
    arity_set.erase(std::unique(arity_set.begin(), arity_set.end()), arity_set.end());
    for (const PlanarTree& t : leaf_ordered_planar_trees(leaves, m, arity_set)) {
      if (arity_sequence(t) != arities) continue;
      auto [tc, r] = canonicalize(t);
      GradedMap tr = tree_transport(C, -1, t, tc, r);
      SparseVec arg;
      arg.add(tensor_index(factors, locals), 1);
      SparseVec img = tr.apply(arg);
      if (img.is_zero()) continue;
      auto& slot = out[encode(tc)];
      slot.add(img, c);
      if (slot.is_zero()) out.erase(encode(tc));
    }
  }
  return out;
}

std::map<std::string, SparseVec> symmetrize_i_coinv(const Collection& C,
                                                    const SymWord& w) {
  // lift every factor through the averaging section, then place
  std::map<int, Coinvariants> co;
  for (auto& [word, c] : w) {
    (void)c;
    for (auto& [a, idx] : word) {
      (void)idx;
      if (!co.count(a)) co.emplace(a, coinvariants(C, a));
    }
  }
  SymWord lifted;
  for (auto& [word, c] : w) {
    std::vector<std::pair<size_t, SparseVec>> lifts;
    // expand the product of section images
    std::function<void(size_t, std::vector<std::pair<int, int>>&, Rational)> rec =
        [&](size_t pos, std::vector<std::pair<int, int>>& acc, Rational coef) {
          if (pos == word.size()) {
            lifted[acc] += coef;
            return;
          }
          auto [a, idx] = word[pos];
          SparseVec img = co.at(a).s.apply_basis(idx);
          for (auto& [j, v] : img.c) {
            acc.push_back({a, j});
            rec(pos + 1, acc, coef * v);
            acc.pop_back();
          }
        };
    std::vector<std::pair<int, int>> acc;
    rec(0, acc, c);
  }
  for (auto it = lifted.begin(); it != lifted.end();)
    it = it->second == 0 ? lifted.erase(it) : std::next(it);
  return symmetrize_i(C, lifted);
}

TotalLinf linf_from_homotopy(const HomotopyOperad& H, LinfVariant variant) {
  CheckReport sq = check_square_zero(H);
  if (!sq.ok)
    throw std::runtime_error("linf_from_homotopy: square-zero fails: " + sq.witness);
  int N = H.max_arity();
  TotalLinf T;
  T.offset.assign(N + 1, -1);
  T.pi.resize(N + 1);
  T.s.resize(N + 1);
  std::vector<SpacePtr> blk(N + 1, zero_space());
  std::vector<std::pair<std::string, int>> basis;
  for (int a = 1; a <= N; ++a) {
    SpacePtr sh = H.shifted(a);
    if (sh->dim() == 0) continue;
    if (variant == LinfVariant::coinvariant) {
      Coinvariants co = coinvariants(H.P, a);
      blk[a] = shift_space(co.space, -1);
      T.pi[a] = shift_map(co.pi, -1);
      T.s[a] = shift_map(co.s, -1);
    } else {
      blk[a] = sh;
      T.pi[a] = identity_map(sh);
      T.s[a] = identity_map(sh);
    }
    if (blk[a]->dim() == 0) continue;
    T.offset[a] = (int)basis.size();
    for (int i = 0; i < blk[a]->dim(); ++i) {
      basis.push_back({std::to_string(a) + ":" + blk[a]->name(i), blk[a]->degree(i)});
      T.arity_of.push_back(a);
    }
  }
  LInfinity& L = T.L;
  L.g = GradedSpace::make(std::move(basis));
  L.wt.resize(L.g->dim());
  for (int i = 0; i < L.g->dim(); ++i) L.wt[i] = T.arity_of[i] - 1;
  L.K = H.max_weight;
  L.complete = is_strict(H) && L.K >= 2;
  if (H.P.at(1)->dim() == 0 && L.K >= N) L.complete = true;
  L.l.resize(L.K + 1);
  std::vector<int> va = H.vertex_arities();
  for (int n = 1; n <= L.K; ++n) {
    for (int k = 1; k <= N; ++k) {
      if (blk[k]->dim() == 0) continue;
      // group the leaf-ordered trees by their vertex arity sequence
      std::map<std::vector<int>, GradedMap> blocks;
      for (const PlanarTree& t : leaf_ordered_planar_trees(k, n, va)) {
        std::vector<int> seq = arity_sequence(t);
        bool ok = true;
        for (int a : seq)
          if (a > N || blk[a]->dim() == 0) ok = false;
        if (!ok) continue;
        GradedMap op = H.op_for(t);
        auto it = blocks.find(seq);
        if (it == blocks.end())
          blocks.emplace(std::move(seq), std::move(op));
        else
          it->second = add(it->second, op);
      }
      for (auto& [seq, op] : blocks) {
        GradedMap m = op;
        if (variant == LinfVariant::coinvariant) {
          std::vector<GradedMap> secs;
          for (int a : seq) secs.push_back(T.s[a]);
          m = compose(T.pi[k], compose(op, tensor_maps(secs)));
        }
        if (m.is_zero()) continue;
        std::vector<SpacePtr> fs;
        for (int a : seq) fs.push_back(blk[a]);
        // scatter the block columns into total-space words
        std::map<int, SparseVec> cols;
        for (auto& [rc, v] : m.entries()) cols[rc.second].add(T.offset[k] + rc.first, v);
        for (auto& [col, vec] : cols) {
          std::vector<int> idx = tensor_unindex(fs, col);
          std::vector<int> word(seq.size());
          for (size_t j = 0; j < seq.size(); ++j) word[j] = T.offset[seq[j]] + idx[j];
          add_column(L.l[n], word, vec, 1);
        }
      }
    }
  }
  return T;
}

LInfinityMorphism linf_morphism_from_homotopy(const HomotopyMorphism& m,
                                              LinfVariant variant) {
  if (!m.src || !m.tgt)
    throw std::runtime_error("linf_morphism_from_homotopy: missing source or target");
  TotalLinf S = linf_from_homotopy(*m.src, variant);
  TotalLinf Tt = linf_from_homotopy(*m.tgt, variant);
  LInfinityMorphism out;
  out.src = S.L;
  out.tgt = Tt.L;
  int N = m.src->max_arity();
  int K = m.src->max_weight;
  out.f.resize(K + 1);
  bool only_corolla = true;
  for (auto& [enc, g] : m.phi) {
    (void)g;
    if (decode_tree(enc).n_vertices() > 1) only_corolla = false;
  }
  out.complete = only_corolla || (m.src->P.at(1)->dim() == 0 && K >= N);
  std::vector<int> va = m.src->vertex_arities();
  for (int n = 1; n <= K; ++n) {
    for (int k = 1; k <= std::min(N, m.tgt->max_arity()); ++k) {
      if (Tt.offset[k] < 0) continue;
      std::map<std::vector<int>, GradedMap> blocks;
      for (const PlanarTree& t : leaf_ordered_planar_trees(k, n, va)) {
        std::vector<int> seq = arity_sequence(t);
        bool ok = true;
        for (int a : seq)
          if (a > N || S.offset[a] < 0) ok = false;
        if (!ok) continue;
        GradedMap g = m.phi_for(t);
        auto it = blocks.find(seq);
        if (it == blocks.end())
          blocks.emplace(std::move(seq), std::move(g));
        else
          it->second = add(it->second, g);
      }
      for (auto& [seq, g] : blocks) {
        GradedMap mg = g;
        if (variant == LinfVariant::coinvariant) {
          std::vector<GradedMap> secs;
          for (int a : seq) secs.push_back(S.s[a]);
          mg = compose(Tt.pi[k], compose(g, tensor_maps(secs)));
        }
        if (mg.is_zero()) continue;
        std::vector<SpacePtr> fs;
        for (int a : seq) fs.push_back(S.s[a].src());
        std::map<int, SparseVec> cols;
        for (auto& [rc, v] : mg.entries())
          cols[rc.second].add(Tt.offset[k] + rc.first, v);
        for (auto& [col, vec] : cols) {
          std::vector<int> idx = tensor_unindex(fs, col);
          std::vector<int> word(seq.size());
          for (size_t j = 0; j < seq.size(); ++j) word[j] = S.offset[seq[j]] + idx[j];
          add_column(out.f[n], word, vec, 1);
        }
      }
    }
  }
  return out;
}

namespace {

// sorted multisets of basis indices, pruned by the weight bound when a
// second grading is present
void for_each_multiset(const LInfinity& L, int m,
                       const std::function<void(const std::vector<int>&)>& fn) {
  int W = L.wt.empty() ? 0 : max_weight_of(L);
  std::vector<int> word;
  std::function<void(int, int)> rec = [&](int from, int wsum) {
    if ((int)word.size() == m) {
      fn(word);
      return;
    }
    for (int i = from; i < L.g->dim(); ++i) {
      if (!L.wt.empty() && wsum + L.wt[i] > W) continue;
      word.push_back(i);
      rec(i, wsum + (L.wt.empty() ? 0 : L.wt[i]));
      word.pop_back();
    }
  };
  rec(0, 0);
}

std::string word_str(const LInfinity& L, const std::vector<int>& w) {
  std::string s;
  for (int i : w) {
    if (!s.empty()) s += ", ";
    s += L.g->name(i);
  }
  return s;
}

}  // namespace

CheckReport check_linf_relations(const LInfinity& L, int up_to) {
  CheckReport rep;
  if (up_to > L.K && !L.complete) {
    rep.fail("relation weight exceeds the stored truncation");
    return rep;
  }
  for (int m = 1; m <= up_to && rep.ok; ++m) {
    for_each_multiset(L, m, [&](const std::vector<int>& ms) {
      if (!rep.ok) return;
      auto W = orbit_word(ms, *L.g);
      if (W.empty()) return;
      SparseVec residual;
      for (int n = 1; n <= m; ++n) {
        int k = m - n;
        for (auto& [v, c] : apply_lnk(L, n, k, W))
          residual.add(L.bracket(k + 1, v), c);
      }
      if (!residual.is_zero())
        rep.fail("relation fails at weight " + std::to_string(m) + " on {" +
                 word_str(L, ms) + "}: residual " + residual.str(*L.g));
    });
  }
  return rep;
}

CheckReport check_linf_morphism(const LInfinityMorphism& F, int up_to) {
  CheckReport rep;
  const LInfinity& S = F.src;
  const LInfinity& T = F.tgt;
  for (int n = 1; n <= up_to && rep.ok; ++n) {
    for_each_multiset(S, n, [&](const std::vector<int>& ms) {
      if (!rep.ok) return;
      auto W = orbit_word(ms, *S.g);
      if (W.empty()) return;
      // left side: brackets of the image blocks
      SparseVec lhs;
      for (auto& [w, c] : W) {
        // compositions of n into consecutive blocks
        std::function<void(int, std::vector<int>&, std::map<std::vector<int>, Rational>&)>
            rec = [&](int pos, std::vector<int>& sizes,
                      std::map<std::vector<int>, Rational>& words) {
              if (pos == n) {
                for (auto& [tw, tc] : words) lhs.add(T.bracket((int)sizes.size(), tw), tc * c);
                return;
              }
              for (int len = 1; pos + len <= n; ++len) {
                std::vector<int> block(w.begin() + pos, w.begin() + pos + len);
                SparseVec img = F.component(len, block);
                if (img.is_zero()) continue;
                std::map<std::vector<int>, Rational> next;
                for (auto& [tw, tc] : words)
                  for (auto& [gi, gv] : img.c) {
                    auto nw = tw;
                    nw.push_back(gi);
                    next[nw] += tc * gv;
                  }
                sizes.push_back(len);
                rec(pos + len, sizes, next);
                sizes.pop_back();
              }
            };
        std::vector<int> sizes;
        std::map<std::vector<int>, Rational> words;
        words[{}] = 1;
        rec(0, sizes, words);
      }
      // right side: f applied after the coderivation components
      SparseVec rhs;
      for (int p = 1; p <= n; ++p) {
        int k = n - p;
        for (auto& [v, c] : apply_lnk(S, p, k, W)) rhs.add(F.component(k + 1, v), c);
      }
      SparseVec diff = lhs;
      diff.add(rhs, -1);
      if (!diff.is_zero())
        rep.fail("morphism relation fails at weight " + std::to_string(n) + " on {" +
                 word_str(S, ms) + "}: difference " + diff.str(*T.g));
    });
  }
  return rep;
}

SparseVec mc_check(const LInfinity& L, const MCElement& phi, int bound) {
  int n_max = series_bound(L, phi, bound, L.K, L.complete, "mc_check");
  SparseVec residual;
  std::vector<std::pair<int, Rational>> supp(phi.phi.c.begin(), phi.phi.c.end());
  for (int n = 1; n <= n_max; ++n) {
    std::vector<int> word(n);
    std::function<void(int, Rational)> rec = [&](int pos, Rational coef) {
      if (pos == n) {
        residual.add(L.bracket(n, word), coef);
        return;
      }
      for (auto& [i, v] : supp) {
        word[pos] = i;
        rec(pos + 1, coef * v);
      }
    };
    rec(0, 1);
  }
  return residual;
}

LInfinity perturb(const LInfinity& L, const MCElement& phi, int bound) {
  int p_max = series_bound(L, phi, bound, L.K, L.complete, "perturb");
  if (!mc_check(L, phi, bound).is_zero())
    throw std::runtime_error("perturb: element does not satisfy Maurer-Cartan");
  LInfinity out;
  out.g = L.g;
  out.wt = L.wt;
  out.K = L.K;
  out.complete = L.complete;
  out.l.resize(L.l.size());
  for (int n = 1; n < (int)L.l.size(); ++n) {
    for (auto& [w, val] : L.l[n]) {
      // mark p of the n slots as phi entries; the rest stays a word of l~_{n-p}
      int limit = std::min(p_max, n - 1);
      for (int mask = 0; mask < (1 << n); ++mask) {
        int p = __builtin_popcount(mask);
        if (p > limit) continue;
        Rational coef = 1;
        std::vector<int> rest;
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) {
          if (mask & (1 << j)) {
            auto it = phi.phi.c.find(w[j]);
            if (it == phi.phi.c.end())
              ok = false;
            else
              coef *= it->second;
          } else {
            rest.push_back(w[j]);
          }
        }
        if (!ok) continue;
        add_column(out.l[n - p], rest, val, coef);
      }
    }
  }
  return out;
}

MCElement pushforward_mc(const LInfinityMorphism& F, const MCElement& phi, int bound) {
  int n_max = series_bound(F.src, phi, bound, (int)F.f.size() - 1, F.complete,
                           "pushforward_mc");
  MCElement out;
  out.positive = phi.positive;
  std::vector<std::pair<int, Rational>> supp(phi.phi.c.begin(), phi.phi.c.end());
  for (int n = 1; n <= n_max; ++n) {
    std::vector<int> word(n);
    std::function<void(int, Rational)> rec = [&](int pos, Rational coef) {
      if (pos == n) {
        out.phi.add(F.component(n, word), coef);
        return;
      }
      for (auto& [i, v] : supp) {
        word[pos] = i;
        rec(pos + 1, coef * v);
      }
    };
    rec(0, 1);
  }
  return out;
}

LInfinityMorphism perturb_morphism(const LInfinityMorphism& F, const MCElement& phi,
                                   int bound) {
  int p_max = series_bound(F.src, phi, bound, (int)F.f.size() - 1, F.complete,
                           "perturb_morphism");
  MCElement psi = pushforward_mc(F, phi, bound);
  LInfinityMorphism out;
  out.src = perturb(F.src, phi, bound);
  out.tgt = perturb(F.tgt, psi, bound);
  out.complete = F.complete;
  out.f.resize(F.f.size());
  for (int n = 1; n < (int)F.f.size(); ++n) {
    for (auto& [w, val] : F.f[n]) {
      int limit = std::min(p_max, n - 1);
      for (int mask = 0; mask < (1 << n); ++mask) {
        int p = __builtin_popcount(mask);
        if (p > limit) continue;
        Rational coef = 1;
        std::vector<int> rest;
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) {
          if (mask & (1 << j)) {
            auto it = phi.phi.c.find(w[j]);
            if (it == phi.phi.c.end())
              ok = false;
            else
              coef *= it->second;
          } else {
            rest.push_back(w[j]);
          }
        }
        if (!ok) continue;
        add_column(out.f[n - p], rest, val, coef);
      }
    }
  }
  return out;
}

}  // namespace opdh
