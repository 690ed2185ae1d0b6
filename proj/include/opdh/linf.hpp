#pragma once

#include <map>
#include <string>
#include <vector>

#include "opdh/homotopy.hpp"

namespace opdh {

// (p,q)-shuffles as permutations of {0..p+q-1}: the relative order of the
// first p and of the last q slots is preserved.
std::vector<Perm> shuffle_perms(int p, int q);
// The Koszul-signed sum of all (p,q)-shuffles acting on the given factors.
GradedMap shuffle_map(const std::vector<SpacePtr>& factors, int p, int q);

// An L-infinity algebra presented on the desuspended space: brackets of
// degree +1 on words over `g`. Symmetric words are identified with the
// invariant tensors (sums over all distinct arrangements with Koszul
// signs); the stored columns are tensor-level and need not be symmetric
// individually, only their symmetric-word evaluations are meaningful.
struct LInfinity {
  SpacePtr g;              // the underlying space, already desuspended
  std::vector<int> wt;     // optional second grading per basis index (empty = none)
  int K = 0;               // brackets stored for word lengths 1..K
  bool complete = false;   // true when the brackets vanish beyond K exactly
  // l[n]: basis word (sequence of indices of g) -> value in g; missing = 0
  std::vector<std::map<std::vector<int>, SparseVec>> l;

  SparseVec bracket(int n, const std::vector<int>& word) const;
  // evaluation on the symmetric word of a multiset (sorted indices)
  SparseVec bracket_sym(int n, const std::vector<int>& multiset) const;
  bool operator==(const LInfinity& o) const;
};

// Degree-1 element (degree 0 after desuspension) tested against the
// Maurer-Cartan equation. `positive` asserts the support has strictly
// positive second grading, the termination certificate for the series.
struct MCElement {
  SparseVec phi;
  bool positive = false;
};

struct LInfinityMorphism {
  LInfinity src, tgt;
  bool complete = false;   // components vanish beyond the stored range
  // f[n]: degree-0 components on basis words over src.g, values in tgt.g
  std::vector<std::map<std::vector<int>, SparseVec>> f;

  SparseVec component(int n, const std::vector<int>& word) const;
};
LInfinityMorphism identity_linf_morphism(const LInfinity& L);

// The placement map i: a symmetric word over the desuspended total space
// of C spreads over all leaf-ordered planar trees whose vertex arities
// match, grouped by canonical labeled tree (keys are canonical encodings,
// values live on the tree's desuspended tensor space). A word entry is
// (arity, basis index in C(arity)); the coefficient map must be symmetric
// under Koszul-signed swaps in the desuspended degrees (throws with the
// asymmetry witness otherwise).
using SymWord = std::map<std::vector<std::pair<int, int>>, Rational>;
std::map<std::string, SparseVec> symmetrize_i(const Collection& C, const SymWord& w);
// the same on coinvariant-space indices, lifted through the averaging section
std::map<std::string, SparseVec> symmetrize_i_coinv(const Collection& C, const SymWord& w);
// action of a tree automorphism on the component of the canonical tree t
GradedMap aut_action(const Collection& C, const PlanarTree& t, const TreeAutomorphism& a);

enum class LinfVariant { total, coinvariant };

// The L-infinity algebra on the (desuspended) total space of a homotopy
// operad: l_n sums the operations of all leaf-ordered planar trees with n
// vertices over the placement map. The coinvariant variant conjugates by
// the per-arity averaging projection and section.
struct TotalLinf {
  LInfinity L;
  std::vector<int> offset;    // arity -> first basis index in L.g, -1 absent
  std::vector<int> arity_of;  // basis index -> arity
  // per arity: desuspended block projection/section (identity pair for the
  // total variant, averaging pair for the coinvariant variant)
  std::vector<GradedMap> pi, s;
};
TotalLinf linf_from_homotopy(const HomotopyOperad& H, LinfVariant v);

// The induced morphism on total spaces: f_n sums the morphism components
// of all leaf-ordered planar trees with n vertices.
LInfinityMorphism linf_morphism_from_homotopy(const HomotopyMorphism& m, LinfVariant v);

// sum_{n+k=m} l_{k+1} . l_n^k = 0 with l_n^k = Sh_{1,k} . (l_n (x) id^k),
// evaluated on every symmetric basis word of weight m <= up_to.
CheckReport check_linf_relations(const LInfinity& L, int up_to);
// sum_m sum_{n_1+..+n_m=n} l_m . (f_{n_1} (x) .. (x) f_{n_m})
//   == sum_{k+p=n} f_{k+1} . l_p^k  on symmetric words of weight <= up_to.
CheckReport check_linf_morphism(const LInfinityMorphism& f, int up_to);

// Residual sum_{n>=1} l_n(phi^(x)n). `bound` is an explicit series bound
// (must be <= K); with bound -1 the bound is derived from completeness or
// from the positive-second-grading contract, and the call throws when no
// termination certificate is available (never truncates silently).
SparseVec mc_check(const LInfinity& L, const MCElement& phi, int bound = -1);

// The phi-perturbed brackets l~_j(x) = sum_p l_{j+p}(Sh_{p,j}(phi^p; x)).
LInfinity perturb(const LInfinity& L, const MCElement& phi, int bound = -1);
// psi = sum_n f_n(phi^(x)n), a Maurer-Cartan element of the target.
MCElement pushforward_mc(const LInfinityMorphism& f, const MCElement& phi, int bound = -1);
// f~_n(x) = sum_p f_{n+p}(Sh_{p,n}(phi^p; x)), a morphism of the perturbed
// algebras perturb(src, phi) -> perturb(tgt, pushforward_mc(f, phi)).
LInfinityMorphism perturb_morphism(const LInfinityMorphism& f, const MCElement& phi, int bound = -1);

}  // namespace opdh
