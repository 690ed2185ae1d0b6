#pragma once

#include <functional>
#include <map>
#include <tuple>

#include "opdh/operad.hpp"

namespace opdh {

// Cooperad in skeletal form: a Collection with partial cocompositions
//   decomp(n,i,m): C(n+m-1) -> C(n) (x) C(m),   1 <= i <= n,
// a counit C(1) -> k, a coaugmentation k -> C(1), and the Collection's
// optional differential (a coderivation). Validity is certified through the
// pairing-adjoint operad (see transpose_operad / check_cooperad_axioms).
class Cooperad {
 public:
  Collection C;
  GradedMap counit;  // C(1) -> k (the empty tensor space)
  SparseVec coaug;   // image of 1 in C(1)

  using DecompBuilder = std::function<GradedMap(int, int, int)>;
  void set_decomp_builder(DecompBuilder b) { builder_ = std::move(b); }

  const GradedMap& decomp(int n, int i, int m) const;

 private:
  DecompBuilder builder_;
  mutable std::map<std::tuple<int, int, int>, GradedMap> cache_;
};

// Transpose of f on the supplied spaces (the duals, or the same spaces
// when the basis is self-dual).  Entrywise: out[c,r] = f[r,c].  With the
// diagonal basis pairing this convention makes transposition carry every
// (co)operad identity to its mirror with no extra signs, including the
// (co)derivation rule for a degree-1 differential.
GradedMap adjoint_map(const GradedMap& f, SpacePtr new_src, SpacePtr new_tgt);

// dual space: same basis names, negated degrees
SpacePtr dual_space(SpacePtr v);

// The adjoint operad of a cooperad (on dual spaces) and the dual cooperad
// of an operad with finite-dimensional components.
Operad transpose_operad(const Cooperad& A);
Cooperad transpose_cooperad(const Operad& P);

// Coassociativity, coequivariance (with the inverse twist), counit laws and
// the coderivation rule, all certified on the adjoint operad.
CheckReport check_cooperad_axioms(const Cooperad& A);

// Cofree conilpotent cooperad on a generator collection: same decorated
// tree basis as the free operad (char 0: invariants = coinvariants via
// averaging); cocomposition dual to grafting = summing over edge cuts.
Cooperad cofree_cooperad(const Collection& C, int max_arity,
                         FreeOperadBasis* basis_out = nullptr);

// Tree cocomposition C(n) -> (x)_{v in DF(t)} C(a_v), dual to gamma_map.
GradedMap delta_map(const Cooperad& A, const PlanarTree& t);

// position of the basis element (corolla(arity), {gen}) in the free basis
int free_corolla_index(const FreeOperadBasis& B, int arity, int gen);

// Bar construction of an augmented 1-reduced operad: the cofree cooperad on
// the shifted augmentation ideal P_bar[1], truncated to trees with at most
// max_weight vertices, whose Collection carries the bar differential (edge
// contraction plus the internal differential). gen_incl/gen_proj embed and
// project the weight-one part P_bar(n)[1].
struct BarCooperad {
  Cooperad A;
  FreeOperadBasis basis;               // decorated-tree bookkeeping (kept elements)
  std::vector<std::vector<int>> weight;  // [arity][basis index] = vertex count
  std::vector<GradedMap> gen_incl;     // P_bar(n)[1] -> A.C(n)
  std::vector<GradedMap> gen_proj;     // A.C(n) -> P_bar(n)[1]
  int max_weight = 0;
};
BarCooperad bar(const Operad& P, int max_weight);

// Cobar construction of a coaugmented 1-reduced cooperad: the free operad
// on the shifted coaugmentation coideal A_bar[1], with the derivation
// differential (internal differential plus single-edge cocomposition),
// truncated to at most max_weight vertices.
struct CobarOperad {
  Operad P;                            // operad with differential
  FreeOperadBasis basis;
  std::vector<std::vector<int>> weight;
  std::vector<GradedMap> gen_incl;     // A_bar(n)[1] -> P.C(n)
  std::vector<GradedMap> gen_proj;     // P.C(n) -> A_bar(n)[1]
  int max_weight = 0;
};
CobarOperad cobar(const Cooperad& A, int max_weight);

}  // namespace opdh
