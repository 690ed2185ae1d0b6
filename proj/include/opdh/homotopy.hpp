#pragma once

#include <map>
#include <string>

#include "opdh/operad.hpp"

namespace opdh {

// Operad up to homotopy: a collection P together with degree +1 operations
//   o_t : (x)_{v in DF(t)} P(a_v)[-1]  ->  P(n)[-1]
// for canonical labeled trees t with n leaves and at most max_weight
// vertices. The one-vertex tree carries the internal differential. Trees
// absent from `ops` act as zero. All data lives on the shifted spaces; the
// only signs are Koszul signs of the graded tensor calculus.
struct HomotopyOperad {
  Collection P;       // underlying collection (without differential)
  int max_weight = 0; // trees carried/checked up to this vertex count
  std::map<std::string, GradedMap> ops;

  int max_arity() const { return P.max_arity(); }
  SpacePtr shifted(int n) const { return shift_space(P.at(n), -1); }
  // tensor of shifted spaces over the vertices of t in depth-first order
  SpacePtr tree_space(const PlanarTree& t) const;
  // arity values a with P(a) != 0 (vertex arities of admissible trees)
  std::vector<int> vertex_arities() const;
  // action of sigma on the shifted space
  GradedMap action_sh(int n, const Perm& sigma) const;
  // the operation over any planar labeled representative, transported from
  // the canonical tree; zero map when the canonical tree has no operation
  GradedMap op_for(const PlanarTree& t) const;
};

// The isomorphism (x)sh(from) -> (x)sh(to) induced by a reordering between
// two planar representatives of one labeled tree (Koszul factor permutation
// plus the per-vertex collection action on child slots). `shift` is the
// degree shift the factors carry (-1 for operads up to homotopy, +1 for the
// dual side).
GradedMap tree_transport(const Collection& C, int shift, const PlanarTree& from,
                         const PlanarTree& to, const Reordering& r);

// The map (x)sh(t) -> (x)sh(t/s) applying o_s to the factors of the
// connected subtree vs and reordering the rest (Koszul): one term of the
// square-zero sum. *quotient receives t/s.
GradedMap subtree_collapse(const HomotopyOperad& H, const PlanarTree& t,
                           const std::vector<int>& vs, PlanarTree* quotient);

// Sum over connected subtrees s of t of o_{t/s} . collapse_s = 0, for every
// canonical tree within truncation.
CheckReport check_square_zero(const HomotopyOperad& H);

// op_for(relabel(t, sigma)) == rho(sigma^{-1}) . op_for(t) on the shifted
// target, for generators sigma and all canonical trees.
CheckReport check_homotopy_equivariance(const HomotopyOperad& H);

// strict: no operations on trees with >= 3 vertices.
bool is_strict(const HomotopyOperad& H);
// minimal: the one-vertex operations (internal differential) vanish.
bool is_minimal(const HomotopyOperad& H);

// The strict operad <-> homotopy operad correspondence.
HomotopyOperad strict_from_operad(const Operad& P, int max_weight);
Operad operad_from_strict(const HomotopyOperad& H);

// Morphism of operads up to homotopy: degree-0 components
//   phi_t : (x)_{v in DF(t)} P(a_v)[-1] -> Q(n)[-1]
// per canonical tree; absent trees act as zero (the corolla component is
// the linear part).
struct HomotopyMorphism {
  const HomotopyOperad* src = nullptr;
  const HomotopyOperad* tgt = nullptr;
  std::map<std::string, GradedMap> phi;

  GradedMap phi_for(const PlanarTree& t) const;
};

// Partition of the vertex set of t into connected blocks, with the
// quotient tree and the block sitting at each quotient vertex.
struct TreePartition {
  std::vector<std::vector<int>> blocks;  // each sorted ascending
  PlanarTree quotient;
  std::vector<int> block_at;  // quotient DF position -> index into blocks
};
std::vector<TreePartition> connected_partitions(const PlanarTree& t);

// For every canonical tree t within truncation:
//   sum_{s <= t} phi_{t/s} . collapse_s
//     == sum_{partitions pi of t} o^Q_{t/pi} . ((x)_blocks phi_block) . shuffle
CheckReport check_morphism(const HomotopyMorphism& m);

// Cooperad up to homotopy: collection A with degree +1 operations
//   d_t : A(n)[1] -> (x)_{v in DF(t)} A(a_v)[1]
// (the components of a square-zero derivation on the free operad on A[1]).
struct HomotopyCooperad {
  Collection A;
  int max_weight = 0;
  std::map<std::string, GradedMap> ops;

  int max_arity() const { return A.max_arity(); }
  SpacePtr shifted(int n) const { return shift_space(A.at(n), 1); }
  SpacePtr tree_space(const PlanarTree& t) const;
  std::vector<int> vertex_arities() const;
  GradedMap op_for(const PlanarTree& t) const;
};

// The expansion map (x)sh(t/s) -> (x)sh(t) dual to subtree_collapse.
GradedMap subtree_expand(const HomotopyCooperad& H, const PlanarTree& t,
                         const std::vector<int>& vs, PlanarTree* quotient);

// Dual square-zero: sum over connected subtrees s of t of
// expand_s . d_{t/s} = 0.
CheckReport check_cosquare_zero(const HomotopyCooperad& H);

}  // namespace opdh
