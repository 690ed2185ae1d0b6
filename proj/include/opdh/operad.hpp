#pragma once

#include <functional>
#include <map>
#include <tuple>

#include "opdh/collection.hpp"
#include "opdh/tree.hpp"

namespace opdh {

// Operad in skeletal form: a Collection with partial compositions
//   comp(n,i,m): C(n) (x) C(m) -> C(n+m-1),   1 <= i <= n,
// a unit in C(1), and the Collection's optional differential. Compositions
// are produced by a builder function and cached; compositions that would
// exceed max_arity yield the zero map to the zero space and are counted as
// truncation events.
class Operad {
 public:
  Collection C;
  SparseVec unit_vec;  // the unit element of C(1); empty if non-unital

  using CompBuilder = std::function<GradedMap(int, int, int)>;
  void set_comp_builder(CompBuilder b) { builder_ = std::move(b); }

  const GradedMap& comp(int n, int i, int m) const;
  bool within(int n, int m) const { return n + m - 1 <= C.max_arity(); }
  long truncation_events() const { return trunc_events_; }

 private:
  CompBuilder builder_;
  mutable std::map<std::tuple<int, int, int>, GradedMap> cache_;
  mutable long trunc_events_ = 0;
};

// The permutation tau o_x sigma on n+m-1 inputs induced by composing at
// slot x (1-based): inputs of the q-block are permuted by sigma inside the
// block placed at tau(x), the rest follow tau. Convention validated on the
// endomorphism operad.
Perm block_perm(const Perm& tau, int x, const Perm& sigma);

// Equivariance, both associativity squares, unit laws, derivation rule.
CheckReport check_operad_axioms(const Operad& P);

// End_V: basis of End_V(n) = Hom(V^{(x)n}, V) is (input multi-index, output)
// pairs; composition is substitution, realized through the graded tensor
// calculus so all signs are forced by function composition.
Operad endomorphism_operad(SpacePtr V, int max_arity);
// interpret a vector in End_V(n) as an actual map V^{(x)n} -> V
GradedMap end_as_map(const Operad& E, SpacePtr V, int n, const SparseVec& v);
// inverse of end_as_map on homogeneous maps
SparseVec end_from_map(const Operad& E, int n, const GradedMap& f);

// gamma_t: (x)_{v in DF order} P(a_v) -> P(n): compose a planar tree's worth
// of operations, respecting the tree's leaf labels. For the trivial tree
// (no vertices) this is unit insertion k -> P(1).
GradedMap gamma_map(const Operad& P, const PlanarTree& t);

// Free operad on a collection: basis = (canonical labeled tree, decoration)
// pairs; composition by grafting. Unit adjoined in arity 1.
struct FreeOperadBasis {
  // per arity: list of (tree encoding, decoration indices in DF order)
  struct Elem {
    std::string tree;
    std::vector<int> dec;
  };
  std::vector<std::vector<Elem>> elems;       // [arity]
  std::vector<std::vector<PlanarTree>> trees; // [arity] canonical trees
};
Operad free_operad(const Collection& C, int max_arity, FreeOperadBasis* basis_out = nullptr);

// Presentation: generators with arity/degree and an S-action tag, plus
// relations as linear combinations of decorated tree monomials.
struct OperadPresentation {
  struct Generator {
    std::string name;
    int arity;
    int degree;
    enum Action { SYMMETRIC, ANTISYMMETRIC, REGULAR } action;
  };
  struct Term {
    Rational coeff;
    std::string tree;                 // decorated monomial: (gen args...) syntax
  };
  std::vector<Generator> generators;
  std::vector<std::vector<Term>> relations;
};

// The quotient of the free operad on the presentation's generators by the
// operadic ideal generated by the relations, truncated at max_arity.
Operad presented_operad(const OperadPresentation& pres, int max_arity);

// Built-in models. Ass(n) = Q[S_n] with composition by word substitution;
// Com(n) = Q trivial; Lie via its presentation (Jacobi).
Operad ass_operad(int max_arity);
Operad com_operad(int max_arity);
Operad lie_operad(int max_arity);

// Operad map P -> Q determined by images of generating basis elements
// (arity-wise GradedMaps); extended over compositions is implicit since we
// only store the arity-wise maps, but check_operad_map verifies the maps
// respect comp and actions on all basis pairs.
struct OperadMap {
  std::vector<GradedMap> f;  // [arity]
};
CheckReport check_operad_map(const Operad& P, const Operad& Q, const OperadMap& m);

// The operad map Ass -> End_V induced by a degree-0 product mu: V(x)V -> V
// (sends the identity word in Ass(n) to the left-normed n-fold product).
OperadMap algebra_structure_map(const Operad& ass, const Operad& endv, const GradedMap& mu);

}  // namespace opdh
