#pragma once

#include <map>
#include <string>
#include <vector>

#include "opdh/cooperad.hpp"
#include "opdh/graded.hpp"
#include "opdh/homotopy.hpp"
#include "opdh/linf.hpp"
#include "opdh/operad.hpp"

namespace opdh {

// Componentwise tensor of two operads on the same arity range:
// (P ⊗_H Q)(n) = P(n) ⊗ Q(n), diagonal action and composition.
Operad hadamard_operad(const Operad& P, const Operad& Q);

// Endomorphism operad of the one-dimensional space placed in degree -1.
// Its arity-n part is one-dimensional of degree n-1 and carries the sign
// representation; Hadamard product with it performs the operadic twist
// that sends a quadratic operad to the input of its dual cooperad.
Operad suspension_twist_operad(int max_arity);

// Hom(A, P) as a graded space: basis e[i <- j] for j a basis element of a
// and i a basis element of p, with degree deg(i) - deg(j).
SpacePtr hom_space(const SpacePtr& a, const SpacePtr& p);
int hom_index(const SpacePtr& a, const SpacePtr& p, int pi, int aj);
// encode a linear map a -> p as a vector in hom_space(a, p) and back
SparseVec hom_from_map(const SpacePtr& a, const SpacePtr& p,
                       const GradedMap& f);
GradedMap hom_as_map(const SpacePtr& a, const SpacePtr& p, const SparseVec& v,
                     int deg);

// Convolution operad P^A(n) = Hom(A(n), P(n)) for a strict cooperad A:
// composition phi o_i psi = comp_P(n,i,m) . (phi x psi) . decomp_A(n,i,m),
// action (phi sigma)(c) = (phi(c sigma^{-1})) sigma, differential
// d phi = d_P . phi - (-1)^{|phi|} phi . d_A, unit u_P . counit_A.
struct ConvolutionOperad {
  Cooperad A;
  Operad P;
  Operad conv;
};
ConvolutionOperad convolution(const Cooperad& A, const Operad& P);

// Convolution of a homotopy cooperad into an operad: an operad up to
// homotopy on the same hom collection, with tree operation
// op_t = gamma_t^P . (tensor of hom elements) . delta_t^A
// conjugated into the shifted-space convention of HomotopyOperad.
HomotopyOperad convolution_homotopy(const HomotopyCooperad& A,
                                    const Operad& P);

// Convolution operad (strict case) packaged with its homotopy-operad view
// truncated at weight 2 (the dg Lie data) and the induced coinvariant
// L-infinity algebra on the desuspended total space.
struct ConvolutionAlgebra {
  ConvolutionOperad C;
  HomotopyOperad H;
  TotalLinf T;
};
ConvolutionAlgebra convolution_algebra(const Cooperad& A, const Operad& P);

// Generator-map data for an operad map from the cobar construction on A
// into P: one GradedMap A(n) -> P(n) of degree +1 per arity n >= 2
// (index n of the vector; entries 0,1 unused). The correspondence with
// Maurer-Cartan elements projects via the averaging section and back.
MCElement mc_from_map(const ConvolutionAlgebra& CA,
                      const std::vector<GradedMap>& gen);
std::vector<GradedMap> map_from_mc(const ConvolutionAlgebra& CA,
                                   const MCElement& phi);

// A quadratic model: the operad Q, its dual cooperad Qperp obtained by
// dualizing the suspension twist of Q (so Qperp(n) sits in degree -(n-1)),
// and the degree +1 identification iota2 : Qperp(2) -> Q(2) of the binary
// generators used to build base points of deformation complexes.
struct QuadraticModel {
  std::string name;  // "ass" | "com" | "lie"
  Operad Q;
  Cooperad Qperp;
  GradedMap iota2;
};
QuadraticModel quadratic_model(const std::string& name, int max_arity);

// Extension of iota2 to a map of collections Qperp(n) -> bar(Q)(n)
// (degree 0, landing in the all-binary-tree part), computed as the
// cofree-cooperad extension of the generator corestriction. Verified to be
// a chain map into the bar differential and injective arity-wise.
std::vector<GradedMap> qperp_to_bar(const QuadraticModel& M,
                                    const BarCooperad& B);

// Deformation complex: the convolution L-infinity algebra perturbed at the
// Maurer-Cartan element encoding an operad map Q -> P. Reported degree k
// corresponds to internal degree k-1 on the desuspended total space (the
// base MC element sits in reported degree 1). Cohomology cells in reported
// degree k < exact_below are unaffected by the arity truncation.
struct DeformationComplex {
  ConvolutionAlgebra conv;
  MCElement base;
  LInfinity L;    // perturbed structure
  GradedMap D;    // perturbed differential l~_1 on the total space
  int max_arity;
  int exact_below;
};
// over the dual-cooperad model Qperp
DeformationComplex deformation_complex(const QuadraticModel& M,
                                       const Operad& P, const OperadMap& phi);
// over the bar-cooperad model bar(Q); optionally returns the bar data used
DeformationComplex deformation_complex_bar(const Operad& Q, const Operad& P,
                                           const OperadMap& phi,
                                           BarCooperad* bar_out = nullptr);

// One table row of operad cohomology: reported degree, arity of the cell
// (0 when representatives mix arities), dimension, truncation-soundness
// flag, and representative cocycles in total-space coordinates.
struct CohomologyRow {
  int degree = 0;
  int arity = 0;
  int dim = 0;
  bool exact = false;
  std::vector<SparseVec> reps;
};
std::vector<CohomologyRow> operad_cohomology(const DeformationComplex& DC,
                                             int k_min, int k_max);

// Classical Hochschild cochain complex Hom(V^{otimes k}, V) of an
// associative algebra (V, mult), dimensions of HH^k for k <= k_max.
// With reduced = true the k = 0 column is dropped, so HH^1 becomes the
// full space of derivations (no inner ones quotiented at k = 1 either
// way for commutative V).
std::map<int, int> hochschild_oracle(const SpacePtr& V, const GradedMap& mult,
                                     int k_max, bool reduced = false);

// Chevalley-Eilenberg complex Hom(Lambda^k g, g) with adjoint
// coefficients; bracket must be antisymmetric and satisfy Jacobi.
struct LieAlgebraData {
  SpacePtr g;
  GradedMap bracket;  // g tensor g -> g
};
std::map<int, int> chevalley_eilenberg_oracle(const LieAlgebraData& g,
                                              int k_max, bool reduced = false);

// Model comparison in low degrees: builds the deformation complex of P
// over both the Qperp model and the bar(Q) model, restricts cochains along
// qperp_to_bar, and compares cohomology in exact cells of reported degree
// k <= k_max.
struct LowDegreeReport {
  struct Cell {
    int degree = 0;
    int dim_bar = 0;
    int dim_perp = 0;
    bool exact = false;
    bool iso = false;  // induced comparison matrix invertible
  };
  std::vector<Cell> cells;
  bool ok = false;
};
LowDegreeReport low_degree_compare(const QuadraticModel& M, const Operad& P,
                                   const OperadMap& phi, int k_max = 2);

// Maurer-Cartan residual of base + sum_k t^k phi_t[k] on the perturbed
// structure, expanded per power of t for 1 <= k < t_max. phi_t[0] must be
// absent or zero (no constant term). Entry k of the result is the t^k
// coefficient of the residual.
std::vector<SparseVec> formal_deformation_check(
    const DeformationComplex& DC, const std::vector<SparseVec>& phi_t,
    int t_max);

}  // namespace opdh
