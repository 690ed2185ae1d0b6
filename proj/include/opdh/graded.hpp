#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "opdh/rational.hpp"

namespace opdh {

// A permutation on {0..n-1}. sigma[i] is the slot that the item currently
// in slot i moves to: applying sigma to (x_0,...,x_{n-1}) yields the tuple
// y with y[sigma[i]] = x[i].
using Perm = std::vector<int>;

Perm perm_identity(int n);
Perm perm_inverse(const Perm& p);
Perm perm_compose(const Perm& a, const Perm& b);  // (a*b)(i) = a(b(i))
bool perm_is_valid(const Perm& p);
std::vector<Perm> all_perms(int n);

// Sign picked up when reordering homogeneous symbols of the given degrees
// by sigma: each inverted pair (i<j, sigma(i)>sigma(j)) contributes
// (-1)^(degs[i]*degs[j]).
int koszul_sign(const Perm& sigma, const std::vector<int>& degs);

// Finite dimensional Z-graded vector space over Q with a named basis.
// Immutable once built; handed around by shared_ptr.
class GradedSpace {
 public:
  static std::shared_ptr<const GradedSpace> make(
      std::vector<std::pair<std::string, int>> basis);

  int dim() const { return (int)degrees_.size(); }
  int degree(int i) const { return degrees_[i]; }
  const std::string& name(int i) const { return names_[i]; }
  const std::vector<int>& degrees() const { return degrees_; }
  // -1 if absent
  int index_of(const std::string& name) const;
  // all basis indices of the given degree
  std::vector<int> indices_of_degree(int d) const;
  std::vector<int> degree_support() const;

 private:
  std::vector<std::string> names_;
  std::vector<int> degrees_;
  std::map<std::string, int> index_;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

// Zero-dimensional space (shared instance).
SpacePtr zero_space();

// Sparse vector in an implicit GradedSpace.
struct SparseVec {
  std::map<int, Rational> c;

  bool is_zero() const { return c.empty(); }
  void add(int i, const Rational& v);
  void add(const SparseVec& o, const Rational& scale = 1);
  SparseVec scaled(const Rational& s) const;
  bool operator==(const SparseVec& o) const { return c == o.c; }
  std::string str(const GradedSpace& sp) const;
};

// Homogeneous linear map of fixed degree between graded spaces, stored as a
// sparse matrix (row = target index, col = source index). Entries whose
// degrees are inconsistent with `deg` are rejected.
class GradedMap {
 public:
  GradedMap() = default;
  GradedMap(SpacePtr src, SpacePtr tgt, int deg) : src_(src), tgt_(tgt), deg_(deg) {}

  const SpacePtr& src() const { return src_; }
  const SpacePtr& tgt() const { return tgt_; }
  int deg() const { return deg_; }
  bool is_zero() const;

  void set(int row, int col, const Rational& v);
  void add_to(int row, int col, const Rational& v);
  Rational at(int row, int col) const;
  const std::map<std::pair<int, int>, Rational>& entries() const { return m_; }

  SparseVec apply(const SparseVec& v) const;
  SparseVec apply_basis(int col) const;

  GradedMap scaled(const Rational& s) const;
  bool operator==(const GradedMap& o) const;

  std::string str() const;

 private:
  SpacePtr src_, tgt_;
  int deg_ = 0;
  std::map<std::pair<int, int>, Rational> m_;
};

GradedMap identity_map(SpacePtr v);
GradedMap zero_map(SpacePtr src, SpacePtr tgt, int deg);
GradedMap compose(const GradedMap& f, const GradedMap& g);  // f after g
GradedMap add(const GradedMap& f, const GradedMap& g);
GradedMap sub(const GradedMap& f, const GradedMap& g);

// Tensor products. Basis names are joined with '|'; multi-indices are
// row-major (last factor varies fastest).
SpacePtr tensor_space(const std::vector<SpacePtr>& factors);
int tensor_index(const std::vector<SpacePtr>& factors, const std::vector<int>& idx);
std::vector<int> tensor_unindex(const std::vector<SpacePtr>& factors, int flat);

// Tensor product of maps with the Koszul sign rule:
// (f (x) g)(a (x) b) = (-1)^{|g||a|} f(a) (x) g(b), generalized n-fold.
GradedMap tensor_maps(const std::vector<GradedMap>& fs);

// The symmetry isomorphism reordering tensor factors by sigma (factor i
// moves to slot sigma(i)); Koszul signs from the basis degrees.
GradedMap permute_factors(const Perm& sigma, const std::vector<SpacePtr>& factors);

// Shift: V[p]^n = V^{n-p}. Basis names are preserved.
SpacePtr shift_space(SpacePtr v, int p);
// f viewed on shifted spaces: picks up (-1)^{p*|f|}.
GradedMap shift_map(const GradedMap& f, int p);
// The degree-p identity V -> V[p] (as a GradedMap of degree p... the basis
// vector of degree d maps to "itself" in degree d+p).
GradedMap suspension(SpacePtr v, int p);

// ---- exact linear algebra ----

int rank(const GradedMap& f);
// Basis of ker(f) as sparse vectors in src.
std::vector<SparseVec> kernel_basis(const GradedMap& f);
// Basis of the column space of f as sparse vectors in tgt.
std::vector<SparseVec> image_basis(const GradedMap& f);

// Row reduction helper exposed for reuse: maintains a reduced set of sparse
// vectors; insert() returns false (and leaves the set unchanged) when the
// vector already lies in the span.
class SpanBuilder {
 public:
  bool insert(SparseVec v);
  // reduce v against the current span; the remainder is returned
  SparseVec reduce(SparseVec v) const;
  bool contains(const SparseVec& v) const { return reduce(v).is_zero(); }
  int dim() const { return (int)rows_.size(); }
  const std::vector<SparseVec>& rows() const { return rows_; }
  // coordinates of v in terms of the inserted generators, if in span
  // (only valid when track_coords was requested)
  explicit SpanBuilder(bool track_coords = false) : track_(track_coords) {}
  bool coords(const SparseVec& v, std::vector<Rational>* out) const;
  // coefficients of v with respect to rows() (requires v in the span)
  bool row_coords(const SparseVec& v, std::vector<Rational>* out) const;

 private:
  bool track_;
  int n_inserted_ = 0;
  std::vector<SparseVec> rows_;        // reduced, each with a unique pivot
  std::vector<SparseVec> exprs_;       // rows_[k] in terms of generators
  std::map<int, int> pivot_row_;       // pivot index -> row position
};

// Cohomology of tgt(d_in) = src(d_out) at each degree: requires
// compose(d_out, d_in) == 0. Returns dim ker(d_out) - dim im(d_in) per
// degree along with representative cocycles.
struct CohomologyResult {
  // degree -> dimension
  std::map<int, int> dims;
  // degree -> representatives (vectors in the middle space)
  std::map<int, std::vector<SparseVec>> reps;
  int total_dim() const;
};
CohomologyResult cohomology(const GradedMap& d_in, const GradedMap& d_out);

}  // namespace opdh
