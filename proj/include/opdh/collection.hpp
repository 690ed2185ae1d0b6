#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>

#include "opdh/graded.hpp"

namespace opdh {

// Pass/fail verdict with a human-readable witness for failures.
struct CheckReport {
  bool ok = true;
  std::string witness;

  void fail(const std::string& w) {
    if (ok) {
      ok = false;
      witness = w;
    }
  }
  void merge(const CheckReport& o) {
    if (ok && !o.ok) {
      ok = false;
      witness = o.witness;
    }
  }
};

// Arity-graded spaces C(1..N) with right S_n-actions given on the adjacent
// transpositions s_i = (i,i+1), plus an optional internal differential.
// The right action satisfies rho(sigma.tau) = rho(tau) . rho(sigma).
class Collection {
 public:
  Collection() = default;
  Collection(int max_arity) : N_(max_arity), comp_(max_arity + 1), transp_(max_arity + 1), diff_(max_arity + 1) {
    for (int n = 0; n <= max_arity; ++n) comp_[n] = zero_space();
  }

  int max_arity() const { return N_; }
  const SpacePtr& at(int n) const { return comp_[n]; }
  void set_space(int n, SpacePtr sp) { comp_[n] = std::move(sp); }

  // i in 0..n-2 selects s_{i+1} = (i+1, i+2)
  void set_transposition(int n, int i, GradedMap m);
  const GradedMap& transposition(int n, int i) const { return transp_[n][i]; }

  void set_diff(int n, GradedMap d) { diff_[n] = std::move(d); }
  bool has_diff(int n) const { return diff_[n].has_value(); }
  GradedMap d(int n) const;  // zero map when unset

  // full action of sigma in S_n (composed from generators, memoized)
  const GradedMap& action(int n, const Perm& sigma) const;

  // total degree-0 dimension etc. for reports
  int dim(int n) const { return comp_[n]->dim(); }

 private:
  int N_ = 0;
  std::vector<SpacePtr> comp_;
  std::vector<std::vector<GradedMap>> transp_;
  std::vector<std::optional<GradedMap>> diff_;
  mutable std::map<std::pair<int, Perm>, GradedMap> action_cache_;
};

// Coxeter relations on generators, degree-0 bijectivity, equivariance and
// square-zero of the differential.
CheckReport check_collection(const Collection& C);

// Averaging: projection to S_n-coinvariants with the section (1/n!) sum.
// Realized on the invariant subspace: s embeds the coinvariant space as
// the invariants in C(n); pi is the averaging followed by coordinates, so
// pi . s = id and s . pi = (1/n!) sum_sigma rho(sigma).
struct Coinvariants {
  SpacePtr space;  // per arity: the coinvariant space
  GradedMap pi;    // C(n) -> space
  GradedMap s;     // space -> C(n)
};
Coinvariants coinvariants(const Collection& C, int n);

}  // namespace opdh
