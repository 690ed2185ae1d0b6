#include "opdh/graded.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace opdh {

Perm perm_identity(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm perm_inverse(const Perm& p) {
  Perm q(p.size());
  for (int i = 0; i < (int)p.size(); ++i) q[p[i]] = i;
  return q;
}

Perm perm_compose(const Perm& a, const Perm& b) {
  assert(a.size() == b.size());
  Perm r(a.size());
  for (int i = 0; i < (int)b.size(); ++i) r[i] = a[b[i]];
  return r;
}

bool perm_is_valid(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= (int)p.size() || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

std::vector<Perm> all_perms(int n) {
  Perm p = perm_identity(n);
  std::vector<Perm> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int koszul_sign(const Perm& sigma, const std::vector<int>& degs) {
  assert(sigma.size() == degs.size());
  int n = (int)sigma.size();
  long long parity = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (sigma[i] > sigma[j]) parity += (long long)degs[i] * degs[j];
  return (parity % 2 == 0) ? 1 : -1;
}

std::shared_ptr<const GradedSpace> GradedSpace::make(
    std::vector<std::pair<std::string, int>> basis) {
  auto sp = std::make_shared<GradedSpace>();
  sp->names_.reserve(basis.size());
  sp->degrees_.reserve(basis.size());
  for (auto& [n, d] : basis) {
    if (sp->index_.count(n))
      throw std::runtime_error("duplicate basis name: " + n);
    sp->index_[n] = (int)sp->names_.size();
    sp->names_.push_back(std::move(n));
    sp->degrees_.push_back(d);
  }
  return sp;
}

int GradedSpace::index_of(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

std::vector<int> GradedSpace::indices_of_degree(int d) const {
  std::vector<int> out;
  for (int i = 0; i < dim(); ++i)
    if (degrees_[i] == d) out.push_back(i);
  return out;
}

std::vector<int> GradedSpace::degree_support() const {
  std::vector<int> ds(degrees_);
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  return ds;
}

SpacePtr zero_space() {
  static SpacePtr z = GradedSpace::make({});
  return z;
}

void SparseVec::add(int i, const Rational& v) {
  if (v == 0) return;
  auto it = c.find(i);
  if (it == c.end()) {
    c.emplace(i, v);
  } else {
    it->second += v;
    if (it->second == 0) c.erase(it);
  }
}

void SparseVec::add(const SparseVec& o, const Rational& scale) {
  if (scale == 0) return;
  for (auto& [i, v] : o.c) add(i, v * scale);
}

SparseVec SparseVec::scaled(const Rational& s) const {
  SparseVec r;
  if (s == 0) return r;
  for (auto& [i, v] : c) r.c.emplace(i, v * s);
  return r;
}

std::string SparseVec::str(const GradedSpace& sp) const {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [i, v] : c) {
    if (!first) os << " + ";
    first = false;
    if (v != 1) os << "(" << v.str() << ")*";
    os << sp.name(i);
  }
  return os.str();
}

bool GradedMap::is_zero() const { return m_.empty(); }

void GradedMap::set(int row, int col, const Rational& v) {
  if (v == 0) {
    m_.erase({row, col});
    return;
  }
  assert(tgt_->degree(row) == src_->degree(col) + deg_);
  m_[{row, col}] = v;
}

void GradedMap::add_to(int row, int col, const Rational& v) {
  if (v == 0) return;
  assert(tgt_->degree(row) == src_->degree(col) + deg_);
  auto it = m_.find({row, col});
  if (it == m_.end()) {
    m_.emplace(std::make_pair(row, col), v);
  } else {
    it->second += v;
    if (it->second == 0) m_.erase(it);
  }
}

Rational GradedMap::at(int row, int col) const {
  auto it = m_.find({row, col});
  return it == m_.end() ? Rational(0) : it->second;
}

SparseVec GradedMap::apply(const SparseVec& v) const {
  // column access on a row-major map is slow in general; entries are keyed
  // (row, col), so we iterate all entries when v has several terms.
  SparseVec out;
  if (v.c.empty() || m_.empty()) return out;
  for (auto& [rc, a] : m_) {
    auto it = v.c.find(rc.second);
    if (it != v.c.end()) out.add(rc.first, a * it->second);
  }
  return out;
}

SparseVec GradedMap::apply_basis(int col) const {
  SparseVec out;
  for (auto& [rc, a] : m_)
    if (rc.second == col) out.add(rc.first, a);
  return out;
}

GradedMap GradedMap::scaled(const Rational& s) const {
  GradedMap r(src_, tgt_, deg_);
  if (s == 0) return r;
  for (auto& [rc, v] : m_) r.m_.emplace(rc, v * s);
  return r;
}

bool GradedMap::operator==(const GradedMap& o) const {
  return deg_ == o.deg_ && m_ == o.m_;
}

std::string GradedMap::str() const {
  std::ostringstream os;
  for (int c = 0; c < src_->dim(); ++c) {
    SparseVec img = apply_basis(c);
    if (img.is_zero()) continue;
    os << src_->name(c) << " -> " << img.str(*tgt_) << "\n";
  }
  return os.str();
}

GradedMap identity_map(SpacePtr v) {
  GradedMap f(v, v, 0);
  for (int i = 0; i < v->dim(); ++i) f.set(i, i, 1);
  return f;
}

GradedMap zero_map(SpacePtr src, SpacePtr tgt, int deg) {
  return GradedMap(src, tgt, deg);
}

GradedMap compose(const GradedMap& f, const GradedMap& g) {
  assert(f.src()->dim() == g.tgt()->dim());
  GradedMap r(g.src(), f.tgt(), f.deg() + g.deg());
  if (f.is_zero() || g.is_zero()) return r;
  // index f's entries by column for the join
  std::map<int, std::vector<std::pair<int, Rational>>> f_by_col;
  for (auto& [rc, v] : f.entries()) f_by_col[rc.second].push_back({rc.first, v});
  for (auto& [rc, v] : g.entries()) {
    auto it = f_by_col.find(rc.first);
    if (it == f_by_col.end()) continue;
    for (auto& [row, w] : it->second) r.add_to(row, rc.second, w * v);
  }
  return r;
}

GradedMap add(const GradedMap& f, const GradedMap& g) {
  assert(f.deg() == g.deg());
  assert(f.src()->dim() == g.src()->dim() && f.tgt()->dim() == g.tgt()->dim());
  GradedMap r = f;
  for (auto& [rc, v] : g.entries()) r.add_to(rc.first, rc.second, v);
  return r;
}

GradedMap sub(const GradedMap& f, const GradedMap& g) {
  return add(f, g.scaled(-1));
}

SpacePtr tensor_space(const std::vector<SpacePtr>& factors) {
  if (factors.empty())
    return GradedSpace::make({{"1", 0}});  // empty tensor product = ground field
  std::vector<std::pair<std::string, int>> basis;
  std::vector<int> idx(factors.size(), 0);
  long total = 1;
  for (auto& f : factors) total *= f->dim();
  basis.reserve(total);
  if (total == 0) return zero_space();
  while (true) {
    std::string name;
    int deg = 0;
    for (size_t k = 0; k < factors.size(); ++k) {
      if (k) name += '|';
      name += factors[k]->name(idx[k]);
      deg += factors[k]->degree(idx[k]);
    }
    basis.push_back({std::move(name), deg});
    int k = (int)factors.size() - 1;
    while (k >= 0 && ++idx[k] == factors[k]->dim()) idx[k--] = 0;
    if (k < 0) break;
  }
  return GradedSpace::make(std::move(basis));
}

int tensor_index(const std::vector<SpacePtr>& factors, const std::vector<int>& idx) {
  int flat = 0;
  for (size_t k = 0; k < factors.size(); ++k) flat = flat * factors[k]->dim() + idx[k];
  return flat;
}

std::vector<int> tensor_unindex(const std::vector<SpacePtr>& factors, int flat) {
  std::vector<int> idx(factors.size());
  for (int k = (int)factors.size() - 1; k >= 0; --k) {
    idx[k] = flat % factors[k]->dim();
    flat /= factors[k]->dim();
  }
  return idx;
}

GradedMap tensor_maps(const std::vector<GradedMap>& fs) {
  std::vector<SpacePtr> srcs, tgts;
  int deg = 0;
  for (auto& f : fs) {
    srcs.push_back(f.src());
    tgts.push_back(f.tgt());
    deg += f.deg();
  }
  GradedMap r(tensor_space(srcs), tensor_space(tgts), deg);
  // entries: product over factors, with the Koszul sign
  //   (-1)^{sum_j |f_j| * (|a_1|+...+|a_{j-1}|)}
  // accumulated left to right.
  struct Term {
    std::vector<int> rows, cols;
    Rational coeff;
    int src_deg_prefix;  // sum of source basis degrees so far
  };
  std::vector<Term> partial = {{{}, {}, Rational(1), 0}};
  for (auto& f : fs) {
    std::vector<Term> next;
    for (auto& t : partial) {
      for (auto& [rc, v] : f.entries()) {
        Term u = t;
        u.rows.push_back(rc.first);
        u.cols.push_back(rc.second);
        Rational sgn = ((long long)f.deg() * t.src_deg_prefix) % 2 ? -1 : 1;
        u.coeff *= v * sgn;
        u.src_deg_prefix += f.src()->degree(rc.second);
        next.push_back(std::move(u));
      }
    }
    partial = std::move(next);
  }
  for (auto& t : partial)
    r.add_to(tensor_index(tgts, t.rows), tensor_index(srcs, t.cols), t.coeff);
  return r;
}

GradedMap permute_factors(const Perm& sigma, const std::vector<SpacePtr>& factors) {
  assert(sigma.size() == factors.size());
  int n = (int)factors.size();
  std::vector<SpacePtr> tgt_factors(n);
  for (int i = 0; i < n; ++i) tgt_factors[sigma[i]] = factors[i];
  SpacePtr src = tensor_space(factors);
  SpacePtr tgt = tensor_space(tgt_factors);
  GradedMap r(src, tgt, 0);
  for (int flat = 0; flat < src->dim(); ++flat) {
    std::vector<int> idx = tensor_unindex(factors, flat);
    std::vector<int> degs(n);
    for (int i = 0; i < n; ++i) degs[i] = factors[i]->degree(idx[i]);
    std::vector<int> tidx(n);
    for (int i = 0; i < n; ++i) tidx[sigma[i]] = idx[i];
    r.set(tensor_index(tgt_factors, tidx), flat, koszul_sign(sigma, degs));
  }
  return r;
}

SpacePtr shift_space(SpacePtr v, int p) {
  std::vector<std::pair<std::string, int>> basis;
  for (int i = 0; i < v->dim(); ++i) basis.push_back({v->name(i), v->degree(i) + p});
  return GradedSpace::make(std::move(basis));
}

GradedMap shift_map(const GradedMap& f, int p) {
  GradedMap r(shift_space(f.src(), p), shift_space(f.tgt(), p), f.deg());
  int sgn = ((long long)p * f.deg()) % 2 ? -1 : 1;
  for (auto& [rc, v] : f.entries()) r.set(rc.first, rc.second, v * sgn);
  return r;
}

GradedMap suspension(SpacePtr v, int p) {
  GradedMap r(v, shift_space(v, p), p);
  for (int i = 0; i < v->dim(); ++i) r.set(i, i, 1);
  return r;
}

// ---- linear algebra ----

bool SpanBuilder::insert(SparseVec v) {
  SparseVec expr;
  if (track_) expr.add(n_inserted_, 1);
  ++n_inserted_;
  // reduce
  while (!v.is_zero()) {
    int piv = v.c.begin()->first;
    auto it = pivot_row_.find(piv);
    if (it == pivot_row_.end()) {
      Rational lead = v.c.begin()->second;
      v = v.scaled(1 / lead);
      if (track_) {
        expr = expr.scaled(1 / lead);
        exprs_.push_back(expr);
      }
      pivot_row_[piv] = (int)rows_.size();
      rows_.push_back(std::move(v));
      return true;
    }
    Rational coef = v.c.begin()->second;
    v.add(rows_[it->second], -coef);
    if (track_) expr.add(exprs_[it->second], -coef);
  }
  return false;
}

SparseVec SpanBuilder::reduce(SparseVec v) const {
  while (!v.is_zero()) {
    int piv = v.c.begin()->first;
    auto it = pivot_row_.find(piv);
    if (it == pivot_row_.end()) {
      // move past this pivot: cannot reduce further at this index; but for a
      // membership test we must keep scanning later indices.
      break;
    }
    v.add(rows_[it->second], -v.c.begin()->second);
  }
  // second pass for non-leading positions that happen to match pivots
  bool changed = true;
  while (changed && !v.is_zero()) {
    changed = false;
    for (auto& [i, coef] : v.c) {
      auto it = pivot_row_.find(i);
      if (it != pivot_row_.end()) {
        v.add(rows_[it->second], -coef);
        changed = true;
        break;
      }
    }
  }
  return v;
}

bool SpanBuilder::coords(const SparseVec& v, std::vector<Rational>* out) const {
  assert(track_);
  SparseVec w = v, expr;
  while (!w.is_zero()) {
    int piv = w.c.begin()->first;
    auto it = pivot_row_.find(piv);
    if (it == pivot_row_.end()) return false;
    Rational coef = w.c.begin()->second;
    w.add(rows_[it->second], -coef);
    expr.add(exprs_[it->second], coef);
  }
  out->assign(n_inserted_, 0);
  for (auto& [i, val] : expr.c) (*out)[i] = val;
  return true;
}

bool SpanBuilder::row_coords(const SparseVec& v, std::vector<Rational>* out) const {
  out->assign(rows_.size(), 0);
  SparseVec w = v;
  while (!w.is_zero()) {
    int piv = w.c.begin()->first;
    auto it = pivot_row_.find(piv);
    if (it == pivot_row_.end()) return false;
    Rational coef = w.c.begin()->second;
    (*out)[it->second] += coef;
    w.add(rows_[it->second], -coef);
  }
  return true;
}

int rank(const GradedMap& f) {
  SpanBuilder sb;
  for (int c = 0; c < f.src()->dim(); ++c) sb.insert(f.apply_basis(c));
  return sb.dim();
}

std::vector<SparseVec> image_basis(const GradedMap& f) {
  SpanBuilder sb;
  for (int c = 0; c < f.src()->dim(); ++c) sb.insert(f.apply_basis(c));
  return sb.rows();
}

std::vector<SparseVec> kernel_basis(const GradedMap& f) {
  // Gaussian elimination on rows of the matrix; free columns give kernel
  // vectors. Build rows indexed by target, entries indexed by source.
  std::map<int, SparseVec> rows;
  for (auto& [rc, v] : f.entries()) rows[rc.first].add(rc.second, v);
  std::vector<SparseVec> reduced;
  std::map<int, int> pivot_of_row;  // position in reduced -> pivot col
  std::map<int, int> row_of_pivot;
  for (auto& [tgt_i, row0] : rows) {
    SparseVec row = row0;
    while (!row.is_zero()) {
      int piv = row.c.begin()->first;
      auto it = row_of_pivot.find(piv);
      if (it == row_of_pivot.end()) {
        row = row.scaled(1 / row.c.begin()->second);
        row_of_pivot[piv] = (int)reduced.size();
        reduced.push_back(std::move(row));
        break;
      }
      row.add(reduced[it->second], -row.c.begin()->second);
    }
  }
  // back substitution: make it fully reduced
  for (auto& [piv, ri] : row_of_pivot) {
    for (int rj = 0; rj < (int)reduced.size(); ++rj) {
      if (rj == ri) continue;
      auto it = reduced[rj].c.find(piv);
      if (it != reduced[rj].c.end()) reduced[rj].add(reduced[ri], -it->second);
    }
  }
  std::vector<SparseVec> out;
  for (int c = 0; c < f.src()->dim(); ++c) {
    if (row_of_pivot.count(c)) continue;
    SparseVec k;
    k.add(c, 1);
    for (auto& [piv, ri] : row_of_pivot) {
      auto it = reduced[ri].c.find(c);
      if (it != reduced[ri].c.end()) k.add(piv, -it->second);
    }
    out.push_back(std::move(k));
  }
  return out;
}

int CohomologyResult::total_dim() const {
  int t = 0;
  for (auto& [d, n] : dims) t += n;
  return t;
}

CohomologyResult cohomology(const GradedMap& d_in, const GradedMap& d_out) {
  if (!compose(d_out, d_in).is_zero())
    throw std::runtime_error("cohomology: d_out * d_in != 0");
  SpacePtr mid = d_out.src();
  CohomologyResult res;
  // image span of d_in
  SpanBuilder img;
  for (int c = 0; c < d_in.src()->dim(); ++c) img.insert(d_in.apply_basis(c));
  // kernel of d_out, split by degree
  std::vector<SparseVec> ker = kernel_basis(d_out);
  std::map<int, std::vector<SparseVec>> ker_by_deg;
  for (auto& k : ker) {
    int d = mid->degree(k.c.begin()->first);
    ker_by_deg[d].push_back(k);
  }
  for (auto& [d, vecs] : ker_by_deg) {
    SpanBuilder sb;
    // seed with the image vectors of this degree
    for (auto& r : img.rows()) {
      if (!r.is_zero() && mid->degree(r.c.begin()->first) == d) sb.insert(r);
    }
    int im_dim = sb.dim();
    std::vector<SparseVec> reps;
    for (auto& k : vecs) {
      SparseVec rem = sb.reduce(k);
      if (!rem.is_zero()) {
        sb.insert(rem);
        reps.push_back(rem);
      }
    }
    if (!reps.empty() || im_dim > 0) {
      res.dims[d] = (int)reps.size();
      res.reps[d] = std::move(reps);
    }
  }
  return res;
}

}  // namespace opdh
