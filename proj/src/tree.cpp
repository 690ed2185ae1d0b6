#include "opdh/tree.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace opdh {

namespace {

// Recursive working form. leaf > 0 marks a leaf node; otherwise a vertex
// node with children. `orig` remembers the vertex index in the source tree
// and `slot_perm` the child reordering applied at this vertex (old slot ->
// new slot), filled in by canonical sorting. `tag` survives flattening.
struct RNode {
  int leaf = 0;
  std::vector<RNode> ch;
  int orig = -1;
  Perm slot_perm;
  int tag = 0;
};

RNode to_rec_at(const PlanarTree& t, int v) {
  RNode n;
  n.orig = v;
  for (int e : t.verts[v].ch) {
    if (PlanarTree::is_leaf(e)) {
      RNode l;
      l.leaf = e;
      n.ch.push_back(std::move(l));
    } else {
      n.ch.push_back(to_rec_at(t, PlanarTree::child_vertex(e)));
    }
  }
  return n;
}

RNode to_rec(const PlanarTree& t) {
  if (t.trivial()) {
    RNode l;
    l.leaf = 1;
    return l;
  }
  return to_rec_at(t, 0);
}

void flatten_into(const RNode& n, PlanarTree& t, std::vector<int>* tags,
                  std::vector<std::pair<int, int>>* orig_map) {
  int idx = (int)t.verts.size();
  t.verts.emplace_back();
  if (tags) tags->push_back(n.tag);
  if (orig_map) orig_map->push_back({n.orig, idx});
  for (const RNode& c : n.ch) {
    if (c.leaf > 0) {
      t.verts[idx].ch.push_back(c.leaf);
    } else {
      int child_idx = (int)t.verts.size();
      t.verts[idx].ch.push_back(~child_idx);
      flatten_into(c, t, tags, orig_map);
    }
  }
}

PlanarTree from_rec(const RNode& root, int n_leaves, std::vector<int>* tags = nullptr,
                    std::vector<std::pair<int, int>>* orig_map = nullptr) {
  PlanarTree t;
  t.n_leaves = n_leaves;
  if (root.leaf > 0) return t;  // trivial tree
  flatten_into(root, t, tags, orig_map);
  return t;
}

std::string encode_rec(const RNode& n) {
  if (n.leaf > 0) return std::to_string(n.leaf);
  std::string s = "(";
  for (size_t i = 0; i < n.ch.size(); ++i) {
    if (i) s += ' ';
    s += encode_rec(n.ch[i]);
  }
  s += ')';
  return s;
}

// sort children by encoded string, recursively, recording slot perms
std::string canonical_sort(RNode& n) {
  if (n.leaf > 0) return std::to_string(n.leaf);
  std::vector<std::string> enc(n.ch.size());
  for (size_t i = 0; i < n.ch.size(); ++i) enc[i] = canonical_sort(n.ch[i]);
  std::vector<int> order(n.ch.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return enc[a] < enc[b]; });
  std::vector<RNode> sorted;
  sorted.reserve(n.ch.size());
  n.slot_perm.assign(n.ch.size(), 0);
  std::string s = "(";
  for (size_t k = 0; k < order.size(); ++k) {
    n.slot_perm[order[k]] = (int)k;
    if (k) s += ' ';
    s += enc[order[k]];
    sorted.push_back(std::move(n.ch[order[k]]));
  }
  s += ')';
  n.ch = std::move(sorted);
  return s;
}

int min_leaf(const PlanarTree& t, int entry) {
  if (PlanarTree::is_leaf(entry)) return entry;
  int v = PlanarTree::child_vertex(entry);
  int m = INT32_MAX;
  for (int e : t.verts[v].ch) m = std::min(m, min_leaf(t, e));
  return m;
}

}  // namespace

bool PlanarTree::operator<(const PlanarTree& o) const {
  return encode(*this) < encode(o);
}

PlanarTree corolla(int n) {
  PlanarTree t;
  t.n_leaves = n;
  t.verts.emplace_back();
  for (int i = 1; i <= n; ++i) t.verts[0].ch.push_back(i);
  return t;
}

PlanarTree trivial_tree() {
  PlanarTree t;
  t.n_leaves = 1;
  return t;
}

std::string encode(const PlanarTree& t) {
  RNode r = to_rec(t);
  return encode_rec(r);
}

PlanarTree decode_tree(const std::string& s) {
  size_t pos = 0;
  int max_leaf = 0;
  std::function<RNode()> parse = [&]() -> RNode {
    while (pos < s.size() && isspace(s[pos])) ++pos;
    if (pos >= s.size()) throw std::runtime_error("tree parse: unexpected end");
    RNode n;
    if (s[pos] == '(') {
      ++pos;
      while (true) {
        while (pos < s.size() && isspace(s[pos])) ++pos;
        if (pos >= s.size()) throw std::runtime_error("tree parse: missing ')'");
        if (s[pos] == ')') {
          ++pos;
          break;
        }
        n.ch.push_back(parse());
      }
      if (n.ch.empty()) throw std::runtime_error("tree parse: empty vertex");
      return n;
    }
    if (!isdigit(s[pos])) throw std::runtime_error("tree parse: expected label");
    int v = 0;
    while (pos < s.size() && isdigit(s[pos])) v = v * 10 + (s[pos++] - '0');
    if (v <= 0) throw std::runtime_error("tree parse: labels start at 1");
    n.leaf = v;
    max_leaf = std::max(max_leaf, v);
    return n;
  };
  RNode root = parse();
  while (pos < s.size() && isspace(s[pos])) ++pos;
  if (pos != s.size()) throw std::runtime_error("tree parse: trailing input");
  return from_rec(root, max_leaf);
}

bool df_ordered(const PlanarTree& t) {
  if (t.trivial()) return true;
  int next = 0;
  std::function<bool(int)> visit = [&](int v) {
    if (v != next++) return false;
    for (int e : t.verts[v].ch)
      if (!PlanarTree::is_leaf(e) && !visit(PlanarTree::child_vertex(e))) return false;
    return true;
  };
  return visit(0) && next == t.n_vertices();
}

std::vector<int> arity_sequence(const PlanarTree& t) {
  std::vector<int> a;
  for (int v = 0; v < t.n_vertices(); ++v) a.push_back(t.arity(v));
  return a;
}

std::vector<int> leaf_order(const PlanarTree& t) {
  std::vector<int> out;
  if (t.trivial()) return {1};
  std::function<void(int)> visit = [&](int v) {
    for (int e : t.verts[v].ch) {
      if (PlanarTree::is_leaf(e))
        out.push_back(e);
      else
        visit(PlanarTree::child_vertex(e));
    }
  };
  visit(0);
  return out;
}

std::pair<int, int> find_leaf(const PlanarTree& t, int x) {
  for (int v = 0; v < t.n_vertices(); ++v)
    for (int j = 0; j < t.arity(v); ++j)
      if (t.verts[v].ch[j] == x) return {v, j};
  return {-1, -1};
}

std::pair<int, int> find_parent(const PlanarTree& t, int v) {
  for (int u = 0; u < t.n_vertices(); ++u)
    for (int j = 0; j < t.arity(u); ++j)
      if (!PlanarTree::is_leaf(t.verts[u].ch[j]) &&
          PlanarTree::child_vertex(t.verts[u].ch[j]) == v)
        return {u, j};
  return {-1, -1};
}

std::pair<PlanarTree, Reordering> canonicalize(const PlanarTree& t) {
  if (t.trivial()) return {t, Reordering{}};
  RNode r = to_rec(t);
  canonical_sort(r);
  std::vector<std::pair<int, int>> orig_map;
  PlanarTree canon = from_rec(r, t.n_leaves, nullptr, &orig_map);
  Reordering re;
  re.vperm.assign(t.n_vertices(), -1);
  for (auto& [orig, idx] : orig_map) re.vperm[orig] = idx;
  re.cperm.assign(t.n_vertices(), {});
  std::function<void(const RNode&)> collect = [&](const RNode& n) {
    if (n.leaf > 0) return;
    re.cperm[n.orig] = n.slot_perm;
    for (const RNode& c : n.ch) collect(c);
  };
  collect(r);
  return {canon, re};
}

std::string canonical_encode(const PlanarTree& t) {
  if (t.trivial()) return "1";
  RNode r = to_rec(t);
  return canonical_sort(r);
}

Reordering reorder_between(const PlanarTree& from, const PlanarTree& to) {
  if (from.n_leaves != to.n_leaves || from.n_vertices() != to.n_vertices())
    throw std::runtime_error("reorder_between: different trees");
  Reordering re;
  re.vperm.assign(from.n_vertices(), -1);
  re.cperm.assign(from.n_vertices(), {});
  if (from.trivial()) return re;
  std::function<void(int, int)> match = [&](int vf, int vt) {
    if (from.arity(vf) != to.arity(vt))
      throw std::runtime_error("reorder_between: shape mismatch");
    re.vperm[vf] = vt;
    re.cperm[vf].assign(from.arity(vf), -1);
    // children carry pairwise disjoint leaf sets, so the minimum leaf label
    // identifies the matching slot
    std::map<int, int> to_slot;
    for (int j = 0; j < to.arity(vt); ++j)
      to_slot[min_leaf(to, to.verts[vt].ch[j])] = j;
    for (int j = 0; j < from.arity(vf); ++j) {
      int ml = min_leaf(from, from.verts[vf].ch[j]);
      auto it = to_slot.find(ml);
      if (it == to_slot.end())
        throw std::runtime_error("reorder_between: leaf sets differ");
      int k = it->second;
      re.cperm[vf][j] = k;
      int ef = from.verts[vf].ch[j], et = to.verts[vt].ch[k];
      if (PlanarTree::is_leaf(ef) != PlanarTree::is_leaf(et))
        throw std::runtime_error("reorder_between: shape mismatch");
      if (PlanarTree::is_leaf(ef)) {
        if (ef != et) throw std::runtime_error("reorder_between: label mismatch");
      } else {
        match(PlanarTree::child_vertex(ef), PlanarTree::child_vertex(et));
      }
    }
  };
  match(0, 0);
  return re;
}

PlanarTree relabel(const PlanarTree& t, const Perm& sigma) {
  assert((int)sigma.size() == t.n_leaves);
  PlanarTree r = t;
  for (auto& v : r.verts)
    for (auto& e : v.ch)
      if (PlanarTree::is_leaf(e)) e = sigma[e - 1] + 1;
  return r;
}

PlanarTree graft(const PlanarTree& s, const PlanarTree& t, int x,
                 std::vector<int>* origin) {
  if (x < 1 || x > t.n_leaves) throw std::runtime_error("graft: no such leaf");
  int m = s.n_leaves;
  if (t.trivial()) {
    if (origin) {
      origin->clear();
      for (int v = 0; v < s.n_vertices(); ++v) origin->push_back(~v);
    }
    return s;  // x == 1 necessarily
  }
  RNode rt = to_rec(t);
  RNode rs = to_rec(s);
  // tag provenance: t-vertices keep orig, s-vertices get ~orig
  std::function<void(RNode&)> mark_s = [&](RNode& n) {
    if (n.leaf == 0) n.orig = ~n.orig;
    for (auto& c : n.ch) mark_s(c);
  };
  mark_s(rs);
  // relabel s: l -> x-1+l
  std::function<void(RNode&)> shift_s = [&](RNode& n) {
    if (n.leaf > 0) n.leaf += x - 1;
    for (auto& c : n.ch) shift_s(c);
  };
  shift_s(rs);
  bool found = false;
  std::function<void(RNode&)> splice = [&](RNode& n) {
    if (n.leaf > 0) {
      if (n.leaf == x) {
        n = rs;
        found = true;
      } else if (n.leaf > x) {
        n.leaf += m - 1;
      }
      return;
    }
    for (auto& c : n.ch) splice(c);
  };
  splice(rt);
  assert(found);
  std::vector<std::pair<int, int>> orig_map;
  PlanarTree out = from_rec(rt, t.n_leaves + m - 1, nullptr, origin ? &orig_map : nullptr);
  if (origin) {
    origin->assign(out.n_vertices(), -1);
    for (auto& [orig, idx] : orig_map) (*origin)[idx] = orig;
  }
  return out;
}

std::vector<std::vector<int>> connected_subtrees(const PlanarTree& t) {
  std::vector<std::vector<int>> out;
  int nv = t.n_vertices();
  // f(v): all connected subtrees containing v and contained in v's branch
  std::vector<std::vector<std::vector<int>>> memo(nv);
  std::function<const std::vector<std::vector<int>>&(int)> f =
      [&](int v) -> const std::vector<std::vector<int>>& {
    if (!memo[v].empty()) return memo[v];
    std::vector<std::vector<int>> cur = {{v}};
    for (int e : t.verts[v].ch) {
      if (PlanarTree::is_leaf(e)) continue;
      int c = PlanarTree::child_vertex(e);
      const auto& sub = f(c);
      std::vector<std::vector<int>> next;
      for (const auto& base : cur) {
        next.push_back(base);  // skip this branch
        for (const auto& ext : sub) {
          std::vector<int> merged = base;
          merged.insert(merged.end(), ext.begin(), ext.end());
          next.push_back(std::move(merged));
        }
      }
      cur = std::move(next);
    }
    for (auto& s : cur) std::sort(s.begin(), s.end());
    memo[v] = std::move(cur);
    return memo[v];
  };
  for (int v = 0; v < nv; ++v)
    for (const auto& s : f(v)) out.push_back(s);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_connected_subtree(const PlanarTree& t, const std::vector<int>& vs) {
  if (vs.empty()) return false;
  std::set<int> in(vs.begin(), vs.end());
  if ((int)in.size() != (int)vs.size()) return false;
  int roots = 0;
  for (int v : vs) {
    if (v < 0 || v >= t.n_vertices()) return false;
    int p = find_parent(t, v).first;
    if (p < 0 || !in.count(p)) ++roots;
  }
  return roots == 1;
}

namespace {
int subtree_root(const PlanarTree& t, const std::set<int>& in) {
  for (int v : in) {
    int p = find_parent(t, v).first;
    if (p < 0 || !in.count(p)) return v;
  }
  throw std::runtime_error("empty subtree");
}
}  // namespace

PlanarTree extract_subtree(const PlanarTree& t, const std::vector<int>& vs) {
  if (!is_connected_subtree(t, vs))
    throw std::runtime_error("extract_subtree: not a connected subtree");
  std::set<int> in(vs.begin(), vs.end());
  int root = subtree_root(t, in);
  int next_leg = 0;
  std::function<RNode(int)> build = [&](int v) {
    RNode n;
    for (int e : t.verts[v].ch) {
      if (!PlanarTree::is_leaf(e) && in.count(PlanarTree::child_vertex(e))) {
        n.ch.push_back(build(PlanarTree::child_vertex(e)));
      } else {
        RNode l;
        l.leaf = ++next_leg;
        n.ch.push_back(std::move(l));
      }
    }
    return n;
  };
  RNode r = build(root);
  return from_rec(r, next_leg);
}

PlanarTree contract(const PlanarTree& t, const std::vector<int>& vs, int* merged) {
  if (!is_connected_subtree(t, vs))
    throw std::runtime_error("contract: not a connected subtree");
  std::set<int> in(vs.begin(), vs.end());
  int root = subtree_root(t, in);
  std::function<RNode(int)> copy_branch = [&](int v) {
    RNode n;
    n.orig = v;
    for (int e : t.verts[v].ch) {
      if (PlanarTree::is_leaf(e)) {
        RNode l;
        l.leaf = e;
        n.ch.push_back(std::move(l));
      } else {
        n.ch.push_back(copy_branch(PlanarTree::child_vertex(e)));
      }
    }
    return n;
  };
  std::function<void(int, RNode&)> collect = [&](int v, RNode& w) {
    for (int e : t.verts[v].ch) {
      if (!PlanarTree::is_leaf(e) && in.count(PlanarTree::child_vertex(e))) {
        collect(PlanarTree::child_vertex(e), w);
      } else if (PlanarTree::is_leaf(e)) {
        RNode l;
        l.leaf = e;
        w.ch.push_back(std::move(l));
      } else {
        w.ch.push_back(copy_branch(PlanarTree::child_vertex(e)));
      }
    }
  };
  // walk from t's root, replacing the subtree when reached
  std::function<RNode(int)> walk = [&](int v) -> RNode {
    if (v == root) {
      RNode w;
      w.tag = 1;
      collect(root, w);
      return w;
    }
    RNode n;
    for (int e : t.verts[v].ch) {
      if (PlanarTree::is_leaf(e)) {
        RNode l;
        l.leaf = e;
        n.ch.push_back(std::move(l));
      } else {
        n.ch.push_back(walk(PlanarTree::child_vertex(e)));
      }
    }
    return n;
  };
  RNode r = walk(0);
  std::vector<int> tags;
  PlanarTree out = from_rec(r, t.n_leaves, &tags);
  if (merged) {
    *merged = -1;
    for (int i = 0; i < (int)tags.size(); ++i)
      if (tags[i]) *merged = i;
  }
  return out;
}

std::vector<TreeAutomorphism> automorphisms(const PlanarTree& t) {
  std::vector<TreeAutomorphism> out;
  if (t.trivial()) {
    out.push_back({Perm{0}, Reordering{}});
    return out;
  }
  // unlabeled encoding per child entry for shape comparison
  std::function<std::string(int)> shape = [&](int e) -> std::string {
    if (PlanarTree::is_leaf(e)) return "*";
    int v = PlanarTree::child_vertex(e);
    std::vector<std::string> cs;
    for (int c : t.verts[v].ch) cs.push_back(shape(c));
    std::sort(cs.begin(), cs.end());
    std::string s = "(";
    for (size_t i = 0; i < cs.size(); ++i) {
      if (i) s += ' ';
      s += cs[i];
    }
    return s + ")";
  };
  struct PartMap {
    std::map<int, int> vmap;        // vertex -> image vertex
    std::map<int, Perm> cmap;       // vertex -> slot permutation
    std::map<int, int> lmap;        // leaf (1-based) -> image leaf
  };
  auto merge = [](const PartMap& a, const PartMap& b) {
    PartMap m = a;
    m.vmap.insert(b.vmap.begin(), b.vmap.end());
    m.cmap.insert(b.cmap.begin(), b.cmap.end());
    m.lmap.insert(b.lmap.begin(), b.lmap.end());
    return m;
  };
  // all isomorphisms of the branch at vertex a onto the branch at vertex b
  std::function<std::vector<PartMap>(int, int)> match = [&](int a,
                                                            int b) -> std::vector<PartMap> {
    std::vector<PartMap> result;
    int ar = t.arity(a);
    if (ar != t.arity(b)) return result;
    std::vector<std::string> sa(ar), sb(ar);
    for (int j = 0; j < ar; ++j) {
      sa[j] = shape(t.verts[a].ch[j]);
      sb[j] = shape(t.verts[b].ch[j]);
    }
    PartMap base;
    base.vmap[a] = b;
    base.cmap[a] = Perm(ar, -1);
    std::function<void(PartMap, std::vector<bool>, int)> assign =
        [&](PartMap pm, std::vector<bool> used, int j) {
          if (j == ar) {
            result.push_back(std::move(pm));
            return;
          }
          for (int k = 0; k < ar; ++k) {
            if (used[k] || sa[j] != sb[k]) continue;
            int ea = t.verts[a].ch[j], eb = t.verts[b].ch[k];
            PartMap pm2 = pm;
            pm2.cmap[a][j] = k;
            std::vector<bool> used2 = used;
            used2[k] = true;
            if (PlanarTree::is_leaf(ea)) {
              if (!PlanarTree::is_leaf(eb)) continue;
              pm2.lmap[ea] = eb;
              assign(std::move(pm2), std::move(used2), j + 1);
            } else {
              if (PlanarTree::is_leaf(eb)) continue;
              for (const PartMap& sub :
                   match(PlanarTree::child_vertex(ea), PlanarTree::child_vertex(eb)))
                assign(merge(pm2, sub), used2, j + 1);
            }
          }
        };
    assign(base, std::vector<bool>(ar, false), 0);
    return result;
  };
  for (const PartMap& pm : match(0, 0)) {
    TreeAutomorphism a;
    a.leaf_perm.assign(t.n_leaves, -1);
    for (auto& [l, il] : pm.lmap) a.leaf_perm[l - 1] = il - 1;
    a.reord.vperm.assign(t.n_vertices(), -1);
    for (auto& [v, iv] : pm.vmap) a.reord.vperm[v] = iv;
    a.reord.cperm.assign(t.n_vertices(), {});
    for (auto& [v, cp] : pm.cmap) a.reord.cperm[v] = cp;
    out.push_back(std::move(a));
  }
  return out;
}

namespace {

// set partitions of `elems` into exactly k nonempty blocks, blocks ordered
// by minimum element
void set_partitions(const std::vector<int>& elems, int k,
                    std::vector<std::vector<std::vector<int>>>& out) {
  std::vector<std::vector<int>> blocks;
  std::function<void(size_t)> rec = [&](size_t i) {
    if ((int)blocks.size() > k) return;
    if (i == elems.size()) {
      if ((int)blocks.size() == k) out.push_back(blocks);
      return;
    }
    size_t nb = blocks.size();  // rec() grows `blocks`; don't iterate past it
    for (size_t b = 0; b < nb; ++b) {
      blocks[b].push_back(elems[i]);
      rec(i + 1);
      blocks[b].pop_back();
    }
    blocks.push_back({elems[i]});
    rec(i + 1);
    blocks.pop_back();
  };
  rec(0);
}

struct TreeGen {
  std::vector<int> arities;
  int max_vertices;

  // all trees (>= 1 vertex) on the given leaf label set, <= budget vertices
  std::vector<RNode> gen(const std::vector<int>& leafset, int budget) {
    std::vector<RNode> out;
    if (budget < 1) return out;
    for (int a : arities) {
      if (a < 1 || (int)leafset.size() < a) continue;  // need a nonempty blocks
      std::vector<std::vector<std::vector<int>>> parts;
      set_partitions(leafset, a, parts);
      for (auto& blocks : parts) {
        // options per block: a bare leaf (singleton) or any subtree
        std::vector<std::vector<RNode>> opts(a);
        for (int j = 0; j < a; ++j) {
          if (blocks[j].size() == 1) {
            RNode l;
            l.leaf = blocks[j][0];
            opts[j].push_back(l);
          }
          for (RNode& s : gen(blocks[j], budget - 1)) opts[j].push_back(std::move(s));
        }
        // combine with total vertex budget
        std::function<int(const RNode&)> nverts = [&](const RNode& n) -> int {
          if (n.leaf > 0) return 0;
          int c = 1;
          for (auto& ch : n.ch) c += nverts(ch);
          return c;
        };
        std::vector<RNode> cur;
        std::function<void(int, int, RNode&)> combine = [&](int j, int used, RNode& acc) {
          if (used > budget) return;
          if (j == a) {
            out.push_back(acc);
            return;
          }
          for (RNode& o : opts[j]) {
            int nv = nverts(o);
            if (used + nv > budget) continue;
            acc.ch.push_back(o);
            combine(j + 1, used + nv, acc);
            acc.ch.pop_back();
          }
        };
        RNode root;
        combine(0, 1, root);
      }
    }
    return out;
  }
};

}  // namespace

std::vector<PlanarTree> enumerate_trees(int n_leaves, int max_vertices,
                                        const std::vector<int>& arities) {
  TreeGen g{arities, max_vertices};
  std::vector<int> leafset(n_leaves);
  std::iota(leafset.begin(), leafset.end(), 1);
  std::vector<PlanarTree> out;
  std::set<std::string> seen;
  for (RNode& r : g.gen(leafset, max_vertices)) {
    PlanarTree t = from_rec(r, n_leaves);
    auto [canon, re] = canonicalize(t);
    std::string e = encode(canon);
    if (seen.insert(e).second) out.push_back(std::move(canon));
  }
  std::sort(out.begin(), out.end(),
            [](const PlanarTree& a, const PlanarTree& b) { return encode(a) < encode(b); });
  return out;
}

std::vector<PlanarTree> planar_structures(const PlanarTree& t) {
  std::vector<PlanarTree> out;
  if (t.trivial()) return {t};
  // choose a child ordering at every vertex
  int nv = t.n_vertices();
  std::vector<std::vector<Perm>> choices(nv);
  for (int v = 0; v < nv; ++v) choices[v] = all_perms(t.arity(v));
  std::vector<int> pick(nv, 0);
  while (true) {
    std::function<RNode(int)> build = [&](int v) {
      RNode n;
      const Perm& p = choices[v][pick[v]];
      n.ch.resize(t.arity(v));
      for (int j = 0; j < t.arity(v); ++j) {
        int e = t.verts[v].ch[j];
        RNode c;
        if (PlanarTree::is_leaf(e))
          c.leaf = e;
        else
          c = build(PlanarTree::child_vertex(e));
        n.ch[p[j]] = std::move(c);
      }
      return n;
    };
    RNode r = build(0);
    out.push_back(from_rec(r, t.n_leaves));
    int v = nv - 1;
    while (v >= 0 && ++pick[v] == (int)choices[v].size()) pick[v--] = 0;
    if (v < 0) break;
  }
  return out;
}

std::vector<PlanarTree> leaf_ordered_planar_trees(int n_leaves, int n_vertices,
                                                  const std::vector<int>& arities) {
  // trees on the ordered leaf interval [lo..hi] with exactly v vertices
  std::function<std::vector<RNode>(int, int, int)> gen = [&](int lo, int hi,
                                                             int v) -> std::vector<RNode> {
    std::vector<RNode> out;
    if (v < 1) return out;
    int len = hi - lo + 1;
    for (int a : arities) {
      if (a > len) continue;
      // compositions of [lo..hi] into a contiguous nonempty intervals
      std::function<void(int, int, RNode&)> rec = [&](int start, int j, RNode& acc) {
        if (j == a) {
          if (start == hi + 1) {
            // count vertices
            std::function<int(const RNode&)> nv = [&](const RNode& n) -> int {
              if (n.leaf > 0) return 0;
              int c = 1;
              for (auto& ch : n.ch) c += nv(ch);
              return c;
            };
            if (nv(acc) == v) out.push_back(acc);
          }
          return;
        }
        int min_rest = a - j - 1;  // remaining blocks each need >= 1 leaf
        for (int end = start; end <= hi - min_rest; ++end) {
          if (end == start) {
            // single leaf block
            RNode l;
            l.leaf = start;
            acc.ch.push_back(l);
            rec(end + 1, j + 1, acc);
            acc.ch.pop_back();
          }
          // subtree block on [start..end] with any vertex count <= v-1
          for (int vv = 1; vv <= v - 1; ++vv) {
            for (RNode& s : gen(start, end, vv)) {
              acc.ch.push_back(s);
              rec(end + 1, j + 1, acc);
              acc.ch.pop_back();
            }
          }
        }
      };
      RNode root;
      rec(lo, 0, root);
    }
    return out;
  };
  std::vector<PlanarTree> out;
  for (RNode& r : gen(1, n_leaves, n_vertices)) out.push_back(from_rec(r, n_leaves));
  return out;
}

}  // namespace opdh
