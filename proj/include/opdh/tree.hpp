#pragma once

#include <set>
#include <string>
#include <vector>

#include "opdh/graded.hpp"

namespace opdh {

// Reduced rooted tree with leaves labeled 1..n_leaves, carrying a planar
// structure (an ordering of the children of every vertex). Vertices are
// stored in depth-first pre-order; vertex 0 is the root vertex. A child
// entry is either a positive leaf label, or ~v for child vertex index v.
//
// The tree with no vertices (a bare leg) is verts = {} with n_leaves = 1.
//
// Canonical string encoding (grammar, root first):
//   tree  := label | '(' tree (' ' tree)* ')'
//   label := decimal leaf label
// A tree is canonical when at every vertex the children appear in
// increasing order of their encoded strings (plain byte-wise comparison).
struct PlanarTree {
  struct Vertex {
    std::vector<int> ch;
  };
  std::vector<Vertex> verts;
  int n_leaves = 0;

  int n_vertices() const { return (int)verts.size(); }
  bool trivial() const { return verts.empty(); }
  int arity(int v) const { return (int)verts[v].ch.size(); }
  static int child_leaf(int entry) { return entry; }          // entry > 0
  static bool is_leaf(int entry) { return entry > 0; }
  static int child_vertex(int entry) { return ~entry; }       // entry < 0

  bool operator==(const PlanarTree& o) const {
    if (n_leaves != o.n_leaves || verts.size() != o.verts.size()) return false;
    for (size_t i = 0; i < verts.size(); ++i)
      if (verts[i].ch != o.verts[i].ch) return false;
    return true;
  }
  bool operator<(const PlanarTree& o) const;
};

PlanarTree corolla(int n);
PlanarTree trivial_tree();

std::string encode(const PlanarTree& t);
PlanarTree decode_tree(const std::string& s);

// check the stored vertex order really is depth-first pre-order
bool df_ordered(const PlanarTree& t);
// arities of the vertices in depth-first order
std::vector<int> arity_sequence(const PlanarTree& t);
// leaf labels in planar depth-first order
std::vector<int> leaf_order(const PlanarTree& t);
// vertex containing leaf x, and the child slot; {-1,-1} for the trivial tree
std::pair<int, int> find_leaf(const PlanarTree& t, int x);
// parent vertex of vertex v (-1 for the root) and the slot of v in it
std::pair<int, int> find_parent(const PlanarTree& t, int v);

// How one planar representative maps onto another of the same labeled tree:
// vertex i of the source is vertex vperm[i] of the target, and child slot j
// at source vertex i sits at slot cperm[i][j] of the image vertex.
struct Reordering {
  Perm vperm;
  std::vector<Perm> cperm;
};

// The unique canonical representative plus the reordering onto it.
std::pair<PlanarTree, Reordering> canonicalize(const PlanarTree& t);
std::string canonical_encode(const PlanarTree& t);
// Reordering between two planar representatives of one labeled tree
// (throws if they are not the same labeled tree).
Reordering reorder_between(const PlanarTree& from, const PlanarTree& to);

// leaf x of t is replaced by sigma[x-1]+1 (0-based Perm on labels)
PlanarTree relabel(const PlanarTree& t, const Perm& sigma);

// Substitute s for leaf x of t with order-preserving relabeling: leaves of
// t below x keep their labels, the leaves of s become x..x+|s|-1, leaves of
// t above x shift up by |s|-1. When `origin` is given, it receives per
// result vertex either the t-vertex index it came from, or ~v for s-vertex
// v.
PlanarTree graft(const PlanarTree& s, const PlanarTree& t, int x,
                 std::vector<int>* origin = nullptr);

// Connected vertex-induced subtrees, each as a sorted vertex list.
std::vector<std::vector<int>> connected_subtrees(const PlanarTree& t);
bool is_connected_subtree(const PlanarTree& t, const std::vector<int>& vs);

// The subtree spanned by vs as a standalone tree: its legs (children of vs
// hanging outside vs) are labeled 1..b in the induced planar order.
PlanarTree extract_subtree(const PlanarTree& t, const std::vector<int>& vs);

// Collapse the connected subtree vs to a single vertex. Leaf labels are
// unchanged; the merged vertex inherits the hanging flags in their induced
// planar order. Its index in the depth-first order of the result is written
// to *merged (when non-null).
PlanarTree contract(const PlanarTree& t, const std::vector<int>& vs, int* merged = nullptr);

// Automorphisms of the underlying unlabeled rooted tree (root leg fixed).
// Each induces a permutation of the leaf labels and a reordering.
struct TreeAutomorphism {
  Perm leaf_perm;  // leaf x -> leaf_perm[x-1]+1
  Reordering reord;
};
std::vector<TreeAutomorphism> automorphisms(const PlanarTree& t);

// One canonical representative per labeled tree with n leaves, vertex count
// in [1, max_vertices], all vertex arities contained in `arities`.
// Deterministic order (sorted by encoding).
std::vector<PlanarTree> enumerate_trees(int n_leaves, int max_vertices,
                                        const std::vector<int>& arities);

// All planar structures of t (every ordering of every vertex's children).
std::vector<PlanarTree> planar_structures(const PlanarTree& t);

// Planar trees whose depth-first leaf order is exactly 1..n_leaves, with
// the given number of vertices and admissible arities. These are the
// normal-form planar trees indexing the symmetrized tree sums.
std::vector<PlanarTree> leaf_ordered_planar_trees(int n_leaves, int n_vertices,
                                                  const std::vector<int>& arities);

}  // namespace opdh
