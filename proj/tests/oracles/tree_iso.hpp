#pragma once
// Brute-force oracle for oriented trees: explicit graphs and an exhaustive
// isomorphism search that reports which orientation signs are realized.
// Independent of the library's encodings.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace oracle {

struct OTree {
  // A raw tree: leaf if kids empty, else ordered children.
  int label = 0;
  std::vector<OTree> kids;
};

inline OTree leaf(int l) { return {l, {}}; }
inline OTree node(OTree a, OTree b) { return {0, {std::move(a), std::move(b)}}; }

struct Graph {
  std::vector<int> label;
  std::vector<std::vector<int>> nbrs;  // cyclic order

  int add(int l) {
    label.push_back(l);
    nbrs.emplace_back();
    return static_cast<int>(label.size()) - 1;
  }
  int build(const OTree& t, int parent) {
    int v = add(t.label);
    if (t.kids.empty()) {
      nbrs[v] = {parent};
      return v;
    }
    std::vector<int> ns;
    for (const auto& k : t.kids) ns.push_back(build(k, v));
    ns.push_back(parent);
    nbrs[v] = ns;
    return v;
  }
};

// Unrooted <root_label, t>.
inline Graph unrooted_graph(int root_label, const OTree& t) {
  Graph g;
  g.add(root_label);
  int top = g.build(t, 0);
  g.nbrs[0] = {top};
  return g;
}

// Two rooted trees glued along their root edges.
inline Graph glued_graph(const OTree& a, const OTree& b) {
  if (a.kids.empty()) return unrooted_graph(a.label, b);
  if (b.kids.empty()) return unrooted_graph(b.label, a);
  Graph g;
  int va = g.add(0);
  std::vector<int> na;
  for (const auto& k : a.kids) na.push_back(g.build(k, va));
  int vb = g.add(0);
  std::vector<int> nb;
  for (const auto& k : b.kids) nb.push_back(g.build(k, vb));
  na.push_back(vb);
  nb.push_back(va);
  g.nbrs[va] = na;
  g.nbrs[vb] = nb;
  return g;
}

inline bool cyclic_equal(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t r = 0; r < a.size(); ++r) {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) ok = a[i] == b[(i + r) % b.size()];
    if (ok) return true;
  }
  return false;
}

// All signs of isomorphisms from the branch (v1 seen from p1) onto (v2 from p2).
// The set holds +1/-1 products of orientation agreements.
inline std::set<int> branch_iso(const Graph& g1, int v1, int p1, const Graph& g2, int v2,
                                int p2) {
  if (g1.label[v1] != g2.label[v2]) return {};
  if (g1.label[v1] != 0) return {1};
  const auto& n1 = g1.nbrs[v1];
  const auto& n2 = g2.nbrs[v2];
  if (n1.size() != n2.size()) return {};
  std::vector<int> o1, o2;
  for (int x : n1)
    if (x != p1) o1.push_back(x);
  for (int x : n2)
    if (x != p2) o2.push_back(x);
  std::set<int> out;
  std::vector<int> perm(o2.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  do {
    std::set<int> acc{1};
    for (std::size_t i = 0; i < o1.size() && !acc.empty(); ++i) {
      auto s = branch_iso(g1, o1[i], v1, g2, o2[perm[i]], v2);
      std::set<int> next;
      for (int a : acc)
        for (int b : s) next.insert(a * b);
      acc = next;
    }
    if (acc.empty()) continue;
    // image of v1's cyclic order in g2's vertex names
    std::vector<int> image;
    for (int x : n1) {
      if (x == p1) image.push_back(p2);
      else {
        auto idx = std::find(o1.begin(), o1.end(), x) - o1.begin();
        image.push_back(o2[perm[idx]]);
      }
    }
    int here = cyclic_equal(image, n2) ? 1 : -1;
    for (int a : acc) out.insert(a * here);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Signs of all label-preserving isomorphisms g1 -> g2 (empty if none).
inline std::set<int> iso_signs(const Graph& g1, const Graph& g2) {
  std::set<int> out;
  if (g1.label.size() != g2.label.size()) return out;
  // anchor: the first leaf of g1, mapped to every leaf of g2
  int l1 = 0;
  while (g1.label[l1] == 0) ++l1;
  int a = g1.nbrs[l1][0];
  for (int v = 0; v < static_cast<int>(g2.label.size()); ++v) {
    if (g2.label[v] == 0 || g2.label[v] != g1.label[l1]) continue;
    for (int s : branch_iso(g1, a, l1, g2, g2.nbrs[v][0], v)) out.insert(s);
  }
  return out;
}

// Rooted: isomorphisms fixing the root.
inline std::set<int> rooted_iso_signs(const OTree& a, const OTree& b) {
  Graph g1 = unrooted_graph(1, a), g2 = unrooted_graph(1, b);
  return branch_iso(g1, g1.nbrs[0][0], 0, g2, g2.nbrs[0][0], 0);
}

// All ordered binary trees with the given number of internal vertices and
// all labelings from 1..m.
inline std::vector<OTree> all_rooted(int order, int m) {
  std::vector<OTree> out;
  if (order == 0) {
    for (int i = 1; i <= m; ++i) out.push_back(leaf(i));
    return out;
  }
  for (int a = 0; a < order; ++a)
    for (const auto& x : all_rooted(a, m))
      for (const auto& y : all_rooted(order - 1 - a, m)) out.push_back(node(x, y));
  return out;
}

// Orientation classes (ignoring sign) of a list of graphs, by brute force.
inline std::size_t count_classes(const std::vector<Graph>& gs) {
  std::vector<const Graph*> reps;
  for (const auto& g : gs) {
    bool found = false;
    for (auto* r : reps)
      if (!iso_signs(g, *r).empty()) {
        found = true;
        break;
      }
    if (!found) reps.push_back(&g);
  }
  return reps.size();
}

}  // namespace oracle
