#include "wtower/trees.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <set>

#include "wtower/errors.hpp"

namespace wtower {

RootedTree RootedTree::leaf(int label) {
  if (label < 1) throw Error(ErrorCode::InvalidArgument, "tree labels start at 1");
  auto d = std::make_shared<Data>();
  d->label = label;
  d->max_label = label;
  d->encoding = std::to_string(label);
  return RootedTree(std::move(d));
}

RootedTree RootedTree::make(std::vector<RootedTree> kids) {
  auto d = std::make_shared<Data>();
  d->order = kids.size() == 3 ? 2 : 1;
  d->leaves = 0;
  d->has_quad = kids.size() == 3;
  std::size_t len = 1 + kids.size();
  for (const auto& k : kids) len += k.encode().size();
  d->encoding.reserve(len);
  d->encoding += '(';
  for (std::size_t i = 0; i < kids.size(); ++i) {
    const auto& k = kids[i];
    if (i) d->encoding += ',';
    d->encoding += k.encode();
    d->order += k.order();
    d->leaves += k.num_leaves();
    d->max_label = std::max(d->max_label, k.max_label());
    d->has_quad = d->has_quad || k.has_quad();
  }
  d->encoding += ')';
  d->children = std::move(kids);
  return RootedTree(std::move(d));
}

RootedTree RootedTree::node(RootedTree a, RootedTree b) {
  return make({std::move(a), std::move(b)});
}

RootedTree RootedTree::quad(RootedTree a, RootedTree b, RootedTree c) {
  return make({std::move(a), std::move(b), std::move(c)});
}

bool encoding_less(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::string UnrootedTree::encode() const {
  return "<" + std::to_string(label) + "," + tree.encode() + ">";
}

CanonSign<RootedTree> canonical_rooted(const RootedTree& t) {
  if (t.is_leaf()) return {t, 1, false};
  std::vector<RootedTree> kids;
  int sign = 1;
  bool sn = false;
  for (const auto& c : t.children()) {
    auto cc = canonical_rooted(c);
    sign *= cc.sign;
    sn = sn || cc.self_negating;
    kids.push_back(std::move(cc.tree));
  }
  // insertion sort; each transposition is one AS move
  for (std::size_t i = 1; i < kids.size(); ++i)
    for (std::size_t j = i; j > 0 && tree_less(kids[j], kids[j - 1]); --j) {
      std::swap(kids[j], kids[j - 1]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < kids.size(); ++i)
    if (kids[i] == kids[i - 1]) sn = true;
  if (kids.size() == 2) return {RootedTree::node(kids[0], kids[1]), sign, sn};
  return {RootedTree::quad(kids[0], kids[1], kids[2]), sign, sn};
}

namespace {

// Explicit graph of an unrooted tree. Vertex 0 is the labeled end of the
// root edge; neighbours are listed in cyclic order.
struct TreeGraph {
  std::vector<int> label;  // 0 for internal vertices
  std::vector<std::vector<int>> nbrs;
  std::vector<int> leaves;

  explicit TreeGraph(const UnrootedTree& t) {
    add(t.label);
    int top = build(t.tree, 0);
    nbrs[0].push_back(top);
  }

  int add(int lab) {
    label.push_back(lab);
    nbrs.emplace_back();
    int v = static_cast<int>(label.size()) - 1;
    if (lab) leaves.push_back(v);
    return v;
  }

  int build(const RootedTree& r, int parent) {
    if (r.is_leaf()) {
      int v = add(r.label());
      nbrs[v].push_back(parent);
      return v;
    }
    int v = add(0);
    std::vector<int> kids;
    for (const auto& c : r.children()) kids.push_back(build(c, v));
    kids.push_back(parent);
    nbrs[v] = std::move(kids);
    return v;
  }

  RootedTree rooted_from(int v, int from) const {
    if (label[v]) return RootedTree::leaf(label[v]);
    const auto& nb = nbrs[v];
    std::size_t k = std::find(nb.begin(), nb.end(), from) - nb.begin();
    std::vector<RootedTree> kids;
    for (std::size_t i = 1; i < nb.size(); ++i)
      kids.push_back(rooted_from(nb[(k + i) % nb.size()], v));
    if (kids.size() == 2) return RootedTree::node(kids[0], kids[1]);
    return RootedTree::quad(kids[0], kids[1], kids[2]);
  }

  RootedAt rooting(int leaf) const {
    return {label[leaf], rooted_from(nbrs[leaf][0], leaf)};
  }
};

}  // namespace

std::vector<RootedAt> all_rootings(const UnrootedTree& t) {
  TreeGraph g(t);
  std::vector<RootedAt> out;
  for (int v : g.leaves) out.push_back(g.rooting(v));
  return out;
}

RootedAt root_at(const UnrootedTree& t, std::size_t vertex) {
  TreeGraph g(t);
  if (vertex >= g.leaves.size())
    throw Error(ErrorCode::InvalidArgument,
                "vertex " + std::to_string(vertex) + " is not a univalent vertex of " +
                    t.encode());
  return g.rooting(g.leaves[vertex]);
}

CanonSign<UnrootedTree> canonical_unrooted(const UnrootedTree& t) {
  TreeGraph g(t);
  CanonSign<UnrootedTree> best;
  std::string best_key;
  bool have = false;
  bool sn = false;
  for (int v : g.leaves) {
    auto r = g.rooting(v);
    auto c = canonical_rooted(r.tree);
    sn = sn || c.self_negating;
    UnrootedTree cand{r.label, c.tree};
    std::string key = cand.encode();
    if (!have || encoding_less(key, best_key)) {
      best = {std::move(cand), c.sign, false};
      best_key = std::move(key);
      have = true;
    } else if (key == best_key && c.sign != best.sign) {
      sn = true;
    }
  }
  best.self_negating = sn;
  return best;
}

RootedTree rooted_product(const RootedTree& a, const RootedTree& b) {
  return RootedTree::node(a, b);
}

UnrootedTree join_roots(const RootedTree& a, const RootedTree& b) {
  // <(A,B),J> and <A,(B,J)> are the same oriented tree.
  RootedTree left = a, right = b;
  while (!left.is_leaf()) {
    if (right.is_leaf()) std::swap(left, right);
    else {
      if (left.is_quad())
        throw Error(ErrorCode::InvalidArgument, "inner product of 4-valent trees");
      right = RootedTree::node(left.right(), right);
      left = RootedTree(left.left());
    }
  }
  return {left.label(), right};
}

CanonSign<UnrootedTree> inner_product(const RootedTree& a, const RootedTree& b) {
  return canonical_unrooted(join_roots(a, b));
}

namespace {

std::mutex enum_mutex;
std::map<std::pair<int, int>, std::vector<RootedTree>> rooted_cache;

const std::vector<RootedTree>& rooted_level(int order, int labels) {
  auto key = std::make_pair(order, labels);
  auto it = rooted_cache.find(key);
  if (it != rooted_cache.end()) return it->second;
  std::vector<RootedTree> out;
  if (order == 0) {
    for (int i = 1; i <= labels; ++i) out.push_back(RootedTree::leaf(i));
  } else {
    for (int a = 0; a < order; ++a) {
      const auto& xs = rooted_level(a, labels);
      const auto& ys = rooted_level(order - 1 - a, labels);
      for (const auto& x : xs)
        for (const auto& y : ys)
          if (!tree_less(y, x)) out.push_back(RootedTree::node(x, y));
    }
  }
  std::sort(out.begin(), out.end(), tree_less);
  return rooted_cache.emplace(key, std::move(out)).first->second;
}

template <class T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end(), [](const T& a, const T& b) {
    return encoding_less(a.encode(), b.encode());
  });
  v.erase(std::unique(v.begin(), v.end(),
                      [](const T& a, const T& b) { return a.encode() == b.encode(); }),
          v.end());
}

void check_enum_args(int order, int labels) {
  if (order < 0 || labels < 1)
    throw Error(ErrorCode::InvalidArgument, "enumeration needs order >= 0 and labels >= 1");
}

}  // namespace

std::vector<RootedTree> enumerate_rooted(int order, int labels) {
  check_enum_args(order, labels);
  std::lock_guard lock(enum_mutex);
  return rooted_level(order, labels);
}

std::vector<UnrootedTree> enumerate_unrooted(int order, int labels) {
  check_enum_args(order, labels);
  std::vector<UnrootedTree> out;
  if (order == 0) {
    for (int i = 1; i <= labels; ++i)
      for (int j = i; j <= labels; ++j) out.push_back({i, RootedTree::leaf(j)});
    return out;
  }
  std::set<std::string> seen;
  for (const auto& r : enumerate_rooted(order, labels))
    for (int i = 1; i <= labels; ++i) {
      auto c = canonical_unrooted({i, r});
      if (seen.insert(c.tree.encode()).second) out.push_back(std::move(c.tree));
    }
  sort_unique(out);
  return out;
}

std::vector<RootedTree> contractions(const RootedTree& t) {
  std::vector<RootedTree> out;
  if (t.is_leaf() || t.is_quad()) return out;
  const auto& x = t.left();
  const auto& y = t.right();
  if (!x.is_leaf() && !x.is_quad()) out.push_back(RootedTree::quad(x.left(), x.right(), y));
  if (!y.is_leaf() && !y.is_quad()) out.push_back(RootedTree::quad(x, y.left(), y.right()));
  for (auto& c : contractions(x)) out.push_back(RootedTree::node(c, y));
  for (auto& c : contractions(y)) out.push_back(RootedTree::node(x, c));
  return out;
}

std::vector<RootedTree> enumerate_rooted_one_quad(int order, int labels) {
  check_enum_args(order, labels);
  std::vector<RootedTree> out;
  if (order < 2) return out;
  std::set<std::string> seen;
  for (const auto& r : enumerate_rooted(order, labels))
    for (const auto& c : contractions(r)) {
      auto cc = canonical_rooted(c);
      if (seen.insert(cc.tree.encode()).second) out.push_back(std::move(cc.tree));
    }
  std::sort(out.begin(), out.end(), tree_less);
  return out;
}

std::vector<UnrootedTree> enumerate_one_quad(int order, int labels) {
  check_enum_args(order, labels);
  std::vector<UnrootedTree> out;
  if (order < 2) return out;
  std::set<std::string> seen;
  for (const auto& u : enumerate_unrooted(order, labels))
    for (const auto& c : contractions(u.tree)) {
      auto cc = canonical_unrooted({u.label, c});
      if (seen.insert(cc.tree.encode()).second) out.push_back(std::move(cc.tree));
    }
  sort_unique(out);
  return out;
}

std::vector<RootedTree> expand_quad(const RootedTree& t) {
  if (t.is_quad()) {
    const auto& c = t.children();
    return {RootedTree::node(RootedTree::node(c[0], c[1]), c[2]),
            RootedTree::node(RootedTree::node(c[1], c[2]), c[0]),
            RootedTree::node(RootedTree::node(c[2], c[0]), c[1])};
  }
  if (!t.has_quad()) throw Error(ErrorCode::InvalidArgument, "tree has no 4-valent vertex");
  std::vector<RootedTree> out;
  if (t.left().has_quad())
    for (auto& e : expand_quad(t.left())) out.push_back(RootedTree::node(e, t.right()));
  else
    for (auto& e : expand_quad(t.right())) out.push_back(RootedTree::node(t.left(), e));
  return out;
}

std::vector<UnrootedTree> expand_quad(const UnrootedTree& t) {
  std::vector<UnrootedTree> out;
  for (auto& e : expand_quad(t.tree)) out.push_back({t.label, e});
  return out;
}

bool has_identical_siblings(const RootedTree& t) {
  if (t.is_leaf()) return false;
  const auto& c = t.children();
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j)
      if (c[i] == c[j]) return true;
  for (const auto& k : c)
    if (has_identical_siblings(k)) return true;
  return false;
}

RootedTree relabel(const RootedTree& t, const std::vector<int>& map) {
  if (t.is_leaf()) {
    if (t.label() >= static_cast<int>(map.size()))
      throw Error(ErrorCode::InvalidArgument, "relabel map too short");
    return RootedTree::leaf(map[t.label()]);
  }
  if (t.is_quad())
    return RootedTree::quad(relabel(t.children()[0], map), relabel(t.children()[1], map),
                            relabel(t.children()[2], map));
  return RootedTree::node(relabel(t.left(), map), relabel(t.right(), map));
}

std::string bracket_word(const RootedTree& t) {
  if (t.is_leaf()) return "X" + std::to_string(t.label());
  std::string s = "[";
  for (std::size_t i = 0; i < t.children().size(); ++i) {
    if (i) s += ',';
    s += bracket_word(t.children()[i]);
  }
  return s + "]";
}

namespace {

struct TreeParser {
  std::string_view s;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::Parse, "tree parse error at offset " + std::to_string(pos) +
                                      " in \"" + std::string(s) + "\": " + msg);
  }
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool peek(char c) {
    skip();
    return pos < s.size() && s[pos] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos;
  }
  int label() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail("expected a label");
    if (pos - start > 6) fail("label too large");
    int v = std::stoi(std::string(s.substr(start, pos - start)));
    if (v < 1) fail("labels start at 1");
    return v;
  }
  RootedTree rooted() {
    if (!peek('(')) return RootedTree::leaf(label());
    ++pos;
    std::vector<RootedTree> kids{rooted()};
    while (peek(',')) {
      ++pos;
      kids.push_back(rooted());
    }
    expect(')');
    if (kids.size() == 2) return RootedTree::node(kids[0], kids[1]);
    if (kids.size() == 3) return RootedTree::quad(kids[0], kids[1], kids[2]);
    fail("a vertex needs 2 or 3 children");
  }
  void finish() {
    skip();
    if (pos != s.size()) fail("trailing input");
  }
};

}  // namespace

RootedTree parse_rooted(std::string_view text) {
  TreeParser p{text};
  auto t = p.rooted();
  p.finish();
  return t;
}

UnrootedTree parse_unrooted(std::string_view text) {
  TreeParser p{text};
  p.expect('<');
  UnrootedTree u;
  u.label = p.label();
  p.expect(',');
  u.tree = p.rooted();
  p.expect('>');
  p.finish();
  return u;
}

}  // namespace wtower
