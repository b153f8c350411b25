#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wtower {

// Rooted, vertex-oriented tree. A Node's children are ordered; together with
// the root edge they give the cyclic orientation (children..., root edge).
// Internal vertices are trivalent except the one 4-valent vertex allowed in
// IHX relator index trees (`quad`).
class RootedTree {
 public:
  RootedTree() : RootedTree(leaf(1)) {}
  static RootedTree leaf(int label);
  static RootedTree node(RootedTree a, RootedTree b);
  static RootedTree quad(RootedTree a, RootedTree b, RootedTree c);

  bool is_leaf() const { return data_->children.empty(); }
  bool is_quad() const { return data_->children.size() == 3; }
  int label() const { return data_->label; }
  const std::vector<RootedTree>& children() const { return data_->children; }
  const RootedTree& left() const { return data_->children[0]; }
  const RootedTree& right() const { return data_->children[1]; }
  // Trivalent vertices count once, a 4-valent vertex twice.
  int order() const { return data_->order; }
  int num_leaves() const { return data_->leaves; }
  int max_label() const { return data_->max_label; }
  bool has_quad() const { return data_->has_quad; }
  // Leaves as integers, nodes as (A,B), 4-valent vertices as (A,B,C).
  const std::string& encode() const { return data_->encoding; }

  bool operator==(const RootedTree& o) const { return encode() == o.encode(); }

 private:
  struct Data {
    int label = 0;
    std::vector<RootedTree> children;
    int order = 0;
    int leaves = 1;
    int max_label = 0;
    bool has_quad = false;
    std::string encoding;
  };
  explicit RootedTree(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  static RootedTree make(std::vector<RootedTree> kids);
  std::shared_ptr<const Data> data_;
};

// Length-then-lexicographic order on encodings.
bool encoding_less(std::string_view a, std::string_view b);
inline bool tree_less(const RootedTree& a, const RootedTree& b) {
  return encoding_less(a.encode(), b.encode());
}

// Unrooted tree stored as <label, R>: a univalent vertex carrying `label`
// attached to the root edge of R.
struct UnrootedTree {
  int label = 1;
  RootedTree tree;

  int order() const { return tree.order(); }
  std::string encode() const;
  bool operator==(const UnrootedTree& o) const {
    return label == o.label && tree == o.tree;
  }
};

template <class T>
struct CanonSign {
  T tree;
  int sign = 1;
  bool self_negating = false;
};

CanonSign<RootedTree> canonical_rooted(const RootedTree& t);
CanonSign<UnrootedTree> canonical_unrooted(const UnrootedTree& t);

RootedTree rooted_product(const RootedTree& a, const RootedTree& b);
// Glue root edges: canonical form with sign.
CanonSign<UnrootedTree> inner_product(const RootedTree& a, const RootedTree& b);
// The same tree as <label, R> without canonicalizing.
UnrootedTree join_roots(const RootedTree& a, const RootedTree& b);

struct RootedAt {
  int label;
  RootedTree tree;
};
// One entry per univalent vertex: its label and the tree seen from it.
std::vector<RootedAt> all_rootings(const UnrootedTree& t);
RootedAt root_at(const UnrootedTree& t, std::size_t vertex);

enum class TreeKind { rooted, unrooted, one_quad, rooted_one_quad };

std::vector<RootedTree> enumerate_rooted(int order, int labels);
std::vector<UnrootedTree> enumerate_unrooted(int order, int labels);
// Unrooted trees with one 4-valent vertex and total order `order`.
std::vector<UnrootedTree> enumerate_one_quad(int order, int labels);
// Rooted trees with one 4-valent vertex and total order `order`.
std::vector<RootedTree> enumerate_rooted_one_quad(int order, int labels);

// The three trees obtained by resolving the 4-valent vertex (A,B,C) as
// ((A,B),C), ((B,C),A), ((C,A),B); their sum is the Jacobi relator.
std::vector<RootedTree> expand_quad(const RootedTree& t);
std::vector<UnrootedTree> expand_quad(const UnrootedTree& t);

// Contract one internal edge in every possible way.
std::vector<RootedTree> contractions(const RootedTree& t);

// True if some vertex has two identical subtrees hanging from it.
bool has_identical_siblings(const RootedTree& t);

// Replace every leaf label by map(label).
RootedTree relabel(const RootedTree& t, const std::vector<int>& map);

// Parsing per the text grammar; throws Error(Parse).
RootedTree parse_rooted(std::string_view text);
UnrootedTree parse_unrooted(std::string_view text);

// Bracket-word rendering: leaf i -> Xi, node -> [A,B].
std::string bracket_word(const RootedTree& t);

}  // namespace wtower
