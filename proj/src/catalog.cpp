#include "wtower/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

#include "wtower/eta.hpp"

namespace wtower {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorCode::Parse, msg); }

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, msg);
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

struct Term {
  Integer coeff;
  std::string atom;
};

// expression := term (('+' | '-') term)*,  term := [int '*'] atom
std::vector<Term> split_terms(const std::string& text) {
  std::vector<Term> out;
  int depth = 0;
  int sign = 1;
  std::string cur;
  auto flush = [&](bool last) {
    std::string t = trim(cur);
    if (t.empty()) {
      if (last && out.empty()) parse_error("empty element");
      parse_error("missing term in \"" + text + "\"");
    }
    Integer c = sign;
    auto star = t.find('*');
    if (star != std::string::npos) {
      std::string num = trim(std::string_view(t).substr(0, star));
      if (num.empty() || !std::all_of(num.begin(), num.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
        parse_error("bad coefficient \"" + num + "\"");
      c *= Integer::from_string(num);
      t = trim(std::string_view(t).substr(star + 1));
      if (t.empty()) parse_error("missing atom after '*'");
    }
    out.push_back({c, t});
    cur.clear();
  };
  bool leading = true;
  for (char ch : text) {
    if (ch == '(' || ch == '<') ++depth;
    if (ch == ')' || ch == '>') --depth;
    if (depth < 0) parse_error("unbalanced brackets in \"" + text + "\"");
    if ((ch == '+' || ch == '-') && depth == 0) {
      if (leading && trim(cur).empty()) {
        if (ch == '-') sign = -sign;
        continue;
      }
      flush(false);
      sign = ch == '-' ? -1 : 1;
      leading = true;
      continue;
    }
    if (!std::isspace(static_cast<unsigned char>(ch))) leading = false;
    cur += ch;
  }
  if (depth != 0) parse_error("unbalanced brackets in \"" + text + "\"");
  flush(true);
  return out;
}

void check_labels(int max_label, int labels, const std::string& atom) {
  require(max_label <= labels, "label out of range in " + atom);
}

std::string lie_word(const std::string& key) { return bracket_word(parse_rooted(key)); }

// Tensor keys are "i|R".
std::string tensor_word(const std::string& key) {
  auto bar = key.find('|');
  return "X" + key.substr(0, bar) + "⊗" + lie_word(key.substr(bar + 1));
}

std::string format_terms(const Group& g, const SparseVec& x,
                         const std::function<std::string(const std::string&)>& word) {
  std::string out;
  for (const auto& t : x.terms()) {
    Integer c = t.coeff;
    Integer d = g->order_of(SparseVec::unit(t.index));
    if (!d.is_zero()) c = floor_mod(c, d);
    if (c.is_zero()) continue;
    if (out.empty()) out += c.sign() < 0 ? "-" : "";
    else out += c.sign() < 0 ? " - " : " + ";
    Integer a = c.abs();
    if (!a.is_one()) out += a.to_string() + "*";
    out += word(g->generator(t.index));
  }
  return out.empty() ? "0" : out;
}

std::string key(const std::string& name, int n, int m) {
  return name + " at order " + std::to_string(n) + " with " + std::to_string(m) + " labels";
}

Space base(const std::string& name, int n, int m) {
  Space s;
  s.name = name;
  s.order = n;
  s.labels = m;
  return s;
}

Space tensor_space(Context& ctx, int n, int m, Variant v) {
  Space s = base(v == Variant::lie ? "L1xL" : "L1xLq", n, m);
  s.tensor = tensor_grade(ctx, n, m, v);
  s.group = s.tensor->group;
  return s;
}

Space z2_space(Context& ctx, const std::string& name, int k, int m, Variant v) {
  require(k >= 1, key(name, k, m) + " is not defined");
  Space s = base(name, k, m);
  s.lie = lie_group(ctx, k, m, v);
  s.group = z2_lie(ctx, k, m, v);
  return s;
}

}  // namespace

SparseVec Space::parse(const std::string& text) const {
  if (dinf) throw Error(ErrorCode::InvalidArgument, "elements of Dinf cannot be entered");
  SparseVec out;
  for (const auto& t : split_terms(text)) {
    const auto& a = t.atom;
    SparseVec v;
    if (a.front() == '<') {
      if (!trees) parse_error("tree " + a + " is not an element of " + name);
      auto u = parse_unrooted(a);
      check_labels(std::max(u.label, u.tree.max_label()), labels, a);
      require(u.order() == trees->n, "tree " + a + " has the wrong order for " + name);
      v = trees->element(u);
    } else if (a.rfind("inf:", 0) == 0) {
      if (!trees || trees->inf_trees.empty())
        parse_error(a + " is not an element of " + name);
      auto r = parse_rooted(a.substr(4));
      check_labels(r.max_label(), labels, a);
      require(2 * r.order() == trees->n, "tree " + a + " has the wrong order for " + name);
      v = trees->inf_element(r);
    } else if (a.find('|') != std::string::npos) {
      if (!tensor) parse_error(a + " is not an element of " + name);
      auto bar = a.find('|');
      std::string lab = trim(std::string_view(a).substr(0, bar));
      if (lab.empty() || !std::all_of(lab.begin(), lab.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
        parse_error("bad tensor label in " + a);
      int label = std::stoi(lab);
      auto r = parse_rooted(a.substr(bar + 1));
      require(label >= 1, "label out of range in " + a);
      check_labels(std::max(label, r.max_label()), labels, a);
      require(r.order() == tensor->factor->n - 1, "tree " + a + " has the wrong order for " + name);
      v = tensor->element(label, r);
    } else {
      if (!lie) parse_error(a + " is not an element of " + name);
      auto r = parse_rooted(a);
      check_labels(r.max_label(), labels, a);
      require(r.order() == lie->n - 1, "tree " + a + " has the wrong order for " + name);
      v = lie->element(r);
    }
    out.add_scaled(v, t.coeff);
  }
  if (embedding) {
    auto pre = PreimageSolver(*embedding).solve(out);
    require(pre.has_value(), "element does not lie in " + name);
    return *pre;
  }
  return out;
}

std::string Space::format(const SparseVec& x) const {
  if (dinf)
    return "(" + left->format(dinf->p.apply(x)) + " ; " + right->format(dinf->sl_prime.apply(x)) + ")";
  if (embedding) {
    // drop what vanishes in the subgroup before embedding
    SparseVec reduced;
    for (const auto& t : x.terms()) {
      Integer c = t.coeff;
      Integer d = group->order_of(SparseVec::unit(t.index));
      if (!d.is_zero()) c = floor_mod(c, d);
      if (!c.is_zero()) reduced += SparseVec::unit(t.index, c);
    }
    return format_terms(tensor->group, embedding->apply(reduced), tensor_word);
  }
  if (tensor) return format_terms(group, x, tensor_word);
  if (lie) return format_terms(group, x, lie_word);
  return format_terms(group, x, [](const std::string& k) { return k; });
}

const std::vector<std::string>& group_names() {
  static const std::vector<std::string> names = {"L",  "Lq", "D",    "Dq",  "Dtilde", "Dinf",
                                                 "T",  "Ttilde", "Tinf", "Z2L", "Z2Lq"};
  return names;
}

const std::vector<std::string>& map_names() {
  static const std::vector<std::string> names = {"etaP", "eta", "etaTilde", "etaInf", "delta",
                                                 "sq",   "sl",  "p",        "bracket"};
  return names;
}

Space named_group(Context& ctx, const std::string& name, int n, int m) {
  if (std::find(group_names().begin(), group_names().end(), name) == group_names().end())
    throw Error(ErrorCode::UnknownName, "unknown group \"" + name + "\"");
  require(m >= 1, "labels must be positive");
  require(n >= 0, "order must be nonnegative");
  // Lie-type groups of degree n are built from trees of order n - 1.
  const bool lie_type = name == "L" || name == "Lq" || name == "Z2L" || name == "Z2Lq";
  ctx.check_budget(lie_type ? std::max(n - 1, 0) : n, m);
  Space s = base(name, n, m);
  if (name == "L" || name == "Lq") {
    require(n >= 1, key(name, n, m) + " is not defined");
    s.lie = lie_group(ctx, n, m, name == "L" ? Variant::lie : Variant::quasi);
    s.group = s.lie->group;
  } else if (name == "Z2L" || name == "Z2Lq") {
    return z2_space(ctx, name, n, m, name == "Z2L" ? Variant::lie : Variant::quasi);
  } else if (name == "D" || name == "Dq") {
    auto v = name == "D" ? Variant::lie : Variant::quasi;
    auto d = d_group(ctx, n, m, v);
    s.tensor = tensor_grade(ctx, n, m, v);
    s.group = d->group;
    s.embedding = d->inclusion;
  } else if (name == "Dtilde") {
    require(n % 2 == 1, key(name, n, m) + " is not defined (odd orders only)");
    auto dt = d_tilde(ctx, n, m);
    s.tensor = tensor_grade(ctx, n, m, Variant::quasi);
    s.group = dt->group;
    s.embedding = d_group(ctx, n, m, Variant::quasi)->inclusion;
  } else if (name == "Dinf") {
    require(n % 4 == 2, key(name, n, m) + " is not defined (orders 4k-2 only)");
    s.dinf = d_infinity(ctx, n, m);
    s.group = s.dinf->group();
    s.left = std::make_shared<const Space>(named_group(ctx, "D", n, m));
    s.right = std::make_shared<const Space>(z2_space(ctx, "Z2Lq", (n + 2) / 2, m, Variant::quasi));
  } else {
    s.trees = name == "T" ? t_group(ctx, n, m) : name == "Ttilde" ? t_tilde(ctx, n, m)
                                                                    : t_infinity(ctx, n, m);
    s.group = s.trees->group;
  }
  return s;
}

NamedMap named_map(Context& ctx, const std::string& name, int n, int m) {
  if (std::find(map_names().begin(), map_names().end(), name) == map_names().end())
    throw Error(ErrorCode::UnknownName, "unknown map \"" + name + "\"");
  require(m >= 1, "labels must be positive");
  require(n >= 0, "order must be nonnegative");
  NamedMap out;
  out.name = name;
  if (name == "etaP") {
    out.source = named_group(ctx, "T", n, m);
    out.target = named_group(ctx, "Dq", n, m);
    out.hom = eta_prime(ctx, n, m);
  } else if (name == "eta") {
    out.source = named_group(ctx, "Tinf", n, m);
    out.target = named_group(ctx, "D", n, m);
    out.hom = eta(ctx, n, m);
  } else if (name == "etaTilde") {
    out.source = named_group(ctx, "Ttilde", n, m);
    out.target = named_group(ctx, "Dtilde", n, m);
    out.hom = eta_tilde(ctx, n, m);
  } else if (name == "etaInf") {
    out.source = named_group(ctx, "Tinf", n, m);
    out.target = named_group(ctx, "Dinf", n, m);
    out.hom = eta_infinity(ctx, n, m);
  } else if (name == "delta") {
    require(n >= 1, key(name, n, m) + " is not defined");
    ctx.check_budget(2 * n - 1, m);
    out.hom = delta(ctx, n, m);
    out.source = named_group(ctx, "T", n - 1, m);
    out.source.name = "Z2T";
    out.source.group = out.hom.source();
    out.target = named_group(ctx, "T", 2 * n - 1, m);
  } else if (name == "sq") {
    out.source = named_group(ctx, "Z2L", n, m);
    out.target = named_group(ctx, "Lq", 2 * n, m);
    out.hom = sq(ctx, n, m);
  } else if (name == "sl") {
    require(n >= 2 && n % 2 == 0, key(name, n, m) + " is not defined (even orders only)");
    out.source = named_group(ctx, "D", n, m);
    out.target = named_group(ctx, "Z2L", n / 2 + 1, m);
    out.hom = sl(ctx, n, m).map;
  } else if (name == "p") {
    out.source = named_group(ctx, "Lq", n, m);
    out.target = named_group(ctx, "L", n, m);
    out.hom = proj_p(ctx, n, m);
  } else {
    ctx.check_budget(n + 1, m);
    out.source = tensor_space(ctx, n, m, Variant::lie);
    out.target = named_group(ctx, "L", n + 2, m);
    out.hom = bracket_hom(ctx, n, m, Variant::lie);
  }
  return out;
}

namespace {

json structure_fields(const Structure& s) {
  json t = json::array();
  for (const auto& d : s.torsion) {
    if (auto v = d.to_int64()) t.push_back(*v);
    else t.push_back(d.to_string());
  }
  return json{{"free_rank", s.free_rank}, {"torsion", t}, {"structure", s.to_string()}};
}

json space_json(const Space& s) {
  json j{{"group", s.name}, {"order", s.order}, {"labels", s.labels}};
  j.update(structure_fields(s.group->structure()));
  return j;
}

}  // namespace

std::string group_json(const Space& s, bool with_generators) {
  json j = space_json(s);
  if (with_generators) {
    json gens = json::array();
    for (std::size_t i = 0; i < s.group->num_generators(); ++i)
      gens.push_back(s.format(SparseVec::unit(i)));
    j["generators"] = gens;
  }
  return j.dump(2);
}

std::string map_json(const NamedMap& m) {
  auto a = hom_analysis(m.hom);
  const auto mat = m.hom.matrix();
  json rows = json::array();
  for (std::size_t r = 0; r < mat.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < mat.cols(); ++c) {
      const auto& x = mat.at(r, c);
      if (auto v = x.to_int64()) row.push_back(*v);
      else row.push_back(x.to_string());
    }
    rows.push_back(std::move(row));
  }
  json images = json::array();
  for (std::size_t i = 0; i < m.hom.source()->num_generators(); ++i)
    images.push_back({{"generator", m.source.format(SparseVec::unit(i))},
                      {"image", m.target.format(m.hom.image(i))}});
  json j{{"map", m.name},
         {"order", m.source.order},
         {"labels", m.source.labels},
         {"source", space_json(m.source)},
         {"target", space_json(m.target)},
         {"matrix", rows},
         {"images", images},
         {"injective", a.injective},
         {"surjective", a.surjective},
         {"isomorphism", a.isomorphism},
         {"kernel", structure_fields(a.kernel->structure())},
         {"image", structure_fields(a.image->structure())},
         {"cokernel", structure_fields(a.cokernel->structure())}};
  return j.dump(2);
}

std::string structure_table(Context& ctx, int max_order, int labels) {
  std::ostringstream out;
  out << "name,n,m,free_rank,torsion\n";
  for (const auto& name : group_names())
    for (int m = 1; m <= labels; ++m)
      for (int n = 0; n <= max_order; ++n) {
        Space s;
        try {
          s = named_group(ctx, name, n, m);
        } catch (const Error& e) {
          if (e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::Budget) continue;
          throw;
        }
        const auto& st = s.group->structure();
        out << name << ',' << n << ',' << m << ',' << st.free_rank << ',';
        for (std::size_t i = 0; i < st.torsion.size(); ++i)
          out << (i ? " " : "") << st.torsion[i];
        out << '\n';
      }
  return out.str();
}

}  // namespace wtower
