// Command-line front end. Talks to the library only through wtower.h.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wtower/wtower.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 64;

int exit_code(wt_status s) {
  switch (s) {
    case WT_OK: return 0;
    case WT_ERR_BUDGET: return 2;
    case WT_ERR_UNKNOWN_NAME: return 3;
    case WT_ERR_PARSE: return 4;
    case WT_ERR_SCHEMA: return 5;
    case WT_ERR_INVALID_ARGUMENT: return 6;
    case WT_ERR_MATH: return 7;
    case WT_ERR_INTERNAL: return 8;
  }
  return 8;
}

struct Context {
  wt_context* ctx = nullptr;
  ~Context() { wt_context_free(ctx); }
};

// Owns a string returned by the library.
struct Text {
  char* s = nullptr;
  ~Text() { wt_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

int fail(wt_context* ctx, wt_status s) {
  std::cerr << "error: "
            << (ctx && *wt_context_error(ctx) ? wt_context_error(ctx) : wt_status_name(s)) << '\n';
  return exit_code(s);
}

void flatten(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

void emit(const std::string& text, const std::string& format) {
  if (format == "text") flatten(json::parse(text), "", std::cout);
  else std::cout << text << '\n';
}

std::string group_csv(const std::string& text) {
  auto j = json::parse(text);
  std::ostringstream out;
  out << "name,n,m,free_rank,torsion\n"
      << j["group"].get<std::string>() << ',' << j["order"] << ',' << j["labels"] << ','
      << j["free_rank"] << ',';
  bool first = true;
  for (const auto& t : j["torsion"]) {
    out << (first ? "" : " ") << (t.is_string() ? t.get<std::string>() : t.dump());
    first = false;
  }
  out << '\n';
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Whitney tower groups, maps and verification"};
  app.require_subcommand(1);
  app.fallthrough();

  wt_config cfg;
  wt_config_default(&cfg);
  std::string format = "json";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "text", "csv"}));
  app.add_option("--jobs", cfg.jobs, "Worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", cfg.seed, "Seed for randomized checks");
  app.add_option("--cap-order", cfg.max_order, "Largest tree order for 1-2 labels")
      ->check(CLI::PositiveNumber);
  app.add_option("--cap-order-wide", cfg.max_order_wide, "Largest tree order for 3+ labels")
      ->check(CLI::PositiveNumber);
  app.add_option("--cap-labels", cfg.max_labels, "Largest label count")->check(CLI::PositiveNumber);

  int order = 0, labels = 2, max_order = 2;
  std::string name, element, report, input;
  bool generators = false;
  int verify_order = -1;

  auto* group = app.add_subcommand("group", "Structure of a named group");
  group->add_option("name", name, "L, Lq, D, Dq, Dtilde, Dinf, T, Ttilde, Tinf, Z2L, Z2Lq")->required();
  group->add_option("--order", order, "Order n")->required();
  group->add_option("--labels", labels, "Number of labels m");
  group->add_flag("--generators", generators, "List generators");
  group->add_option("--element", element, "Print an element in normal form");

  auto* map = app.add_subcommand("map", "Matrix of a named map, or the image of an element");
  map->add_option("name", name, "etaP, eta, etaTilde, etaInf, delta, sq, sl, p, bracket")->required();
  map->add_option("--order", order, "Order n")->required();
  map->add_option("--labels", labels, "Number of labels m");
  map->add_option("--element", element, "Source element in the tree grammar");

  auto* verify = app.add_subcommand("verify", "Check claims on small instances");
  verify->add_option("claim", name, "Claim id or all");
  verify->add_option("--max-order", max_order, "Largest instance order");
  verify->add_option("--order", verify_order, "Run only this order");
  verify->add_option("--labels", labels, "Largest label count");
  verify->add_option("--report", report, "Write the JSON report here instead of stdout");
  bool list = false;
  verify->add_flag("--list", list, "Print the claim ids");

  auto* quad = app.add_subcommand("quadratic", "Universal quadratic refinements");
  quad->add_option("kind", name, "universal, commutative, symmetric or bridge")->required();
  quad->add_option("--input", input, "Form as JSON");
  quad->add_option("--order", order, "Tree order for bridge (even)");
  quad->add_option("--labels", labels, "Labels for bridge");

  auto* table = app.add_subcommand("table", "CSV of group structures over a grid");
  table->add_option("--max-order", max_order, "Largest order");
  table->add_option("--labels", labels, "Largest label count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  Context c;
  if (wt_status s = wt_context_new(&cfg, &c.ctx); s != WT_OK) return fail(nullptr, s);
  wt_context* ctx = c.ctx;

  if (format == "csv" && !group->parsed() && !table->parsed()) {
    std::cerr << "error: csv output is available for group and table only\n";
    return kExitUsage;
  }

  if (group->parsed()) {
    wt_group* g = nullptr;
    if (auto s = wt_group_new(ctx, name.c_str(), order, labels, &g); s != WT_OK) return fail(ctx, s);
    Text out;
    wt_status s = element.empty() ? wt_group_json(ctx, g, generators, &out.s)
                                  : wt_group_element(ctx, g, element.c_str(), &out.s);
    wt_group_free(g);
    if (s != WT_OK) return fail(ctx, s);
    if (!element.empty()) std::cout << out.str() << '\n';
    else if (format == "csv") std::cout << group_csv(out.str());
    else emit(out.str(), format);
    return 0;
  }

  if (map->parsed()) {
    wt_hom* h = nullptr;
    if (auto s = wt_hom_new(ctx, name.c_str(), order, labels, &h); s != WT_OK) return fail(ctx, s);
    Text out;
    wt_status s = element.empty() ? wt_hom_json(ctx, h, &out.s)
                                  : wt_hom_apply(ctx, h, element.c_str(), &out.s);
    wt_hom_free(h);
    if (s != WT_OK) return fail(ctx, s);
    if (!element.empty()) std::cout << out.str() << '\n';
    else emit(out.str(), format);
    return 0;
  }

  if (verify->parsed()) {
    Text out;
    if (list) {
      if (auto s = wt_claims(&out.s); s != WT_OK) return fail(ctx, s);
      const auto ids = json::parse(out.str());
      for (const auto& id : ids) std::cout << id.get<std::string>() << '\n';
      return 0;
    }
    if (name.empty()) {
      std::cerr << "error: verify needs a claim id, all, or --list\n";
      return kExitUsage;
    }
    int ok = 0;
    if (auto s = wt_verify(ctx, name.c_str(), max_order, labels, verify_order, &out.s, &ok);
        s != WT_OK)
      return fail(ctx, s);
    if (report.empty()) {
      emit(out.str(), format);
    } else {
      std::ofstream f(report, std::ios::binary);
      f << out.str() << '\n';
      if (!f) {
        std::cerr << "error: cannot write " << report << '\n';
        return exit_code(WT_ERR_INVALID_ARGUMENT);
      }
      const auto j = json::parse(out.str());
      for (const auto& r : j["reports"])
        std::cout << r["claim"].get<std::string>() << ": " << r["status"].get<std::string>() << '\n';
    }
    return ok ? 0 : kExitVerifyFailed;
  }

  if (quad->parsed()) {
    Text out;
    int ok = 0;
    wt_status s;
    if (name == "bridge") {
      s = wt_bridge(ctx, order, labels, &out.s, &ok);
    } else {
      if (input.empty()) {
        std::cerr << "error: --input is required for " << name << '\n';
        return kExitUsage;
      }
      std::ifstream f(input, std::ios::binary);
      if (!f) {
        std::cerr << "error: cannot read " << input << '\n';
        return exit_code(WT_ERR_INVALID_ARGUMENT);
      }
      std::stringstream buf;
      buf << f.rdbuf();
      s = wt_quadratic(ctx, name.c_str(), buf.str().c_str(), &out.s, &ok);
    }
    if (s != WT_OK) return fail(ctx, s);
    emit(out.str(), format);
    return ok ? 0 : kExitVerifyFailed;
  }

  Text out;
  if (auto s = wt_table(ctx, max_order, labels, &out.s); s != WT_OK) return fail(ctx, s);
  std::cout << out.str();
  return 0;
}
