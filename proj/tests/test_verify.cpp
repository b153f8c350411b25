#include <catch_amalgamated.hpp>

#include <json.hpp>

#include "wtower/verify.hpp"

using namespace wtower;

TEST_CASE("claim list") {
  CHECK(claim_ids().size() == 12);
  Context ctx;
  CHECK_THROWS_AS(verify(ctx, "thm99", {}), Error);
}

TEST_CASE("verify all at order 4, two labels") {
  Context ctx;
  VerifyParams p;
  p.max_order = 4;
  p.labels = 2;
  auto reports = verify_all(ctx, p);
  REQUIRE(reports.size() == 12);
  for (const auto& r : reports) {
    INFO(r.json);
    CHECK(r.status == Status::verified);
  }
}

TEST_CASE("single-order requests") {
  Context ctx;
  VerifyParams p;
  p.order = 1;
  auto r = verify(ctx, "tau_odd", p);
  CHECK(r.status == Status::verified);
  auto j = nlohmann::json::parse(r.json);
  CHECK(j["witness"]["instances"].size() == 2);
  auto inst = j["witness"]["instances"][1];
  CHECK(inst["groups"]["Ttilde"]["torsion"] == nlohmann::json::array({2, 2, 2}));
  CHECK(inst["groups"]["Tinf"]["free_rank"] == 0);
  CHECK(inst["groups"]["Tinf"]["torsion"].empty());
  p.order = 2;
  CHECK(verify(ctx, "tau_odd", p).status == Status::skipped);

  VerifyParams v;
  v.order = 2;
  v.labels = 1;
  auto r5 = nlohmann::json::parse(verify(ctx, "thm31_v", v).json);
  CHECK(r5["status"] == "verified");
  CHECK(r5["witness"]["instances"][0]["groups"]["kernel"]["torsion"] ==
        nlohmann::json::array({2}));
}

TEST_CASE("budget caps skip instances") {
  Config cfg;
  cfg.max_order = 1;
  Context ctx(cfg);
  VerifyParams p;
  p.max_order = 3;
  auto r = nlohmann::json::parse(verify(ctx, "thm31_i", p).json);
  CHECK(r["witness"]["instances"].back()["status"] == "skipped");
}
