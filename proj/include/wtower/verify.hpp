#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wtower/context.hpp"

namespace wtower {

enum class Status { verified, failed, skipped };
const char* status_name(Status s);

struct VerifyParams {
  int max_order = 2;
  int labels = 2;
  std::optional<int> order;  // run only instances of this order
};

struct VerificationReport {
  std::string claim;
  VerifyParams params;
  Status status = Status::skipped;
  std::string json;  // {"claim", "params", "status", "witness"}
};

const std::vector<std::string>& claim_ids();
// Throws Error(UnknownName) for an unknown claim.
VerificationReport verify(Context& ctx, const std::string& claim, const VerifyParams& params);
// All claims, run on ctx.config().jobs threads, in claim_ids() order.
std::vector<VerificationReport> verify_all(Context& ctx, const VerifyParams& params);
// {"reports": [...]} with the summary counts.
std::string reports_json(const std::vector<VerificationReport>& reports);

}  // namespace wtower
