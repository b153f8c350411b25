#include "wtower/context.hpp"

namespace wtower {

void Context::check_budget(int tree_order, int labels) const {
  int cap = labels <= 2 ? config_.max_order : config_.max_order_wide;
  if (labels > config_.max_labels || tree_order > cap)
    throw Error(ErrorCode::Budget,
                "budget exceeded: trees of order " + std::to_string(tree_order) + " with " +
                    std::to_string(labels) + " labels (caps: order " +
                    std::to_string(cap) + ", labels " + std::to_string(config_.max_labels) +
                    ")");
}

}  // namespace wtower
