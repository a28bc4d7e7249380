#pragma once

#include "combopt/action_set.hpp"
#include "combopt/environments.hpp"
#include "combopt/rng.hpp"

namespace combopt {

// One side of the repeated game: pick an action, then digest the feedback.
class Player {
 public:
  virtual ~Player() = default;

  virtual ActionVector act(RngStream& rng) = 0;
  virtual void learn(const ActionVector& a, const Feedback& fb) = 0;
  virtual FeedbackMode feedback_mode() const = 0;
};

}  // namespace combopt
