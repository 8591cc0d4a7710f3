#pragma once

#include <string>
#include <vector>

#include "formctl/common.hpp"
#include "formctl/models.hpp"

namespace formctl {

// Relay gains of the sliding torque law, one per channel.
struct SlidingGains {
  double c_a = 3.0;
  double c_b = 3.0;
};

// Observer/adaptation gains, one pair per channel (v, w).
struct LearnerGains {
  double k4_v = 6.0;
  double k4_w = 50.0;
  double k5_v = 25.0;
  double k5_w = 50.0;
};

std::vector<std::string> validate_sliding_gains(const SlidingGains& g);
std::vector<std::string> validate_learner_gains(const LearnerGains& g);

// Estimates of the actuation gains (a, b). Start deliberately wrong by
// default so the learner has something to do.
struct ParamEstimate {
  double a_hat = 0.1;
  double b_hat = 1.0;
};

// Generic (v-channel, w-channel) pair.
struct ChannelPair {
  double v = 0.0;
  double w = 0.0;
};

struct CommandRate {
  double dv = 0.0;
  double dw = 0.0;
};

// S = k4 * integral(e_v) + e_v, per channel.
ChannelPair sliding_surface(const LearnerGains& g, const ChannelPair& ev, const ChannelPair& integral);

// Velocity observer: dzhat = tau .* chat - k4 .* e_v - k5 .* S,
// with tau the channel torques (tau_l + tau_r, tau_l - tau_r).
ChannelPair observer_rate(const ChannelPair& tau, const ParamEstimate& chat,
                          const LearnerGains& g, const ChannelPair& ev, const ChannelPair& s);

// Adaptation: dchat = -tau .* k4 .* S.
ChannelPair adaptation_rate(const ChannelPair& tau, const LearnerGains& g, const ChannelPair& s);

// Sliding-mode wheel torques from the command rates and velocity tracking
// errors (vtilde = v_cmd - v, wtilde = w_cmd - w). boundary_layer > 0 replaces
// the signum with a saturated ramp of that half-width; zero keeps the relay.
// Throws ParameterUnderflowError when either estimate magnitude is below
// eps_c; estimates are never clamped.
WheelTorques torque_command(const ParamEstimate& chat, const CommandRate& rate,
                            double vtilde, double wtilde, const SlidingGains& g,
                            double boundary_layer, double eps_c);

// Backward difference of the velocity command; zero at the first step where
// no previous command exists.
CommandRate command_rate(const VelocityCommand& prev, const VelocityCommand& curr,
                         double dt, bool have_prev);

}  // namespace formctl
