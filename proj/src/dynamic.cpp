#include "formctl/dynamic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace formctl {

std::vector<std::string> validate_sliding_gains(const SlidingGains& g) {
  std::vector<std::string> problems;
  if (!(g.c_a > 0.0)) problems.push_back("sliding_gains: c_a must be a positive design constant");
  if (!(g.c_b > 0.0)) problems.push_back("sliding_gains: c_b must be a positive design constant");
  return problems;
}

std::vector<std::string> validate_learner_gains(const LearnerGains& g) {
  std::vector<std::string> problems;
  const auto check = [&](double v, const char* name) {
    if (!(v > 0.0)) problems.push_back(std::string("learner_gains: ") + name + " must be a positive design constant");
  };
  check(g.k4_v, "k4[0]");
  check(g.k4_w, "k4[1]");
  check(g.k5_v, "k5[0]");
  check(g.k5_w, "k5[1]");
  return problems;
}

ChannelPair sliding_surface(const LearnerGains& g, const ChannelPair& ev, const ChannelPair& integral) {
  return {g.k4_v * integral.v + ev.v, g.k4_w * integral.w + ev.w};
}

ChannelPair observer_rate(const ChannelPair& tau, const ParamEstimate& chat,
                          const LearnerGains& g, const ChannelPair& ev, const ChannelPair& s) {
  return {tau.v * chat.a_hat - g.k4_v * ev.v - g.k5_v * s.v,
          tau.w * chat.b_hat - g.k4_w * ev.w - g.k5_w * s.w};
}

ChannelPair adaptation_rate(const ChannelPair& tau, const LearnerGains& g, const ChannelPair& s) {
  return {-tau.v * g.k4_v * s.v, -tau.w * g.k4_w * s.w};
}

namespace {
double switch_term(double x, double boundary_layer) {
  if (boundary_layer > 0.0) return std::clamp(x / boundary_layer, -1.0, 1.0);
  return sgn(x);
}
}  // namespace

WheelTorques torque_command(const ParamEstimate& chat, const CommandRate& rate,
                            double vtilde, double wtilde, const SlidingGains& g,
                            double boundary_layer, double eps_c) {
  if (std::abs(chat.a_hat) < eps_c || std::abs(chat.b_hat) < eps_c) {
    std::ostringstream os;
    os << "parameter estimate underflow: |a_hat|=" << std::abs(chat.a_hat)
       << ", |b_hat|=" << std::abs(chat.b_hat) << " against threshold " << eps_c;
    throw ParameterUnderflowError(os.str());
  }
  const double lin = (rate.dv + g.c_a * switch_term(vtilde, boundary_layer)) / (2.0 * chat.a_hat);
  const double ang = (rate.dw + g.c_b * switch_term(wtilde, boundary_layer)) / (2.0 * chat.b_hat);
  return {lin + ang, lin - ang};
}

CommandRate command_rate(const VelocityCommand& prev, const VelocityCommand& curr,
                         double dt, bool have_prev) {
  if (!have_prev) return {0.0, 0.0};
  return {(curr.v - prev.v) / dt, (curr.w - prev.w) / dt};
}

}  // namespace formctl
