#include "formctl/sim.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace formctl {

bool variant_uses_bioinspired(Variant v) {
  return v == Variant::bioinspired || v == Variant::bioinspired_learning;
}

bool variant_uses_learning(Variant v) {
  return v == Variant::backstepping_learning || v == Variant::bioinspired_learning;
}

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::backstepping: return "backstepping";
    case Variant::bioinspired: return "bioinspired";
    case Variant::backstepping_learning: return "backstepping_learning";
    case Variant::bioinspired_learning: return "bioinspired_learning";
  }
  return "unknown";
}

Variant variant_from_name(const std::string& name) {
  for (Variant v : kAllVariants) {
    if (variant_name(v) == name) return v;
  }
  throw std::invalid_argument(
      "unknown variant '" + name +
      "'; expected one of backstepping, bioinspired, backstepping_learning, "
      "bioinspired_learning");
}

ScenarioConfig::ScenarioConfig() {
  topology.n = 3;
  topology.adjacency = Eigen::MatrixXd::Zero(3, 3);
  const int edges[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (const auto& e : edges) {
    topology.adjacency(e[0], e[1]) = 1.0;
    topology.adjacency(e[1], e[0]) = 1.0;
  }
  topology.leader_links = Eigen::VectorXd::Zero(3);
  topology.leader_links(0) = 1.0;

  offsets = {{3.0, 0.0}, {4.0, 5.0}, {4.0, -5.0}};

  d1 = {DisturbanceKind::constant, 0.1, 0.0, 0.0};
  d2 = {DisturbanceKind::sinusoid, 0.1, 1.0, 0.0};

  trajectory.x = {0.0, 1.0, 0.0, 0.0, 0.0};
  trajectory.y = {3.0, 0.0, 0.4, 1.0, -std::numbers::pi / 2.0};
}

const EstimatorGains& ScenarioConfig::gains_for(int i) const {
  if (estimator_gains.size() == 1) return estimator_gains.front();
  return estimator_gains[static_cast<size_t>(i)];
}

ScenarioConfig demo_config() {
  ScenarioConfig cfg;
  cfg.decimation = 50;
  return cfg;
}

namespace {

constexpr int kTrajectorySamples = 1000;
constexpr long kMaxSteps = 500000000;

long step_count(const ScenarioConfig& cfg) {
  return std::llround(cfg.horizon / cfg.dt);
}

}  // namespace

std::vector<std::string> validate_config(const ScenarioConfig& cfg) {
  std::vector<std::string> problems;
  const auto add = [&](std::vector<std::string> more) {
    for (auto& p : more) problems.push_back(std::move(p));
  };

  if (!(cfg.dt > 0.0 && cfg.dt <= 0.01)) {
    problems.push_back("dt: must be in (0, 0.01]; larger steps leave the sliding terms unstable");
  }
  if (!(cfg.horizon > 0.0)) problems.push_back("horizon: must be positive");
  if (cfg.dt > 0.0 && cfg.horizon > 0.0) {
    const long steps = step_count(cfg);
    if (steps < 1) problems.push_back("horizon: must cover at least one step of size dt");
    if (steps > kMaxSteps) problems.push_back("horizon: horizon/dt exceeds the step budget (5e8)");
  }
  if (cfg.decimation < 1) problems.push_back("decimation: must be at least 1");

  add(validate_topology(cfg.topology));
  const size_t n = static_cast<size_t>(cfg.topology.n);
  if (cfg.offsets.size() != n) {
    problems.push_back("offsets: need exactly one (dx, dy) pair per follower");
  }
  if (cfg.initial_poses && cfg.initial_poses->size() != n) {
    problems.push_back("initial_poses: need exactly one pose per follower when given");
  }
  if (cfg.initial_velocities && cfg.initial_velocities->size() != n) {
    problems.push_back("initial_velocities: need exactly one (v, w) pair per follower when given");
  }
  if (cfg.estimator_gains.size() != 1 && cfg.estimator_gains.size() != n) {
    problems.push_back("estimator_gains: give one shared gain set or one per follower");
  }
  for (size_t i = 0; i < cfg.estimator_gains.size(); ++i) {
    std::string label = "estimator_gains";
    if (cfg.estimator_gains.size() > 1) label += "[" + std::to_string(i + 1) + "]";
    add(validate_estimator_gains(cfg.estimator_gains[i], label));
  }
  add(validate_kinematic_gains(cfg.kinematic_gains));
  add(validate_shunting(cfg.shunting));
  add(validate_sliding_gains(cfg.sliding_gains));
  add(validate_learner_gains(cfg.learner_gains));
  add(validate_params(cfg.robot_params));
  add(validate_disturbance(cfg.d1, "disturbances.d1"));
  add(validate_disturbance(cfg.d2, "disturbances.d2"));

  if (!(cfg.eps_c > 0.0)) problems.push_back("eps_c: must be positive");
  if (!(cfg.eps_speed > 0.0)) problems.push_back("eps_speed: must be positive");
  if (!(cfg.boundary_layer >= 0.0)) problems.push_back("boundary_layer: must be non-negative");
  if (cfg.gamma1 && !(*cfg.gamma1 >= 0.0)) problems.push_back("gamma1: must be non-negative");
  if (cfg.gamma2 && !(*cfg.gamma2 >= 0.0)) problems.push_back("gamma2: must be non-negative");

  if (cfg.horizon > 0.0) {
    const double min_speed = sampled_min_speed(cfg.trajectory, cfg.horizon, kTrajectorySamples);
    if (!(min_speed > cfg.eps_speed)) {
      std::ostringstream os;
      os << "trajectory: leader speed must stay above eps_speed=" << cfg.eps_speed
         << " over the whole horizon; sampled minimum is " << min_speed;
      problems.push_back(os.str());
    }
  }
  return problems;
}

SimState init_state(const ScenarioConfig& cfg) {
  const int n = cfg.topology.n;
  SimState state;
  state.robots.resize(static_cast<size_t>(n));
  state.prev_cmd.resize(static_cast<size_t>(n));
  const LeaderReference l0 = leader_reference(cfg.trajectory, 0.0, cfg.eps_speed);
  for (int i = 0; i < n; ++i) {
    RobotState& r = state.robots[static_cast<size_t>(i)];
    if (cfg.initial_poses) {
      r.pose = (*cfg.initial_poses)[static_cast<size_t>(i)];
    } else {
      const Offset& off = cfg.offsets[static_cast<size_t>(i)];
      r.pose = {l0.pose.x - off.dx + cfg.perturbation[0],
                l0.pose.y - off.dy + cfg.perturbation[1],
                l0.pose.theta + cfg.perturbation[2]};
    }
    r.vel = cfg.initial_velocities ? (*cfg.initial_velocities)[static_cast<size_t>(i)]
                                   : BodyVelocity{0.0, 0.0};
    if (cfg.estimator_init == EstimatorInit::leader_truth) {
      r.est = {l0.pose, l0.v, l0.w};
    } else {
      r.est = {r.pose, 0.0, 0.0};
    }
    r.vs = 0.0;
    r.zhat = {r.vel.v, r.vel.w};
    r.chat = cfg.c_hat0;
    r.integral_ev = {0.0, 0.0};
  }
  return state;
}

StepInputs compute_step_inputs(const ScenarioConfig& cfg, const SimState& state) {
  const int n = cfg.topology.n;
  StepInputs out;
  out.leader = leader_reference(cfg.trajectory, state.t, cfg.eps_speed);
  out.robots.resize(static_cast<size_t>(n));

  std::vector<EstimatorState> est(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) est[static_cast<size_t>(i)] = state.robots[static_cast<size_t>(i)].est;

  const bool bio = variant_uses_bioinspired(cfg.variant);
  for (int i = 0; i < n; ++i) {
    const RobotState& r = state.robots[static_cast<size_t>(i)];
    RobotStepInputs& in = out.robots[static_cast<size_t>(i)];
    const EstimatorGains& g = cfg.gains_for(i);

    in.ce = consensus_pose_error(i, cfg.topology, est, out.leader.pose);
    in.cv = consensus_velocity_errors(i, cfg.topology, est, out.leader.v, out.leader.w);
    in.est_vel_rate = velocity_estimator_rate(in.cv, g);

    const InertialError ie =
        inertial_tracking_error(r.est.pose, r.pose, cfg.offsets[static_cast<size_t>(i)]);
    in.be = to_body_frame(ie, r.pose.theta);
    in.u = in.be.ex;

    in.cmd = bio ? bioinspired_velocity_command(r.est, in.be, r.vs, cfg.kinematic_gains)
                 : backstepping_velocity_command(r.est, in.be, cfg.kinematic_gains);
    in.cmd_rate =
        command_rate(state.prev_cmd[static_cast<size_t>(i)], in.cmd, cfg.dt, state.have_prev_cmd);

    const double vtilde = in.cmd.v - r.vel.v;
    const double wtilde = in.cmd.w - r.vel.w;
    try {
      in.tau = torque_command(r.chat, in.cmd_rate, vtilde, wtilde, cfg.sliding_gains,
                              cfg.boundary_layer, cfg.eps_c);
    } catch (const ParameterUnderflowError& e) {
      std::ostringstream os;
      os << e.what() << " (robot " << i + 1 << " at t=" << state.t << ")";
      throw ParameterUnderflowError(os.str());
    }
    in.tau_channels = {in.tau.left + in.tau.right, in.tau.left - in.tau.right};

    in.d1 = cfg.d1.value(state.t);
    in.d2 = cfg.d2.value(state.t);
  }
  return out;
}

namespace {

constexpr int kStates = 17;
// Layout: 0..2 pose, 3..4 body velocity, 5..7 estimated leader pose,
// 8..9 estimated leader velocity, 10 shunting, 11..12 velocity observer,
// 13..14 parameter estimates, 15..16 error integral.

void pack(const RobotState& r, double* y) {
  y[0] = r.pose.x;
  y[1] = r.pose.y;
  y[2] = r.pose.theta;
  y[3] = r.vel.v;
  y[4] = r.vel.w;
  y[5] = r.est.pose.x;
  y[6] = r.est.pose.y;
  y[7] = r.est.pose.theta;
  y[8] = r.est.v;
  y[9] = r.est.w;
  y[10] = r.vs;
  y[11] = r.zhat.v;
  y[12] = r.zhat.w;
  y[13] = r.chat.a_hat;
  y[14] = r.chat.b_hat;
  y[15] = r.integral_ev.v;
  y[16] = r.integral_ev.w;
}

void unpack(const double* y, RobotState& r) {
  r.pose = {y[0], y[1], y[2]};
  r.vel = {y[3], y[4]};
  r.est = {{y[5], y[6], y[7]}, y[8], y[9]};
  r.vs = y[10];
  r.zhat = {y[11], y[12]};
  r.chat = {y[13], y[14]};
  r.integral_ev = {y[15], y[16]};
}

// Continuous-state rates with the step inputs (consensus errors, torques,
// shunting input, estimator velocity rate) held constant. Disturbances are
// the one time-varying exogenous input and are evaluated at the substage time.
void deriv(const ScenarioConfig& cfg, const RobotStepInputs& in, const EstimatorGains& g,
           bool learning, double t, const double* y, double* dy) {
  const Pose pose{y[0], y[1], y[2]};
  const BodyVelocity vel{y[3], y[4]};
  const PoseRate body = unicycle_rate(pose, vel);
  dy[0] = body.dx;
  dy[1] = body.dy;
  dy[2] = body.dtheta;

  const BodyAccel acc =
      reduced_dynamics_rate(cfg.robot_params, in.tau, cfg.d1.value(t), cfg.d2.value(t));
  dy[3] = acc.dv;
  dy[4] = acc.dw;

  const EstimatorState est{{y[5], y[6], y[7]}, y[8], y[9]};
  const PoseRate est_rate = pose_estimator_rate(est, in.ce, g);
  dy[5] = est_rate.dx;
  dy[6] = est_rate.dy;
  dy[7] = est_rate.dtheta;
  dy[8] = in.est_vel_rate.dv;
  dy[9] = in.est_vel_rate.dw;

  dy[10] = shunting_rate(cfg.shunting, y[10], in.u);

  if (learning) {
    const ChannelPair ev{y[11] - y[3], y[12] - y[4]};
    const ChannelPair integral{y[15], y[16]};
    const ChannelPair s = sliding_surface(cfg.learner_gains, ev, integral);
    const ParamEstimate chat{y[13], y[14]};
    const ChannelPair dz = observer_rate(in.tau_channels, chat, cfg.learner_gains, ev, s);
    const ChannelPair dc = adaptation_rate(in.tau_channels, cfg.learner_gains, s);
    dy[11] = dz.v;
    dy[12] = dz.w;
    dy[13] = dc.v;
    dy[14] = dc.w;
    dy[15] = ev.v;
    dy[16] = ev.w;
  } else {
    for (int k = 11; k < kStates; ++k) dy[k] = 0.0;
  }
}

void integrate(const ScenarioConfig& cfg, SimState& state, const StepInputs& inputs) {
  const double dt = cfg.dt;
  const double t = state.t;
  const bool learning = variant_uses_learning(cfg.variant);
  const int n = cfg.topology.n;
  for (int i = 0; i < n; ++i) {
    RobotState& r = state.robots[static_cast<size_t>(i)];
    const RobotStepInputs& in = inputs.robots[static_cast<size_t>(i)];
    const EstimatorGains& g = cfg.gains_for(i);
    double y0[kStates], k1[kStates], k2[kStates], k3[kStates], k4[kStates], yt[kStates];
    pack(r, y0);
    deriv(cfg, in, g, learning, t, y0, k1);
    for (int s = 0; s < kStates; ++s) yt[s] = y0[s] + 0.5 * dt * k1[s];
    deriv(cfg, in, g, learning, t + 0.5 * dt, yt, k2);
    for (int s = 0; s < kStates; ++s) yt[s] = y0[s] + 0.5 * dt * k2[s];
    deriv(cfg, in, g, learning, t + 0.5 * dt, yt, k3);
    for (int s = 0; s < kStates; ++s) yt[s] = y0[s] + dt * k3[s];
    deriv(cfg, in, g, learning, t + dt, yt, k4);
    for (int s = 0; s < kStates; ++s) {
      y0[s] += dt / 6.0 * (k1[s] + 2.0 * k2[s] + 2.0 * k3[s] + k4[s]);
    }
    unpack(y0, r);
    state.prev_cmd[static_cast<size_t>(i)] = in.cmd;
  }
  state.have_prev_cmd = true;
  state.step_index += 1;
  state.t = static_cast<double>(state.step_index) * dt;
}

bool robot_state_finite(const RobotState& r) {
  const double parts[] = {r.pose.x,     r.pose.y,     r.pose.theta, r.vel.v,
                          r.vel.w,      r.est.pose.x, r.est.pose.y, r.est.pose.theta,
                          r.est.v,      r.est.w,      r.vs,         r.zhat.v,
                          r.zhat.w,     r.chat.a_hat, r.chat.b_hat, r.integral_ev.v,
                          r.integral_ev.w};
  for (double p : parts) {
    if (!std::isfinite(p)) return false;
  }
  return true;
}

TraceRow make_row(double t, int i, const RobotState& r, const RobotStepInputs& in) {
  TraceRow row;
  row.t = t;
  row.robot_id = i + 1;
  row.x = r.pose.x;
  row.y = r.pose.y;
  row.theta = r.pose.theta;
  row.v = r.vel.v;
  row.w = r.vel.w;
  row.est_x = r.est.pose.x;
  row.est_y = r.est.pose.y;
  row.est_theta = r.est.pose.theta;
  row.est_v = r.est.v;
  row.est_w = r.est.w;
  row.ex_b = in.be.ex;
  row.ey_b = in.be.ey;
  row.eth = in.be.etheta;
  row.v_cmd = in.cmd.v;
  row.w_cmd = in.cmd.w;
  row.tau_l = in.tau.left;
  row.tau_r = in.tau.right;
  row.a_hat = r.chat.a_hat;
  row.b_hat = r.chat.b_hat;
  row.vs = r.vs;
  row.d1 = in.d1;
  row.d2 = in.d2;
  return row;
}

}  // namespace

void step(const ScenarioConfig& cfg, SimState& state) {
  const StepInputs inputs = compute_step_inputs(cfg, state);
  integrate(cfg, state, inputs);
}

RunResult run(const ScenarioConfig& cfg) {
  {
    std::vector<std::string> problems = validate_config(cfg);
    if (!problems.empty()) throw ConfigError(std::move(problems));
  }
  const int n = cfg.topology.n;
  const long steps = step_count(cfg);
  const double log_interval = cfg.dt * static_cast<double>(cfg.decimation);

  RunResult res;
  res.variant = cfg.variant;
  res.n = n;
  res.dt = cfg.dt;
  res.horizon = cfg.horizon;
  res.decimation = cfg.decimation;
  res.steps = steps;

  const double g1 = cfg.gamma1 ? *cfg.gamma1
                               : sampled_max_linear_accel(cfg.trajectory, cfg.horizon,
                                                          kTrajectorySamples);
  const double g2 = cfg.gamma2 ? *cfg.gamma2
                               : sampled_max_angular_accel(cfg.trajectory, cfg.horizon,
                                                           kTrajectorySamples);
  res.warnings = gain_sufficiency_warning(cfg.estimator_gains, g1, g2, n);

  res.metrics.resize(static_cast<size_t>(n));
  res.trace.reserve(static_cast<size_t>((steps / cfg.decimation + 2) * n));

  SimState state = init_state(cfg);
  for (long k = 0;; ++k) {
    const StepInputs inputs = compute_step_inputs(cfg, state);
    const bool on_grid = (k % cfg.decimation == 0);
    if (on_grid || k == steps) {
      for (int i = 0; i < n; ++i) {
        const RobotState& r = state.robots[static_cast<size_t>(i)];
        if (!robot_state_finite(r)) {
          std::ostringstream os;
          os << "simulation state became non-finite at t=" << state.t << " (robot " << i + 1
             << ")";
          throw SimulationError(os.str());
        }
        res.trace.push_back(make_row(state.t, i, r, inputs.robots[static_cast<size_t>(i)]));
      }
    }
    if (on_grid) {
      // Metrics integrate on the regular logging grid only.
      for (int i = 0; i < n; ++i) {
        const RobotState& r = state.robots[static_cast<size_t>(i)];
        const RobotStepInputs& in = inputs.robots[static_cast<size_t>(i)];
        RobotMetrics& m = res.metrics[static_cast<size_t>(i)];
        m.total_velocity_error +=
            (std::abs(in.cmd.v - r.vel.v) + std::abs(in.cmd.w - r.vel.w)) * log_interval;
        m.max_abs_v_cmd = std::max(m.max_abs_v_cmd, std::abs(in.cmd.v));
        if (k == 0) m.initial_abs_v_cmd = std::abs(in.cmd.v);
      }
    }
    if (k == steps) break;
    integrate(cfg, state, inputs);
  }

  const LeaderReference lf = leader_reference(cfg.trajectory, state.t, cfg.eps_speed);
  for (int i = 0; i < n; ++i) {
    const RobotState& r = state.robots[static_cast<size_t>(i)];
    RobotMetrics& m = res.metrics[static_cast<size_t>(i)];
    const double pex = r.est.pose.x - lf.pose.x;
    const double pey = r.est.pose.y - lf.pose.y;
    const double pet = wrap_angle(r.est.pose.theta - lf.pose.theta);
    m.final_est_pose_error = std::sqrt(pex * pex + pey * pey + pet * pet);
    m.final_est_vel_error = std::hypot(r.est.v - lf.v, r.est.w - lf.w);
    m.final_a_hat_error = std::abs(r.chat.a_hat - cfg.robot_params.a);
    m.final_b_hat_error = std::abs(r.chat.b_hat - cfg.robot_params.b);
    const Offset& off = cfg.offsets[static_cast<size_t>(i)];
    m.final_formation_error =
        std::hypot(lf.pose.x - off.dx - r.pose.x, lf.pose.y - off.dy - r.pose.y);
  }
  return res;
}

CompareResult compare(const ScenarioConfig& cfg) {
  CompareResult res;
  res.runs.reserve(kAllVariants.size());
  for (Variant v : kAllVariants) {
    ScenarioConfig c = cfg;
    c.variant = v;
    res.runs.push_back(run(c));
  }
  return res;
}

}  // namespace formctl
