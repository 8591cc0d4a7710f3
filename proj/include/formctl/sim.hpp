#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "formctl/common.hpp"
#include "formctl/dynamic.hpp"
#include "formctl/estimator.hpp"
#include "formctl/graph.hpp"
#include "formctl/kinematic.hpp"
#include "formctl/models.hpp"

namespace formctl {

enum class Variant { backstepping, bioinspired, backstepping_learning, bioinspired_learning };

constexpr std::array<Variant, 4> kAllVariants = {
    Variant::backstepping, Variant::bioinspired, Variant::backstepping_learning,
    Variant::bioinspired_learning};

bool variant_uses_bioinspired(Variant v);
bool variant_uses_learning(Variant v);
std::string variant_name(Variant v);
// Throws std::invalid_argument for unknown names.
Variant variant_from_name(const std::string& name);

// Where the leader-state estimators start: at the robot's own pose with zero
// velocities (the default; only local information), or at the exact leader
// state (a testing hook that removes estimation transients).
enum class EstimatorInit { own_pose, leader_truth };

// Full scenario description. Defaults reproduce the built-in demo scenario
// except for `decimation` (see demo_config).
struct ScenarioConfig {
  Variant variant = Variant::bioinspired_learning;
  double dt = 2e-5;
  double horizon = 20.0;
  int decimation = 10;

  Topology topology;             // default set by the constructor: 3 followers, triangle
  std::vector<Offset> offsets;   // formation slots relative to the leader
  std::array<double, 3> perturbation = {-2.0, 1.0, 0.6};
  std::optional<std::vector<Pose>> initial_poses;
  std::optional<std::vector<BodyVelocity>> initial_velocities;
  EstimatorInit estimator_init = EstimatorInit::own_pose;

  std::vector<EstimatorGains> estimator_gains = {EstimatorGains{}};  // 1 shared or n per-robot
  KinematicGains kinematic_gains;
  ShuntingParams shunting;
  SlidingGains sliding_gains;
  LearnerGains learner_gains;
  ParamEstimate c_hat0;
  RobotParams robot_params;
  DisturbanceSpec d1;
  DisturbanceSpec d2;
  LeaderTrajectory trajectory;

  double eps_c = 1e-3;
  double eps_speed = 1e-6;
  double boundary_layer = 0.0;
  std::optional<double> gamma1;  // default: sampled from the trajectory
  std::optional<double> gamma2;

  ScenarioConfig();

  const EstimatorGains& gains_for(int i) const;
};

// The demo scenario: three followers in a triangle behind a leader on a
// gently waving line, constant + sinusoidal disturbances, deliberately wrong
// initial parameter estimates. Identical to ScenarioConfig defaults except
// decimation = 50 (1 ms log grid at the default dt).
ScenarioConfig demo_config();

// All validation problems for the scenario; empty means runnable.
std::vector<std::string> validate_config(const ScenarioConfig& cfg);

struct RobotState {
  Pose pose;
  BodyVelocity vel;
  EstimatorState est;
  double vs = 0.0;
  ChannelPair zhat;
  ParamEstimate chat;
  ChannelPair integral_ev;
};

struct SimState {
  double t = 0.0;
  long step_index = 0;
  std::vector<RobotState> robots;
  std::vector<VelocityCommand> prev_cmd;
  bool have_prev_cmd = false;
};

// Everything computed once at the start of a step and held constant while
// the continuous states advance: consensus errors, estimator velocity rate,
// tracking errors, commands and their backward-difference rates, torques.
struct RobotStepInputs {
  ConsensusPoseError ce;
  ConsensusVelocityError cv;
  BodyAccel est_vel_rate;
  BodyError be;
  VelocityCommand cmd;
  CommandRate cmd_rate;
  WheelTorques tau;
  ChannelPair tau_channels;  // (tau_l + tau_r, tau_l - tau_r)
  double u = 0.0;            // shunting input
  double d1 = 0.0;           // disturbances at the step start (for logging)
  double d2 = 0.0;
};

struct StepInputs {
  LeaderReference leader;
  std::vector<RobotStepInputs> robots;
};

SimState init_state(const ScenarioConfig& cfg);

// The per-step quantities at the state's current time, without advancing.
StepInputs compute_step_inputs(const ScenarioConfig& cfg, const SimState& state);

// Advance one dt: classical 4th-order integration of all continuous states
// with the step inputs held constant (disturbances are still evaluated at
// the substage times).
void step(const ScenarioConfig& cfg, SimState& state);

// One logged sample of one robot; column order matches the trace CSV.
struct TraceRow {
  double t = 0.0;
  int robot_id = 0;  // 1-based
  double x = 0.0, y = 0.0, theta = 0.0;
  double v = 0.0, w = 0.0;
  double est_x = 0.0, est_y = 0.0, est_theta = 0.0, est_v = 0.0, est_w = 0.0;
  double ex_b = 0.0, ey_b = 0.0, eth = 0.0;
  double v_cmd = 0.0, w_cmd = 0.0;
  double tau_l = 0.0, tau_r = 0.0;
  double a_hat = 0.0, b_hat = 0.0;
  double vs = 0.0;
  double d1 = 0.0, d2 = 0.0;
};

struct RobotMetrics {
  double total_velocity_error = 0.0;  // sum of (|v_cmd-v|+|w_cmd-w|) * log interval
  double max_abs_v_cmd = 0.0;
  double initial_abs_v_cmd = 0.0;
  double final_est_pose_error = 0.0;  // vs the true leader pose, heading wrapped
  double final_est_vel_error = 0.0;
  double final_a_hat_error = 0.0;
  double final_b_hat_error = 0.0;
  double final_formation_error = 0.0;  // planar distance to the formation slot
};

struct RunResult {
  Variant variant = Variant::bioinspired_learning;
  int n = 0;
  double dt = 0.0;
  double horizon = 0.0;
  int decimation = 0;
  long steps = 0;
  std::vector<TraceRow> trace;  // robot-major within each logged instant
  std::vector<RobotMetrics> metrics;
  std::vector<std::string> warnings;
};

// Validate, simulate, log, and summarize one scenario.
// Throws ConfigError on validation problems and the runtime error types on
// mid-run guard trips.
RunResult run(const ScenarioConfig& cfg);

// The same scenario under all four controller variants, in kAllVariants order.
struct CompareResult {
  std::vector<RunResult> runs;
};

CompareResult compare(const ScenarioConfig& cfg);

}  // namespace formctl
