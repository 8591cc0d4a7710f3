#pragma once

#include <string>
#include <vector>

#include "formctl/common.hpp"

namespace formctl {

// Lumped actuation gains of the reduced unicycle dynamics:
// dv/dt = (tau_l + tau_r) * a + d1,  dw/dt = (tau_l - tau_r) * b + d2.
struct RobotParams {
  double a = 0.4;
  double b = 10.0;
};

std::vector<std::string> validate_params(const RobotParams& p);

struct WheelTorques {
  double left = 0.0;
  double right = 0.0;
};

struct BodyAccel {
  double dv = 0.0;
  double dw = 0.0;
};

// Kinematics: dx = v cos(theta), dy = v sin(theta), dtheta = w.
PoseRate unicycle_rate(const Pose& pose, const BodyVelocity& vel);

// Reduced dynamics; affine in the torques, disturbances enter additively.
BodyAccel reduced_dynamics_rate(const RobotParams& p, const WheelTorques& tau,
                                double d1, double d2);

enum class DisturbanceKind { constant, sinusoid };

// constant: value(t) = amplitude. sinusoid: amplitude * cos(omega t + phase).
// Either way |value(t)| <= amplitude.
struct DisturbanceSpec {
  DisturbanceKind kind = DisturbanceKind::constant;
  double amplitude = 0.0;
  double omega = 0.0;
  double phase = 0.0;

  double value(double t) const;
};

std::vector<std::string> validate_disturbance(const DisturbanceSpec& d, const std::string& label);

// One trajectory axis: pos(t) = c0 + c1 t + c2 cos(c3 t + c4).
struct AxisPoly {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;

  double pos(double t) const;
  double vel(double t) const;
  double acc(double t) const;
  double jerk(double t) const;
};

struct LeaderTrajectory {
  AxisPoly x;
  AxisPoly y;
};

struct LeaderReference {
  Pose pose;
  double v = 0.0;
  double w = 0.0;
};

// Closed-form leader state at time t: heading from the velocity direction,
// angular rate from the curvature. Throws TrajectoryError when the planar
// speed is at or below eps_speed (the angular-rate denominator would blow up).
LeaderReference leader_reference(const LeaderTrajectory& traj, double t, double eps_speed);

// Sampled bounds used by the estimator gain sufficiency warning and by
// trajectory validation: maxima of |dv_r/dt| and |dw_r/dt|, and the minimum
// speed, over `samples + 1` uniform points spanning [0, horizon].
double sampled_max_linear_accel(const LeaderTrajectory& traj, double horizon, int samples);
double sampled_max_angular_accel(const LeaderTrajectory& traj, double horizon, int samples);
double sampled_min_speed(const LeaderTrajectory& traj, double horizon, int samples);

}  // namespace formctl
