#pragma once

#include <string>
#include <vector>

#include "formctl/common.hpp"
#include "formctl/estimator.hpp"

namespace formctl {

struct KinematicGains {
  double k1 = 2.0;
  double k2 = 3.0;
  double k3 = 4.0;
};

// Shunting neuron parameters: passive decay A, excitatory ceiling B,
// inhibitory floor D. The symmetric case B = D is required; the state then
// stays inside (-B, B) from any start inside and settles at B*u/(A+|u|)
// for constant input u.
struct ShuntingParams {
  double A = 2.0;
  double B = 2.0;
  double D = 2.0;
};

std::vector<std::string> validate_kinematic_gains(const KinematicGains& g);
std::vector<std::string> validate_shunting(const ShuntingParams& p);

struct Offset {
  double dx = 0.0;
  double dy = 0.0;
};

// Tracking error in the inertial frame: estimated leader pose minus own pose
// minus the formation offset. Heading error is the raw difference (every
// consumer is 2*pi periodic in it).
struct InertialError {
  double ex = 0.0;
  double ey = 0.0;
  double etheta = 0.0;
};

struct BodyError {
  double ex = 0.0;
  double ey = 0.0;
  double etheta = 0.0;
};

InertialError inertial_tracking_error(const Pose& est_pose, const Pose& pose, const Offset& offset);

// Rotate the planar error into the robot's body frame; preserves the norm.
BodyError to_body_frame(const InertialError& err, double theta);

double shunting_rate(const ShuntingParams& p, double vs, double u);
double shunting_equilibrium(const ShuntingParams& p, double u);

// Smooth-start command: the shunting state replaces the raw longitudinal
// error, so the command starts at exactly zero when the velocity estimate
// and shunting state start at zero.
VelocityCommand bioinspired_velocity_command(const EstimatorState& est, const BodyError& be,
                                             double vs, const KinematicGains& g);

// Classical command: proportional in the longitudinal error; jumps at t=0.
VelocityCommand backstepping_velocity_command(const EstimatorState& est, const BodyError& be,
                                              const KinematicGains& g);

struct BodyErrorRate {
  double dex = 0.0;
  double dey = 0.0;
  double detheta = 0.0;
};

// Exact time derivative of the body-frame tracking error given the robot's
// actual body velocities, the estimator state, and the rate the pose
// estimate is being driven with. Used to cross-check simulated traces by
// finite differences.
BodyErrorRate error_dynamics_oracle(const BodyError& be, const BodyVelocity& actual,
                                    const EstimatorState& est, const PoseRate& est_pose_rate,
                                    double theta);

}  // namespace formctl
