#include "formctl/kinematic.hpp"

#include <cmath>

namespace formctl {

std::vector<std::string> validate_kinematic_gains(const KinematicGains& g) {
  std::vector<std::string> problems;
  const auto check = [&](double v, const char* name) {
    if (!(v > 0.0)) problems.push_back(std::string("kinematic_gains: ") + name + " must be a positive design constant");
  };
  check(g.k1, "k1");
  check(g.k2, "k2");
  check(g.k3, "k3");
  return problems;
}

std::vector<std::string> validate_shunting(const ShuntingParams& p) {
  std::vector<std::string> problems;
  if (!(p.A > 0.0)) problems.push_back("shunting: A must be a positive design constant");
  if (!(p.B > 0.0)) problems.push_back("shunting: B must be a positive design constant");
  if (!(p.D > 0.0)) problems.push_back("shunting: D must be a positive design constant");
  if (p.B != p.D) problems.push_back("shunting: B and D must be equal (symmetric output bounds)");
  return problems;
}

InertialError inertial_tracking_error(const Pose& est_pose, const Pose& pose, const Offset& offset) {
  return {est_pose.x - pose.x - offset.dx, est_pose.y - pose.y - offset.dy,
          est_pose.theta - pose.theta};
}

BodyError to_body_frame(const InertialError& err, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c * err.ex + s * err.ey, -s * err.ex + c * err.ey, err.etheta};
}

double shunting_rate(const ShuntingParams& p, double vs, double u) {
  const double excite = u > 0.0 ? u : 0.0;
  const double inhibit = u < 0.0 ? -u : 0.0;
  return -p.A * vs + (p.B - vs) * excite - (p.D + vs) * inhibit;
}

double shunting_equilibrium(const ShuntingParams& p, double u) {
  return p.B * u / (p.A + std::abs(u));
}

namespace {
double angular_command(const EstimatorState& est, const BodyError& be, const KinematicGains& g) {
  return est.w + g.k2 * est.v * be.ey + g.k3 * est.v * std::sin(be.etheta);
}
}  // namespace

VelocityCommand bioinspired_velocity_command(const EstimatorState& est, const BodyError& be,
                                             double vs, const KinematicGains& g) {
  return {est.v * std::cos(be.etheta) + g.k1 * vs, angular_command(est, be, g)};
}

VelocityCommand backstepping_velocity_command(const EstimatorState& est, const BodyError& be,
                                              const KinematicGains& g) {
  return {est.v * std::cos(be.etheta) + g.k1 * be.ex, angular_command(est, be, g)};
}

BodyErrorRate error_dynamics_oracle(const BodyError& be, const BodyVelocity& actual,
                                    const EstimatorState& est, const PoseRate& est_pose_rate,
                                    double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  // Residual between the rate the pose estimate actually moves with and the
  // ideal unicycle rate at the estimated velocities; zero for a converged
  // estimator, nonzero during consensus transients.
  const double rx = est_pose_rate.dx - est.v * std::cos(est.pose.theta);
  const double ry = est_pose_rate.dy - est.v * std::sin(est.pose.theta);
  const double omega_x = c * rx + s * ry;
  const double omega_y = -s * rx + c * ry;
  const double omega_theta = est_pose_rate.dtheta - est.w;
  return {actual.w * be.ey - actual.v + est.v * std::cos(be.etheta) + omega_x,
          -actual.w * be.ex + est.v * std::sin(be.etheta) + omega_y,
          est.w - actual.w + omega_theta};
}

}  // namespace formctl
