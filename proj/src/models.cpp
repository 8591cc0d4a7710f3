#include "formctl/models.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace formctl {

std::vector<std::string> validate_params(const RobotParams& p) {
  std::vector<std::string> problems;
  if (!(p.a > 0.0)) problems.push_back("robot_params: a must be positive");
  if (!(p.b > 0.0)) problems.push_back("robot_params: b must be positive");
  return problems;
}

PoseRate unicycle_rate(const Pose& pose, const BodyVelocity& vel) {
  return {vel.v * std::cos(pose.theta), vel.v * std::sin(pose.theta), vel.w};
}

BodyAccel reduced_dynamics_rate(const RobotParams& p, const WheelTorques& tau,
                                double d1, double d2) {
  return {(tau.left + tau.right) * p.a + d1, (tau.left - tau.right) * p.b + d2};
}

double DisturbanceSpec::value(double t) const {
  if (kind == DisturbanceKind::constant) return amplitude;
  return amplitude * std::cos(omega * t + phase);
}

std::vector<std::string> validate_disturbance(const DisturbanceSpec& d, const std::string& label) {
  std::vector<std::string> problems;
  if (!(d.amplitude >= 0.0)) problems.push_back(label + ": amplitude must be non-negative");
  if (!std::isfinite(d.amplitude) || !std::isfinite(d.omega) || !std::isfinite(d.phase)) {
    problems.push_back(label + ": fields must be finite");
  }
  return problems;
}

double AxisPoly::pos(double t) const { return c0 + c1 * t + c2 * std::cos(c3 * t + c4); }
double AxisPoly::vel(double t) const { return c1 - c2 * c3 * std::sin(c3 * t + c4); }
double AxisPoly::acc(double t) const { return -c2 * c3 * c3 * std::cos(c3 * t + c4); }
double AxisPoly::jerk(double t) const { return c2 * c3 * c3 * c3 * std::sin(c3 * t + c4); }

LeaderReference leader_reference(const LeaderTrajectory& traj, double t, double eps_speed) {
  const double vx = traj.x.vel(t);
  const double vy = traj.y.vel(t);
  const double speed = std::hypot(vx, vy);
  if (!(speed > eps_speed)) {
    std::ostringstream os;
    os << "leader trajectory speed " << speed << " at t=" << t
       << " is at or below the guard threshold " << eps_speed
       << "; the leader must keep moving";
    throw TrajectoryError(os.str());
  }
  const double ax = traj.x.acc(t);
  const double ay = traj.y.acc(t);
  LeaderReference ref;
  ref.pose.x = traj.x.pos(t);
  ref.pose.y = traj.y.pos(t);
  ref.pose.theta = std::atan2(vy, vx);
  ref.v = speed;
  ref.w = (vx * ay - vy * ax) / (speed * speed);
  return ref;
}

namespace {

struct AxisState {
  double v, a, j;
};

double linear_accel_at(const AxisState& x, const AxisState& y) {
  const double v2 = x.v * x.v + y.v * y.v;
  if (v2 == 0.0) return 0.0;
  return (x.v * x.a + y.v * y.a) / std::sqrt(v2);
}

double angular_accel_at(const AxisState& x, const AxisState& y) {
  const double v2 = x.v * x.v + y.v * y.v;
  if (v2 == 0.0) return 0.0;
  const double num = x.v * y.a - y.v * x.a;
  const double dnum = x.v * y.j - y.v * x.j;
  const double dv2 = 2.0 * (x.v * x.a + y.v * y.a);
  return (dnum * v2 - num * dv2) / (v2 * v2);
}

template <typename F>
double sampled_max(const LeaderTrajectory& traj, double horizon, int samples, F&& f) {
  double best = 0.0;
  for (int k = 0; k <= samples; ++k) {
    const double t = horizon * static_cast<double>(k) / static_cast<double>(samples);
    const AxisState x{traj.x.vel(t), traj.x.acc(t), traj.x.jerk(t)};
    const AxisState y{traj.y.vel(t), traj.y.acc(t), traj.y.jerk(t)};
    best = std::max(best, std::abs(f(x, y)));
  }
  return best;
}

}  // namespace

double sampled_max_linear_accel(const LeaderTrajectory& traj, double horizon, int samples) {
  return sampled_max(traj, horizon, samples, linear_accel_at);
}

double sampled_max_angular_accel(const LeaderTrajectory& traj, double horizon, int samples) {
  return sampled_max(traj, horizon, samples, angular_accel_at);
}

double sampled_min_speed(const LeaderTrajectory& traj, double horizon, int samples) {
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= samples; ++k) {
    const double t = horizon * static_cast<double>(k) / static_cast<double>(samples);
    worst = std::min(worst, std::hypot(traj.x.vel(t), traj.y.vel(t)));
  }
  return worst;
}

}  // namespace formctl
