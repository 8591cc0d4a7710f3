#include "formctl/estimator.hpp"

#include <cmath>
#include <sstream>

namespace formctl {

std::vector<std::string> validate_estimator_gains(const EstimatorGains& g, const std::string& label) {
  std::vector<std::string> problems;
  const auto check = [&](double v, const char* name) {
    if (!(v > 0.0)) problems.push_back(label + ": " + name + " must be a positive design constant");
  };
  check(g.kx, "kx");
  check(g.ky, "ky");
  check(g.ktheta, "ktheta");
  check(g.ka1, "ka1");
  check(g.kb1, "kb1");
  check(g.ka2, "ka2");
  check(g.kb2, "kb2");
  return problems;
}

ConsensusPoseError consensus_pose_error(int i, const Topology& topo,
                                        const std::vector<EstimatorState>& est,
                                        const Pose& leader_pose) {
  ConsensusPoseError e;
  const EstimatorState& own = est[static_cast<size_t>(i)];
  for (int j = 0; j < topo.n; ++j) {
    const double a = topo.adjacency(i, j);
    if (a == 0.0) continue;
    const EstimatorState& other = est[static_cast<size_t>(j)];
    e.x += a * (own.pose.x - other.pose.x);
    e.y += a * (own.pose.y - other.pose.y);
    e.theta += a * (own.pose.theta - other.pose.theta);
  }
  const double air = topo.leader_links(i);
  if (air != 0.0) {
    e.x += air * (own.pose.x - leader_pose.x);
    e.y += air * (own.pose.y - leader_pose.y);
    e.theta += air * (own.pose.theta - leader_pose.theta);
  }
  return e;
}

ConsensusVelocityError consensus_velocity_errors(int i, const Topology& topo,
                                                 const std::vector<EstimatorState>& est,
                                                 double leader_v, double leader_w) {
  ConsensusVelocityError e;
  const EstimatorState& own = est[static_cast<size_t>(i)];
  for (int j = 0; j < topo.n; ++j) {
    const double a = topo.adjacency(i, j);
    if (a == 0.0) continue;
    const EstimatorState& other = est[static_cast<size_t>(j)];
    e.ev += a * (own.v - other.v);
    e.ew += a * (own.w - other.w);
  }
  const double air = topo.leader_links(i);
  if (air != 0.0) {
    e.ev += air * (own.v - leader_v);
    e.ew += air * (own.w - leader_w);
  }
  return e;
}

PoseRate pose_estimator_rate(const EstimatorState& est, const ConsensusPoseError& err,
                             const EstimatorGains& g) {
  return {est.v * std::cos(est.pose.theta) - g.kx * err.x,
          est.v * std::sin(est.pose.theta) - g.ky * err.y,
          est.w - g.ktheta * err.theta};
}

BodyAccel velocity_estimator_rate(const ConsensusVelocityError& err, const EstimatorGains& g) {
  return {-g.ka1 * sgn(err.ev) - g.kb1 * err.ev,
          -g.ka2 * sgn(err.ew) - g.kb2 * err.ew};
}

std::vector<std::string> gain_sufficiency_warning(const std::vector<EstimatorGains>& gains,
                                                  double gamma1, double gamma2, int n) {
  std::vector<std::string> warnings;
  if (gains.empty() || n < 1) return warnings;
  double min_ka1 = gains.front().ka1;
  double min_ka2 = gains.front().ka2;
  for (const auto& g : gains) {
    min_ka1 = std::min(min_ka1, g.ka1);
    min_ka2 = std::min(min_ka2, g.ka2);
  }
  const double root_n = std::sqrt(static_cast<double>(n));
  const auto warn = [&](const char* gain_name, double gain, const char* bound_name, double bound) {
    std::ostringstream os;
    os << "estimator gain " << gain_name << "=" << gain << " is below " << bound_name
       << "*sqrt(n)=" << bound * root_n
       << "; the velocity estimator may not dominate the leader's acceleration";
    warnings.push_back(os.str());
  };
  if (gamma1 > 0.0 && min_ka1 < gamma1 * root_n) warn("ka1", min_ka1, "gamma1", gamma1);
  if (gamma2 > 0.0 && min_ka2 < gamma2 * root_n) warn("ka2", min_ka2, "gamma2", gamma2);
  return warnings;
}

}  // namespace formctl
