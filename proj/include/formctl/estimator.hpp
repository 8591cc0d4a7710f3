#pragma once

#include <string>
#include <vector>

#include "formctl/common.hpp"
#include "formctl/graph.hpp"
#include "formctl/models.hpp"

namespace formctl {

// Distributed estimator gains. kx/ky/ktheta drive the pose estimator,
// ka1/kb1 (linear channel) and ka2/kb2 (angular channel) drive the velocity
// estimator. All must be positive.
struct EstimatorGains {
  double kx = 15.0;
  double ky = 15.0;
  double ktheta = 15.0;
  double ka1 = 25.0;
  double kb1 = 1.0;
  double ka2 = 25.0;
  double kb2 = 1.0;
};

std::vector<std::string> validate_estimator_gains(const EstimatorGains& g, const std::string& label);

// Each robot estimates the leader's pose and body velocities from its
// neighbors' estimates plus (when linked) the leader itself.
struct EstimatorState {
  Pose pose;
  double v = 0.0;
  double w = 0.0;
};

// Graph-weighted disagreement of robot i's pose estimate:
// sum_j a_ij (own - neighbor) + leader_link * (own - leader).
struct ConsensusPoseError {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

// Same disagreement for the velocity estimates. Stacked over robots these
// equal H * (estimate - truth).
struct ConsensusVelocityError {
  double ev = 0.0;
  double ew = 0.0;
};

ConsensusPoseError consensus_pose_error(int i, const Topology& topo,
                                        const std::vector<EstimatorState>& est,
                                        const Pose& leader_pose);

ConsensusVelocityError consensus_velocity_errors(int i, const Topology& topo,
                                                 const std::vector<EstimatorState>& est,
                                                 double leader_v, double leader_w);

// Pose estimate propagates like a unicycle driven by the velocity estimates,
// corrected proportionally by the consensus error.
PoseRate pose_estimator_rate(const EstimatorState& est, const ConsensusPoseError& err,
                             const EstimatorGains& g);

// Velocity estimates use a signum term (finite-time) plus a linear term.
BodyAccel velocity_estimator_rate(const ConsensusVelocityError& err, const EstimatorGains& g);

// Warns when the signum gains cannot dominate the leader's acceleration:
// convergence needs min(ka1) > gamma1 * sqrt(n) and min(ka2) > gamma2 * sqrt(n),
// where gamma1/gamma2 bound |dv_r/dt| and |dw_r/dt|. A zero gamma never warns.
std::vector<std::string> gain_sufficiency_warning(const std::vector<EstimatorGains>& gains,
                                                  double gamma1, double gamma2, int n);

}  // namespace formctl
