#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "formctl/estimator.hpp"
#include "test_util.hpp"

using namespace formctl;
using testutil::make_topology;

namespace {

std::vector<EstimatorState> random_states(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  std::vector<EstimatorState> states(static_cast<size_t>(n));
  for (auto& s : states) {
    s.pose = {dist(rng), dist(rng), dist(rng)};
    s.v = dist(rng);
    s.w = dist(rng);
  }
  return states;
}

}  // namespace

TEST_CASE("consensus pose error with leader-only access") {
  const Topology topo = make_topology(1, {}, {1});
  std::vector<EstimatorState> est(1);
  est[0].pose = {2.0, 1.0, 0.3};
  const Pose leader{1.0, 1.0, 0.1};
  const ConsensusPoseError e = consensus_pose_error(0, topo, est, leader);
  CHECK(e.x == doctest::Approx(1.0));
  CHECK(e.y == doctest::Approx(0.0));
  CHECK(e.theta == doctest::Approx(0.2));
}

TEST_CASE("consensus pose error vanishes at agreement without leader access") {
  const Topology topo = make_topology(3, {{1, 2}, {2, 3}}, {0, 1, 0});
  std::vector<EstimatorState> est(3);
  for (auto& s : est) s.pose = {1.5, -2.0, 0.7};
  const ConsensusPoseError e = consensus_pose_error(0, topo, est, {0, 0, 0});
  CHECK(e.x == 0.0);
  CHECK(e.y == 0.0);
  CHECK(e.theta == 0.0);
}

TEST_CASE("consensus pose error over a single edge") {
  const Topology topo = make_topology(2, {{1, 2}}, {0, 1});
  std::vector<EstimatorState> est(2);
  est[0].pose = {1.0, 0.0, 0.0};
  est[1].pose = {0.0, 0.0, 0.0};
  const ConsensusPoseError e = consensus_pose_error(0, topo, est, {9, 9, 9});
  CHECK(e.x == 1.0);
  CHECK(e.y == 0.0);
  CHECK(e.theta == 0.0);
}

TEST_CASE("pose estimator rate") {
  const EstimatorGains g;  // kx = ky = ktheta = 15

  EstimatorState rest;
  const PoseRate zero = pose_estimator_rate(rest, {0, 0, 0}, g);
  CHECK(zero.dx == 0.0);
  CHECK(zero.dy == 0.0);
  CHECK(zero.dtheta == 0.0);

  EstimatorState moving;
  moving.v = 1.0;
  moving.w = 0.3;
  const PoseRate dead_reckon = pose_estimator_rate(moving, {0, 0, 0}, g);
  CHECK(dead_reckon.dx == 1.0);
  CHECK(dead_reckon.dy == 0.0);
  CHECK(dead_reckon.dtheta == 0.3);

  const PoseRate corrected = pose_estimator_rate(rest, {1, 0, 0}, g);
  CHECK(corrected.dx == -15.0);
  CHECK(corrected.dy == 0.0);
  CHECK(corrected.dtheta == 0.0);
}

TEST_CASE("consensus velocity errors") {
  const Topology leader_only = make_topology(1, {}, {1});
  std::vector<EstimatorState> est(1);
  est[0].v = 1.5;
  est[0].w = 0.0;
  CHECK(consensus_velocity_errors(0, leader_only, est, 1.0, 0.0).ev == doctest::Approx(0.5));

  const Topology chain = make_topology(3, {{1, 2}, {2, 3}}, {0, 1, 0});
  std::vector<EstimatorState> agree(3);
  for (auto& s : agree) {
    s.v = 0.7;
    s.w = -0.2;
  }
  const ConsensusVelocityError none = consensus_velocity_errors(0, chain, agree, 9.0, 9.0);
  CHECK(none.ev == 0.0);
  CHECK(none.ew == 0.0);

  // Two neighbors, differences +0.2 and -0.2, no leader link: they cancel.
  const Topology middle = make_topology(3, {{1, 2}, {1, 3}}, {0, 1, 1});
  std::vector<EstimatorState> split(3);
  split[0].v = 1.0;
  split[1].v = 0.8;
  split[2].v = 1.2;
  CHECK(consensus_velocity_errors(0, middle, split, 9.0, 9.0).ev == doctest::Approx(0.0));
}

TEST_CASE("velocity estimator rate uses sgn(0) = 0 and the demo gains") {
  const EstimatorGains g;  // ka1 = ka2 = 25, kb1 = kb2 = 1
  CHECK(velocity_estimator_rate({0.0, 0.0}, g).dv == 0.0);
  CHECK(velocity_estimator_rate({0.0, 0.0}, g).dw == 0.0);
  CHECK(velocity_estimator_rate({0.5, 0.0}, g).dv == doctest::Approx(-25.5));
  CHECK(velocity_estimator_rate({0.0, -0.5}, g).dw == doctest::Approx(25.5));
}

TEST_CASE("velocity estimator rate is odd") {
  const EstimatorGains g;
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    const ConsensusVelocityError e{dist(rng), dist(rng)};
    const ConsensusVelocityError neg{-e.ev, -e.ew};
    const BodyAccel r = velocity_estimator_rate(e, g);
    const BodyAccel rn = velocity_estimator_rate(neg, g);
    CHECK(r.dv == -rn.dv);
    CHECK(r.dw == -rn.dw);
  }
}

TEST_CASE("gain sufficiency warning thresholds") {
  const std::vector<EstimatorGains> gains = {EstimatorGains{}};  // ka1 = 25
  CHECK(gain_sufficiency_warning(gains, 0.5, 0.5, 3).empty());

  std::vector<EstimatorGains> weak = gains;
  weak[0].ka1 = 0.1;
  CHECK(gain_sufficiency_warning(weak, 1.0, 0.0, 4).size() == 1);

  CHECK(gain_sufficiency_warning(weak, 0.0, 0.0, 4).empty());
}

TEST_CASE("information locality: non-neighbor states never matter") {
  const Topology topo = make_topology(4, {{1, 2}, {2, 3}, {3, 4}}, {1, 0, 0, 1});
  std::mt19937 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<EstimatorState> est = random_states(4, rng);
    const Pose leader{0.5, -0.5, 0.1};
    // Robot 0 neighbors only robot 1; robots 2 and 3 are invisible to it.
    const ConsensusPoseError before_p = consensus_pose_error(0, topo, est, leader);
    const ConsensusVelocityError before_v = consensus_velocity_errors(0, topo, est, 1.0, 0.2);
    est[2].pose.x += 100.0;
    est[3].v -= 42.0;
    const ConsensusPoseError after_p = consensus_pose_error(0, topo, est, leader);
    const ConsensusVelocityError after_v = consensus_velocity_errors(0, topo, est, 1.0, 0.2);
    CHECK(before_p.x == after_p.x);
    CHECK(before_p.y == after_p.y);
    CHECK(before_p.theta == after_p.theta);
    CHECK(before_v.ev == after_v.ev);
    CHECK(before_v.ew == after_v.ew);
  }
}

TEST_CASE("stacked consensus velocity errors equal H times the estimate errors") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const Topology topo = testutil::random_topology(rng);
    const std::vector<EstimatorState> est = random_states(topo.n, rng);
    const double leader_v = 1.3, leader_w = -0.4;
    Eigen::VectorXd e_alpha(topo.n), e_beta(topo.n), ev(topo.n), ew(topo.n);
    for (int i = 0; i < topo.n; ++i) {
      e_alpha(i) = est[static_cast<size_t>(i)].v - leader_v;
      e_beta(i) = est[static_cast<size_t>(i)].w - leader_w;
      const ConsensusVelocityError e = consensus_velocity_errors(i, topo, est, leader_v, leader_w);
      ev(i) = e.ev;
      ew(i) = e.ew;
    }
    const Eigen::MatrixXd h = h_matrix(topo);
    CHECK(((h * e_alpha) - ev).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(((h * e_beta) - ew).cwiseAbs().maxCoeff() < 1e-12);
  }
}
