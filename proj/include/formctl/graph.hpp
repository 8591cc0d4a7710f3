#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace formctl {

// Communication topology of the follower network. Followers are indexed
// 0..n-1 internally; configuration files and reports use 1-based ids.
// adjacency(i,j) = 1 when followers i and j exchange state (undirected),
// leader_links(i) = 1 when follower i receives the leader's state directly.
struct Topology {
  int n = 0;
  Eigen::MatrixXd adjacency;
  Eigen::VectorXd leader_links;

  std::vector<int> neighbors(int i) const;
};

// Returns a list of problems; empty means the topology is usable.
// Checks shapes, {0,1} entries, symmetry, zero diagonal, at least one
// leader link, and that every follower can be reached from the leader.
std::vector<std::string> validate_topology(const Topology& topo);

// Degree matrix minus adjacency; rows sum to zero.
Eigen::MatrixXd laplacian(const Topology& topo);

// Laplacian plus diag(leader_links); symmetric positive definite for any
// topology that passes validation.
Eigen::MatrixXd h_matrix(const Topology& topo);

// Smallest eigenvalue of a symmetric matrix. Throws std::invalid_argument
// when the input is not symmetric (within a fixed 1e-12 tolerance).
double min_symmetric_eigenvalue(const Eigen::MatrixXd& m);

}  // namespace formctl
