#pragma once

#include <random>

#include "formctl/graph.hpp"

namespace formctl::testutil {

inline Topology make_topology(int n, std::initializer_list<std::pair<int, int>> edges,
                              std::initializer_list<double> leader_links) {
  Topology topo;
  topo.n = n;
  topo.adjacency = Eigen::MatrixXd::Zero(n, n);
  topo.leader_links = Eigen::VectorXd::Zero(n);
  for (const auto& [a, b] : edges) {
    topo.adjacency(a - 1, b - 1) = 1.0;
    topo.adjacency(b - 1, a - 1) = 1.0;
  }
  int i = 0;
  for (double l : leader_links) topo.leader_links(i++) = l;
  return topo;
}

// Random topology that satisfies every validation rule: a spanning tree over
// the followers plus extra edges keeps the follower graph connected, and at
// least one leader link is forced. Deterministic for a given generator state.
inline Topology random_topology(std::mt19937& rng, int max_n = 12) {
  const int n = std::uniform_int_distribution<int>(1, max_n)(rng);
  Topology topo;
  topo.n = n;
  topo.adjacency = Eigen::MatrixXd::Zero(n, n);
  topo.leader_links = Eigen::VectorXd::Zero(n);
  for (int i = 1; i < n; ++i) {
    const int j = std::uniform_int_distribution<int>(0, i - 1)(rng);
    topo.adjacency(i, j) = 1.0;
    topo.adjacency(j, i) = 1.0;
  }
  std::bernoulli_distribution extra(0.3);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (extra(rng)) {
        topo.adjacency(i, j) = 1.0;
        topo.adjacency(j, i) = 1.0;
      }
    }
  }
  std::bernoulli_distribution link(0.3);
  for (int i = 0; i < n; ++i) {
    if (link(rng)) topo.leader_links(i) = 1.0;
  }
  if (topo.leader_links.sum() == 0.0) {
    topo.leader_links(std::uniform_int_distribution<int>(0, n - 1)(rng)) = 1.0;
  }
  return topo;
}

}  // namespace formctl::testutil
