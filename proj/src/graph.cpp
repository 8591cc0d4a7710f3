#include "formctl/graph.hpp"

#include <cmath>
#include <queue>
#include <sstream>

namespace formctl {

namespace {

bool is_zero_or_one(double v) { return v == 0.0 || v == 1.0; }

// Breadth-first search over the undirected follower graph. Consensus needs
// the follower graph itself connected; leader access is a separate check.
bool follower_graph_connected(const Topology& topo) {
  std::vector<char> seen(static_cast<size_t>(topo.n), 0);
  std::queue<int> frontier;
  seen[0] = 1;
  frontier.push(0);
  while (!frontier.empty()) {
    const int i = frontier.front();
    frontier.pop();
    for (int j = 0; j < topo.n; ++j) {
      if (topo.adjacency(i, j) != 0.0 && !seen[static_cast<size_t>(j)]) {
        seen[static_cast<size_t>(j)] = 1;
        frontier.push(j);
      }
    }
  }
  for (char s : seen) {
    if (!s) return false;
  }
  return true;
}

}  // namespace

std::vector<int> Topology::neighbors(int i) const {
  std::vector<int> out;
  for (int j = 0; j < n; ++j) {
    if (adjacency(i, j) != 0.0) out.push_back(j);
  }
  return out;
}

std::vector<std::string> validate_topology(const Topology& topo) {
  std::vector<std::string> problems;
  if (topo.n < 1) {
    problems.push_back("topology: follower count must be at least 1");
    return problems;
  }
  if (topo.adjacency.rows() != topo.n || topo.adjacency.cols() != topo.n) {
    std::ostringstream os;
    os << "topology: adjacency must be " << topo.n << "x" << topo.n << ", got "
       << topo.adjacency.rows() << "x" << topo.adjacency.cols();
    problems.push_back(os.str());
    return problems;
  }
  if (topo.leader_links.size() != topo.n) {
    std::ostringstream os;
    os << "topology: leader_links must have " << topo.n << " entries, got "
       << topo.leader_links.size();
    problems.push_back(os.str());
    return problems;
  }
  bool entries_ok = true;
  for (int i = 0; i < topo.n && entries_ok; ++i) {
    for (int j = 0; j < topo.n; ++j) {
      if (!is_zero_or_one(topo.adjacency(i, j))) {
        problems.push_back("topology: adjacency entries must be 0 or 1 (weighted graphs are not supported)");
        entries_ok = false;
        break;
      }
    }
  }
  for (int i = 0; i < topo.n; ++i) {
    if (topo.adjacency(i, i) != 0.0) {
      problems.push_back("topology: adjacency diagonal must be zero (no self links)");
      break;
    }
  }
  if (!topo.adjacency.isApprox(topo.adjacency.transpose(), 0.0)) {
    problems.push_back("topology: adjacency must be symmetric (follower links are undirected)");
  }
  bool leader_entries_ok = true;
  for (int i = 0; i < topo.n; ++i) {
    if (!is_zero_or_one(topo.leader_links(i))) {
      problems.push_back("topology: leader_links entries must be 0 or 1");
      leader_entries_ok = false;
      break;
    }
  }
  if (leader_entries_ok && topo.leader_links.sum() == 0.0) {
    problems.push_back("topology: at least one follower must have a leader link");
  }
  if (entries_ok && !follower_graph_connected(topo)) {
    problems.push_back("topology: follower graph must be connected");
  }
  return problems;
}

Eigen::MatrixXd laplacian(const Topology& topo) {
  Eigen::MatrixXd l = -topo.adjacency;
  for (int i = 0; i < topo.n; ++i) l(i, i) = topo.adjacency.row(i).sum();
  return l;
}

Eigen::MatrixXd h_matrix(const Topology& topo) {
  Eigen::MatrixXd h = laplacian(topo);
  h.diagonal() += topo.leader_links;
  return h;
}

double min_symmetric_eigenvalue(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("min_symmetric_eigenvalue: matrix must be square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (((m - m.transpose()).cwiseAbs().maxCoeff()) > 1e-12 * scale) {
    throw std::invalid_argument("min_symmetric_eigenvalue: matrix must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace formctl
