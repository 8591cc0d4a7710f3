#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace formctl {

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

struct PoseRate {
  double dx = 0.0;
  double dy = 0.0;
  double dtheta = 0.0;
};

struct BodyVelocity {
  double v = 0.0;
  double w = 0.0;
};

struct VelocityCommand {
  double v = 0.0;
  double w = 0.0;
};

// sgn(0) = 0; the sliding terms rely on that.
inline double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// Wraps into [-pi, pi].
double wrap_angle(double a);

// Configuration rejected before any simulation starts.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

// Leader speed fell to (or below) the guard threshold at runtime.
class TrajectoryError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A parameter estimate crossed the underflow guard; no clamping, hard stop.
class ParameterUnderflowError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Any other mid-run failure (non-finite state, inconsistent sizes).
class SimulationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace formctl
