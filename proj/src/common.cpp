#include "formctl/common.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace formctl {

double wrap_angle(double a) { return std::remainder(a, 2.0 * std::numbers::pi); }

namespace {
std::string join_problems(const std::vector<std::string>& problems) {
  std::ostringstream os;
  os << "invalid configuration (" << problems.size() << " problem"
     << (problems.size() == 1 ? "" : "s") << "):";
  for (const auto& p : problems) os << "\n  - " << p;
  return os.str();
}
}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join_problems(problems)), problems_(std::move(problems)) {}

}  // namespace formctl
