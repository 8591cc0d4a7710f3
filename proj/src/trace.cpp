#include "formctl/trace.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

namespace formctl {

const std::vector<std::string> kTraceColumns = {
    "t",     "robot_id", "x",     "y",     "theta", "v",       "w",     "est_x",
    "est_y", "est_theta", "est_v", "est_w", "ex_b",  "ey_b",    "eth",   "v_cmd",
    "w_cmd", "tau_l",    "tau_r", "a_hat", "b_hat", "vs",      "d1",    "d2"};

namespace {

void append_number(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  out += buf;
}

std::string full_precision(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string trace_csv(const std::vector<TraceRow>& rows) {
  std::string out;
  out.reserve(rows.size() * 320 + 256);
  for (size_t c = 0; c < kTraceColumns.size(); ++c) {
    if (c) out += ',';
    out += kTraceColumns[c];
  }
  out += '\n';
  for (const TraceRow& r : rows) {
    append_number(out, r.t);
    out += ',';
    out += std::to_string(r.robot_id);
    const double values[] = {r.x,     r.y,     r.theta, r.v,     r.w,     r.est_x, r.est_y,
                             r.est_theta, r.est_v, r.est_w, r.ex_b,  r.ey_b,  r.eth,
                             r.v_cmd, r.w_cmd, r.tau_l, r.tau_r, r.a_hat, r.b_hat, r.vs,
                             r.d1,    r.d2};
    for (double v : values) {
      out += ',';
      append_number(out, v);
    }
    out += '\n';
  }
  return out;
}

std::string metrics_text(const RunResult& result) {
  std::ostringstream os;
  os << "variant = " << variant_name(result.variant) << '\n';
  os << "n = " << result.n << '\n';
  os << "dt = " << full_precision(result.dt) << '\n';
  os << "horizon = " << full_precision(result.horizon) << '\n';
  os << "steps = " << result.steps << '\n';
  os << "decimation = " << result.decimation << '\n';
  for (int i = 0; i < result.n; ++i) {
    const RobotMetrics& m = result.metrics[static_cast<size_t>(i)];
    const std::string p = "robot_" + std::to_string(i + 1) + ".";
    os << p << "total_velocity_error = " << full_precision(m.total_velocity_error) << '\n';
    os << p << "max_abs_v_cmd = " << full_precision(m.max_abs_v_cmd) << '\n';
    os << p << "initial_abs_v_cmd = " << full_precision(m.initial_abs_v_cmd) << '\n';
    os << p << "final_est_pose_error = " << full_precision(m.final_est_pose_error) << '\n';
    os << p << "final_est_vel_error = " << full_precision(m.final_est_vel_error) << '\n';
    os << p << "final_a_hat_error = " << full_precision(m.final_a_hat_error) << '\n';
    os << p << "final_b_hat_error = " << full_precision(m.final_b_hat_error) << '\n';
    os << p << "final_formation_error = " << full_precision(m.final_formation_error) << '\n';
  }
  for (const std::string& w : result.warnings) os << "warning = " << w << '\n';
  return os.str();
}

std::string compare_report(const CompareResult& result) {
  std::ostringstream os;
  if (result.runs.empty()) return "";
  const int n = result.runs.front().n;

  os << "total velocity error by variant and follower\n";
  os << "variant";
  for (int i = 0; i < n; ++i) os << ",robot_" << i + 1;
  os << '\n';
  for (const RunResult& r : result.runs) {
    os << variant_name(r.variant);
    for (int i = 0; i < n; ++i) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.9g",
                    r.metrics[static_cast<size_t>(i)].total_velocity_error);
      os << ',' << buf;
    }
    os << '\n';
  }

  os << "\nper-follower ranking, smallest total velocity error first\n";
  for (int i = 0; i < n; ++i) {
    std::vector<size_t> order(result.runs.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return result.runs[a].metrics[static_cast<size_t>(i)].total_velocity_error <
             result.runs[b].metrics[static_cast<size_t>(i)].total_velocity_error;
    });
    os << "robot_" << i + 1 << ": ";
    for (size_t k = 0; k < order.size(); ++k) {
      if (k) os << " < ";
      os << variant_name(result.runs[order[k]].variant);
    }
    os << '\n';
  }
  return os.str();
}

void write_file_atomically(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw SimulationError("cannot open '" + tmp + "' for writing");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw SimulationError("failed while writing '" + tmp + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw SimulationError("cannot move '" + tmp + "' into place: " + ec.message());
  }
}

}  // namespace formctl
