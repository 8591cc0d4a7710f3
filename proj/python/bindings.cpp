// Python face of the engine: JSON in, plain dicts/lists out, plus a few
// desk-scale operations for notebooks and quick checks.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "formctl/config.hpp"
#include "formctl/graph.hpp"
#include "formctl/kinematic.hpp"
#include "formctl/models.hpp"
#include "formctl/sim.hpp"
#include "formctl/trace.hpp"

namespace py = pybind11;
using namespace formctl;

namespace {

Topology topology_from_lists(const std::vector<std::vector<double>>& adjacency,
                             const std::vector<double>& leader_links) {
  Topology topo;
  topo.n = static_cast<int>(adjacency.size());
  topo.adjacency = Eigen::MatrixXd::Zero(topo.n, topo.n);
  for (int i = 0; i < topo.n; ++i) {
    if (static_cast<int>(adjacency[i].size()) != topo.n)
      throw py::value_error("adjacency must be a square matrix");
    for (int j = 0; j < topo.n; ++j) topo.adjacency(i, j) = adjacency[i][j];
  }
  topo.leader_links = Eigen::VectorXd::Zero(topo.n);
  if (static_cast<int>(leader_links.size()) != topo.n)
    throw py::value_error("leader_links must have one entry per follower");
  for (int i = 0; i < topo.n; ++i) topo.leader_links(i) = leader_links[i];
  return topo;
}

py::list trace_to_list(const std::vector<TraceRow>& rows) {
  py::list out;
  for (const TraceRow& r : rows) {
    py::list row;
    for (double v : {r.t, static_cast<double>(r.robot_id), r.x, r.y, r.theta, r.v, r.w,
                     r.est_x, r.est_y, r.est_theta, r.est_v, r.est_w, r.ex_b, r.ey_b, r.eth,
                     r.v_cmd, r.w_cmd, r.tau_l, r.tau_r, r.a_hat, r.b_hat, r.vs, r.d1, r.d2})
      row.append(v);
    out.append(std::move(row));
  }
  return out;
}

py::dict result_to_dict(const RunResult& res) {
  py::dict d;
  d["variant"] = variant_name(res.variant);
  d["n"] = res.n;
  d["dt"] = res.dt;
  d["horizon"] = res.horizon;
  d["decimation"] = res.decimation;
  d["steps"] = res.steps;
  d["columns"] = kTraceColumns;
  d["trace"] = trace_to_list(res.trace);
  py::list metrics;
  for (size_t i = 0; i < res.metrics.size(); ++i) {
    const RobotMetrics& m = res.metrics[i];
    py::dict md;
    md["robot_id"] = static_cast<int>(i) + 1;
    md["total_velocity_error"] = m.total_velocity_error;
    md["max_abs_v_cmd"] = m.max_abs_v_cmd;
    md["initial_abs_v_cmd"] = m.initial_abs_v_cmd;
    md["final_est_pose_error"] = m.final_est_pose_error;
    md["final_est_vel_error"] = m.final_est_vel_error;
    md["final_a_hat_error"] = m.final_a_hat_error;
    md["final_b_hat_error"] = m.final_b_hat_error;
    md["final_formation_error"] = m.final_formation_error;
    metrics.append(std::move(md));
  }
  d["metrics"] = std::move(metrics);
  d["warnings"] = res.warnings;
  return d;
}

ScenarioConfig parse_and_check(const std::string& json_text) {
  ScenarioConfig cfg = parse_config(json_text);
  const std::vector<std::string> problems = validate_config(cfg);
  if (!problems.empty()) throw ConfigError(problems);
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Distributed leader-follower formation control simulation engine";
  m.attr("__version__") = "0.1.0";
  m.attr("TRACE_COLUMNS") = kTraceColumns;

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("demo_config_json", [] { return resolved_config_json(demo_config()); },
        "The built-in demo scenario as a JSON string with every default filled in.");

  m.def("resolve_config", [](const std::string& json_text) {
          return resolved_config_json(parse_config(json_text));
        },
        py::arg("json_text"),
        "Parse a scenario (all keys optional) and return it re-serialized with defaults "
        "filled in. Raises ValueError on structural problems.");

  m.def("validate", [](const std::string& json_text) {
          try {
            return validate_config(parse_config(json_text));
          } catch (const ConfigError& e) {
            return e.problems();
          }
        },
        py::arg("json_text"),
        "All validation problems of a scenario; an empty list means runnable.");

  m.def("run", [](const std::string& json_text) { return result_to_dict(run(parse_and_check(json_text))); },
        py::arg("json_text"),
        "Simulate one scenario. Returns a dict with the trace (rows matching "
        "TRACE_COLUMNS), per-robot metrics, and warnings.");

  m.def("compare", [](const std::string& json_text) {
          const CompareResult res = compare(parse_and_check(json_text));
          py::list out;
          for (const RunResult& r : res.runs) out.append(result_to_dict(r));
          return out;
        },
        py::arg("json_text"),
        "Simulate the scenario under all four controller variants.");

  m.def("variant_names", [] {
          std::vector<std::string> names;
          for (Variant v : kAllVariants) names.push_back(variant_name(v));
          return names;
        },
        "The four controller variants in comparison order.");

  m.def("validate_topology", [](const std::vector<std::vector<double>>& adjacency,
                                const std::vector<double>& leader_links) {
          return validate_topology(topology_from_lists(adjacency, leader_links));
        },
        py::arg("adjacency"), py::arg("leader_links"),
        "All problems with a follower communication topology; empty means usable.");

  m.def("h_min_eigenvalue", [](const std::vector<std::vector<double>>& adjacency,
                               const std::vector<double>& leader_links) {
          const Topology topo = topology_from_lists(adjacency, leader_links);
          const std::vector<std::string> problems = validate_topology(topo);
          if (!problems.empty()) throw ConfigError(problems);
          return min_symmetric_eigenvalue(h_matrix(topo));
        },
        py::arg("adjacency"), py::arg("leader_links"),
        "Smallest eigenvalue of the formation matrix (Laplacian plus leader links); "
        "positive for every usable topology.");

  m.def("shunting_rate", [](double vs, double u, double A, double B, double D) {
          return shunting_rate(ShuntingParams{A, B, D}, vs, u);
        },
        py::arg("vs"), py::arg("u"), py::arg("A") = 2.0, py::arg("B") = 2.0, py::arg("D") = 2.0,
        "Rate of the bounded shunting state for input u.");

  m.def("shunting_equilibrium", [](double u, double A, double B, double D) {
          return shunting_equilibrium(ShuntingParams{A, B, D}, u);
        },
        py::arg("u"), py::arg("A") = 2.0, py::arg("B") = 2.0, py::arg("D") = 2.0,
        "Constant-input equilibrium B*u/(A+|u|).");

  m.def("torque_command", [](double a_hat, double b_hat, double dv_cmd, double dw_cmd,
                             double vtilde, double wtilde, double c_a, double c_b,
                             double boundary_layer, double eps_c) {
          const WheelTorques tau = torque_command(ParamEstimate{a_hat, b_hat},
                                                  CommandRate{dv_cmd, dw_cmd}, vtilde, wtilde,
                                                  SlidingGains{c_a, c_b}, boundary_layer, eps_c);
          return py::make_tuple(tau.left, tau.right);
        },
        py::arg("a_hat"), py::arg("b_hat"), py::arg("dv_cmd"), py::arg("dw_cmd"),
        py::arg("vtilde"), py::arg("wtilde"), py::arg("c_a") = 3.0, py::arg("c_b") = 3.0,
        py::arg("boundary_layer") = 0.0, py::arg("eps_c") = 1e-3,
        "Wheel torque pair (left, right) from the sliding torque law.");

  m.def("leader_state", [](const std::vector<double>& x_coeffs, const std::vector<double>& y_coeffs,
                           double t, double eps_speed) {
          if (x_coeffs.size() != 5 || y_coeffs.size() != 5)
            throw py::value_error("each axis takes 5 coefficients [c0, c1, c2, c3, c4]");
          LeaderTrajectory traj;
          traj.x = AxisPoly{x_coeffs[0], x_coeffs[1], x_coeffs[2], x_coeffs[3], x_coeffs[4]};
          traj.y = AxisPoly{y_coeffs[0], y_coeffs[1], y_coeffs[2], y_coeffs[3], y_coeffs[4]};
          const LeaderReference ref = leader_reference(traj, t, eps_speed);
          py::dict d;
          d["x"] = ref.pose.x;
          d["y"] = ref.pose.y;
          d["theta"] = ref.pose.theta;
          d["v"] = ref.v;
          d["w"] = ref.w;
          return d;
        },
        py::arg("x_coeffs"), py::arg("y_coeffs"), py::arg("t"), py::arg("eps_speed") = 1e-6,
        "Closed-form leader pose and velocities at time t for axis polynomials "
        "pos(t) = c0 + c1*t + c2*cos(c3*t + c4).");
}
