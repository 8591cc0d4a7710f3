#include "formctl/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace formctl {

namespace {

using nlohmann::json;

class Problems {
 public:
  void add(std::string p) { list_.push_back(std::move(p)); }
  bool empty() const { return list_.empty(); }
  std::vector<std::string> take() { return std::move(list_); }

 private:
  std::vector<std::string> list_;
};

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed, Problems& problems) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) problems.add(path + ": unrecognized key '" + item.key() + "'");
  }
}

bool want_object(const json& j, const std::string& path, Problems& problems) {
  if (j.is_object()) return true;
  problems.add(path + ": expected an object");
  return false;
}

bool want_array(const json& j, const std::string& path, Problems& problems) {
  if (j.is_array()) return true;
  problems.add(path + ": expected an array");
  return false;
}

void read_double(const json& obj, const std::string& path, const char* key, double& out,
                 Problems& problems) {
  if (!obj.contains(key)) return;
  const json& j = obj.at(key);
  if (!j.is_number()) {
    problems.add(path + "." + key + ": expected a number");
    return;
  }
  out = j.get<double>();
}

void read_int(const json& obj, const std::string& path, const char* key, int& out,
              Problems& problems) {
  if (!obj.contains(key)) return;
  const json& j = obj.at(key);
  if (!j.is_number_integer()) {
    problems.add(path + "." + key + ": expected an integer");
    return;
  }
  out = j.get<int>();
}

bool read_fixed_numbers(const json& j, const std::string& path, size_t count, double* out,
                        Problems& problems) {
  if (!j.is_array() || j.size() != count) {
    problems.add(path + ": expected an array of " + std::to_string(count) + " numbers");
    return false;
  }
  for (size_t k = 0; k < count; ++k) {
    if (!j[k].is_number()) {
      problems.add(path + ": expected an array of " + std::to_string(count) + " numbers");
      return false;
    }
    out[k] = j[k].get<double>();
  }
  return true;
}

void parse_topology(const json& j, ScenarioConfig& cfg, Problems& problems) {
  if (!want_object(j, "topology", problems)) return;
  check_keys(j, "topology", {"n", "edges", "leader_links"}, problems);
  int n = cfg.topology.n;
  read_int(j, "topology", "n", n, problems);
  if (n < 1) {
    problems.add("topology.n: must be at least 1");
    return;
  }
  Topology topo;
  topo.n = n;
  topo.adjacency = Eigen::MatrixXd::Zero(n, n);
  topo.leader_links = Eigen::VectorXd::Zero(n);
  if (j.contains("edges")) {
    const json& edges = j.at("edges");
    if (want_array(edges, "topology.edges", problems)) {
      for (size_t k = 0; k < edges.size(); ++k) {
        const std::string path = "topology.edges[" + std::to_string(k) + "]";
        const json& e = edges[k];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer()) {
          problems.add(path + ": expected a pair of 1-based follower ids");
          continue;
        }
        const int a = e[0].get<int>();
        const int b = e[1].get<int>();
        if (a < 1 || a > n || b < 1 || b > n) {
          problems.add(path + ": follower ids must be between 1 and " + std::to_string(n));
          continue;
        }
        topo.adjacency(a - 1, b - 1) = 1.0;
        topo.adjacency(b - 1, a - 1) = 1.0;
      }
    }
  } else if (n == cfg.topology.n) {
    topo.adjacency = cfg.topology.adjacency;
  }
  if (j.contains("leader_links")) {
    const json& links = j.at("leader_links");
    if (!links.is_array() || links.size() != static_cast<size_t>(n)) {
      problems.add("topology.leader_links: expected an array of " + std::to_string(n) +
                   " values");
    } else {
      for (int i = 0; i < n; ++i) {
        if (!links[static_cast<size_t>(i)].is_number()) {
          problems.add("topology.leader_links: entries must be numbers (0 or 1)");
          break;
        }
        topo.leader_links(i) = links[static_cast<size_t>(i)].get<double>();
      }
    }
  } else if (n == cfg.topology.n) {
    topo.leader_links = cfg.topology.leader_links;
  }
  cfg.topology = topo;
}

void parse_estimator_gain_set(const json& j, const std::string& path, EstimatorGains& g,
                              Problems& problems) {
  if (!want_object(j, path, problems)) return;
  check_keys(j, path, {"kx", "ky", "ktheta", "ka1", "kb1", "ka2", "kb2"}, problems);
  read_double(j, path, "kx", g.kx, problems);
  read_double(j, path, "ky", g.ky, problems);
  read_double(j, path, "ktheta", g.ktheta, problems);
  read_double(j, path, "ka1", g.ka1, problems);
  read_double(j, path, "kb1", g.kb1, problems);
  read_double(j, path, "ka2", g.ka2, problems);
  read_double(j, path, "kb2", g.kb2, problems);
}

void parse_disturbance(const json& j, const std::string& path, DisturbanceSpec& d,
                       Problems& problems) {
  if (!want_object(j, path, problems)) return;
  check_keys(j, path, {"kind", "amplitude", "omega", "phase"}, problems);
  if (j.contains("kind")) {
    const json& kind = j.at("kind");
    if (kind.is_string() && kind.get<std::string>() == "constant") {
      d.kind = DisturbanceKind::constant;
    } else if (kind.is_string() && kind.get<std::string>() == "sinusoid") {
      d.kind = DisturbanceKind::sinusoid;
    } else {
      problems.add(path + ".kind: expected \"constant\" or \"sinusoid\"");
    }
  }
  read_double(j, path, "amplitude", d.amplitude, problems);
  read_double(j, path, "omega", d.omega, problems);
  read_double(j, path, "phase", d.phase, problems);
}

void parse_axis(const json& j, const std::string& path, AxisPoly& axis, Problems& problems) {
  if (!want_object(j, path, problems)) return;
  check_keys(j, path, {"c0", "c1", "c2", "c3", "c4"}, problems);
  read_double(j, path, "c0", axis.c0, problems);
  read_double(j, path, "c1", axis.c1, problems);
  read_double(j, path, "c2", axis.c2, problems);
  read_double(j, path, "c3", axis.c3, problems);
  read_double(j, path, "c4", axis.c4, problems);
}

ScenarioConfig parse_json(const json& root) {
  Problems problems;
  ScenarioConfig cfg;
  if (!root.is_object()) {
    problems.add("config: top level must be a JSON object");
    throw ConfigError(problems.take());
  }
  check_keys(root, "config",
             {"variant", "dt", "horizon", "decimation", "topology", "offsets", "perturbation",
              "initial_poses", "initial_velocities", "estimator_init", "estimator_gains",
              "kinematic_gains", "shunting", "sliding_gains", "learner_gains", "c_hat0",
              "robot_params", "disturbances", "trajectory", "eps_c", "eps_speed",
              "boundary_layer", "gamma1", "gamma2"},
             problems);

  if (root.contains("variant")) {
    const json& v = root.at("variant");
    if (!v.is_string()) {
      problems.add("variant: expected a string");
    } else {
      try {
        cfg.variant = variant_from_name(v.get<std::string>());
      } catch (const std::invalid_argument& e) {
        problems.add(std::string("variant: ") + e.what());
      }
    }
  }
  read_double(root, "config", "dt", cfg.dt, problems);
  read_double(root, "config", "horizon", cfg.horizon, problems);
  read_int(root, "config", "decimation", cfg.decimation, problems);

  if (root.contains("topology")) parse_topology(root.at("topology"), cfg, problems);

  if (root.contains("offsets")) {
    const json& j = root.at("offsets");
    if (want_array(j, "offsets", problems)) {
      std::vector<Offset> offsets;
      for (size_t k = 0; k < j.size(); ++k) {
        double pair[2];
        if (read_fixed_numbers(j[k], "offsets[" + std::to_string(k) + "]", 2, pair, problems)) {
          offsets.push_back({pair[0], pair[1]});
        }
      }
      cfg.offsets = std::move(offsets);
    }
  }

  if (root.contains("perturbation")) {
    double p[3];
    if (read_fixed_numbers(root.at("perturbation"), "perturbation", 3, p, problems)) {
      cfg.perturbation = {p[0], p[1], p[2]};
    }
  }

  if (root.contains("initial_poses")) {
    const json& j = root.at("initial_poses");
    if (want_array(j, "initial_poses", problems)) {
      std::vector<Pose> poses;
      for (size_t k = 0; k < j.size(); ++k) {
        double p[3];
        if (read_fixed_numbers(j[k], "initial_poses[" + std::to_string(k) + "]", 3, p,
                               problems)) {
          poses.push_back({p[0], p[1], p[2]});
        }
      }
      cfg.initial_poses = std::move(poses);
    }
  }

  if (root.contains("initial_velocities")) {
    const json& j = root.at("initial_velocities");
    if (want_array(j, "initial_velocities", problems)) {
      std::vector<BodyVelocity> vels;
      for (size_t k = 0; k < j.size(); ++k) {
        double p[2];
        if (read_fixed_numbers(j[k], "initial_velocities[" + std::to_string(k) + "]", 2, p,
                               problems)) {
          vels.push_back({p[0], p[1]});
        }
      }
      cfg.initial_velocities = std::move(vels);
    }
  }

  if (root.contains("estimator_init")) {
    const json& j = root.at("estimator_init");
    if (j.is_string() && j.get<std::string>() == "own_pose") {
      cfg.estimator_init = EstimatorInit::own_pose;
    } else if (j.is_string() && j.get<std::string>() == "leader_truth") {
      cfg.estimator_init = EstimatorInit::leader_truth;
    } else {
      problems.add("estimator_init: expected \"own_pose\" or \"leader_truth\"");
    }
  }

  if (root.contains("estimator_gains")) {
    const json& j = root.at("estimator_gains");
    if (j.is_object()) {
      EstimatorGains g;
      parse_estimator_gain_set(j, "estimator_gains", g, problems);
      cfg.estimator_gains = {g};
    } else if (j.is_array()) {
      std::vector<EstimatorGains> gains;
      for (size_t k = 0; k < j.size(); ++k) {
        EstimatorGains g;
        parse_estimator_gain_set(j[k], "estimator_gains[" + std::to_string(k) + "]", g,
                                 problems);
        gains.push_back(g);
      }
      cfg.estimator_gains = std::move(gains);
    } else {
      problems.add("estimator_gains: expected an object or an array of objects");
    }
  }

  if (root.contains("kinematic_gains")) {
    const json& j = root.at("kinematic_gains");
    if (want_object(j, "kinematic_gains", problems)) {
      check_keys(j, "kinematic_gains", {"k1", "k2", "k3"}, problems);
      read_double(j, "kinematic_gains", "k1", cfg.kinematic_gains.k1, problems);
      read_double(j, "kinematic_gains", "k2", cfg.kinematic_gains.k2, problems);
      read_double(j, "kinematic_gains", "k3", cfg.kinematic_gains.k3, problems);
    }
  }

  if (root.contains("shunting")) {
    const json& j = root.at("shunting");
    if (want_object(j, "shunting", problems)) {
      check_keys(j, "shunting", {"A", "B", "D"}, problems);
      read_double(j, "shunting", "A", cfg.shunting.A, problems);
      read_double(j, "shunting", "B", cfg.shunting.B, problems);
      read_double(j, "shunting", "D", cfg.shunting.D, problems);
    }
  }

  if (root.contains("sliding_gains")) {
    const json& j = root.at("sliding_gains");
    if (want_object(j, "sliding_gains", problems)) {
      check_keys(j, "sliding_gains", {"c_a", "c_b"}, problems);
      read_double(j, "sliding_gains", "c_a", cfg.sliding_gains.c_a, problems);
      read_double(j, "sliding_gains", "c_b", cfg.sliding_gains.c_b, problems);
    }
  }

  if (root.contains("learner_gains")) {
    const json& j = root.at("learner_gains");
    if (want_object(j, "learner_gains", problems)) {
      check_keys(j, "learner_gains", {"k4", "k5"}, problems);
      if (j.contains("k4")) {
        double p[2];
        if (read_fixed_numbers(j.at("k4"), "learner_gains.k4", 2, p, problems)) {
          cfg.learner_gains.k4_v = p[0];
          cfg.learner_gains.k4_w = p[1];
        }
      }
      if (j.contains("k5")) {
        double p[2];
        if (read_fixed_numbers(j.at("k5"), "learner_gains.k5", 2, p, problems)) {
          cfg.learner_gains.k5_v = p[0];
          cfg.learner_gains.k5_w = p[1];
        }
      }
    }
  }

  if (root.contains("c_hat0")) {
    double p[2];
    if (read_fixed_numbers(root.at("c_hat0"), "c_hat0", 2, p, problems)) {
      cfg.c_hat0 = {p[0], p[1]};
    }
  }

  if (root.contains("robot_params")) {
    const json& j = root.at("robot_params");
    if (want_object(j, "robot_params", problems)) {
      check_keys(j, "robot_params", {"a", "b"}, problems);
      read_double(j, "robot_params", "a", cfg.robot_params.a, problems);
      read_double(j, "robot_params", "b", cfg.robot_params.b, problems);
    }
  }

  if (root.contains("disturbances")) {
    const json& j = root.at("disturbances");
    if (want_object(j, "disturbances", problems)) {
      check_keys(j, "disturbances", {"d1", "d2"}, problems);
      if (j.contains("d1")) parse_disturbance(j.at("d1"), "disturbances.d1", cfg.d1, problems);
      if (j.contains("d2")) parse_disturbance(j.at("d2"), "disturbances.d2", cfg.d2, problems);
    }
  }

  if (root.contains("trajectory")) {
    const json& j = root.at("trajectory");
    if (want_object(j, "trajectory", problems)) {
      check_keys(j, "trajectory", {"x", "y"}, problems);
      if (j.contains("x")) parse_axis(j.at("x"), "trajectory.x", cfg.trajectory.x, problems);
      if (j.contains("y")) parse_axis(j.at("y"), "trajectory.y", cfg.trajectory.y, problems);
    }
  }

  read_double(root, "config", "eps_c", cfg.eps_c, problems);
  read_double(root, "config", "eps_speed", cfg.eps_speed, problems);
  read_double(root, "config", "boundary_layer", cfg.boundary_layer, problems);

  for (const char* key : {"gamma1", "gamma2"}) {
    if (!root.contains(key)) continue;
    const json& j = root.at(key);
    if (j.is_null()) continue;  // explicit null keeps the trajectory-derived default
    if (!j.is_number()) {
      problems.add(std::string(key) + ": expected a number or null");
      continue;
    }
    if (std::string(key) == "gamma1") cfg.gamma1 = j.get<double>();
    if (std::string(key) == "gamma2") cfg.gamma2 = j.get<double>();
  }

  if (!problems.empty()) throw ConfigError(problems.take());
  return cfg;
}

}  // namespace

ScenarioConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("config is not valid JSON: ") + e.what()});
  }
  return parse_json(root);
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot read config file '" + path + "'"});
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (ConfigError& e) {
    std::vector<std::string> problems = e.problems();
    for (auto& p : problems) p = path + ": " + p;
    throw ConfigError(std::move(problems));
  }
}

std::string resolved_config_json(const ScenarioConfig& cfg) {
  json root;
  root["variant"] = variant_name(cfg.variant);
  root["dt"] = cfg.dt;
  root["horizon"] = cfg.horizon;
  root["decimation"] = cfg.decimation;

  json topo;
  topo["n"] = cfg.topology.n;
  json edges = json::array();
  for (int i = 0; i < cfg.topology.n; ++i) {
    for (int j = i + 1; j < cfg.topology.n; ++j) {
      if (cfg.topology.adjacency(i, j) != 0.0) edges.push_back({i + 1, j + 1});
    }
  }
  topo["edges"] = edges;
  json links = json::array();
  for (int i = 0; i < cfg.topology.n; ++i) links.push_back(cfg.topology.leader_links(i));
  topo["leader_links"] = links;
  root["topology"] = topo;

  json offsets = json::array();
  for (const Offset& o : cfg.offsets) offsets.push_back({o.dx, o.dy});
  root["offsets"] = offsets;
  root["perturbation"] = {cfg.perturbation[0], cfg.perturbation[1], cfg.perturbation[2]};
  if (cfg.initial_poses) {
    json poses = json::array();
    for (const Pose& p : *cfg.initial_poses) poses.push_back({p.x, p.y, p.theta});
    root["initial_poses"] = poses;
  }
  if (cfg.initial_velocities) {
    json vels = json::array();
    for (const BodyVelocity& v : *cfg.initial_velocities) vels.push_back({v.v, v.w});
    root["initial_velocities"] = vels;
  }
  root["estimator_init"] =
      cfg.estimator_init == EstimatorInit::leader_truth ? "leader_truth" : "own_pose";

  const auto gain_set = [](const EstimatorGains& g) {
    json j;
    j["kx"] = g.kx;
    j["ky"] = g.ky;
    j["ktheta"] = g.ktheta;
    j["ka1"] = g.ka1;
    j["kb1"] = g.kb1;
    j["ka2"] = g.ka2;
    j["kb2"] = g.kb2;
    return j;
  };
  if (cfg.estimator_gains.size() == 1) {
    root["estimator_gains"] = gain_set(cfg.estimator_gains.front());
  } else {
    json gains = json::array();
    for (const EstimatorGains& g : cfg.estimator_gains) gains.push_back(gain_set(g));
    root["estimator_gains"] = gains;
  }

  root["kinematic_gains"] = {{"k1", cfg.kinematic_gains.k1},
                             {"k2", cfg.kinematic_gains.k2},
                             {"k3", cfg.kinematic_gains.k3}};
  root["shunting"] = {{"A", cfg.shunting.A}, {"B", cfg.shunting.B}, {"D", cfg.shunting.D}};
  root["sliding_gains"] = {{"c_a", cfg.sliding_gains.c_a}, {"c_b", cfg.sliding_gains.c_b}};
  root["learner_gains"] = {{"k4", {cfg.learner_gains.k4_v, cfg.learner_gains.k4_w}},
                           {"k5", {cfg.learner_gains.k5_v, cfg.learner_gains.k5_w}}};
  root["c_hat0"] = {cfg.c_hat0.a_hat, cfg.c_hat0.b_hat};
  root["robot_params"] = {{"a", cfg.robot_params.a}, {"b", cfg.robot_params.b}};

  const auto disturbance = [](const DisturbanceSpec& d) {
    json j;
    j["kind"] = d.kind == DisturbanceKind::constant ? "constant" : "sinusoid";
    j["amplitude"] = d.amplitude;
    j["omega"] = d.omega;
    j["phase"] = d.phase;
    return j;
  };
  root["disturbances"] = {{"d1", disturbance(cfg.d1)}, {"d2", disturbance(cfg.d2)}};

  const auto axis = [](const AxisPoly& a) {
    json j;
    j["c0"] = a.c0;
    j["c1"] = a.c1;
    j["c2"] = a.c2;
    j["c3"] = a.c3;
    j["c4"] = a.c4;
    return j;
  };
  root["trajectory"] = {{"x", axis(cfg.trajectory.x)}, {"y", axis(cfg.trajectory.y)}};

  root["eps_c"] = cfg.eps_c;
  root["eps_speed"] = cfg.eps_speed;
  root["boundary_layer"] = cfg.boundary_layer;
  if (cfg.gamma1) root["gamma1"] = *cfg.gamma1;
  if (cfg.gamma2) root["gamma2"] = *cfg.gamma2;

  return root.dump(2) + "\n";
}

}  // namespace formctl
