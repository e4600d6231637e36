#include "eivdesign/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

namespace eivdesign {

namespace {

[[noreturn]] void fail(std::string_view field, std::string_view what) {
  throw ConfigError(fmt::format("{}: {}", field, what));
}

void allow_keys(const YAML::Node& node, std::string_view field,
                std::initializer_list<std::string_view> keys) {
  if (!node.IsMap()) fail(field, "expected a mapping");
  const std::set<std::string_view> allowed(keys);
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.contains(key)) fail(field, fmt::format("unknown key '{}'", key));
  }
}

template <class T>
T scalar(const YAML::Node& node, std::string_view field) {
  if (!node.IsScalar()) fail(field, "expected a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(field, fmt::format("cannot parse '{}'", node.Scalar()));
  }
}

std::vector<double> number_list(const YAML::Node& node, std::string_view field) {
  if (!node.IsSequence()) fail(field, "expected a list of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    out.push_back(scalar<double>(node[i], fmt::format("{}[{}]", field, i)));
  }
  return out;
}

Design parse_design(const YAML::Node& node, std::string_view field) {
  allow_keys(node, field, {"points", "weights"});
  if (!node["points"]) fail(field, "missing 'points'");
  auto points = number_list(node["points"], fmt::format("{}.points", field));
  try {
    if (!node["weights"]) return Design::uniform(std::move(points));
    return Design(std::move(points), number_list(node["weights"], fmt::format("{}.weights", field)));
  } catch (const InvalidArgument& e) {
    fail(field, e.what());
  }
}

PriorSpec parse_prior(const YAML::Node& node) {
  allow_keys(node, "prior", {"grid", "atoms", "rho_atoms"});
  PriorSpec spec;
  if (node["grid"] && node["atoms"]) fail("prior", "give either 'grid' or 'atoms', not both");
  if (const auto grid = node["grid"]) {
    allow_keys(grid, "prior.grid", {"intervals", "points"});
    const auto iv = grid["intervals"];
    if (!iv || !iv.IsSequence() || iv.size() == 0) fail("prior.grid.intervals", "expected a non-empty list");
    for (std::size_t i = 0; i < iv.size(); ++i) {
      const auto field = fmt::format("prior.grid.intervals[{}]", i);
      const auto pair = number_list(iv[i], field);
      if (pair.size() != 2) fail(field, "expected [lo, hi]");
      spec.intervals.emplace_back(pair[0], pair[1]);
    }
    if (!grid["points"]) fail("prior.grid", "missing 'points'");
    spec.grid_points = scalar<int>(grid["points"], "prior.grid.points");
  } else if (const auto atoms = node["atoms"]) {
    if (!atoms.IsSequence() || atoms.size() == 0) fail("prior.atoms", "expected a non-empty list");
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const auto field = fmt::format("prior.atoms[{}]", i);
      allow_keys(atoms[i], field, {"theta", "weight"});
      const auto theta = number_list(atoms[i]["theta"], field + ".theta");
      if (theta.empty() || theta.size() > static_cast<std::size_t>(kMaxParams)) {
        fail(field + ".theta", "expected 2 or 3 parameters");
      }
      ThetaAtom atom;
      atom.theta = Eigen::Map<const Eigen::VectorXd>(theta.data(), static_cast<Eigen::Index>(theta.size()));
      atom.weight = atoms[i]["weight"] ? scalar<double>(atoms[i]["weight"], field + ".weight") : 1.0;
      spec.atoms.push_back(std::move(atom));
    }
  } else {
    fail("prior", "needs 'grid' or 'atoms'");
  }
  if (const auto rho = node["rho_atoms"]) {
    if (!rho.IsSequence() || rho.size() == 0) fail("prior.rho_atoms", "expected a non-empty list");
    for (std::size_t i = 0; i < rho.size(); ++i) {
      const auto field = fmt::format("prior.rho_atoms[{}]", i);
      allow_keys(rho[i], field, {"rho_sq", "weight"});
      if (!rho[i]["rho_sq"]) fail(field, "missing 'rho_sq'");
      RhoAtom atom;
      atom.rho_sq = scalar<double>(rho[i]["rho_sq"], field + ".rho_sq");
      atom.weight = rho[i]["weight"] ? scalar<double>(rho[i]["weight"], field + ".weight") : 1.0;
      spec.rho_atoms.push_back(atom);
    }
  }
  return spec;
}

ErrorSpec parse_error(const YAML::Node& node) {
  allow_keys(node, "error", {"rho_sq", "sigma_eta_sq", "sigma_eps_sq"});
  if (node["rho_sq"]) {
    if (node["sigma_eta_sq"] || node["sigma_eps_sq"]) {
      fail("error", "give either 'rho_sq' or the two variances, not both");
    }
    return ErrorSpec::from_ratio(scalar<double>(node["rho_sq"], "error.rho_sq"));
  }
  if (!node["sigma_eta_sq"] || !node["sigma_eps_sq"]) {
    fail("error", "needs 'rho_sq' or both 'sigma_eta_sq' and 'sigma_eps_sq'");
  }
  return {scalar<double>(node["sigma_eta_sq"], "error.sigma_eta_sq"),
          scalar<double>(node["sigma_eps_sq"], "error.sigma_eps_sq")};
}

void parse_optimizer(const YAML::Node& node, SwarmConfig& cfg) {
  allow_keys(node, "optimizer", {"particles", "iterations", "inertia", "cognitive", "social", "seed"});
  if (node["particles"]) cfg.particles = scalar<int>(node["particles"], "optimizer.particles");
  if (node["iterations"]) cfg.iterations = scalar<int>(node["iterations"], "optimizer.iterations");
  if (node["inertia"]) cfg.inertia = scalar<double>(node["inertia"], "optimizer.inertia");
  if (node["cognitive"]) cfg.cognitive = scalar<double>(node["cognitive"], "optimizer.cognitive");
  if (node["social"]) cfg.social = scalar<double>(node["social"], "optimizer.social");
  if (node["seed"]) cfg.seed = scalar<std::uint64_t>(node["seed"], "optimizer.seed");
}

void emit_design(YAML::Emitter& out, const char* key, const Design& d) {
  out << YAML::Key << key << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "points" << YAML::Value << YAML::Flow << d.points();
  out << YAML::Key << "weights" << YAML::Value << YAML::Flow << d.weights();
  out << YAML::EndMap;
}

bool same_atoms(const std::vector<ThetaAtom>& a, const std::vector<ThetaAtom>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].weight != b[i].weight || a[i].theta.size() != b[i].theta.size() ||
        a[i].theta != b[i].theta) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::string_view task_name(Task task) {
  switch (task) {
    case Task::Solve: return "solve";
    case Task::Verify: return "verify";
    case Task::Efficiency: return "efficiency";
    case Task::Sensitivity: return "sensitivity";
    case Task::Table: return "table";
  }
  return "unknown";
}

Task parse_task(std::string_view name) {
  for (Task t : {Task::Solve, Task::Verify, Task::Efficiency, Task::Sensitivity, Task::Table}) {
    if (task_name(t) == name) return t;
  }
  throw ConfigError(fmt::format("task: unknown task '{}'", name));
}

DiscretePrior PriorSpec::build() const {
  DiscretePrior prior =
      is_grid() ? uniform_grid_prior(intervals, grid_points) : DiscretePrior{atoms, {}};
  prior.rho_atoms = rho_atoms;
  return prior;
}

bool operator==(const PriorSpec& a, const PriorSpec& b) {
  auto same_rho = [](const std::vector<RhoAtom>& x, const std::vector<RhoAtom>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].rho_sq != y[i].rho_sq || x[i].weight != y[i].weight) return false;
    }
    return true;
  };
  return a.intervals == b.intervals && a.grid_points == b.grid_points &&
         same_atoms(a.atoms, b.atoms) && same_rho(a.rho_atoms, b.rho_atoms);
}

bool operator==(const Scenario& a, const Scenario& b) {
  return a.model == b.model && a.design_space == b.design_space && a.prior == b.prior &&
         a.error == b.error && a.method == b.method && a.task == b.task && a.design == b.design &&
         a.reference == b.reference && a.local_theta == b.local_theta &&
         a.grid_size == b.grid_size && a.tolerance == b.tolerance && a.table_id == b.table_id &&
         a.optimizer == b.optimizer;
}

void Scenario::validate() const {
  if (task == Task::Table) {
    if (!table_id || *table_id < 1 || *table_id > 4) fail("table", "expected a table number 1-4");
    return;
  }
  try {
    design_space.validate();
  } catch (const InvalidArgument& e) {
    fail("design_space", e.what());
  }
  try {
    error.validate();
  } catch (const InvalidArgument& e) {
    fail("error", e.what());
  }
  try {
    prior.build().validate(model);
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    const std::string msg = e.what();
    // validation messages already lead with the field path
    if (msg.rfind("prior", 0) == 0) throw ConfigError(msg);
    fail("prior", msg);
  }
  try {
    if (design) design->check_within(design_space);
  } catch (const InvalidArgument& e) {
    fail("design", e.what());
  }
  try {
    if (reference) reference->check_within(design_space);
  } catch (const InvalidArgument& e) {
    fail("reference", e.what());
  }
  if (local_theta) {
    Vec theta = Eigen::Map<const Eigen::VectorXd>(local_theta->data(),
                                                  static_cast<Eigen::Index>(local_theta->size()));
    try {
      check_params(model, theta);
    } catch (const DomainError& e) {
      fail("local_theta", e.what());
    }
  }
  if (grid_size < 2) fail("verify.grid_size", "must be >= 2");
  if (!(tolerance >= 0.0)) fail("verify.tolerance", "must be >= 0");
  if (task == Task::Efficiency && !design) fail("design", "efficiency needs a candidate design");
  SwarmConfig probe = optimizer;
  probe.bounds = {{0.0, 1.0}};
  try {
    probe.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

Scenario parse_scenario(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(fmt::format("<document>: {}", e.what()));
  }
  allow_keys(root, "<document>",
             {"model", "design_space", "prior", "error", "method", "task", "design", "reference",
              "local_theta", "verify", "table", "optimizer"});

  Scenario s;
  if (root["task"]) s.task = parse_task(scalar<std::string>(root["task"], "task"));
  if (root["table"]) s.table_id = scalar<int>(root["table"], "table");
  if (root["optimizer"]) parse_optimizer(root["optimizer"], s.optimizer);

  const bool table_only = s.task == Task::Table;
  if (!table_only || root["model"]) {
    if (!root["model"]) fail("model", "missing");
    try {
      s.model = parse_model(scalar<std::string>(root["model"], "model"));
    } catch (const ConfigError&) {
      throw;
    } catch (const InvalidArgument& e) {
      fail("model", e.what());
    }
    if (!root["design_space"]) fail("design_space", "missing");
    allow_keys(root["design_space"], "design_space", {"lower", "upper"});
    s.design_space.lower = root["design_space"]["lower"]
                               ? scalar<double>(root["design_space"]["lower"], "design_space.lower")
                               : 0.0;
    if (!root["design_space"]["upper"]) fail("design_space.upper", "missing");
    s.design_space.upper = scalar<double>(root["design_space"]["upper"], "design_space.upper");
    if (!root["prior"]) fail("prior", "missing");
    s.prior = parse_prior(root["prior"]);
    if (!root["error"]) fail("error", "missing");
    s.error = parse_error(root["error"]);
    if (root["method"]) {
      try {
        s.method = parse_method(scalar<std::string>(root["method"], "method"));
      } catch (const InvalidArgument& e) {
        fail("method", e.what());
      }
    }
  }
  if (root["design"]) s.design = parse_design(root["design"], "design");
  if (root["reference"]) s.reference = parse_design(root["reference"], "reference");
  if (root["local_theta"]) s.local_theta = number_list(root["local_theta"], "local_theta");
  if (const auto v = root["verify"]) {
    allow_keys(v, "verify", {"grid_size", "tolerance"});
    if (v["grid_size"]) s.grid_size = scalar<int>(v["grid_size"], "verify.grid_size");
    if (v["tolerance"]) s.tolerance = scalar<double>(v["tolerance"], "verify.tolerance");
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("<file>: cannot open '{}'", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string dump_scenario(const Scenario& s) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  // table scenarios may carry no model section at all
  const bool has_model = !(s.task == Task::Table && !s.prior.is_grid() && s.prior.atoms.empty());
  if (has_model) {
  out << YAML::Key << "model" << YAML::Value << std::string(model_name(s.model));
  out << YAML::Key << "design_space" << YAML::Value << YAML::Flow << YAML::BeginMap
      << YAML::Key << "lower" << YAML::Value << s.design_space.lower << YAML::Key << "upper"
      << YAML::Value << s.design_space.upper << YAML::EndMap;

  out << YAML::Key << "prior" << YAML::Value << YAML::BeginMap;
  if (s.prior.is_grid()) {
    out << YAML::Key << "grid" << YAML::Value << YAML::BeginMap << YAML::Key << "intervals"
        << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (auto [lo, hi] : s.prior.intervals) {
      out << YAML::Flow << YAML::BeginSeq << lo << hi << YAML::EndSeq;
    }
    out << YAML::EndSeq << YAML::Key << "points" << YAML::Value << s.prior.grid_points
        << YAML::EndMap;
  } else {
    out << YAML::Key << "atoms" << YAML::Value << YAML::BeginSeq;
    for (const auto& a : s.prior.atoms) {
      std::vector<double> theta(a.theta.begin(), a.theta.end());
      out << YAML::Flow << YAML::BeginMap << YAML::Key << "theta" << YAML::Value << theta
          << YAML::Key << "weight" << YAML::Value << a.weight << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }
  if (!s.prior.rho_atoms.empty()) {
    out << YAML::Key << "rho_atoms" << YAML::Value << YAML::BeginSeq;
    for (const auto& r : s.prior.rho_atoms) {
      out << YAML::Flow << YAML::BeginMap << YAML::Key << "rho_sq" << YAML::Value << r.rho_sq
          << YAML::Key << "weight" << YAML::Value << r.weight << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }
  out << YAML::EndMap;

  out << YAML::Key << "error" << YAML::Value << YAML::Flow << YAML::BeginMap << YAML::Key
      << "sigma_eta_sq" << YAML::Value << s.error.sigma_eta_sq << YAML::Key << "sigma_eps_sq"
      << YAML::Value << s.error.sigma_eps_sq << YAML::EndMap;
  out << YAML::Key << "method" << YAML::Value << std::string(method_name(s.method));
  }
  if (s.task) out << YAML::Key << "task" << YAML::Value << std::string(task_name(*s.task));
  if (s.design) emit_design(out, "design", *s.design);
  if (s.reference) emit_design(out, "reference", *s.reference);
  if (s.local_theta) out << YAML::Key << "local_theta" << YAML::Value << YAML::Flow << *s.local_theta;
  out << YAML::Key << "verify" << YAML::Value << YAML::Flow << YAML::BeginMap << YAML::Key
      << "grid_size" << YAML::Value << s.grid_size << YAML::Key << "tolerance" << YAML::Value
      << s.tolerance << YAML::EndMap;
  if (s.table_id) out << YAML::Key << "table" << YAML::Value << *s.table_id;
  const auto& o = s.optimizer;
  out << YAML::Key << "optimizer" << YAML::Value << YAML::Flow << YAML::BeginMap
      << YAML::Key << "particles" << YAML::Value << o.particles << YAML::Key << "iterations"
      << YAML::Value << o.iterations << YAML::Key << "inertia" << YAML::Value << o.inertia
      << YAML::Key << "cognitive" << YAML::Value << o.cognitive << YAML::Key << "social"
      << YAML::Value << o.social << YAML::Key << "seed" << YAML::Value << o.seed << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace eivdesign
