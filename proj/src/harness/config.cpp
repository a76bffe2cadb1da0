#include "irltrack/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <span>
#include <sstream>

#include "irltrack/core/errors.hpp"

// Shortest round-trip float formatting; GCC 11+ and Clang 14+ ship it.
#define TOML_FLOAT_CHARCONV 1
#include <toml.hpp>

namespace irltrack::harness {

namespace {

constexpr double kRadPerDeg = std::numbers::pi / 180.0;

// Reads one TOML table, remembering which keys were consumed so leftovers can
// be reported as unknown.
class Reader {
 public:
  Reader(const toml::table& t, std::string path) : t_(t), path_(std::move(path)) {}

  std::string key(std::string_view k) const {
    return path_.empty() ? std::string(k) : path_ + "." + std::string(k);
  }

  bool has(std::string_view k) const { return t_.contains(k); }

  const toml::node* node(std::string_view k) {
    seen_.insert(std::string(k));
    return t_.get(k);
  }

  double number(std::string_view k) {
    const toml::node* n = node(k);
    if (n == nullptr) throw ConfigError(key(k), "missing required number");
    return as_number(*n, key(k));
  }

  double number(std::string_view k, double fallback) { return has(k) ? number(k) : fallback; }

  std::int64_t integer(std::string_view k) {
    const toml::node* n = node(k);
    if (n == nullptr) throw ConfigError(key(k), "missing required integer");
    const auto v = n->value_exact<std::int64_t>();
    if (!v) throw ConfigError(key(k), "expected an integer");
    return *v;
  }

  std::int64_t integer(std::string_view k, std::int64_t fallback) {
    return has(k) ? integer(k) : fallback;
  }

  bool boolean(std::string_view k, bool fallback) {
    if (!has(k)) return fallback;
    const auto v = node(k)->value_exact<bool>();
    if (!v) throw ConfigError(key(k), "expected true or false");
    return *v;
  }

  std::string string(std::string_view k) {
    const toml::node* n = node(k);
    if (n == nullptr) throw ConfigError(key(k), "missing required string");
    const auto v = n->value_exact<std::string>();
    if (!v) throw ConfigError(key(k), "expected a string");
    return *v;
  }

  std::string string(std::string_view k, const std::string& fallback) {
    return has(k) ? string(k) : fallback;
  }

  std::vector<double> numbers(std::string_view k) {
    const toml::node* n = node(k);
    if (n == nullptr) throw ConfigError(key(k), "missing required array");
    return as_numbers(*n, key(k));
  }

  template <std::size_t R, std::size_t C>
  std::array<std::array<double, C>, R> matrix(std::string_view k) {
    const toml::node* n = node(k);
    if (n == nullptr) throw ConfigError(key(k), "missing required matrix");
    const toml::array* rows = n->as_array();
    if (rows == nullptr || rows->size() != R) {
      throw ConfigError(key(k), "expected " + std::to_string(R) + " rows");
    }
    std::array<std::array<double, C>, R> m{};
    for (std::size_t i = 0; i < R; ++i) {
      const std::vector<double> row = as_numbers(*rows->get(i), key(k));
      if (row.size() != C) throw ConfigError(key(k), "expected " + std::to_string(C) + " columns");
      for (std::size_t j = 0; j < C; ++j) m[i][j] = row[j];
    }
    return m;
  }

  const toml::table& table(std::string_view k) {
    const toml::node* n = node(k);
    if (n == nullptr || !n->is_table()) throw ConfigError(key(k), "missing required table");
    return *n->as_table();
  }

  /// Rejects anything not consumed.
  void finish() const {
    for (const auto& [k, v] : t_) {
      if (!seen_.contains(std::string(k.str()))) throw ConfigError(key(k.str()), "unknown key");
    }
  }

 private:
  static double as_number(const toml::node& n, const std::string& where) {
    if (const auto f = n.value_exact<double>()) return *f;
    if (const auto i = n.value_exact<std::int64_t>()) return static_cast<double>(*i);
    throw ConfigError(where, "expected a number");
  }

  static std::vector<double> as_numbers(const toml::node& n, const std::string& where) {
    const toml::array* a = n.as_array();
    if (a == nullptr) throw ConfigError(where, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(a->size());
    for (const toml::node& e : *a) out.push_back(as_number(e, where));
    return out;
  }

  const toml::table& t_;
  std::string path_;
  std::set<std::string> seen_;
};

template <typename Enum>
struct Named {
  Enum value;
  const char* name;
};

constexpr Named<ControllerKind> kControllers[] = {{ControllerKind::kIrl, "irl"},
                                                  {ControllerKind::kHomfac, "homfac"}};
constexpr Named<ResidualMode> kResiduals[] = {{ResidualMode::kSigned, "signed"},
                                              {ResidualMode::kLiteral, "literal"}};
constexpr Named<ActorInit> kActorInits[] = {{ActorInit::kGreedyPlusNoise, "greedy_plus_noise"},
                                            {ActorInit::kExplicit, "explicit"}};
constexpr Named<plant::PayloadKind> kPayloads[] = {{plant::PayloadKind::kNone, "none"},
                                                   {plant::PayloadKind::kConstant, "constant"},
                                                   {plant::PayloadKind::kStep, "step"},
                                                   {plant::PayloadKind::kRamp, "ramp"}};

template <typename Enum, std::size_t N>
Enum from_name(const Named<Enum> (&table)[N], const std::string& name, const std::string& key) {
  for (const auto& e : table) {
    if (name == e.name) return e.value;
  }
  std::string allowed;
  for (const auto& e : table) allowed += std::string(allowed.empty() ? "" : ", ") + e.name;
  throw ConfigError(key, "'" + name + "' is not one of: " + allowed);
}

template <typename Enum, std::size_t N>
const char* to_name(const Named<Enum> (&table)[N], Enum value) {
  for (const auto& e : table) {
    if (e.value == value) return e.name;
  }
  return "unknown";
}

traj::TrajectorySpec read_trajectory(Reader& r, double duration) {
  traj::TrajectorySpec s;
  const std::string kind = r.string("kind");
  try {
    s.kind = traj::kind_from_name(kind.c_str());
  } catch (const PreconditionError& e) {
    throw ConfigError(r.key("kind"), e.what());
  }
  s.duration = duration;
  switch (s.kind) {
    case traj::Kind::kExpGrowDecay:
      s.amplitude = r.number("amplitude_deg");
      s.time_constant = r.number("time_constant");
      s.offset = r.number("offset_deg");
      break;
    case traj::Kind::kLinearRamp:
      s.slope = r.number("slope_deg_per_s");
      s.offset = r.number("offset_deg");
      break;
    case traj::Kind::kStepHold:
      s.step_time = r.number("step_time");
      s.step_value = r.number("step_value_deg");
      s.offset = r.number("offset_deg");
      break;
    case traj::Kind::kSinusoid:
      s.amplitude = r.number("amplitude_deg");
      s.frequency = r.number("frequency_hz");
      s.phase = r.number("phase_rad", 0.0);
      s.offset = r.number("offset_deg");
      break;
    case traj::Kind::kPiecewiseSamples: {
      const toml::node* n = r.node("points");
      const toml::array* a = n != nullptr ? n->as_array() : nullptr;
      if (a == nullptr) throw ConfigError(r.key("points"), "expected [[t, deg], ...]");
      for (const toml::node& p : *a) {
        const toml::array* pair = p.as_array();
        if (pair == nullptr || pair->size() != 2) {
          throw ConfigError(r.key("points"), "each point must be [t, deg]");
        }
        const auto t = pair->get(0)->value<double>();
        const auto d = pair->get(1)->value<double>();
        if (!t || !d) throw ConfigError(r.key("points"), "points must be numbers");
        s.points.emplace_back(*t, *d);
      }
      break;
    }
  }
  r.finish();
  try {
    s.validate();
  } catch (const PreconditionError& e) {
    throw ConfigError(r.key("kind"), e.what());
  }
  return s;
}

JointConfig read_joint(Reader& r, double duration) {
  JointConfig j;
  j.name = r.string("name");
  j.initial_angle_deg = r.number("initial_angle_deg");
  j.u_max = r.number("u_max", j.u_max);
  j.homfac_phi0 = r.number("homfac_phi0", j.homfac_phi0);
  j.actor_noise = r.boolean("actor_noise", j.actor_noise);
  if (r.has("gains")) {
    const std::vector<double> g = r.numbers("gains");
    if (g.size() != 3) throw ConfigError(r.key("gains"), "expected three gains");
    j.gains = {g[0], g[1], g[2]};
  }
  j.critic = r.matrix<4, 4>("critic");
  j.q = r.matrix<3, 3>("q");
  j.r = r.number("r");

  Reader p(r.table("plant"), r.key("plant"));
  j.inertia_base = p.number("inertia_base");
  j.link_mass = p.number("link_mass");
  j.link_length = p.number("link_length");
  j.viscous_friction = p.number("viscous_friction");
  j.gravity_gain = p.number("gravity_gain");
  j.actuator_gain = p.number("actuator_gain");
  j.coupling_gain = p.number("coupling_gain", 0.0);
  j.rest_angle_deg = p.number("rest_angle_deg", 0.0);
  j.coupled_with = static_cast<int>(p.integer("coupled_with", 0));
  p.finish();

  Reader t(r.table("trajectory"), r.key("trajectory"));
  j.trajectory = read_trajectory(t, duration);
  r.finish();
  return j;
}

Eigen::Matrix4d to_eigen(const Mat4& m) {
  Eigen::Matrix4d out;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) out(i, k) = m[i][k];
  return out;
}

Eigen::Matrix3d to_eigen(const Mat3& m) {
  Eigen::Matrix3d out;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) out(i, k) = m[i][k];
  return out;
}

template <std::size_t R, std::size_t C>
toml::array matrix_node(const std::array<std::array<double, C>, R>& m) {
  toml::array rows;
  for (const auto& row : m) {
    toml::array a;
    for (double v : row) a.push_back(v);
    rows.push_back(std::move(a));
  }
  return rows;
}

toml::array vector_node(std::span<const double> v) {
  toml::array a;
  for (double x : v) a.push_back(x);
  return a;
}

toml::table trajectory_node(const traj::TrajectorySpec& s) {
  toml::table t;
  t.insert("kind", traj::kind_name(s.kind));
  switch (s.kind) {
    case traj::Kind::kExpGrowDecay:
      t.insert("amplitude_deg", s.amplitude);
      t.insert("time_constant", s.time_constant);
      t.insert("offset_deg", s.offset);
      break;
    case traj::Kind::kLinearRamp:
      t.insert("slope_deg_per_s", s.slope);
      t.insert("offset_deg", s.offset);
      break;
    case traj::Kind::kStepHold:
      t.insert("step_time", s.step_time);
      t.insert("step_value_deg", s.step_value);
      t.insert("offset_deg", s.offset);
      break;
    case traj::Kind::kSinusoid:
      t.insert("amplitude_deg", s.amplitude);
      t.insert("frequency_hz", s.frequency);
      t.insert("phase_rad", s.phase);
      t.insert("offset_deg", s.offset);
      break;
    case traj::Kind::kPiecewiseSamples: {
      toml::array pts;
      for (const auto& [time, deg] : s.points) pts.push_back(toml::array{time, deg});
      t.insert("points", std::move(pts));
      break;
    }
  }
  return t;
}

}  // namespace

double JointConfig::initial_angle() const { return initial_angle_deg * kRadPerDeg; }

plant::JointParams JointConfig::plant_params() const {
  plant::JointParams p;
  p.inertia_base = inertia_base;
  p.link_mass = link_mass;
  p.link_length = link_length;
  p.viscous_friction = viscous_friction;
  p.gravity_gain = gravity_gain;
  p.actuator_gain = actuator_gain;
  p.coupling_gain = coupling_gain;
  p.rest_angle = rest_angle_deg * kRadPerDeg;
  p.neighbor = coupled_with - 1;
  return p;
}

CriticWeights JointConfig::critic_weights(double inversion_guard) const {
  return CriticWeights(to_eigen(critic), inversion_guard);
}

CostWeights JointConfig::cost_weights() const { return CostWeights(to_eigen(q), r); }

double DisturbanceConfig::sigma() const { return std::sqrt(variance); }

plant::PayloadSchedule PayloadConfig::schedule() const {
  plant::PayloadSchedule s;
  s.kind = kind;
  s.mass = mass_lb * plant::kKgPerLb;
  s.step_time = step_time;
  s.ramp_start = ramp_start;
  s.ramp_end = ramp_end;
  return s;
}

void ExperimentConfig::validate() const {
  if (id < 1 || id > 5) throw ConfigError("id", "experiment id must be 1..5");
  const std::size_t expected = id == 5 ? 1 : 4;
  if (joints.size() != expected) {
    throw ConfigError("joints", "experiment " + std::to_string(id) + " controls " +
                                    std::to_string(expected) + " joint(s), found " +
                                    std::to_string(joints.size()));
  }
  if (!(duration > 0.0)) throw ConfigError("duration", "must be positive");
  if (!(actuation_sign == 1.0 || actuation_sign == -1.0)) {
    throw ConfigError("irl.actuation_sign", "must be +1 or -1");
  }

  const RatesConfig& rt = rates;
  if (!(rt.control_interval > 0.0)) throw ConfigError("rates.control_interval", "must be positive");
  if (rt.steps < 1) throw ConfigError("rates.steps", "must be at least 1");
  if (static_cast<double>(rt.steps) * rt.control_interval > duration * (1.0 + 1e-12)) {
    throw ConfigError("rates.steps", "steps * control_interval exceeds the duration");
  }
  if (!(rt.homfac_interval > 0.0) || rt.homfac_interval > duration) {
    throw ConfigError("rates.homfac_interval", "must be positive and within the duration");
  }
  const double fastest = std::min(rt.control_interval, rt.homfac_interval);
  if (!(rt.sensor_hz * fastest >= 1.0 - 1e-12)) {
    throw ConfigError("rates.sensor_hz", "sensor must be at least as fast as the controller");
  }
  if (!(rt.dt_inner > 0.0) || rt.dt_inner > fastest / 10.0 * (1.0 + 1e-12)) {
    throw ConfigError("rates.dt_inner", "must be positive and at most a tenth of the control interval");
  }
  if (!(rt.counts_per_turn > 0.0)) throw ConfigError("rates.counts_per_turn", "must be positive");

  try {
    LearningRates(learning.alpha_c, learning.alpha_a);
  } catch (const PreconditionError& e) {
    const bool critic = !(learning.alpha_c > 0.0 && learning.alpha_c < 1.0);
    throw ConfigError(critic ? "learning.alpha_c" : "learning.alpha_a", e.what());
  }
  if (!(learning.convergence_sigma >= 0.0)) {
    throw ConfigError("learning.convergence_sigma", "must be non-negative");
  }
  if (learning.convergence_window < 1) {
    throw ConfigError("learning.convergence_window", "must be at least 1");
  }
  if (!(learning.inversion_guard > 0.0)) {
    throw ConfigError("learning.inversion_guard", "must be positive");
  }
  if (!(actor_init.noise_std >= 0.0)) throw ConfigError("actor_init.noise_std", "must be >= 0");

  if (disturbance) {
    if (!(disturbance->window_fraction > 0.0 && disturbance->window_fraction <= 1.0)) {
      throw ConfigError("disturbance.window_fraction", "must lie in (0, 1]");
    }
    if (!(disturbance->variance >= 0.0)) throw ConfigError("disturbance.variance", "must be >= 0");
  }
  try {
    payload.schedule().validate();
  } catch (const PreconditionError& e) {
    throw ConfigError("payload", e.what());
  }
  try {
    // HOMFAC bounds are checked on a copy; the stored alpha is already normalised.
    HomfacConfig h = homfac;
    double sum = 0.0;
    for (double a : h.alpha) sum += a;
    if (h.alpha.empty() || !(std::abs(sum - 1.0) < 1e-12)) {
      throw PreconditionError("alpha must be non-empty and sum to one");
    }
    if (!(h.eta > 0.0 && h.eta <= 2.0) || !(h.lambda > 0.0) || !(h.mu > 0.0) ||
        !(h.rho > 0.0 && h.rho <= 1.0) || !(h.epsilon_reset >= 0.0)) {
      throw PreconditionError("parameter outside its bounds");
    }
  } catch (const PreconditionError& e) {
    throw ConfigError("homfac", e.what());
  }

  for (std::size_t k = 0; k < joints.size(); ++k) {
    const JointConfig& j = joints[k];
    const std::string at = "joints[" + std::to_string(k + 1) + "]";
    try {
      j.plant_params().validate();
    } catch (const PreconditionError& e) {
      throw ConfigError(at + ".plant", e.what());
    }
    if (j.coupled_with < 0 || j.coupled_with > static_cast<int>(joints.size()) ||
        j.coupled_with == static_cast<int>(k + 1) ||
        (j.coupled_with > 0 && joints[j.coupled_with - 1].coupled_with != static_cast<int>(k + 1))) {
      throw ConfigError(at + ".plant.coupled_with", "must name another joint that names this one");
    }
    if (!(j.u_max > 0.0)) throw ConfigError(at + ".u_max", "must be positive");
    if (!std::isfinite(j.homfac_phi0) || j.homfac_phi0 == 0.0) {
      throw ConfigError(at + ".homfac_phi0", "must be non-zero");
    }
    try {
      j.critic_weights(learning.inversion_guard);
    } catch (const Error& e) {
      throw ConfigError(at + ".critic", e.what());
    }
    if (!(j.r > 0.0) || !std::isfinite(j.r)) throw ConfigError(at + ".r", "must be positive");
    try {
      j.cost_weights();
    } catch (const PreconditionError& e) {
      throw ConfigError(at + ".q", e.what());
    }
    try {
      j.trajectory.validate();
    } catch (const PreconditionError& e) {
      throw ConfigError(at + ".trajectory", e.what());
    }
    if (j.trajectory.duration != duration) {
      throw ConfigError(at + ".trajectory", "duration must equal the experiment duration");
    }
  }
}

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream where;
    where << e.source().begin;
    throw ConfigError(source, std::string(e.description()) + " at " + where.str());
  }

  ExperimentConfig c;
  Reader r(root, "");
  c.id = static_cast<int>(r.integer("id"));
  c.name = r.string("name", "");
  c.controller = from_name(kControllers, r.string("controller", "irl"), "controller");
  const std::int64_t seed = r.integer("seed");
  if (seed < 0) throw ConfigError("seed", "must be non-negative");
  c.seed = static_cast<std::uint64_t>(seed);
  c.duration = r.number("duration");

  if (r.has("rates")) {
    Reader t(r.table("rates"), "rates");
    c.rates.control_interval = t.number("control_interval", c.rates.control_interval);
    const std::int64_t steps = t.integer("steps", static_cast<std::int64_t>(c.rates.steps));
    if (steps < 1) throw ConfigError("rates.steps", "must be at least 1");
    c.rates.steps = static_cast<std::size_t>(steps);
    c.rates.sensor_hz = t.number("sensor_hz", c.rates.sensor_hz);
    c.rates.dt_inner = t.number("dt_inner", c.rates.dt_inner);
    c.rates.homfac_interval = t.number("homfac_interval", c.rates.homfac_interval);
    c.rates.counts_per_turn = t.number("counts_per_turn", c.rates.counts_per_turn);
    t.finish();
  }
  if (r.has("learning")) {
    Reader t(r.table("learning"), "learning");
    c.learning.alpha_c = t.number("alpha_c", c.learning.alpha_c);
    c.learning.alpha_a = t.number("alpha_a", c.learning.alpha_a);
    c.learning.residual = from_name(kResiduals, t.string("residual", "signed"), "learning.residual");
    c.learning.convergence_gate = t.boolean("convergence_gate", c.learning.convergence_gate);
    c.learning.convergence_sigma = t.number("convergence_sigma", c.learning.convergence_sigma);
    const std::int64_t window =
        t.integer("convergence_window", static_cast<std::int64_t>(c.learning.convergence_window));
    if (window < 1) throw ConfigError("learning.convergence_window", "must be at least 1");
    c.learning.convergence_window = static_cast<std::size_t>(window);
    c.learning.inversion_guard = t.number("inversion_guard", c.learning.inversion_guard);
    t.finish();
  }
  if (r.has("irl")) {
    Reader t(r.table("irl"), "irl");
    c.actuation_sign = t.number("actuation_sign", c.actuation_sign);
    t.finish();
  }
  if (r.has("actor_init")) {
    Reader t(r.table("actor_init"), "actor_init");
    c.actor_init.rule =
        from_name(kActorInits, t.string("rule", "greedy_plus_noise"), "actor_init.rule");
    c.actor_init.noise_std = t.number("noise_std", c.actor_init.noise_std);
    t.finish();
  }
  if (r.has("disturbance")) {
    Reader t(r.table("disturbance"), "disturbance");
    DisturbanceConfig d;
    d.window_fraction = t.number("window_fraction");
    d.variance = t.number("variance");
    t.finish();
    c.disturbance = d;
  }
  if (r.has("payload")) {
    Reader t(r.table("payload"), "payload");
    c.payload.kind = from_name(kPayloads, t.string("kind"), "payload.kind");
    switch (c.payload.kind) {
      case plant::PayloadKind::kNone:
        break;
      case plant::PayloadKind::kConstant:
        c.payload.mass_lb = t.number("mass_lb");
        break;
      case plant::PayloadKind::kStep:
        c.payload.mass_lb = t.number("mass_lb");
        c.payload.step_time = t.number("step_time");
        break;
      case plant::PayloadKind::kRamp:
        c.payload.mass_lb = t.number("mass_lb");
        c.payload.ramp_start = t.number("ramp_start");
        c.payload.ramp_end = t.number("ramp_end");
        break;
    }
    t.finish();
  }
  if (r.has("homfac")) {
    Reader t(r.table("homfac"), "homfac");
    if (t.has("alpha")) c.homfac.alpha = t.numbers("alpha");
    c.homfac.eta = t.number("eta", c.homfac.eta);
    c.homfac.lambda = t.number("lambda", c.homfac.lambda);
    c.homfac.mu = t.number("mu", c.homfac.mu);
    c.homfac.rho = t.number("rho", c.homfac.rho);
    c.homfac.epsilon_reset = t.number("epsilon_reset", c.homfac.epsilon_reset);
    c.homfac.angles_in_degrees = t.boolean("angles_in_degrees", c.homfac.angles_in_degrees);
    t.finish();
    double sum = 0.0;
    for (double a : c.homfac.alpha) {
      if (!(a >= 0.0)) throw ConfigError("homfac.alpha", "entries must be non-negative");
      sum += a;
    }
    if (!(sum > 0.0)) throw ConfigError("homfac.alpha", "must have a positive sum");
    for (double& a : c.homfac.alpha) a /= sum;
  }

  const toml::node* jn = r.node("joints");
  const toml::array* joints = jn != nullptr ? jn->as_array() : nullptr;
  if (joints == nullptr || !joints->is_array_of_tables()) {
    throw ConfigError("joints", "expected one or more [[joints]] tables");
  }
  for (std::size_t k = 0; k < joints->size(); ++k) {
    Reader jr(*joints->get(k)->as_table(), "joints[" + std::to_string(k + 1) + "]");
    c.joints.push_back(read_joint(jr, c.duration));
  }
  r.finish();
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), "cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

std::string serialize_config(const ExperimentConfig& c) {
  toml::table root;
  root.insert("id", c.id);
  root.insert("name", c.name);
  root.insert("controller", controller_name(c.controller));
  root.insert("seed", static_cast<std::int64_t>(c.seed));
  root.insert("duration", c.duration);

  root.insert("rates", toml::table{
                           {"control_interval", c.rates.control_interval},
                           {"steps", static_cast<std::int64_t>(c.rates.steps)},
                           {"sensor_hz", c.rates.sensor_hz},
                           {"dt_inner", c.rates.dt_inner},
                           {"homfac_interval", c.rates.homfac_interval},
                           {"counts_per_turn", c.rates.counts_per_turn},
                       });
  root.insert("learning", toml::table{
                              {"alpha_c", c.learning.alpha_c},
                              {"alpha_a", c.learning.alpha_a},
                              {"residual", to_name(kResiduals, c.learning.residual)},
                              {"convergence_gate", c.learning.convergence_gate},
                              {"convergence_sigma", c.learning.convergence_sigma},
                              {"convergence_window",
                               static_cast<std::int64_t>(c.learning.convergence_window)},
                              {"inversion_guard", c.learning.inversion_guard},
                          });
  root.insert("irl", toml::table{{"actuation_sign", c.actuation_sign}});
  root.insert("actor_init", toml::table{
                                {"rule", to_name(kActorInits, c.actor_init.rule)},
                                {"noise_std", c.actor_init.noise_std},
                            });
  if (c.disturbance) {
    root.insert("disturbance", toml::table{
                                   {"window_fraction", c.disturbance->window_fraction},
                                   {"variance", c.disturbance->variance},
                               });
  }
  toml::table payload{{"kind", to_name(kPayloads, c.payload.kind)}};
  if (c.payload.kind != plant::PayloadKind::kNone) payload.insert("mass_lb", c.payload.mass_lb);
  if (c.payload.kind == plant::PayloadKind::kStep) payload.insert("step_time", c.payload.step_time);
  if (c.payload.kind == plant::PayloadKind::kRamp) {
    payload.insert("ramp_start", c.payload.ramp_start);
    payload.insert("ramp_end", c.payload.ramp_end);
  }
  root.insert("payload", std::move(payload));
  root.insert("homfac", toml::table{
                            {"alpha", vector_node(c.homfac.alpha)},
                            {"eta", c.homfac.eta},
                            {"lambda", c.homfac.lambda},
                            {"mu", c.homfac.mu},
                            {"rho", c.homfac.rho},
                            {"epsilon_reset", c.homfac.epsilon_reset},
                            {"angles_in_degrees", c.homfac.angles_in_degrees},
                        });

  toml::array joints;
  for (const JointConfig& j : c.joints) {
    toml::table t{
        {"name", j.name},
        {"initial_angle_deg", j.initial_angle_deg},
        {"u_max", j.u_max},
        {"homfac_phi0", j.homfac_phi0},
        {"actor_noise", j.actor_noise},
        {"gains", vector_node(j.gains)},
        {"critic", matrix_node(j.critic)},
        {"q", matrix_node(j.q)},
        {"r", j.r},
    };
    t.insert("plant", toml::table{
                          {"inertia_base", j.inertia_base},
                          {"link_mass", j.link_mass},
                          {"link_length", j.link_length},
                          {"viscous_friction", j.viscous_friction},
                          {"gravity_gain", j.gravity_gain},
                          {"actuator_gain", j.actuator_gain},
                          {"coupling_gain", j.coupling_gain},
                          {"rest_angle_deg", j.rest_angle_deg},
                          {"coupled_with", static_cast<std::int64_t>(j.coupled_with)},
                      });
    t.insert("trajectory", trajectory_node(j.trajectory));
    joints.push_back(std::move(t));
  }
  root.insert("joints", std::move(joints));

  std::ostringstream out;
  out << root << '\n';
  return out.str();
}

const char* controller_name(ControllerKind kind) { return to_name(kControllers, kind); }

ControllerKind controller_from_name(const std::string& name) {
  return from_name(kControllers, name, "controller");
}

}  // namespace irltrack::harness
