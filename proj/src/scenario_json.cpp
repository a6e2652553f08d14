#include "smcquad/scenario_json.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "smcquad/errors.hpp"

namespace smcquad {

namespace {

using nlohmann::json;

// Wraps one JSON object, tracking which keys get consumed so leftovers can
// be reported as errors instead of silently ignored typos.
class ObjectReader {
 public:
  ObjectReader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) {
      throw ParseError(path_ + ": expected an object");
    }
  }

  bool has(const char* key) const { return node_.contains(key); }

  double number(const char* key, double fallback) {
    if (!take(key)) return fallback;
    return as_number(node_.at(key), member(key));
  }

  bool boolean(const char* key, bool fallback) {
    if (!take(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_boolean()) throw ParseError(member(key) + ": expected a boolean");
    return v.get<bool>();
  }

  std::uint64_t unsigned_integer(const char* key, std::uint64_t fallback) {
    if (!take(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_number_unsigned()) {
      throw ParseError(member(key) + ": expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }

  std::string text(const char* key) {
    if (!take(key)) throw ParseError(member(key) + ": required string missing");
    const json& v = node_.at(key);
    if (!v.is_string()) throw ParseError(member(key) + ": expected a string");
    return v.get<std::string>();
  }

  std::vector<double> number_array(const char* key) {
    if (!take(key)) throw ParseError(member(key) + ": required array missing");
    const json& v = node_.at(key);
    if (!v.is_array()) throw ParseError(member(key) + ": expected an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(as_number(v[i], member(key) + "[" + std::to_string(i) + "]"));
    }
    return out;
  }

  std::optional<ObjectReader> object(const char* key) {
    if (!take(key)) return std::nullopt;
    return ObjectReader(node_.at(key), member(key));
  }

  /// Call after consuming everything legitimate.
  void reject_unknown_keys() const {
    for (const auto& [key, _] : node_.items()) {
      if (!consumed_.count(key)) {
        throw ParseError(member(key.c_str()) + ": unknown key");
      }
    }
  }

  const std::string& path() const { return path_; }

 private:
  bool take(const char* key) {
    consumed_.insert(key);
    return node_.contains(key);
  }

  std::string member(const char* key) const { return path_ + "." + key; }

  static double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) throw ParseError(where + ": expected a number");
    return v.get<double>();
  }

  const json& node_;
  std::string path_;
  std::set<std::string> consumed_;
};

ReferenceProgram parse_reference(ObjectReader reader, const ReferenceProgram& fallback) {
  ReferenceProgram out = fallback;
  const std::string type = reader.text("type");
  if (type == "constant") {
    out.kind = ReferenceKind::Constant;
    out.value = reader.number("value", 0.0);
  } else if (type == "step") {
    out.kind = ReferenceKind::SmoothedStep;
    out.step_t0 = reader.number("t0", 0.0);
    out.step_from = reader.number("from", 0.0);
    out.step_to = reader.number("to", 0.0);
    out.step_rise = reader.number("rise_time", 1.0);
  } else if (type == "sinusoid") {
    out.kind = ReferenceKind::Sinusoid;
    out.amplitude = reader.number("amplitude", 0.0);
    out.frequency_hz = reader.number("frequency_hz", 0.0);
    out.phase = reader.number("phase", 0.0);
  } else {
    throw ParseError(reader.path() + ".type: expected constant | step | sinusoid, got '" +
                     type + "'");
  }
  reader.reject_unknown_keys();
  return out;
}

BodyAxis parse_axis(const std::string& name, const std::string& where) {
  if (name == "x") return BodyAxis::X;
  if (name == "y") return BodyAxis::Y;
  if (name == "z") return BodyAxis::Z;
  if (name == "phi") return BodyAxis::Phi;
  if (name == "theta") return BodyAxis::Theta;
  if (name == "psi") return BodyAxis::Psi;
  throw ParseError(where + ": expected x | y | z | phi | theta | psi, got '" + name + "'");
}

DisturbanceProfile parse_disturbance(ObjectReader reader) {
  DisturbanceProfile out;
  const std::string type = reader.text("type");
  if (type == "none") {
    out.kind = DisturbanceKind::None;
  } else if (type == "step") {
    out.kind = DisturbanceKind::Step;
    out.axis = parse_axis(reader.text("axis"), reader.path() + ".axis");
    out.t0 = reader.number("t0", 0.0);
    out.magnitude = reader.number("magnitude", 0.0);
  } else if (type == "impulse") {
    out.kind = DisturbanceKind::Impulse;
    out.axis = parse_axis(reader.text("axis"), reader.path() + ".axis");
    out.t0 = reader.number("t0", 0.0);
    out.magnitude = reader.number("magnitude", 0.0);
    out.width = reader.number("width", 0.1);
  } else if (type == "sinusoid") {
    out.kind = DisturbanceKind::Sinusoid;
    out.axis = parse_axis(reader.text("axis"), reader.path() + ".axis");
    out.amplitude = reader.number("amplitude", 0.0);
    out.frequency_hz = reader.number("frequency_hz", 0.0);
    out.phase = reader.number("phase", 0.0);
  } else {
    throw ParseError(reader.path() + ".type: expected none | step | sinusoid | impulse, got '" +
                     type + "'");
  }
  reader.reject_unknown_keys();
  return out;
}

MassSchedule parse_mass(ObjectReader reader, double nominal_mass) {
  MassSchedule out;
  out.value = nominal_mass;
  const std::string type = reader.text("type");
  if (type == "constant") {
    out.kind = MassScheduleKind::Constant;
    out.value = reader.number("value", nominal_mass);
  } else if (type == "steps") {
    out.kind = MassScheduleKind::Steps;
    out.value = reader.number("initial", nominal_mass);
    out.times = reader.number_array("times");
    out.values = reader.number_array("values");
  } else if (type == "ramp") {
    out.kind = MassScheduleKind::Ramp;
    out.ramp_t0 = reader.number("t0", 0.0);
    out.ramp_t1 = reader.number("t1", 1.0);
    out.ramp_from = reader.number("from", nominal_mass);
    out.ramp_to = reader.number("to", nominal_mass);
  } else {
    throw ParseError(reader.path() + ".type: expected constant | steps | ramp, got '" + type +
                     "'");
  }
  reader.reject_unknown_keys();
  return out;
}

AxisControllerConfig parse_axis_controller(ObjectReader reader,
                                           const AxisControllerConfig& fallback) {
  AxisControllerConfig out = fallback;
  out.lambda = reader.number("lambda", fallback.lambda);
  out.k = reader.number("k", fallback.k);
  reader.reject_unknown_keys();
  return out;
}

ObserverAxisConfig parse_observer_axis(ObjectReader reader, const ObserverAxisConfig& fallback) {
  ObserverAxisConfig out = fallback;
  if (reader.has("alpha") || reader.has("beta")) {
    out.gains.alpha = reader.number("alpha", fallback.gains.alpha);
    out.gains.beta = reader.number("beta", fallback.gains.beta);
    out.gains.f_plus = reader.number("f_plus", fallback.gains.f_plus);
  } else if (reader.has("f_plus")) {
    out.gains = suggest_gains(reader.number("f_plus", fallback.gains.f_plus));
  }
  if (reader.has("initial")) {
    const std::vector<double> init = reader.number_array("initial");
    if (init.size() != 2) {
      throw ParseError(reader.path() + ".initial: expected [x1_hat, x2_hat]");
    }
    out.initial = std::array<double, 2>{init[0], init[1]};
  }
  reader.reject_unknown_keys();
  return out;
}

Scenario parse_scenario_root(const json& root, const std::string& origin) {
  if (root.is_null()) {
    Scenario sc;
    sc.validate();
    return sc;
  }

  ObjectReader reader(root, origin);
  Scenario sc;

  sc.duration = reader.number("duration", sc.duration);
  sc.dt = reader.number("dt", sc.dt);
  sc.seed = reader.unsigned_integer("seed", sc.seed);

  if (auto params = reader.object("params")) {
    sc.params.m = params->number("m", sc.params.m);
    sc.params.l = params->number("l", sc.params.l);
    sc.params.i_xx = params->number("i_xx", sc.params.i_xx);
    sc.params.i_yy = params->number("i_yy", sc.params.i_yy);
    sc.params.i_zz = params->number("i_zz", sc.params.i_zz);
    sc.params.d = params->number("d", sc.params.d);
    sc.params.b = params->number("b", sc.params.b);
    sc.params.j_r = params->number("j_r", sc.params.j_r);
    sc.params.g = params->number("g", sc.params.g);
    params->reject_unknown_keys();
  }

  if (auto initial = reader.object("initial")) {
    RigidBodyState& s = sc.initial_state;
    s.x = initial->number("x", 0.0);
    s.y = initial->number("y", 0.0);
    s.z = initial->number("z", 0.0);
    s.phi = initial->number("phi", 0.0);
    s.theta = initial->number("theta", 0.0);
    s.psi = initial->number("psi", 0.0);
    s.x_dot = initial->number("x_dot", 0.0);
    s.y_dot = initial->number("y_dot", 0.0);
    s.z_dot = initial->number("z_dot", 0.0);
    s.phi_dot = initial->number("phi_dot", 0.0);
    s.theta_dot = initial->number("theta_dot", 0.0);
    s.psi_dot = initial->number("psi_dot", 0.0);
    initial->reject_unknown_keys();
  }

  if (auto reference = reader.object("reference")) {
    if (auto axis = reference->object("z")) sc.ref_z = parse_reference(std::move(*axis), sc.ref_z);
    if (auto axis = reference->object("phi")) {
      sc.ref_phi = parse_reference(std::move(*axis), sc.ref_phi);
    }
    if (auto axis = reference->object("theta")) {
      sc.ref_theta = parse_reference(std::move(*axis), sc.ref_theta);
    }
    if (auto axis = reference->object("psi")) {
      sc.ref_psi = parse_reference(std::move(*axis), sc.ref_psi);
    }
    reference->reject_unknown_keys();
  }

  if (auto disturbance = reader.object("disturbance")) {
    sc.disturbance = parse_disturbance(std::move(*disturbance));
  }
  if (auto mass = reader.object("mass")) {
    sc.mass = parse_mass(std::move(*mass), sc.params.m);
  } else {
    sc.mass.value = sc.params.m;
  }

  if (auto noise = reader.object("noise")) {
    sc.noise.z = noise->number("z", 0.0);
    sc.noise.phi = noise->number("phi", 0.0);
    sc.noise.theta = noise->number("theta", 0.0);
    sc.noise.psi = noise->number("psi", 0.0);
    noise->reject_unknown_keys();
  }

  if (auto controller = reader.object("controller")) {
    if (auto axis = controller->object("z")) {
      sc.controller.z = parse_axis_controller(std::move(*axis), sc.controller.z);
    }
    if (auto axis = controller->object("phi")) {
      sc.controller.phi = parse_axis_controller(std::move(*axis), sc.controller.phi);
    }
    if (auto axis = controller->object("theta")) {
      sc.controller.theta = parse_axis_controller(std::move(*axis), sc.controller.theta);
    }
    if (auto axis = controller->object("psi")) {
      sc.controller.psi = parse_axis_controller(std::move(*axis), sc.controller.psi);
    }
    sc.controller.eps_tilt = controller->number("eps_tilt", sc.controller.eps_tilt);
    if (controller->has("u1_max")) {
      sc.controller.u1_max = controller->number("u1_max", 0.0);
    }
    controller->reject_unknown_keys();
  }

  if (auto adaptation = reader.object("adaptation")) {
    sc.adaptation.enabled = adaptation->boolean("enabled", sc.adaptation.enabled);
    sc.adaptation.m_hat0 = adaptation->number("m_hat0", 0.7 * sc.params.m);
    sc.adaptation.gamma = adaptation->number("gamma", sc.adaptation.gamma);
    sc.adaptation.m_min = adaptation->number("m_min", sc.adaptation.m_min);
    sc.adaptation.m_max = adaptation->number("m_max", sc.adaptation.m_max);
    adaptation->reject_unknown_keys();
  } else {
    sc.adaptation.m_hat0 = 0.7 * sc.params.m;
  }

  if (auto observer = reader.object("observer")) {
    sc.observer.in_loop = observer->boolean("in_loop", sc.observer.in_loop);
    sc.observer.t_obs = observer->number("t_obs", sc.observer.t_obs);
    if (auto axis = observer->object("z")) {
      sc.observer.z = parse_observer_axis(std::move(*axis), sc.observer.z);
    }
    if (auto axis = observer->object("phi")) {
      sc.observer.phi = parse_observer_axis(std::move(*axis), sc.observer.phi);
    }
    if (auto axis = observer->object("theta")) {
      sc.observer.theta = parse_observer_axis(std::move(*axis), sc.observer.theta);
    }
    if (auto axis = observer->object("psi")) {
      sc.observer.psi = parse_observer_axis(std::move(*axis), sc.observer.psi);
    }
    observer->reject_unknown_keys();
  }

  if (auto limits = reader.object("limits")) {
    sc.limits.w_max = limits->number("w_max", sc.limits.w_max);
    sc.limits.angle_guard = limits->number("angle_guard", sc.limits.angle_guard);
    limits->reject_unknown_keys();
  }

  reader.reject_unknown_keys();
  sc.validate();
  return sc;
}

}  // namespace

Scenario parse_scenario_text(const std::string& text, const std::string& origin) {
  // Whitespace-only input means "all defaults".
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    Scenario sc;
    sc.validate();
    return sc;
  }
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  return parse_scenario_root(root, origin);
}

Scenario parse_scenario(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw IoError("parse_scenario: cannot open " + path.string());
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse_scenario_text(buffer.str(), path.string());
}

}  // namespace smcquad
