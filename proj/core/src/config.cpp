#include "phc/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>

#include "json.hpp"

#include "phc/errors.hpp"

namespace phc {

using nlohmann::json;

void RunConfig::validate() const {
  heat.validate();
  fluid.validate();
  sim.validate();
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (!(flux_scale > 0.0)) throw ConfigError("coupling.flux_scale must be positive");
  if (!(params.t_cold > 0.0) || !(params.t_hot > 0.0) || !(params.t_ext > 0.0))
    throw MaterialError("scenario_params temperatures must be positive");
  if (!(params.pulse_width > 0.0)) throw ConfigError("scenario_params.pulse_width must be positive");
  if (!(std::abs(params.pulse_amplitude) < 0.5)) throw ConfigError("scenario_params.pulse_amplitude must be below 0.5");
  if (params.acoustic_cells < 8) throw ConfigError("scenario_params.acoustic_cells must be >= 8");
  if (geometry.n_fluid < 1) throw ConfigError("geometry.n_fluid must be >= 1");
  if (geometry.n_ax != geometry.n_fluid) {
    throw CouplingError("coupling-incompatibility: geometry.n_ax = " + std::to_string(geometry.n_ax) +
                        " but geometry.n_fluid = " + std::to_string(geometry.n_fluid) +
                        "; the solid and channel axial meshes must match");
  }
}

namespace {

class Reader {
 public:
  Reader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(where() + ": expected an object");
  }

  template <class T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    if (it == obj_.end()) return;
    try {
      if constexpr (std::is_same_v<T, double>) {
        if (!it->is_number()) throw ConfigError("");
        out = it->template get<double>();
      } else if constexpr (std::is_same_v<T, int>) {
        if (!it->is_number_integer()) throw ConfigError("");
        out = it->template get<int>();
      } else if constexpr (std::is_same_v<T, std::uint64_t>) {
        if (!it->is_number_unsigned()) throw ConfigError("");
        out = it->template get<std::uint64_t>();
      } else {
        if (!it->is_string()) throw ConfigError("");
        out = it->template get<std::string>();
      }
    } catch (const ConfigError&) {
      throw ConfigError(field(key) + ": expected " + type_name<T>() + ", got " + it->dump());
    }
  }

  const json* block(const char* key) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  std::string field(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(field(it.key().c_str()) + ": unknown key");
    }
  }

 private:
  template <class T>
  static const char* type_name() {
    if constexpr (std::is_same_v<T, double>) return "a number";
    else if constexpr (std::is_same_v<T, int>) return "an integer";
    else if constexpr (std::is_same_v<T, std::uint64_t>) return "a non-negative integer";
    else return "a string";
  }
  std::string where() const { return path_.empty() ? "config" : path_; }

  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

}  // namespace

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // what() reads "[json.exception.parse_error.101] parse error at line L, column C: ..."
    std::string msg = e.what();
    const auto pos = msg.find("] ");
    if (pos != std::string::npos) msg = msg.substr(pos + 2);
    throw ConfigError("config " + msg);
  }

  RunConfig cfg;
  Reader top(doc, "");
  top.get("scenario", cfg.scenario);
  top.get("seed", cfg.seed);
  top.get("trials", cfg.trials);
  top.get("output_dir", cfg.output_dir);

  if (const json* g = top.block("geometry")) {
    Reader r(*g, "geometry");
    auto& geo = cfg.geometry;
    r.get("a", geo.a);
    r.get("b", geo.b);
    r.get("circumference", geo.circumference);
    r.get("depth", geo.depth);
    r.get("n_ax", geo.n_ax);
    r.get("n_az", geo.n_az);
    r.get("n_th", geo.n_th);
    r.get("n_fluid", geo.n_fluid);
    r.finish();
  }
  if (const json* h = top.block("heat")) {
    Reader r(*h, "heat");
    r.get("rho", cfg.heat.rho);
    r.get("c", cfg.heat.c);
    r.get("lambda", cfg.heat.lambda);
    r.get("t_ref", cfg.heat.t_ref);
    r.finish();
  }
  if (const json* f = top.block("fluid")) {
    Reader r(*f, "fluid");
    r.get("r_gas", cfg.fluid.r_gas);
    r.get("c_v", cfg.fluid.c_v);
    r.get("friction", cfg.fluid.friction);
    r.get("phi_ref", cfg.fluid.phi_ref);
    r.get("s_ref", cfg.fluid.s_ref);
    r.get("t_ref", cfg.fluid.t_ref);
    r.finish();
  }
  if (const json* s = top.block("sim")) {
    Reader r(*s, "sim");
    r.get("dt", cfg.sim.dt);
    r.get("t_end", cfg.sim.t_end);
    r.get("newton_tol", cfg.sim.newton_tol);
    r.get("newton_max_iters", cfg.sim.newton_max_iters);
    r.get("output_every", cfg.sim.output_every);
    r.finish();
  }
  if (const json* c = top.block("coupling")) {
    Reader r(*c, "coupling");
    r.get("flux_scale", cfg.flux_scale);
    r.finish();
  }
  if (const json* p = top.block("scenario_params")) {
    Reader r(*p, "scenario_params");
    r.get("t_cold", cfg.params.t_cold);
    r.get("t_hot", cfg.params.t_hot);
    r.get("t_ext", cfg.params.t_ext);
    r.get("pulse_amplitude", cfg.params.pulse_amplitude);
    r.get("pulse_width", cfg.params.pulse_width);
    r.get("acoustic_cells", cfg.params.acoustic_cells);
    r.finish();
  }
  top.finish();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string to_json(const RunConfig& cfg) {
  const auto& g = cfg.geometry;
  json doc = {
      {"scenario", cfg.scenario},
      {"seed", cfg.seed},
      {"trials", cfg.trials},
      {"output_dir", cfg.output_dir},
      {"geometry",
       {{"a", g.a}, {"b", g.b}, {"circumference", g.circumference}, {"depth", g.depth}, {"n_ax", g.n_ax},
        {"n_az", g.n_az}, {"n_th", g.n_th}, {"n_fluid", g.n_fluid}}},
      {"heat", {{"rho", cfg.heat.rho}, {"c", cfg.heat.c}, {"lambda", cfg.heat.lambda}, {"t_ref", cfg.heat.t_ref}}},
      {"fluid",
       {{"r_gas", cfg.fluid.r_gas}, {"c_v", cfg.fluid.c_v}, {"friction", cfg.fluid.friction},
        {"phi_ref", cfg.fluid.phi_ref}, {"s_ref", cfg.fluid.s_ref}, {"t_ref", cfg.fluid.t_ref}}},
      {"sim",
       {{"dt", cfg.sim.dt}, {"t_end", cfg.sim.t_end}, {"newton_tol", cfg.sim.newton_tol},
        {"newton_max_iters", cfg.sim.newton_max_iters}, {"output_every", cfg.sim.output_every}}},
      {"coupling", {{"flux_scale", cfg.flux_scale}}},
      {"scenario_params",
       {{"t_cold", cfg.params.t_cold}, {"t_hot", cfg.params.t_hot}, {"t_ext", cfg.params.t_ext},
        {"pulse_amplitude", cfg.params.pulse_amplitude}, {"pulse_width", cfg.params.pulse_width},
        {"acoustic_cells", cfg.params.acoustic_cells}}},
  };
  return doc.dump(2);
}

}  // namespace phc
