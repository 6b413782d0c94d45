#include "hydrolfc/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hydrolfc/errors.hpp"

namespace hydrolfc::harness {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail("unknown key '" + it.key() + "' in " + where);
  }
}

const json& member(const json& obj, const std::string& where,
                   const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail("missing key '" + std::string(key) + "' in " + where);
  return *it;
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where + " must be a number");
  return v.get<double>();
}

void read_number(const json& obj, const std::string& where, const char* key,
                 double& out) {
  const auto it = obj.find(key);
  if (it != obj.end()) out = as_number(*it, where + "." + key);
}

void read_int(const json& obj, const std::string& where, const char* key,
              int& out) {
  const auto it = obj.find(key);
  if (it == obj.end()) return;
  if (!it->is_number_integer()) fail(where + "." + key + " must be an integer");
  out = it->get<int>();
}

void read_u64(const json& obj, const std::string& where, const char* key,
              std::uint64_t& out) {
  const auto it = obj.find(key);
  if (it == obj.end()) return;
  if (!it->is_number_unsigned() && !it->is_number_integer())
    fail(where + "." + key + " must be a non-negative integer");
  out = it->get<std::uint64_t>();
}

surrogate::Activation activation_from_name(const std::string& name) {
  if (name == "threshold-spike-rate")
    return surrogate::Activation::kThresholdSpikeRate;
  if (name == "sigmoid") return surrogate::Activation::kSigmoid;
  if (name == "identity") return surrogate::Activation::kIdentity;
  fail("unknown surrogate activation '" + name + "'");
}

const char* activation_name(surrogate::Activation a) {
  switch (a) {
    case surrogate::Activation::kThresholdSpikeRate:
      return "threshold-spike-rate";
    case surrogate::Activation::kSigmoid:
      return "sigmoid";
    case surrogate::Activation::kIdentity:
      return "identity";
  }
  return "threshold-spike-rate";
}

void parse_plant(const json& obj, Scenario& sc) {
  check_keys(obj, "plant",
             {"f_base_hz", "p_base_kw", "inertia_s", "damping_pu",
              "governor_tc_s", "water_tc_s", "dt_s", "turbine", "slc"});
  read_number(obj, "plant", "f_base_hz", sc.params.f_base_hz);
  read_number(obj, "plant", "p_base_kw", sc.params.p_base_kw);
  read_number(obj, "plant", "inertia_s", sc.params.inertia_s);
  read_number(obj, "plant", "damping_pu", sc.params.damping_pu);
  read_number(obj, "plant", "governor_tc_s", sc.params.governor_tc_s);
  read_number(obj, "plant", "water_tc_s", sc.params.water_tc_s);
  read_number(obj, "plant", "dt_s", sc.params.dt_s);
  if (const auto it = obj.find("turbine"); it != obj.end()) {
    check_keys(*it, "plant.turbine", {"flow_m3s", "head_m", "efficiency"});
    read_number(*it, "plant.turbine", "flow_m3s", sc.turbine.flow_m3s);
    read_number(*it, "plant.turbine", "head_m", sc.turbine.head_m);
    read_number(*it, "plant.turbine", "efficiency", sc.turbine.efficiency);
  }
  if (const auto it = obj.find("slc"); it != obj.end()) {
    check_keys(*it, "plant.slc", {"step_kw", "bits"});
    read_number(*it, "plant.slc", "step_kw", sc.ladder.step_kw);
    read_int(*it, "plant.slc", "bits", sc.ladder.bits);
  }
}

void parse_bounds(const json& obj, const std::string& where,
                  control::GainSet& g) {
  read_number(obj, where, "u_min", g.output_bounds.lo);
  read_number(obj, where, "u_max", g.output_bounds.hi);
  read_number(obj, where, "kp_min", g.kp_bounds.lo);
  read_number(obj, where, "kp_max", g.kp_bounds.hi);
  read_number(obj, where, "ki_min", g.ki_bounds.lo);
  read_number(obj, where, "ki_max", g.ki_bounds.hi);
  read_number(obj, where, "kd_min", g.kd_bounds.lo);
  read_number(obj, where, "kd_max", g.kd_bounds.hi);
}

void parse_controllers(const json& obj, Scenario& sc) {
  check_keys(obj, "controllers", {"pd", "pid-adaptive", "fuzzy-pd", "ga"});
  if (const auto it = obj.find("pd"); it != obj.end()) {
    check_keys(*it, "controllers.pd",
               {"kp", "kd", "u_min", "u_max"});
    read_number(*it, "controllers.pd", "kp", sc.pd_gains.kp);
    read_number(*it, "controllers.pd", "kd", sc.pd_gains.kd);
    parse_bounds(*it, "controllers.pd", sc.pd_gains);
  }
  if (const auto it = obj.find("pid-adaptive"); it != obj.end()) {
    check_keys(*it, "controllers.pid-adaptive",
               {"kp", "ki", "kd", "mu", "u_min", "u_max", "kp_min", "kp_max",
                "ki_min", "ki_max", "kd_min", "kd_max"});
    read_number(*it, "controllers.pid-adaptive", "kp", sc.pid_gains.kp);
    read_number(*it, "controllers.pid-adaptive", "ki", sc.pid_gains.ki);
    read_number(*it, "controllers.pid-adaptive", "kd", sc.pid_gains.kd);
    read_number(*it, "controllers.pid-adaptive", "mu", sc.pid_gains.mu);
    parse_bounds(*it, "controllers.pid-adaptive", sc.pid_gains);
  }
  if (const auto it = obj.find("fuzzy-pd"); it != obj.end()) {
    check_keys(*it, "controllers.fuzzy-pd",
               {"ge", "gce", "gu", "u_min", "u_max", "e_scale", "ec_scale",
                "u_scale", "genes"});
    read_number(*it, "controllers.fuzzy-pd", "ge", sc.fuzzy_gains.ge);
    read_number(*it, "controllers.fuzzy-pd", "gce", sc.fuzzy_gains.gce);
    read_number(*it, "controllers.fuzzy-pd", "gu", sc.fuzzy_gains.gu);
    parse_bounds(*it, "controllers.fuzzy-pd", sc.fuzzy_gains);
    read_number(*it, "controllers.fuzzy-pd", "e_scale", sc.scales.error);
    read_number(*it, "controllers.fuzzy-pd", "ec_scale", sc.scales.error_rate);
    read_number(*it, "controllers.fuzzy-pd", "u_scale", sc.scales.output);
    if (const auto g = it->find("genes"); g != it->end()) {
      if (!g->is_array() || g->size() != optim::Chromosome::kGeneCount)
        fail("controllers.fuzzy-pd.genes must be an array of 12 numbers");
      for (int i = 0; i < optim::Chromosome::kGeneCount; ++i)
        sc.genes.genes[i] = as_number((*g)[i], "controllers.fuzzy-pd.genes");
    }
  }
  if (const auto it = obj.find("ga"); it != obj.end()) {
    check_keys(*it, "controllers.ga",
               {"population", "elites", "crossover_rate", "mutation_rate",
                "mutation_sigma", "generations", "screen_ratio",
                "surrogate_hidden", "surrogate_activation",
                "surrogate_rate_gain", "surrogate_threshold"});
    read_int(*it, "controllers.ga", "population", sc.ga.config.population_size);
    read_int(*it, "controllers.ga", "elites", sc.ga.config.elite_count);
    read_number(*it, "controllers.ga", "crossover_rate",
                sc.ga.config.crossover_rate);
    read_number(*it, "controllers.ga", "mutation_rate",
                sc.ga.config.mutation_rate);
    read_number(*it, "controllers.ga", "mutation_sigma",
                sc.ga.config.mutation_sigma);
    read_int(*it, "controllers.ga", "generations", sc.ga.config.max_generations);
    read_number(*it, "controllers.ga", "screen_ratio", sc.ga.screen_ratio);
    read_int(*it, "controllers.ga", "surrogate_hidden", sc.ga.surrogate.hidden);
    if (const auto a = it->find("surrogate_activation"); a != it->end()) {
      if (!a->is_string()) fail("controllers.ga.surrogate_activation must be a string");
      sc.ga.surrogate.activation = activation_from_name(a->get<std::string>());
    }
    read_number(*it, "controllers.ga", "surrogate_rate_gain",
                sc.ga.surrogate.rate_gain);
    read_number(*it, "controllers.ga", "surrogate_threshold",
                sc.ga.surrogate.threshold);
  }
}

}  // namespace

const char* controller_name(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::kPd:
      return "pd";
    case ControllerKind::kPidAdaptive:
      return "pid-adaptive";
    case ControllerKind::kFuzzyPd:
      return "fuzzy-pd";
    case ControllerKind::kFuzzyPdGa:
      return "fuzzy-pd-ga";
    case ControllerKind::kFuzzyPdGaDsnn:
      return "fuzzy-pd-ga-dsnn";
  }
  return "pd";
}

ControllerKind controller_from_name(const std::string& name) {
  if (name == "pd") return ControllerKind::kPd;
  if (name == "pid-adaptive") return ControllerKind::kPidAdaptive;
  if (name == "fuzzy-pd") return ControllerKind::kFuzzyPd;
  if (name == "fuzzy-pd-ga") return ControllerKind::kFuzzyPdGa;
  if (name == "fuzzy-pd-ga-dsnn") return ControllerKind::kFuzzyPdGaDsnn;
  fail("unknown controller '" + name + "'");
}

bool controller_is_tuned(ControllerKind kind) {
  return kind == ControllerKind::kFuzzyPdGa ||
         kind == ControllerKind::kFuzzyPdGaDsnn;
}

void Scenario::validate() const {
  problem().validate();
  metric_options.validate();
  pd_gains.validate();
  pid_gains.validate();
  fuzzy_gains.validate();
  scales.validate();
  genes.validate();
  ga.config.validate();
  ga.surrogate.validate();
  if (!(ga.screen_ratio > 0.0 && ga.screen_ratio <= 1.0))
    throw ConfigError("ga.screen_ratio must lie in (0, 1]");
  if (threads < 0) throw ConfigError("threads must be >= 0");
}

sim::ClosedLoopProblem Scenario::problem() const {
  sim::ClosedLoopProblem pb;
  pb.params = params;
  pb.turbine = turbine;
  pb.ladder = ladder;
  pb.events = events;
  pb.options = options;
  return pb;
}

control::AnyController Scenario::make_controller(
    ControllerKind kind, const optim::Chromosome& with_genes) const {
  switch (kind) {
    case ControllerKind::kPd:
      return control::PdController(pd_gains);
    case ControllerKind::kPidAdaptive:
      return control::AdaptivePidController(pid_gains);
    case ControllerKind::kFuzzyPd:
    case ControllerKind::kFuzzyPdGa:
    case ControllerKind::kFuzzyPdGaDsnn:
      return control::FuzzyPdController(
          fuzzy::make_system(with_genes.genes, scales), fuzzy_gains);
  }
  throw ConfigError("unknown controller kind");
}

control::AnyController Scenario::make_controller() const {
  return make_controller(controller, genes);
}

optim::GaConfig Scenario::ga_config() const {
  optim::GaConfig cfg = ga.config;
  cfg.seed = seed;
  cfg.threads = threads;
  return cfg;
}

Scenario default_scenario() {
  Scenario sc;
  sc.seed = 1;
  sc.threads = 0;

  sc.pd_gains.kp = 0.04;
  sc.pd_gains.kd = 0.015;
  sc.pd_gains.output_bounds = {-1.0, 1.0};

  sc.pid_gains.kp = 0.04;
  sc.pid_gains.ki = 0.3;
  sc.pid_gains.kd = 0.01;
  sc.pid_gains.mu = 0.02;
  sc.pid_gains.kp_bounds = {0.0, 0.3};
  sc.pid_gains.ki_bounds = {0.0, 2.0};
  sc.pid_gains.kd_bounds = {0.0, 0.1};
  sc.pid_gains.output_bounds = {-1.0, 1.0};

  sc.fuzzy_gains.ge = 0.016;
  sc.fuzzy_gains.gce = 40.0;
  sc.fuzzy_gains.gu = 12.0;
  sc.fuzzy_gains.output_bounds = {-1.0, 1.0};

  return sc;
}

Scenario parse_scenario(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) fail("scenario root must be a JSON object");
  check_keys(root, "scenario",
             {"seed", "plant", "sim", "metrics", "load_events", "controller",
              "controllers"});

  Scenario sc = default_scenario();
  read_u64(root, "scenario", "seed", sc.seed);
  if (const auto it = root.find("plant"); it != root.end())
    parse_plant(*it, sc);
  if (const auto it = root.find("sim"); it != root.end()) {
    check_keys(*it, "sim",
               {"horizon_s", "pll_tau_s", "blowup_df_pu", "divergence_penalty",
                "threads"});
    read_number(*it, "sim", "horizon_s", sc.options.horizon_s);
    read_number(*it, "sim", "pll_tau_s", sc.options.pll_tau_s);
    read_number(*it, "sim", "blowup_df_pu", sc.options.blowup_df_pu);
    read_number(*it, "sim", "divergence_penalty",
                sc.options.divergence_penalty);
    read_int(*it, "sim", "threads", sc.threads);
  }
  if (const auto it = root.find("metrics"); it != root.end()) {
    check_keys(*it, "metrics", {"settle_band_hz", "tail_fraction"});
    read_number(*it, "metrics", "settle_band_hz",
                sc.metric_options.settle_band_hz);
    read_number(*it, "metrics", "tail_fraction",
                sc.metric_options.tail_fraction);
  }
  if (const auto it = root.find("load_events"); it != root.end()) {
    if (!it->is_array()) fail("load_events must be an array");
    for (const auto& ev : *it) {
      check_keys(ev, "load_events[]", {"time_s", "delta_kw"});
      sim::LoadEvent e;
      e.time_s = as_number(member(ev, "load_events[]", "time_s"),
                           "load_events[].time_s");
      e.delta_kw = as_number(member(ev, "load_events[]", "delta_kw"),
                             "load_events[].delta_kw");
      sc.events.push_back(e);
    }
  }
  if (const auto it = root.find("controller"); it != root.end()) {
    if (!it->is_string()) fail("controller must be a string");
    sc.controller = controller_from_name(it->get<std::string>());
  }
  if (const auto it = root.find("controllers"); it != root.end())
    parse_controllers(*it, sc);

  try {
    sc.validate();
  } catch (const std::exception& e) {
    fail(std::string("invalid scenario: ") + e.what());
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open scenario file: " + file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string scenario_to_json(const Scenario& sc) {
  json root;
  root["seed"] = sc.seed;
  root["plant"] = {
      {"f_base_hz", sc.params.f_base_hz},
      {"p_base_kw", sc.params.p_base_kw},
      {"inertia_s", sc.params.inertia_s},
      {"damping_pu", sc.params.damping_pu},
      {"governor_tc_s", sc.params.governor_tc_s},
      {"water_tc_s", sc.params.water_tc_s},
      {"dt_s", sc.params.dt_s},
      {"turbine",
       {{"flow_m3s", sc.turbine.flow_m3s},
        {"head_m", sc.turbine.head_m},
        {"efficiency", sc.turbine.efficiency}}},
      {"slc", {{"step_kw", sc.ladder.step_kw}, {"bits", sc.ladder.bits}}},
  };
  root["sim"] = {
      {"horizon_s", sc.options.horizon_s},
      {"pll_tau_s", sc.options.pll_tau_s},
      {"blowup_df_pu", sc.options.blowup_df_pu},
      {"divergence_penalty", sc.options.divergence_penalty},
      {"threads", sc.threads},
  };
  root["metrics"] = {
      {"settle_band_hz", sc.metric_options.settle_band_hz},
      {"tail_fraction", sc.metric_options.tail_fraction},
  };
  json events = json::array();
  for (const auto& ev : sc.events)
    events.push_back({{"time_s", ev.time_s}, {"delta_kw", ev.delta_kw}});
  root["load_events"] = std::move(events);
  root["controller"] = controller_name(sc.controller);
  root["controllers"] = {
      {"pd",
       {{"kp", sc.pd_gains.kp},
        {"kd", sc.pd_gains.kd},
        {"u_min", sc.pd_gains.output_bounds.lo},
        {"u_max", sc.pd_gains.output_bounds.hi}}},
      {"pid-adaptive",
       {{"kp", sc.pid_gains.kp},
        {"ki", sc.pid_gains.ki},
        {"kd", sc.pid_gains.kd},
        {"mu", sc.pid_gains.mu},
        {"u_min", sc.pid_gains.output_bounds.lo},
        {"u_max", sc.pid_gains.output_bounds.hi},
        {"kp_min", sc.pid_gains.kp_bounds.lo},
        {"kp_max", sc.pid_gains.kp_bounds.hi},
        {"ki_min", sc.pid_gains.ki_bounds.lo},
        {"ki_max", sc.pid_gains.ki_bounds.hi},
        {"kd_min", sc.pid_gains.kd_bounds.lo},
        {"kd_max", sc.pid_gains.kd_bounds.hi}}},
      {"fuzzy-pd",
       {{"ge", sc.fuzzy_gains.ge},
        {"gce", sc.fuzzy_gains.gce},
        {"gu", sc.fuzzy_gains.gu},
        {"u_min", sc.fuzzy_gains.output_bounds.lo},
        {"u_max", sc.fuzzy_gains.output_bounds.hi},
        {"e_scale", sc.scales.error},
        {"ec_scale", sc.scales.error_rate},
        {"u_scale", sc.scales.output},
        {"genes", sc.genes.genes}}},
      {"ga",
       {{"population", sc.ga.config.population_size},
        {"elites", sc.ga.config.elite_count},
        {"crossover_rate", sc.ga.config.crossover_rate},
        {"mutation_rate", sc.ga.config.mutation_rate},
        {"mutation_sigma", sc.ga.config.mutation_sigma},
        {"generations", sc.ga.config.max_generations},
        {"screen_ratio", sc.ga.screen_ratio},
        {"surrogate_hidden", sc.ga.surrogate.hidden},
        {"surrogate_activation", activation_name(sc.ga.surrogate.activation)},
        {"surrogate_rate_gain", sc.ga.surrogate.rate_gain},
        {"surrogate_threshold", sc.ga.surrogate.threshold}}},
  };
  return root.dump(2) + "\n";
}

}  // namespace hydrolfc::harness
