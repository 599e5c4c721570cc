#include "ordet_tools/config.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "ordet/error.hpp"

namespace ordet::tools {

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::runtime_error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

namespace {

template <class E>
struct Names {
  E value;
  std::string_view name;
};

constexpr Names<Observation> kObservations[] = {
    {Observation::gaussian, "gaussian"},
    {Observation::gauss_pareto, "gauss_pareto"},
    {Observation::energy, "energy"}};
constexpr Names<SizeModelKind> kSizeModels[] = {
    {SizeModelKind::deterministic, "deterministic"},
    {SizeModelKind::mixed_poisson, "mixed_poisson"},
    {SizeModelKind::energy_stopped, "energy_stopped"}};
constexpr Names<Method> kMethods[] = {
    {Method::automatic, "auto"}, {Method::quadrature, "quadrature"}, {Method::montecarlo, "montecarlo"}};
constexpr Names<ThresholdKind> kRules[] = {
    {ThresholdKind::zero, "zero"}, {ThresholdKind::asymptotic, "asymptotic"}, {ThresholdKind::refined, "refined"}};
constexpr Names<FamilyKind> kFamilies[] = {{FamilyKind::gumbel, "gumbel"}, {FamilyKind::frechet, "frechet"}};
constexpr Names<PolicyKind> kPolicies[] = {
    {PolicyKind::identity, "identity"}, {PolicyKind::loglik, "llr"}, {PolicyKind::censoring, "censoring"}};

template <class E, std::size_t N>
std::string_view name_of(const Names<E> (&table)[N], E v) {
  for (const auto& n : table) {
    if (n.value == v) return n.name;
  }
  return "?";
}

template <class E, std::size_t N>
E parse_enum(const Names<E> (&table)[N], const std::string& key, const std::string& text) {
  std::string choices;
  for (const auto& n : table) {
    if (n.name == text) return n.value;
    choices += choices.empty() ? "" : ", ";
    choices += n.name;
  }
  throw ConfigError(key, "unknown value '" + text + "' (expected one of: " + choices + ")");
}

double parse_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError(key, "expected a finite number, got '" + text + "'");
  }
  return v;
}

std::int64_t parse_int(const std::string& key, const std::string& text) {
  std::int64_t v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec == std::errc() && ptr == end) return v;
  // Accept integral scientific notation such as 1e6.
  double d = 0.0;
  auto [dptr, dec] = std::from_chars(text.data(), end, d);
  if (dec == std::errc() && dptr == end && std::isfinite(d) && d == std::floor(d) && std::fabs(d) < 9.0e15) {
    return static_cast<std::int64_t>(d);
  }
  throw ConfigError(key, "expected an integer, got '" + text + "'");
}

std::uint64_t parse_seed(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(key, "expected an unsigned 64-bit integer, got '" + text + "'");
  }
  return v;
}

std::vector<std::int64_t> parse_grid(const std::string& key, const std::string& text) {
  std::vector<std::int64_t> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    std::istringstream words(token);
    std::string w;
    while (words >> w) out.push_back(parse_int(key, w));
  }
  if (out.empty()) throw ConfigError(key, "expected a comma-separated list of integers");
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::to_string(v);
}

std::string format_grid(const std::vector<std::int64_t>& grid) {
  std::string s;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(grid[i]);
  }
  return s;
}

struct Field {
  std::string name;
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

Field real(std::string name, double ExperimentConfig::*m) {
  return {name, [name, m](ExperimentConfig& c, const std::string& v) { c.*m = parse_double(name, v); },
          [m](const ExperimentConfig& c) { return format_double(c.*m); }};
}

template <class E, std::size_t N>
Field choice(std::string name, E ExperimentConfig::*m, const Names<E> (&table)[N]) {
  return {name, [name, m, &table](ExperimentConfig& c, const std::string& v) { c.*m = parse_enum(table, name, v); },
          [m, &table](const ExperimentConfig& c) { return std::string(name_of(table, c.*m)); }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      {"scenario", [](ExperimentConfig& c, const std::string& v) { c.scenario = v; },
       [](const ExperimentConfig& c) { return c.scenario; }},
      real("theta0", &ExperimentConfig::theta0),
      real("theta1", &ExperimentConfig::theta1),
      real("sigma", &ExperimentConfig::sigma),
      real("sigma_s", &ExperimentConfig::sigma_s),
      real("sigma_w", &ExperimentConfig::sigma_w),
      real("p", &ExperimentConfig::p),
      real("theta", &ExperimentConfig::theta),
      real("b", &ExperimentConfig::b),
      real("theta_c", &ExperimentConfig::theta_c),
      choice("observation", &ExperimentConfig::observation, kObservations),
      choice("policy", &ExperimentConfig::policy, kPolicies),
      choice("size_model", &ExperimentConfig::size_model, kSizeModels),
      real("eq", &ExperimentConfig::eq),
      real("delta", &ExperimentConfig::delta),
      {"nu_grid", [](ExperimentConfig& c, const std::string& v) { c.nu_grid = parse_grid("nu_grid", v); },
       [](const ExperimentConfig& c) { return format_grid(c.nu_grid); }},
      choice("threshold_rule", &ExperimentConfig::threshold_rule, kRules),
      real("alpha", &ExperimentConfig::alpha),
      choice("family", &ExperimentConfig::family, kFamilies),
      real("xi", &ExperimentConfig::xi),
      real("clock_delta", &ExperimentConfig::clock_delta),
      {"trials", [](ExperimentConfig& c, const std::string& v) { c.trials = parse_int("trials", v); },
       [](const ExperimentConfig& c) { return std::to_string(c.trials); }},
      {"seed", [](ExperimentConfig& c, const std::string& v) { c.seed = parse_seed("seed", v); },
       [](const ExperimentConfig& c) { return std::to_string(c.seed); }},
      choice("method", &ExperimentConfig::method, kMethods),
      {"output", [](ExperimentConfig& c, const std::string& v) { c.output = v; },
       [](const ExperimentConfig& c) { return c.output; }},
  };
  return table;
}

const Field* find_field(const std::string& key) {
  for (const auto& f : fields()) {
    if (f.name == key) return &f;
  }
  return nullptr;
}

void require(bool ok, const std::string& field, const std::string& message) {
  if (!ok) throw ConfigError(field, message);
}

double energy_sigma(const ExperimentConfig& c) { return std::hypot(c.sigma_s, c.sigma_w); }

}  // namespace

std::string_view to_string(Observation o) noexcept { return name_of(kObservations, o); }
std::string_view to_string(SizeModelKind s) noexcept { return name_of(kSizeModels, s); }
std::string_view to_string(Method m) noexcept { return name_of(kMethods, m); }
std::string_view to_string(ThresholdKind k) noexcept { return name_of(kRules, k); }
std::string_view to_string(FamilyKind k) noexcept { return name_of(kFamilies, k); }

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& f : fields()) k.push_back(f.name);
    return k;
  }();
  return keys;
}

void set_field(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  const Field* f = find_field(key);
  if (f == nullptr) throw ConfigError(key, "unknown key");
  f->set(cfg, value);
}

ExperimentConfig parse_config(std::istream& in) {
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI().from_config(in);
  } catch (const CLI::Error& e) {
    throw ConfigError("", std::string("malformed config: ") + e.what());
  }

  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& item : items) {
    if (!item.parents.empty()) {
      if (item.name == "++" || item.name == "--") continue;
      std::string full;
      for (const auto& p : item.parents) full += p + ".";
      throw ConfigError(full + item.name, "unknown key (sections and dotted keys are not allowed)");
    }
    if (find_field(item.name) == nullptr) throw ConfigError(item.name, "unknown key");
    if (item.inputs.empty()) throw ConfigError(item.name, "missing value");
    std::string value;
    if (item.name == "nu_grid") {
      for (std::size_t i = 0; i < item.inputs.size(); ++i) value += (i ? "," : "") + item.inputs[i];
    } else {
      if (item.inputs.size() != 1) throw ConfigError(item.name, "expected a single value");
      value = item.inputs.front();
    }
    for (const auto& [k, v] : pairs) {
      if (k == item.name) throw ConfigError(item.name, "duplicate key");
    }
    pairs.emplace_back(item.name, value);
  }

  auto scenario = std::find_if(pairs.begin(), pairs.end(), [](const auto& kv) { return kv.first == "scenario"; });
  if (scenario == pairs.end()) throw ConfigError("scenario", "required key is missing");
  ExperimentConfig cfg = find_scenario(scenario->second).defaults;
  for (const auto& [k, v] : pairs) set_field(cfg, k, v);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  return parse_config(in);
}

std::vector<std::pair<std::string, std::string>> config_items(const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& f : fields()) out.emplace_back(f.name, f.get(cfg));
  return out;
}

std::string to_ini(const ExperimentConfig& cfg) {
  std::string s;
  for (const auto& [k, v] : config_items(cfg)) s += k + " = " + v + "\n";
  return s;
}

bool quadrature_possible(const ExperimentConfig& cfg) {
  return cfg.policy != PolicyKind::censoring && cfg.observation != Observation::energy &&
         cfg.size_model != SizeModelKind::energy_stopped && cfg.clock_delta == 0.0;
}

Method resolved_method(const ExperimentConfig& cfg) {
  if (cfg.method != Method::automatic) return cfg.method;
  return quadrature_possible(cfg) ? Method::quadrature : Method::montecarlo;
}

void validate(const ExperimentConfig& cfg) {
  find_scenario(cfg.scenario);

  require(cfg.sigma > 0.0, "sigma", "must be > 0");
  switch (cfg.observation) {
    case Observation::gaussian:
      require(cfg.theta1 > 0.0 || cfg.policy != PolicyKind::loglik, "theta1", "must be > 0 for the llr policy");
      break;
    case Observation::gauss_pareto:
      require(cfg.p > 0.0 && cfg.p < 1.0, "p", "must lie in (0, 1)");
      require(cfg.theta > 0.0, "theta", "must be > 0");
      require(cfg.b > 0.0, "b", "must be > 0");
      require(cfg.policy != PolicyKind::loglik, "policy", "llr is only available for gaussian and energy observations");
      break;
    case Observation::energy:
      require(cfg.sigma_s > 0.0, "sigma_s", "must be > 0");
      require(cfg.sigma_w > 0.0, "sigma_w", "must be > 0");
      require(cfg.size_model == SizeModelKind::energy_stopped, "size_model",
              "energy observations require energy_stopped");
      require(std::fabs(cfg.sigma - energy_sigma(cfg)) <= 1e-12 * energy_sigma(cfg), "sigma",
              "must equal sqrt(sigma_s^2 + sigma_w^2) = " + format_double(energy_sigma(cfg)) +
                  " for energy observations");
      break;
  }
  if (cfg.size_model == SizeModelKind::energy_stopped) {
    require(cfg.observation == Observation::energy, "observation", "energy_stopped requires energy observations");
  }
  if (cfg.policy == PolicyKind::loglik) {
    require(cfg.theta0 >= 0.0, "theta0", "must be >= 0 for the llr policy");
    require(cfg.theta1 > 0.0, "theta1", "must be > 0 for the llr policy");
  }
  if (cfg.policy == PolicyKind::censoring) require(cfg.theta_c > 0.0, "theta_c", "must be > 0");

  if (cfg.size_model == SizeModelKind::mixed_poisson) {
    require(cfg.eq > 0.0 && cfg.eq <= 1.0, "eq", "must lie in (0, 1]");
    require(cfg.delta >= 0.0 && cfg.delta < 2.0 * cfg.eq, "delta", "must lie in [0, 2*eq)");
    require(cfg.eq + cfg.delta / 2.0 <= 1.0, "delta", "eq + delta/2 must not exceed 1");
  }

  require(!cfg.nu_grid.empty(), "nu_grid", "must not be empty");
  for (std::size_t i = 0; i < cfg.nu_grid.size(); ++i) {
    require(cfg.nu_grid[i] >= 1, "nu_grid", "entries must be >= 1");
    require(i == 0 || cfg.nu_grid[i] > cfg.nu_grid[i - 1], "nu_grid", "must be strictly increasing");
  }

  if (cfg.threshold_rule != ThresholdKind::zero) {
    require(cfg.alpha > 0.0 && cfg.alpha < 1.0, "alpha", "must lie in (0, 1)");
  }
  if (cfg.threshold_rule == ThresholdKind::asymptotic) {
    require(cfg.nu_grid.front() >= 2, "nu_grid", "the asymptotic rule needs nu >= 2");
  }
  if (cfg.family == FamilyKind::frechet) require(cfg.xi > 0.0, "xi", "must be > 0");
  require(cfg.clock_delta >= 0.0, "clock_delta", "must be >= 0");
  require(cfg.trials >= 1, "trials", "must be >= 1");
  require(!cfg.output.empty(), "output", "must not be empty");
  if (cfg.method == Method::quadrature) {
    require(quadrature_possible(cfg), "method",
            "quadrature needs a continuous policy, data-independent size and clock_delta = 0");
  }

  // Library preconditions not covered above.
  try {
    const Policy policy = make_policy(cfg);
    for (std::int64_t nu : cfg.nu_grid) ordet::validate(make_size_model(cfg, nu));
  } catch (const ordet::Error& e) {
    throw ConfigError("", e.what());
  }
}

namespace {

LawPair observation_laws(const ExperimentConfig& cfg) {
  switch (cfg.observation) {
    case Observation::gauss_pareto: {
      const ScalarLaw w = gauss_pareto_mixture(cfg.p, cfg.sigma, cfg.theta, cfg.b);
      return {negate(w), w};
    }
    case Observation::energy:
      return {gaussian(-cfg.theta0, energy_sigma(cfg)), gaussian(cfg.theta1, energy_sigma(cfg))};
    case Observation::gaussian:
      break;
  }
  return {gaussian(-cfg.theta0, cfg.sigma), gaussian(cfg.theta1, cfg.sigma)};
}

}  // namespace

Policy make_policy(const ExperimentConfig& cfg) {
  const LawPair x = observation_laws(cfg);
  switch (cfg.policy) {
    case PolicyKind::identity:
      return identity_policy(x);
    case PolicyKind::loglik:
      return gaussian_llr_policy(cfg.theta0, cfg.theta1,
                                 cfg.observation == Observation::energy ? energy_sigma(cfg) : cfg.sigma);
    case PolicyKind::censoring:
      return censoring_policy(x, cfg.theta_c);
  }
  throw ConfigError("policy", "unsupported policy");
}

SizeModel make_size_model(const ExperimentConfig& cfg, std::int64_t nu) {
  switch (cfg.size_model) {
    case SizeModelKind::deterministic:
      return Deterministic{nu};
    case SizeModelKind::mixed_poisson:
      return MixedPoisson{nu, cfg.eq, cfg.delta};
    case SizeModelKind::energy_stopped:
      return EnergyStopped{nu,
                           {gaussian(-cfg.theta0, cfg.sigma_s), gaussian(cfg.theta1, cfg.sigma_s)},
                           gaussian(0.0, cfg.sigma_w),
                           {}};
  }
  throw ConfigError("size_model", "unsupported size model");
}

ThresholdRule make_threshold_rule(const ExperimentConfig& cfg) {
  ThresholdRule rule;
  rule.kind = cfg.threshold_rule;
  rule.alpha = cfg.alpha;
  rule.family = cfg.family == FamilyKind::gumbel ? EvtFamily::gumbel() : EvtFamily::frechet(cfg.xi);
  return rule;
}

}  // namespace ordet::tools
