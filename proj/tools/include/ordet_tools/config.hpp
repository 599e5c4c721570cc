#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ordet/mc.hpp"
#include "ordet/network.hpp"
#include "ordet/policy.hpp"

namespace ordet::tools {

/// Invalid or inconsistent experiment configuration. `field` names the
/// offending key (empty for file-level problems).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message);
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

enum class Observation { gaussian, gauss_pareto, energy };
enum class SizeModelKind { deterministic, mixed_poisson, energy_stopped };
enum class Method { automatic, quadrature, montecarlo };

std::string_view to_string(Observation o) noexcept;
std::string_view to_string(SizeModelKind s) noexcept;
std::string_view to_string(Method m) noexcept;
std::string_view to_string(ThresholdKind k) noexcept;
std::string_view to_string(FamilyKind k) noexcept;

struct ExperimentConfig {
  std::string scenario;
  double theta0 = 1.0;
  double theta1 = 1.0;
  double sigma = 1.0;
  double sigma_s = 1.0;
  double sigma_w = 1.0;
  double p = 0.5;
  double theta = 1.0;
  double b = 1.0;
  double theta_c = 1.0;
  Observation observation = Observation::gaussian;
  PolicyKind policy = PolicyKind::identity;
  SizeModelKind size_model = SizeModelKind::deterministic;
  double eq = 1.0;
  double delta = 0.0;
  std::vector<std::int64_t> nu_grid;
  ThresholdKind threshold_rule = ThresholdKind::zero;
  double alpha = 0.01;
  FamilyKind family = FamilyKind::gumbel;
  double xi = 1.0;
  double clock_delta = 0.0;
  std::int64_t trials = 1000000;
  std::uint64_t seed = 1;
  Method method = Method::automatic;
  std::string output;
};

/// Key names accepted in config files, in canonical order.
const std::vector<std::string>& config_keys();

/// Parses a flat `key = value` file. The `scenario` key is required; every
/// other key defaults to that scenario's value. Unknown keys, sections and
/// malformed values raise ConfigError.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

/// Applies `key = value` on top of an existing config.
void set_field(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Key/value rendering of every field, in config_keys() order.
std::vector<std::pair<std::string, std::string>> config_items(const ExperimentConfig& cfg);
std::string to_ini(const ExperimentConfig& cfg);

/// Checks every parameter against the library preconditions without running
/// anything heavy. Throws ConfigError.
void validate(const ExperimentConfig& cfg);

/// Resolved method: automatic becomes quadrature when exact integration is
/// possible for every grid point, montecarlo otherwise.
Method resolved_method(const ExperimentConfig& cfg);
bool quadrature_possible(const ExperimentConfig& cfg);

/// Library objects described by a config.
Policy make_policy(const ExperimentConfig& cfg);
SizeModel make_size_model(const ExperimentConfig& cfg, std::int64_t nu);
ThresholdRule make_threshold_rule(const ExperimentConfig& cfg);

struct Scenario {
  std::string id;
  std::string summary;
  ExperimentConfig defaults;
};

const std::vector<Scenario>& scenarios();
/// Throws ConfigError on field "scenario" listing the valid ids.
const Scenario& find_scenario(const std::string& id);
std::string describe_scenarios();
std::string describe_scenario(const Scenario& s);

}  // namespace ordet::tools
