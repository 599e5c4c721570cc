#include <cmath>

#include "ordet_tools/config.hpp"

namespace ordet::tools {
namespace {

ExperimentConfig base(std::string id) {
  ExperimentConfig c;
  c.scenario = id;
  c.output = id + ".csv";
  return c;
}

std::vector<Scenario> build() {
  std::vector<Scenario> out;

  ExperimentConfig fig2 = base("fig2");
  fig2.policy = PolicyKind::identity;
  fig2.nu_grid = {1, 10, 100, 1000, 10000};
  fig2.threshold_rule = ThresholdKind::zero;
  fig2.trials = 10000;
  out.push_back({"fig2", "alpha_n + beta_n of the MO policy, Gaussian shift in mean, zero threshold", fig2});

  ExperimentConfig fig3 = base("fig3");
  fig3.policy = PolicyKind::loglik;
  fig3.nu_grid = {10, 100, 1000, 10000};
  fig3.threshold_rule = ThresholdKind::refined;
  fig3.alpha = 0.01;
  out.push_back({"fig3", "alpha_n and beta_n of l-MO with a calibrated threshold, deterministic n", fig3});

  ExperimentConfig fig4 = base("fig4");
  fig4.policy = PolicyKind::loglik;
  fig4.size_model = SizeModelKind::mixed_poisson;
  fig4.eq = 0.5;
  fig4.delta = 0.5;
  fig4.nu_grid = {100, 1000, 10000};
  fig4.threshold_rule = ThresholdKind::refined;
  fig4.alpha = 0.1;
  fig4.method = Method::montecarlo;
  out.push_back({"fig4", "l-MO on mixed-Poisson networks, with a deterministic-size companion series", fig4});

  ExperimentConfig fig5 = base("fig5");
  fig5.observation = Observation::gauss_pareto;
  fig5.policy = PolicyKind::censoring;
  fig5.size_model = SizeModelKind::mixed_poisson;
  fig5.eq = 0.7;
  fig5.delta = 0.5;
  fig5.nu_grid = {100, 1000, 10000};
  fig5.threshold_rule = ThresholdKind::refined;
  fig5.alpha = 0.1;
  fig5.family = FamilyKind::frechet;
  fig5.xi = 1.0;
  fig5.method = Method::montecarlo;
  out.push_back({"fig5", "censoring policy, Gaussian-Pareto noise, mixed-Poisson networks", fig5});

  ExperimentConfig fig6 = base("fig6");
  fig6.observation = Observation::energy;
  fig6.theta0 = fig6.theta1 = 1.0 / std::sqrt(2.0);
  fig6.sigma_s = fig6.sigma_w = 1.0;
  fig6.sigma = std::sqrt(2.0);
  fig6.policy = PolicyKind::loglik;
  fig6.size_model = SizeModelKind::energy_stopped;
  fig6.nu_grid = {100, 1000, 10000};
  fig6.threshold_rule = ThresholdKind::refined;
  fig6.alpha = 0.01;
  fig6.trials = 10000;
  fig6.method = Method::montecarlo;
  out.push_back({"fig6", "l-MO with energy-stopped network size, plus stopping statistics", fig6});

  return out;
}

}  // namespace

const std::vector<Scenario>& scenarios() {
  static const std::vector<Scenario> all = build();
  return all;
}

const Scenario& find_scenario(const std::string& id) {
  std::string ids;
  for (const auto& s : scenarios()) {
    if (s.id == id) return s;
    ids += ids.empty() ? "" : ", ";
    ids += s.id;
  }
  throw ConfigError("scenario", "unknown scenario '" + id + "' (valid ids: " + ids + ")");
}

std::string describe_scenario(const Scenario& s) {
  std::string text = s.id + "  " + s.summary + "\n";
  for (const auto& [k, v] : config_items(s.defaults)) {
    if (k == "scenario") continue;
    text += "    " + k + " = " + v + "\n";
  }
  return text;
}

std::string describe_scenarios() {
  std::string text;
  for (const auto& s : scenarios()) text += describe_scenario(s);
  return text;
}

}  // namespace ordet::tools
