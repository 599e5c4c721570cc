#include "ordet_tools/runner.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>

#include "ordet/error.hpp"
#include "ordet/orderstats.hpp"
#include "ordet/version.hpp"

namespace ordet::tools {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string opt(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

std::ofstream open_csv(const std::string& path, const char* header) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("output", "cannot write '" + path + "'");
  out << header << '\n' << std::flush;
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool wants_theoretical(const ExperimentConfig& cfg) {
  return cfg.size_model == SizeModelKind::mixed_poisson && quadrature_possible(cfg);
}

}  // namespace

std::string format_row(const CsvRow& r) {
  return std::to_string(r.nu) + "," + num(r.gamma_nu) + "," + num(r.alpha) + "," + num(r.beta) + "," +
         opt(r.alpha_ci) + "," + opt(r.beta_ci) + "," + opt(r.bound) + "," + std::string(to_string(r.method));
}

CsvRow compute_row(const ExperimentConfig& cfg, const Policy& policy, std::int64_t nu, Method method,
                   const McOptions& mc) {
  const SizeModel model = make_size_model(cfg, nu);
  CsvRow row;
  row.nu = nu;
  row.method = method;
  row.gamma_nu = resolve_threshold(make_threshold_rule(cfg), policy, model);
  if (miss_bound_applies(policy, model)) row.bound = miss_bound(row.gamma_nu);
  if (method == Method::quadrature) {
    const ErrorProbabilities ep = cfg.size_model == SizeModelKind::deterministic
                                      ? error_probs_exact(policy, nu, row.gamma_nu)
                                      : error_probs_mixed(policy, size_pmf(model), row.gamma_nu);
    row.alpha = ep.alpha;
    row.beta = ep.beta;
  } else {
    const ErrorEstimate e =
        estimate_errors(policy, model, row.gamma_nu, cfg.clock_delta, cfg.trials, row_seed(cfg.seed, nu), mc);
    row.alpha = e.alpha_hat;
    row.beta = e.beta_hat;
    row.alpha_ci = e.alpha_halfwidth;
    row.beta_ci = e.beta_halfwidth;
    row.estimate = e;
  }
  return row;
}

std::string companion_path(const std::string& output, const std::string& suffix) {
  std::string stem = output;
  if (stem.size() >= 4 && stem.compare(stem.size() - 4, 4, ".csv") == 0) stem.resize(stem.size() - 4);
  return stem + suffix;
}

RunResult run_experiment(const ExperimentConfig& cfg, const RunOptions& options) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

  RunResult result;
  result.manifest = cfg.output + ".manifest.json";
  const Method method = resolved_method(cfg);
  const Policy policy = make_policy(cfg);
  McOptions mc;
  mc.workers = options.workers;

  nlohmann::ordered_json manifest;
  manifest["tool"] = "ordet";
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config_items(cfg)) config[k] = v;
  manifest["config"] = config;
  manifest["seed"] = cfg.seed;
  manifest["method"] = std::string(to_string(method));
  manifest["workers"] = options.workers;
  manifest["versions"] = {{"ordet", ordet::version()},
                          {"compiler", compiler_version()},
                          {"boost", boost_version()},
                          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};

  auto write_manifest = [&](const std::string& status, const std::string& error) {
    manifest["outputs"] = result.files;
    manifest["status"] = status;
    if (!error.empty()) manifest["error"] = error;
    result.wall_seconds = elapsed();
    manifest["wall_time_seconds"] = result.wall_seconds;
    manifest["timestamp_utc"] = utc_timestamp();
    std::ofstream out(result.manifest, std::ios::trunc);
    if (!out) throw ConfigError("output", "cannot write '" + result.manifest + "'");
    out << manifest.dump(2) << '\n';
  };

  auto log = [&](const std::string& line) {
    if (options.log != nullptr) *options.log << line << std::endl;
  };

  try {
    std::vector<CsvRow> rows;
    {
      std::ofstream csv = open_csv(cfg.output, kCsvHeader);
      result.files.push_back(cfg.output);
      for (std::int64_t nu : cfg.nu_grid) {
        rows.push_back(compute_row(cfg, policy, nu, method, mc));
        csv << format_row(rows.back()) << '\n' << std::flush;
        log(cfg.output + ": nu=" + std::to_string(nu) + " done (" + num(elapsed()) + " s)");
      }
    }

    if (wants_theoretical(cfg)) {
      ExperimentConfig fixed = cfg;
      fixed.size_model = SizeModelKind::deterministic;
      const std::string path = companion_path(cfg.output, "_theoretical.csv");
      std::ofstream csv = open_csv(path, kCsvHeader);
      result.files.push_back(path);
      for (std::int64_t nu : cfg.nu_grid) {
        csv << format_row(compute_row(fixed, policy, nu, Method::quadrature, mc)) << '\n' << std::flush;
      }
      log(path + ": done (" + num(elapsed()) + " s)");
    }

    if (cfg.size_model == SizeModelKind::energy_stopped && method == Method::montecarlo) {
      // Mean N/nu from the main run, against the renewal limit 1/(E S^2).
      const std::string path = companion_path(cfg.output, "_stopping.csv");
      std::ofstream csv = open_csv(path, "nu,mean_n_over_nu_h0,mean_n_over_nu_h1,limit_h0,limit_h1");
      result.files.push_back(path);
      const double s2 = cfg.sigma_s * cfg.sigma_s;
      for (const CsvRow& row : rows) {
        const double n = static_cast<double>(row.nu);
        csv << row.nu << ',' << num(row.estimate->mean_size_h0 / n) << ','
            << num(row.estimate->mean_size_h1 / n) << ',' << num(1.0 / (cfg.theta0 * cfg.theta0 + s2)) << ','
            << num(1.0 / (cfg.theta1 * cfg.theta1 + s2)) << '\n'
            << std::flush;
      }
      log(path + ": done (" + num(elapsed()) + " s)");
    }
  } catch (const NumericFailure& e) {
    write_manifest("numeric_failure", e.what());
    throw;
  } catch (const BracketError& e) {
    write_manifest("numeric_failure", e.what());
    throw;
  }
  write_manifest("ok", "");
  return result;
}

}  // namespace ordet::tools
