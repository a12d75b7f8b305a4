#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "exf/correlation.hpp"
#include "exf/epidemic.hpp"
#include "exf/graph.hpp"
#include "exf/metrics.hpp"

namespace exf {

enum class Metric { Degree, Exf, ExfM, KShell, Evc };

std::string_view to_string(Metric m) noexcept;
/// "degree", "exf", "exfm", "kshell", "evc". Throws std::invalid_argument.
Metric parse_metric(std::string_view text);
double metric_value(const NodeMetricsRecord& r, Metric m) noexcept;

enum class CorrelationMethod { Pearson, Spearman };

struct ExperimentConfig {
  std::size_t sample_size = 1000;
  std::size_t runs_per_seed = 100;
  // Transmission probability. Unset: beta_factor * gamma / lambda, with lambda
  // the leading adjacency eigenvalue of the largest component.
  std::optional<double> beta;
  double beta_factor = 2.0;
  double gamma = 0.5;
  std::uint32_t t_max = 1000;
  double coverage_target = 0.5;
  double epidemic_threshold = 0.05;
  bool sis_stop_at_threshold = true;
  std::vector<Metric> metrics{Metric::Exf, Metric::ExfM, Metric::KShell, Metric::Evc};
  std::vector<Process> processes{Process::SI, Process::SIS, Process::SIR};
  std::uint64_t master_seed = 1;
  double alpha = 2.0;
  CorrelationMethod method = CorrelationMethod::Pearson;
  bool log_outcomes = false;  // correlate against log1p(outcome)
  double level = 0.95;

  void validate() const;
  SpreadParams spread_params(Process kind, double beta_value) const;
};

struct CorrelationCell {
  Process process = Process::SI;
  Metric metric = Metric::Exf;
  std::optional<CorrelationEstimate> estimate;  // empty when undefined
  std::string note;
};

struct ProcessResult {
  Process process = Process::SI;
  SpreadParams params;
  std::vector<SeedOutcome> outcomes;  // aligned with ExperimentReport::seeds
  std::size_t dropped = 0;            // seeds without a usable outcome
};

struct ExperimentReport {
  ExperimentConfig config;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t lcc_size = 0;
  double lambda = 0.0;
  double beta = 0.0;
  std::vector<NodeId> seeds;
  std::vector<NodeMetricsRecord> metrics;  // aligned with seeds
  std::vector<ProcessResult> processes;
  std::vector<CorrelationCell> correlations;  // process-major, config order
};

/// `k` distinct nodes of the largest component, uniformly without
/// replacement (partial Fisher-Yates). Throws std::invalid_argument when k
/// exceeds the component size.
std::vector<NodeId> sample_seeds(const Graph& g, std::size_t k, std::uint64_t master_seed);

/// Per-seed score where larger means a stronger spreader: the negated mean SI
/// time, or the SIS/SIR epidemic potential. Empty for rejected or fully
/// censored seeds.
std::optional<double> outcome_score(const SeedOutcome& o, bool log_outcomes);

/**
 * Full evaluation: sample seeds, measure metrics, run every configured
 * process, correlate each metric with the per-seed outcome. SI outcomes are
 * negated mean half-coverage times, so larger always means stronger
 * spreader; seeds whose SI runs were all censored are dropped and counted.
 */
ExperimentReport run_experiment(const Graph& g, const ExperimentConfig& cfg);

/// correlations.csv: process,metric,r,lower,upper,half_width,n
void write_correlations_csv(const ExperimentReport& report, std::ostream& out);

/// Long-form per-seed dataset: one row per (seed, process) with every metric.
void write_dataset_csv(const Graph& g, const ExperimentReport& report, std::ostream& out);

/// Grouped bar chart (one group per process, one bar per metric) with
/// confidence whiskers, as a standalone SVG document. Deterministic.
/// Throws std::invalid_argument when the report has no correlations.
std::string render_figure(const ExperimentReport& report);

struct BundleInfo {
  std::string input_path;
  std::string input_checksum;  // fnv1a64 hex of the input bytes
  int threads = 1;
};

/// Writes metrics.csv, outcomes_<process>.csv, dataset.csv,
/// correlations.csv, figure.svg and meta.json into `dir` (created if absent).
void write_report_bundle(const Graph& g, const ExperimentReport& report, const BundleInfo& info,
                         const std::filesystem::path& dir);

/// Parameter echo shared by every provenance file.
nlohmann::json spread_params_json(const SpreadParams& p);

}  // namespace exf
