#include "exf/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "exf/errors.hpp"
#include "exf/rng.hpp"

namespace exf {

std::string_view to_string(Metric m) noexcept {
  switch (m) {
    case Metric::Degree: return "degree";
    case Metric::Exf: return "exf";
    case Metric::ExfM: return "exfm";
    case Metric::KShell: return "kshell";
    case Metric::Evc: return "evc";
  }
  return "?";
}

Metric parse_metric(std::string_view text) {
  for (Metric m : {Metric::Degree, Metric::Exf, Metric::ExfM, Metric::KShell, Metric::Evc})
    if (text == to_string(m)) return m;
  throw std::invalid_argument("unknown metric '" + std::string(text) +
                              "' (expected degree|exf|exfm|kshell|evc)");
}

double metric_value(const NodeMetricsRecord& r, Metric m) noexcept {
  switch (m) {
    case Metric::Degree: return static_cast<double>(r.degree);
    case Metric::Exf: return r.exf;
    case Metric::ExfM: return r.exf_m;
    case Metric::KShell: return static_cast<double>(r.kshell);
    case Metric::Evc: return r.evc;
  }
  return 0.0;
}

void ExperimentConfig::validate() const {
  if (sample_size < 4) throw std::invalid_argument("sample size must be >= 4");
  if (runs_per_seed < 1) throw std::invalid_argument("runs per seed must be >= 1");
  if (beta && !(*beta >= 0.0 && *beta <= 1.0)) throw std::invalid_argument("beta must lie in [0, 1]");
  if (!(beta_factor > 0.0)) throw std::invalid_argument("beta factor must be positive");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("level must lie in (0, 1)");
  if (metrics.empty()) throw std::invalid_argument("no metrics selected");
  if (processes.empty()) throw std::invalid_argument("no processes selected");
  spread_params(Process::SIS, beta.value_or(0.0)).validate();
}

SpreadParams ExperimentConfig::spread_params(Process kind, double beta_value) const {
  SpreadParams p;
  p.kind = kind;
  p.beta = beta_value;
  p.gamma = gamma;
  p.t_max = t_max;
  p.coverage_target = coverage_target;
  p.epidemic_threshold = epidemic_threshold;
  p.sis_stop_at_threshold = sis_stop_at_threshold;
  return p;
}

std::vector<NodeId> sample_seeds(const Graph& g, std::size_t k, std::uint64_t master_seed) {
  std::vector<NodeId> pool = largest_component(g).new_to_old;
  if (k > pool.size())
    throw std::invalid_argument(fmt::format("cannot sample {} seeds from a component of {} nodes",
                                            k, pool.size()));
  Rng rng(derive_seed(master_seed, 0x53454544));  // "SEED"
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + uniform_index(rng, pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

std::optional<double> outcome_score(const SeedOutcome& o, bool log_outcomes) {
  if (!o.ok()) return std::nullopt;
  if (o.kind == Process::SI) {
    if (!o.si_mean_time) return std::nullopt;
    const double t = log_outcomes ? std::log1p(*o.si_mean_time) : *o.si_mean_time;
    return -t;
  }
  if (!o.epidemic_potential) return std::nullopt;
  return log_outcomes ? std::log1p(*o.epidemic_potential) : *o.epidemic_potential;
}

ExperimentReport run_experiment(const Graph& g, const ExperimentConfig& cfg) {
  cfg.validate();
  if (g.edge_count() == 0) throw EmptyGraphError();

  ExperimentReport report;
  report.config = cfg;
  report.nodes = g.node_count();
  report.edges = g.edge_count();

  report.seeds = sample_seeds(g, cfg.sample_size, cfg.master_seed);
  const EigenvectorCentrality evc = eigenvector_centrality(g);
  report.lambda = evc.lambda;
  report.lcc_size = largest_component(g).graph.node_count();
  report.beta = cfg.beta ? *cfg.beta : std::min(1.0, cfg.beta_factor * cfg.gamma / evc.lambda);
  report.metrics = all_metrics(g, report.seeds, cfg.alpha, evc);

  for (Process kind : cfg.processes) {
    ProcessResult pr;
    pr.process = kind;
    pr.params = cfg.spread_params(kind, report.beta);
    const auto stream = derive_seed(cfg.master_seed, 0x50524f43, static_cast<std::uint64_t>(kind));
    pr.outcomes = run_batch(g, report.seeds, pr.params, cfg.runs_per_seed, stream);

    std::vector<double> outcome;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < pr.outcomes.size(); ++i) {
      if (auto v = outcome_score(pr.outcomes[i], cfg.log_outcomes)) {
        outcome.push_back(*v);
        kept.push_back(i);
      }
    }
    pr.dropped = pr.outcomes.size() - kept.size();

    for (Metric m : cfg.metrics) {
      CorrelationCell cell;
      cell.process = kind;
      cell.metric = m;
      std::vector<double> x;
      x.reserve(kept.size());
      for (std::size_t i : kept) x.push_back(metric_value(report.metrics[i], m));
      try {
        cell.estimate = cfg.method == CorrelationMethod::Pearson
                            ? pearson_correlation_ci(x, outcome, cfg.level)
                            : spearman_correlation_ci(x, outcome, cfg.level);
      } catch (const std::domain_error& e) {
        cell.note = e.what();
      } catch (const std::invalid_argument& e) {
        cell.note = e.what();
      }
      report.correlations.push_back(std::move(cell));
    }
    report.processes.push_back(std::move(pr));
  }
  return report;
}

void write_correlations_csv(const ExperimentReport& report, std::ostream& out) {
  out << "process,metric,r,lower,upper,half_width,n\n";
  for (const auto& c : report.correlations) {
    if (c.estimate) {
      const auto& e = *c.estimate;
      out << fmt::format("{},{},{:.6f},{:.6f},{:.6f},{:.6f},{}\n", to_string(c.process),
                         to_string(c.metric), e.r, e.lower, e.upper, e.half_width, e.n);
    } else {
      out << fmt::format("{},{},,,,,\n", to_string(c.process), to_string(c.metric));
    }
  }
}

void write_dataset_csv(const Graph& g, const ExperimentReport& report, std::ostream& out) {
  out << "node,degree,exf,exfm,kshell,evc,process,runs,censored,mean_time,epidemic_potential\n";
  for (const auto& pr : report.processes) {
    for (std::size_t i = 0; i < report.seeds.size(); ++i) {
      const auto& m = report.metrics[i];
      const auto& o = pr.outcomes[i];
      std::string censored, mean_time, potential;
      if (pr.process == Process::SI) {
        censored = std::to_string(o.censored);
        if (o.si_mean_time) mean_time = fmt::format("{:.6g}", *o.si_mean_time);
      }
      if (o.epidemic_potential) potential = fmt::format("{:.6g}", *o.epidemic_potential);
      out << fmt::format("{},{},{:.6g},{:.6g},{},{:.6g},{},{},{},{},{}\n", g.label(m.node),
                         m.degree, m.exf, m.exf_m, m.kshell, m.evc, to_string(pr.process), o.runs,
                         censored, mean_time, potential);
    }
  }
}

nlohmann::json spread_params_json(const SpreadParams& p) {
  return {
      {"process", std::string(to_string(p.kind))},
      {"beta", p.beta},
      {"gamma", p.gamma},
      {"t_max", p.t_max},
      {"coverage_target", p.coverage_target},
      {"epidemic_threshold", p.epidemic_threshold},
      {"sis_stop_at_threshold", p.sis_stop_at_threshold},
      {"update", "synchronous"},
      {"sis_epidemic_rule", "prevalence reaches epidemic_threshold after some step, or infection "
                            "survives to t_max"},
      {"sir_epidemic_rule", "final attack fraction >= epidemic_threshold"},
      {"censoring", "SI runs that miss coverage_target by t_max are excluded from mean_time and "
                    "counted in 'censored'"},
  };
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

}  // namespace

void write_report_bundle(const Graph& g, const ExperimentReport& report, const BundleInfo& info,
                         const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto& cfg = report.config;

  std::ostringstream metrics, correlations, dataset;
  write_metrics_csv(g, report.metrics, metrics);
  write_correlations_csv(report, correlations);
  write_dataset_csv(g, report, dataset);
  write_file(dir / "metrics.csv", metrics.str());
  write_file(dir / "correlations.csv", correlations.str());
  write_file(dir / "dataset.csv", dataset.str());
  for (const auto& pr : report.processes) {
    std::ostringstream os;
    write_outcomes_csv(g, pr.outcomes, os);
    write_file(dir / fmt::format("outcomes_{}.csv", to_string(pr.process)), os.str());
  }
  write_file(dir / "figure.svg", render_figure(report));

  nlohmann::json meta;
  meta["input"] = {{"path", info.input_path}, {"checksum_fnv1a64", info.input_checksum},
                   {"nodes", report.nodes}, {"edges", report.edges},
                   {"lcc_size", report.lcc_size}};
  meta["lambda"] = report.lambda;
  meta["beta"] = report.beta;
  meta["beta_source"] = cfg.beta ? "fixed" : fmt::format("beta_factor * gamma / lambda, beta_factor={}", cfg.beta_factor);
  std::vector<std::string> metric_names, process_names;
  for (Metric m : cfg.metrics) metric_names.emplace_back(to_string(m));
  for (Process p : cfg.processes) process_names.emplace_back(to_string(p));
  meta["config"] = {
      {"sample_size", cfg.sample_size},
      {"runs_per_seed", cfg.runs_per_seed},
      {"master_seed", cfg.master_seed},
      {"alpha", cfg.alpha},
      {"metrics", metric_names},
      {"processes", process_names},
      {"correlation", cfg.method == CorrelationMethod::Pearson ? "pearson" : "spearman"},
      {"confidence_level", cfg.level},
      {"log_outcomes", cfg.log_outcomes},
      {"threads", info.threads},
  };
  nlohmann::json processes = nlohmann::json::array();
  for (const auto& pr : report.processes) {
    auto entry = spread_params_json(pr.params);
    entry["dropped_seeds"] = pr.dropped;
    processes.push_back(entry);
  }
  meta["processes"] = processes;
  meta["conventions"] = {
      {"si_outcome", "negated mean half-coverage time (larger = stronger spreader)"},
      {"sis_sir_outcome", "epidemic potential: fraction of runs classified epidemic"},
      {"exf_log", "natural"},
      {"exfm", "ln(alpha * degree) * exf"},
      {"evc_normalization", "max entry = 1, largest component only"},
      {"confidence_interval", "Fisher z, normal quantile"},
      {"display_half_width", "half_width rounded to 2 decimals"},
  };
  write_file(dir / "meta.json", meta.dump(2) + "\n");
}

}  // namespace exf
