#include "exf/epidemic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace exf {

namespace {

constexpr std::uint8_t kSusceptible = 0;
constexpr std::uint8_t kInfected = 1;
constexpr std::uint8_t kRecovered = 2;

std::size_t component_population(const Graph& g) {
  return largest_component(g).graph.node_count();
}

}  // namespace

std::string_view to_string(Process p) noexcept {
  switch (p) {
    case Process::SI: return "si";
    case Process::SIS: return "sis";
    case Process::SIR: return "sir";
  }
  return "?";
}

Process parse_process(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "si") return Process::SI;
  if (lower == "sis") return Process::SIS;
  if (lower == "sir") return Process::SIR;
  throw std::invalid_argument("unknown process '" + std::string(text) + "' (expected si|sis|sir)");
}

void SpreadParams::validate() const {
  if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must lie in [0, 1]");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in [0, 1]");
  if (t_max < 1) throw std::invalid_argument("t_max must be >= 1");
  if (!(coverage_target > 0.0 && coverage_target <= 1.0))
    throw std::invalid_argument("coverage_target must lie in (0, 1]");
  if (!(epidemic_threshold > 0.0 && epidemic_threshold < 1.0))
    throw std::invalid_argument("epidemic_threshold must lie in (0, 1)");
}

Spreader::Spreader(const Graph& g, std::size_t population)
    : graph_(g), population_(population), status_(g.node_count(), kSusceptible) {
  if (population_ == 0) throw std::invalid_argument("population must be positive");
}

void Spreader::transmit(double beta, double log1m_beta, Rng& rng) {
  fresh_.clear();
  if (beta <= 0.0) return;
  auto infect = [&](NodeId b) {
    if (status_[b] != kSusceptible) return;
    status_[b] = kInfected;
    fresh_.push_back(b);
    touched_.push_back(b);
  };
  for (NodeId u : infected_) {
    const auto nb = graph_.neighbors(u);
    if (beta >= 1.0) {
      for (NodeId b : nb) infect(b);
      continue;
    }
    // Jump straight to the next successful contact: the gap between
    // successes in a Bernoulli(beta) sequence is geometric.
    std::size_t pos = 0;
    for (;;) {
      const std::uint64_t skip = geometric_skip(rng, log1m_beta);
      if (skip >= nb.size() - pos) break;
      pos += static_cast<std::size_t>(skip);
      infect(nb[pos]);
      if (++pos == nb.size()) break;
    }
  }
}

RunOutcome Spreader::run(NodeId seed, const SpreadParams& p, Rng& rng,
                         const StepObserver& observer) {
  if (!graph_.contains(seed)) throw std::invalid_argument("seed out of range");
  for (NodeId v : touched_) status_[v] = kSusceptible;
  touched_.clear();
  infected_.clear();

  const double pop = static_cast<double>(population_);
  const double log1m_beta = (p.beta > 0.0 && p.beta < 1.0) ? std::log1p(-p.beta) : 0.0;
  std::size_t ever = 1, recovered = 0;
  status_[seed] = kInfected;
  touched_.push_back(seed);
  infected_.push_back(seed);

  RunOutcome out;
  out.kind = p.kind;
  out.peak_prevalence = 1.0 / pop;
  out.attack_fraction = 1.0 / pop;

  auto notify = [&](std::uint32_t step) {
    if (!observer) return;
    StepView view;
    view.step = step;
    view.infected = infected_.size();
    view.recovered = recovered;
    view.susceptible = population_ - infected_.size() - recovered;
    view.ever_infected = ever;
    view.infected_nodes = infected_;
    observer(view);
  };
  notify(0);

  const double coverage_needed = p.coverage_target * pop;
  const double threshold_count = p.epidemic_threshold * pop;
  if (p.kind == Process::SI && static_cast<double>(ever) >= coverage_needed) {
    out.half_coverage_time = 0;
    return out;
  }

  for (std::uint32_t t = 1; t <= p.t_max; ++t) {
    out.steps = t;
    transmit(p.beta, log1m_beta, rng);
    ever += fresh_.size();

    if (p.kind != Process::SI && p.gamma > 0.0) {
      const std::uint8_t after = p.kind == Process::SIS ? kSusceptible : kRecovered;
      std::size_t kept = 0;
      for (NodeId u : infected_) {
        if (bernoulli(rng, p.gamma)) {
          status_[u] = after;
          if (after == kRecovered) ++recovered;
        } else {
          infected_[kept++] = u;
        }
      }
      infected_.resize(kept);
    }
    infected_.insert(infected_.end(), fresh_.begin(), fresh_.end());
    notify(t);

    const double current = static_cast<double>(infected_.size());
    switch (p.kind) {
      case Process::SI:
        if (static_cast<double>(ever) >= coverage_needed) {
          out.half_coverage_time = t;
          return out;
        }
        if (ever == population_) return out;
        break;
      case Process::SIS:
        out.peak_prevalence = std::max(out.peak_prevalence, current / pop);
        if (current >= threshold_count) {
          out.is_epidemic = true;
          if (p.sis_stop_at_threshold) return out;
        }
        if (infected_.empty()) return out;
        break;
      case Process::SIR:
        out.peak_prevalence = std::max(out.peak_prevalence, current / pop);
        out.attack_fraction = static_cast<double>(ever) / pop;
        if (infected_.empty()) {
          out.is_epidemic = static_cast<double>(ever) >= threshold_count;
          return out;
        }
        break;
    }
  }

  // Horizon reached.
  if (p.kind == Process::SIS && !infected_.empty()) out.is_epidemic = true;
  if (p.kind == Process::SIR) out.is_epidemic = static_cast<double>(ever) >= threshold_count;
  return out;
}

namespace {

RunOutcome simulate_kind(const Graph& g, NodeId seed, SpreadParams p, Process kind, Rng& rng) {
  if (p.kind != kind)
    throw std::invalid_argument("process kind mismatch: expected " + std::string(to_string(kind)));
  p.validate();
  Spreader spreader(g, component_population(g));
  return spreader.run(seed, p, rng);
}

}  // namespace

RunOutcome simulate_si(const Graph& g, NodeId seed, const SpreadParams& p, Rng& rng) {
  return simulate_kind(g, seed, p, Process::SI, rng);
}
RunOutcome simulate_sis(const Graph& g, NodeId seed, const SpreadParams& p, Rng& rng) {
  return simulate_kind(g, seed, p, Process::SIS, rng);
}
RunOutcome simulate_sir(const Graph& g, NodeId seed, const SpreadParams& p, Rng& rng) {
  return simulate_kind(g, seed, p, Process::SIR, rng);
}

std::uint64_t run_stream_seed(std::uint64_t master_seed, std::string_view label,
                              std::size_t run_index) {
  return derive_seed(master_seed, fnv1a64(label), run_index);
}

namespace {

struct BatchPlan {
  std::size_t population = 0;
  std::vector<std::size_t> valid;  // indices into seeds
  std::vector<SeedOutcome> outcomes;
};

BatchPlan plan_batch(const Graph& g, std::span<const NodeId> seeds, const SpreadParams& p,
                     std::size_t runs_per_seed) {
  if (runs_per_seed < 1) throw std::invalid_argument("runs_per_seed must be >= 1");
  p.validate();
  BatchPlan plan;
  const auto comp = connected_components(g);
  const Subgraph lcc = largest_component(g);
  plan.population = lcc.graph.node_count();
  const auto lcc_comp = lcc.new_to_old.empty() ? 0u : comp[lcc.new_to_old.front()];
  plan.outcomes.resize(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    auto& o = plan.outcomes[i];
    o.seed = seeds[i];
    o.kind = p.kind;
    if (!g.contains(seeds[i])) {
      o.error = "seed id out of range";
    } else if (comp[seeds[i]] != lcc_comp) {
      o.error = "seed '" + g.label(seeds[i]) + "' is not in the largest component";
    } else {
      plan.valid.push_back(i);
    }
  }
  return plan;
}

void aggregate(BatchPlan& plan, std::span<const RunOutcome> results, std::size_t runs_per_seed) {
  for (std::size_t k = 0; k < plan.valid.size(); ++k) {
    auto& o = plan.outcomes[plan.valid[k]];
    o.runs = runs_per_seed;
    const auto block = results.subspan(k * runs_per_seed, runs_per_seed);
    if (o.kind == Process::SI) {
      double sum = 0.0;
      for (const auto& r : block) {
        if (r.half_coverage_time)
          sum += *r.half_coverage_time;
        else
          ++o.censored;
      }
      if (o.censored < runs_per_seed)
        o.si_mean_time = sum / static_cast<double>(runs_per_seed - o.censored);
    } else {
      std::size_t epidemics = 0;
      double attack = 0.0;
      for (const auto& r : block) {
        epidemics += r.is_epidemic ? 1 : 0;
        attack += r.attack_fraction;
      }
      o.epidemic_potential = static_cast<double>(epidemics) / static_cast<double>(runs_per_seed);
      o.mean_attack_fraction = attack / static_cast<double>(runs_per_seed);
    }
  }
}

}  // namespace

std::vector<SeedOutcome> run_batch(const Graph& g, std::span<const NodeId> seeds,
                                   const SpreadParams& p, std::size_t runs_per_seed,
                                   std::uint64_t master_seed) {
  BatchPlan plan = plan_batch(g, seeds, p, runs_per_seed);
  const std::size_t jobs = plan.valid.size() * runs_per_seed;
  std::vector<RunOutcome> results(jobs);
  const auto job_count = static_cast<std::ptrdiff_t>(jobs);
#pragma omp parallel
  {
    Spreader spreader(g, plan.population);
#pragma omp for schedule(dynamic, 4)
    for (std::ptrdiff_t j = 0; j < job_count; ++j) {
      const auto job = static_cast<std::size_t>(j);
      const NodeId seed = seeds[plan.valid[job / runs_per_seed]];
      Rng rng(run_stream_seed(master_seed, g.label(seed), job % runs_per_seed));
      results[job] = spreader.run(seed, p, rng);
    }
  }
  aggregate(plan, results, runs_per_seed);
  return std::move(plan.outcomes);
}

namespace reference {

std::vector<SeedOutcome> run_batch(const Graph& g, std::span<const NodeId> seeds,
                                   const SpreadParams& p, std::size_t runs_per_seed,
                                   std::uint64_t master_seed) {
  BatchPlan plan = plan_batch(g, seeds, p, runs_per_seed);
  std::vector<RunOutcome> results;
  results.reserve(plan.valid.size() * runs_per_seed);
  Spreader spreader(g, plan.population);
  for (std::size_t idx : plan.valid) {
    for (std::size_t run = 0; run < runs_per_seed; ++run) {
      Rng rng(run_stream_seed(master_seed, g.label(seeds[idx]), run));
      results.push_back(spreader.run(seeds[idx], p, rng));
    }
  }
  aggregate(plan, results, runs_per_seed);
  return std::move(plan.outcomes);
}

}  // namespace reference

void write_outcomes_csv(const Graph& g, std::span<const SeedOutcome> outcomes, std::ostream& out) {
  out << "node,process,runs,censored,mean_time,epidemic_potential\n";
  for (const auto& o : outcomes) {
    const std::string label = g.contains(o.seed) ? g.label(o.seed) : std::to_string(o.seed);
    std::string censored, mean_time, potential;
    if (o.ok() && o.kind == Process::SI) {
      censored = std::to_string(o.censored);
      if (o.si_mean_time) mean_time = fmt::format("{:.6g}", *o.si_mean_time);
    }
    if (o.epidemic_potential) potential = fmt::format("{:.6g}", *o.epidemic_potential);
    out << fmt::format("{},{},{},{},{},{}\n", label, to_string(o.kind), o.runs, censored, mean_time,
                       potential);
  }
}

}  // namespace exf
