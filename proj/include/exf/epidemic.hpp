#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "exf/graph.hpp"
#include "exf/rng.hpp"

namespace exf {

enum class Process { SI, SIS, SIR };

std::string_view to_string(Process p) noexcept;
/// Accepts "si", "sis", "sir" (any case). Throws std::invalid_argument.
Process parse_process(std::string_view text);

struct SpreadParams {
  Process kind = Process::SI;
  double beta = 0.1;   // per-contact, per-step transmission probability
  double gamma = 0.5;  // per-step recovery probability (SIS/SIR)
  std::uint32_t t_max = 1000;
  double coverage_target = 0.5;     // SI
  double epidemic_threshold = 0.05;  // SIS prevalence / SIR attack fraction
  // SIS runs end as soon as the prevalence threshold is reached; the
  // classification is final at that point. peak_prevalence is then the peak
  // observed up to the stop.
  bool sis_stop_at_threshold = true;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

struct RunOutcome {
  Process kind = Process::SI;
  std::uint32_t steps = 0;  // steps executed
  // SI
  std::optional<std::uint32_t> half_coverage_time;  // empty when censored
  // SIS / SIR
  bool is_epidemic = false;
  double peak_prevalence = 0.0;
  double attack_fraction = 0.0;

  bool censored() const noexcept { return kind == Process::SI && !half_coverage_time; }
};

/// State handed to an observer at step 0 and after each step.
struct StepView {
  std::uint32_t step = 0;
  std::size_t susceptible = 0;
  std::size_t infected = 0;
  std::size_t recovered = 0;
  std::size_t ever_infected = 0;
  std::span<const NodeId> infected_nodes;
};
using StepObserver = std::function<void(const StepView&)>;

/**
 * Discrete-time spreading on a fixed graph with reusable per-run buffers.
 *
 * Updates are synchronous: in each step every node infected at the start of
 * the step tries each neighbour once with probability beta; afterwards every
 * node infected at the start of the step recovers with probability gamma
 * (to susceptible for SIS, to immune for SIR). Nodes infected during a step
 * neither transmit nor recover in that step.
 *
 * `population` is the size of the component the seed lives in (the largest
 * component in practice); coverage and prevalence are fractions of it.
 * Not thread-safe; use one instance per thread.
 */
class Spreader {
 public:
  Spreader(const Graph& g, std::size_t population);

  RunOutcome run(NodeId seed, const SpreadParams& p, Rng& rng,
                 const StepObserver& observer = {});

 private:
  void transmit(double beta, double log1m_beta, Rng& rng);

  const Graph& graph_;
  std::size_t population_;
  std::vector<std::uint8_t> status_;
  std::vector<NodeId> infected_;
  std::vector<NodeId> fresh_;
  std::vector<NodeId> touched_;
};

/// Single runs; `population` defaults to the largest component size.
RunOutcome simulate_si(const Graph& g, NodeId seed, const SpreadParams& p, Rng& rng);
RunOutcome simulate_sis(const Graph& g, NodeId seed, const SpreadParams& p, Rng& rng);
RunOutcome simulate_sir(const Graph& g, NodeId seed, const SpreadParams& p, Rng& rng);

struct SeedOutcome {
  NodeId seed = 0;
  Process kind = Process::SI;
  std::size_t runs = 0;
  std::size_t censored = 0;           // SI runs that missed the target
  std::optional<double> si_mean_time;  // over uncensored SI runs
  std::optional<double> epidemic_potential;  // SIS / SIR
  double mean_attack_fraction = 0.0;          // SIR
  std::string error;  // non-empty when the seed was rejected

  bool ok() const noexcept { return error.empty(); }
};

/// Stream seed for one run: a pure function of the master seed, the seed
/// node's external label and the run index.
std::uint64_t run_stream_seed(std::uint64_t master_seed, std::string_view label,
                              std::size_t run_index);

/**
 * Repeated runs from each seed. (seed, run) pairs are spread over OpenMP
 * threads; each owns an engine seeded by run_stream_seed, and aggregation
 * happens afterwards in input order, so output does not depend on the
 * thread count. Seeds outside the largest component get an error entry.
 */
std::vector<SeedOutcome> run_batch(const Graph& g, std::span<const NodeId> seeds,
                                   const SpreadParams& p, std::size_t runs_per_seed,
                                   std::uint64_t master_seed);

/// `node,process,runs,censored,mean_time,epidemic_potential`, one row per
/// seed in input order; inapplicable fields empty.
void write_outcomes_csv(const Graph& g, std::span<const SeedOutcome> outcomes, std::ostream& out);

namespace reference {

/// Serial run_batch, the oracle for the parallel one.
std::vector<SeedOutcome> run_batch(const Graph& g, std::span<const NodeId> seeds,
                                   const SpreadParams& p, std::size_t runs_per_seed,
                                   std::uint64_t master_seed);

}  // namespace reference

}  // namespace exf
