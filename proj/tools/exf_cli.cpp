// exf: command-line driver for graph statistics, spreading metrics,
// epidemic simulation and the correlation experiment.
//
// Exit status: 0 success, 1 usage error, 2 data error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "exf/epidemic.hpp"
#include "exf/errors.hpp"
#include "exf/experiment.hpp"
#include "exf/fetch.hpp"
#include "exf/graph.hpp"
#include "exf/metrics.hpp"
#include "exf/rng.hpp"
#include "exf/stats.hpp"

namespace fs = std::filesystem;
using namespace exf;

namespace {

std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Graph load_graph(const std::string& path) {
  LoadReport report;
  Graph g = load_edge_list_file(path, &report);
  if (report.dropped_edges > 0)
    fmt::print(stderr, "exf: note: {}: dropped {} self-loop/duplicate edge(s)\n", path, report.dropped_edges);
  return g;
}

// One label per line; blank lines and '#' comments skipped.
std::vector<NodeId> read_node_list(const Graph& g, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::vector<NodeId> nodes;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream tokens(line);
    std::string label;
    if (!(tokens >> label) || label[0] == '#') continue;
    const auto id = g.find(label);
    if (!id) throw ParseError(path, lineno, "unknown node '" + label + "'");
    nodes.push_back(*id);
  }
  if (nodes.empty()) throw DataError(path + ": no nodes listed");
  return nodes;
}

// Writes to `path`, or stdout when empty.
template <class Fn>
void emit(const std::string& path, Fn&& fn) {
  if (path.empty()) {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  fn(out);
  if (!out) throw DataError("write failed for '" + path + "'");
}

std::string checksum_hex(const std::string& bytes) { return fmt::format("{:016x}", fnv1a64(bytes)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spreading-power metrics and epidemic simulation on undirected graphs"};
  app.name("exf");
  app.require_subcommand(1);
  app.set_config("--config", "", "Config file; keys match flag names, flags take precedence");
  int threads = 0;
  app.add_option("--threads", threads, "Cap on worker threads (0 = runtime default)")
      ->check(CLI::NonNegativeNumber);

  // stats
  auto* stats = app.add_subcommand("stats", "Network statistics of an edge list");
  std::string graph_path;
  bool exact_diameter = false;
  stats->add_option("graph", graph_path, "Edge list file")->required();
  stats->add_flag("--exact-diameter", exact_diameter, "All-sources BFS instead of certified bounds");

  // metrics
  auto* metrics = app.add_subcommand("metrics", "Per-node ExF, ExF^M, k-shell and eigenvector centrality");
  std::size_t sample = 0;
  std::string nodes_path, out_path;
  double alpha = 2.0;
  std::uint64_t master_seed = 1;
  metrics->add_option("graph", graph_path, "Edge list file")->required();
  auto* sample_opt = metrics->add_option("--sample", sample, "Uniform sample of N nodes from the largest component");
  metrics->add_option("--nodes", nodes_path, "File with one node label per line")->excludes(sample_opt);
  metrics->add_option("--alpha", alpha, "Degree scale in ExF^M")->capture_default_str();
  metrics->add_option("--master-seed", master_seed, "Seed for --sample")->capture_default_str();
  metrics->add_option("--out", out_path, "Output CSV (default stdout)");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Repeated SI/SIS/SIR runs from listed seed nodes");
  std::string process_name, seeds_path;
  std::size_t runs = 100;
  std::optional<double> beta;
  double beta_factor = 2.0, gamma = 0.5, threshold = 0.05, coverage = 0.5;
  std::uint32_t t_max = 1000;
  bool no_sis_stop = false;
  simulate->add_option("graph", graph_path, "Edge list file")->required();
  simulate->add_option("--process", process_name, "si, sis or sir")->required();
  simulate->add_option("--seeds", seeds_path, "File with one seed label per line")->required();
  simulate->add_option("--runs", runs, "Runs per seed")->capture_default_str();
  simulate->add_option("--beta", beta, "Transmission probability (default beta-factor * gamma / lambda)");
  simulate->add_option("--beta-factor", beta_factor, "Multiple of the threshold gamma / lambda")->capture_default_str();
  simulate->add_option("--gamma", gamma, "Recovery probability")->capture_default_str();
  simulate->add_option("--tmax", t_max, "Step horizon")->capture_default_str();
  simulate->add_option("--threshold", threshold, "Epidemic threshold (fraction of the component)")->capture_default_str();
  simulate->add_option("--coverage", coverage, "SI coverage target")->capture_default_str();
  simulate->add_flag("--no-sis-stop", no_sis_stop, "Keep SIS runs going after the threshold is reached");
  simulate->add_option("--master-seed", master_seed, "Master seed")->capture_default_str();
  simulate->add_option("--out", out_path, "Output CSV (default stdout); a .meta.json sidecar is written next to it");

  // generate
  auto* generate = app.add_subcommand("generate", "Synthetic graph generator");
  std::string model = "pa";
  std::size_t gen_n = 0, gen_m = 2;
  double leaf_fraction = 0.0;
  generate->add_option("--model", model, "Only 'pa' (preferential attachment)")->capture_default_str()
      ->check(CLI::IsMember({"pa"}));
  generate->add_option("--n", gen_n, "Node count")->required();
  generate->add_option("--m", gen_m, "Links per non-leaf arrival")->capture_default_str();
  generate->add_option("--leaf-fraction", leaf_fraction, "Probability an arrival attaches with one link")->capture_default_str();
  generate->add_option("--master-seed", master_seed, "Seed")->capture_default_str();
  generate->add_option("--out", out_path, "Output edge list (default stdout)");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Full pipeline: metrics, simulations, correlations, figure");
  ExperimentConfig cfg;
  std::vector<std::string> metric_names{"exf", "exfm", "kshell", "evc"};
  std::vector<std::string> process_names{"si", "sis", "sir"};
  std::string method = "pearson";
  std::string out_dir = "exf_out";
  experiment->add_option("graph", graph_path, "Edge list file")->required();
  experiment->add_option("--sample", cfg.sample_size, "Seeds sampled from the largest component")->capture_default_str();
  experiment->add_option("--runs", cfg.runs_per_seed, "Runs per seed and process")->capture_default_str();
  experiment->add_option("--beta", beta, "Transmission probability (default beta-factor * gamma / lambda)");
  experiment->add_option("--beta-factor", cfg.beta_factor, "Multiple of the threshold gamma / lambda")->capture_default_str();
  experiment->add_option("--gamma", cfg.gamma, "Recovery probability")->capture_default_str();
  experiment->add_option("--tmax", cfg.t_max, "Step horizon")->capture_default_str();
  experiment->add_option("--threshold", cfg.epidemic_threshold, "Epidemic threshold")->capture_default_str();
  experiment->add_option("--coverage", cfg.coverage_target, "SI coverage target")->capture_default_str();
  experiment->add_flag("--no-sis-stop", no_sis_stop, "Keep SIS runs going after the threshold is reached");
  experiment->add_option("--metrics", metric_names, "Comma list of degree,exf,exfm,kshell,evc")->capture_default_str()->delimiter(',');
  experiment->add_option("--processes", process_names, "Comma list of si,sis,sir")->capture_default_str()->delimiter(',');
  experiment->add_option("--alpha", cfg.alpha, "Degree scale in ExF^M")->capture_default_str();
  experiment->add_option("--method", method, "pearson or spearman")->capture_default_str()
      ->check(CLI::IsMember({"pearson", "spearman"}));
  experiment->add_flag("--log-outcomes", cfg.log_outcomes, "Correlate against log1p(outcome)");
  experiment->add_option("--level", cfg.level, "Confidence level")->capture_default_str();
  experiment->add_option("--master-seed", cfg.master_seed, "Master seed")->capture_default_str();
  experiment->add_option("--out", out_dir, "Output directory")->capture_default_str()->envname("EXF_OUT_DIR");

  // fetch
  auto* fetch = app.add_subcommand("fetch", "Download a topology snapshot (http:// or file://)");
  std::string url;
  bool overwrite = false;
  fetch->add_option("--url", url, "Source URL")->required();
  fetch->add_option("--out", out_path, "Destination file")->required();
  fetch->add_flag("--overwrite", overwrite, "Replace an existing destination");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    fmt::print(stderr, "exf: error: {} (see --help)\n", e.what());
    return 1;
  }

  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (stats->parsed()) {
      const Graph g = load_graph(graph_path);
      const NetworkStats s = network_stats(g, exact_diameter);
      fmt::print("nodes={}\nedges={}\ndensity={:.4f}\nmean_degree={:.4f}\nlcc_size={}\nlcc_edges={}\n",
                 s.nodes, s.edges, s.density, s.mean_degree, s.lcc_size, s.lcc_edges);
      fmt::print("diameter={}\ndiameter_exact={}\n", s.diameter, s.diameter_exact);
      if (!s.diameter_exact) fmt::print("diameter_upper={}\n", s.diameter_upper);
      fmt::print("lambda={:.6f}\n", s.leading_eigenvalue);
      return 0;
    }

    if (metrics->parsed()) {
      const Graph g = load_graph(graph_path);
      std::vector<NodeId> nodes;
      if (!nodes_path.empty()) {
        nodes = read_node_list(g, nodes_path);
      } else if (sample > 0) {
        nodes = sample_seeds(g, sample, master_seed);
      } else {
        nodes.resize(g.node_count());
        for (NodeId v = 0; v < g.node_count(); ++v) nodes[v] = v;
      }
      const auto records = all_metrics(g, nodes, alpha);
      emit(out_path, [&](std::ostream& os) { write_metrics_csv(g, records, os); });
      return 0;
    }

    if (simulate->parsed()) {
      const Graph g = load_graph(graph_path);
      const auto seeds = read_node_list(g, seeds_path);
      SpreadParams p;
      p.kind = parse_process(process_name);
      p.gamma = gamma;
      p.t_max = t_max;
      p.epidemic_threshold = threshold;
      p.coverage_target = coverage;
      p.sis_stop_at_threshold = !no_sis_stop;
      double lambda = 0.0;
      if (beta) {
        p.beta = *beta;
      } else {
        lambda = eigenvector_centrality(g).lambda;
        p.beta = std::min(1.0, beta_factor * gamma / lambda);
      }
      const auto stream = derive_seed(master_seed, 0x50524f43, static_cast<std::uint64_t>(p.kind));
      const auto outcomes = run_batch(g, seeds, p, runs, stream);
      for (const auto& o : outcomes)
        if (!o.ok()) fmt::print(stderr, "exf: warning: {}\n", o.error);
      emit(out_path, [&](std::ostream& os) { write_outcomes_csv(g, outcomes, os); });
      if (!out_path.empty()) {
        nlohmann::json meta = spread_params_json(p);
        meta["input"] = {{"path", graph_path}, {"checksum_fnv1a64", checksum_hex(read_bytes(graph_path))}};
        meta["seeds_file"] = seeds_path;
        meta["runs_per_seed"] = runs;
        meta["master_seed"] = master_seed;
        meta["beta_source"] = beta ? "fixed" : fmt::format("beta_factor * gamma / lambda, beta_factor={}", beta_factor);
        if (!beta) meta["lambda"] = lambda;
        emit(out_path + ".meta.json", [&](std::ostream& os) { os << meta.dump(2) << '\n'; });
      }
      return 0;
    }

    if (generate->parsed()) {
      const Graph g = generate_pa_graph(gen_n, gen_m, leaf_fraction, master_seed);
      emit(out_path, [&](std::ostream& os) { write_edge_list(g, os); });
      return 0;
    }

    if (experiment->parsed()) {
      cfg.beta = beta;
      cfg.sis_stop_at_threshold = !no_sis_stop;
      cfg.method = method == "spearman" ? CorrelationMethod::Spearman : CorrelationMethod::Pearson;
      cfg.metrics.clear();
      for (const auto& m : metric_names) cfg.metrics.push_back(parse_metric(m));
      cfg.processes.clear();
      for (const auto& p : process_names) cfg.processes.push_back(parse_process(p));
      cfg.validate();

      const std::string bytes = read_bytes(graph_path);
      const Graph g = load_graph(graph_path);
      const ExperimentReport report = run_experiment(g, cfg);
      write_report_bundle(g, report, BundleInfo{graph_path, checksum_hex(bytes), omp_get_max_threads()}, out_dir);

      fmt::print("lambda={:.6f} beta={:.6f} seeds={}\n", report.lambda, report.beta, report.seeds.size());
      for (const auto& pr : report.processes)
        if (pr.dropped > 0) fmt::print("{}: {} seed(s) dropped\n", to_string(pr.process), pr.dropped);
      for (const auto& c : report.correlations) {
        if (c.estimate)
          fmt::print("{:<4} {:<7} {:6.2f} ± {:.2f}\n", to_string(c.process), to_string(c.metric), c.estimate->r,
                     display_half_width(*c.estimate));
        else
          fmt::print("{:<4} {:<7}    n/a ({})\n", to_string(c.process), to_string(c.metric), c.note);
      }
      fmt::print("wrote {}\n", out_dir);
      return 0;
    }

    if (fetch->parsed()) {
      const auto bytes = fetch_snapshot(url, out_path, overwrite);
      fmt::print("{} bytes -> {}\n", bytes, out_path);
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    fmt::print(stderr, "exf: error: {}\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    // Parse, empty-graph, convergence, fetch and I/O failures.
    fmt::print(stderr, "exf: error: {}\n", e.what());
    return 2;
  }
  return 1;
}
