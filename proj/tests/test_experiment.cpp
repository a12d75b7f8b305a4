#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <omp.h>

#include "exf/experiment.hpp"
#include "oracles/oracles.hpp"

using namespace exf;

namespace {

std::size_t count(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1))
    ++n;
  return n;
}

ExperimentReport synthetic_report() {
  ExperimentReport r;
  for (Process p : r.config.processes)
    for (Metric m : {Metric::Exf, Metric::KShell, Metric::Evc}) {
      CorrelationCell c;
      c.process = p;
      c.metric = m;
      c.estimate = CorrelationEstimate{0.5, 0.4, 0.6, 0.1, 100};
      r.correlations.push_back(c);
    }
  r.config.metrics = {Metric::Exf, Metric::KShell, Metric::Evc};
  return r;
}

}  // namespace

TEST_CASE("sample_seeds") {
  const Graph g = generate_pa_graph(200, 2, 0.4, 1);
  SUBCASE("whole component is a permutation of it") {
    const auto s = sample_seeds(g, 200, 3);
    CHECK(std::set<NodeId>(s.begin(), s.end()).size() == 200);
  }
  SUBCASE("deterministic in the master seed") {
    CHECK(sample_seeds(g, 50, 3) == sample_seeds(g, 50, 3));
    CHECK(sample_seeds(g, 50, 3) != sample_seeds(g, 50, 4));
  }
  SUBCASE("never draws outside the largest component") {
    const Graph h = Graph::from_edges(7, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {5, 6}});
    for (std::uint64_t seed = 0; seed < 50; ++seed)
      for (NodeId v : sample_seeds(h, 3, seed)) CHECK(v <= 3);
    CHECK_THROWS_AS(sample_seeds(h, 5, 1), std::invalid_argument);
  }
  SUBCASE("uniform over nodes") {
    const Graph k = oracle::complete_graph(10);
    std::vector<int> hits(10, 0);
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) ++hits[sample_seeds(k, 1, static_cast<std::uint64_t>(i))[0]];
    const double mean = draws / 10.0, sd = std::sqrt(draws * 0.1 * 0.9);
    for (int h : hits) CHECK(std::abs(h - mean) < 4.0 * sd);
  }
}

TEST_CASE("Pearson examples") {
  SUBCASE("exact linear relation") {
    const std::vector<double> x{1, 2, 3, 4, 5}, y{3, 5, 7, 9, 11};
    const auto e = pearson_correlation_ci(x, y);
    CHECK(e.r == doctest::Approx(1.0));
    CHECK(e.lower == e.r);
    CHECK(e.upper == e.r);
    CHECK(e.n == 5);
  }
  SUBCASE("negative relation") {
    const std::vector<double> x{1, 2, 3, 4, 5}, y{5, 4, 3, 2, 1};
    CHECK(pearson_correlation_ci(x, y).r == doctest::Approx(-1.0));
  }
  SUBCASE("errors") {
    const std::vector<double> x{1, 2, 3, 4}, c{2, 2, 2, 2}, short_y{1, 2, 3};
    CHECK_THROWS_AS(pearson_correlation_ci(x, c), std::domain_error);
    CHECK_THROWS_AS(pearson_correlation_ci(x, short_y), std::invalid_argument);
    CHECK_THROWS_AS(pearson_correlation_ci(short_y, short_y), std::invalid_argument);
    CHECK_THROWS_AS(pearson_correlation_ci(x, x, 1.0), std::invalid_argument);
  }
}

TEST_CASE("Fisher interval half-widths for the reported correlations") {
  // Constructed samples hitting a target r exactly: y = r x + sqrt(1-r^2) z
  // with x and z centred, unit-variance and orthogonal.
  auto sample = [](double r, std::size_t n) {
    std::vector<double> x(n), z(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = (i % 2 ? 1.0 : -1.0);
      z[i] = (i / 2 % 2 ? 1.0 : -1.0);
    }
    for (std::size_t i = 0; i < n; ++i) y[i] = r * x[i] + std::sqrt(1 - r * r) * z[i];
    return std::pair{x, y};
  };
  auto [x1, y1] = sample(0.93, 1000);
  const auto a = pearson_correlation_ci(x1, y1);
  CHECK(a.r == doctest::Approx(0.93).epsilon(1e-12));
  CHECK(a.half_width == doctest::Approx(0.008403).epsilon(1e-3));
  CHECK(display_half_width(a) == doctest::Approx(0.01));
  auto [x2, y2] = sample(0.71, 1000);
  const auto b = pearson_correlation_ci(x2, y2);
  CHECK(b.half_width == doctest::Approx(0.030802).epsilon(1e-3));
  CHECK(display_half_width(b) == doctest::Approx(0.03));
}

TEST_CASE("Pearson agrees with the sum-of-products formula") {
  Rng rng(4);
  std::vector<double> x, y;
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform01(rng);
    x.push_back(u);
    y.push_back(u * u + 0.3 * uniform01(rng));
  }
  const auto e = pearson_correlation_ci(x, y);
  CHECK(std::abs(e.r - oracle::textbook_pearson(x, y)) < 1e-10);
  CHECK(e.lower < e.r);
  CHECK(e.upper > e.r);
  CHECK(e.half_width == doctest::Approx((e.upper - e.lower) / 2));
}

TEST_CASE("interval width shrinks like one over root n") {
  Rng rng(5);
  std::vector<double> x, y;
  for (int i = 0; i < 4000; ++i) {
    const double u = uniform01(rng);
    x.push_back(u);
    y.push_back(u + uniform01(rng));
  }
  const auto small = pearson_correlation_ci(std::span(x).first(1000), std::span(y).first(1000));
  const auto large = pearson_correlation_ci(x, y);
  // Width ratio is sqrt(3997 / 997) up to the tanh curvature.
  const double ratio = small.half_width / large.half_width;
  CHECK(ratio == doctest::Approx(std::sqrt(3997.0 / 997.0)).epsilon(0.05));
}

TEST_CASE("Spearman ranks") {
  const std::vector<double> v{10, 20, 20, 5};
  CHECK(average_ranks(v) == std::vector<double>{2, 3.5, 3.5, 1});
  const std::vector<double> x{1, 2, 3, 4, 5, 6}, y{1, 4, 9, 16, 25, 36};
  CHECK(spearman_correlation_ci(x, y).r == doctest::Approx(1.0));
}

TEST_CASE("outcome scores put stronger spreaders higher") {
  SeedOutcome fast, slow;
  fast.kind = slow.kind = Process::SI;
  fast.si_mean_time = 2.0;
  slow.si_mean_time = 9.0;
  CHECK(*outcome_score(fast, false) > *outcome_score(slow, false));
  CHECK(*outcome_score(fast, true) == doctest::Approx(-std::log1p(2.0)));
  SeedOutcome censored;
  censored.kind = Process::SI;
  CHECK_FALSE(outcome_score(censored, false).has_value());
  SeedOutcome sis;
  sis.kind = Process::SIS;
  sis.epidemic_potential = 0.4;
  CHECK(*outcome_score(sis, false) == 0.4);
  sis.error = "rejected";
  CHECK_FALSE(outcome_score(sis, false).has_value());

  // A metric that tracks speed must correlate positively with the score.
  std::vector<double> metric, score;
  for (int i = 1; i <= 10; ++i) {
    SeedOutcome o;
    o.kind = Process::SI;
    o.si_mean_time = 20.0 / i;
    metric.push_back(i);
    score.push_back(*outcome_score(o, false));
  }
  CHECK(pearson_correlation_ci(metric, score).r > 0.8);
}

TEST_CASE("run_experiment on a small graph") {
  const Graph g = generate_pa_graph(120, 2, 0.4, 7);
  ExperimentConfig cfg;
  cfg.sample_size = 30;
  cfg.runs_per_seed = 20;
  const auto report = run_experiment(g, cfg);
  CHECK(report.seeds.size() == 30);
  CHECK(report.metrics.size() == 30);
  CHECK(report.processes.size() == 3);
  CHECK(report.correlations.size() == 12);
  CHECK(report.beta == doctest::Approx(std::min(1.0, 2.0 * 0.5 / report.lambda)));
  for (const auto& c : report.correlations) {
    if (!c.estimate) continue;
    CHECK(c.estimate->lower <= c.estimate->r);
    CHECK(c.estimate->r <= c.estimate->upper);
  }

  SUBCASE("byte-identical output for the same config and any thread count") {
    std::ostringstream a, b;
    write_correlations_csv(report, a);
    omp_set_num_threads(3);
    write_correlations_csv(run_experiment(g, cfg), b);
    omp_set_num_threads(1);
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("process,metric,r,lower,upper,half_width,n\n", 0) == 0);
  }
  SUBCASE("bundle writes every artefact") {
    const auto dir = std::filesystem::temp_directory_path() / "exf_bundle_test";
    std::filesystem::remove_all(dir);
    write_report_bundle(g, report, BundleInfo{"mem", "0", 1}, dir);
    for (const char* f : {"metrics.csv", "correlations.csv", "dataset.csv", "outcomes_si.csv",
                          "outcomes_sis.csv", "outcomes_sir.csv", "figure.svg", "meta.json"})
      CHECK(std::filesystem::exists(dir / f));
    std::ifstream meta(dir / "meta.json");
    const auto j = nlohmann::json::parse(meta);
    CHECK(j["processes"].size() == 3);
    CHECK(j["config"]["master_seed"] == 1);
    std::filesystem::remove_all(dir);
  }
  SUBCASE("invalid configuration is rejected") {
    ExperimentConfig bad = cfg;
    bad.sample_size = 0;
    CHECK_THROWS_AS(run_experiment(g, bad), std::invalid_argument);
    bad = cfg;
    bad.sample_size = 500;
    CHECK_THROWS_AS(run_experiment(g, bad), std::invalid_argument);
  }
}

TEST_CASE("undefined correlations are reported, not fabricated") {
  // K6: every node has identical metrics, so the correlation is undefined.
  ExperimentConfig cfg;
  cfg.sample_size = 6;
  cfg.runs_per_seed = 5;
  const auto report = run_experiment(oracle::complete_graph(6), cfg);
  for (const auto& c : report.correlations) {
    CHECK_FALSE(c.estimate.has_value());
    CHECK_FALSE(c.note.empty());
  }
  std::ostringstream csv;
  write_correlations_csv(report, csv);
  CHECK(csv.str().find("si,exf,,,,,\n") != std::string::npos);
  const auto svg = render_figure(report);
  CHECK(count(svg, "class=\"undefined\"") == 12);
}

TEST_CASE("figure layout") {
  const auto report = synthetic_report();
  const auto svg = render_figure(report);
  CHECK(count(svg, "<rect class=\"bar\"") == 9);
  CHECK(count(svg, "<g class=\"whisker\"") == 9);
  CHECK(svg == render_figure(report));
  CHECK(svg.rfind("<svg", 0) == 0);

  auto zero = report;
  zero.correlations[0].estimate = CorrelationEstimate{0.0, -0.1, 0.1, 0.1, 100};
  CHECK(render_figure(zero).find("height=\"0.00\"") != std::string::npos);

  CHECK_THROWS_AS(render_figure(ExperimentReport{}), std::invalid_argument);
}
