#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "leadlag/rank.hpp"
#include "leadlag/synthetic.hpp"
#include "oracles.hpp"

using namespace leadlag;

namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

std::vector<double> random_weights(std::mt19937_64& rng, std::size_t n, double density) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i != j && u(rng) < density) w[j * n + i] = u(rng);
    }
  }
  return w;
}

LeadLagGraph hand_graph(std::size_t vars, std::size_t max_lag, std::vector<LeadLagEdge> edges) {
  LeadLagGraph g;
  g.variable_names = synthetic_names(vars);
  g.max_lag = max_lag;
  g.edges = std::move(edges);
  validate(g);
  return g;
}

}  // namespace

TEST(PageRank, UniformCases) {
  const PageRankConfig cfg;
  for (auto w : {std::vector<double>{0, 1, 1, 0}, std::vector<double>{0, 0, 0, 0}}) {
    const auto pr = pagerank(w, 2, cfg);
    EXPECT_NEAR(pr[0], 0.5, 1e-10);
    EXPECT_NEAR(pr[1], 0.5, 1e-10);
  }
  // complete symmetric graph on 3 nodes
  const auto pr = pagerank(std::vector<double>{0, 2, 2, 2, 0, 2, 2, 2, 0}, 3, cfg);
  for (double p : pr) EXPECT_NEAR(p, 1.0 / 3.0, 1e-10);
}

TEST(PageRank, AllZeroIsExactlyUniform) {
  for (std::size_t n : {1u, 2u, 13u}) {
    const auto pr = pagerank(std::vector<double>(n * n, 0.0), n, PageRankConfig{});
    for (double p : pr) EXPECT_EQ(p, 1.0 / static_cast<double>(n));
  }
}

TEST(PageRank, TwoNodeSingleEdge) {
  // edge 0 -> 1; node 0 receives only teleport and node 1's dangling mass
  const auto pr = pagerank(std::vector<double>{0, 1, 0, 0}, 2, PageRankConfig{});
  const auto ref = oracle::pagerank_direct({0, 1, 0, 0}, 2, 0.85);
  EXPECT_GT(pr[1], pr[0]);
  EXPECT_NEAR(pr[0], ref[0], 1e-9);
  // closed form: x0 = (1 - d) / 2 + d x1 / 2, x1 = 1 - x0 -> x0 = 1 / (2 + d)
  EXPECT_NEAR(pr[0], 1.0 / 2.85, 1e-9);
}

TEST(PageRank, MatchesLinearSolveOnRandomGraphs) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = trial % 2 ? 13 : 3;
    const auto w = random_weights(rng, n, trial % 5 == 0 ? 0.3 : 0.8);
    for (double d : {0.5, 0.85}) {
      PageRankConfig cfg;
      cfg.damping = d;
      const auto pr = pagerank(w, n, cfg);
      const auto ref = oracle::pagerank_direct(w, n, d);
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(pr[i], ref[i], 1e-8) << trial;
      EXPECT_NEAR(sum(pr), 1.0, 1e-9);
      for (double p : pr) EXPECT_GT(p, 0.0);
    }
  }
}

TEST(PageRank, ScaleInvarianceProperty) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto w = random_weights(rng, 13, 0.6);
    const auto base = pagerank(w, 13, PageRankConfig{});
    for (double c : {0.01, 1.0, 100.0}) {
      auto scaled = w;
      for (auto& x : scaled) x *= c;
      const auto pr = pagerank(scaled, 13, PageRankConfig{});
      for (std::size_t i = 0; i < 13; ++i) EXPECT_NEAR(pr[i], base[i], 1e-10);
    }
  }
}

TEST(PageRank, NonConvergenceIsReported) {
  PageRankConfig cfg;
  cfg.max_iterations = 2;
  cfg.tolerance = 1e-15;
  std::mt19937_64 rng(3);
  const auto w = random_weights(rng, 13, 0.5);
  try {
    pagerank(w, 13, cfg);
    FAIL();
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("residual"), std::string::npos);
  }
}

TEST(PageRank, RejectsBadConfiguration) {
  PageRankConfig cfg;
  cfg.damping = 1.0;
  EXPECT_THROW(pagerank(std::vector<double>{0, 1, 1, 0}, 2, cfg), UsageError);
  EXPECT_THROW(pagerank(std::vector<double>{0, 1, 1}, 2, PageRankConfig{}), DataError);
}

TEST(RankSweep, ShapesAndSummaries) {
  const auto panel = build_lags(oracle::random_returns(13, 41, 50), 12);
  const auto graph = build_lead_lag_graph(panel, MetricKind::Correlation, {});
  const auto report = rank_sweep(graph, default_a_grid(), PageRankConfig{});
  ASSERT_EQ(report.a_values.size(), 10u);
  for (const auto* side : {&report.influential, &report.influenced}) {
    ASSERT_EQ(side->pr.size(), 10u);
    for (const auto& row : side->pr) {
      ASSERT_EQ(row.size(), 13u);
      EXPECT_NEAR(sum(row), 1.0, 1e-9);
    }
    for (std::size_t v = 0; v < 13; ++v) {
      double lo = 1, hi = 0, mean = 0;
      for (const auto& row : side->pr) {
        lo = std::min(lo, row[v]);
        hi = std::max(hi, row[v]);
        mean += row[v] / 10.0;
      }
      EXPECT_NEAR(side->average[v], mean, 1e-15);
      EXPECT_EQ(side->range[v], hi - lo);
    }
    for (std::size_t p = 1; p < 13; ++p) EXPECT_GE(side->average[side->order[p - 1]], side->average[side->order[p]]);
  }
}

TEST(RankSweep, SingletonGrid) {
  const auto panel = build_lags(oracle::random_returns(3, 20, 51), 2);
  const auto graph = build_lead_lag_graph(panel, MetricKind::Correlation, {});
  const auto report = rank_sweep(graph, {0.5}, PageRankConfig{});
  for (std::size_t v = 0; v < 3; ++v) {
    EXPECT_EQ(report.influential.range[v], 0.0);
    EXPECT_EQ(report.influential.average[v], report.influential.pr[0][v]);
  }
}

TEST(RankSweep, ZeroDecayGivesUniformRanks) {
  const auto panel = build_lags(oracle::random_returns(4, 20, 52), 3);
  const auto graph = build_lead_lag_graph(panel, MetricKind::Correlation, {});
  const auto report = rank_sweep(graph, {0.0}, PageRankConfig{});
  for (double p : report.influential.pr[0]) EXPECT_EQ(p, 0.25);
  for (double p : report.influenced.pr[0]) EXPECT_EQ(p, 0.25);
}

TEST(RankSweep, SymmetricRawsGiveIdenticalOrientations) {
  // every ordered variable pair carries the same edge set
  std::vector<LeadLagEdge> edges;
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t i = 0; i < 3; ++i) {
      if (i != j) {
        edges.push_back({{j, 0}, {i, 1}, 0.4, 1});
        edges.push_back({{j, 0}, {i, 2}, 0.2, 2});
        edges.push_back({{j, 1}, {i, 2}, 0.4, 1});
      }
    }
  }
  const auto report = rank_sweep(hand_graph(3, 2, edges), default_a_grid(), PageRankConfig{});
  for (std::size_t ai = 0; ai < 10; ++ai) {
    for (std::size_t v = 0; v < 3; ++v) EXPECT_NEAR(report.influential.pr[ai][v], report.influenced.pr[ai][v], 1e-12);
  }
}

TEST(RankSweep, DominantLeadRanksFirst) {
  // variable 0 leads both others strongly; the reverse direction is weak
  std::vector<LeadLagEdge> edges;
  for (std::size_t i = 1; i < 3; ++i) {
    edges.push_back({{i, 0}, {0, 1}, 0.9, 1});
    edges.push_back({{0, 0}, {i, 1}, 0.05, 1});
  }
  edges.push_back({{1, 0}, {2, 1}, 0.1, 1});
  edges.push_back({{2, 0}, {1, 1}, 0.1, 1});
  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); });
  const auto report = rank_sweep(hand_graph(3, 1, edges), {0.5, 1.0}, PageRankConfig{});
  EXPECT_EQ(report.most_influential(), 0u);
  EXPECT_NE(report.most_influenced(), 0u);
}

TEST(RankSweep, IndependentOfWorkerCount) {
  const auto panel = build_lags(rate_of_change(synthetic_table()), 12);
  const auto graph = build_lead_lag_graph(panel, MetricKind::Correlation, {});
  const auto one = rank_sweep(graph, default_a_grid(), PageRankConfig{}, 1);
  const auto many = rank_sweep(graph, default_a_grid(), PageRankConfig{}, 8);
  EXPECT_EQ(one.influential.pr, many.influential.pr);
  EXPECT_EQ(one.influenced.pr, many.influenced.pr);
}

TEST(RankSweep, SyntheticLeadStableAcrossDamping) {
  const auto panel = build_lags(rate_of_change(synthetic_table()), 12);
  const auto graph = build_lead_lag_graph(panel, MetricKind::Correlation, {});
  for (double d : {0.5, 0.85, 0.95}) {
    PageRankConfig cfg;
    cfg.damping = d;
    cfg.max_iterations = 1000;
    const auto report = rank_sweep(graph, {0.5, 0.6, 0.7, 0.8, 0.9, 1.0}, cfg);
    for (const auto& row : report.influential.pr) {
      EXPECT_EQ(std::max_element(row.begin(), row.end()) - row.begin(), 4) << "d=" << d;
    }
  }
}
