#include "semmap/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "semmap/error.hpp"
#include "semmap/metrics.hpp"

namespace semmap {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ConceptGraph rg1(std::size_t n, double p, Rng& rng,
                 std::vector<std::string> labels) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("edge probability must lie in [0, 1]");
  }
  ConceptGraph graph(n, std::move(labels));
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) graph.add_edge(u, v, Weight(1));
    }
  }
  return graph;
}

ConceptGraph rg2(const ConceptGraph& dense, double target_edges, Rng& rng) {
  if (!(target_edges > 0.0)) {
    throw std::invalid_argument("target edge count must be positive");
  }
  const auto edges = dense.edges();
  Weight total(0);
  for (const auto& e : edges) total += e.w;
  if (total == Weight(0)) {
    throw std::invalid_argument(
        "weight-proportional sampling needs at least one positive weight");
  }
  const double sum = to_double(total);
  ConceptGraph graph(dense.num_nodes(), dense.labels());
  for (const auto& e : edges) {
    // One draw per edge, zero weights included, so the stream position of
    // an edge does not depend on the weights of the others.
    const double p = std::min(1.0, target_edges * to_double(e.w) / sum);
    if (rng.bernoulli(p) && e.w > Weight(0)) graph.add_edge(e.u, e.v, e.w);
  }
  return graph;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("pearson: sequences differ in length");
  }
  if (xs.size() < 2) {
    throw std::invalid_argument("pearson: need at least 2 pairs");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw std::invalid_argument(
        "pearson: correlation undefined for a constant sequence");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

Summary summarize(std::span<const double> values) {
  Summary out;
  if (values.empty()) return out;
  const double k = static_cast<double>(values.size());
  for (double v : values) out.mean += v;
  out.mean /= k;
  double var = 0;
  for (double v : values) var += (v - out.mean) * (v - out.mean);
  out.std_dev = std::sqrt(var / k);
  return out;
}

Generator parse_generator(std::string_view name) {
  if (name == "rg1") return Generator::kRg1;
  if (name == "rg2") return Generator::kRg2;
  throw std::invalid_argument("unknown generator '" + std::string(name) +
                              "' (expected rg1 or rg2)");
}

std::string_view to_string(Generator generator) {
  return generator == Generator::kRg1 ? "rg1" : "rg2";
}

StudyResult correlation_study(const FormFunctionMatrix& matrix,
                              const ConceptGraph& reference,
                              const StudyConfig& config) {
  const std::size_t n = matrix.num_functions();
  if (reference.num_nodes() != n) {
    throw DimensionMismatch("reference map does not match the matrix", n,
                            reference.num_nodes());
  }
  if (config.rounds == 0 || config.samples_per_round < 2) {
    throw std::invalid_argument(
        "study needs at least 1 round of at least 2 samples");
  }

  StudyResult result;
  result.config = config;
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2;
  result.rg1_edge_probability =
      config.rg1_edge_probability.value_or((static_cast<double>(n) - 1) / pairs);
  result.rg2_target_edge_count =
      config.rg2_target_edge_count.value_or(static_cast<double>(n) - 1);
  result.config.rg1_edge_probability = result.rg1_edge_probability;
  result.config.rg2_target_edge_count = result.rg2_target_edge_count;

  const ConceptGraph dense = build_dense_graph(matrix);
  const AdjacencyMatrix target = adjacency_matrix(reference);

  for (std::size_t round = 0; round < config.rounds; ++round) {
    Rng rng(mix_seed(config.seed, round));
    std::vector<double> degree_spread, acc;
    degree_spread.reserve(config.samples_per_round);
    acc.reserve(config.samples_per_round);
    for (std::size_t s = 0; s < config.samples_per_round; ++s) {
      ConceptGraph sample =
          config.generator == Generator::kRg1
              ? rg1(n, result.rg1_edge_probability, rng, dense.labels())
              : rg2(dense, result.rg2_target_edge_count, rng);
      degree_spread.push_back(div_d(sample));
      acc.push_back(accuracy(adjacency_matrix(sample), target));
    }
    try {
      result.per_round_r.push_back(pearson(degree_spread, acc));
    } catch (const std::invalid_argument& e) {
      throw DegenerateStudy(round + 1, "round " + std::to_string(round + 1) +
                                       " is degenerate: " + e.what());
    }
  }

  auto summary = summarize(result.per_round_r);
  result.mean = summary.mean;
  result.std_dev = summary.std_dev;
  return result;
}

}  // namespace semmap
