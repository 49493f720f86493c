#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "semmap/concept_graph.hpp"
#include "semmap/matrix.hpp"

namespace semmap {

// Seedable source with a bit-identical stream on every platform: the engine
// is fixed by the standard and the [0, 1) conversion is done by hand.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finalizer; used to derive independent per-round seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Every one of the n(n-1)/2 edges independently with probability p, unit
// weight.
ConceptGraph rg1(std::size_t n, double p, Rng& rng,
                 std::vector<std::string> labels = {});

// Edge e of `dense` independently with probability
// min(1, target_edges * w(e) / sum(w)); keeps the original weights. Zero-weight
// edges never appear. Throws std::invalid_argument if every weight is zero.
ConceptGraph rg2(const ConceptGraph& dense, double target_edges, Rng& rng);

// Pearson product-moment correlation. Throws std::invalid_argument for
// mismatched or short inputs or a constant sequence.
double pearson(std::span<const double> xs, std::span<const double> ys);

struct Summary {
  double mean = 0.0;
  double std_dev = 0.0;  // population
};
Summary summarize(std::span<const double> values);

enum class Generator { kRg1, kRg2 };
Generator parse_generator(std::string_view name);
std::string_view to_string(Generator generator);

struct StudyConfig {
  std::size_t rounds = 5;
  std::size_t samples_per_round = 1000;
  Generator generator = Generator::kRg1;
  // Unset: density matched to a spanning tree, (n-1) / C(n,2) = 2/n.
  std::optional<double> rg1_edge_probability;
  // Unset: n - 1.
  std::optional<double> rg2_target_edge_count;
  std::uint64_t seed = 0;
};

// Raised when a round has zero variance in either variable.
class DegenerateStudy : public std::invalid_argument {
 public:
  DegenerateStudy(std::size_t round, const std::string& what)
      : std::invalid_argument(what), round_(round) {}
  // 1-based, as in the message.
  std::size_t round() const { return round_; }

 private:
  std::size_t round_;
};

struct StudyResult {
  StudyConfig config;  // with defaults resolved
  double rg1_edge_probability = 0.0;
  double rg2_target_edge_count = 0.0;
  std::vector<double> per_round_r;
  double mean = 0.0;
  double std_dev = 0.0;  // population, over rounds
};

// Per round: sample graphs, pair div_d with accuracy against `reference`,
// correlate. RG_2 samples from the dense graph of `matrix`.
StudyResult correlation_study(const FormFunctionMatrix& matrix,
                              const ConceptGraph& reference,
                              const StudyConfig& config);

}  // namespace semmap
