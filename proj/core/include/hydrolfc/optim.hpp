#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "hydrolfc/metrics.hpp"
#include "hydrolfc/surrogate.hpp"

namespace hydrolfc::optim {

// Twelve shape genes: quads for the error, error-rate and output
// membership families, in that order. Every gene lives in [0.01, 0.99].
struct Chromosome {
  static constexpr int kGeneCount = 12;

  std::array<double, kGeneCount> genes{};

  // All genes at 0.5: the symmetric hand-tuned families. Seeded into every
  // initial population so the optimizer never loses to its own starting
  // point.
  static Chromosome baseline();

  void validate() const;
  bool operator==(const Chromosome&) const = default;
};

struct GaConfig {
  int population_size = 100;
  int elite_count = 5;
  double crossover_rate = 0.2;
  double mutation_rate = 0.02;
  double mutation_sigma = 0.1;
  int max_generations = 50;
  std::uint64_t seed = 1;
  // Fitness evaluation workers; 0 picks the hardware concurrency. Results
  // are identical for any value.
  int threads = 1;

  void validate() const;
};

enum class EvalSource { kSimulation, kSurrogate };

struct FitnessValue {
  double j = 0.0;
  bool diverged = false;
};

struct FitnessRecord {
  Chromosome chromosome;
  double j = 0.0;
  EvalSource evaluated_by = EvalSource::kSimulation;
  bool diverged = false;
};

using Objective = std::function<FitnessValue(const Chromosome&)>;

struct GenerationStats {
  int generation = 0;
  double best_j = 0.0;  // best simulation-evaluated J seen so far
  double mean_j = 0.0;  // mean J over the current population
  long long true_evaluations = 0;  // cumulative simulation evaluations
};

struct GaResult {
  FitnessRecord best;
  std::vector<GenerationStats> history;
  long long true_evaluations = 0;
};

// Real-coded GA: tournament selection (size 3), blend crossover, per-gene
// gaussian mutation, elitism. All random draws come from per-slot streams
// derived from (seed, generation, slot), so results are bit-identical for
// any thread count.
GaResult ga_run(const GaConfig& cfg, const Objective& objective);

// Same loop with surrogate pre-screening: each generation's offspring are
// ranked by the surrogate and only the top screen_ratio fraction receive a
// simulation evaluation; the rest carry the surrogate estimate and never
// enter the elite set. Elites are always simulation-evaluated, and the
// surrogate is refit each generation on every simulation record so far.
// screen_ratio = 1 reproduces ga_run bit-for-bit.
GaResult ga_dsnn_run(const GaConfig& cfg, const Objective& objective,
                     double screen_ratio,
                     const surrogate::SurrogateConfig& surrogate_config = {});

// Generated-versus-available energy ratio over the trace window, by
// trapezoidal integration of the generation channel.
double efficiency(const metrics::SimTrace& trace, double p_max_kw);

}  // namespace hydrolfc::optim
