#include "hydrolfc/optim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <utility>

#include "hydrolfc/fuzzy.hpp"
#include "hydrolfc/rng.hpp"

namespace hydrolfc::optim {

namespace {

double clamp_gene(double g) {
  return std::clamp(g, fuzzy::kGeneMin, fuzzy::kGeneMax);
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Evaluates the objective for every index in `todo`, writing results into
// the matching population slots. The objective must be pure; work is
// dispatched by index so the outcome does not depend on scheduling.
void evaluate_true(std::vector<FitnessRecord>& pop,
                   const std::vector<std::size_t>& todo,
                   const Objective& objective, int threads) {
  const int workers =
      std::min<int>(resolve_threads(threads), static_cast<int>(todo.size()));
  auto eval_one = [&](std::size_t slot) {
    const FitnessValue v = objective(pop[slot].chromosome);
    pop[slot].j = v.j;
    pop[slot].diverged = v.diverged;
    pop[slot].evaluated_by = EvalSource::kSimulation;
  };
  if (workers <= 1) {
    for (std::size_t slot : todo) eval_one(slot);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= todo.size()) return;
        try {
          eval_one(todo[i]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// Winner of a size-3 tournament over the previous population; ties broken
// by slot index so the draw order fully determines the result.
std::size_t tournament(const std::vector<FitnessRecord>& pop,
                       rng::Stream& stream) {
  std::size_t best = pop.size();
  for (int k = 0; k < 3; ++k) {
    const auto c =
        static_cast<std::size_t>(stream.next_index(static_cast<int>(pop.size())));
    if (best == pop.size() || pop[c].j < pop[best].j ||
        (pop[c].j == pop[best].j && c < best)) {
      best = c;
    }
  }
  return best;
}

Chromosome breed(const std::vector<FitnessRecord>& prev, const GaConfig& cfg,
                 rng::Stream& stream) {
  const std::size_t p1 = tournament(prev, stream);
  const std::size_t p2 = tournament(prev, stream);
  Chromosome child = prev[p1].chromosome;
  if (stream.next_unit() < cfg.crossover_rate) {
    // Blend crossover (alpha = 0.5): sample inside the gene interval
    // extended by half its width on both sides.
    const auto& a = prev[p1].chromosome.genes;
    const auto& b = prev[p2].chromosome.genes;
    for (int i = 0; i < Chromosome::kGeneCount; ++i) {
      const double lo = std::min(a[i], b[i]);
      const double hi = std::max(a[i], b[i]);
      const double d = hi - lo;
      child.genes[i] =
          clamp_gene(stream.next_uniform(lo - 0.5 * d, hi + 0.5 * d));
    }
  }
  for (int i = 0; i < Chromosome::kGeneCount; ++i) {
    if (stream.next_unit() < cfg.mutation_rate) {
      child.genes[i] = clamp_gene(child.genes[i] +
                                  cfg.mutation_sigma * stream.next_gaussian());
    }
  }
  return child;
}

// Indices of the elite_count best simulation-evaluated records, ordered by
// (J, slot).
std::vector<std::size_t> elite_indices(const std::vector<FitnessRecord>& pop,
                                       int elite_count) {
  std::vector<std::size_t> order;
  order.reserve(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) {
    if (pop[i].evaluated_by == EvalSource::kSimulation) order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (pop[a].j != pop[b].j) return pop[a].j < pop[b].j;
    return a < b;
  });
  if (order.size() > static_cast<std::size_t>(elite_count))
    order.resize(static_cast<std::size_t>(elite_count));
  return order;
}

double population_mean_j(const std::vector<FitnessRecord>& pop) {
  double acc = 0.0;
  for (const auto& r : pop) acc += r.j;
  return acc / static_cast<double>(pop.size());
}

struct ScreeningState {
  double ratio = 1.0;
  surrogate::SurrogateConfig config;
  std::vector<std::vector<double>> archive_x;
  std::vector<double> archive_y;
  std::unique_ptr<surrogate::SurrogateNet> net;

  void remember(const FitnessRecord& rec) {
    archive_x.emplace_back(rec.chromosome.genes.begin(),
                           rec.chromosome.genes.end());
    archive_y.push_back(rec.j);
  }
};

GaResult evolve(const GaConfig& cfg, const Objective& objective,
                ScreeningState* screening) {
  cfg.validate();

  const auto pop_size = static_cast<std::size_t>(cfg.population_size);
  std::vector<FitnessRecord> pop(pop_size);
  pop[0].chromosome = Chromosome::baseline();
  for (std::size_t slot = 1; slot < pop_size; ++slot) {
    auto stream = rng::derive_stream(cfg.seed, 0, slot,
                                     rng::Salt::kPopulationInit);
    for (auto& g : pop[slot].chromosome.genes)
      g = stream.next_uniform(fuzzy::kGeneMin, fuzzy::kGeneMax);
  }

  GaResult result;
  std::vector<std::size_t> all(pop_size);
  std::iota(all.begin(), all.end(), std::size_t{0});
  evaluate_true(pop, all, objective, cfg.threads);
  result.true_evaluations += static_cast<long long>(pop_size);

  auto better = [](const FitnessRecord& a, const FitnessRecord& b) {
    return a.j < b.j;
  };
  FitnessRecord best = pop[0];
  for (const auto& r : pop)
    if (better(r, best)) best = r;
  if (screening)
    for (const auto& r : pop) screening->remember(r);

  result.history.push_back(
      {0, best.j, population_mean_j(pop), result.true_evaluations});

  for (int gen = 1; gen <= cfg.max_generations; ++gen) {
    const auto elites = elite_indices(pop, cfg.elite_count);
    std::vector<FitnessRecord> next(pop_size);
    for (std::size_t k = 0; k < elites.size(); ++k) next[k] = pop[elites[k]];
    for (std::size_t slot = elites.size(); slot < pop_size; ++slot) {
      auto stream = rng::derive_stream(cfg.seed, static_cast<std::uint64_t>(gen),
                                       slot, rng::Salt::kBreeding);
      next[slot].chromosome = breed(pop, cfg, stream);
    }

    std::vector<std::size_t> offspring;
    for (std::size_t slot = elites.size(); slot < pop_size; ++slot)
      offspring.push_back(slot);

    std::vector<std::size_t> to_simulate = offspring;
    if (screening && screening->ratio < 1.0 &&
        screening->archive_y.size() >=
            static_cast<std::size_t>(screening->config.hidden)) {
      if (!screening->net) {
        screening->net = std::make_unique<surrogate::SurrogateNet>(
            surrogate::SurrogateNet::random(Chromosome::kGeneCount,
                                            screening->config));
      }
      screening->net->train(screening->archive_x, screening->archive_y);
      std::vector<std::pair<double, std::size_t>> ranked;
      ranked.reserve(offspring.size());
      for (std::size_t slot : offspring) {
        const double estimate =
            screening->net->predict(next[slot].chromosome.genes);
        next[slot].j = estimate;
        next[slot].evaluated_by = EvalSource::kSurrogate;
        next[slot].diverged = false;
        ranked.emplace_back(estimate, slot);
      }
      std::sort(ranked.begin(), ranked.end());
      const auto n_true = static_cast<std::size_t>(std::min<double>(
          static_cast<double>(offspring.size()),
          std::ceil(screening->ratio * static_cast<double>(offspring.size()))));
      to_simulate.clear();
      for (std::size_t k = 0; k < n_true; ++k)
        to_simulate.push_back(ranked[k].second);
      std::sort(to_simulate.begin(), to_simulate.end());
    }

    evaluate_true(next, to_simulate, objective, cfg.threads);
    result.true_evaluations += static_cast<long long>(to_simulate.size());
    for (std::size_t slot : to_simulate) {
      if (screening) screening->remember(next[slot]);
      if (better(next[slot], best)) best = next[slot];
    }

    pop = std::move(next);
    result.history.push_back(
        {gen, best.j, population_mean_j(pop), result.true_evaluations});
  }

  result.best = best;
  return result;
}

}  // namespace

Chromosome Chromosome::baseline() {
  Chromosome c;
  c.genes.fill(0.5);
  return c;
}

void Chromosome::validate() const {
  for (double g : genes) {
    if (!(g >= fuzzy::kGeneMin && g <= fuzzy::kGeneMax))
      throw std::domain_error("gene outside [0.01, 0.99]");
  }
}

void GaConfig::validate() const {
  if (population_size < 2)
    throw std::domain_error("population_size must be >= 2");
  if (elite_count < 1 || elite_count >= population_size)
    throw std::domain_error("elite_count must satisfy 0 < elites < population");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0))
    throw std::domain_error("crossover_rate must lie in [0, 1]");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0))
    throw std::domain_error("mutation_rate must lie in [0, 1]");
  if (!(mutation_sigma > 0.0))
    throw std::domain_error("mutation_sigma must be > 0");
  if (max_generations < 1)
    throw std::domain_error("max_generations must be >= 1");
  if (threads < 0) throw std::domain_error("threads must be >= 0");
}

GaResult ga_run(const GaConfig& cfg, const Objective& objective) {
  return evolve(cfg, objective, nullptr);
}

GaResult ga_dsnn_run(const GaConfig& cfg, const Objective& objective,
                     double screen_ratio,
                     const surrogate::SurrogateConfig& surrogate_config) {
  if (!(screen_ratio > 0.0 && screen_ratio <= 1.0))
    throw std::domain_error("screen_ratio must lie in (0, 1]");
  surrogate_config.validate();
  ScreeningState screening;
  screening.ratio = screen_ratio;
  screening.config = surrogate_config;
  screening.config.seed = cfg.seed;
  return evolve(cfg, objective, &screening);
}

double efficiency(const metrics::SimTrace& trace, double p_max_kw) {
  trace.validate();
  if (!(p_max_kw > 0.0)) throw std::domain_error("p_max_kw must be > 0");
  const double span = trace.t_s.back() - trace.t_s.front();
  if (!(span > 0.0)) throw std::domain_error("trace window has zero length");
  double energy = 0.0;
  for (std::size_t k = 0; k + 1 < trace.size(); ++k) {
    energy += 0.5 * (trace.p_gen_kw[k] + trace.p_gen_kw[k + 1]) *
              (trace.t_s[k + 1] - trace.t_s[k]);
  }
  return energy / (p_max_kw * span);
}

}  // namespace hydrolfc::optim
