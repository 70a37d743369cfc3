#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "clickbic/metrics.hpp"
#include "clickbic/random.hpp"
#include "clickbic/types.hpp"

namespace clickbic::evolve {

/// Membership string of length users + pages: bit k < users marks row k,
/// bit users + k marks column k.
struct Chromosome {
  std::vector<std::uint8_t> bits;
  std::size_t users = 0;
  std::size_t pages = 0;

  friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

Chromosome encode(const Bicluster& b, std::size_t n, std::size_t m);
Bicluster decode(const Chromosome& c, std::size_t n, std::size_t m);
inline Bicluster decode(const Chromosome& c) { return decode(c, c.users, c.pages); }

/// Roulette-wheel selection: index i with probability f_i / sum(f), or
/// uniformly when every fitness is zero. Throws on negative fitness.
std::size_t select_rws(std::span<const double> fitness, Rng& rng);

/// One-point crossover applied separately to the user and page segments.
/// Draws the user cut, then the page cut. Throws if either segment is
/// shorter than 2.
std::pair<Chromosome, Chromosome> crossover(const Chromosome& a, const Chromosome& b, Rng& rng);

/// Flips each bit independently with probability `rate`. Draws exactly one
/// uniform per bit whatever the rate.
Chromosome mutate(Chromosome c, double rate, Rng& rng);

enum class DeltaMode {
  fixed,             // use GaConfig::delta
  max_initial_acv,   // best ACV in the initial population, fixed for the run
};

struct GaConfig {
  std::size_t population_size = 114;
  std::size_t generations = 100;
  double crossover_fraction = 0.7;
  double mutation_probability = 0.01;
  double delta = 0.95;
  DeltaMode delta_mode = DeltaMode::fixed;
  std::size_t elitism = 1;
  std::uint64_t seed = 1;

  void validate() const;
};

struct GenerationRecord {
  std::size_t generation = 0;  // 0 is the initial population
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  double best_acv = 0.0;
  std::size_t best_volume = 0;
};

struct GaResult {
  Bicluster best;           // highest fitness ever seen; ties to higher ACV, then earlier
  metrics::Score best_score;
  std::vector<Chromosome> population;  // final generation
  std::vector<metrics::Score> scores;  // aligned with population
  std::vector<GenerationRecord> history;
  double delta = 0.0;  // threshold actually used
};

/// Fitness and ACV of every member, computed in parallel.
std::vector<metrics::Score> evaluate_population(const AccessMatrix& matrix,
                                                std::span<const Chromosome> population,
                                                double delta);

namespace reference {
std::vector<metrics::Score> evaluate_population(const AccessMatrix& matrix,
                                                std::span<const Chromosome> population,
                                                double delta);
}

/// Fits `initial` to the population size: pads with mutated copies of random
/// members, or keeps the highest-ACV members in order.
std::vector<Chromosome> initial_population(const AccessMatrix& matrix,
                                           std::span<const Bicluster> initial,
                                           const GaConfig& cfg, Rng& rng);

/// Generational GA. Per generation, in this RNG order: elites are copied
/// unchanged; round(cp * size) slots are filled with crossover children of
/// roulette-selected parent pairs; remaining slots take roulette-selected
/// copies; every non-elite slot is then mutated in slot order.
GaResult run_ga(const AccessMatrix& matrix, std::span<const Bicluster> initial,
                const GaConfig& cfg);

/// Distinct nonzero-fitness members of the final population, first
/// occurrence order.
std::vector<Bicluster> distinct_fit(const GaResult& result);

}  // namespace clickbic::evolve
