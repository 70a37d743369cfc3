#include "clickbic/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace clickbic::evolve {

Chromosome encode(const Bicluster& b, std::size_t n, std::size_t m) {
  check_bounds(b, n, m);
  Chromosome c{std::vector<std::uint8_t>(n + m, 0), n, m};
  for (auto i : b.rows) c.bits[i] = 1;
  for (auto j : b.cols) c.bits[n + j] = 1;
  return c;
}

Bicluster decode(const Chromosome& c, std::size_t n, std::size_t m) {
  if (c.bits.size() != n + m) throw Error("chromosome length does not equal rows + cols");
  Bicluster b;
  for (std::size_t i = 0; i < n; ++i)
    if (c.bits[i]) b.rows.push_back(i);
  for (std::size_t j = 0; j < m; ++j)
    if (c.bits[n + j]) b.cols.push_back(j);
  return b;
}

std::size_t select_rws(std::span<const double> fitness, Rng& rng) {
  if (fitness.empty()) throw Error("roulette selection over an empty population");
  double total = 0.0;
  for (double f : fitness) {
    if (!(f >= 0.0)) throw Error("roulette selection needs nonnegative fitness");
    total += f;
  }
  if (total == 0.0) return uniform_below(rng, fitness.size());
  double target = uniform01(rng) * total;
  for (std::size_t i = 0; i < fitness.size(); ++i) {
    if (fitness[i] == 0.0) continue;
    if (target < fitness[i]) return i;
    target -= fitness[i];
  }
  // Rounding can leave a sliver past the last slot; it belongs to the last
  // nonzero entry.
  std::size_t last = fitness.size() - 1;
  while (fitness[last] == 0.0) --last;
  return last;
}

std::pair<Chromosome, Chromosome> crossover(const Chromosome& a, const Chromosome& b, Rng& rng) {
  if (a.users != b.users || a.pages != b.pages || a.bits.size() != b.bits.size())
    throw Error("crossover parents differ in shape");
  if (a.users < 2 || a.pages < 2)
    throw Error("crossover needs at least 2 users and 2 pages for an interior cut");
  const std::size_t n = a.users;
  const std::size_t user_cut = 1 + uniform_below(rng, n - 1);
  const std::size_t page_cut = n + 1 + uniform_below(rng, a.pages - 1);
  Chromosome x = a, y = b;
  for (std::size_t k = user_cut; k < n; ++k) std::swap(x.bits[k], y.bits[k]);
  for (std::size_t k = page_cut; k < x.bits.size(); ++k) std::swap(x.bits[k], y.bits[k]);
  return {std::move(x), std::move(y)};
}

Chromosome mutate(Chromosome c, double rate, Rng& rng) {
  if (!(rate >= 0.0 && rate <= 1.0)) throw Error("mutation probability must lie in [0, 1]");
  for (auto& bit : c.bits)
    if (uniform01(rng) < rate) bit ^= 1;
  return c;
}

void GaConfig::validate() const {
  if (population_size == 0) throw Error("population size must be positive");
  if (!(crossover_fraction >= 0.0 && crossover_fraction <= 1.0))
    throw Error("crossover fraction must lie in [0, 1]");
  if (!(mutation_probability >= 0.0 && mutation_probability <= 1.0))
    throw Error("mutation probability must lie in [0, 1]");
  if (!(delta >= 0.0 && delta <= 1.0)) throw Error("ACV threshold must lie in [0, 1]");
  if (elitism >= population_size) throw Error("elitism count must be below the population size");
}

std::vector<metrics::Score> evaluate_population(const AccessMatrix& matrix,
                                                std::span<const Chromosome> population,
                                                double delta) {
  std::vector<metrics::Score> out(population.size());
  const auto count = static_cast<std::ptrdiff_t>(population.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < count; ++k)
    out[k] = metrics::score(matrix, decode(population[k], matrix.rows(), matrix.cols()), delta);
  return out;
}

namespace reference {
std::vector<metrics::Score> evaluate_population(const AccessMatrix& matrix,
                                                std::span<const Chromosome> population,
                                                double delta) {
  std::vector<metrics::Score> out;
  out.reserve(population.size());
  for (const auto& c : population)
    out.push_back(metrics::score(matrix, decode(c, matrix.rows(), matrix.cols()), delta));
  return out;
}
}  // namespace reference

namespace {

// Higher fitness first, then higher ACV, then lower index.
bool ranks_before(const metrics::Score& a, std::size_t ia, const metrics::Score& b,
                  std::size_t ib) {
  if (a.fitness != b.fitness) return a.fitness > b.fitness;
  if (a.acv != b.acv) return a.acv > b.acv;
  return ia < ib;
}

bool strictly_better(const metrics::Score& a, const metrics::Score& b) {
  return a.fitness > b.fitness || (a.fitness == b.fitness && a.acv > b.acv);
}

GenerationRecord summarize(std::size_t generation, std::span<const Chromosome> pop,
                           std::span<const metrics::Score> scores) {
  GenerationRecord rec;
  rec.generation = generation;
  std::size_t top = 0;
  double sum = 0.0;
  for (std::size_t k = 0; k < scores.size(); ++k) {
    sum += scores[k].fitness;
    if (ranks_before(scores[k], k, scores[top], top)) top = k;
  }
  rec.best_fitness = scores[top].fitness;
  rec.mean_fitness = sum / static_cast<double>(scores.size());
  rec.best_acv = scores[top].acv;
  const Bicluster b = decode(pop[top]);
  rec.best_volume = metrics::volume(b);
  return rec;
}

}  // namespace

std::vector<Chromosome> initial_population(const AccessMatrix& matrix,
                                           std::span<const Bicluster> initial,
                                           const GaConfig& cfg, Rng& rng) {
  if (initial.empty()) throw Error("GA needs a nonempty initial population");
  const std::size_t n = matrix.rows(), m = matrix.cols();
  std::vector<Chromosome> pop;
  pop.reserve(cfg.population_size);
  if (initial.size() > cfg.population_size) {
    std::vector<double> acvs;
    acvs.reserve(initial.size());
    for (const auto& b : initial) acvs.push_back(metrics::score(matrix, b, 1.0).acv);
    std::vector<std::size_t> order(initial.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return acvs[x] > acvs[y]; });
    order.resize(cfg.population_size);
    std::sort(order.begin(), order.end());
    for (auto k : order) pop.push_back(encode(initial[k], n, m));
    return pop;
  }
  for (const auto& b : initial) pop.push_back(encode(b, n, m));
  const std::size_t supplied = pop.size();
  while (pop.size() < cfg.population_size) {
    const std::size_t donor = uniform_below(rng, supplied);
    pop.push_back(mutate(pop[donor], cfg.mutation_probability, rng));
  }
  return pop;
}

GaResult run_ga(const AccessMatrix& matrix, std::span<const Bicluster> initial,
                const GaConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  GaResult res;
  std::vector<Chromosome> pop = initial_population(matrix, initial, cfg, rng);

  res.delta = cfg.delta;
  if (cfg.delta_mode == DeltaMode::max_initial_acv) {
    res.delta = 0.0;
    for (const auto& s : reference::evaluate_population(matrix, pop, 1.0))
      res.delta = std::max(res.delta, s.acv);
  }

  std::vector<metrics::Score> scores = evaluate_population(matrix, pop, res.delta);
  res.history.push_back(summarize(0, pop, scores));

  std::size_t best_idx = 0;
  for (std::size_t k = 1; k < pop.size(); ++k)
    if (strictly_better(scores[k], scores[best_idx])) best_idx = k;
  Chromosome best = pop[best_idx];
  metrics::Score best_score = scores[best_idx];

  const std::size_t size = cfg.population_size;
  const std::size_t elites = cfg.elitism;
  const auto crossover_slots = std::min<std::size_t>(
      static_cast<std::size_t>(std::llround(cfg.crossover_fraction * static_cast<double>(size))),
      size - elites);

  std::vector<double> fitness(size);
  std::vector<std::size_t> order(size);
  for (std::size_t gen = 1; gen <= cfg.generations; ++gen) {
    for (std::size_t k = 0; k < size; ++k) fitness[k] = scores[k].fitness;
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return ranks_before(scores[x], x, scores[y], y);
    });

    std::vector<Chromosome> next;
    next.reserve(size);
    for (std::size_t e = 0; e < elites; ++e) next.push_back(pop[order[e]]);

    const std::size_t crossover_end = elites + crossover_slots;
    while (next.size() < crossover_end) {
      const std::size_t a = select_rws(fitness, rng);
      const std::size_t b = select_rws(fitness, rng);
      auto [x, y] = crossover(pop[a], pop[b], rng);
      next.push_back(std::move(x));
      if (next.size() < crossover_end) next.push_back(std::move(y));
    }
    while (next.size() < size) next.push_back(pop[select_rws(fitness, rng)]);

    for (std::size_t k = elites; k < size; ++k)
      next[k] = mutate(std::move(next[k]), cfg.mutation_probability, rng);

    pop = std::move(next);
    scores = evaluate_population(matrix, pop, res.delta);
    for (std::size_t k = 0; k < size; ++k)
      if (strictly_better(scores[k], best_score)) {
        best = pop[k];
        best_score = scores[k];
      }
    res.history.push_back(summarize(gen, pop, scores));
  }

  res.best = decode(best);
  res.best_score = best_score;
  res.population = std::move(pop);
  res.scores = std::move(scores);
  return res;
}

std::vector<Bicluster> distinct_fit(const GaResult& result) {
  std::vector<Bicluster> out;
  std::set<std::vector<std::uint8_t>> seen;
  for (std::size_t k = 0; k < result.population.size(); ++k) {
    if (result.scores[k].fitness <= 0.0) continue;
    if (!seen.insert(result.population[k].bits).second) continue;
    out.push_back(decode(result.population[k]));
  }
  return out;
}

}  // namespace clickbic::evolve
