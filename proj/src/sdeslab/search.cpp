#include "sdeslab/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sdeslab/errors.hpp"

namespace sdeslab {

namespace {

Candidate scored(SdesKey key, const Objective& objective) {
  return Candidate{key, objective.evaluate(key)};
}

SdesKey random_key(Rng& rng) {
  return SdesKey(static_cast<std::uint16_t>(rng.next_below(1u << SdesKey::kBits)));
}

void require_rate(double rate, const char* what) {
  if (!(rate >= 0.0 && rate <= 1.0))
    throw InvalidArgument(std::string(what) + " must be in [0,1]");
}

// Generational loop shared by ga_run and ma_run; `polish` runs on each fresh
// generation before it replaces the old one.
template <typename Polish>
Candidate evolve(const GaConfig& config, const Objective& objective, Rng& rng,
                 Polish polish) {
  std::vector<Candidate> population;
  population.reserve(static_cast<std::size_t>(config.pop_size));
  for (int i = 0; i < config.pop_size; ++i)
    population.push_back(scored(random_key(rng), objective));

  auto best = population.front();
  for (const auto& c : population)
    if (c.cost < best.cost) best = c;

  std::vector<std::size_t> order(population.size());
  for (int gen = 0; gen < config.max_gen; ++gen) {
    std::vector<Candidate> next;
    next.reserve(population.size());

    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return population[a].cost < population[b].cost;
    });
    for (int e = 0; e < config.elitism; ++e)
      next.push_back(population[order[static_cast<std::size_t>(e)]]);

    while (next.size() < population.size()) {
      auto [mate1, mate2] = select_parents(population, rng);
      SdesKey child = rng.next_unit() < config.cross_rate
                          ? crossover(mate1.key, mate2.key, rng)
                          : mate1.key;
      child = mutate(child, config.mutate_rate, rng);
      next.push_back(scored(child, objective));
    }

    polish(next);
    population = std::move(next);
    for (const auto& c : population)
      if (c.cost < best.cost) best = c;
  }
  return best;
}

}  // namespace

void GaConfig::validate() const {
  if (pop_size < 2) throw InvalidArgument("pop_size must be at least 2");
  if (max_gen < 1) throw InvalidArgument("max_gen must be positive");
  require_rate(cross_rate, "cross_rate");
  require_rate(mutate_rate, "mutate_rate");
  if (elitism < 0 || elitism > pop_size)
    throw InvalidArgument("elitism must be in [0, pop_size]");
}

void MaConfig::validate() const {
  ga.validate();
  if (local_depth < 0) throw InvalidArgument("local_depth must be nonnegative");
}

void SaConfig::validate() const {
  if (std::isnan(t0) || t0 < 0.0) throw InvalidArgument("t0 must be nonnegative");
  if (!(cooling > 0.0 && cooling < 1.0))
    throw InvalidArgument("cooling must be in (0,1)");
  if (m < 1) throw InvalidArgument("m must be positive");
  if (iters_per_temp < 0) throw InvalidArgument("iters_per_temp must be nonnegative");
  if (accept_cap < 0) throw InvalidArgument("accept_cap must be nonnegative");
  if (max_temp_steps < 1) throw InvalidArgument("max_temp_steps must be positive");
}

Candidate brute_force(const Objective& objective) {
  Candidate best = scored(SdesKey(0), objective);
  for (std::uint32_t v = 1; v < (1u << SdesKey::kBits); ++v) {
    Candidate c = scored(SdesKey(static_cast<std::uint16_t>(v)), objective);
    if (c.cost < best.cost) best = c;
  }
  return best;
}

Candidate hill_climb(Candidate start, const Objective& objective, int depth_limit) {
  Candidate current = start;
  for (int depth = 0; depth < depth_limit; ++depth) {
    Candidate best_neighbor = current;
    for (int pos = 1; pos <= SdesKey::kBits; ++pos) {
      Candidate neighbor = scored(current.key.flipped(pos), objective);
      if (neighbor.cost < best_neighbor.cost) best_neighbor = neighbor;
    }
    if (best_neighbor.key == current.key) break;
    current = best_neighbor;
  }
  return current;
}

std::pair<Candidate, Candidate> select_parents(const std::vector<Candidate>& population,
                                               Rng& rng) {
  if (population.empty()) throw InvalidArgument("select_parents needs a non-empty population");
  auto tournament = [&] {
    const auto size = static_cast<std::uint32_t>(population.size());
    const Candidate& a = population[rng.next_below(size)];
    const Candidate& b = population[rng.next_below(size)];
    return b.cost < a.cost ? b : a;
  };
  Candidate first = tournament();
  Candidate second = tournament();
  return {first, second};
}

SdesKey crossover(SdesKey a, SdesKey b, Rng& rng) {
  const int cut = 1 + static_cast<int>(rng.next_below(SdesKey::kBits - 1));
  const auto keep_a = static_cast<std::uint16_t>(((1u << cut) - 1u)
                                                 << (SdesKey::kBits - cut));
  const auto mask = static_cast<std::uint16_t>((1u << SdesKey::kBits) - 1u);
  return SdesKey(static_cast<std::uint16_t>((a.packed() & keep_a) |
                                            (b.packed() & static_cast<std::uint16_t>(~keep_a & mask))));
}

SdesKey mutate(SdesKey key, double rate, Rng& rng) {
  require_rate(rate, "mutation rate");
  auto packed = key.packed();
  for (int pos = 0; pos < SdesKey::kBits; ++pos)
    if (rng.next_unit() < rate)
      packed = static_cast<std::uint16_t>(packed ^ (1u << (SdesKey::kBits - 1 - pos)));
  return SdesKey(packed);
}

bool metropolis_accept(double delta, double temp, Rng& rng) {
  if (!(temp > 0.0)) throw InvalidArgument("temperature must be positive");
  if (delta < 0.0) return true;
  return rng.next_unit() < std::exp(-delta / temp);
}

Candidate ga_run(const GaConfig& config, const Objective& objective, Rng& rng) {
  config.validate();
  return evolve(config, objective, rng, [](std::vector<Candidate>&) {});
}

Candidate ga_run(const GaConfig& config, const Objective& objective) {
  Rng rng(config.seed);
  return ga_run(config, objective, rng);
}

Candidate ma_run(const MaConfig& config, const Objective& objective, Rng& rng) {
  config.validate();
  Candidate best = evolve(config.ga, objective, rng, [&](std::vector<Candidate>& generation) {
    for (auto& c : generation) c = hill_climb(c, objective, config.local_depth);
  });
  return hill_climb(best, objective, std::numeric_limits<int>::max());
}

Candidate ma_run(const MaConfig& config, const Objective& objective) {
  Rng rng(config.ga.seed);
  return ma_run(config, objective, rng);
}

Candidate sa_run(const SaConfig& config, const Objective& objective, Rng& rng) {
  config.validate();
  const int iters = config.effective_iters();
  const int cap = config.effective_cap();

  Candidate current = scored(random_key(rng), objective);
  Candidate best = current;
  auto note = [&](const Candidate& c) {
    if (c.cost < best.cost) best = c;
  };
  auto propose = [&] {
    const int pos = 1 + static_cast<int>(rng.next_below(SdesKey::kBits));
    Candidate neighbor = scored(current.key.flipped(pos), objective);
    note(neighbor);
    return neighbor;
  };

  double temp = config.t0;
  if (!(temp > 0.0)) {
    // Aim for roughly 80% initial acceptance: mean |delta| of sampled moves,
    // scaled so exp(-mean/t0) = 0.8.
    constexpr int kSamples = 100;
    double acc = 0.0;
    for (int i = 0; i < kSamples; ++i)
      acc += std::abs(propose().cost - current.cost);
    temp = (acc / kSamples) / std::log(1.0 / 0.8);
    if (!(temp > 0.0)) temp = 1.0;
  }

  for (int step = 0; step < config.max_temp_steps; ++step) {
    int accepted = 0;
    for (int i = 0; i < iters; ++i) {
      Candidate neighbor = propose();
      if (metropolis_accept(neighbor.cost - current.cost, temp, rng)) {
        current = neighbor;
        if (++accepted > cap) break;
      }
    }
    if (accepted == 0) break;
    temp *= config.cooling;
  }
  return best;
}

Candidate sa_run(const SaConfig& config, const Objective& objective) {
  Rng rng(config.seed);
  return sa_run(config, objective, rng);
}

}  // namespace sdeslab
