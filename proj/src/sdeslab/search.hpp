#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sdeslab/bits.hpp"
#include "sdeslab/objective.hpp"
#include "sdeslab/rng.hpp"

namespace sdeslab {

// A key paired with its objective cost at construction time.
struct Candidate {
  SdesKey key{0};
  double cost = 0.0;
};

struct GaConfig {
  int pop_size = 100;
  int max_gen = 50;
  double cross_rate = 0.95;
  double mutate_rate = 0.05;
  int elitism = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

struct MaConfig {
  // The memetic defaults differ from the plain GA's: a small population with
  // aggressive crossover/mutation, leaning on local search for intensification.
  GaConfig ga{.pop_size = 10, .cross_rate = 0.5, .mutate_rate = 0.5};
  int local_depth = 10;

  void validate() const;
};

struct SaConfig {
  double t0 = 0.0;  // <= 0 calibrates a start temperature from sampled deltas
  double cooling = 0.95;
  int m = 10;              // problem size; drives the two limits below
  int iters_per_temp = 0;  // 0 = 100 * m
  int accept_cap = 0;      // 0 = 10 * m
  int max_temp_steps = 500;
  std::uint64_t seed = 0;

  void validate() const;
  int effective_iters() const { return iters_per_temp > 0 ? iters_per_temp : 100 * m; }
  int effective_cap() const { return accept_cap > 0 ? accept_cap : 10 * m; }
};

// Evaluates all 1024 keys and returns the global minimum; ties go to the
// smallest packed key value.
Candidate brute_force(const Objective& objective);

// Best-improvement local search: repeatedly evaluates all 10 single-bit-flip
// neighbors and moves to the best strictly better one, until a local optimum
// or depth_limit moves. Ties among equally good neighbors go to the lowest
// flipped position.
Candidate hill_climb(Candidate start, const Objective& objective, int depth_limit);

// Two independent tournaments of two; the lower cost wins each (first draw
// wins ties).
std::pair<Candidate, Candidate> select_parents(const std::vector<Candidate>& population,
                                               Rng& rng);

// Single-point crossover with the cut drawn uniformly from 1..9; the child
// takes bits 1..cut from a and the rest from b.
SdesKey crossover(SdesKey a, SdesKey b, Rng& rng);

// Flips each bit independently with probability rate. Always consumes exactly
// 10 draws so the stream position does not depend on outcomes.
SdesKey mutate(SdesKey key, double rate, Rng& rng);

// True for strict improvement, else true with probability exp(-delta/temp).
bool metropolis_accept(double delta, double temp, Rng& rng);

// Generational GA: tournament selection, single-point crossover with
// probability cross_rate (otherwise the first parent is copied), per-bit
// mutation, and the `elitism` best carried forward unchanged. Returns the
// best candidate seen anywhere in the run.
Candidate ga_run(const GaConfig& config, const Objective& objective, Rng& rng);
Candidate ga_run(const GaConfig& config, const Objective& objective);

// GA plus hill climbing of every individual after each generation and a final
// unbounded climb of the best, so the result is a 1-flip local optimum.
Candidate ma_run(const MaConfig& config, const Objective& objective, Rng& rng);
Candidate ma_run(const MaConfig& config, const Objective& objective);

// Single-solution annealing over bit-flip moves: up to effective_iters()
// proposals per temperature, early cooling once more than effective_cap()
// are accepted, geometric cooling, stop on a zero-acceptance pass or after
// max_temp_steps temperatures.
Candidate sa_run(const SaConfig& config, const Objective& objective, Rng& rng);
Candidate sa_run(const SaConfig& config, const Objective& objective);

}  // namespace sdeslab
