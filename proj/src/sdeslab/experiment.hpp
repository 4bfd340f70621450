#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sdeslab/bits.hpp"
#include "sdeslab/langmodel.hpp"
#include "sdeslab/rng.hpp"
#include "sdeslab/search.hpp"

namespace sdeslab {

enum class Algorithm { kGa, kMa, kSa, kBrute };

std::string_view algorithm_name(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view name);  // case-insensitive

// One attack run against one ciphertext.
struct TrialResult {
  Algorithm algorithm = Algorithm::kGa;
  std::size_t ciphertext_len = 0;
  SdesKey true_key{0};
  SdesKey found_key{0};
  double found_cost = 0.0;
  int bits_matched = 0;
  double elapsed_s = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t evaluations = 0;
};

// Aggregate over one (algorithm, length) point: the per-message best trials
// averaged, with the population standard deviation of their matched bits.
struct ExperimentRecord {
  Algorithm algorithm = Algorithm::kGa;
  std::size_t ciphertext_len = 0;
  double mean_bits = 0.0;
  double std_dev_bits = 0.0;
  double mean_time_s = 0.0;
  int trials = 0;
};

// Count of agreeing bit positions, 0..10.
int bits_matched(SdesKey a, SdesKey b);

// Contiguous excerpt of exactly `length` symbols at a seeded-random offset.
// The corpus is expected to be normalized already.
std::string generate_message(std::string_view corpus, std::size_t length, Rng& rng);

// Engine parameters for each algorithm; a trial picks the one it needs.
// Seeds inside these are ignored by run_trial, which supplies its own.
struct SolverConfig {
  GaConfig ga{};
  MaConfig ma{};
  SaConfig sa{};
};

// Encrypts the message under true_key, attacks the ciphertext with the chosen
// engine, and scores the recovered key.
TrialResult run_trial(Algorithm algorithm, std::string_view message, SdesKey true_key,
                      const LanguageModel& model, const NGramWeights& weights,
                      const SolverConfig& solver, std::uint64_t seed);

struct ExperimentPoint {
  Algorithm algorithm = Algorithm::kGa;
  std::size_t ciphertext_len = 0;
};

struct ExperimentPlan {
  std::vector<ExperimentPoint> points;
  int messages_per_point = 10;
  int runs_per_message = 10;
  std::uint64_t base_seed = 0;
  NGramWeights weights{};
  SolverConfig solver{};
  int workers = 1;
};

struct ExperimentResult {
  std::vector<ExperimentRecord> records;  // one per plan point, in plan order
  std::vector<TrialResult> trials;        // ordered by (point, message, run)
};

// Deterministic seed derivation. Messages and their true keys depend only on
// (base_seed, length, message index), so every algorithm attacks the same
// ciphertexts at a given length; trial seeds additionally mix in the
// algorithm and run index.
std::uint64_t message_seed(std::uint64_t base_seed, std::size_t length, int message_index);
std::uint64_t trial_seed(std::uint64_t base_seed, Algorithm algorithm, std::size_t length,
                         int message_index, int run_index);

struct MessageSpec {
  std::string text;
  SdesKey true_key{0};
};

MessageSpec derive_message(std::string_view normalized_corpus, std::size_t length,
                           std::uint64_t seed);

// Runs the full protocol: per point, messages_per_point messages times
// runs_per_message seeded runs; the lowest-cost run per message is kept and
// those best trials are aggregated into the point's record.
ExperimentResult run_experiment(const ExperimentPlan& plan, std::string_view corpus,
                                const LanguageModel& model);

// header + one row per record, reals with fixed 4-decimal formatting
std::string emit_csv(std::span<const ExperimentRecord> records);
std::vector<ExperimentRecord> parse_csv(std::string_view text);

// One JSON object per line, one line per trial.
void write_trials_jsonl(std::ostream& out, std::span<const TrialResult> trials);

}  // namespace sdeslab
