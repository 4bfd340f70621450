#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sdeslab/bits.hpp"
#include "sdeslab/langmodel.hpp"

namespace sdeslab {

// A cost function over the 1024-point key space; lower is better. Must be
// deterministic for a fixed key and safe for concurrent evaluation.
class Objective {
 public:
  virtual ~Objective() = default;
  virtual double evaluate(SdesKey key) const = 0;
};

// Wraps an objective in a test/lambda-friendly shape.
class FunctionObjective : public Objective {
 public:
  explicit FunctionObjective(std::function<double(SdesKey)> fn) : fn_(std::move(fn)) {}
  double evaluate(SdesKey key) const override { return fn_(key); }

 private:
  std::function<double(SdesKey)> fn_;
};

// Counts evaluations of the wrapped objective.
class CountingObjective : public Objective {
 public:
  explicit CountingObjective(const Objective& inner) : inner_(inner) {}

  double evaluate(SdesKey key) const override {
    count_.fetch_add(1, std::memory_order_relaxed);
    return inner_.evaluate(key);
  }

  std::uint64_t evaluations() const { return count_.load(std::memory_order_relaxed); }

 private:
  const Objective& inner_;
  mutable std::atomic<std::uint64_t> count_{0};
};

// A decryption can normalize to fewer symbols than a weighted n-gram order
// needs (a bad key may map every ciphertext byte outside the alphabet).
// Such keys score kUnscoreableCost, the supremum of the cost range, so they
// rank behind every scoreable key instead of aborting a search.
inline constexpr double kUnscoreableCost = 2.0;

// The attack objective: scores a candidate key by decrypting a fixed
// ciphertext and comparing the decryption's n-gram statistics with the
// language model. evaluate(k) returns exactly
// key_fitness(ciphertext, k, model, weights) where that is defined and
// kUnscoreableCost where it is not, computed through the shared decrypt
// codebook and dense frequency tables instead of the compositional string
// pipeline.
class KeyFitnessObjective : public Objective {
 public:
  KeyFitnessObjective(std::span<const std::uint8_t> ciphertext,
                      const LanguageModel& model, const NGramWeights& weights);

  double evaluate(SdesKey key) const override;

 private:
  std::vector<std::uint8_t> ciphertext_;
  NGramWeights weights_;
  std::array<double, 27> ref_uni_{};
  std::array<double, 27 * 27> ref_bi_{};
  std::vector<double> ref_tri_;  // 27^3 entries, allocated only when gamma > 0
  double ref_uni_total_ = 0.0;
  double ref_bi_total_ = 0.0;
  double ref_tri_total_ = 0.0;
};

}  // namespace sdeslab
