#include "sdeslab/objective.hpp"

#include <cmath>
#include <string>

#include "sdeslab/cipher.hpp"
#include "sdeslab/errors.hpp"

namespace sdeslab {

namespace {

// Decrypted byte -> alphabet symbol, -1 for separators. Lowercase maps to
// the same symbol as uppercase, everything else (including space) starts or
// extends a separator run, exactly as normalize_text does.
constexpr std::array<std::int8_t, 256> kByteSymbol = [] {
  std::array<std::int8_t, 256> t{};
  for (auto& v : t) v = -1;
  for (int c = 'A'; c <= 'Z'; ++c) t[static_cast<std::size_t>(c)] = static_cast<std::int8_t>(c - 'A');
  for (int c = 'a'; c <= 'z'; ++c) t[static_cast<std::size_t>(c)] = static_cast<std::int8_t>(c - 'a');
  return t;
}();

constexpr int kSpace = 26;
constexpr std::size_t kTriCells = 27u * 27u * 27u;

// Per-thread n-gram count buffers. Only cells recorded in the touched lists
// are ever nonzero; they are zeroed again after every evaluation.
struct Scratch {
  std::array<std::uint32_t, 27> uni{};
  std::array<std::uint32_t, 27 * 27> bi{};
  std::vector<std::uint32_t> tri;
  std::vector<std::uint32_t> touched_uni;
  std::vector<std::uint32_t> touched_bi;
  std::vector<std::uint32_t> touched_tri;
};

void clear_touched(std::uint32_t* counts, std::vector<std::uint32_t>& touched) {
  for (std::uint32_t idx : touched) counts[idx] = 0;
  touched.clear();
}

double table_sum(const NGramTable& table) {
  double s = 0.0;
  for (const auto& [gram, freq] : table) s += freq;
  return s;
}

}  // namespace

KeyFitnessObjective::KeyFitnessObjective(std::span<const std::uint8_t> ciphertext,
                                         const LanguageModel& model,
                                         const NGramWeights& weights)
    : ciphertext_(ciphertext.begin(), ciphertext.end()), weights_(weights) {
  if (ciphertext_.empty()) throw InvalidArgument("ciphertext must be non-empty");
  weights_.validate();
  if (weights_.gamma > 0.0 && !model.has_trigrams())
    throw InvalidArgument("model has no trigram table but gamma > 0");

  for (const auto& [gram, freq] : model.unigram())
    ref_uni_[static_cast<std::size_t>(symbol_index(gram[0]))] = freq;
  for (const auto& [gram, freq] : model.bigram())
    ref_bi_[static_cast<std::size_t>(symbol_index(gram[0]) * 27 + symbol_index(gram[1]))] = freq;
  if (weights_.gamma > 0.0) {
    ref_tri_.assign(kTriCells, 0.0);
    for (const auto& [gram, freq] : model.trigram())
      ref_tri_[static_cast<std::size_t>(
          (symbol_index(gram[0]) * 27 + symbol_index(gram[1])) * 27 +
          symbol_index(gram[2]))] = freq;
  }
  ref_uni_total_ = table_sum(model.unigram());
  ref_bi_total_ = table_sum(model.bigram());
  if (weights_.gamma > 0.0) ref_tri_total_ = table_sum(model.trigram());
}

double KeyFitnessObjective::evaluate(SdesKey key) const {
  thread_local Scratch scratch;

  const bool want_uni = weights_.alpha > 0.0;
  const bool want_bi = weights_.beta > 0.0;
  const bool want_tri = weights_.gamma > 0.0;
  if (want_tri && scratch.tri.size() != kTriCells) scratch.tri.assign(kTriCells, 0);

  const auto& row = decrypt_codebook()[key.packed()];

  // Stream the decryption through normalization, counting n-grams on the fly.
  int prev = -1;
  int prev2 = -1;
  bool sep_pending = false;
  std::size_t n = 0;
  auto emit = [&](int sym) {
    if (want_uni && scratch.uni[static_cast<std::size_t>(sym)]++ == 0)
      scratch.touched_uni.push_back(static_cast<std::uint32_t>(sym));
    if (prev >= 0) {
      if (want_bi) {
        const auto idx = static_cast<std::uint32_t>(prev * 27 + sym);
        if (scratch.bi[idx]++ == 0) scratch.touched_bi.push_back(idx);
      }
      if (want_tri && prev2 >= 0) {
        const auto idx = static_cast<std::uint32_t>((prev2 * 27 + prev) * 27 + sym);
        if (scratch.tri[idx]++ == 0) scratch.touched_tri.push_back(idx);
      }
    }
    prev2 = prev;
    prev = sym;
    ++n;
  };
  for (std::uint8_t byte : ciphertext_) {
    const int sym = kByteSymbol[row[byte]];
    if (sym < 0) {
      if (n > 0) sep_pending = true;
      continue;
    }
    if (sep_pending) {
      emit(kSpace);
      sep_pending = false;
    }
    emit(sym);
  }

  const std::size_t grams_uni = n;
  const std::size_t grams_bi = n >= 2 ? n - 1 : 0;
  const std::size_t grams_tri = n >= 3 ? n - 2 : 0;

  auto cleanup = [&] {
    clear_touched(scratch.uni.data(), scratch.touched_uni);
    clear_touched(scratch.bi.data(), scratch.touched_bi);
    if (!scratch.tri.empty()) clear_touched(scratch.tri.data(), scratch.touched_tri);
  };
  if ((want_uni && grams_uni == 0) || (want_bi && grams_bi == 0) ||
      (want_tri && grams_tri == 0)) {
    cleanup();
    return kUnscoreableCost;
  }

  // sum over all cells |K - D| = sum over counted cells (|K - D| - K) + sum K.
  auto term = [](const double* ref, double ref_total, const std::uint32_t* counts,
                 std::vector<std::uint32_t>& touched, std::size_t grams) {
    const double inv = 1.0 / static_cast<double>(grams);
    double acc = 0.0;
    double touched_ref = 0.0;
    for (std::uint32_t idx : touched) {
      const double d = static_cast<double>(counts[idx]) * inv;
      acc += std::abs(ref[idx] - d);
      touched_ref += ref[idx];
    }
    return acc + (ref_total - touched_ref);
  };

  double total = 0.0;
  if (want_uni)
    total += weights_.alpha * term(ref_uni_.data(), ref_uni_total_, scratch.uni.data(),
                                   scratch.touched_uni, grams_uni);
  if (want_bi)
    total += weights_.beta * term(ref_bi_.data(), ref_bi_total_, scratch.bi.data(),
                                  scratch.touched_bi, grams_bi);
  if (want_tri)
    total += weights_.gamma * term(ref_tri_.data(), ref_tri_total_, scratch.tri.data(),
                                   scratch.touched_tri, grams_tri);
  cleanup();
  return total;
}

}  // namespace sdeslab
