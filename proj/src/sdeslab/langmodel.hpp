#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "sdeslab/bits.hpp"

namespace sdeslab {

// Scoring alphabet: the 26 uppercase letters plus space, 27 symbols.
inline constexpr int kAlphabetSize = 27;
inline constexpr std::string_view kAlphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZ ";

// Index into kAlphabet, or -1 for anything else.
constexpr int symbol_index(char c) {
  if (c >= 'A' && c <= 'Z') return c - 'A';
  if (c == ' ') return 26;
  return -1;
}

// Uppercases letters and collapses every run of non-letter characters to a
// single space; leading and trailing runs are dropped. The result contains
// only alphabet symbols and never two spaces in a row.
std::string normalize_text(std::string_view raw);

// Weights of the unigram/bigram/trigram terms of the cost. Must be in [0,1]
// and sum to 1. The default scores bigrams only.
struct NGramWeights {
  double alpha = 0.0;
  double beta = 1.0;
  double gamma = 0.0;

  void validate() const;
};

// Relative frequency keyed by the n-gram itself ("E", "TH", "THE").
// Absent entries are implicit zeros.
using NGramTable = std::map<std::string, double>;

// n-gram statistics of one piece of text.
struct TextStats {
  NGramTable unigram;
  NGramTable bigram;
  NGramTable trigram;
};

// Counts all contiguous n-grams for each requested order and normalizes by
// the n-gram count (length - n + 1). The text must be normalized; throws
// InsufficientText when it is shorter than a requested order.
TextStats compute_stats(std::string_view text, std::span<const int> orders);

// Reference language statistics built from a corpus.
class LanguageModel {
 public:
  LanguageModel() = default;
  LanguageModel(TextStats tables, std::string source);

  const NGramTable& unigram() const { return tables_.unigram; }
  const NGramTable& bigram() const { return tables_.bigram; }
  const NGramTable& trigram() const { return tables_.trigram; }
  bool has_trigrams() const { return !tables_.trigram.empty(); }
  const std::string& source() const { return source_; }

 private:
  TextStats tables_;
  std::string source_;
};

// Minimum number of normalized symbols a corpus must have.
inline constexpr std::size_t kMinCorpusSymbols = 1000;

// Normalizes the corpus and computes its statistics. Trigram counting is
// optional and off by default; the bigram-only cost never touches it.
// Throws InsufficientText when the normalized corpus has fewer than
// kMinCorpusSymbols symbols.
LanguageModel build_model(std::string_view corpus, std::string source,
                          bool with_trigrams = false);

// Weighted L1 distance between the model tables and the candidate text's
// statistics:
//   alpha*sum|K_u - D_u| + beta*sum|K_b - D_b| + gamma*sum|K_t - D_t|
// with each sum over the full alphabet product (absent entries are zeros).
// Result is in [0, 2]. Only orders with positive weight are computed.
double cost(const LanguageModel& model, std::string_view candidate_text,
            const NGramWeights& weights);

// Cost of the candidate key: decrypt the ciphertext, normalize the resulting
// characters and score them against the model. Lower is better.
double key_fitness(std::span<const std::uint8_t> ciphertext, SdesKey key,
                   const LanguageModel& model, const NGramWeights& weights);

// Line-oriented model persistence; see README for the exact format.
void save_model(const LanguageModel& model, std::ostream& out);
void save_model(const LanguageModel& model, const std::string& path);
LanguageModel load_model(std::istream& in);
LanguageModel load_model(const std::string& path);

}  // namespace sdeslab
