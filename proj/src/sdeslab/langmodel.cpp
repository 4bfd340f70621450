#include "sdeslab/langmodel.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sdeslab/cipher.hpp"

namespace sdeslab {

std::string normalize_text(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool sep_pending = false;
  for (char ch : raw) {
    unsigned char u = static_cast<unsigned char>(ch);
    if (u >= 'a' && u <= 'z') u -= 'a' - 'A';
    if (u >= 'A' && u <= 'Z') {
      if (sep_pending && !out.empty()) out.push_back(' ');
      sep_pending = false;
      out.push_back(static_cast<char>(u));
    } else {
      sep_pending = true;
    }
  }
  return out;
}

void NGramWeights::validate() const {
  for (double w : {alpha, beta, gamma})
    if (!(w >= 0.0 && w <= 1.0))
      throw InvalidArgument("n-gram weights must lie in [0,1]");
  if (std::abs(alpha + beta + gamma - 1.0) > 1e-9)
    throw InvalidArgument("n-gram weights must sum to 1");
}

TextStats compute_stats(std::string_view text, std::span<const int> orders) {
  for (int n : orders) {
    if (n < 1 || n > 3) throw InvalidArgument("n-gram order must be 1, 2 or 3");
    if (text.size() < static_cast<std::size_t>(n))
      throw InsufficientText("text of " + std::to_string(text.size()) +
                             " symbols is too short for order " + std::to_string(n));
  }
  for (char c : text)
    if (symbol_index(c) < 0)
      throw InvalidArgument("statistics text must contain only A-Z and space");

  TextStats stats;
  for (int n : orders) {
    NGramTable& table =
        n == 1 ? stats.unigram : n == 2 ? stats.bigram : stats.trigram;
    table.clear();
    const std::size_t total = text.size() - static_cast<std::size_t>(n) + 1;
    for (std::size_t i = 0; i < total; ++i)
      table[std::string(text.substr(i, static_cast<std::size_t>(n)))] += 1.0;
    for (auto& [gram, freq] : table) freq /= static_cast<double>(total);
  }
  return stats;
}

LanguageModel::LanguageModel(TextStats tables, std::string source)
    : tables_(std::move(tables)), source_(std::move(source)) {}

LanguageModel build_model(std::string_view corpus, std::string source,
                          bool with_trigrams) {
  std::string text = normalize_text(corpus);
  if (text.size() < kMinCorpusSymbols)
    throw InsufficientText("corpus has " + std::to_string(text.size()) +
                           " symbols after normalization, need at least " +
                           std::to_string(kMinCorpusSymbols));
  const int orders_all[] = {1, 2, 3};
  std::span<const int> orders(orders_all, with_trigrams ? 3u : 2u);
  return LanguageModel(compute_stats(text, orders), std::move(source));
}

namespace {

// Sum of |a - b| over the union of keys; absent entries count as zero.
double l1_distance(const NGramTable& a, const NGramTable& b) {
  double sum = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      sum += std::abs(ia->second);
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      sum += std::abs(ib->second);
      ++ib;
    } else {
      sum += std::abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return sum;
}

}  // namespace

double cost(const LanguageModel& model, std::string_view candidate_text,
            const NGramWeights& weights) {
  weights.validate();
  if (weights.gamma > 0.0 && !model.has_trigrams())
    throw InvalidArgument("model has no trigram table but gamma > 0");

  double total = 0.0;
  if (weights.alpha > 0.0) {
    const int order[] = {1};
    total += weights.alpha *
             l1_distance(model.unigram(), compute_stats(candidate_text, order).unigram);
  }
  if (weights.beta > 0.0) {
    const int order[] = {2};
    total += weights.beta *
             l1_distance(model.bigram(), compute_stats(candidate_text, order).bigram);
  }
  if (weights.gamma > 0.0) {
    const int order[] = {3};
    total += weights.gamma *
             l1_distance(model.trigram(), compute_stats(candidate_text, order).trigram);
  }
  return total;
}

double key_fitness(std::span<const std::uint8_t> ciphertext, SdesKey key,
                   const LanguageModel& model, const NGramWeights& weights) {
  if (ciphertext.empty()) throw InvalidArgument("ciphertext must be non-empty");
  std::vector<std::uint8_t> plain = decrypt_bytes(ciphertext, key);
  std::string chars(plain.begin(), plain.end());
  return cost(model, normalize_text(chars), weights);
}

namespace {

constexpr char kSpaceMark = '_';

std::string encode_gram(std::string_view gram) {
  std::string s(gram);
  for (char& c : s)
    if (c == ' ') c = kSpaceMark;
  return s;
}

std::string decode_gram(std::string_view coded) {
  std::string s(coded);
  for (char& c : s)
    if (c == kSpaceMark) c = ' ';
  return s;
}

void check_table(const NGramTable& table, int order, const char* name) {
  double sum = 0.0;
  for (const auto& [gram, freq] : table) {
    if (gram.size() != static_cast<std::size_t>(order))
      throw IoError(std::string("model file: ") + name + " entry \"" +
                    encode_gram(gram) + "\" has the wrong length");
    for (char c : gram)
      if (symbol_index(c) < 0)
        throw IoError(std::string("model file: ") + name +
                      " entry contains a symbol outside the alphabet");
    if (!(freq >= 0.0))
      throw IoError(std::string("model file: negative ") + name + " frequency");
    sum += freq;
  }
  if (!table.empty() && std::abs(sum - 1.0) > 1e-9)
    throw IoError(std::string("model file: ") + name + " frequencies sum to " +
                  std::to_string(sum) + ", expected 1");
}

}  // namespace

void save_model(const LanguageModel& model, std::ostream& out) {
  out << "sdeslab-ngram-v1 alphabet=" << encode_gram(kAlphabet)
      << " source=" << model.source() << "\n";
  char buf[64];
  auto dump = [&](const NGramTable& table, int order) {
    for (const auto& [gram, freq] : table) {
      std::snprintf(buf, sizeof buf, "%.17g", freq);
      out << order << ' ' << encode_gram(gram) << ' ' << buf << "\n";
    }
  };
  dump(model.unigram(), 1);
  dump(model.bigram(), 2);
  dump(model.trigram(), 3);
  if (!out) throw IoError("failed to write model");
}

void save_model(const LanguageModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open model file for writing: " + path);
  save_model(model, out);
}

LanguageModel load_model(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw IoError("model file: empty input");

  std::istringstream hs(header);
  std::string magic, alpha_field;
  hs >> magic >> alpha_field;
  if (magic != "sdeslab-ngram-v1" || alpha_field.rfind("alphabet=", 0) != 0)
    throw IoError("model file: bad header");
  if (decode_gram(alpha_field.substr(9)) != kAlphabet)
    throw IoError("model file: unexpected alphabet");
  std::string source;
  std::getline(hs >> std::ws, source);
  if (source.rfind("source=", 0) != 0) throw IoError("model file: missing source");
  source = source.substr(7);

  TextStats tables;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    int order = 0;
    std::string gram;
    double freq = 0.0;
    if (!(ls >> order >> gram >> freq) || order < 1 || order > 3)
      throw IoError("model file: malformed line " + std::to_string(lineno));
    NGramTable& table =
        order == 1 ? tables.unigram : order == 2 ? tables.bigram : tables.trigram;
    if (!table.emplace(decode_gram(gram), freq).second)
      throw IoError("model file: duplicate entry at line " + std::to_string(lineno));
  }

  check_table(tables.unigram, 1, "unigram");
  check_table(tables.bigram, 2, "bigram");
  check_table(tables.trigram, 3, "trigram");
  if (tables.unigram.empty() || tables.bigram.empty())
    throw IoError("model file: unigram and bigram tables are required");
  return LanguageModel(std::move(tables), std::move(source));
}

LanguageModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model file: " + path);
  return load_model(in);
}

}  // namespace sdeslab
