#include "sdeslab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <initializer_list>
#include <mutex>
#include <ostream>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "sdeslab/cipher.hpp"
#include "sdeslab/errors.hpp"
#include "sdeslab/objective.hpp"

namespace sdeslab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = splitmix64(base);
  for (std::uint64_t part : parts) h = splitmix64(h ^ part);
  return h;
}

double mean_of(const std::vector<double>& values) {
  double s = 0.0;
  for (double v : values) s += v;
  return values.empty() ? 0.0 : s / static_cast<double>(values.size());
}

double population_std_dev(const std::vector<double>& values, double mean) {
  if (values.empty()) return 0.0;
  double s = 0.0;
  for (double v : values) s += (v - mean) * (v - mean);
  return std::sqrt(s / static_cast<double>(values.size()));
}

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(text.substr(start));
      return out;
    }
    out.emplace_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

constexpr std::string_view kCsvHeader =
    "algorithm,ciphertext_len,mean_bits,std_dev_bits,mean_time_s,trials";

}  // namespace

std::string_view algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kGa: return "GA";
    case Algorithm::kMa: return "MA";
    case Algorithm::kSa: return "SA";
    case Algorithm::kBrute: return "BRUTE";
  }
  throw InvalidArgument("unknown algorithm value");
}

Algorithm parse_algorithm(std::string_view name) {
  std::string upper(name);
  for (char& c : upper)
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  if (upper == "GA") return Algorithm::kGa;
  if (upper == "MA") return Algorithm::kMa;
  if (upper == "SA") return Algorithm::kSa;
  if (upper == "BRUTE") return Algorithm::kBrute;
  throw InvalidArgument("unknown algorithm \"" + std::string(name) +
                        "\" (expected ga, ma, sa, or brute)");
}

int bits_matched(SdesKey a, SdesKey b) {
  return SdesKey::kBits -
         std::popcount(static_cast<std::uint32_t>(a.packed() ^ b.packed()));
}

std::string generate_message(std::string_view corpus, std::size_t length, Rng& rng) {
  if (corpus.size() < length)
    throw InsufficientText("corpus has " + std::to_string(corpus.size()) +
                           " symbols, shorter than the requested " +
                           std::to_string(length));
  const auto span = static_cast<std::uint32_t>(corpus.size() - length + 1);
  const std::uint32_t offset = rng.next_below(span);
  return std::string(corpus.substr(offset, length));
}

TrialResult run_trial(Algorithm algorithm, std::string_view message, SdesKey true_key,
                      const LanguageModel& model, const NGramWeights& weights,
                      const SolverConfig& solver, std::uint64_t seed) {
  if (message.empty()) throw InvalidArgument("trial message must be non-empty");
  const std::string context = "trial [" + std::string(algorithm_name(algorithm)) +
                              " len=" + std::to_string(message.size()) +
                              " seed=" + std::to_string(seed) + "]: ";
  try {
    std::vector<std::uint8_t> plain(message.begin(), message.end());
    const std::vector<std::uint8_t> ciphertext = encrypt_bytes(plain, true_key);
    const KeyFitnessObjective fitness(ciphertext, model, weights);
    const CountingObjective counted(fitness);

    Rng rng(seed);
    const auto start = std::chrono::steady_clock::now();
    Candidate found{};
    switch (algorithm) {
      case Algorithm::kGa: found = ga_run(solver.ga, counted, rng); break;
      case Algorithm::kMa: found = ma_run(solver.ma, counted, rng); break;
      case Algorithm::kSa: found = sa_run(solver.sa, counted, rng); break;
      case Algorithm::kBrute: found = brute_force(counted); break;
    }
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;

    TrialResult result;
    result.algorithm = algorithm;
    result.ciphertext_len = message.size();
    result.true_key = true_key;
    result.found_key = found.key;
    result.found_cost = found.cost;
    result.bits_matched = bits_matched(true_key, found.key);
    result.elapsed_s = elapsed.count();
    result.seed = seed;
    result.evaluations = counted.evaluations();
    return result;
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(context + e.what());
  } catch (const InsufficientText& e) {
    throw InsufficientText(context + e.what());
  } catch (const Error& e) {
    throw Error(context + e.what());
  }
}

std::uint64_t message_seed(std::uint64_t base_seed, std::size_t length, int message_index) {
  return derive_seed(base_seed, {0x6d657373ULL, length, static_cast<std::uint64_t>(message_index)});
}

std::uint64_t trial_seed(std::uint64_t base_seed, Algorithm algorithm, std::size_t length,
                         int message_index, int run_index) {
  return derive_seed(base_seed,
                     {0x747269616cULL, static_cast<std::uint64_t>(algorithm), length,
                      static_cast<std::uint64_t>(message_index),
                      static_cast<std::uint64_t>(run_index)});
}

MessageSpec derive_message(std::string_view normalized_corpus, std::size_t length,
                           std::uint64_t seed) {
  Rng rng(seed);
  MessageSpec spec;
  spec.text = generate_message(normalized_corpus, length, rng);
  spec.true_key = SdesKey(static_cast<std::uint16_t>(rng.next_below(1u << SdesKey::kBits)));
  return spec;
}

ExperimentResult run_experiment(const ExperimentPlan& plan, std::string_view corpus,
                                const LanguageModel& model) {
  if (plan.messages_per_point < 1)
    throw InvalidArgument("messages_per_point must be positive");
  if (plan.runs_per_message < 1)
    throw InvalidArgument("runs_per_message must be positive");
  if (plan.workers < 1) throw InvalidArgument("workers must be positive");
  plan.weights.validate();
  for (const auto& point : plan.points)
    if (point.ciphertext_len == 0)
      throw InvalidArgument("ciphertext_len must be positive");

  const std::string normalized = normalize_text(corpus);

  // Messages are shared across algorithms: one spec per (length, index).
  std::unordered_map<std::uint64_t, MessageSpec> messages;
  for (const auto& point : plan.points) {
    for (int mi = 0; mi < plan.messages_per_point; ++mi) {
      const std::uint64_t seed = message_seed(plan.base_seed, point.ciphertext_len, mi);
      if (!messages.count(seed))
        messages.emplace(seed, derive_message(normalized, point.ciphertext_len, seed));
    }
  }

  struct Job {
    std::size_t point;
    int message;
    int run;
  };
  std::vector<Job> jobs;
  jobs.reserve(plan.points.size() *
               static_cast<std::size_t>(plan.messages_per_point * plan.runs_per_message));
  for (std::size_t pi = 0; pi < plan.points.size(); ++pi)
    for (int mi = 0; mi < plan.messages_per_point; ++mi)
      for (int ri = 0; ri < plan.runs_per_message; ++ri) jobs.push_back({pi, mi, ri});

  ExperimentResult result;
  result.trials.resize(jobs.size());

  auto run_job = [&](std::size_t index) {
    const Job& job = jobs[index];
    const ExperimentPoint& point = plan.points[job.point];
    const MessageSpec& spec =
        messages.at(message_seed(plan.base_seed, point.ciphertext_len, job.message));
    const std::uint64_t seed = trial_seed(plan.base_seed, point.algorithm,
                                          point.ciphertext_len, job.message, job.run);
    result.trials[index] = run_trial(point.algorithm, spec.text, spec.true_key, model,
                                     plan.weights, plan.solver, seed);
  };

  if (plan.workers == 1 || jobs.size() <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_job(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
      while (!failed.load(std::memory_order_relaxed)) {
        const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= jobs.size()) return;
        try {
          run_job(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
          return;
        }
      }
    };
    const std::size_t count =
        std::min(static_cast<std::size_t>(plan.workers), jobs.size());
    std::vector<std::thread> pool;
    pool.reserve(count);
    for (std::size_t i = 0; i < count; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }

  const auto runs = static_cast<std::size_t>(plan.runs_per_message);
  const auto per_point = static_cast<std::size_t>(plan.messages_per_point) * runs;
  for (std::size_t pi = 0; pi < plan.points.size(); ++pi) {
    std::vector<double> bits;
    std::vector<double> times;
    for (int mi = 0; mi < plan.messages_per_point; ++mi) {
      const std::size_t first = pi * per_point + static_cast<std::size_t>(mi) * runs;
      std::size_t best = first;
      for (std::size_t ri = first + 1; ri < first + runs; ++ri)
        if (result.trials[ri].found_cost < result.trials[best].found_cost) best = ri;
      bits.push_back(static_cast<double>(result.trials[best].bits_matched));
      times.push_back(result.trials[best].elapsed_s);
    }
    ExperimentRecord record;
    record.algorithm = plan.points[pi].algorithm;
    record.ciphertext_len = plan.points[pi].ciphertext_len;
    record.mean_bits = mean_of(bits);
    record.std_dev_bits = population_std_dev(bits, record.mean_bits);
    record.mean_time_s = mean_of(times);
    record.trials = plan.messages_per_point;
    result.records.push_back(record);
  }
  return result;
}

std::string emit_csv(std::span<const ExperimentRecord> records) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : records) {
    out += algorithm_name(r.algorithm);
    out += ',';
    out += std::to_string(r.ciphertext_len);
    out += ',';
    out += fixed4(r.mean_bits);
    out += ',';
    out += fixed4(r.std_dev_bits);
    out += ',';
    out += fixed4(r.mean_time_s);
    out += ',';
    out += std::to_string(r.trials);
    out += '\n';
  }
  return out;
}

std::vector<ExperimentRecord> parse_csv(std::string_view text) {
  std::vector<std::string> lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || lines.front() != kCsvHeader)
    throw InvalidArgument("missing or malformed CSV header");

  std::vector<ExperimentRecord> records;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> fields = split(lines[i], ',');
    if (fields.size() != 6)
      throw InvalidArgument("CSV row " + std::to_string(i) + " has " +
                            std::to_string(fields.size()) + " fields, expected 6");
    try {
      ExperimentRecord r;
      r.algorithm = parse_algorithm(fields[0]);
      r.ciphertext_len = static_cast<std::size_t>(std::stoull(fields[1]));
      r.mean_bits = std::stod(fields[2]);
      r.std_dev_bits = std::stod(fields[3]);
      r.mean_time_s = std::stod(fields[4]);
      r.trials = std::stoi(fields[5]);
      records.push_back(r);
    } catch (const std::logic_error&) {
      throw InvalidArgument("CSV row " + std::to_string(i) + " is malformed: " + lines[i]);
    }
  }
  return records;
}

void write_trials_jsonl(std::ostream& out, std::span<const TrialResult> trials) {
  for (const auto& t : trials) {
    nlohmann::json line{{"algorithm", std::string(algorithm_name(t.algorithm))},
                        {"ciphertext_len", t.ciphertext_len},
                        {"true_key", t.true_key.str()},
                        {"found_key", t.found_key.str()},
                        {"found_cost", t.found_cost},
                        {"bits_matched", t.bits_matched},
                        {"elapsed_s", t.elapsed_s},
                        {"seed", t.seed},
                        {"evaluations", t.evaluations}};
    out << line.dump() << '\n';
  }
}

}  // namespace sdeslab
