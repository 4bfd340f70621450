// Command-line front end. Talks to the library through the C API only.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sdeslab.h"

namespace {

// 0 success, 1 runtime/I-O, 2 usage/validation.
int exit_for(sdeslab_status status) {
  switch (status) {
    case SDESLAB_OK:
      return 0;
    case SDESLAB_ERR_INVALID_ARGUMENT:
    case SDESLAB_ERR_INSUFFICIENT_TEXT:
      return 2;
    default:
      return 1;
  }
}

int fail(sdeslab_status status) {
  std::cerr << "error: " << sdeslab_last_error() << "\n";
  return exit_for(status);
}

int fail_io(const std::string& path, const char* action) {
  std::cerr << "error: cannot " << action << " " << path << "\n";
  return 1;
}

bool read_file(const std::string& path, std::vector<std::uint8_t>& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  out.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  return in.good() || in.eof();
}

bool write_file(const std::string& path, const void* data, std::size_t len) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(len));
  return out.good();
}

std::uint64_t auto_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

struct CryptoArgs {
  std::string key;
  std::string input;
  std::string output;
};

int run_crypto(bool encrypting, const CryptoArgs& args) {
  std::uint16_t key = 0;
  if (auto status = sdeslab_key_parse(args.key.c_str(), &key)) return fail(status);
  std::vector<std::uint8_t> bytes;
  if (!read_file(args.input, bytes)) return fail_io(args.input, "read");
  std::vector<std::uint8_t> result(bytes.size());
  const auto status =
      encrypting
          ? sdeslab_encrypt_bytes(key, bytes.data(), bytes.size(), result.data())
          : sdeslab_decrypt_bytes(key, bytes.data(), bytes.size(), result.data());
  if (status) return fail(status);
  if (!write_file(args.output, result.data(), result.size()))
    return fail_io(args.output, "write");
  return 0;
}

struct BuildStatsArgs {
  std::string corpus;
  std::string model;
  std::string source;
  bool trigrams = false;
};

int run_build_stats(const BuildStatsArgs& args) {
  std::vector<std::uint8_t> corpus;
  if (!read_file(args.corpus, corpus)) return fail_io(args.corpus, "read");
  const std::string source = args.source.empty() ? args.corpus : args.source;

  sdeslab_model* model = nullptr;
  auto status = sdeslab_model_build(
      corpus.empty() ? "" : reinterpret_cast<const char*>(corpus.data()), corpus.size(),
      source.c_str(), args.trigrams ? 1 : 0, &model);
  if (status) return fail(status);
  status = sdeslab_model_save(model, args.model.c_str());
  sdeslab_model_free(model);
  if (status) return fail(status);
  std::cout << "model written: " << args.model << " (source: " << source << ")\n";
  return 0;
}

struct AttackArgs {
  AttackArgs() { sdeslab_attack_params_init(&params); }

  std::string ciphertext;
  std::string model;
  std::string algo = "ma";
  std::uint64_t seed = 0;
  bool seed_given = false;
  sdeslab_attack_params params{};
};

int run_attack(AttackArgs& args) {
  sdeslab_model* model = nullptr;
  if (auto status = sdeslab_model_load(args.model.c_str(), &model)) return fail(status);
  std::vector<std::uint8_t> bytes;
  if (!read_file(args.ciphertext, bytes)) {
    sdeslab_model_free(model);
    return fail_io(args.ciphertext, "read");
  }

  const std::uint64_t seed = args.seed_given ? args.seed : auto_seed();
  std::cout << "seed: " << seed << "\n";

  sdeslab_attack_result result{};
  const auto status = sdeslab_attack(args.algo.c_str(), bytes.data(), bytes.size(), model,
                                     &args.params, seed, &result);
  sdeslab_model_free(model);
  if (status) return fail(status);

  char key_bits[11];
  sdeslab_key_format(result.key, key_bits);
  std::cout << "key: " << key_bits << "\n";
  std::printf("cost: %.6f\n", result.cost);
  std::cout << "evaluations: " << result.evaluations << "\n";
  return 0;
}

struct ExperimentArgs {
  ExperimentArgs() { sdeslab_attack_params_init(&params); }

  std::string corpus;
  std::string model;
  std::string output = "experiment.csv";
  std::string algos = "ga,ma,sa";
  std::vector<std::size_t> lengths{100, 200, 300, 400, 500, 600, 700, 800, 900, 1000};
  int messages = 10;
  int runs = 10;
  int workers = 1;
  std::string trials_out;
  std::uint64_t seed = 0;
  bool seed_given = false;
  sdeslab_attack_params params{};
};

int run_experiment_cmd(ExperimentArgs& args) {
  sdeslab_model* model = nullptr;
  if (auto status = sdeslab_model_load(args.model.c_str(), &model)) return fail(status);
  std::vector<std::uint8_t> corpus;
  if (!read_file(args.corpus, corpus)) {
    sdeslab_model_free(model);
    return fail_io(args.corpus, "read");
  }

  const std::uint64_t seed = args.seed_given ? args.seed : auto_seed();
  std::cout << "seed: " << seed << "\n";

  char* csv = nullptr;
  const auto status = sdeslab_experiment_run(
      args.algos.c_str(), args.lengths.data(), args.lengths.size(), args.messages,
      args.runs, seed, args.workers,
      corpus.empty() ? "" : reinterpret_cast<const char*>(corpus.data()), corpus.size(),
      model, &args.params, args.trials_out.empty() ? nullptr : args.trials_out.c_str(),
      &csv);
  sdeslab_model_free(model);
  if (status) return fail(status);

  std::cout << csv;
  const bool written = write_file(args.output, csv, std::string(csv).size());
  sdeslab_string_free(csv);
  if (!written) return fail_io(args.output, "write");
  std::cout << "csv written: " << args.output << "\n";
  if (!args.trials_out.empty()) std::cout << "trials written: " << args.trials_out << "\n";
  return 0;
}

// Applies key=value lines to options the command line left untouched, so the
// precedence is built-in defaults, then the config file, then explicit flags.
// Returns a process exit code, 0 on success.
int apply_config(CLI::App& cmd, const std::string& path) {
  std::ifstream in(path);
  if (!in) return fail_io(path, "read");

  const auto trim = [](const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return std::string();
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
  };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string entry = trim(line);
    if (entry.empty() || entry[0] == '#' || entry[0] == ';') continue;
    const std::string where = path + ":" + std::to_string(lineno);
    const auto eq = entry.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: " << where << ": expected key=value\n";
      return 2;
    }
    const std::string key = trim(entry.substr(0, eq));
    const std::string value = trim(entry.substr(eq + 1));
    CLI::Option* option = key.empty() ? nullptr : cmd.get_option_no_throw("--" + key);
    if (option == nullptr) {
      std::cerr << "error: " << where << ": no option --" << key << "\n";
      return 2;
    }
    if (option->count() > 0) continue;
    try {
      option->add_result(value);
      option->run_callback();
    } catch (const CLI::Error& e) {
      std::cerr << "error: " << where << ": " << e.what() << "\n";
      return 2;
    }
  }
  return 0;
}

void add_engine_options(CLI::App* cmd, sdeslab_attack_params& p) {
  cmd->add_option("--ga-pop", p.ga_pop_size, "GA population size")->capture_default_str();
  cmd->add_option("--ga-gens", p.ga_max_gen, "GA generations")->capture_default_str();
  cmd->add_option("--ga-cross", p.ga_cross_rate, "GA crossover probability")
      ->capture_default_str();
  cmd->add_option("--ga-mut", p.ga_mutate_rate, "GA per-bit mutation probability")
      ->capture_default_str();
  cmd->add_option("--ga-elitism", p.ga_elitism, "GA elite count")->capture_default_str();
  cmd->add_option("--ma-pop", p.ma_pop_size, "MA population size")->capture_default_str();
  cmd->add_option("--ma-gens", p.ma_max_gen, "MA generations")->capture_default_str();
  cmd->add_option("--ma-cross", p.ma_cross_rate, "MA crossover probability")
      ->capture_default_str();
  cmd->add_option("--ma-mut", p.ma_mutate_rate, "MA per-bit mutation probability")
      ->capture_default_str();
  cmd->add_option("--ma-elitism", p.ma_elitism, "MA elite count")->capture_default_str();
  cmd->add_option("--ma-depth", p.ma_local_depth,
                  "MA per-generation hill-climb depth limit")
      ->capture_default_str();
  cmd->add_option("--sa-t0", p.sa_t0, "SA initial temperature (0 = calibrate)")
      ->capture_default_str();
  cmd->add_option("--sa-cooling", p.sa_cooling, "SA geometric cooling factor")
      ->capture_default_str();
  cmd->add_option("--sa-m", p.sa_m, "SA problem size M")->capture_default_str();
  cmd->add_option("--sa-iters", p.sa_iters_per_temp,
                  "SA proposals per temperature (0 = 100*M)")
      ->capture_default_str();
  cmd->add_option("--sa-cap", p.sa_accept_cap,
                  "SA accepted-move cap per temperature (0 = 10*M)")
      ->capture_default_str();
  cmd->add_option("--sa-steps", p.sa_max_temp_steps, "SA maximum temperature steps")
      ->capture_default_str();
  cmd->add_option("--alpha", p.weights.alpha, "unigram weight")->capture_default_str();
  cmd->add_option("--beta", p.weights.beta, "bigram weight")->capture_default_str();
  cmd->add_option("--gamma", p.weights.gamma, "trigram weight")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SDES cipher and key-recovery workbench"};
  app.set_version_flag("--version", sdeslab_version());
  app.require_subcommand(1);

  std::string config_path;
  const auto add_config = [&config_path](CLI::App* cmd) {
    cmd->add_option("--config", config_path,
                    "read option defaults from a key=value file");
  };

  CryptoArgs encrypt_args;
  auto* encrypt = app.add_subcommand("encrypt", "Encrypt a file byte-per-block");
  encrypt->add_option("--key", encrypt_args.key, "10-bit key as a bit string")->required();
  encrypt->add_option("input", encrypt_args.input, "plaintext file")->required();
  encrypt->add_option("output", encrypt_args.output, "ciphertext file")->required();
  add_config(encrypt);

  CryptoArgs decrypt_args;
  auto* decrypt = app.add_subcommand("decrypt", "Decrypt a file byte-per-block");
  decrypt->add_option("--key", decrypt_args.key, "10-bit key as a bit string")->required();
  decrypt->add_option("input", decrypt_args.input, "ciphertext file")->required();
  decrypt->add_option("output", decrypt_args.output, "plaintext file")->required();
  add_config(decrypt);

  BuildStatsArgs build_args;
  auto* build = app.add_subcommand("build-stats", "Build an n-gram model from a corpus");
  build->add_option("corpus", build_args.corpus, "corpus text file")->required();
  build->add_option("model", build_args.model, "model file to write")->required();
  build->add_option("--source", build_args.source,
                    "label stored in the model (default: corpus path)");
  build->add_flag("--trigrams", build_args.trigrams, "also count trigrams");
  add_config(build);

  AttackArgs attack_args;
  auto* attack = app.add_subcommand("attack", "Recover the key of a ciphertext file");
  attack->add_option("ciphertext", attack_args.ciphertext, "ciphertext file")->required();
  attack->add_option("--model", attack_args.model, "n-gram model file")->required();
  attack->add_option("--algo", attack_args.algo, "ga, ma, sa, or brute")
      ->capture_default_str();
  auto* attack_seed = attack->add_option("--seed", attack_args.seed, "RNG seed");
  add_engine_options(attack, attack_args.params);
  add_config(attack);

  ExperimentArgs exp_args;
  auto* exp = app.add_subcommand("experiment", "Run the comparative benchmark");
  exp->add_option("--corpus", exp_args.corpus, "corpus text file")->required();
  exp->add_option("--model", exp_args.model, "n-gram model file")->required();
  exp->add_option("--out", exp_args.output, "CSV output path")->capture_default_str();
  exp->add_option("--algos", exp_args.algos, "comma-separated algorithms")
      ->capture_default_str();
  exp->add_option("--lengths", exp_args.lengths, "ciphertext lengths")
      ->delimiter(',')
      ->capture_default_str();
  exp->add_option("--messages", exp_args.messages, "messages per (algorithm, length)")
      ->capture_default_str();
  exp->add_option("--runs", exp_args.runs, "runs per message")->capture_default_str();
  exp->add_option("--workers", exp_args.workers, "concurrent trial workers")
      ->capture_default_str();
  exp->add_option("--trials-out", exp_args.trials_out,
                  "also dump every trial as JSON lines");
  auto* exp_seed = exp->add_option("--seed", exp_args.seed, "base RNG seed");
  add_engine_options(exp, exp_args.params);
  add_config(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!config_path.empty()) {
    for (CLI::App* cmd : {encrypt, decrypt, build, attack, exp}) {
      if (!cmd->parsed()) continue;
      if (const int code = apply_config(*cmd, config_path)) return code;
    }
  }

  attack_args.seed_given = attack_seed->count() > 0;
  exp_args.seed_given = exp_seed->count() > 0;

  if (encrypt->parsed()) return run_crypto(true, encrypt_args);
  if (decrypt->parsed()) return run_crypto(false, decrypt_args);
  if (build->parsed()) return run_build_stats(build_args);
  if (attack->parsed()) return run_attack(attack_args);
  if (exp->parsed()) return run_experiment_cmd(exp_args);
  return 2;
}
