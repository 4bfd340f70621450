#include "sdeslab.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "sdeslab/cipher.hpp"
#include "sdeslab/errors.hpp"
#include "sdeslab/experiment.hpp"
#include "sdeslab/langmodel.hpp"
#include "sdeslab/objective.hpp"
#include "sdeslab/search.hpp"

struct sdeslab_model {
  sdeslab::LanguageModel rep;
};

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what; }

template <typename F>
sdeslab_status guarded(F&& body) {
  try {
    body();
    return SDESLAB_OK;
  } catch (const sdeslab::InvalidArgument& e) {
    set_error(e.what());
    return SDESLAB_ERR_INVALID_ARGUMENT;
  } catch (const sdeslab::InsufficientText& e) {
    set_error(e.what());
    return SDESLAB_ERR_INSUFFICIENT_TEXT;
  } catch (const sdeslab::IoError& e) {
    set_error(e.what());
    return SDESLAB_ERR_IO;
  } catch (const std::exception& e) {
    set_error(e.what());
    return SDESLAB_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown failure");
    return SDESLAB_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw sdeslab::InvalidArgument(what);
}

sdeslab::SdesKey checked_key(uint16_t key) {
  require(key < 1024, "key value must be below 1024");
  return sdeslab::SdesKey(key);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

sdeslab::NGramWeights to_weights(const sdeslab_weights* w) {
  sdeslab::NGramWeights out;
  if (w) {
    out.alpha = w->alpha;
    out.beta = w->beta;
    out.gamma = w->gamma;
  }
  out.validate();
  return out;
}

sdeslab::SolverConfig to_solver(const sdeslab_attack_params* p) {
  sdeslab::SolverConfig solver;
  if (!p) return solver;
  solver.ga.pop_size = p->ga_pop_size;
  solver.ga.max_gen = p->ga_max_gen;
  solver.ga.cross_rate = p->ga_cross_rate;
  solver.ga.mutate_rate = p->ga_mutate_rate;
  solver.ga.elitism = p->ga_elitism;
  solver.ma.ga.pop_size = p->ma_pop_size;
  solver.ma.ga.max_gen = p->ma_max_gen;
  solver.ma.ga.cross_rate = p->ma_cross_rate;
  solver.ma.ga.mutate_rate = p->ma_mutate_rate;
  solver.ma.ga.elitism = p->ma_elitism;
  solver.ma.local_depth = p->ma_local_depth;
  solver.sa.t0 = p->sa_t0;
  solver.sa.cooling = p->sa_cooling;
  solver.sa.m = p->sa_m;
  solver.sa.iters_per_temp = p->sa_iters_per_temp;
  solver.sa.accept_cap = p->sa_accept_cap;
  solver.sa.max_temp_steps = p->sa_max_temp_steps;
  return solver;
}

}  // namespace

extern "C" {

const char* sdeslab_version(void) { return SDESLAB_VERSION; }

const char* sdeslab_last_error(void) { return g_last_error.c_str(); }

void sdeslab_string_free(char* s) { std::free(s); }

sdeslab_status sdeslab_key_parse(const char* bits, uint16_t* key_out) {
  return guarded([&] {
    require(bits && key_out, "bits and key_out must be non-NULL");
    *key_out = sdeslab::SdesKey::parse(bits).packed();
  });
}

void sdeslab_key_format(uint16_t key, char out[11]) {
  for (int i = 0; i < 10; ++i) out[i] = (key >> (9 - i)) & 1 ? '1' : '0';
  out[10] = '\0';
}

sdeslab_status sdeslab_block_parse(const char* bits, uint8_t* block_out) {
  return guarded([&] {
    require(bits && block_out, "bits and block_out must be non-NULL");
    *block_out = sdeslab::Block::parse(bits).packed();
  });
}

void sdeslab_block_format(uint8_t block, char out[9]) {
  for (int i = 0; i < 8; ++i) out[i] = (block >> (7 - i)) & 1 ? '1' : '0';
  out[8] = '\0';
}

sdeslab_status sdeslab_key_schedule(uint16_t key, uint8_t* k1_out, uint8_t* k2_out) {
  return guarded([&] {
    require(k1_out && k2_out, "k1_out and k2_out must be non-NULL");
    const sdeslab::SubKeys keys = sdeslab::key_schedule(checked_key(key));
    *k1_out = static_cast<uint8_t>(keys.k1.value());
    *k2_out = static_cast<uint8_t>(keys.k2.value());
  });
}

sdeslab_status sdeslab_encrypt_block(uint16_t key, uint8_t plain, uint8_t* cipher_out) {
  return guarded([&] {
    require(cipher_out != nullptr, "cipher_out must be non-NULL");
    *cipher_out = sdeslab::encrypt_block(sdeslab::Block(plain), checked_key(key)).packed();
  });
}

sdeslab_status sdeslab_decrypt_block(uint16_t key, uint8_t cipher, uint8_t* plain_out) {
  return guarded([&] {
    require(plain_out != nullptr, "plain_out must be non-NULL");
    *plain_out = sdeslab::decrypt_block(sdeslab::Block(cipher), checked_key(key)).packed();
  });
}

sdeslab_status sdeslab_encrypt_bytes(uint16_t key, const uint8_t* in, size_t len,
                                     uint8_t* out) {
  return guarded([&] {
    require(len == 0 || (in && out), "in and out must be non-NULL");
    const auto result = sdeslab::encrypt_bytes({in, len}, checked_key(key));
    if (len) std::memcpy(out, result.data(), len);
  });
}

sdeslab_status sdeslab_decrypt_bytes(uint16_t key, const uint8_t* in, size_t len,
                                     uint8_t* out) {
  return guarded([&] {
    require(len == 0 || (in && out), "in and out must be non-NULL");
    const auto result = sdeslab::decrypt_bytes({in, len}, checked_key(key));
    if (len) std::memcpy(out, result.data(), len);
  });
}

sdeslab_status sdeslab_normalize(const char* text, size_t len, char** out) {
  return guarded([&] {
    require(out && (text || len == 0), "text and out must be non-NULL");
    *out = dup_string(sdeslab::normalize_text({text, len}));
  });
}

sdeslab_status sdeslab_model_build(const char* corpus, size_t corpus_len,
                                   const char* source, int with_trigrams,
                                   sdeslab_model** model_out) {
  return guarded([&] {
    require(corpus && model_out, "corpus and model_out must be non-NULL");
    auto model = std::make_unique<sdeslab_model>();
    model->rep = sdeslab::build_model({corpus, corpus_len}, source ? source : "",
                                      with_trigrams != 0);
    *model_out = model.release();
  });
}

sdeslab_status sdeslab_model_load(const char* path, sdeslab_model** model_out) {
  return guarded([&] {
    require(path && model_out, "path and model_out must be non-NULL");
    auto model = std::make_unique<sdeslab_model>();
    model->rep = sdeslab::load_model(path);
    *model_out = model.release();
  });
}

sdeslab_status sdeslab_model_save(const sdeslab_model* model, const char* path) {
  return guarded([&] {
    require(model && path, "model and path must be non-NULL");
    sdeslab::save_model(model->rep, path);
  });
}

void sdeslab_model_free(sdeslab_model* model) { delete model; }

const char* sdeslab_model_source(const sdeslab_model* model) {
  return model ? model->rep.source().c_str() : "";
}

int sdeslab_model_has_trigrams(const sdeslab_model* model) {
  return model && model->rep.has_trigrams() ? 1 : 0;
}

sdeslab_status sdeslab_text_cost(const sdeslab_model* model, const char* text, size_t len,
                                 const sdeslab_weights* weights, double* cost_out) {
  return guarded([&] {
    require(model && cost_out && (text || len == 0),
            "model, text, and cost_out must be non-NULL");
    *cost_out = sdeslab::cost(model->rep, sdeslab::normalize_text({text, len}),
                              to_weights(weights));
  });
}

sdeslab_status sdeslab_key_fitness(const sdeslab_model* model, const uint8_t* ciphertext,
                                   size_t len, uint16_t key, const sdeslab_weights* weights,
                                   double* cost_out) {
  return guarded([&] {
    require(model && ciphertext && cost_out,
            "model, ciphertext, and cost_out must be non-NULL");
    *cost_out = sdeslab::key_fitness({ciphertext, len}, checked_key(key), model->rep,
                                     to_weights(weights));
  });
}

void sdeslab_attack_params_init(sdeslab_attack_params* params) {
  if (!params) return;
  const sdeslab::GaConfig ga;
  const sdeslab::MaConfig ma;
  const sdeslab::SaConfig sa;
  params->ga_pop_size = ga.pop_size;
  params->ga_max_gen = ga.max_gen;
  params->ga_cross_rate = ga.cross_rate;
  params->ga_mutate_rate = ga.mutate_rate;
  params->ga_elitism = ga.elitism;
  params->ma_pop_size = ma.ga.pop_size;
  params->ma_max_gen = ma.ga.max_gen;
  params->ma_cross_rate = ma.ga.cross_rate;
  params->ma_mutate_rate = ma.ga.mutate_rate;
  params->ma_elitism = ma.ga.elitism;
  params->ma_local_depth = ma.local_depth;
  params->sa_t0 = sa.t0;
  params->sa_cooling = sa.cooling;
  params->sa_m = sa.m;
  params->sa_iters_per_temp = sa.iters_per_temp;
  params->sa_accept_cap = sa.accept_cap;
  params->sa_max_temp_steps = sa.max_temp_steps;
  params->weights = {0.0, 1.0, 0.0};
}

sdeslab_status sdeslab_attack(const char* algorithm, const uint8_t* ciphertext, size_t len,
                              const sdeslab_model* model, const sdeslab_attack_params* params,
                              uint64_t seed, sdeslab_attack_result* result_out) {
  return guarded([&] {
    require(algorithm && ciphertext && model && result_out,
            "algorithm, ciphertext, model, and result_out must be non-NULL");
    const sdeslab::Algorithm algo = sdeslab::parse_algorithm(algorithm);
    const sdeslab::NGramWeights weights = to_weights(params ? &params->weights : nullptr);
    const sdeslab::SolverConfig solver = to_solver(params);

    const sdeslab::KeyFitnessObjective fitness({ciphertext, len}, model->rep, weights);
    const sdeslab::CountingObjective counted(fitness);
    sdeslab::Rng rng(seed);
    sdeslab::Candidate found;
    switch (algo) {
      case sdeslab::Algorithm::kGa: found = ga_run(solver.ga, counted, rng); break;
      case sdeslab::Algorithm::kMa: found = ma_run(solver.ma, counted, rng); break;
      case sdeslab::Algorithm::kSa: found = sa_run(solver.sa, counted, rng); break;
      case sdeslab::Algorithm::kBrute: found = brute_force(counted); break;
    }
    result_out->key = found.key.packed();
    result_out->cost = found.cost;
    result_out->evaluations = counted.evaluations();
  });
}

sdeslab_status sdeslab_experiment_run(const char* algorithms, const size_t* lengths,
                                      size_t lengths_count, int messages_per_point,
                                      int runs_per_message, uint64_t base_seed, int workers,
                                      const char* corpus, size_t corpus_len,
                                      const sdeslab_model* model,
                                      const sdeslab_attack_params* params,
                                      const char* trials_jsonl_path, char** csv_out) {
  return guarded([&] {
    require(algorithms && lengths && lengths_count > 0 && corpus && model && csv_out,
            "algorithms, lengths, corpus, model, and csv_out must be non-NULL");

    sdeslab::ExperimentPlan plan;
    std::string names(algorithms);
    std::size_t start = 0;
    std::vector<sdeslab::Algorithm> algos;
    while (start <= names.size()) {
      const std::size_t comma = names.find(',', start);
      const std::string name =
          names.substr(start, comma == std::string::npos ? comma : comma - start);
      algos.push_back(sdeslab::parse_algorithm(name));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    for (sdeslab::Algorithm algo : algos)
      for (size_t i = 0; i < lengths_count; ++i)
        plan.points.push_back({algo, lengths[i]});

    plan.messages_per_point = messages_per_point;
    plan.runs_per_message = runs_per_message;
    plan.base_seed = base_seed;
    plan.workers = workers;
    plan.weights = to_weights(params ? &params->weights : nullptr);
    plan.solver = to_solver(params);

    const sdeslab::ExperimentResult result =
        run_experiment(plan, {corpus, corpus_len}, model->rep);

    if (trials_jsonl_path) {
      std::ofstream out(trials_jsonl_path);
      if (!out) throw sdeslab::IoError(std::string("cannot open ") + trials_jsonl_path);
      write_trials_jsonl(out, result.trials);
      if (!out.good()) throw sdeslab::IoError(std::string("write failed: ") + trials_jsonl_path);
    }
    *csv_out = dup_string(emit_csv(result.records));
  });
}

}  // extern "C"
