/* C interface to the sdeslab shared library: the SDES toy cipher, n-gram
 * language models, metaheuristic key attacks, and the benchmark harness.
 *
 * Conventions:
 *   - Functions returning sdeslab_status never throw across the boundary;
 *     on failure they return a nonzero status and sdeslab_last_error()
 *     gives a thread-local message for the most recent failure.
 *   - Keys travel as their packed 10-bit value (0..1023), blocks as bytes.
 *     Bit strings are ASCII '0'/'1' with the leftmost character being bit 1.
 *   - Strings returned through char** are NUL-terminated and must be
 *     released with sdeslab_string_free().
 */
#ifndef SDESLAB_H
#define SDESLAB_H

#include <stddef.h>
#include <stdint.h>

#ifndef SDESLAB_API
#if defined(_WIN32)
#define SDESLAB_API
#else
#define SDESLAB_API __attribute__((visibility("default")))
#endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sdeslab_status {
  SDESLAB_OK = 0,
  SDESLAB_ERR_INVALID_ARGUMENT = 1,
  SDESLAB_ERR_INSUFFICIENT_TEXT = 2,
  SDESLAB_ERR_IO = 3,
  SDESLAB_ERR_INTERNAL = 4
} sdeslab_status;

SDESLAB_API const char* sdeslab_version(void);
SDESLAB_API const char* sdeslab_last_error(void);
SDESLAB_API void sdeslab_string_free(char* s);

/* ---- cipher ---- */

/* Parses a 10-character bit string into a packed key. */
SDESLAB_API sdeslab_status sdeslab_key_parse(const char* bits, uint16_t* key_out);
/* Writes 10 characters plus a NUL terminator. */
SDESLAB_API void sdeslab_key_format(uint16_t key, char out[11]);
SDESLAB_API sdeslab_status sdeslab_block_parse(const char* bits, uint8_t* block_out);
SDESLAB_API void sdeslab_block_format(uint8_t block, char out[9]);

/* Both round subkeys as packed 8-bit values. */
SDESLAB_API sdeslab_status sdeslab_key_schedule(uint16_t key, uint8_t* k1_out,
                                                uint8_t* k2_out);
SDESLAB_API sdeslab_status sdeslab_encrypt_block(uint16_t key, uint8_t plain,
                                                 uint8_t* cipher_out);
SDESLAB_API sdeslab_status sdeslab_decrypt_block(uint16_t key, uint8_t cipher,
                                                 uint8_t* plain_out);

/* Byte-per-block ECB over a buffer; out must hold len bytes and may alias in. */
SDESLAB_API sdeslab_status sdeslab_encrypt_bytes(uint16_t key, const uint8_t* in,
                                                 size_t len, uint8_t* out);
SDESLAB_API sdeslab_status sdeslab_decrypt_bytes(uint16_t key, const uint8_t* in,
                                                 size_t len, uint8_t* out);

/* ---- language model ---- */

typedef struct sdeslab_model sdeslab_model;

/* Uppercases letters, collapses everything else into single spaces. */
SDESLAB_API sdeslab_status sdeslab_normalize(const char* text, size_t len, char** out);

/* Builds unigram/bigram (and optionally trigram) tables from a corpus of at
 * least 1000 normalized symbols. `source` is a free-form label stored in the
 * model file. */
SDESLAB_API sdeslab_status sdeslab_model_build(const char* corpus, size_t corpus_len,
                                               const char* source, int with_trigrams,
                                               sdeslab_model** model_out);
SDESLAB_API sdeslab_status sdeslab_model_load(const char* path, sdeslab_model** model_out);
SDESLAB_API sdeslab_status sdeslab_model_save(const sdeslab_model* model, const char* path);
SDESLAB_API void sdeslab_model_free(sdeslab_model* model);

/* Valid until the model is freed. */
SDESLAB_API const char* sdeslab_model_source(const sdeslab_model* model);
SDESLAB_API int sdeslab_model_has_trigrams(const sdeslab_model* model);

/* Weighted n-gram orders; the weights must be in [0,1] and sum to 1. */
typedef struct sdeslab_weights {
  double alpha; /* unigrams */
  double beta;  /* bigrams */
  double gamma; /* trigrams */
} sdeslab_weights;

/* L1 distance between the model's tables and the text's, combined by the
 * weights. The text is normalized first. */
SDESLAB_API sdeslab_status sdeslab_text_cost(const sdeslab_model* model, const char* text,
                                             size_t len, const sdeslab_weights* weights,
                                             double* cost_out);

/* Cost of decrypting the ciphertext with the candidate key; the attack
 * objective. NULL weights mean bigrams only. */
SDESLAB_API sdeslab_status sdeslab_key_fitness(const sdeslab_model* model,
                                               const uint8_t* ciphertext, size_t len,
                                               uint16_t key, const sdeslab_weights* weights,
                                               double* cost_out);

/* ---- attacks ---- */

typedef struct sdeslab_attack_params {
  int ga_pop_size;
  int ga_max_gen;
  double ga_cross_rate;
  double ga_mutate_rate;
  int ga_elitism;

  int ma_pop_size;
  int ma_max_gen;
  double ma_cross_rate;
  double ma_mutate_rate;
  int ma_elitism;
  int ma_local_depth;

  double sa_t0; /* <= 0 calibrates from sampled move deltas */
  double sa_cooling;
  int sa_m;
  int sa_iters_per_temp; /* 0 = 100 * sa_m */
  int sa_accept_cap;     /* 0 = 10 * sa_m */
  int sa_max_temp_steps;

  sdeslab_weights weights;
} sdeslab_attack_params;

/* Fills every field with its default. */
SDESLAB_API void sdeslab_attack_params_init(sdeslab_attack_params* params);

typedef struct sdeslab_attack_result {
  uint16_t key;
  double cost;
  uint64_t evaluations;
} sdeslab_attack_result;

/* algorithm is "ga", "ma", "sa", or "brute" (any case). NULL params means
 * all defaults. */
SDESLAB_API sdeslab_status sdeslab_attack(const char* algorithm, const uint8_t* ciphertext,
                                          size_t len, const sdeslab_model* model,
                                          const sdeslab_attack_params* params, uint64_t seed,
                                          sdeslab_attack_result* result_out);

/* ---- benchmark harness ---- */

/* Runs the full protocol for every (algorithm, length) pair: messages are cut
 * from the corpus and encrypted under per-message random keys, each attacked
 * runs_per_message times; the lowest-cost run per message is aggregated.
 * algorithms is comma-separated, e.g. "ga,ma,sa". The aggregate table is
 * returned through csv_out; if trials_jsonl_path is non-NULL every raw trial
 * is appended there as one JSON object per line. */
SDESLAB_API sdeslab_status sdeslab_experiment_run(
    const char* algorithms, const size_t* lengths, size_t lengths_count,
    int messages_per_point, int runs_per_message, uint64_t base_seed, int workers,
    const char* corpus, size_t corpus_len, const sdeslab_model* model,
    const sdeslab_attack_params* params, const char* trials_jsonl_path, char** csv_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SDESLAB_H */
