#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <sdeslab.h>

namespace {

const std::string& pangram_corpus() {
  static const std::string corpus = [] {
    std::string text;
    for (int i = 0; i < 40; ++i) text += "THE QUICK BROWN FOX JUMPS OVER THE LAZY DOG ";
    return text;
  }();
  return corpus;
}

struct ModelHandle {
  sdeslab_model* ptr = nullptr;
  ~ModelHandle() { sdeslab_model_free(ptr); }
};

sdeslab_model* shared_model() {
  static ModelHandle handle = [] {
    ModelHandle h;
    const std::string& corpus = pangram_corpus();
    REQUIRE(sdeslab_model_build(corpus.c_str(), corpus.size(), "pangram corpus", 0,
                                &h.ptr) == SDESLAB_OK);
    return h;
  }();
  return handle.ptr;
}

std::vector<std::uint8_t> sample_ciphertext(std::uint16_t key, std::size_t len) {
  const std::string message = pangram_corpus().substr(0, len);
  std::vector<std::uint8_t> bytes(message.begin(), message.end());
  REQUIRE(sdeslab_encrypt_bytes(key, bytes.data(), bytes.size(), bytes.data()) ==
          SDESLAB_OK);
  return bytes;
}

}  // namespace

TEST_CASE("library metadata and no-op frees") {
  const char* version = sdeslab_version();
  REQUIRE(version != nullptr);
  CHECK(std::strlen(version) > 0);
  sdeslab_string_free(nullptr);
  sdeslab_model_free(nullptr);
}

TEST_CASE("keys and blocks parse from and format to bit strings") {
  uint16_t key = 0;
  REQUIRE(sdeslab_key_parse("1010000010", &key) == SDESLAB_OK);
  CHECK(key == 642);

  char key_text[11] = {};
  sdeslab_key_format(642, key_text);
  CHECK(std::string(key_text) == "1010000010");

  uint8_t block = 0;
  REQUIRE(sdeslab_block_parse("10010111", &block) == SDESLAB_OK);
  CHECK(block == 151);

  char block_text[9] = {};
  sdeslab_block_format(151, block_text);
  CHECK(std::string(block_text) == "10010111");

  CHECK(sdeslab_key_parse("101000001", &key) == SDESLAB_ERR_INVALID_ARGUMENT);
  CHECK(sdeslab_key_parse("10100000100", &key) == SDESLAB_ERR_INVALID_ARGUMENT);
  CHECK(sdeslab_key_parse("10100a0010", &key) == SDESLAB_ERR_INVALID_ARGUMENT);
  CHECK(sdeslab_key_parse(nullptr, &key) == SDESLAB_ERR_INVALID_ARGUMENT);
  CHECK(sdeslab_key_parse("1010000010", nullptr) == SDESLAB_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(sdeslab_last_error()) > 0);
  CHECK(sdeslab_block_parse("1001011", &block) == SDESLAB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("the cipher entry points match the published key schedule") {
  uint8_t k1 = 0;
  uint8_t k2 = 0;
  REQUIRE(sdeslab_key_schedule(642, &k1, &k2) == SDESLAB_OK);
  CHECK(k1 == 0xA4);  // 10100100
  CHECK(k2 == 0x43);  // 01000011
  CHECK(sdeslab_key_schedule(1024, &k1, &k2) == SDESLAB_ERR_INVALID_ARGUMENT);

  uint8_t cipher = 0;
  REQUIRE(sdeslab_encrypt_block(642, 151, &cipher) == SDESLAB_OK);
  CHECK(cipher == 56);  // 00111000
  uint8_t plain = 0;
  REQUIRE(sdeslab_decrypt_block(642, 56, &plain) == SDESLAB_OK);
  CHECK(plain == 151);
  CHECK(sdeslab_encrypt_block(4096, 151, &cipher) == SDESLAB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("byte buffers round-trip, including in place") {
  std::vector<std::uint8_t> original(256);
  for (int i = 0; i < 256; ++i) original[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);

  std::vector<std::uint8_t> work(256);
  REQUIRE(sdeslab_encrypt_bytes(321, original.data(), original.size(), work.data()) ==
          SDESLAB_OK);
  CHECK(work != original);

  // decrypt aliasing input and output
  REQUIRE(sdeslab_decrypt_bytes(321, work.data(), work.size(), work.data()) == SDESLAB_OK);
  CHECK(work == original);

  CHECK(sdeslab_encrypt_bytes(321, nullptr, 0, nullptr) == SDESLAB_OK);
  CHECK(sdeslab_encrypt_bytes(321, nullptr, 4, work.data()) ==
        SDESLAB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("normalize exposes the model's text preparation") {
  char* out = nullptr;
  const char* text = "Hello, world!";
  REQUIRE(sdeslab_normalize(text, std::strlen(text), &out) == SDESLAB_OK);
  REQUIRE(out != nullptr);
  CHECK(std::string(out) == "HELLO WORLD");
  sdeslab_string_free(out);

  char* empty = nullptr;
  REQUIRE(sdeslab_normalize(nullptr, 0, &empty) == SDESLAB_OK);
  REQUIRE(empty != nullptr);
  CHECK(std::string(empty).empty());
  sdeslab_string_free(empty);

  CHECK(sdeslab_normalize(nullptr, 3, &out) == SDESLAB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("models build, persist, and score text through the C surface") {
  sdeslab_model* model = shared_model();
  REQUIRE(model != nullptr);
  CHECK(std::string(sdeslab_model_source(model)) == "pangram corpus");
  CHECK(sdeslab_model_has_trigrams(model) == 0);
  CHECK(std::string(sdeslab_model_source(nullptr)).empty());
  CHECK(sdeslab_model_has_trigrams(nullptr) == 0);

  // the corpus scores zero against its own statistics
  const std::string& corpus = pangram_corpus();
  double self_cost = 1.0;
  REQUIRE(sdeslab_text_cost(model, corpus.c_str(), corpus.size(), nullptr, &self_cost) ==
          SDESLAB_OK);
  CHECK(self_cost <= 1e-9);

  // trigram weights need a trigram-bearing model
  const sdeslab_weights with_trigrams{0.2, 0.3, 0.5};
  double cost = 0.0;
  CHECK(sdeslab_text_cost(model, corpus.c_str(), corpus.size(), &with_trigrams, &cost) ==
        SDESLAB_ERR_INVALID_ARGUMENT);

  sdeslab_model* tri = nullptr;
  REQUIRE(sdeslab_model_build(corpus.c_str(), corpus.size(), "tri", 1, &tri) == SDESLAB_OK);
  CHECK(sdeslab_model_has_trigrams(tri) == 1);
  CHECK(sdeslab_text_cost(tri, corpus.c_str(), corpus.size(), &with_trigrams, &cost) ==
        SDESLAB_OK);
  CHECK(cost <= 1e-9);
  sdeslab_model_free(tri);

  // save and reload: the reloaded model scores identically
  const char* path = "/tmp/sdeslab_capi_model.txt";
  std::remove(path);
  REQUIRE(sdeslab_model_save(model, path) == SDESLAB_OK);
  sdeslab_model* loaded = nullptr;
  REQUIRE(sdeslab_model_load(path, &loaded) == SDESLAB_OK);
  CHECK(std::string(sdeslab_model_source(loaded)) == "pangram corpus");
  const char* probe = "THE FOX JUMPS";
  double before = 0.0;
  double after = 0.0;
  REQUIRE(sdeslab_text_cost(model, probe, std::strlen(probe), nullptr, &before) ==
          SDESLAB_OK);
  REQUIRE(sdeslab_text_cost(loaded, probe, std::strlen(probe), nullptr, &after) ==
          SDESLAB_OK);
  CHECK(before == after);
  sdeslab_model_free(loaded);
  std::remove(path);

  CHECK(sdeslab_model_load("/tmp/sdeslab_missing_model.txt", &loaded) == SDESLAB_ERR_IO);

  sdeslab_model* rejected = nullptr;
  CHECK(sdeslab_model_build("TINY", 4, "tiny", 0, &rejected) ==
        SDESLAB_ERR_INSUFFICIENT_TEXT);
}

TEST_CASE("key fitness ranks the true key ahead of impostors") {
  sdeslab_model* model = shared_model();
  const std::vector<std::uint8_t> ciphertext = sample_ciphertext(642, 880);

  double true_cost = 0.0;
  REQUIRE(sdeslab_key_fitness(model, ciphertext.data(), ciphertext.size(), 642, nullptr,
                              &true_cost) == SDESLAB_OK);
  double wrong_cost = 0.0;
  REQUIRE(sdeslab_key_fitness(model, ciphertext.data(), ciphertext.size(), 643, nullptr,
                              &wrong_cost) == SDESLAB_OK);
  CHECK(true_cost < wrong_cost);

  double replay = 0.0;
  REQUIRE(sdeslab_key_fitness(model, ciphertext.data(), ciphertext.size(), 642, nullptr,
                              &replay) == SDESLAB_OK);
  CHECK(replay == true_cost);

  CHECK(sdeslab_key_fitness(model, ciphertext.data(), ciphertext.size(), 1024, nullptr,
                            &replay) == SDESLAB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("attack params default to the documented engine settings") {
  sdeslab_attack_params params;
  sdeslab_attack_params_init(&params);
  CHECK(params.ga_pop_size == 100);
  CHECK(params.ga_max_gen == 50);
  CHECK(params.ga_cross_rate == 0.95);
  CHECK(params.ga_mutate_rate == 0.05);
  CHECK(params.ga_elitism == 1);
  CHECK(params.ma_pop_size == 10);
  CHECK(params.ma_max_gen == 50);
  CHECK(params.ma_cross_rate == 0.5);
  CHECK(params.ma_mutate_rate == 0.5);
  CHECK(params.ma_elitism == 1);
  CHECK(params.ma_local_depth == 10);
  CHECK(params.sa_t0 <= 0.0);
  CHECK(params.sa_cooling == 0.95);
  CHECK(params.sa_m == 10);
  CHECK(params.sa_iters_per_temp == 0);
  CHECK(params.sa_accept_cap == 0);
  CHECK(params.sa_max_temp_steps == 500);
  CHECK(params.weights.alpha == 0.0);
  CHECK(params.weights.beta == 1.0);
  CHECK(params.weights.gamma == 0.0);
  sdeslab_attack_params_init(nullptr);  // harmless
}

TEST_CASE("attacks recover keys and replay deterministically") {
  sdeslab_model* model = shared_model();
  const std::vector<std::uint8_t> ciphertext = sample_ciphertext(642, 880);

  sdeslab_attack_result brute{};
  REQUIRE(sdeslab_attack("brute", ciphertext.data(), ciphertext.size(), model, nullptr, 0,
                         &brute) == SDESLAB_OK);
  CHECK(brute.key == 642);
  CHECK(brute.evaluations == 1024);
  double brute_cost = 0.0;
  REQUIRE(sdeslab_key_fitness(model, ciphertext.data(), ciphertext.size(), brute.key,
                              nullptr, &brute_cost) == SDESLAB_OK);
  CHECK(std::abs(brute.cost - brute_cost) <= 1e-12);

  sdeslab_attack_params params;
  sdeslab_attack_params_init(&params);
  params.ga_pop_size = 12;
  params.ga_max_gen = 4;
  params.sa_m = 2;
  params.sa_max_temp_steps = 30;

  sdeslab_attack_result ga_once{};
  sdeslab_attack_result ga_twice{};
  REQUIRE(sdeslab_attack("ga", ciphertext.data(), ciphertext.size(), model, &params, 7,
                         &ga_once) == SDESLAB_OK);
  REQUIRE(sdeslab_attack("GA", ciphertext.data(), ciphertext.size(), model, &params, 7,
                         &ga_twice) == SDESLAB_OK);
  CHECK(ga_once.key == ga_twice.key);
  CHECK(ga_once.cost == ga_twice.cost);
  CHECK(ga_once.evaluations == ga_twice.evaluations);
  CHECK(ga_once.evaluations == 12 + 4 * 11);

  sdeslab_attack_result sa_once{};
  sdeslab_attack_result sa_twice{};
  REQUIRE(sdeslab_attack("sa", ciphertext.data(), ciphertext.size(), model, &params, 9,
                         &sa_once) == SDESLAB_OK);
  REQUIRE(sdeslab_attack("sa", ciphertext.data(), ciphertext.size(), model, &params, 9,
                         &sa_twice) == SDESLAB_OK);
  CHECK(sa_once.key == sa_twice.key);
  CHECK(sa_once.cost == sa_twice.cost);
  CHECK(sa_once.evaluations == sa_twice.evaluations);

  sdeslab_attack_result result{};
  CHECK(sdeslab_attack("tabu", ciphertext.data(), ciphertext.size(), model, nullptr, 0,
                       &result) == SDESLAB_ERR_INVALID_ARGUMENT);
  CHECK(sdeslab_attack("ga", ciphertext.data(), ciphertext.size(), model, nullptr, 0,
                       nullptr) == SDESLAB_ERR_INVALID_ARGUMENT);
  CHECK(sdeslab_attack("ga", ciphertext.data(), 0, model, nullptr, 0, &result) ==
        SDESLAB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("the benchmark harness produces the aggregate CSV and raw trials") {
  sdeslab_model* model = shared_model();
  const std::string& corpus = pangram_corpus();
  const char* jsonl_path = "/tmp/sdeslab_capi_trials.jsonl";
  std::remove(jsonl_path);

  const size_t lengths[] = {200};
  char* csv = nullptr;
  REQUIRE(sdeslab_experiment_run("brute", lengths, 1, 2, 1, 11, 1, corpus.c_str(),
                                 corpus.size(), model, nullptr, jsonl_path,
                                 &csv) == SDESLAB_OK);
  REQUIRE(csv != nullptr);
  const std::string table(csv);
  sdeslab_string_free(csv);

  CHECK(table.find("algorithm,ciphertext_len,mean_bits,std_dev_bits,mean_time_s,trials\n") ==
        0);
  CHECK(table.find("\nBRUTE,200,") != std::string::npos);
  // header plus exactly one data row
  CHECK(std::count(table.begin(), table.end(), '\n') == 2);

  std::ifstream trials(jsonl_path);
  REQUIRE(trials.good());
  int lines = 0;
  for (std::string line; std::getline(trials, line);) {
    ++lines;
    const nlohmann::json parsed = nlohmann::json::parse(line);
    CHECK(parsed.at("algorithm") == "BRUTE");
    CHECK(parsed.at("ciphertext_len") == 200);
    CHECK(parsed.at("evaluations") == 1024);
  }
  CHECK(lines == 2);
  std::remove(jsonl_path);

  char* out = nullptr;
  CHECK(sdeslab_experiment_run("ga,,sa", lengths, 1, 1, 1, 0, 1, corpus.c_str(),
                               corpus.size(), model, nullptr, nullptr,
                               &out) == SDESLAB_ERR_INVALID_ARGUMENT);
  CHECK(sdeslab_experiment_run("brute", lengths, 0, 1, 1, 0, 1, corpus.c_str(),
                               corpus.size(), model, nullptr, nullptr,
                               &out) == SDESLAB_ERR_INVALID_ARGUMENT);
  CHECK(sdeslab_experiment_run("brute", lengths, 1, 1, 1, 0, 1, corpus.c_str(),
                               corpus.size(), model, nullptr, nullptr,
                               nullptr) == SDESLAB_ERR_INVALID_ARGUMENT);
}
