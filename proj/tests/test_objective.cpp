#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "sdeslab/cipher.hpp"
#include "sdeslab/errors.hpp"
#include "sdeslab/objective.hpp"
#include "support.hpp"

using namespace sdeslab;
using testsupport::english_model;
using testsupport::english_model_tri;
using testsupport::norm_corpus;
using testsupport::to_bytes;

TEST_CASE("function and counting objectives") {
  const FunctionObjective twice([](SdesKey k) { return 2.0 * k.packed(); });
  CHECK(twice.evaluate(SdesKey(21)) == 42.0);

  const CountingObjective counted(twice);
  for (int i = 0; i < 7; ++i) counted.evaluate(SdesKey(static_cast<std::uint16_t>(i)));
  CHECK(counted.evaluations() == 7);
  CHECK(counted.evaluate(SdesKey(1)) == twice.evaluate(SdesKey(1)));
  CHECK(counted.evaluations() == 8);
}

TEST_CASE("key fitness objective equals the compositional pipeline") {
  const std::string message = norm_corpus().substr(500, 400);
  const std::vector<std::uint8_t> ciphertext =
      encrypt_bytes(to_bytes(message), SdesKey::parse("1010000010"));

  struct Setup {
    const LanguageModel& model;
    NGramWeights weights;
  };
  const Setup setups[] = {{english_model(), {0.0, 1.0, 0.0}},
                          {english_model_tri(), {0.3, 0.5, 0.2}}};

  for (const Setup& setup : setups) {
    const KeyFitnessObjective objective(ciphertext, setup.model, setup.weights);
    for (int k = 0; k < 1024; ++k) {
      const SdesKey key(static_cast<std::uint16_t>(k));
      const double fast = objective.evaluate(key);
      double reference = 0.0;
      bool defined = true;
      try {
        reference = key_fitness(ciphertext, key, setup.model, setup.weights);
      } catch (const InsufficientText&) {
        defined = false;
      }
      if (defined) {
        CHECK(std::abs(fast - reference) <= 1e-12);
        CHECK(fast >= 0.0);
        CHECK(fast <= 2.0);
      } else {
        CHECK(fast == kUnscoreableCost);
      }
    }
  }
}

TEST_CASE("keys whose decryption has no letters score the cost supremum") {
  // Pick a byte that key 5 decrypts to something outside A-Z/a-z; a
  // ciphertext made only of that byte normalizes to nothing under key 5.
  const Codebook& book = decrypt_codebook();
  int byte_value = -1;
  for (int b = 0; b < 256 && byte_value < 0; ++b) {
    const char c = static_cast<char>(book[5][b]);
    const bool letter = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
    if (!letter) byte_value = b;
  }
  REQUIRE(byte_value >= 0);

  const std::vector<std::uint8_t> ciphertext(40, static_cast<std::uint8_t>(byte_value));
  const NGramWeights bigram_only{};
  const KeyFitnessObjective objective(ciphertext, english_model(), bigram_only);

  CHECK(objective.evaluate(SdesKey(5)) == kUnscoreableCost);
  CHECK_THROWS_AS(key_fitness(ciphertext, SdesKey(5), english_model(), bigram_only),
                  InsufficientText);
}

TEST_CASE("a one-letter decryption is scoreable only without bigrams") {
  const SdesKey key = SdesKey::parse("1010000010");
  const std::vector<std::uint8_t> one = encrypt_bytes(to_bytes("T"), key);

  const KeyFitnessObjective bigram(one, english_model(), {0.0, 1.0, 0.0});
  CHECK(bigram.evaluate(key) == kUnscoreableCost);
  CHECK_THROWS_AS(key_fitness(one, key, english_model(), {0.0, 1.0, 0.0}),
                  InsufficientText);

  const KeyFitnessObjective unigram(one, english_model(), {1.0, 0.0, 0.0});
  const double expected = key_fitness(one, key, english_model(), {1.0, 0.0, 0.0});
  CHECK(std::abs(unigram.evaluate(key) - expected) <= 1e-12);
}

TEST_CASE("key fitness objective rejects unusable inputs") {
  const NGramWeights bigram_only{};
  CHECK_THROWS_AS(KeyFitnessObjective({}, english_model(), bigram_only), InvalidArgument);

  const std::vector<std::uint8_t> some = to_bytes("SOME BYTES");
  CHECK_THROWS_AS(KeyFitnessObjective(some, english_model(), {0.0, 0.5, 0.5}),
                  InvalidArgument);
  CHECK_THROWS_AS(KeyFitnessObjective(some, english_model(), {0.5, 0.6, 0.0}),
                  InvalidArgument);
  CHECK_NOTHROW(KeyFitnessObjective(some, english_model_tri(), {0.0, 0.5, 0.5}));
}

TEST_CASE("concurrent evaluation matches serial evaluation") {
  const std::string message = norm_corpus().substr(9000, 300);
  const std::vector<std::uint8_t> ciphertext =
      encrypt_bytes(to_bytes(message), SdesKey(321));
  const KeyFitnessObjective objective(ciphertext, english_model(), {0.0, 1.0, 0.0});

  std::vector<double> serial(1024);
  for (int k = 0; k < 1024; ++k)
    serial[static_cast<std::size_t>(k)] = objective.evaluate(SdesKey(static_cast<std::uint16_t>(k)));

  std::vector<double> a(1024), b(1024);
  std::thread ta([&] {
    for (int k = 0; k < 1024; ++k)
      a[static_cast<std::size_t>(k)] = objective.evaluate(SdesKey(static_cast<std::uint16_t>(k)));
  });
  std::thread tb([&] {
    for (int k = 1023; k >= 0; --k)
      b[static_cast<std::size_t>(k)] = objective.evaluate(SdesKey(static_cast<std::uint16_t>(k)));
  });
  ta.join();
  tb.join();
  CHECK(a == serial);
  CHECK(b == serial);
}
