#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sdeslab/errors.hpp"
#include "sdeslab/langmodel.hpp"

namespace testsupport {

// The reference corpus, shared by every test that needs real English text.
inline const std::string& raw_corpus() {
  static const std::string text = [] {
    std::ifstream in(SDESLAB_TEST_CORPUS, std::ios::binary);
    if (!in) throw sdeslab::IoError("cannot read test corpus " SDESLAB_TEST_CORPUS);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }();
  return text;
}

inline const std::string& norm_corpus() {
  static const std::string text = sdeslab::normalize_text(raw_corpus());
  return text;
}

inline const sdeslab::LanguageModel& english_model() {
  static const sdeslab::LanguageModel model =
      sdeslab::build_model(raw_corpus(), "test corpus");
  return model;
}

inline const sdeslab::LanguageModel& english_model_tri() {
  static const sdeslab::LanguageModel model =
      sdeslab::build_model(raw_corpus(), "test corpus", true);
  return model;
}

inline std::vector<std::uint8_t> to_bytes(std::string_view s) {
  return {s.begin(), s.end()};
}

}  // namespace testsupport
