#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace reviewguard {

// Counts derived from one pass over a review text. Word = maximal run of
// non-whitespace (Unicode whitespace, decoded from UTF-8) stripped of leading
// and trailing ASCII punctuation; runs that strip to nothing are not words.
struct TextStats {
  long word_count = 0;
  long capital_words = 0;      // >=2 chars, has cased letters, none lowercase
  long first_person_words = 0; // i/me/my/mine/myself/we/us/our/ours/ourselves
  long exclamations = 0;       // '!' characters in the raw text
};

std::vector<std::string> tokenize(std::string_view text);

TextStats analyze_text(std::string_view text);

bool is_capital_word(std::string_view word);
bool is_first_person_pronoun(std::string_view word);

}  // namespace reviewguard
