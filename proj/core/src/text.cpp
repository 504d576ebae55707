#include "reviewguard/text.hpp"

#include <array>
#include <cctype>
#include <cstdint>

namespace reviewguard {

namespace {

bool is_unicode_space(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0a: case 0x0b: case 0x0c: case 0x0d:
    case 0x20: case 0x85: case 0xa0:
    case 0x1680:
    case 0x2000: case 0x2001: case 0x2002: case 0x2003: case 0x2004:
    case 0x2005: case 0x2006: case 0x2007: case 0x2008: case 0x2009:
    case 0x200a: case 0x2028: case 0x2029: case 0x202f: case 0x205f:
    case 0x3000:
      return true;
    default:
      return false;
  }
}

// Decodes one UTF-8 code point at s[i]; advances i past it. Invalid bytes are
// consumed one at a time and returned verbatim (never classified as space).
char32_t decode_utf8(std::string_view s, std::size_t& i) {
  unsigned char b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int extra = 0;
  char32_t cp = 0;
  if ((b0 & 0xe0) == 0xc0) { extra = 1; cp = b0 & 0x1f; }
  else if ((b0 & 0xf0) == 0xe0) { extra = 2; cp = b0 & 0x0f; }
  else if ((b0 & 0xf8) == 0xf0) { extra = 3; cp = b0 & 0x07; }
  else { ++i; return b0; }
  for (int k = 1; k <= extra; ++k) {
    if (i + std::size_t(k) >= s.size() ||
        (static_cast<unsigned char>(s[i + std::size_t(k)]) & 0xc0) != 0x80) {
      ++i;
      return b0;
    }
    cp = (cp << 6) | (static_cast<unsigned char>(s[i + std::size_t(k)]) & 0x3f);
  }
  i += std::size_t(extra) + 1;
  return cp;
}

bool is_ascii_punct(char c) {
  return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

std::string_view strip_punct(std::string_view run) {
  std::size_t b = 0, e = run.size();
  while (b < e && is_ascii_punct(run[b])) ++b;
  while (e > b && is_ascii_punct(run[e - 1])) --e;
  return run.substr(b, e - b);
}

std::string ascii_lower(std::string_view w) {
  std::string out(w);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = char(c - 'A' + 'a');
  }
  return out;
}

constexpr std::array<std::string_view, 10> kFirstPerson = {
    "i", "me", "my", "mine", "myself", "we", "us", "our", "ours", "ourselves"};

template <typename Fn>
void for_each_run(std::string_view text, Fn&& fn) {
  std::size_t i = 0;
  std::size_t run_begin = 0;
  bool in_run = false;
  while (i < text.size()) {
    std::size_t at = i;
    char32_t cp = decode_utf8(text, i);
    if (is_unicode_space(cp)) {
      if (in_run) {
        fn(text.substr(run_begin, at - run_begin));
        in_run = false;
      }
    } else if (!in_run) {
      run_begin = at;
      in_run = true;
    }
  }
  if (in_run) fn(text.substr(run_begin));
}

}  // namespace

bool is_capital_word(std::string_view word) {
  if (word.size() < 2) return false;
  bool any_cased = false;
  for (char c : word) {
    if (c >= 'a' && c <= 'z') return false;
    if (c >= 'A' && c <= 'Z') any_cased = true;
  }
  return any_cased;
}

bool is_first_person_pronoun(std::string_view word) {
  std::string lower = ascii_lower(word);
  for (auto p : kFirstPerson) {
    if (lower == p) return true;
  }
  return false;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> words;
  for_each_run(text, [&](std::string_view run) {
    std::string_view w = strip_punct(run);
    if (!w.empty()) words.emplace_back(w);
  });
  return words;
}

TextStats analyze_text(std::string_view text) {
  TextStats stats;
  for (char c : text) {
    if (c == '!') ++stats.exclamations;
  }
  for_each_run(text, [&](std::string_view run) {
    std::string_view w = strip_punct(run);
    if (w.empty()) return;
    ++stats.word_count;
    if (is_capital_word(w)) ++stats.capital_words;
    if (is_first_person_pronoun(w)) ++stats.first_person_words;
  });
  return stats;
}

}  // namespace reviewguard
