// Copyright 2026 The HedgeKit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hedgekit/text.h"

#include <algorithm>
#include <array>
#include <utility>

#include "hedgekit/errors.h"

namespace hedgekit {
namespace {

using Range = std::pair<char32_t, char32_t>;

// Inclusive ranges of the P* general categories for the blocks we care
// about: ASCII, Latin-1, General Punctuation, CJK punctuation and the
// fullwidth forms.
constexpr std::array<Range, 40> kPunctuationRanges = {{
    {0x21, 0x23},     {0x25, 0x2A},     {0x2C, 0x2F},     {0x3A, 0x3B},
    {0x3F, 0x40},     {0x5B, 0x5D},     {0x5F, 0x5F},     {0x7B, 0x7B},
    {0x7D, 0x7D},     {0xA1, 0xA1},     {0xA7, 0xA7},     {0xAB, 0xAB},
    {0xB6, 0xB7},     {0xBB, 0xBB},     {0xBF, 0xBF},     {0x37E, 0x37E},
    {0x387, 0x387},   {0x55A, 0x55F},   {0x589, 0x58A},   {0x5BE, 0x5BE},
    {0x2010, 0x2027}, {0x2030, 0x2043}, {0x2045, 0x2051}, {0x2053, 0x205E},
    {0x207D, 0x207E}, {0x208D, 0x208E}, {0x2308, 0x230B}, {0x2329, 0x232A},
    {0x2E00, 0x2E2E}, {0x2E30, 0x2E4F}, {0x3001, 0x3003}, {0x3008, 0x3011},
    {0x3014, 0x301F}, {0xFE10, 0xFE19}, {0xFE30, 0xFE52}, {0xFE54, 0xFE61},
    {0xFF01, 0xFF03}, {0xFF05, 0xFF0A}, {0xFF0C, 0xFF0F}, {0xFF1A, 0xFF1B},
}};

constexpr std::array<Range, 6> kExtraPunctuationRanges = {{
    {0xFF1F, 0xFF20},
    {0xFF3B, 0xFF3D},
    {0xFF3F, 0xFF3F},
    {0xFF5B, 0xFF5B},
    {0xFF5D, 0xFF5D},
    {0xFF5F, 0xFF65},
}};

template <std::size_t N>
bool InRanges(const std::array<Range, N> &ranges, char32_t c) {
  for (const auto &[lo, hi] : ranges) {
    if (c >= lo && c <= hi) return true;
  }
  return false;
}

[[noreturn]] void BadUtf8(std::size_t offset) {
  throw InputError("invalid UTF-8 at byte " + std::to_string(offset));
}

// Decodes one scalar starting at text[*pos] and advances *pos.
char32_t DecodeOne(std::string_view text, std::size_t *pos) {
  const std::size_t start = *pos;
  const auto lead = static_cast<unsigned char>(text[start]);
  int extra;
  char32_t cp;
  if (lead < 0x80) {
    *pos = start + 1;
    return lead;
  } else if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
  } else {
    BadUtf8(start);
  }
  if (start + extra >= text.size()) BadUtf8(start);
  for (int k = 1; k <= extra; ++k) {
    const auto b = static_cast<unsigned char>(text[start + k]);
    if ((b & 0xC0) != 0x80) BadUtf8(start);
    cp = (cp << 6) | (b & 0x3F);
  }
  static constexpr char32_t kMin[] = {0, 0x80, 0x800, 0x10000};
  if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    BadUtf8(start);
  }
  *pos = start + extra + 1;
  return cp;
}

}  // namespace

std::u32string DecodeUtf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) out.push_back(DecodeOne(text, &pos));
  return out;
}

std::string EncodeUtf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : text) {
    if (c < 0x80) {
      out.push_back(static_cast<char>(c));
    } else if (c < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (c >> 6)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else if (c < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (c >> 12)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (c >> 18)));
      out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
  }
  return out;
}

std::size_t Utf8Length(std::string_view text) {
  std::size_t n = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    DecodeOne(text, &pos);
    ++n;
  }
  return n;
}

bool IsWhitespace(char32_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsPunctuation(char32_t c) {
  return InRanges(kPunctuationRanges, c) ||
         InRanges(kExtraPunctuationRanges, c);
}

bool IsLetter(char32_t c) {
  if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) return true;
  if (c < 0xC0) return false;
  if (c == 0xD7 || c == 0xF7) return false;
  if (c <= 0x24F) return true;                  // Latin-1 and Latin Extended
  if (c >= 0x370 && c <= 0x3FF) return c != 0x37E && c != 0x387;  // Greek
  if (c >= 0x400 && c <= 0x4FF) return true;   // Cyrillic
  return false;
}

char32_t ToLower(char32_t c) {
  if (c >= 'A' && c <= 'Z') return c + 32;
  if (c < 0xC0) return c;
  if (c <= 0xDE && c != 0xD7) return c + 32;
  if (c >= 0x100 && c <= 0x137 && (c % 2) == 0) return c + 1;
  if (c >= 0x14A && c <= 0x177 && (c % 2) == 0) return c + 1;
  if (c >= 0x391 && c <= 0x3AB && c != 0x3A2) return c + 32;
  if (c >= 0x410 && c <= 0x42F) return c + 32;
  if (c >= 0x400 && c <= 0x40F) return c + 80;
  return c;
}

std::string ToLowerUtf8(std::string_view text) {
  std::u32string decoded = DecodeUtf8(text);
  for (char32_t &c : decoded) c = ToLower(c);
  return EncodeUtf8(decoded);
}

std::vector<std::string_view> SplitWhitespace(std::string_view text) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsWhitespace(static_cast<unsigned char>(text[i])))
      ++i;
    const std::size_t start = i;
    while (i < text.size() &&
           !IsWhitespace(static_cast<unsigned char>(text[i])))
      ++i;
    if (i > start) words.push_back(text.substr(start, i - start));
  }
  return words;
}

std::size_t CountWords(std::string_view text) {
  std::size_t n = 0;
  bool in_word = false;
  for (char ch : text) {
    const bool ws = IsWhitespace(static_cast<unsigned char>(ch));
    if (!ws && !in_word) ++n;
    in_word = !ws;
  }
  return n;
}

std::string TrimPunctuation(std::string_view token) {
  std::u32string decoded = DecodeUtf8(token);
  std::size_t begin = 0;
  std::size_t end = decoded.size();
  while (begin < end && IsPunctuation(decoded[begin])) ++begin;
  while (end > begin && IsPunctuation(decoded[end - 1])) --end;
  return EncodeUtf8(std::u32string_view(decoded).substr(begin, end - begin));
}

std::string Utf8Substring(std::string_view text, std::size_t begin,
                          std::size_t end) {
  if (begin > end) throw InputError("substring: begin after end");
  std::size_t pos = 0;
  std::size_t index = 0;
  std::size_t byte_begin = 0;
  while (index < end) {
    if (pos >= text.size()) throw InputError("substring: offset past end of text");
    if (index == begin) byte_begin = pos;
    DecodeOne(text, &pos);
    ++index;
  }
  if (begin == end) return {};
  return std::string(text.substr(byte_begin, pos - byte_begin));
}

}  // namespace hedgekit
