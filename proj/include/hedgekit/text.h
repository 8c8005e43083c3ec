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

#ifndef HEDGEKIT_TEXT_H_
#define HEDGEKIT_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hedgekit {

// Decodes UTF-8 into Unicode scalar values. Throws InputError on malformed
// sequences, overlong encodings and surrogates.
std::u32string DecodeUtf8(std::string_view text);
std::string EncodeUtf8(std::u32string_view text);

// Number of Unicode scalar values in a UTF-8 string.
std::size_t Utf8Length(std::string_view text);

bool IsWhitespace(char32_t c);

// True for characters in the Unicode punctuation (P*) categories. Symbols
// such as '$' or '+' are not punctuation.
bool IsPunctuation(char32_t c);

bool IsLetter(char32_t c);

// Simple one-to-one lowercase mapping for Latin, Greek and Cyrillic.
char32_t ToLower(char32_t c);
std::string ToLowerUtf8(std::string_view text);

// Maximal runs of non-whitespace bytes. Views point into `text`.
std::vector<std::string_view> SplitWhitespace(std::string_view text);
std::size_t CountWords(std::string_view text);

// Removes leading and trailing punctuation characters of a UTF-8 token.
std::string TrimPunctuation(std::string_view token);

// Substring by scalar-value offsets [begin, end). Throws InputError when the
// range does not lie inside the text.
std::string Utf8Substring(std::string_view text, std::size_t begin,
                          std::size_t end);

}  // namespace hedgekit

#endif  // HEDGEKIT_TEXT_H_
