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

#ifndef HEDGEKIT_UTIL_H_
#define HEDGEKIT_UTIL_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace hedgekit {

// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::uint64_t Fnv1a64(std::string_view bytes);
std::string HexDigest(std::string_view bytes);
std::string HashFile(const std::filesystem::path &path);

// Rounds to `digits` significant digits through the decimal representation,
// so that shortest-round-trip printing yields at most that many digits.
double RoundSignificant(double value, int digits = 6);

std::string ReadFile(const std::filesystem::path &path);
void WriteFile(const std::filesystem::path &path, std::string_view contents);

// Unbiased integer in [0, bound) from a 64-bit engine. Unlike
// std::uniform_int_distribution the result is identical across standard
// library implementations.
std::uint64_t UniformBelow(std::mt19937_64 &rng, std::uint64_t bound);

// Fisher-Yates permutation of [0, n) determined entirely by `seed`.
std::vector<std::size_t> SeededPermutation(std::size_t n, std::uint64_t seed);

template <typename T>
void SeededShuffle(std::vector<T> &items, std::mt19937_64 &rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[UniformBelow(rng, i)]);
  }
}

}  // namespace hedgekit

#endif  // HEDGEKIT_UTIL_H_
