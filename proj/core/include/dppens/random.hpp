// Copyright 2026 The dppens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPPENS_RANDOM_HPP
#define DPPENS_RANDOM_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace dppens {

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seedable generator. Independent streams are derived from a master seed
/// and a tuple of counters (repeat, member, draw, ...), so results do not
/// depend on which worker consumes which stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  static Rng stream(std::uint64_t master_seed,
                    std::initializer_list<std::uint64_t> counters);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer on [0, n), n >= 1, by rejection.
  std::uint64_t below(std::uint64_t n);
  /// Standard normal (Marsaglia polar method).
  double normal();

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dppens

#endif  // DPPENS_RANDOM_HPP
