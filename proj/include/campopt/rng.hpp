// Copyright 2026 The camp-opt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CAMPOPT_RNG_HPP_
#define CAMPOPT_RNG_HPP_

#include <cstdint>
#include <random>

namespace campopt {

// Deterministic random source. mt19937_64 output is pinned by the standard,
// and the uniform conversions below avoid std::uniform_*_distribution on
// purpose: those are implementation-defined, and identical seeds must produce
// identical networks (and therefore byte-identical reports) on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer on [lo, hi], inclusive; unbiased via rejection.
  std::uint64_t uniform_index(std::uint64_t range) {  // [0, range)
    if (range == 0) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % range;
  }

  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(uniform_index(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace campopt

#endif  // CAMPOPT_RNG_HPP_
