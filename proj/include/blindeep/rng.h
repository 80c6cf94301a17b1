// Copyright 2026 The blindeep Authors.
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

#ifndef BLINDEEP_RNG_H_
#define BLINDEEP_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace blindeep {

// Deterministic random source. The engine is std::mt19937_64 seeded through
// std::seed_seq, both of which are fully specified by the standard, and the
// uniform/normal transforms below are implemented here rather than taken from
// <random> distributions (whose algorithms are implementation-defined). The
// same (seed, stream) therefore yields the same numbers on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();

  // Uniform integer on [0, bound).
  std::uint64_t below(std::uint64_t bound);

  // Standard normal (Marsaglia polar method).
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Mixes a list of integers into one 64-bit seed (splitmix64 finalizer).
// Used to derive independent substreams from a root seed plus counters.
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts);

}  // namespace blindeep

#endif  // BLINDEEP_RNG_H_
