// Copyright 2026 The compresslaw Authors
// SPDX-License-Identifier: Apache-2.0

// Synthetic experiment generator.
//
// Records cover the Cartesian grid l0 x r x d in that nesting order (d varies
// fastest). Noise is multiplicative: l = law(l0, r, d) * exp(noise_std * z).
//
// The noise stream is portable and fully specified:
//   engine   std::mt19937_64 seeded with `seed` (output fixed by the C++
//            standard);
//   uniform  u = (next() >> 11) * 2^-53, in [0, 1);
//   normal   one Box-Muller draw per record from two consecutive uniforms,
//            z = sqrt(-2 ln(1 - u1)) * cos(2 pi u2).
// With noise_std == 0 no numbers are drawn.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "compresslaw/law.hpp"
#include "compresslaw/regress.hpp"

namespace compresslaw {

struct SyntheticConfig {
  CompressionLaw truth;
  std::vector<double> l0_values;
  std::vector<double> r_values;
  std::vector<double> d_values;
  double noise_std = 0.05;
  std::uint64_t seed = 0;
  std::string model_id = "synthetic";
};

/// Throws InvalidArgument for an invalid config and SingularDesignError when
/// the grid cannot identify the truth's exponents.
std::vector<ExperimentRecord> generate(const SyntheticConfig& config);

/// Standard-normal stream described in the header comment.
class PortableNormal {
 public:
  explicit PortableNormal(std::uint64_t seed);
  double uniform();
  double next();

 private:
  std::mt19937_64 engine_;
};

}  // namespace compresslaw
