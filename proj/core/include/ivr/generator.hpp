#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ivr/predictor.hpp"
#include "ivr/sequence.hpp"

namespace ivr {

enum class GeneratorKind {
  uniform,            // i.i.d. fair signs
  constant,           // one fixed value
  alternating,        // +1, -1, +1, ...
  biased_blocks,      // k blocks of length x; block j leans sign (-1)^j with prob p
  low_height_blocks,  // k blocks of length x, each conditioned on |height| <= 2c'sqrt(x)
  real_signs_adversarial,  // all-plus signs, magnitudes from a model
};

GeneratorKind generator_kind_from_name(const std::string& name);
std::string generator_kind_name(GeneratorKind kind);

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::uniform;
  std::uint64_t seed = 0;
  double constant_value = 1.0;  // constant
  int block_length = 0;         // biased_blocks, low_height_blocks
  int block_count = 0;
  double bias = 0.5;            // biased_blocks: P(block-preferred sign)
  double height_factor = 0.5;   // low_height_blocks: the c' in 2c'sqrt(x)
  MagnitudeModel model = MagnitudeModel::point_mass_one();  // real_signs_adversarial
};

// Deterministic given (spec, T). Block kinds require T == block_length *
// block_count. The low-height rejection loop gives up after 1e6 draws per
// block. real_signs_adversarial values are clipped into [-1, 1] here;
// generate_real returns them unclipped.
Sequence generate(const GeneratorSpec& spec, int horizon);
std::vector<double> generate_real(const GeneratorSpec& spec, int horizon);

// Number of values generate() would clip for this spec (0 for bit kinds).
long generate_clip_count(const GeneratorSpec& spec, int horizon);

}  // namespace ivr
