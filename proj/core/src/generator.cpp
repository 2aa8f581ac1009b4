#include "ivr/generator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ivr/rng.hpp"

namespace ivr {

namespace {

constexpr long kMaxRejectionDraws = 1000000;

void require_blocks(const GeneratorSpec& spec, int horizon) {
  if (spec.block_length < 1 || spec.block_count < 1) {
    throw validation_error("block kinds need block_length >= 1 and block_count >= 1");
  }
  if (static_cast<long>(spec.block_length) * spec.block_count != horizon) {
    throw validation_error("horizon " + std::to_string(horizon) +
                           " must equal block_length * block_count = " +
                           std::to_string(spec.block_length) + " * " +
                           std::to_string(spec.block_count));
  }
}

std::vector<double> generate_impl(const GeneratorSpec& spec, int horizon, long* clip_count) {
  if (horizon < 1) throw validation_error("horizon must be >= 1");
  std::vector<double> out;
  out.reserve(horizon);
  Rng rng(spec.seed);

  switch (spec.kind) {
    case GeneratorKind::uniform: {
      for (int i = 0; i < horizon; ++i) out.push_back(rng.next_sign());
      break;
    }
    case GeneratorKind::constant: {
      if (!(spec.constant_value >= -1.0 && spec.constant_value <= 1.0)) {
        throw validation_error("constant value must lie in [-1, 1]");
      }
      out.assign(horizon, spec.constant_value);
      break;
    }
    case GeneratorKind::alternating: {
      for (int i = 0; i < horizon; ++i) out.push_back(i % 2 == 0 ? 1.0 : -1.0);
      break;
    }
    case GeneratorKind::biased_blocks: {
      require_blocks(spec, horizon);
      if (!(spec.bias >= 0.0 && spec.bias <= 1.0)) {
        throw validation_error("bias must lie in [0, 1]");
      }
      // Block j leans toward sign (-1)^j: each bit matches the lean with
      // probability bias.
      for (int j = 0; j < spec.block_count; ++j) {
        const double lean = j % 2 == 0 ? 1.0 : -1.0;
        for (int i = 0; i < spec.block_length; ++i) {
          out.push_back(rng.next_unit() < spec.bias ? lean : -lean);
        }
      }
      break;
    }
    case GeneratorKind::low_height_blocks: {
      require_blocks(spec, horizon);
      if (!(spec.height_factor > 0.0)) {
        throw validation_error("height_factor must be > 0");
      }
      const double bound =
          2.0 * spec.height_factor * std::sqrt(static_cast<double>(spec.block_length));
      std::vector<double> block(spec.block_length);
      for (int j = 0; j < spec.block_count; ++j) {
        long draws = 0;
        for (;;) {
          double h = 0.0;
          for (double& v : block) {
            v = rng.next_sign();
            h += v;
          }
          draws += spec.block_length;
          if (std::fabs(h) <= bound) break;
          if (draws >= kMaxRejectionDraws) {
            throw std::runtime_error("low-height rejection exceeded " +
                                     std::to_string(kMaxRejectionDraws) + " draws for block " +
                                     std::to_string(j + 1) + "; raise height_factor");
          }
        }
        out.insert(out.end(), block.begin(), block.end());
      }
      break;
    }
    case GeneratorKind::real_signs_adversarial: {
      // Hardest sign pattern for a sign-blind bettor: all plus. Magnitudes
      // come from the model; clipping (for the bit-game container) is
      // counted, never silent.
      for (int i = 0; i < horizon; ++i) {
        double v = spec.model.sample(rng);
        if (clip_count != nullptr && v > 1.0) ++*clip_count;
        out.push_back(v);
      }
      break;
    }
  }
  return out;
}

}  // namespace

GeneratorKind generator_kind_from_name(const std::string& name) {
  if (name == "uniform") return GeneratorKind::uniform;
  if (name == "constant") return GeneratorKind::constant;
  if (name == "alternating") return GeneratorKind::alternating;
  if (name == "biased-blocks") return GeneratorKind::biased_blocks;
  if (name == "low-height-blocks") return GeneratorKind::low_height_blocks;
  if (name == "real-signs-adversarial") return GeneratorKind::real_signs_adversarial;
  throw validation_error("unknown generator kind: " + name);
}

std::string generator_kind_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::uniform:
      return "uniform";
    case GeneratorKind::constant:
      return "constant";
    case GeneratorKind::alternating:
      return "alternating";
    case GeneratorKind::biased_blocks:
      return "biased-blocks";
    case GeneratorKind::low_height_blocks:
      return "low-height-blocks";
    case GeneratorKind::real_signs_adversarial:
      return "real-signs-adversarial";
  }
  return "?";
}

Sequence generate(const GeneratorSpec& spec, int horizon) {
  long clips = 0;
  std::vector<double> values = generate_impl(spec, horizon, &clips);
  if (spec.kind == GeneratorKind::real_signs_adversarial) {
    for (double& v : values) v = std::clamp(v, -1.0, 1.0);
  }
  return Sequence(std::move(values));
}

std::vector<double> generate_real(const GeneratorSpec& spec, int horizon) {
  return generate_impl(spec, horizon, nullptr);
}

long generate_clip_count(const GeneratorSpec& spec, int horizon) {
  long clips = 0;
  generate_impl(spec, horizon, &clips);
  return clips;
}

}  // namespace ivr
