#pragma once

// Synthetic bundles with planted structure, used as ground truth for the
// analysis pipeline. Generation is fully specified so fixtures can be
// reproduced byte-for-byte in any language:
//
//   normals  <- BoxMuller(SplitMix64(seed))        (see rng.hpp)
//   u        <- first `dim` normals, scaled to unit length
//               (equivalently: e1 under a Haar-random rotation)
//   for token i = 0..n-1, value v = i+1, coordinate j = 0..dim-1:
//     e[i][j] = g(v)·u[j] + sigma·z,   z the next normal
//   g = v (linear), ln v (log), 0 (random);  sigma = noise_sigma/sqrt(dim)
//   every noise normal is drawn even when noise_sigma = 0
//   values are computed in double and rounded once to float32.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "numeracy/bundle.hpp"
#include "numeracy/error.hpp"
#include "numeracy/probesets.hpp"
#include "numeracy/rng.hpp"

namespace numeracy {

enum class PlantKind { Linear, Log, Random };

constexpr std::string_view to_string(PlantKind k) {
  switch (k) {
    case PlantKind::Linear: return "linear";
    case PlantKind::Log: return "log";
    case PlantKind::Random: return "random";
  }
  return "random";
}

inline std::optional<PlantKind> parse_plant_kind(std::string_view s) {
  if (s == "linear") return PlantKind::Linear;
  if (s == "log") return PlantKind::Log;
  if (s == "random") return PlantKind::Random;
  return std::nullopt;
}

struct SynthSpec {
  PlantKind kind = PlantKind::Linear;
  std::size_t n_tokens = 21;
  std::size_t dim = 64;
  double noise_sigma = 0.0;  // relative to the unit planted direction
  std::uint64_t seed = 0;

  void validate() const {
    if (n_tokens < 2) throw Error(ErrorCode::InvalidSpec, "n_tokens must be >= 2");
    if (dim < 2) throw Error(ErrorCode::InvalidSpec, "dim must be >= 2");
    if (!std::isfinite(noise_sigma) || noise_sigma < 0.0) {
      throw Error(ErrorCode::InvalidSpec, "noise_sigma must be finite and >= 0");
    }
  }
};

inline std::string synth_model_name(const SynthSpec& spec) {
  return "synth-" + std::string(to_string(spec.kind)) + "-n" + std::to_string(spec.n_tokens) + "-d" +
         std::to_string(spec.dim) + "-s" + std::to_string(spec.seed);
}

/// The probe set matching a planted bundle: surfaces "1".."n", values 1..n.
inline TokenSet synth_token_set(const SynthSpec& spec) {
  std::vector<TokenEntry> entries;
  entries.reserve(spec.n_tokens);
  for (std::size_t i = 0; i < spec.n_tokens; ++i) {
    const auto s = std::to_string(i + 1);
    entries.push_back({s, static_cast<double>(i + 1), s});
  }
  return TokenSet::make("synth_" + std::string(to_string(spec.kind)), std::move(entries), ValueScale::Count);
}

inline EmbeddingBundle make_planted_bundle(const SynthSpec& spec) {
  spec.validate();
  BoxMuller normal(spec.seed);

  std::vector<double> u(spec.dim);
  double norm2 = 0.0;
  for (auto& x : u) {
    x = normal();
    norm2 += x * x;
  }
  const double norm = std::sqrt(norm2);
  for (auto& x : u) x /= norm;

  const double coord_sigma = spec.noise_sigma / std::sqrt(static_cast<double>(spec.dim));
  std::vector<std::string> vocab;
  std::vector<float> matrix;
  vocab.reserve(spec.n_tokens);
  matrix.reserve(spec.n_tokens * spec.dim);
  for (std::size_t i = 0; i < spec.n_tokens; ++i) {
    const double v = static_cast<double>(i + 1);
    double g = 0.0;
    switch (spec.kind) {
      case PlantKind::Linear: g = v; break;
      case PlantKind::Log: g = std::log(v); break;
      case PlantKind::Random: g = 0.0; break;
    }
    vocab.push_back(std::to_string(i + 1));
    for (std::size_t j = 0; j < spec.dim; ++j) {
      const double z = normal();
      matrix.push_back(static_cast<float>(g * u[j] + coord_sigma * z));
    }
  }
  return EmbeddingBundle(synth_model_name(spec), std::move(vocab), std::move(matrix), spec.dim);
}

}  // namespace numeracy
