#pragma once

#include <cmath>
#include <vector>

#include "numeracy/analysis.hpp"
#include "numeracy/error.hpp"
#include "numeracy/synth.hpp"

namespace numeracy {

struct SweepRow {
  double sigma = 0.0;
  double mean_abs_tau = 0.0;
  double hit_rate = 0.0;
  std::size_t trials = 0;
};

/// Whether a trial recovered what was planted. Linear and log plants count a
/// hit when scale_fit prefers the planted model; random plants (nothing to
/// recover) count a hit when PC1 shows no ordering, |tau| < 0.5.
inline bool plant_recovered(PlantKind kind, double tau, const std::optional<ScaleFit>& fit) {
  switch (kind) {
    case PlantKind::Linear: return fit && fit->preferred == PreferredScale::Linear;
    case PlantKind::Log: return fit && fit->preferred == PreferredScale::Logarithmic;
    case PlantKind::Random: return std::abs(tau) < 0.5;
  }
  return false;
}

/// Runs `trials` plants per sigma (seeded base_spec.seed + trial index),
/// analyzes each through the standard pipeline and aggregates in trial order.
inline std::vector<SweepRow> power_sweep(PlantKind kind, const std::vector<double>& sigmas, std::size_t trials,
                                         const SynthSpec& base_spec, const AnalysisOptions& options = {}) {
  if (trials < 1) throw Error(ErrorCode::InvalidSpec, "trials must be >= 1");
  if (sigmas.empty()) throw Error(ErrorCode::InvalidSpec, "at least one sigma required");

  std::vector<SweepRow> out;
  for (double sigma : sigmas) {
    SweepRow row{sigma, 0.0, 0.0, trials};
    std::size_t hits = 0;
    double tau_sum = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      SynthSpec spec = base_spec;
      spec.kind = kind;
      spec.noise_sigma = sigma;
      spec.seed = base_spec.seed + t;
      const auto bundle = make_planted_bundle(spec);
      const auto report = analyze(bundle, {synth_token_set(spec)}, options);
      const auto& s = report.sets.front();
      const double tau = s.ordering ? s.ordering->kendall_tau : 0.0;
      tau_sum += std::abs(tau);
      if (plant_recovered(kind, tau, s.scale)) ++hits;
    }
    row.mean_abs_tau = tau_sum / static_cast<double>(trials);
    row.hit_rate = static_cast<double>(hits) / static_cast<double>(trials);
    out.push_back(row);
  }
  return out;
}

}  // namespace numeracy
