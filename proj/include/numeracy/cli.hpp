#pragma once

// Command-line front end. `run_cli` is a plain function over argv and two
// streams so tests can drive it in-process.
//
// Exit status: 0 success, 1 validation or usage error, 2 I/O error.

#include <filesystem>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "numeracy/analysis.hpp"
#include "numeracy/bundle.hpp"
#include "numeracy/error.hpp"
#include "numeracy/probesets.hpp"
#include "numeracy/report_json.hpp"
#include "numeracy/svg.hpp"
#include "numeracy/sweep.hpp"
#include "numeracy/synth.hpp"

namespace numeracy {

inline constexpr const char* kSynthSetFile = "probe_set.csv";

namespace detail {

inline TokenSet load_custom_set(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw Error(ErrorCode::MissingFile, path.string() + " not found");
  }
  return parse_custom_set(read_file(path), path.stem().string());
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Probe how token embeddings encode numbers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  // info
  std::string info_dir;
  auto* info = app.add_subcommand("info", "Print bundle metadata");
  info->add_option("bundle", info_dir, "Bundle directory")->required();

  // analyze
  std::string an_bundle, an_custom, an_out, an_svg;
  std::vector<std::string> an_sets;
  AnalysisOptions an_opts;
  bool an_unit_norm = false, an_allow_missing = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "Joint PCA and metrics for probe sets on one bundle");
  analyze_cmd->add_option("--bundle", an_bundle, "Bundle directory")->required();
  analyze_cmd->add_option("--sets", an_sets, "Built-in set names")->delimiter(',');
  analyze_cmd->add_option("--custom-set", an_custom, "Custom set file (surface,value[,label])");
  analyze_cmd->add_option("--k", an_opts.k, "Number of principal components")->capture_default_str();
  analyze_cmd->add_flag("--unit-norm", an_unit_norm, "Scale vectors to unit length before PCA");
  analyze_cmd->add_flag("--allow-missing", an_allow_missing, "Skip tokens absent from the vocabulary");
  analyze_cmd->add_option("--out", an_out, "Report path (JSON)")->required();
  analyze_cmd->add_option("--svg", an_svg, "Scatter plot path (SVG)");

  // compare
  std::vector<std::string> cmp_bundles;
  std::string cmp_set, cmp_custom, cmp_out, cmp_svg;
  bool cmp_unit_norm = false, cmp_allow_missing = false;
  auto* compare_cmd = app.add_subcommand("compare", "Aligned PC1 strips of one set across bundles");
  compare_cmd->add_option("--bundles", cmp_bundles, "Bundle directories")->delimiter(',')->required();
  compare_cmd->add_option("--set", cmp_set, "Built-in set name");
  compare_cmd->add_option("--custom-set", cmp_custom, "Custom set file");
  compare_cmd->add_flag("--unit-norm", cmp_unit_norm, "Scale vectors to unit length before PCA");
  compare_cmd->add_flag("--allow-missing", cmp_allow_missing, "Skip tokens absent from every bundle");
  compare_cmd->add_option("--out", cmp_out, "Strip layout path (JSON)")->required();
  compare_cmd->add_option("--svg", cmp_svg, "Strip chart path (SVG)");

  // synth
  std::string syn_kind, syn_out;
  SynthSpec syn_spec;
  auto* synth_cmd = app.add_subcommand("synth", "Write a bundle with planted structure");
  synth_cmd->add_option("--kind", syn_kind, "linear | log | random")->required();
  synth_cmd->add_option("--n", syn_spec.n_tokens, "Number of tokens")->required();
  synth_cmd->add_option("--dim", syn_spec.dim, "Embedding width")->required();
  synth_cmd->add_option("--noise", syn_spec.noise_sigma, "Noise scale relative to the planted direction")->required();
  synth_cmd->add_option("--seed", syn_spec.seed, "PRNG seed")->required();
  synth_cmd->add_option("--out", syn_out, "Output bundle directory")->required();

  // sweep
  std::string sw_kind, sw_out;
  std::vector<double> sw_sigmas;
  std::size_t sw_trials = 0;
  SynthSpec sw_spec;
  auto* sweep_cmd = app.add_subcommand("sweep", "Recovery rate of planted structure versus noise");
  sweep_cmd->add_option("--kind", sw_kind, "linear | log | random")->required();
  sweep_cmd->add_option("--sigmas", sw_sigmas, "Noise levels")->delimiter(',')->required();
  sweep_cmd->add_option("--trials", sw_trials, "Trials per noise level")->required();
  sweep_cmd->add_option("--n", sw_spec.n_tokens, "Number of tokens")->capture_default_str();
  sweep_cmd->add_option("--dim", sw_spec.dim, "Embedding width")->capture_default_str();
  sweep_cmd->add_option("--seed", sw_spec.seed, "Base seed")->capture_default_str();
  sweep_cmd->add_option("--out", sw_out, "Result path (JSON); stdout when omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*info) {
      const auto b = load_bundle(info_dir);
      out << "model: " << b.model_name() << "\n"
          << "vocab_size: " << b.vocab_size() << "\n"
          << "dim: " << b.dim() << "\n";
      return 0;
    }

    if (*analyze_cmd) {
      std::vector<TokenSet> sets;
      for (const auto& name : an_sets) sets.push_back(builtin_set(name));
      if (!an_custom.empty()) sets.push_back(detail::load_custom_set(an_custom));
      if (sets.empty()) throw Error(ErrorCode::InvalidArgument, "give --sets and/or --custom-set");
      an_opts.unit_norm = an_unit_norm;
      an_opts.policy.allow_missing = an_allow_missing;

      const auto bundle = load_bundle(an_bundle);
      const auto report = analyze(bundle, sets, an_opts);
      write_text_file(an_out, canonical_dump(to_json(report)));
      if (!an_svg.empty()) {
        if (report.sets.size() > 2) throw Error(ErrorCode::InvalidArgument, "--svg plots at most two sets");
        std::vector<Projection> projections;
        ScatterStyle style;
        style.title = report.model_name;
        for (const auto& s : report.sets) {
          projections.push_back(s.projection);
          style.series_names.push_back(s.name);
        }
        const std::array<double, 2> shares{report.pca.explained_ratio(0),
                                           report.pca.k() > 1 ? report.pca.explained_ratio(1) : 0.0};
        write_text_file(an_svg, render_scatter(projections, shares, style));
      }
      return 0;
    }

    if (*compare_cmd) {
      if (cmp_set.empty() == cmp_custom.empty()) {
        throw Error(ErrorCode::InvalidArgument, "give exactly one of --set or --custom-set");
      }
      const auto set = cmp_custom.empty() ? builtin_set(cmp_set) : detail::load_custom_set(cmp_custom);
      AnalysisOptions opts;
      opts.unit_norm = cmp_unit_norm;
      opts.policy.allow_missing = cmp_allow_missing;
      std::vector<EmbeddingBundle> bundles;
      for (const auto& dir : cmp_bundles) bundles.push_back(load_bundle(dir));
      const auto layout = compare(bundles, set, opts);
      write_text_file(cmp_out, canonical_dump(to_json(layout)));
      if (!cmp_svg.empty()) write_text_file(cmp_svg, render_strips(layout));
      return 0;
    }

    if (*synth_cmd) {
      const auto kind = parse_plant_kind(syn_kind);
      if (!kind) throw Error(ErrorCode::InvalidSpec, "unknown kind '" + syn_kind + "'");
      syn_spec.kind = *kind;
      const auto bundle = make_planted_bundle(syn_spec);
      write_bundle(bundle, syn_out);
      write_text_file(std::filesystem::path(syn_out) / kSynthSetFile, format_custom_set(synth_token_set(syn_spec)));
      out << "wrote " << bundle.model_name() << " to " << syn_out << "\n";
      return 0;
    }

    if (*sweep_cmd) {
      const auto kind = parse_plant_kind(sw_kind);
      if (!kind) throw Error(ErrorCode::InvalidSpec, "unknown kind '" + sw_kind + "'");
      const auto rows = power_sweep(*kind, sw_sigmas, sw_trials, sw_spec);
      ordered_json j;
      j["kind"] = sw_kind;
      j["n"] = sw_spec.n_tokens;
      j["dim"] = sw_spec.dim;
      j["seed"] = sw_spec.seed;
      j["trials"] = sw_trials;
      ordered_json table = ordered_json::array();
      for (const auto& r : rows) {
        ordered_json row;
        row["sigma"] = r.sigma;
        row["mean_abs_tau"] = r.mean_abs_tau;
        row["hit_rate"] = r.hit_rate;
        table.push_back(row);
      }
      j["rows"] = table;
      if (sw_out.empty()) {
        out << canonical_dump(j);
      } else {
        write_text_file(sw_out, canonical_dump(j));
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_io_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace numeracy
