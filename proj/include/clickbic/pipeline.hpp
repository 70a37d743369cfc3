#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clickbic/evolve.hpp"
#include "clickbic/greedy.hpp"
#include "clickbic/metrics.hpp"
#include "clickbic/seeding.hpp"
#include "clickbic/synth.hpp"
#include "clickbic/types.hpp"

namespace clickbic::pipeline {

enum class InputFormat { msnbc, matrix_csv, synthetic_json };

std::string_view format_name(InputFormat f) noexcept;
InputFormat parse_format(std::string_view name);

struct PipelineConfig {
  std::filesystem::path input;
  InputFormat format = InputFormat::msnbc;
  std::size_t min_len = 5;   // msnbc only
  std::size_t max_len = 15;  // msnbc only
  seeding::SeedingConfig seeding;
  bool run_greedy = true;
  // Tie-accepting insertions let coherent K-means fragments grow to full blocks.
  greedy::GreedyConfig greedy{.converge = true, .accept_insertion_ties = true};
  evolve::GaConfig ga;
  std::filesystem::path out_dir = "clickbic-out";
  /// Single source of randomness; per-stage seeds are derived from it.
  std::uint64_t seed = 1;

  void validate() const;
};

/// Averages over a set of biclusters, one row of the method comparison.
struct StageSummary {
  std::string method;
  std::size_t count = 0;
  double avg_volume = 0.0;
  double avg_acv = 0.0;
  double overlap = 0.0;            // clamped R, 0 when fewer than 2 biclusters
  double overlap_unclamped = 0.0;
};

struct InputSummary {
  std::size_t sessions_read = 0;     // msnbc only
  std::size_t sessions_kept = 0;     // msnbc only
  double mean_length_all = 0.0;      // msnbc only
  double mean_length_kept = 0.0;     // msnbc only
  std::size_t rows = 0;
  std::size_t cols = 0;
};

struct RunReport {
  InputSummary input;
  std::uint64_t seeding_seed = 0;
  std::uint64_t ga_seed = 0;

  std::vector<Bicluster> seeds;
  StageSummary seed_summary;
  std::vector<Bicluster> grown;  // equals seeds when greedy is skipped
  greedy::StageTrace trace;      // empty when greedy is skipped
  StageSummary greedy_summary;

  evolve::GaResult ga;
  std::vector<Bicluster> final_biclusters;  // distinct nonzero-fitness members of the last generation
  StageSummary ga_summary;
  double population_mean_volume = 0.0;  // over all final members, fit or not
  double population_mean_acv = 0.0;
  metrics::Coverage coverage;

  std::vector<Bicluster> truth;  // synthetic input only
  std::optional<synth::Recovery> seed_recovery, greedy_recovery, ga_recovery;
  // Over everything the run reports: grown biclusters plus the final GA set.
  std::optional<synth::Recovery> reported_recovery;
};

struct LoadedInput {
  AccessMatrix matrix;
  InputSummary summary;
  std::vector<Bicluster> truth;
};

LoadedInput load_input(const PipelineConfig& cfg);

/// Seeds, greedy growth and GA on an already loaded matrix.
RunReport analyze(const AccessMatrix& matrix, const PipelineConfig& cfg);

StageSummary summarize(std::string method, const AccessMatrix& matrix,
                       std::span<const Bicluster> biclusters);

/// Full run: load, analyze, write every report into cfg.out_dir.
RunReport run_pipeline(const PipelineConfig& cfg);

/// Seeds-only, post-greedy and post-GA rows.
std::vector<StageSummary> compare_methods(const PipelineConfig& cfg);
std::vector<StageSummary> comparison_rows(const RunReport& report);

std::string comparison_to_csv(const std::vector<StageSummary>& rows);
std::string summary_text(const RunReport& report, const PipelineConfig& cfg);

/// Writes seeds.json, greedy.json, final.json, stage_trace.csv,
/// ga_history.csv, comparison.csv, summary.txt and, for synthetic input,
/// recovery.csv.
void write_reports(const RunReport& report, const AccessMatrix& matrix,
                   const PipelineConfig& cfg);

}  // namespace clickbic::pipeline
