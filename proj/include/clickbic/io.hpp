#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clickbic/evolve.hpp"
#include "clickbic/greedy.hpp"
#include "clickbic/synth.hpp"
#include "clickbic/types.hpp"

namespace clickbic::io {

/// Whole file as text. gzip-compressed files are inflated transparently.
std::string read_text(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, std::string_view text);

/// Shortest decimal string that reads back to the same double.
std::string format_double(double v);

/// Numeric CSV: header row of page labels (first cell is a corner label),
/// then one row per user starting with the user label.
AccessMatrix parse_matrix_csv(std::string_view text);
std::string matrix_to_csv(const AccessMatrix& matrix);

/// {"rows":[...],"cols":[...],"acv":x,"volume":n} per bicluster, as a JSON array.
std::string biclusters_to_json(const AccessMatrix& matrix, std::span<const Bicluster> biclusters);

struct ScoredBicluster {
  Bicluster bicluster;
  double acv = 0.0;
  std::size_t volume = 0;
};
std::vector<ScoredBicluster> parse_biclusters_json(std::string_view text);

/// Matrix plus ground truth: {"rows":n,"cols":m,"row_labels":[...],
/// "col_labels":[...],"data":[[...],...],"truth":[bicluster...],"notes":[...]}.
std::string synthetic_to_json(const synth::SynthResult& data);

struct SyntheticInput {
  AccessMatrix matrix;
  std::vector<Bicluster> truth;
};
SyntheticInput parse_synthetic_json(std::string_view text);

/// stage,avg_acv,avg_volume
std::string stage_trace_to_csv(const greedy::StageTrace& trace);

/// generation,best_fitness,mean_fitness,best_acv,best_volume
std::string ga_history_to_csv(std::span<const evolve::GenerationRecord> history);

}  // namespace clickbic::io
