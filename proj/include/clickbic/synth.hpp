#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clickbic/types.hpp"

namespace clickbic::synth {

enum class Coherence {
  shift,        // row_i = base + beta_i
  scale,        // row_i = alpha_i * base, alpha_i > 0
  shift_scale,  // row_i = alpha_i * base + beta_i
};

std::string_view coherence_name(Coherence c) noexcept;
Coherence parse_coherence(std::string_view name);

struct ImplantSpec {
  std::size_t rows = 2;
  std::size_t cols = 2;
  Coherence model = Coherence::shift;
  double base_min = 10.0;
  double base_max = 50.0;
  // Draw scale factors from {1, 2, 3} instead of [0.5, 2]. Integer factors
  // keep scaled counts exact, so the block survives rounding with ACV 1.
  bool integer_scale = false;
  // Top-left corner of the block; unset places it just past the previous
  // implant along the diagonal.
  std::optional<std::size_t> row_offset;
  std::optional<std::size_t> col_offset;
};

struct SynthConfig {
  std::size_t rows = 200;
  std::size_t cols = 30;
  double noise_min = 0.0;  // background entries are uniform integers in [min, max]
  double noise_max = 5.0;
  std::vector<ImplantSpec> implants;
  std::uint64_t seed = 1;
};

struct SynthResult {
  AccessMatrix matrix;      // rounded to nonnegative integers
  AccessMatrix real;        // model values before rounding
  std::vector<Bicluster> truth;  // one per implant, same order
  std::vector<std::string> notes;  // e.g. cells where a later implant overwrote an earlier one
};

/// Noise background with coherent blocks written over it. Deterministic in
/// the seed. Shift offsets are integers, so shift blocks survive rounding
/// exactly; scale factors are drawn from [0.5, 2] unless integer_scale is set.
SynthResult generate(const SynthConfig& cfg);

/// Intersection over union of the cell sets I x J. Two empty biclusters give 0.
double jaccard(const Bicluster& a, const Bicluster& b);

struct Recovery {
  std::vector<double> best;  // per truth bicluster, max Jaccard over found
  double mean = 0.0;
};

Recovery score_recovery(std::span<const Bicluster> found, std::span<const Bicluster> truth);

}  // namespace clickbic::synth
