#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "clickbic/types.hpp"

namespace clickbic::greedy {

enum class Stage { initial, column_insertion, row_insertion, column_deletion, row_deletion };

inline constexpr std::array<Stage, 5> kStages{Stage::initial, Stage::column_insertion,
                                              Stage::row_insertion, Stage::column_deletion,
                                              Stage::row_deletion};

std::string_view stage_name(Stage stage) noexcept;

/// One accepted single-element move.
struct Move {
  Stage stage = Stage::initial;
  bool row = false;  // row (user) or column (page)
  std::size_t index = 0;
  double acv_before = 0.0;
  double acv_after = 0.0;
};

using MoveObserver = std::function<void(const Move&)>;

struct GreedyConfig {
  /// Repeat the four stages until a full round changes nothing, which makes
  /// the output single-move locally optimal. When false each stage runs once.
  bool converge = true;
  /// Also accept insertions that leave ACV exactly unchanged. A perfectly
  /// coherent fragment already sits at ACV 1 and can only grow this way.
  /// Deletions always need a strict increase.
  bool accept_insertion_ties = false;
};

/// Column-insertion stage followed by the row-insertion stage. Each stage
/// sweeps absent indices in ascending order, accepting any insertion that
/// raises ACV, until a sweep accepts nothing. Requires a 2x2 or larger input.
Bicluster enlarge(const AccessMatrix& matrix, Bicluster b, const GreedyConfig& cfg = {},
                  const MoveObserver& observer = {});

/// Column-deletion stage followed by the row-deletion stage, same discipline.
/// Never shrinks an axis below two members.
Bicluster refine(const AccessMatrix& matrix, Bicluster b, const GreedyConfig& cfg = {},
                 const MoveObserver& observer = {});

/// ACV and volume of a bicluster after each stage.
struct StageSnapshot {
  std::array<double, 5> acv{};
  std::array<double, 5> volume{};
};

/// enlarge then refine, repeated per `cfg.converge`. The snapshot holds the
/// first round's stage states, except the row-deletion slot, which holds the
/// final output.
Bicluster grow(const AccessMatrix& matrix, Bicluster seed, const GreedyConfig& cfg = {},
               const MoveObserver& observer = {}, StageSnapshot* snapshot = nullptr);

struct StageRecord {
  Stage stage = Stage::initial;
  double avg_acv = 0.0;
  double avg_volume = 0.0;
};

using StageTrace = std::vector<StageRecord>;

struct GrowResult {
  std::vector<Bicluster> biclusters;  // same order as the seeds
  StageTrace trace;                   // five records, in kStages order
};

/// Grows every seed independently (in parallel); averages per stage.
GrowResult grow_all(const AccessMatrix& matrix, std::span<const Bicluster> seeds,
                    const GreedyConfig& cfg = {});

/// The first single-element insertion or validity-preserving deletion that
/// strictly increases ACV, scanning columns before rows and ascending
/// indices; nullopt when the bicluster is locally optimal.
std::optional<Move> find_improving_move(const AccessMatrix& matrix, const Bicluster& b);

}  // namespace clickbic::greedy
