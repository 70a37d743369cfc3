#include "clickbic/greedy.hpp"

#include <algorithm>

#include "clickbic/metrics.hpp"

namespace clickbic::greedy {

std::string_view stage_name(Stage stage) noexcept {
  switch (stage) {
    case Stage::initial: return "initial";
    case Stage::column_insertion: return "column-insertion";
    case Stage::row_insertion: return "row-insertion";
    case Stage::column_deletion: return "column-deletion";
    case Stage::row_deletion: return "row-deletion";
  }
  return "unknown";
}

namespace {

std::vector<std::size_t> with(const std::vector<std::size_t>& set, std::size_t idx) {
  std::vector<std::size_t> out;
  out.reserve(set.size() + 1);
  auto pos = std::lower_bound(set.begin(), set.end(), idx);
  out.insert(out.end(), set.begin(), pos);
  out.push_back(idx);
  out.insert(out.end(), pos, set.end());
  return out;
}

std::vector<std::size_t> without(const std::vector<std::size_t>& set, std::size_t idx) {
  std::vector<std::size_t> out;
  out.reserve(set.size());
  for (auto v : set)
    if (v != idx) out.push_back(v);
  return out;
}

bool contains(const std::vector<std::size_t>& set, std::size_t idx) {
  return std::binary_search(set.begin(), set.end(), idx);
}

// Runs one stage to its fixpoint. Returns true if anything was accepted.
bool run_stage(const AccessMatrix& matrix, Bicluster& b, double& current, Stage stage,
               const GreedyConfig& cfg, const MoveObserver& observer) {
  const bool rows = stage == Stage::row_insertion || stage == Stage::row_deletion;
  const bool insert = stage == Stage::column_insertion || stage == Stage::row_insertion;
  const std::size_t extent = rows ? matrix.rows() : matrix.cols();
  bool any = false;
  for (;;) {
    bool changed = false;
    if (insert) {
      for (std::size_t idx = 0; idx < extent; ++idx) {
        auto& axis = rows ? b.rows : b.cols;
        if (contains(axis, idx)) continue;
        Bicluster cand = b;
        (rows ? cand.rows : cand.cols) = with(axis, idx);
        const double a = metrics::acv(matrix, cand);
        const bool accept = a > current || (cfg.accept_insertion_ties && a == current);
        if (!accept) continue;
        if (observer) observer({stage, rows, idx, current, a});
        b = std::move(cand);
        current = a;
        changed = true;
      }
    } else {
      const std::vector<std::size_t> members = rows ? b.rows : b.cols;
      for (auto idx : members) {
        auto& axis = rows ? b.rows : b.cols;
        if (axis.size() <= 2) break;
        Bicluster cand = b;
        (rows ? cand.rows : cand.cols) = without(axis, idx);
        const double a = metrics::acv(matrix, cand);
        if (!(a > current)) continue;
        if (observer) observer({stage, rows, idx, current, a});
        b = std::move(cand);
        current = a;
        changed = true;
      }
    }
    if (!changed) break;
    any = true;
  }
  return any;
}

void require_valid(const AccessMatrix& matrix, const Bicluster& b) {
  check_bounds(b, matrix.rows(), matrix.cols());
  if (!b.scorable()) throw Error("greedy growth needs a bicluster of at least 2x2");
}

}  // namespace

Bicluster enlarge(const AccessMatrix& matrix, Bicluster b, const GreedyConfig& cfg,
                  const MoveObserver& observer) {
  require_valid(matrix, b);
  double current = metrics::acv(matrix, b);
  run_stage(matrix, b, current, Stage::column_insertion, cfg, observer);
  run_stage(matrix, b, current, Stage::row_insertion, cfg, observer);
  return b;
}

Bicluster refine(const AccessMatrix& matrix, Bicluster b, const GreedyConfig& cfg,
                 const MoveObserver& observer) {
  require_valid(matrix, b);
  double current = metrics::acv(matrix, b);
  run_stage(matrix, b, current, Stage::column_deletion, cfg, observer);
  run_stage(matrix, b, current, Stage::row_deletion, cfg, observer);
  return b;
}

Bicluster grow(const AccessMatrix& matrix, Bicluster seed, const GreedyConfig& cfg,
               const MoveObserver& observer, StageSnapshot* snapshot) {
  require_valid(matrix, seed);
  double current = metrics::acv(matrix, seed);
  StageSnapshot snap;
  snap.acv[0] = current;
  snap.volume[0] = static_cast<double>(metrics::volume(seed));

  // ACV never decreases and deletions raise it strictly, so a state cannot
  // repeat and the loop ends.
  for (std::size_t round = 0;; ++round) {
    bool changed = false;
    for (std::size_t s = 1; s < kStages.size(); ++s) {
      changed |= run_stage(matrix, seed, current, kStages[s], cfg, observer);
      if (round == 0) {
        snap.acv[s] = current;
        snap.volume[s] = static_cast<double>(metrics::volume(seed));
      }
    }
    if (!changed || !cfg.converge) break;
  }
  snap.acv[4] = current;
  snap.volume[4] = static_cast<double>(metrics::volume(seed));
  if (snapshot) *snapshot = snap;
  return seed;
}

GrowResult grow_all(const AccessMatrix& matrix, std::span<const Bicluster> seeds,
                    const GreedyConfig& cfg) {
  if (seeds.empty()) throw Error("grow_all needs at least one seed");
  GrowResult res;
  res.biclusters.resize(seeds.size());
  std::vector<StageSnapshot> snaps(seeds.size());
  const auto count = static_cast<std::ptrdiff_t>(seeds.size());
  for (const auto& s : seeds) require_valid(matrix, s);

#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < count; ++k)
    res.biclusters[k] = grow(matrix, seeds[k], cfg, {}, &snaps[k]);

  for (std::size_t s = 0; s < kStages.size(); ++s) {
    double acv_sum = 0.0, vol_sum = 0.0;
    for (const auto& snap : snaps) {
      acv_sum += snap.acv[s];
      vol_sum += snap.volume[s];
    }
    const double c = static_cast<double>(snaps.size());
    res.trace.push_back({kStages[s], acv_sum / c, vol_sum / c});
  }
  return res;
}

std::optional<Move> find_improving_move(const AccessMatrix& matrix, const Bicluster& b) {
  require_valid(matrix, b);
  const double current = metrics::acv(matrix, b);
  auto probe = [&](bool rows, bool insert) -> std::optional<Move> {
    const auto& axis = rows ? b.rows : b.cols;
    const std::size_t extent = rows ? matrix.rows() : matrix.cols();
    for (std::size_t idx = 0; idx < extent; ++idx) {
      if (contains(axis, idx) == insert) continue;
      if (!insert && axis.size() <= 2) break;
      Bicluster cand = b;
      (rows ? cand.rows : cand.cols) = insert ? with(axis, idx) : without(axis, idx);
      const double a = metrics::acv(matrix, cand);
      if (a > current) {
        const Stage st = insert ? (rows ? Stage::row_insertion : Stage::column_insertion)
                                : (rows ? Stage::row_deletion : Stage::column_deletion);
        return Move{st, rows, idx, current, a};
      }
    }
    return std::nullopt;
  };
  constexpr std::array<std::pair<bool, bool>, 4> order{
      {{false, true}, {true, true}, {false, false}, {true, false}}};
  for (auto [rows, insert] : order)
    if (auto mv = probe(rows, insert)) return mv;
  return std::nullopt;
}

}  // namespace clickbic::greedy
