#include "clickbic/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "clickbic/random.hpp"

namespace clickbic::synth {

std::string_view coherence_name(Coherence c) noexcept {
  switch (c) {
    case Coherence::shift: return "shift";
    case Coherence::scale: return "scale";
    case Coherence::shift_scale: return "shift-scale";
  }
  return "unknown";
}

Coherence parse_coherence(std::string_view name) {
  if (name == "shift") return Coherence::shift;
  if (name == "scale") return Coherence::scale;
  if (name == "shift-scale") return Coherence::shift_scale;
  throw Error("unknown coherence model '" + std::string(name) + "'");
}

namespace {

double uniform_int(Rng& rng, double lo, double hi) {
  const auto a = static_cast<std::int64_t>(std::ceil(lo));
  const auto b = static_cast<std::int64_t>(std::floor(hi));
  if (b < a) return static_cast<double>(a);
  return static_cast<double>(a + static_cast<std::int64_t>(uniform_below(rng, b - a + 1)));
}

double uniform_real(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

}  // namespace

SynthResult generate(const SynthConfig& cfg) {
  if (cfg.rows < 2 || cfg.cols < 2) throw Error("synthetic matrix needs at least 2x2");
  if (cfg.noise_min < 0.0 || cfg.noise_max < cfg.noise_min)
    throw Error("noise range must satisfy 0 <= min <= max");

  Rng rng(cfg.seed);
  const std::size_t n = cfg.rows, m = cfg.cols;
  std::vector<double> values(n * m);
  for (auto& v : values) v = uniform_int(rng, cfg.noise_min, cfg.noise_max);
  std::vector<int> owner(n * m, -1);

  SynthResult res;
  std::size_t next_row = 0, next_col = 0;
  for (std::size_t k = 0; k < cfg.implants.size(); ++k) {
    const auto& imp = cfg.implants[k];
    if (imp.rows < 2 || imp.cols < 2) throw Error("implants must be at least 2x2");
    if (imp.base_min < 0.0 || imp.base_max <= imp.base_min)
      throw Error("implant base range must satisfy 0 <= min < max");
    const std::size_t r0 = imp.row_offset.value_or(next_row);
    const std::size_t c0 = imp.col_offset.value_or(next_col);
    if (r0 + imp.rows > n || c0 + imp.cols > m)
      throw Error("implant " + std::to_string(k) + " does not fit inside the matrix");
    next_row = r0 + imp.rows;
    next_col = c0 + imp.cols;

    std::vector<double> base(imp.cols);
    do {
      for (auto& b : base) b = uniform_int(rng, imp.base_min, imp.base_max);
    } while (std::all_of(base.begin(), base.end(), [&](double v) { return v == base[0]; }));

    std::map<int, std::size_t> overwritten;
    const double spread = std::floor((imp.base_max - imp.base_min) / 2.0);
    Bicluster truth;
    for (std::size_t a = 0; a < imp.rows; ++a) {
      const bool scaled = imp.model != Coherence::shift;
      const bool shifted = imp.model != Coherence::scale;
      double alpha = 1.0;
      if (scaled)
        alpha = imp.integer_scale ? uniform_int(rng, 1.0, 3.0) : uniform_real(rng, 0.5, 2.0);
      const double beta = shifted ? uniform_int(rng, 0.0, spread) : 0.0;
      const std::size_t i = r0 + a;
      for (std::size_t c = 0; c < imp.cols; ++c) {
        const std::size_t cell = i * m + c0 + c;
        if (owner[cell] >= 0) ++overwritten[owner[cell]];
        owner[cell] = static_cast<int>(k);
        values[cell] = alpha * base[c] + beta;
      }
      truth.rows.push_back(i);
    }
    for (std::size_t c = 0; c < imp.cols; ++c) truth.cols.push_back(c0 + c);
    for (auto [prev, cells] : overwritten)
      res.notes.push_back("implant " + std::to_string(k) + " overwrites " + std::to_string(cells) +
                          " cells of implant " + std::to_string(prev));
    res.truth.push_back(std::move(truth));
  }

  std::vector<std::string> row_labels, col_labels;
  for (std::size_t i = 0; i < n; ++i) row_labels.push_back("u" + std::to_string(i));
  for (std::size_t j = 0; j < m; ++j) col_labels.push_back("p" + std::to_string(j));
  std::vector<double> rounded(values.size());
  std::transform(values.begin(), values.end(), rounded.begin(),
                 [](double v) { return std::max(0.0, std::round(v)); });
  res.real = AccessMatrix(n, m, std::move(values), row_labels, col_labels);
  res.matrix = AccessMatrix(n, m, std::move(rounded), std::move(row_labels), std::move(col_labels));
  return res;
}

namespace {
std::size_t intersection_size(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::size_t count = 0;
  auto x = a.begin(), y = b.begin();
  while (x != a.end() && y != b.end()) {
    if (*x < *y) {
      ++x;
    } else if (*y < *x) {
      ++y;
    } else {
      ++count;
      ++x;
      ++y;
    }
  }
  return count;
}
}  // namespace

double jaccard(const Bicluster& a, const Bicluster& b) {
  const std::size_t inter = intersection_size(a.rows, b.rows) * intersection_size(a.cols, b.cols);
  const std::size_t uni = a.rows.size() * a.cols.size() + b.rows.size() * b.cols.size() - inter;
  if (uni == 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

Recovery score_recovery(std::span<const Bicluster> found, std::span<const Bicluster> truth) {
  Recovery rec;
  for (const auto& t : truth) {
    double best = 0.0;
    for (const auto& f : found) best = std::max(best, jaccard(f, t));
    rec.best.push_back(best);
  }
  if (!rec.best.empty()) {
    double s = 0.0;
    for (double v : rec.best) s += v;
    rec.mean = s / static_cast<double>(rec.best.size());
  }
  return rec;
}

}  // namespace clickbic::synth
