#include "clickbic/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace clickbic::kernels {

namespace {

// Deviations this small relative to the largest magnitude are rounding noise
// from the mean, not variance.
constexpr double kFlatTolerance = 1e-12;

// Correlations this close to +-1 are rounding noise around an exact linear
// relation and are reported as exactly 1 in magnitude.
constexpr double kUnitSnap = 1e-12;

// Below this many multiply-adds a parallel region costs more than it saves.
constexpr std::size_t kParallelWork = std::size_t{1} << 15;

bool flat(std::span<const double> x, double mean) noexcept {
  double max_abs = 0.0;
  double max_dev = 0.0;
  for (double v : x) {
    max_abs = std::max(max_abs, std::abs(v));
    max_dev = std::max(max_dev, std::abs(v - mean));
  }
  return max_dev <= kFlatTolerance * max_abs;
}

double mean_of(std::span<const double> x) noexcept {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

// Centres `x` and scales it to unit norm in place; flat vectors become zero.
void standardize(std::span<double> x) noexcept {
  const double mean = mean_of(x);
  if (flat(x, mean)) {
    std::fill(x.begin(), x.end(), 0.0);
    return;
  }
  double ss = 0.0;
  for (double& v : x) {
    v -= mean;
    ss += v * v;
  }
  const double inv = 1.0 / std::sqrt(ss);
  for (double& v : x) v *= inv;
}

double abs_corr(double r) noexcept {
  const double a = std::abs(r);
  return a >= 1.0 - kUnitSnap ? 1.0 : a;
}

}  // namespace

void gather(const AccessMatrix& matrix, const Bicluster& b, std::vector<double>& out) {
  const std::size_t nr = b.rows.size();
  const std::size_t nc = b.cols.size();
  out.resize(nr * nc);
  for (std::size_t a = 0; a < nr; ++a) {
    auto row = matrix.row(b.rows[a]);
    double* dst = out.data() + a * nc;
    for (std::size_t c = 0; c < nc; ++c) dst[c] = row[b.cols[c]];
  }
}

void gather_transposed(const AccessMatrix& matrix, const Bicluster& b, std::vector<double>& out) {
  const std::size_t nr = b.rows.size();
  const std::size_t nc = b.cols.size();
  out.resize(nr * nc);
  for (std::size_t a = 0; a < nr; ++a) {
    auto row = matrix.row(b.rows[a]);
    for (std::size_t c = 0; c < nc; ++c) out[c * nr + a] = row[b.cols[c]];
  }
}

double pearson_two_pass(std::span<const double> x, std::span<const double> y) noexcept {
  const double mx = mean_of(x);
  const double my = mean_of(y);
  if (flat(x, mx) || flat(y, my)) return 0.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = x[k] - mx;
    const double dy = y[k] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  const double r = sxy / std::sqrt(sxx * syy);
  return std::copysign(abs_corr(r), r);
}

double mean_abs_correlation(std::span<const double> data, std::size_t count, std::size_t len) {
  std::vector<double> z(data.begin(), data.begin() + static_cast<std::ptrdiff_t>(count * len));
  std::vector<double> partial(count, 0.0);
  const bool parallel = count * count * len >= kParallelWork;
  const auto n = static_cast<std::ptrdiff_t>(count);

#pragma omp parallel if (parallel)
  {
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
      standardize(std::span<double>(z.data() + i * len, len));

#pragma omp for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const double* zi = z.data() + i * len;
      double acc = 0.0;
      for (std::ptrdiff_t j = i + 1; j < n; ++j) {
        const double* zj = z.data() + j * len;
        double dot = 0.0;
        for (std::size_t k = 0; k < len; ++k) dot += zi[k] * zj[k];
        acc += abs_corr(dot);
      }
      partial[i] = acc;
    }
  }

  double total = 0.0;
  for (double p : partial) total += p;
  const double c = static_cast<double>(count);
  return 2.0 * total / (c * c - c);
}

void assign_nearest(std::span<const double> points, std::size_t count, std::size_t dim,
                    std::span<const double> centroids, std::size_t k,
                    std::span<std::uint32_t> labels, std::span<double> distances) {
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(static) if (count * k * dim >= kParallelWork)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double* p = points.data() + i * dim;
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t best_c = 0;
    for (std::size_t c = 0; c < k; ++c) {
      const double* q = centroids.data() + c * dim;
      double d = 0.0;
      for (std::size_t t = 0; t < dim; ++t) {
        const double diff = p[t] - q[t];
        d += diff * diff;
      }
      if (d < best) {
        best = d;
        best_c = static_cast<std::uint32_t>(c);
      }
    }
    labels[i] = best_c;
    distances[i] = best;
  }
}

namespace reference {

double mean_abs_correlation(std::span<const double> data, std::size_t count, std::size_t len) {
  double total = 0.0;
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j) {
      if (i == j) continue;
      total += std::abs(pearson_two_pass(data.subspan(i * len, len), data.subspan(j * len, len)));
    }
  const double c = static_cast<double>(count);
  return total / (c * c - c);
}

void assign_nearest(std::span<const double> points, std::size_t count, std::size_t dim,
                    std::span<const double> centroids, std::size_t k,
                    std::span<std::uint32_t> labels, std::span<double> distances) {
  for (std::size_t i = 0; i < count; ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t best_c = 0;
    for (std::size_t c = 0; c < k; ++c) {
      double d = 0.0;
      for (std::size_t t = 0; t < dim; ++t) {
        const double diff = points[i * dim + t] - centroids[c * dim + t];
        d += diff * diff;
      }
      if (d < best) {
        best = d;
        best_c = static_cast<std::uint32_t>(c);
      }
    }
    labels[i] = best_c;
    distances[i] = best;
  }
}

}  // namespace reference

}  // namespace clickbic::kernels
