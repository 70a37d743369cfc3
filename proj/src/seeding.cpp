#include "clickbic/seeding.hpp"

#include <algorithm>
#include <limits>

#include "clickbic/kernels.hpp"
#include "clickbic/random.hpp"

namespace clickbic::seeding {

namespace {

double squared_distance(const double* a, const double* b, std::size_t dim) noexcept {
  double d = 0.0;
  for (std::size_t t = 0; t < dim; ++t) {
    const double diff = a[t] - b[t];
    d += diff * diff;
  }
  return d;
}

// k-means++: first centre uniform, each next one drawn with probability
// proportional to squared distance from the nearest chosen centre.
std::vector<double> plus_plus_init(std::span<const double> points, std::size_t count,
                                   std::size_t dim, std::size_t k, Rng& rng) {
  std::vector<double> centroids(k * dim);
  std::vector<double> nearest(count, std::numeric_limits<double>::infinity());
  std::size_t pick = uniform_below(rng, count);
  for (std::size_t c = 0; c < k; ++c) {
    if (c > 0) {
      double total = 0.0;
      for (double d : nearest) total += d;
      if (total > 0.0) {
        double target = uniform01(rng) * total;
        pick = count - 1;
        for (std::size_t i = 0; i < count; ++i) {
          target -= nearest[i];
          if (target < 0.0 && nearest[i] > 0.0) {
            pick = i;
            break;
          }
        }
        while (nearest[pick] == 0.0) --pick;  // rounding left target at the tail
      } else {
        pick = uniform_below(rng, count);
      }
    }
    std::copy_n(points.data() + pick * dim, dim, centroids.data() + c * dim);
    for (std::size_t i = 0; i < count; ++i)
      nearest[i] = std::min(nearest[i], squared_distance(points.data() + i * dim,
                                                         centroids.data() + c * dim, dim));
  }
  return centroids;
}

KMeansResult lloyd(std::span<const double> points, std::size_t count, std::size_t dim,
                   std::size_t k, std::size_t max_iterations, Rng& rng) {
  KMeansResult res;
  res.centroids = plus_plus_init(points, count, dim, k, rng);
  res.labels.assign(count, std::numeric_limits<std::uint32_t>::max());
  std::vector<std::uint32_t> labels(count);
  std::vector<double> dist(count);
  std::vector<std::size_t> sizes(k);

  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    kernels::assign_nearest(points, count, dim, res.centroids, k, labels, dist);

    // An emptied cluster takes over the point lying farthest from its centre.
    std::fill(sizes.begin(), sizes.end(), 0);
    for (auto l : labels) ++sizes[l];
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] > 0) continue;
      std::size_t far = count;
      for (std::size_t i = 0; i < count; ++i)
        if (sizes[labels[i]] > 1 && (far == count || dist[i] > dist[far])) far = i;
      if (far == count) break;  // no donor left
      --sizes[labels[far]];
      labels[far] = static_cast<std::uint32_t>(c);
      dist[far] = 0.0;
      sizes[c] = 1;
    }

    const bool changed = labels != res.labels;
    res.labels = labels;

    std::fill(res.centroids.begin(), res.centroids.end(), 0.0);
    for (std::size_t i = 0; i < count; ++i) {
      double* ctr = res.centroids.data() + labels[i] * dim;
      const double* p = points.data() + i * dim;
      for (std::size_t t = 0; t < dim; ++t) ctr[t] += p[t];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] == 0) continue;
      const double inv = 1.0 / static_cast<double>(sizes[c]);
      for (std::size_t t = 0; t < dim; ++t) res.centroids[c * dim + t] *= inv;
    }
    if (!changed) break;
  }
  res.inertia = inertia(points, count, dim, res.labels, k);
  return res;
}

}  // namespace

double inertia(std::span<const double> points, std::size_t count, std::size_t dim,
               std::span<const std::uint32_t> labels, std::size_t k) {
  std::vector<double> centroids(k * dim, 0.0);
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t i = 0; i < count; ++i) {
    ++sizes[labels[i]];
    for (std::size_t t = 0; t < dim; ++t) centroids[labels[i] * dim + t] += points[i * dim + t];
  }
  for (std::size_t c = 0; c < k; ++c)
    if (sizes[c] > 0)
      for (std::size_t t = 0; t < dim; ++t) centroids[c * dim + t] /= static_cast<double>(sizes[c]);
  double total = 0.0;
  for (std::size_t i = 0; i < count; ++i)
    total += squared_distance(points.data() + i * dim, centroids.data() + labels[i] * dim, dim);
  return total;
}

KMeansResult kmeans(std::span<const double> points, std::size_t count, std::size_t dim,
                    std::size_t k, const KMeansConfig& cfg) {
  if (k == 0) throw Error("kmeans: k must be at least 1");
  if (k > count) throw Error("kmeans: k exceeds the number of points");
  if (points.size() != count * dim) throw Error("kmeans: point buffer does not match count x dim");
  if (cfg.max_iterations == 0) throw Error("kmeans: max_iterations must be at least 1");
  const std::size_t restarts = std::max<std::size_t>(cfg.restarts, 1);

  std::vector<KMeansResult> runs(restarts);
  const auto nr = static_cast<std::ptrdiff_t>(restarts);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t r = 0; r < nr; ++r) {
    Rng rng(derive_seed(cfg.seed, {static_cast<std::uint32_t>(r)}));
    runs[r] = lloyd(points, count, dim, k, cfg.max_iterations, rng);
    runs[r].restart = static_cast<std::size_t>(r);
  }

  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r)
    if (runs[r].inertia < runs[best].inertia) best = r;
  return std::move(runs[best]);
}

std::vector<Bicluster> form_seeds(std::span<const std::uint32_t> user_labels, std::size_t k_users,
                                  std::span<const std::uint32_t> page_labels,
                                  std::size_t k_pages) {
  std::vector<std::vector<std::size_t>> users(k_users), pages(k_pages);
  for (std::size_t i = 0; i < user_labels.size(); ++i) {
    if (user_labels[i] >= k_users) throw Error("form_seeds: user label out of range");
    users[user_labels[i]].push_back(i);
  }
  for (std::size_t j = 0; j < page_labels.size(); ++j) {
    if (page_labels[j] >= k_pages) throw Error("form_seeds: page label out of range");
    pages[page_labels[j]].push_back(j);
  }
  std::vector<Bicluster> seeds;
  for (const auto& u : users)
    for (const auto& p : pages)
      if (u.size() >= 2 && p.size() >= 2) seeds.push_back({u, p});
  return seeds;
}

SeedingResult form_seeds(const AccessMatrix& matrix, const SeedingConfig& cfg) {
  const std::size_t n = matrix.rows();
  const std::size_t m = matrix.cols();
  if (cfg.k_users < 1 || cfg.k_users > n) throw Error("k_users must lie in [1, rows]");
  if (cfg.k_pages < 1 || cfg.k_pages > m) throw Error("k_pages must lie in [1, cols]");

  std::vector<double> rows(matrix.values().begin(), matrix.values().end());
  if (cfg.normalize_rows) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < m; ++j) s += rows[i * m + j];
      if (s > 0.0)
        for (std::size_t j = 0; j < m; ++j) rows[i * m + j] /= s;
    }
  }
  const std::vector<double> cols = matrix.transposed();

  KMeansConfig user_cfg = cfg.kmeans;
  user_cfg.seed = derive_seed(cfg.kmeans.seed, {0});
  KMeansConfig page_cfg = cfg.kmeans;
  page_cfg.seed = derive_seed(cfg.kmeans.seed, {1});

  SeedingResult res;
  res.users = kmeans(rows, n, m, cfg.k_users, user_cfg);
  res.pages = kmeans(cols, m, n, cfg.k_pages, page_cfg);
  res.seeds = form_seeds(res.users.labels, cfg.k_users, res.pages.labels, cfg.k_pages);
  return res;
}

}  // namespace clickbic::seeding
