#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "clickbic/types.hpp"

namespace clickbic::seeding {

struct KMeansConfig {
  std::size_t max_iterations = 100;
  std::size_t restarts = 5;
  std::uint64_t seed = 1;
};

struct KMeansResult {
  std::vector<std::uint32_t> labels;  // point index -> cluster id in [0, k)
  std::vector<double> centroids;      // k x dim, row-major
  double inertia = 0.0;               // within-cluster sum of squared distances
  std::size_t restart = 0;            // which restart produced this result
};

/// Lloyd's algorithm with k-means++ initialisation, keeping the lowest-inertia
/// of `restarts` runs (lowest restart index on ties). Points are `count`
/// vectors of length `dim`, row-major. Deterministic for a given seed.
KMeansResult kmeans(std::span<const double> points, std::size_t count, std::size_t dim,
                    std::size_t k, const KMeansConfig& cfg);

/// Within-cluster sum of squares of an arbitrary labelling.
double inertia(std::span<const double> points, std::size_t count, std::size_t dim,
               std::span<const std::uint32_t> labels, std::size_t k);

/// Crosses a row partition with a column partition: one bicluster per
/// (user cluster, page cluster) pair, ordered by user cluster then page
/// cluster. Pairs smaller than 2x2 are dropped.
std::vector<Bicluster> form_seeds(std::span<const std::uint32_t> user_labels, std::size_t k_users,
                                  std::span<const std::uint32_t> page_labels, std::size_t k_pages);

struct SeedingConfig {
  std::size_t k_users = 12;
  std::size_t k_pages = 10;
  KMeansConfig kmeans;
  bool normalize_rows = false;  // cluster users on visit proportions instead of counts
};

struct SeedingResult {
  KMeansResult users;
  KMeansResult pages;
  std::vector<Bicluster> seeds;
};

/// Clusters rows and columns of the matrix separately and crosses the results.
SeedingResult form_seeds(const AccessMatrix& matrix, const SeedingConfig& cfg);

}  // namespace clickbic::seeding
