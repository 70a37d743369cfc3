#pragma once

// Data-parallel inner loops. Each OpenMP kernel has a serial counterpart in
// `reference` that is kept deliberately plain; tests check the two agree and
// the benchmark target compares their speed.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "clickbic/types.hpp"

namespace clickbic::kernels {

/// Copies the submatrix selected by `b` into `out`, row-major |I| x |J|.
void gather(const AccessMatrix& matrix, const Bicluster& b, std::vector<double>& out);

/// Copies the submatrix transposed into `out`, row-major |J| x |I|.
void gather_transposed(const AccessMatrix& matrix, const Bicluster& b, std::vector<double>& out);

/// Pearson correlation with the two-pass (mean, then moments) formula.
/// Zero-variance inputs give 0; magnitudes within 1e-12 of 1 are returned
/// as exactly +-1.
double pearson_two_pass(std::span<const double> x, std::span<const double> y) noexcept;

/// Mean of |r| over all ordered pairs (i, j), i != j, of `count` vectors of
/// length `len` stored row-major in `data`. Requires count >= 2.
///
/// Vectors are centred and scaled to unit norm once, then correlations are
/// dot products. Per-vector partial sums are reduced in index order, so the
/// result does not depend on the thread count.
double mean_abs_correlation(std::span<const double> data, std::size_t count, std::size_t len);

/// Squared Euclidean distance from each point to its nearest centroid.
/// Ties go to the lower centroid index. Writes labels and distances.
void assign_nearest(std::span<const double> points, std::size_t count, std::size_t dim,
                    std::span<const double> centroids, std::size_t k,
                    std::span<std::uint32_t> labels, std::span<double> distances);

namespace reference {

double mean_abs_correlation(std::span<const double> data, std::size_t count, std::size_t len);

void assign_nearest(std::span<const double> points, std::size_t count, std::size_t dim,
                    std::span<const double> centroids, std::size_t k,
                    std::span<std::uint32_t> labels, std::span<double> distances);

}  // namespace reference

}  // namespace clickbic::kernels
