#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "clickbic/types.hpp"

namespace clickbic::metrics {

/// Pearson product-moment correlation. Zero-variance input gives 0.
/// Throws on length mismatch or length < 2.
double pearson(std::span<const double> x, std::span<const double> y);

/// The two halves of the average correlation value. A term is empty when
/// its axis has fewer than two members.
struct AcvTerms {
  std::optional<double> row;  // mean |r| between distinct rows, over the selected columns
  std::optional<double> col;  // mean |r| between distinct columns, over the selected rows

  double value() const;
};

/// Average correlation value: the larger of the mean absolute pairwise row
/// correlation and the mean absolute pairwise column correlation, each taken
/// over distinct pairs. Range [0, 1].
///
/// Throws if the bicluster has fewer than two rows and fewer than two columns,
/// or indexes outside the matrix.
AcvTerms acv_terms(const AccessMatrix& matrix, const Bicluster& b);
double acv(const AccessMatrix& matrix, const Bicluster& b);

inline std::size_t volume(const Bicluster& b) noexcept { return b.rows.size() * b.cols.size(); }

/// Volume when the bicluster is at least 2x2 and its ACV reaches `delta`,
/// otherwise 0. Never throws on degenerate input.
double fitness(const AccessMatrix& matrix, const Bicluster& b, double delta);

/// Fitness together with the ACV it was decided on (0 for sub-2x2 input).
struct Score {
  double fitness = 0.0;
  double acv = 0.0;
};
Score score(const AccessMatrix& matrix, const Bicluster& b, double delta);

struct OverlapReport {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t count = 0;               // N, number of biclusters
  std::vector<std::uint32_t> coverage;  // row-major, biclusters containing each element
  double r = 0.0;                      // per-element contributions clamped at 0
  double r_unclamped = 0.0;            // uncovered elements contribute -1/(N-1)
};

/// Degree of overlap among biclusters on an n x m matrix. Requires N >= 2.
OverlapReport overlap_degree(std::span<const Bicluster> biclusters, std::size_t n, std::size_t m);

struct Coverage {
  double row_percent = 0.0;  // rows in at least one bicluster
  double col_percent = 0.0;  // columns in at least one bicluster
};
Coverage coverage_percentages(std::span<const Bicluster> biclusters, std::size_t n,
                              std::size_t m);

}  // namespace clickbic::metrics
