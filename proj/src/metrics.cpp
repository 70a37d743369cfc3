#include "clickbic/metrics.hpp"

#include <algorithm>

#include "clickbic/kernels.hpp"

namespace clickbic::metrics {

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error("pearson: vectors differ in length");
  if (x.size() < 2) throw Error("pearson: vectors need at least 2 elements");
  return kernels::pearson_two_pass(x, y);
}

double AcvTerms::value() const {
  if (row && col) return std::max(*row, *col);
  if (row) return *row;
  if (col) return *col;
  throw Error("acv: undefined for a bicluster with fewer than 2 rows and 2 columns");
}

AcvTerms acv_terms(const AccessMatrix& matrix, const Bicluster& b) {
  check_bounds(b, matrix.rows(), matrix.cols());
  const std::size_t nr = b.rows.size();
  const std::size_t nc = b.cols.size();
  if (nr < 2 && nc < 2)
    throw Error("acv: undefined for a bicluster with fewer than 2 rows and 2 columns");

  thread_local std::vector<double> buf;
  AcvTerms terms;
  if (nr >= 2) {
    kernels::gather(matrix, b, buf);
    terms.row = nc >= 2 ? kernels::mean_abs_correlation(buf, nr, nc) : 0.0;
  }
  if (nc >= 2) {
    kernels::gather_transposed(matrix, b, buf);
    terms.col = nr >= 2 ? kernels::mean_abs_correlation(buf, nc, nr) : 0.0;
  }
  return terms;
}

double acv(const AccessMatrix& matrix, const Bicluster& b) { return acv_terms(matrix, b).value(); }

Score score(const AccessMatrix& matrix, const Bicluster& b, double delta) {
  if (!b.scorable()) return {};
  const double a = acv(matrix, b);
  return {a >= delta ? static_cast<double>(volume(b)) : 0.0, a};
}

double fitness(const AccessMatrix& matrix, const Bicluster& b, double delta) {
  return score(matrix, b, delta).fitness;
}

OverlapReport overlap_degree(std::span<const Bicluster> biclusters, std::size_t n, std::size_t m) {
  if (biclusters.size() < 2) throw Error("overlap degree needs at least 2 biclusters");
  if (n == 0 || m == 0) throw Error("overlap degree needs a nonempty matrix");
  OverlapReport rep;
  rep.rows = n;
  rep.cols = m;
  rep.count = biclusters.size();
  rep.coverage.assign(n * m, 0);
  for (const auto& b : biclusters) {
    check_bounds(b, n, m);
    for (auto i : b.rows)
      for (auto j : b.cols) ++rep.coverage[i * m + j];
  }
  // Coverage counts are integers, so sum them exactly and divide once.
  std::uint64_t multi = 0;
  std::uint64_t total = 0;
  for (auto c : rep.coverage) {
    total += c;
    if (c > 0) multi += c - 1;
  }
  const double cells = static_cast<double>(n) * static_cast<double>(m);
  const double denom = static_cast<double>(rep.count - 1);
  rep.r = static_cast<double>(multi) / denom / cells;
  rep.r_unclamped = (static_cast<double>(total) - cells) / denom / cells;
  return rep;
}

Coverage coverage_percentages(std::span<const Bicluster> biclusters, std::size_t n,
                              std::size_t m) {
  std::vector<char> row_hit(n, 0), col_hit(m, 0);
  for (const auto& b : biclusters) {
    check_bounds(b, n, m);
    for (auto i : b.rows) row_hit[i] = 1;
    for (auto j : b.cols) col_hit[j] = 1;
  }
  auto percent = [](const std::vector<char>& hit) {
    if (hit.empty()) return 0.0;
    return 100.0 * static_cast<double>(std::count(hit.begin(), hit.end(), 1)) /
           static_cast<double>(hit.size());
  };
  return {percent(row_hit), percent(col_hit)};
}

}  // namespace clickbic::metrics
