#include "clickbic/types.hpp"

#include <algorithm>

namespace clickbic {

AccessMatrix::AccessMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {
  row_labels_.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) row_labels_.push_back("u" + std::to_string(i));
  col_labels_.reserve(cols);
  for (std::size_t j = 0; j < cols; ++j) col_labels_.push_back("p" + std::to_string(j));
}

AccessMatrix::AccessMatrix(std::size_t rows, std::size_t cols, std::vector<double> values,
                           std::vector<std::string> row_labels,
                           std::vector<std::string> col_labels)
    : rows_(rows),
      cols_(cols),
      values_(std::move(values)),
      row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)) {
  if (values_.size() != rows_ * cols_) throw Error("matrix value count does not match dimensions");
  if (row_labels_.size() != rows_ || col_labels_.size() != cols_)
    throw Error("matrix label count does not match dimensions");
  for (double v : values_)
    if (!(v >= 0.0)) throw Error("access matrix entries must be nonnegative");
}

std::vector<double> AccessMatrix::transposed() const {
  std::vector<double> t(values_.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t[j * rows_ + i] = values_[i * cols_ + j];
  return t;
}

void Bicluster::normalize() {
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
}

namespace {
void check_axis(const std::vector<std::size_t>& idx, std::size_t limit, const char* axis) {
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] >= limit)
      throw Error(std::string(axis) + " index " + std::to_string(idx[k]) + " out of range");
    if (k > 0 && idx[k] <= idx[k - 1])
      throw Error(std::string(axis) + " indices must be strictly increasing");
  }
}
}  // namespace

void check_bounds(const Bicluster& b, std::size_t n, std::size_t m) {
  check_axis(b.rows, n, "row");
  check_axis(b.cols, m, "column");
}

}  // namespace clickbic
