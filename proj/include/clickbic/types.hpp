#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace clickbic {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input text that does not follow the expected format. Carries the 1-based
/// line number of the offending line (0 when the problem is file-level).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// One browsing session: 1-based page-category indices in visit order.
using Session = std::vector<std::uint32_t>;

/// Dense user x page visit-count matrix, row-major.
class AccessMatrix {
 public:
  AccessMatrix() = default;
  AccessMatrix(std::size_t rows, std::size_t cols);
  AccessMatrix(std::size_t rows, std::size_t cols, std::vector<double> values,
               std::vector<std::string> row_labels, std::vector<std::string> col_labels);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return values_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * cols_, cols_};
  }
  std::span<const double> values() const noexcept { return values_; }

  const std::vector<std::string>& row_labels() const noexcept { return row_labels_; }
  const std::vector<std::string>& col_labels() const noexcept { return col_labels_; }

  /// Column-major copy, i.e. the transpose stored row-major.
  std::vector<double> transposed() const;

  friend bool operator==(const AccessMatrix&, const AccessMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
};

/// A submatrix selected by sorted, duplicate-free row and column index sets.
struct Bicluster {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;

  /// Sorts and deduplicates both index sets.
  void normalize();

  /// True when the bicluster can be scored by fitness (at least 2x2).
  bool scorable() const noexcept { return rows.size() >= 2 && cols.size() >= 2; }

  bool empty() const noexcept { return rows.empty() || cols.empty(); }

  friend bool operator==(const Bicluster&, const Bicluster&) = default;
  friend auto operator<=>(const Bicluster&, const Bicluster&) = default;
};

/// Throws if any index is out of range for an n x m matrix or the sets are
/// not strictly increasing.
void check_bounds(const Bicluster& b, std::size_t n, std::size_t m);

}  // namespace clickbic
