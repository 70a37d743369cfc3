#pragma once

// Shared fixtures and independent oracles for the test binaries. Nothing here
// calls into the library's correlation code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "clickbic/greedy.hpp"
#include "clickbic/metrics.hpp"
#include "clickbic/types.hpp"

namespace testing {

using clickbic::AccessMatrix;
using clickbic::Bicluster;

inline AccessMatrix random_matrix(std::size_t n, std::size_t m, std::uint64_t seed, int lo = 0,
                                  int hi = 9) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(lo, hi);
  std::vector<double> v(n * m);
  for (auto& x : v) x = d(rng);
  std::vector<std::string> rl, cl;
  for (std::size_t i = 0; i < n; ++i) rl.push_back("u" + std::to_string(i));
  for (std::size_t j = 0; j < m; ++j) cl.push_back("p" + std::to_string(j));
  return AccessMatrix(n, m, std::move(v), rl, cl);
}

inline AccessMatrix from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size(), m = rows.front().size();
  std::vector<double> v;
  for (const auto& r : rows) v.insert(v.end(), r.begin(), r.end());
  std::vector<std::string> rl, cl;
  for (std::size_t i = 0; i < n; ++i) rl.push_back("u" + std::to_string(i));
  for (std::size_t j = 0; j < m; ++j) cl.push_back("p" + std::to_string(j));
  return AccessMatrix(n, m, std::move(v), rl, cl);
}

inline Bicluster mask_bicluster(unsigned row_mask, unsigned col_mask, std::size_t n,
                                std::size_t m) {
  Bicluster b;
  for (std::size_t i = 0; i < n; ++i)
    if (row_mask >> i & 1u) b.rows.push_back(i);
  for (std::size_t j = 0; j < m; ++j)
    if (col_mask >> j & 1u) b.cols.push_back(j);
  return b;
}

inline Bicluster random_bicluster(std::size_t n, std::size_t m, std::size_t rows,
                                  std::size_t cols, std::mt19937_64& rng) {
  std::vector<std::size_t> r(n), c(m);
  std::iota(r.begin(), r.end(), std::size_t{0});
  std::iota(c.begin(), c.end(), std::size_t{0});
  std::shuffle(r.begin(), r.end(), rng);
  std::shuffle(c.begin(), c.end(), rng);
  Bicluster b{{r.begin(), r.begin() + rows}, {c.begin(), c.begin() + cols}};
  b.normalize();
  return b;
}

// Textbook single-pass Pearson in long double; constant vectors give 0.
inline long double oracle_r(const std::vector<long double>& x, const std::vector<long double>& y) {
  const long double k = x.size();
  long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    sx += x[t];
    sy += y[t];
    sxx += x[t] * x[t];
    syy += y[t] * y[t];
    sxy += x[t] * y[t];
  }
  const long double vx = k * sxx - sx * sx, vy = k * syy - sy * sy;
  if (vx <= 0 || vy <= 0) return 0;
  return (k * sxy - sx * sy) / std::sqrt(vx * vy);
}

// (sum over all ordered pairs of |r|, diagonal counted as 1, minus n) / (n^2 - n)
inline long double oracle_term(const std::vector<std::vector<long double>>& vecs) {
  const long double n = vecs.size();
  long double sum = 0;
  for (std::size_t i = 0; i < vecs.size(); ++i)
    for (std::size_t j = 0; j < vecs.size(); ++j)
      sum += i == j ? 1.0L : std::fabs(oracle_r(vecs[i], vecs[j]));
  return (sum - n) / (n * n - n);
}

// Average correlation value evaluated straight from its definition.
inline double oracle_acv(const AccessMatrix& a, const Bicluster& b) {
  long double best = -1;
  if (b.rows.size() >= 2) {
    std::vector<std::vector<long double>> rows;
    for (auto i : b.rows) {
      rows.emplace_back();
      for (auto j : b.cols) rows.back().push_back(a(i, j));
    }
    best = std::max(best, oracle_term(rows));
  }
  if (b.cols.size() >= 2) {
    std::vector<std::vector<long double>> cols;
    for (auto j : b.cols) {
      cols.emplace_back();
      for (auto i : b.rows) cols.back().push_back(a(i, j));
    }
    best = std::max(best, oracle_term(cols));
  }
  return static_cast<double>(best);
}

// Every single-element insertion and every deletion that keeps 2x2, by brute force.
inline std::vector<Bicluster> neighbours(const Bicluster& b, std::size_t n, std::size_t m) {
  std::vector<Bicluster> out;
  auto toggle = [&](bool row, std::size_t k) {
    Bicluster c = b;
    auto& v = row ? c.rows : c.cols;
    auto it = std::find(v.begin(), v.end(), k);
    if (it == v.end()) {
      v.push_back(k);
    } else {
      if (v.size() <= 2) return;
      v.erase(it);
    }
    c.normalize();
    out.push_back(std::move(c));
  };
  for (std::size_t j = 0; j < m; ++j) toggle(false, j);
  for (std::size_t i = 0; i < n; ++i) toggle(true, i);
  return out;
}

inline bool locally_optimal(const AccessMatrix& a, const Bicluster& b) {
  const double here = clickbic::metrics::acv(a, b);
  for (const auto& c : neighbours(b, a.rows(), a.cols()))
    if (clickbic::metrics::acv(a, c) > here) return false;
  return true;
}

}  // namespace testing
