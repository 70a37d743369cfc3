#include <doctest.h>

#include <random>

#include "clickbic/kernels.hpp"

using namespace clickbic;

namespace {

std::vector<double> noise(std::size_t size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-5.0, 5.0);
  std::vector<double> v(size);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_CASE("mean_abs_correlation agrees with the pairwise reference") {
  // The large case crosses the threshold where the kernel goes parallel.
  for (auto [count, len] : {std::pair<std::size_t, std::size_t>{2, 2}, {3, 7}, {17, 5},
                            {40, 30}, {300, 120}}) {
    auto data = noise(count * len, count * 31 + len);
    const double fast = kernels::mean_abs_correlation(data, count, len);
    const double slow = kernels::reference::mean_abs_correlation(data, count, len);
    CHECK(fast == doctest::Approx(slow).epsilon(1e-12));
  }
}

TEST_CASE("mean_abs_correlation with flat and duplicated vectors") {
  std::vector<double> data{1, 2, 3, 4,  //
                           5, 5, 5, 5,  //
                           2, 4, 6, 8};
  // pairs: (0,1) flat -> 0, (0,2) -> 1, (1,2) -> 0
  CHECK(kernels::mean_abs_correlation(data, 3, 4) == doctest::Approx(1.0 / 3.0));
  CHECK(kernels::reference::mean_abs_correlation(data, 3, 4) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("pearson_two_pass snaps near-unit values") {
  std::vector<double> x{10, 11, 12, 13}, y{30.000000000001, 33, 36, 39};
  CHECK(kernels::pearson_two_pass(x, y) == 1.0);
  std::vector<double> z{1, 2, 3, 5};
  CHECK(kernels::pearson_two_pass(x, z) < 1.0);
}

TEST_CASE("assign_nearest agrees with the serial reference") {
  const std::size_t count = 5000, dim = 6, k = 9;
  auto points = noise(count * dim, 1);
  auto centroids = noise(k * dim, 2);
  std::vector<std::uint32_t> l1(count), l2(count);
  std::vector<double> d1(count), d2(count);
  kernels::assign_nearest(points, count, dim, centroids, k, l1, d1);
  kernels::reference::assign_nearest(points, count, dim, centroids, k, l2, d2);
  CHECK(l1 == l2);
  CHECK(d1 == d2);
}

TEST_CASE("assign_nearest breaks ties toward the lower centroid") {
  std::vector<double> points{0.0}, centroids{-1.0, 1.0};
  std::vector<std::uint32_t> label(1);
  std::vector<double> dist(1);
  kernels::assign_nearest(points, 1, 1, centroids, 2, label, dist);
  CHECK(label[0] == 0);
  CHECK(dist[0] == 1.0);
}

TEST_CASE("gather and gather_transposed") {
  AccessMatrix a(3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9}, {"a", "b", "c"}, {"x", "y", "z"});
  std::vector<double> out;
  kernels::gather(a, Bicluster{{0, 2}, {1, 2}}, out);
  CHECK(out == std::vector<double>{2, 3, 8, 9});
  kernels::gather_transposed(a, Bicluster{{0, 2}, {1, 2}}, out);
  CHECK(out == std::vector<double>{2, 8, 3, 9});
}
