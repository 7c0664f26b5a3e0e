#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "murec/kernels.hpp"
#include "helpers.hpp"

using namespace murec::kernels;
using testutil::random_vec;

namespace {

const std::size_t kSizes[] = {1, 2, 3, 4, 5, 7, 8, 15, 16, 17, 31, 64, 67, 1000, 4097};

bool have_avx2() { return backend_available(Backend::Avx2); }

void check_close(const std::vector<double>& a, const std::vector<double>& b,
                 double rel = 1e-14) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CAPTURE(i);
    if (rel == 0.0)
      CHECK(a[i] == b[i]);
    else
      CHECK(a[i] == doctest::Approx(b[i]).epsilon(rel));
  }
}

}  // namespace

TEST_CASE("elementwise kernels agree across backends") {
  if (!have_avx2()) return;
  const auto& s = table(Backend::Scalar);
  const auto& v = table(Backend::Avx2);
  std::mt19937_64 rng(11);
  for (std::size_t n : kSizes) {
    auto x = random_vec(rng, n);
    auto y = random_vec(rng, n);

    auto r1 = y, r2 = y;
    s.axpy(r1.data(), 0.37, x.data(), n);
    v.axpy(r2.data(), 0.37, x.data(), n);
    check_close(r1, r2);

    std::vector<double> d1(n), d2(n);
    s.add_scaled(d1.data(), x.data(), -1.7, y.data(), n);
    v.add_scaled(d2.data(), x.data(), -1.7, y.data(), n);
    check_close(d1, d2);

    s.sub(d1.data(), x.data(), y.data(), n);
    v.sub(d2.data(), x.data(), y.data(), n);
    check_close(d1, d2);

    s.mul(d1.data(), x.data(), y.data(), n);
    v.mul(d2.data(), x.data(), y.data(), n);
    check_close(d1, d2);

    s.scale(d1.data(), 3.25, x.data(), n);
    v.scale(d2.data(), 3.25, x.data(), n);
    check_close(d1, d2);

    auto a1 = y, a2 = y;
    s.accum_sq(a1.data(), x.data(), n);
    v.accum_sq(a2.data(), x.data(), n);
    check_close(a1, a2);

    auto sq = random_vec(rng, n, 0.0, 4.0);
    s.sqrt_arr(d1.data(), sq.data(), n);
    v.sqrt_arr(d2.data(), sq.data(), n);
    check_close(d1, d2, 0.0);  // sqrt is correctly rounded on both paths
  }
}

TEST_CASE("reductions agree across backends up to summation order") {
  if (!have_avx2()) return;
  const auto& s = table(Backend::Scalar);
  const auto& v = table(Backend::Avx2);
  std::mt19937_64 rng(12);
  for (std::size_t n : kSizes) {
    auto x = random_vec(rng, n);
    auto y = random_vec(rng, n);
    CHECK(s.dot(x.data(), y.data(), n) ==
          doctest::Approx(v.dot(x.data(), y.data(), n)).epsilon(1e-12));
    CHECK(s.sum(x.data(), n) == doctest::Approx(v.sum(x.data(), n)).epsilon(1e-12));
    CHECK(s.sum_sq(x.data(), n) ==
          doctest::Approx(v.sum_sq(x.data(), n)).epsilon(1e-12));
    CHECK(s.max_abs(x.data(), n) == v.max_abs(x.data(), n));  // order-free
  }
}

TEST_CASE("difference and divergence kernels agree across backends") {
  if (!have_avx2()) return;
  const auto& s = table(Backend::Scalar);
  const auto& v = table(Backend::Avx2);
  std::mt19937_64 rng(13);
  const int shapes[][2] = {{1, 1}, {2, 1}, {1, 2}, {3, 3}, {8, 5}, {17, 9}, {64, 64}};
  for (auto& wh : shapes) {
    const std::size_t w = wh[0], h = wh[1], n = w * h;
    auto u = random_vec(rng, n);
    std::vector<double> g1(n), g2(n);

    s.diff_x(g1.data(), u.data(), w, h, 2.0);
    v.diff_x(g2.data(), u.data(), w, h, 2.0);
    check_close(g1, g2, 0.0);

    s.diff_y(g1.data(), u.data(), w, h, 2.0);
    v.diff_y(g2.data(), u.data(), w, h, 2.0);
    check_close(g1, g2, 0.0);

    auto q = random_vec(rng, n);
    auto d1 = random_vec(rng, n);
    auto d2 = d1;
    s.div_x_accum(d1.data(), q.data(), w, h, 0.5);
    v.div_x_accum(d2.data(), q.data(), w, h, 0.5);
    check_close(d1, d2);

    s.div_y_accum(d1.data(), q.data(), w, h, 0.5);
    v.div_y_accum(d2.data(), q.data(), w, h, 0.5);
    check_close(d1, d2);
  }
}

TEST_CASE("backend override is scoped") {
  const Backend before = active_backend();
  {
    BackendGuard guard(Backend::Scalar);
    CHECK(active_backend() == Backend::Scalar);
    CHECK(std::string(table().name) == "scalar");
  }
  CHECK(active_backend() == before);
}

TEST_CASE("scalar kernels compute the expected stencils") {
  const auto& s = table(Backend::Scalar);
  // u = [0 1; 0 1] row-major, w = h = 2, inv_h = 1
  const double u[4] = {0.0, 1.0, 0.0, 1.0};
  double gx[4], gy[4];
  s.diff_x(gx, u, 2, 2, 1.0);
  s.diff_y(gy, u, 2, 2, 1.0);
  CHECK(gx[0] == 1.0);
  CHECK(gx[1] == 0.0);
  CHECK(gx[2] == 1.0);
  CHECK(gx[3] == 0.0);
  for (double v : gy) CHECK(v == 0.0);
}
