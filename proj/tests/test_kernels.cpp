#include <catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "cellricci/builders.hpp"
#include "cellricci/kernels.hpp"
#include "cellricci/spectral.hpp"

using namespace cellricci;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::vector<double> v(n);
  for (auto& x : v) x = normal(rng);
  return v;
}

class IsaGuard {
 public:
  IsaGuard() : saved_(kernels::active_isa()) {}
  ~IsaGuard() { kernels::set_isa(saved_); }

 private:
  kernels::Isa saved_;
};

constexpr std::size_t kSizes[] = {0, 1, 3, 4, 5, 7, 8, 9, 15, 16, 17, 33, 100, 257};

}  // namespace

TEST_CASE("dispatcher") {
  IsaGuard guard;
  CHECK(kernels::isa_available(kernels::Isa::kScalar));
  kernels::set_isa(kernels::Isa::kScalar);
  CHECK(kernels::active_isa() == kernels::Isa::kScalar);
  CHECK(std::string(kernels::isa_name(kernels::Isa::kScalar)) == "scalar");
  if (kernels::isa_available(kernels::Isa::kAvx2)) {
    kernels::set_isa(kernels::Isa::kAvx2);
    CHECK(kernels::active_isa() == kernels::Isa::kAvx2);
  } else {
    CHECK_THROWS_AS(kernels::set_isa(kernels::Isa::kAvx2), std::invalid_argument);
  }
}

#if defined(CELLRICCI_HAVE_AVX2)

TEST_CASE("AVX2 kernels match the scalar reference") {
  if (!kernels::isa_available(kernels::Isa::kAvx2)) SKIP("CPU lacks AVX2/FMA");
  std::mt19937_64 rng(99);
  for (std::size_t n : kSizes) {
    INFO("n = " << n);
    const auto a = random_vector(n, rng);
    const auto b = random_vector(n, rng);
    const double ref = kernels::scalar::dot(a, b);
    CHECK_THAT(kernels::avx2::dot(a, b), WithinAbs(ref, 1e-12 * (1.0 + static_cast<double>(n))));

    auto x1 = a, y1 = b, x2 = a, y2 = b;
    kernels::scalar::rotate_rows(x1, y1, 0.6, 0.8);
    kernels::avx2::rotate_rows(x2, y2, 0.6, 0.8);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK_THAT(x2[i], WithinAbs(x1[i], 1e-14));
      CHECK_THAT(y2[i], WithinAbs(y1[i], 1e-14));
    }

    const std::size_t m = std::min<std::size_t>(n, 40);
    const auto mat = random_vector(m * m, rng);
    const auto v = random_vector(m, rng);
    std::vector<double> r1(m), r2(m);
    kernels::scalar::matvec(mat, m, v, r1);
    kernels::avx2::matvec(mat, m, v, r2);
    for (std::size_t i = 0; i < m; ++i) CHECK_THAT(r2[i], WithinAbs(r1[i], 1e-12 * (1.0 + static_cast<double>(m))));
  }
}

TEST_CASE("eigenvalues agree under both instruction sets") {
  if (!kernels::isa_available(kernels::Isa::kAvx2)) SKIP("CPU lacks AVX2/FMA");
  IsaGuard guard;
  for (int n = 2; n <= 4; ++n) {
    const auto l = laplacian_matrix(build_simplex_boundary(n));
    kernels::set_isa(kernels::Isa::kScalar);
    const auto scalar = eigenvalues(l);
    kernels::set_isa(kernels::Isa::kAvx2);
    const auto simd = eigenvalues(l);
    REQUIRE(scalar.size() == simd.size());
    for (std::size_t i = 0; i < scalar.size(); ++i) CHECK_THAT(simd[i], WithinAbs(scalar[i], 1e-10));
  }
}

#endif

TEST_CASE("dispatched dot is exact on small integers") {
  std::vector<double> a(37), b(37);
  double expected = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = static_cast<double>(i % 5) - 2.0;
    b[i] = static_cast<double>(i % 7);
    expected += a[i] * b[i];
  }
  CHECK(kernels::dot(a, b) == expected);
  CHECK_THAT(kernels::scalar::dot(a, b), WithinRel(expected));
}
