#pragma once

// Dense floating-point inner loops used by the Jacobi eigensolver and the
// float form inner products. Each kernel has a scalar reference version and,
// on x86-64, an AVX2+FMA version; the dispatcher picks the best one the CPU
// supports at first use. CELLRICCI_SIMD=scalar forces the reference path.

#include <cstddef>
#include <span>

namespace cellricci::kernels {

enum class Isa { kScalar, kAvx2 };

const char* isa_name(Isa isa);
/// Best instruction set compiled in and supported by the running CPU.
Isa detected_isa();
bool isa_available(Isa isa);
Isa active_isa();
/// Switches the dispatcher; throws std::invalid_argument if `isa` is unavailable.
void set_isa(Isa isa);

double dot(std::span<const double> a, std::span<const double> b);

/// In place: x <- c*x - s*y, y <- s*x + c*y (a Givens rotation of two rows).
void rotate_rows(std::span<double> x, std::span<double> y, double c, double s);

/// y = A x for a dense row-major n x n matrix A.
void matvec(std::span<const double> a, std::size_t n, std::span<const double> x, std::span<double> y);

namespace scalar {
double dot(std::span<const double> a, std::span<const double> b);
void rotate_rows(std::span<double> x, std::span<double> y, double c, double s);
void matvec(std::span<const double> a, std::size_t n, std::span<const double> x, std::span<double> y);
}  // namespace scalar

#if defined(CELLRICCI_HAVE_AVX2)
namespace avx2 {
double dot(std::span<const double> a, std::span<const double> b);
void rotate_rows(std::span<double> x, std::span<double> y, double c, double s);
void matvec(std::span<const double> a, std::size_t n, std::span<const double> x, std::span<double> y);
}  // namespace avx2
#endif

}  // namespace cellricci::kernels
