#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cellricci/kernels.hpp"

namespace cellricci::kernels {

namespace {

struct Table {
  double (*dot)(std::span<const double>, std::span<const double>);
  void (*rotate_rows)(std::span<double>, std::span<double>, double, double);
  void (*matvec)(std::span<const double>, std::size_t, std::span<const double>, std::span<double>);
};

constexpr Table kScalarTable{&scalar::dot, &scalar::rotate_rows, &scalar::matvec};
#if defined(CELLRICCI_HAVE_AVX2)
constexpr Table kAvx2Table{&avx2::dot, &avx2::rotate_rows, &avx2::matvec};
#endif

const Table* table_for(Isa isa) {
#if defined(CELLRICCI_HAVE_AVX2)
  if (isa == Isa::kAvx2) return &kAvx2Table;
#endif
  (void)isa;
  return &kScalarTable;
}

Isa initial_isa() {
  if (const char* env = std::getenv("CELLRICCI_SIMD"); env && std::string_view(env) == "scalar") {
    return Isa::kScalar;
  }
  return detected_isa();
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

const Table& active() { return *table_for(current().load(std::memory_order_relaxed)); }

}  // namespace

const char* isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  if (isa == Isa::kScalar) return true;
#if defined(CELLRICCI_HAVE_AVX2)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detected_isa() { return isa_available(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar; }

Isa active_isa() { return current().load(); }

void set_isa(Isa isa) {
  if (!isa_available(isa)) throw std::invalid_argument(std::string("instruction set not available: ") + isa_name(isa));
  current().store(isa);
}

double dot(std::span<const double> a, std::span<const double> b) { return active().dot(a, b); }

void rotate_rows(std::span<double> x, std::span<double> y, double c, double s) { active().rotate_rows(x, y, c, s); }

void matvec(std::span<const double> a, std::size_t n, std::span<const double> x, std::span<double> y) {
  active().matvec(a, n, x, y);
}

}  // namespace cellricci::kernels
