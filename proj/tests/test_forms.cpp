#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "cellricci/builders.hpp"
#include "cellricci/errors.hpp"
#include "cellricci/forman.hpp"
#include "cellricci/forms.hpp"
#include "corpus.hpp"

using namespace cellricci;

namespace {

template <class T>
T inner2(const TwoForm<T>& a, const TwoForm<T>& b) {
  T acc{};
  for (std::size_t i = 0; i < a.values.size(); ++i) acc += a.values[i] * b.values[i];
  return acc;
}

TwoForm<double> random_two_form(const FormOperators& ops, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  TwoForm<double> z{std::vector<double>(ops.two_steps().size())};
  for (auto& x : z.values) x = normal(rng);
  return z;
}

}  // namespace

TEST_CASE("d* is the adjoint of d in both degrees") {
  std::mt19937_64 rng(11);
  for (const auto& [name, c] : testing::corpus()) {
    INFO(name);
    const FormOperators ops(c);
    for (int k = 0; k < 50; ++k) {
      const auto f = random_zero_form(c, rng);
      const auto w = random_one_form(ops, rng);
      CHECK(std::fabs(inner(d_star_one(ops, w), f) - inner(w, d_zero(ops, f))) < 1e-12);
      const auto z = random_two_form(ops, rng);
      CHECK(std::fabs(inner(d_star_two(ops, z), w) - inner2(z, d_one(ops, w))) < 1e-12);
    }
  }
}

TEST_CASE("adjointness holds exactly over the rationals") {
  std::mt19937_64 rng(5);
  const auto c = build_simplex_boundary(2);
  const FormOperators ops(c);
  for (int k = 0; k < 20; ++k) {
    const auto w = random_rational_one_form(ops, rng);
    ZeroForm<Rational> f = ZeroForm<Rational>::zeros(c);
    for (std::size_t i = 0; i < c.size(); ++i) f.values[i] = Rational(static_cast<std::int64_t>(rng() % 11) - 5, 3);
    CHECK(inner(d_star_one(ops, w), f) == inner(w, d_zero(ops, f)));
  }
}

TEST_CASE("d o d vanishes on 0-forms") {
  std::mt19937_64 rng(3);
  for (const auto& [name, c] : testing::corpus()) {
    INFO(name);
    const FormOperators ops(c);
    const auto dd = d_one(ops, d_zero(ops, random_zero_form(c, rng)));
    for (double x : dd.values) CHECK(std::fabs(x) < 1e-12);
  }
}

TEST_CASE("Laplacian on 0-forms is the graph Laplacian of G_M") {
  const auto c = build_simplex_boundary(3);
  const FormOperators ops(c);
  std::mt19937_64 rng(9);
  const auto f = random_zero_form(c, rng);
  const auto lf = laplacian_zero(ops, f);
  for (const auto& cell : c.cells()) {
    double expected = degree(c, cell.id) * f[cell.id];
    for (const auto& x : c.faces(cell.id)) expected -= f[x.cell];
    for (const auto& x : c.cofaces(cell.id)) expected -= f[x.cell];
    CHECK(std::fabs(lf[cell.id] - expected) < 1e-12);
  }
}

TEST_CASE("diagonal of the 1-form Laplacian is 2 + #N2") {
  for (const auto& [name, c] : testing::corpus()) {
    INFO(name);
    const FormOperators ops(c);
    for (std::uint32_t v = 0; v < ops.vector_count(); v += 3) {
      auto e = OneForm<Rational>::zeros(c);
      e[v] = Rational(1);
      const auto le = laplacian_one(ops, e);
      CHECK(le[v] == Rational(2 + static_cast<std::int64_t>(ops.neighbors(v).two.size())));
    }
  }
}

TEST_CASE("covariant and flat terms on a path") {
  const auto path = testing::grid({2});
  const FormOperators ops(path);
  const auto e0v0 = ops.index_of({path.at("e0"), path.at("v0")});
  const auto e0v1 = ops.index_of({path.at("e0"), path.at("v1")});
  const auto e1v1 = ops.index_of({path.at("e1"), path.at("v1")});
  const auto e1v2 = ops.index_of({path.at("e1"), path.at("v2")});
  auto w = OneForm<Rational>::zeros(path);
  w[e0v0] = Rational(1);
  w[e0v1] = Rational(2);
  w[e1v1] = Rational(-3);
  w[e1v2] = Rational(5);
  // N0(e0 > v1) = {(e0 > v0), (e1 > v1)}, N2 empty.
  CHECK(covariant_sq(ops, w, e0v1) == Rational((2 + 1) * (2 + 1) + (2 - 3) * (2 - 3)));
  CHECK(laplacian_flat_sq(ops, w, e0v1) == Rational(2 * 4 - 1 - 9));
  CHECK(bochner_ric(ops, w, FaceVector{path.at("e0"), path.at("v1")}) == Rational(0));
}

TEST_CASE("Bochner identity holds exactly for rational forms") {
  std::mt19937_64 rng(21);
  for (const auto& [name, c] : testing::corpus()) {
    INFO(name);
    const FormOperators ops(c);
    const auto w = random_rational_one_form(ops, rng);
    const auto lw = laplacian_one(ops, w);
    for (std::uint32_t v = 0; v < ops.vector_count(); ++v) {
      const Rational value = bochner_ric(ops, w, lw, v);
      CHECK(value == Rational(ric(c, c.vectors()[v])) * w[v] * w[v]);
    }
  }
}

TEST_CASE("Bochner identity and flat balance under random sampling") {
  for (const auto& [name, c] : testing::corpus()) {
    INFO(name);
    const FormOperators ops(c);
    const auto sweep = bochner_sweep(ops, 1000, 17);
    CHECK(sweep.samples >= 1000);
    CHECK(sweep.max_deviation <= 1e-9);
    CHECK(sweep.flat_balance <= 1e-10);
  }
}

TEST_CASE("the identity depends on the sign conventions") {
  // With a plus sign in front of the flat term, or a pairing that ignores the
  // incidence numbers, the decomposition no longer reduces to (2 - #N0) w^2.
  const auto c = build_simplex_boundary(2);
  const FormOperators ops(c);
  std::mt19937_64 rng(2);
  const auto w = random_rational_one_form(ops, rng);
  const auto lw = laplacian_one(ops, w);
  const Rational half(1, 2);
  bool plus_breaks = false;
  bool raw_breaks = false;
  for (std::uint32_t v = 0; v < ops.vector_count(); ++v) {
    const auto t = bochner_terms(ops, w, lw, v);
    if (t.pairing - half * t.covariant + half * t.flat != t.expected) plus_breaks = true;
    const auto raw = bochner_terms(ops, w, lw, v, Pairing::kRaw);
    if (raw.pairing - half * raw.covariant - half * raw.flat != raw.expected) raw_breaks = true;
  }
  CHECK(plus_breaks);
  CHECK(raw_breaks);
}

TEST_CASE("bochner_ric reports a violated identity") {
  const auto c = build_simplex_boundary(2);
  const FormOperators ops(c);
  auto w = OneForm<double>::zeros(c);
  w[0] = 1.0;
  const auto lw = laplacian_one(ops, w);
  auto wrong = lw;
  wrong[0] += 1.0;
  CHECK_NOTHROW(bochner_ric(ops, w, lw, 0));
  CHECK_THROWS_AS(bochner_ric(ops, w, wrong, 0), IdentityError);
}
