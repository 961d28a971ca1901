#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "cellricci/builders.hpp"
#include "cellricci/errors.hpp"
#include "cellricci/face_graph.hpp"
#include "cellricci/forman.hpp"
#include "cellricci/transport.hpp"
#include "corpus.hpp"

using namespace cellricci;

namespace {

Rational total(const Measure& m) {
  Rational t;
  for (const auto& [c, w] : m.support()) t += w;
  return t;
}

// A feasible alpha near 1 that is also at least the coupling's minimum.
Rational feasible_alpha(const ExplicitCoupling& e) {
  const Rational base(9, 10);
  return e.min_alpha ? max(*e.min_alpha, base) : base;
}

}  // namespace

TEST_CASE("measure_alpha") {
  const auto c = build_simplex_boundary(2);
  const FaceGraph g(c);
  const CellId v = c.at("v0");
  SECTION("alpha = 1 is a point mass") { CHECK(measure_alpha(g, v, Rational(1)) == Measure::point(v)); }
  SECTION("C2 vertex at alpha = 1/2") {
    const auto m = measure_alpha(g, v, Rational(1, 2));
    CHECK(m.mass(v) == Rational(1, 2));
    for (const auto& x : c.cofaces(v)) CHECK(m.mass(x.cell) == Rational(1, 6));
    CHECK(m.support().size() == 4);
    CHECK(m.mass(c.at("v1")) == Rational(0));
  }
  SECTION("total mass is 1") {
    std::mt19937_64 rng(4);
    for (const auto& [name, cx] : testing::corpus()) {
      const FaceGraph gx(cx);
      for (int k = 0; k < 10; ++k) {
        const CellId s{static_cast<std::uint32_t>(rng() % cx.size())};
        const Rational alpha(static_cast<std::int64_t>(rng() % 20), 19);
        CHECK(total(measure_alpha(gx, s, alpha)) == Rational(1));
      }
    }
  }
  SECTION("errors") {
    CHECK_THROWS_AS(measure_alpha(g, v, Rational(3, 2)), TransportError);
    CHECK_THROWS_AS(measure_alpha(g, v, Rational(-1, 2)), TransportError);
    const auto p = build_point();
    const FaceGraph gp(p);
    CHECK_THROWS_AS(measure_alpha(gp, p.at("p"), Rational(1, 2)), TransportError);
  }
}

TEST_CASE("measures reject invalid masses") {
  CHECK_THROWS_AS(Measure({{CellId{0}, Rational(1, 2)}}), TransportError);
  CHECK_THROWS_AS(Measure({{CellId{0}, Rational(3, 2)}, {CellId{1}, Rational(-1, 2)}}), TransportError);
  const Measure merged({{CellId{1}, Rational(1, 2)}, {CellId{1}, Rational(1, 2)}, {CellId{0}, Rational(0)}});
  CHECK(merged.support().size() == 1);
}

TEST_CASE("basic Wasserstein values") {
  const auto c = build_simplex_boundary(2);
  const FaceGraph g(c);
  const auto m = measure_alpha(g, c.at("v0.1"), Rational(1, 3));
  SECTION("W(mu, mu) = 0 with the identity coupling") {
    const auto cert = wasserstein(g, m, m);
    CHECK(cert.value == Rational(0));
    for (const auto& f : cert.optimal_coupling.flow) CHECK(f.source == f.target);
  }
  SECTION("point masses across a vector") {
    const auto cert = wasserstein(g, Measure::point(c.at("v0.1")), Measure::point(c.at("v0")));
    CHECK(cert.value == Rational(1));
    CHECK(cert.primal_cost == cert.dual_value);
  }
  SECTION("point masses at distance 2") {
    CHECK(wasserstein(g, Measure::point(c.at("v0")), Measure::point(c.at("v0.1.2"))).value == Rational(2));
  }
}

TEST_CASE("flat torus at alpha = 4/5 gives W = 1") {
  const auto c = build_torus_grid(4, 4);
  const FaceGraph g(c);
  const Rational alpha(4, 5);
  for (const auto& v : c.vectors()) {
    const auto cert = wasserstein(g, measure_alpha(g, v.tau, alpha), measure_alpha(g, v.sigma, alpha));
    CHECK(cert.value == Rational(1));
    CHECK(cert.value == coupling_cost_formula(g, v, alpha));
  }
}

TEST_CASE("certificates: strong duality, marginals, Lipschitz witness, metric axioms") {
  std::mt19937_64 rng(8);
  for (const auto& [name, c] : testing::corpus()) {
    INFO(name);
    const FaceGraph g(c);
    for (int k = 0; k < 15; ++k) {
      const CellId a{static_cast<std::uint32_t>(rng() % c.size())};
      const CellId b{static_cast<std::uint32_t>(rng() % c.size())};
      const Rational alpha(static_cast<std::int64_t>(rng() % 10), 10);
      const auto mu = measure_alpha(g, a, alpha);
      const auto nu = measure_alpha(g, b, alpha);
      const auto cert = wasserstein(g, mu, nu);
      CHECK(cert.primal_cost == cert.value);
      CHECK(cert.dual_value == cert.value);
      CHECK_NOTHROW(cert.optimal_coupling.check_marginals());
      CHECK(cert.optimal_coupling.cost(g) == cert.value);
      for (const auto& [x, fx] : cert.dual_witness) {
        for (const auto& [y, fy] : cert.dual_witness) CHECK(abs(fx - fy) <= Rational(g.distance(x, y)));
      }
      CHECK(wasserstein(g, nu, mu).value == cert.value);
      CHECK((cert.value == Rational(0)) == (mu == nu));
    }
  }
}

TEST_CASE("disconnected supports are rejected") {
  ComplexBuilder b;
  const auto v = b.add_cell("v", 0);
  const auto w = b.add_cell("w", 0);
  const auto e = b.add_cell("e", 1);
  b.add_incidence(e, v, -1);
  b.add_incidence(e, w, 1);
  const auto x = b.add_cell("x", 0);
  const auto y = b.add_cell("y", 0);
  const auto f = b.add_cell("f", 1);
  b.add_incidence(f, x, -1);
  b.add_incidence(f, y, 1);
  const auto c = std::move(b).build();
  const FaceGraph g(c);
  CHECK_THROWS_AS(wasserstein(g, Measure::point(c.at("v")), Measure::point(c.at("x"))), TransportError);
}

TEST_CASE("explicit coupling on C2 (edge > vertex) at alpha = 9/10") {
  const auto c = build_simplex_boundary(2);
  const FaceGraph g(c);
  const FaceVector v{c.at("v0.1"), c.at("v0")};
  const Rational alpha(9, 10);
  const auto pc = explicit_coupling(g, v, alpha);
  // d_tau = 4 > d_sigma = 3 and n_sigma = 0.
  CHECK(pc.table == CouplingTable::kParkedTau);
  CHECK_NOTHROW(pc.coupling.check_marginals());
  CHECK(pc.coupling.source == measure_alpha(g, v.tau, alpha));
  CHECK(pc.coupling.target == measure_alpha(g, v.sigma, alpha));
  CHECK(pc.coupling.cost(g) == coupling_cost_formula(g, v, alpha));
}

TEST_CASE("explicit coupling tables: cost equals the closed form at feasible alpha") {
  std::set<CouplingTable> seen;
  for (const auto& [name, c] : testing::corpus()) {
    INFO(name);
    const FaceGraph g(c);
    for (const auto& v : c.vectors()) {
      const auto entries = explicit_coupling_entries(g, v);
      REQUIRE(entries.min_alpha.has_value());
      const Rational alpha = feasible_alpha(entries);
      const auto pc = explicit_coupling(g, v, alpha);
      seen.insert(pc.table);
      const Rational cost = pc.coupling.cost(g);
      CHECK(cost == coupling_cost_formula(g, v, alpha));
      const auto cert = wasserstein(g, pc.coupling.source, pc.coupling.target);
      CHECK(cert.value <= cost);
    }
  }
  CHECK(seen.contains(CouplingTable::kA));
  CHECK(seen.contains(CouplingTable::kAPrime));
  CHECK(seen.contains(CouplingTable::kParkedSigma));
  CHECK(seen.contains(CouplingTable::kParkedTau));
}

TEST_CASE("A' is used when d_tau > d_sigma with siblings on both sides") {
  // A pentagon has two edges disjoint from any given edge, so (pentagon > edge)
  // has n_tau = 2 > n_sigma = 1.
  const auto c = testing::fixture("pentagonal_prism.txt");
  const FaceGraph g(c);
  std::size_t found = 0;
  for (const auto& v : c.vectors()) {
    const auto e = explicit_coupling_entries(g, v);
    if (e.table != CouplingTable::kAPrime) continue;
    ++found;
    const auto pc = explicit_coupling(g, v, feasible_alpha(e));
    CHECK(pc.coupling.cost(g) == coupling_cost_formula(g, v, feasible_alpha(e)));
  }
  CHECK(found == 10);
}

TEST_CASE("alpha below the feasible range names the violated entry") {
  const auto c = build_simplex_boundary(2);
  const FaceGraph g(c);
  const FaceVector v{c.at("v0.1"), c.at("v0")};
  const auto e = explicit_coupling_entries(g, v);
  REQUIRE(e.min_alpha.has_value());
  CHECK(*e.min_alpha == Rational(1, 5));  // alpha >= (1 - alpha)/d_tau with d_tau = 4
  CHECK_NOTHROW(explicit_coupling(g, v, Rational(1, 5)));
  try {
    explicit_coupling(g, v, Rational(1, 10));
    FAIL("expected a feasibility error");
  } catch (const TransportError& err) {
    CHECK_THAT(err.what(), Catch::Matchers::ContainsSubstring("v0.1,v0"));
  }
}

TEST_CASE("dual witness table values") {
  const auto c = build_simplex_boundary(2);
  const FaceGraph g(c);
  SECTION("g for d_tau >= d_sigma") {
    const FaceVector v{c.at("v0.1"), c.at("v0")};
    const auto w = integer_dual_witness(g, v);
    CHECK(w.uses_g);
    CHECK(*w.extended[v.tau.index] == 0);
    CHECK(*w.extended[v.sigma.index] == 1);
    CHECK(w.raw_lipschitz);
  }
  SECTION("f for d_sigma > d_tau") {
    const FaceVector v{c.at("v0.1.2"), c.at("v0.1")};
    const auto w = integer_dual_witness(g, v);
    CHECK_FALSE(w.uses_g);
    CHECK(*w.extended[v.tau.index] - *w.extended[v.sigma.index] == 1);
    CHECK(w.raw_lipschitz);
  }
  SECTION("g and f on the 3-sphere complex") {
    const auto c3 = build_simplex_boundary(3);
    const FaceGraph g3(c3);
    const FaceVector v{c3.at("v0.1"), c3.at("v0")};  // d_tau = 5 > d_sigma = 4
    const auto w = integer_dual_witness(g3, v);
    CHECK(w.uses_g);
    CHECK(integer_dual_witness(g3, {c3.at("v0.1.2"), c3.at("v0.1")}).uses_g);  // tie d_tau = d_sigma = 5
    const FaceVector u{c3.at("v0.1.2.3"), c3.at("v0.1.2")};  // d_tau = 4 < d_sigma = 5
    const auto f = integer_dual_witness(g3, u);
    CHECK_FALSE(f.uses_g);
    CHECK(f.raw_lipschitz);
    CHECK(*f.extended[u.tau.index] == 1);
    CHECK(*f.extended[u.sigma.index] == 0);
    CHECK(*f.extended[c3.at("v0.1.3").index] == 2);    // another face of tau
    CHECK(*f.extended[c3.at("v0.1").index] == 1);      // a face of sigma
    CHECK(*f.extended[c3.at("v0.1.2.4").index] == -1);  // the other coface of sigma
  }
}

TEST_CASE("certificate sandwich on every corpus vector") {
  for (const auto& [name, c] : testing::corpus()) {
    INFO(name);
    const FaceGraph g(c);
    for (const auto& v : c.vectors()) {
      const auto entries = explicit_coupling_entries(g, v);
      const Rational alpha = feasible_alpha(entries);
      const auto pc = explicit_coupling(g, v, alpha);
      const auto witness = integer_dual_witness(g, v);
      const Rational cost = pc.coupling.cost(g);
      const Rational dual = witness.dual_value(g, v, alpha);
      const Rational w = wasserstein(g, pc.coupling.source, pc.coupling.target).value;
      CHECK(dual <= w);
      CHECK(w <= cost);
      CHECK(dual == cost);
      CHECK(dual == dual_value_formula(g, v, alpha));
      CHECK(witness.raw_lipschitz);
    }
  }
}
