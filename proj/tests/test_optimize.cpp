#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "simplex_interp/analysis.hpp"
#include "simplex_interp/basis.hpp"
#include "simplex_interp/nodes.hpp"
#include "simplex_interp/optimize.hpp"

using namespace simplex_interp;

namespace {

Real R(const char* s) { return Real(s); }

OptimizerConfig<Real> cfg(int k, Objective obj, int starts) {
  OptimizerConfig<Real> c;
  c.k = k;
  c.objective = obj;
  c.starts = starts;
  return c;
}

Real objective_at(const NodeSet<Real>& nodes, Objective obj) {
  const LagrangeBasis<Real> basis(nodes);
  return obj == Objective::Norm ? projector_norm(basis).value
                                : absorption_coefficient(basis).value;
}

}  // namespace

TEST_CASE("pinned degrees need no search") {
  for (const Objective obj : {Objective::Norm, Objective::Xi}) {
    const auto r1 = minimize(cfg(1, obj, 4));
    CHECK(r1.best_value == Real(1));
    CHECK(r1.converged);
    REQUIRE(r1.best_nodes.count() == 2);
    CHECK(r1.best_nodes.points[0] == Real(-1));
    CHECK(r1.best_nodes.points[1] == Real(1));
  }
  const auto rn = minimize(cfg(2, Objective::Norm, 4));
  CHECK(abs(rn.best_value - R("1.25")) < R("1e-30"));
  REQUIRE(rn.best_nodes.count() == 3);
  CHECK(rn.best_nodes.points[1] == Real(0));
  CHECK(rn.best_nodes.points[2] == Real(1));  // r = 1 sits in [2*sqrt(2)/3, 1]
  const auto rx = minimize(cfg(2, Objective::Xi, 4));
  CHECK(abs(rx.best_value - Real(11) / Real(8)) < R("1e-30"));
}

TEST_CASE("cubic minimizers") {
  const auto rn = minimize(cfg(3, Objective::Norm, 8));
  CHECK(abs(rn.best_value - R("1.422919")) <= R("1e-6"));
  REQUIRE(rn.best_nodes.count() == 4);
  CHECK(abs(rn.best_nodes.points[2] - R("0.417791")) <= R("1e-4"));
  CHECK(abs(rn.best_nodes.points[1] + rn.best_nodes.points[2]) <= R("1e-12"));
  CHECK(rn.converged);

  const auto rx = minimize(cfg(3, Objective::Xi, 8));
  CHECK(abs(rx.best_value - R("1.635778")) <= R("1e-6"));
  CHECK(abs(rx.best_nodes.points[2] - R("0.481618")) <= R("1e-4"));
}

TEST_CASE("quartic xi minimum") {
  const auto r = minimize(cfg(4, Objective::Xi, 8));
  CHECK(abs(r.best_value - R("1.981193")) <= R("1e-6"));
}

TEST_CASE("result invariants") {
  const auto r = minimize(cfg(5, Objective::Norm, 4));
  CHECK(abs(r.best_value - objective_at(r.best_nodes, Objective::Norm)) <= R("1e-12"));
  CHECK(r.evaluations > 0);
  REQUIRE(r.history.size() == 5);  // one per start plus the post-polish entry
  CHECK(r.history.back().first == 4);
  CHECK(r.history.back().second == r.best_value);
  for (std::size_t i = 1; i < r.history.size(); ++i)
    CHECK(r.history[i].second <= r.history[i - 1].second);
}

TEST_CASE("upper-bound semantics") {
  for (int k : {2, 3, 4, 5}) {
    const auto r = minimize(cfg(k, Objective::Norm, 4));
    CHECK(r.best_value >= Real(1));
    CHECK(r.best_value <=
          objective_at(regular_nodes<Real>(k), Objective::Norm) + R("1e-30"));
    CHECK(r.best_value <=
          objective_at(chebyshev_nodes<Real>(k), Objective::Norm) + R("1e-30"));
  }
}

TEST_CASE("restart monotonicity") {
  Real prev;
  bool first = true;
  for (int starts : {1, 2, 4, 8}) {
    const auto r = minimize(cfg(5, Objective::Norm, starts));
    if (!first) CHECK(r.best_value <= prev + R("1e-30"));
    prev = r.best_value;
    first = false;
  }
}

TEST_CASE("determinism") {
  const auto a = minimize(cfg(4, Objective::Norm, 6));
  const auto b = minimize(cfg(4, Objective::Norm, 6));
  CHECK(a.best_value == b.best_value);
  REQUIRE(a.best_nodes.count() == b.best_nodes.count());
  for (int i = 0; i < a.best_nodes.count(); ++i)
    CHECK(a.best_nodes.points[i] == b.best_nodes.points[i]);
}

TEST_CASE("asymmetric search recovers symmetric minimizers") {
  for (int k : {2, 3, 4}) {
    auto c = cfg(k, Objective::Norm, 24);
    c.symmetric = false;
    const auto r = minimize(c);
    const int d = k + 1;
    for (int i = 0; i < d; ++i)
      CHECK(abs(r.best_nodes.points[i] + r.best_nodes.points[d - 1 - i]) <= R("1e-4"));
  }
}

TEST_CASE("free endpoints stay on the quadratic plateau") {
  auto c = cfg(2, Objective::Norm, 6);
  c.fix_endpoints = false;
  const auto r = minimize(c);
  CHECK(abs(r.best_value - R("1.25")) <= R("1e-9"));
  const Real e = r.best_nodes.points[2];
  CHECK(e >= Real(2) * sqrt(Real(2)) / Real(3) - R("1e-6"));
  CHECK(e <= Real(1));
}

TEST_CASE("sandwich holds at the optimum") {
  for (int k : {3, 4, 5}) {
    const auto rn = minimize(cfg(k, Objective::Norm, 4));
    const auto rx = minimize(cfg(k, Objective::Xi, 4));
    const int d = k + 1;
    const Real theta = rn.best_value;
    const Real lower = (Real(1) + Real(1) / Real(d - 1)) * (theta - Real(1)) / Real(2) + Real(1);
    const Real upper = Real(d) * (theta - Real(1)) / Real(2) + Real(1);
    CHECK(lower <= rx.best_value + R("1e-8"));
    CHECK(rx.best_value <= upper + R("1e-8"));
  }
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(minimize(cfg(0, Objective::Norm, 4)), InvalidDegree);
  CHECK_THROWS_AS(minimize(cfg(2, Objective::Norm, 0)), InputError);
  auto c = cfg(2, Objective::Norm, 4);
  c.tol = Real(0);
  CHECK_THROWS_AS(minimize(c), InputError);
  auto c2 = cfg(2, Objective::Norm, 4);
  c2.max_iters = 0;
  CHECK_THROWS_AS(minimize(c2), InputError);
}

TEST_CASE("table artifacts: fixed families") {
  const auto t3 = reproduce_table<Real>(TableId::Regular, 3);
  REQUIRE(t3.rows.size() == 3);
  for (int k = 1; k <= 3; ++k) {
    const auto& row = t3.rows[static_cast<std::size_t>(k - 1)];
    CHECK(row.k == k);
    const LagrangeBasis<Real> basis(regular_nodes<Real>(k));
    CHECK(row.value == absorption_coefficient(basis).value);
    CHECK(row.companion == projector_norm(basis).value);
    CHECK(abs(row.abs_det - abs(vandermonde_det(regular_nodes<Real>(k)))) < R("1e-50"));
  }
  CHECK(abs(t3.rows[2].value - R("2.262260")) < R("1e-6"));
  CHECK(abs(t3.rows[2].companion - R("1.631130")) < R("1e-6"));

  const auto t4 = reproduce_table<Real>(TableId::Chebyshev, 2);
  REQUIRE(t4.rows.size() == 2);
  CHECK(abs(t4.rows[0].value - sqrt(Real(2))) < R("1e-40"));
  CHECK(abs(t4.rows[1].companion - Real(5) / Real(3)) < R("1e-40"));
}

TEST_CASE("table artifacts: optimized families") {
  const auto t1 = reproduce_table<Real>(TableId::Theta, 2);
  REQUIRE(t1.rows.size() == 2);
  CHECK(t1.rows[0].value == Real(1));
  CHECK(t1.rows[0].companion == Real(1));
  CHECK(abs(t1.rows[1].value - R("1.25")) < R("1e-30"));
  CHECK(abs(t1.rows[1].companion - R("1.375")) < R("1e-30"));

  const auto t2 = reproduce_table<Real>(TableId::XiMin, 2);
  CHECK(abs(t2.rows[1].value - R("1.375")) < R("1e-30"));
  CHECK(abs(t2.rows[1].companion - R("1.25")) < R("1e-30"));

  CHECK_THROWS_AS(reproduce_table<Real>(TableId::Theta, 11), InputError);
  CHECK_THROWS_AS(reproduce_table<Real>(TableId::Regular, -2), InputError);
}
