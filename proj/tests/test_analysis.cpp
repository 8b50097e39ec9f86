#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "simplex_interp/analysis.hpp"
#include "simplex_interp/basis.hpp"
#include "simplex_interp/nodes.hpp"

using namespace simplex_interp;

namespace {

Real R(const char* s) { return Real(s); }

double unit_double(std::mt19937_64& gen) {
  return 2.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53) - 1.0;
}

NodeSet<Real> random_nodes(std::mt19937_64& gen, int k) {
  for (;;) {
    std::vector<Real> pts;
    pts.reserve(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i <= k; ++i) pts.push_back(Real(unit_double(gen)));
    std::sort(pts.begin(), pts.end());
    bool ok = true;
    for (int i = 0; i < k; ++i) {
      if (pts[static_cast<std::size_t>(i) + 1] - pts[static_cast<std::size_t>(i)] < R("1e-3"))
        ok = false;
    }
    if (!ok) continue;
    NodeSet<Real> n = validate(pts);
    if (abs(vandermonde_det(n)) > Real(100) * scalar_traits<Real>::singular_threshold()) return n;
  }
}

NodeSet<Real> minimal_cubic_nodes() {
  return validate<Real>({Real(-1), R("-0.417791"), R("0.417791"), Real(1)});
}

// Exact values for the equispaced cubic set {-1, -1/3, 1/3, 1}:
// ||P|| = (7 + 14*sqrt(7))/27, attained at x = -(1 + 2*sqrt(7))/9 (and its
// mirror), and xi = 2||P|| - 1 = (28*sqrt(7) - 13)/27.
Real regular_cubic_norm() { return (Real(7) + Real(14) * sqrt(Real(7))) / Real(27); }
Real regular_cubic_argmax() { return -(Real(1) + Real(2) * sqrt(Real(7))) / Real(9); }

}  // namespace

TEST_CASE("projector norm: quadratic and cubic fixtures") {
  const auto quad = build(regular_nodes<Real>(2));
  const auto nq = projector_norm(quad);
  CHECK(abs(nq.value - R("1.25")) < R("1e-30"));
  REQUIRE(nq.witnesses.size() == 2);
  CHECK(abs(nq.witnesses[0].x + R("0.5")) < R("1e-30"));
  CHECK(abs(nq.witnesses[1].x - R("0.5")) < R("1e-30"));

  const auto cheb = build(chebyshev_nodes<Real>(3));
  const auto nc = projector_norm(cheb);
  CHECK(abs(nc.value - sqrt(Real(2) + sqrt(Real(2)))) < R("1e-50"));

  const auto reg = build(regular_nodes<Real>(3));
  const auto nr = projector_norm(reg);
  CHECK(abs(nr.value - regular_cubic_norm()) < R("1e-50"));
  CHECK(abs(nr.value - R("1.63113030")) < R("1e-8"));
  REQUIRE(nr.witnesses.size() == 2);
  CHECK(abs(nr.witnesses[0].x - regular_cubic_argmax()) < R("1e-40"));
  CHECK(abs(nr.witnesses[0].x + R("0.699055")) < R("1e-5"));

  // quartic equispaced: printed value 2.207824 (truncated 6 decimals)
  const auto reg4 = build(regular_nodes<Real>(4));
  const auto n4 = projector_norm(reg4);
  CHECK(n4.value >= R("2.207824"));
  CHECK(n4.value < R("2.207825"));

  // every witness carries coordinates summing in absolute value to the norm
  for (const auto& basis : {quad, cheb, reg, reg4}) {
    const auto n = projector_norm(basis);
    for (const auto& w : n.witnesses) {
      Real s(0);
      for (Eigen::Index j = 0; j < w.coords.size(); ++j) s += abs(w.coords[j]);
      CHECK(abs(s - n.value) < R("1e-18"));
    }
  }
}

TEST_CASE("quartic chebyshev norm closed form") {
  const auto b = build(chebyshev_nodes<Real>(4));
  const auto n = projector_norm(b);
  const Real expect = (Real(1) + Real(4) * sqrt(Real(5))) / Real(5);
  CHECK(abs(n.value - expect) <= abs(expect) * R("1e-9"));
  CHECK(abs(n.value - R("1.988854")) < R("1e-6"));
}

TEST_CASE("norm survives a numerically even middle piece") {
  // Bitwise-symmetric six-node set: the middle Lebesgue piece is even up to
  // rounding residue, so its stored top coefficients sit at the noise floor
  // and its derivative starts with a residue leading term. A Sturm chain
  // built without clipping that head divides by the residue, yields an
  // invalid sequence (negative root counts), and drops the interior maximum
  // at x = 0, under-reporting the norm as 1.6355.
  const Real b2 = R("0.548623726498519535254039918337");
  const Real b3 = R("0.774544381495210450930834105221");
  const auto basis = build(validate<Real>({Real(-1), -b3, -b2, b2, b3, Real(1)}));
  const auto n = projector_norm(basis);
  CHECK(abs(n.value - R("6.0333864513732777361")) < R("1e-15"));
  REQUIRE(n.witnesses.size() == 1);
  CHECK(abs(n.witnesses[0].x) < R("1e-60"));
}

TEST_CASE("absorption coefficient fixtures") {
  const auto lin = build(regular_nodes<Real>(1));
  const auto xl = absorption_coefficient(lin);
  CHECK(xl.value == Real(1));
  CHECK(xl.contained);

  const auto quad = build(regular_nodes<Real>(2));
  const auto xq = absorption_coefficient(quad);
  CHECK(abs(xq.value - Real(11) / Real(8)) < R("1e-30"));
  CHECK_FALSE(xq.contained);

  const auto cheb = build(chebyshev_nodes<Real>(3));
  const auto xc = absorption_coefficient(cheb);
  CHECK(xc.value >= R("2.496605"));
  CHECK(xc.value < R("2.496606"));

  const auto reg = build(regular_nodes<Real>(3));
  const auto xr = absorption_coefficient(reg);
  CHECK(abs(xr.value - (Real(2) * regular_cubic_norm() - Real(1))) < R("1e-30"));
  CHECK(abs(xr.value - R("2.26226061")) < R("1e-8"));
}

TEST_CASE("one-point certificates") {
  // equispaced cubic: 1-point at the exact interior maximizer; the unique
  // negative coordinate belongs to the third ascending node (+1/3)
  const auto reg = build(regular_nodes<Real>(3));
  const auto cr = find_one_point(reg);
  REQUIRE(cr.exists);
  CHECK(abs(*cr.x_star - regular_cubic_argmax()) < R("1e-40"));
  CHECK(abs(*cr.x_star + R("0.699055")) < R("1e-5"));
  CHECK(*cr.negative_index == 3);

  const auto opt = build(minimal_cubic_nodes());
  const auto co = find_one_point(opt);
  REQUIRE(co.exists);
  CHECK(abs(*co.x_star + R("0.733172")) < R("1e-5"));
  CHECK(*co.negative_index == 3);

  const auto cheb = build(chebyshev_nodes<Real>(3));
  CHECK_FALSE(find_one_point(cheb).exists);

  // quadratic: first maximizer is x = -1/2 with the negative entry at node +1
  const auto quad = build(regular_nodes<Real>(2));
  const auto cq = find_one_point(quad);
  REQUIRE(cq.exists);
  CHECK(abs(*cq.x_star + R("0.5")) < R("1e-30"));
  CHECK(*cq.negative_index == 3);
}

TEST_CASE("inequality reports") {
  const auto cheb = build(chebyshev_nodes<Real>(3));
  const auto rc = inequality_report(cheb);
  const Real norm = sqrt(Real(2) + sqrt(Real(2)));
  CHECK(abs(rc.lower - (Real(2) * (norm - Real(1)) / Real(3) + Real(1))) < R("1e-50"));
  CHECK(abs(rc.lower - R("1.5651727")) < R("1e-7"));
  CHECK(abs(rc.upper - (Real(2) * norm - Real(1))) < R("1e-50"));
  CHECK(abs(rc.upper - R("2.695518")) < R("1e-6"));
  CHECK(rc.xi < rc.upper - R("0.19"));
  CHECK_FALSE(rc.right_equality);
  REQUIRE(rc.ratio.has_value());

  const auto reg = build(regular_nodes<Real>(3));
  const auto rr = inequality_report(reg);
  CHECK(rr.right_equality);
  CHECK(abs(rr.xi - rr.upper) < R("1e-30"));  // achieved residual

  const auto opt = build(minimal_cubic_nodes());
  const auto ro = inequality_report(opt);
  CHECK(ro.right_equality);
  CHECK(abs(ro.upper - R("1.845839")) < R("1e-5"));
  CHECK(abs(ro.lower - R("1.281946")) < R("1e-5"));

  // quadratic case always attains the upper bound, ratio = d/2 = 3/2
  const auto quad = build(regular_nodes<Real>(2));
  const auto rq = inequality_report(quad);
  CHECK(rq.right_equality);
  REQUIRE(rq.ratio.has_value());
  CHECK(abs(*rq.ratio - R("1.5")) < R("1e-30"));

  // k=1: norm is exactly 1, ratio absent, bounds collapse
  const auto lin = build(regular_nodes<Real>(1));
  const auto rl = inequality_report(lin);
  CHECK_FALSE(rl.ratio.has_value());
  CHECK(rl.right_equality);
  CHECK(abs(rl.lower - Real(1)) < R("1e-30"));
  CHECK(abs(rl.upper - Real(1)) < R("1e-30"));
}

TEST_CASE("quadratic closed form") {
  const auto q1 = quadratic_closed_form(Real(1));
  CHECK(q1.xi == Real(11) / Real(8));
  CHECK(q1.norm == Real(5) / Real(4));

  const Real rc = Real(2) * sqrt(Real(2)) / Real(3);
  const auto q2 = quadratic_closed_form(rc);
  CHECK(abs(q2.xi - Real(11) / Real(8)) < R("1e-70"));
  CHECK(abs(q2.norm - Real(5) / Real(4)) < R("1e-70"));

  const auto q3 = quadratic_closed_form(R("0.8"));
  CHECK(abs(q3.xi - R("2.6875")) < R("1e-70"));
  CHECK(abs(q3.norm - R("2.125")) < R("1e-70"));

  const auto q4 = quadratic_closed_form(R("0.5"));
  CHECK(abs(q4.xi - Real(10)) < R("1e-70"));
  CHECK(abs(q4.norm - Real(7)) < R("1e-70"));

  CHECK_THROWS_AS(quadratic_closed_form(Real(0)), InvalidRadius);
  CHECK_THROWS_AS(quadratic_closed_form(R("-0.1")), InvalidRadius);
  CHECK_THROWS_AS(quadratic_closed_form(R("1.1")), InvalidRadius);

  // cross-check the closed forms against the analysis pipeline
  for (const char* rs : {"0.8", "0.95", "1.0"}) {
    const Real r(rs);
    const auto b = build(validate<Real>({-r, Real(0), r}));
    const auto q = quadratic_closed_form(r);
    CHECK(abs(projector_norm(b).value - q.norm) < R("1e-30"));
    CHECK(abs(absorption_coefficient(b).value - q.xi) < R("1e-30"));
    // the quadratic family always attains the upper bound
    CHECK(abs(q.xi - (Real(3) * q.norm - Real(1)) / Real(2)) < R("1e-70"));
  }
}

TEST_CASE("norm via barycentric grid") {
  const auto lin = build(regular_nodes<Real>(1));
  CHECK(norm_via_barycentric(lin, 17) == Real(1));

  const auto quad = build(regular_nodes<Real>(2));
  const Real vq = norm_via_barycentric(quad, 100000);
  CHECK(abs(vq - R("1.25")) < R("1e-8"));
  CHECK(vq <= projector_norm(quad).value + R("1e-15"));

  const auto cheb = build(chebyshev_nodes<Real>(3));
  const Real vc = norm_via_barycentric(cheb, 1000000);
  CHECK(abs(vc - R("1.847759")) < R("1e-6"));
  const Real exact = projector_norm(cheb).value;
  CHECK(vc <= exact + R("1e-15"));
  CHECK(vc >= exact - R("1e-10"));

  CHECK_THROWS_AS(norm_via_barycentric(quad, 1), InputError);
}

TEST_CASE("grid oracle stays within a 1e-6 window for k <= 6") {
  std::mt19937_64 gen(31337u);
  for (int k = 2; k <= 6; ++k) {
    const auto b = build(random_nodes(gen, k));
    const Real exact = projector_norm(b).value;
    const Real grid = norm_via_barycentric(b, 200000);
    CHECK(grid <= exact + R("1e-15"));
    CHECK(grid >= exact - R("1e-6"));
  }
}

TEST_CASE("randomized sandwich and certificate properties") {
  std::mt19937_64 gen(808u);
  for (int k = 2; k <= 8; ++k) {
    for (int trial = 0; trial < 8; ++trial) {
      const auto b = build(random_nodes(gen, k));
      const auto rep = analyze(b);
      const int d = k + 1;

      CHECK(rep.norm.value >= Real(1));
      CHECK(rep.xi.value >= Real(1));
      CHECK(rep.inequalities.lower <= rep.xi.value + R("1e-12"));
      CHECK(rep.xi.value <= rep.inequalities.upper + R("1e-12"));
      CHECK((rep.xi.value == Real(1)) == rep.xi.contained);
      CHECK(rep.xi.worst_index >= 1);
      CHECK(rep.xi.worst_index <= d);

      if (rep.norm.value > Real(1) + R("1e-10")) {
        REQUIRE(rep.inequalities.ratio.has_value());
        const Real lo_ratio = (Real(1) + Real(1) / Real(d - 1)) / Real(2);
        CHECK(*rep.inequalities.ratio >= lo_ratio - R("1e-12"));
        CHECK(*rep.inequalities.ratio <= Real(d) / Real(2) + R("1e-12"));
      }

      if (rep.one_point.exists) {
        CHECK(abs(rep.xi.value - rep.inequalities.upper) <= R("1e-10"));
      }

      REQUIRE(!rep.norm.witnesses.empty());
      for (const auto& w : rep.norm.witnesses) {
        Real s(0);
        for (Eigen::Index j = 0; j < w.coords.size(); ++j) s += abs(w.coords[j]);
        CHECK(abs(s - rep.norm.value) < R("1e-18"));
      }
    }
  }
}
