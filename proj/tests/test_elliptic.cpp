// Tests for the genus-1 differential family: the pole-2 generator series,
// the closure of its even coefficients, the normalized one-pole
// differentials, the degree-1 cohomology reduction, the pole-lowering
// identity, and the numeric coefficient evaluation.

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qglue/elliptic.hpp"

using namespace qglue;

namespace {

const WpContext CTX = WpContext::symbolic(1, 40);

CoeffPoly C(int k) { return CTX.c_poly(k); }
QTrunc k0(const CoeffPoly& p) { return QTrunc::constant(0, p); }

}  // namespace

TEST_CASE("pole-2 generator series") {
  Laurent wp = wp_series(CTX, 5);
  REQUIRE(wp.window() == 5);
  REQUIRE(wp.coeff(-2) == QTrunc::one(0));
  REQUIRE(wp.coeff(-1).is_zero());
  REQUIRE(wp.coeff(0).is_zero());  // no constant term
  REQUIRE(wp.coeff(1).is_zero());
  REQUIRE(wp.coeff(2) == k0(C(2)));
  REQUIRE(wp.coeff(3).is_zero());  // odd coefficients vanish
  REQUIRE(wp.coeff(4) == k0(C(4)));
  REQUIRE(wp.coeff(5).is_zero());
  REQUIRE_THROWS_AS(wp.coeff(6), WindowError);
  WpContext small = WpContext::symbolic(1, 5);
  REQUIRE_THROWS_AS(wp_series(small, 6), WindowError);
}

TEST_CASE("closure of the even coefficients") {
  auto table = c_closure(12);
  const CoeffPoly c2 = C(2), c4 = C(4);
  REQUIRE(table.at("c6_t1") == (c2 * c2).scaled(Rat(1, 3)));
  REQUIRE(table.at("c8_t1") == (c2 * c4).scaled(Rat(3, 11)));
  REQUIRE(table.at("c10_t1") ==
          (c2 * c2 * c2).scaled(Rat(2, 39)) + (c4 * c4).scaled(Rat(3, 39)));

  // Independent oracle: the second-order equation f'' = 6 f^2 - 10 c2 gives
  // the recursion (2k+3)(k-2) c_{2k} = 3 sum_{m=1}^{k-2} c_{2m} c_{2(k-1-m)}.
  std::map<std::string, CoeffPoly> oracle;
  auto cval = [&](int idx) -> CoeffPoly {
    return idx <= 4 ? C(idx) : oracle.at(CTX.c_name(idx));
  };
  for (int k = 3; k <= 8; ++k) {
    CoeffPoly s;
    for (int m = 1; m <= k - 2; ++m) s += cval(2 * m) * cval(2 * (k - 1 - m));
    oracle.emplace(CTX.c_name(2 * k), s.scaled(Rat(3, (2 * k + 3) * (k - 2))));
  }
  REQUIRE(table.size() == oracle.size());
  for (const auto& [name, value] : oracle) REQUIRE(table.at(name) == value);

  // Substituting the table back kills the cubic-equation residual.
  WpContext wide = WpContext::symbolic(1, 16);
  Laurent wp = wp_series(wide, 16);
  Laurent dw = wp.derived();
  Laurent resid = dw * dw - (wp * wp * wp).scaled(Rat(4)) + wp.scaled(C(2).scaled(Rat(20))) +
                  Laurent::monomial(Var::z, 0, 0, C(4).scaled(Rat(28)));
  auto full = c_closure(16);
  for (int e = resid.emin(); e <= static_cast<int>(resid.window()); ++e)
    REQUIRE(resid.coeff(e).coeff(0).subst(full).is_zero());
}

TEST_CASE("normalized one-pole differentials") {
  EllDiff f2 = f_series(2, CTX, 8);
  REQUIRE(f2.n == 2);
  REQUIRE(Laurent::equal_through(f2.series, wp_series(CTX, 8), -2, 8));

  EllDiff f3 = f_series(3, CTX, 4);
  REQUIRE(f3.series.coeff(-3) == QTrunc::one(0));
  REQUIRE(f3.series.coeff(0).is_zero());
  REQUIRE(f3.series.coeff(1) == k0(-C(2)));
  REQUIRE(f3.series.coeff(3) == k0(C(4).scaled(Rat(-2))));
  // f[-3] equals -(d/dz of the pole-2 generator)/2.
  Laurent ref = wp_series(CTX, 5).derived().scaled(Rat(-1, 2));
  REQUIRE(Laurent::equal_through(f3.series, ref, -3, 4));

  for (int n = 2; n <= 12; ++n) {
    EllDiff f = f_series(n, CTX, 6);
    REQUIRE(f.series.coeff(0).is_zero());   // normalization: no constant
    REQUIRE(f.series.residue().is_zero());  // zero residue at the pole
  }
  REQUIRE_THROWS_AS(f_series(1, CTX, 4), UsageError);
}

TEST_CASE("repeated-derivative closed form") {
  // f[-n] = (-1)^n d^{n-2}f[-2]/dz^{n-2} / (n-1)! - c_{n-2}/(n-1).
  const int K = 14;
  Laurent d = wp_series(CTX, K);
  Rat fact(1);
  for (int n = 3; n <= 8; ++n) {
    d = d.derived();
    fact *= Rat(n - 1);
    const Rat sign = n % 2 == 0 ? Rat(1) : Rat(-1);
    Laurent rhs = d.scaled(sign / fact) -
                  Laurent::monomial(Var::z, 0, 0, C(n - 2).scaled(Rat(1, n - 1)));
    Laurent lhs = f_series(n, CTX, K - (n - 2)).series;
    REQUIRE(Laurent::equal_through(lhs, rhs, -n, K - n + 2));
  }
}

TEST_CASE("derivative ladder") {
  // d f[-n]/dz + n f[-n-1] + c_{n-1} = 0 for 2 <= n <= 12.
  for (int n = 2; n <= 12; ++n) {
    Laurent sum = f_series(n, CTX, 9).series.derived() +
                  f_series(n + 1, CTX, 8).series.scaled(Rat(n)) +
                  Laurent::monomial(Var::z, 0, 0, C(n - 1));
    REQUIRE(sum.is_zero());
    REQUIRE(sum.window() == 8);
  }
}

TEST_CASE("cohomology reduction") {
  DiffCombo w(0);
  w.add(DiffLabel::omega(4), CoeffPoly(Rat(1)));
  CohomClass want(0);
  want.add(DiffLabel::alpha(0), C(2).scaled(Rat(-1, 3)));
  REQUIRE(h1_reduce_ell(w, CTX) == want);

  // Basis elements are fixed.
  DiffCombo basis(0);
  basis.add(DiffLabel::omega(2), CoeffPoly(Rat(5)));
  basis.add(DiffLabel::alpha(0), C(4));
  REQUIRE(h1_reduce_ell(basis, CTX) == basis);

  // Linear, and odd-index coefficients kill their images.
  DiffCombo x(0), y(0);
  x.add(DiffLabel::omega(5), CoeffPoly(Rat(2)));
  x.add(DiffLabel::omega(2), CoeffPoly(Rat(1)));
  y.add(DiffLabel::omega(3), C(2));
  y.add(DiffLabel::alpha(0), CoeffPoly(Rat(7)));
  CoeffPoly lam(sym("lam"));
  REQUIRE(h1_reduce_ell(x.scaled(lam) + y, CTX) ==
          h1_reduce_ell(x, CTX).scaled(lam) + h1_reduce_ell(y, CTX));

  // Idempotent on reduced classes.
  CohomClass once = h1_reduce_ell(x + y, CTX);
  REQUIRE(h1_reduce_ell(once, CTX) == once);

  DiffCombo bad(0);
  bad.add(DiffLabel::alpha(1), CoeffPoly(Rat(1)));
  REQUIRE_THROWS_AS(h1_reduce_ell(bad, CTX), UsageError);
}

TEST_CASE("pole-lowering identity") {
  // n=1: d f[-2] + 2 f[-3] = 0 (the matching coefficient c_1 vanishes).
  IdentityReport r1 = lemma_ii_ell(1, 10);
  REQUIRE(r1.holds);
  REQUIRE(r1.residual.is_zero());
  // n=2: d f[-3] + 3 f[-4] + c2 = 0, and the constant term is load-bearing.
  REQUIRE(lemma_ii_ell(2, 10).holds);
  Laurent no_const = f_series(3, CTX, 10).series.derived() +
                     f_series(4, CTX, 9).series.scaled(Rat(3));
  REQUIRE_FALSE(no_const.is_zero());

  for (int n = 1; n <= 10; ++n) REQUIRE(lemma_ii_ell(n, 30).holds);
  REQUIRE_THROWS_AS(lemma_ii_ell(8, 6), InsufficientWindowError);
}

TEST_CASE("numeric coefficient evaluation") {
  const double tol = 1e-10;
  const std::complex<double> I(0.0, 1.0);
  // Square-lattice symmetry kills the weight-6 sum.
  REQUIRE(std::abs(numeric_c(I, 4)) < tol);
  // Hexagonal symmetry kills the weight-4 sum.
  const std::complex<double> rho(-0.5, std::sqrt(3.0) / 2.0);
  REQUIRE(std::abs(numeric_c(rho, 2)) < tol);

  // Closure identities hold numerically.
  const std::vector<std::complex<double>> taus = {
      I, 2.0 * I, {0.5, 1.0}, {-0.3, 0.9}, {0.25, 1.5}};
  for (const auto& tau : taus) {
    const auto c2 = numeric_c(tau, 2), c4 = numeric_c(tau, 4);
    REQUIRE(std::abs(numeric_c(tau, 6) - c2 * c2 / 3.0) < tol);
    REQUIRE(std::abs(numeric_c(tau, 8) - 3.0 * c2 * c4 / 11.0) < tol);
  }

  // Scale anchor: at tau = i the weight-4 value is Gamma(1/4)^8/(320 pi^2).
  const double gamma_quarter = 3.6256099082219083;
  const double anchor =
      std::pow(gamma_quarter, 8) / (320.0 * std::pow(std::numbers::pi, 2));
  REQUIRE(std::abs(numeric_c(I, 2) - anchor) < 1e-6);

  REQUIRE_THROWS_AS(numeric_c(std::complex<double>(0.5, 0.0), 2), UsageError);
  REQUIRE_THROWS_AS(numeric_c(std::complex<double>(0.0, -1.0), 2), UsageError);
  REQUIRE_THROWS_AS(numeric_c(I, 3), UsageError);
  REQUIRE_THROWS_AS(numeric_c(I, 0), UsageError);

  // Numeric contexts store values and reject the symbolic accessors.
  WpContext nc = WpContext::numeric_at(I, 8);
  REQUIRE(std::abs(nc.c_value(4)) < tol);
  REQUIRE(std::abs(nc.c_value(5)) == 0.0);
  REQUIRE_THROWS_AS(nc.c_value(10), WindowError);
  REQUIRE_THROWS_AS(nc.c_poly(2), UsageError);
  REQUIRE_THROWS_AS(wp_series(nc, 4), UsageError);
  REQUIRE_THROWS_AS(CTX.c_value(2), UsageError);
}
