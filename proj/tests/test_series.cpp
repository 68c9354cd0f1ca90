// Series layer: exact rationals, symbolic coefficient polynomials, truncated
// q-polynomials, and windowed Laurent series.

#include <catch2/catch_amalgamated.hpp>

#include <qglue/laurent.hpp>
#include <qglue/rng.hpp>

using namespace qglue;

namespace {

const int N = 4;

QTrunc qc(const CoeffPoly& c0) { return QTrunc::constant(N, c0); }
QTrunc qr(long num, long den = 1) { return qc(CoeffPoly(Rat(num, den))); }

// Independent convolution formula used as an oracle for Laurent products.
QTrunc conv_coeff(const Laurent& a, const Laurent& b, int e) {
  QTrunc s(a.N());
  if (a.is_zero() || b.is_zero()) return s;
  for (int i = a.emin(); i <= a.emax_stored(); ++i) s += a.coeff(i) * b.coeff(e - i);
  return s;
}

Laurent random_poly(SplitMix64& rng, Var v, int lo, int hi, bool with_symbol) {
  Laurent r(v, N, Laurent::KINF);
  Sym rsym = sym("r");
  for (int e = lo; e <= hi; ++e) {
    if (rng.range(0, 2) == 0) continue;
    CoeffPoly c(rng.small_rat());
    if (with_symbol && rng.range(0, 3) == 0) c = c * CoeffPoly(rsym);
    int qpow = static_cast<int>(rng.range(0, 2));
    r.add_term(e, QTrunc::q_power(N, qpow, c));
  }
  return r;
}

}  // namespace

TEST_CASE("rational arithmetic is exact") {
  Rat a(1, 3), b(1, 6);
  REQUIRE(a + b == Rat(1, 2));
  REQUIRE(rat_to_string(Rat(-4, 6)) == "-2/3");
  REQUIRE(binomial(7, 3) == Rat(35));
  REQUIRE(binomial(3, 5) == Rat(0));
}

TEST_CASE("nilpotent symbols square to zero") {
  CoeffPoly e1(nilpotent("eps1"));
  REQUIRE((e1 * e1).is_zero());
  CoeffPoly mixed = (CoeffPoly(Rat(1)) + e1) * (CoeffPoly(Rat(1)) + e1);
  REQUIRE(mixed == CoeffPoly(Rat(1)) + e1.scaled(Rat(2)));
}

TEST_CASE("unit pair symbols cancel") {
  auto [lam, lam_inv] = unit_pair("lam");
  CoeffPoly p = CoeffPoly(lam) * CoeffPoly(lam_inv);
  REQUIRE(p == CoeffPoly(Rat(1)));
  CoeffPoly p2 = CoeffPoly::term(lam, 3) * CoeffPoly::term(lam_inv, 1);
  REQUIRE(p2 == CoeffPoly::term(lam, 2));
}

TEST_CASE("coefficient polynomials print in canonical order") {
  Sym r = sym("r"), s = sym("s");
  CoeffPoly p = CoeffPoly::term(r, 1) + CoeffPoly::term(s, 1) + CoeffPoly::term(r, 2);
  // expanded-name order: r < r^2 < r*s-like < s
  REQUIRE(p.to_string() == "r + r^2 + s");
}

TEST_CASE("coefficient substitution") {
  Sym c2 = sym("c2"), c4 = sym("c4");
  CoeffPoly p = CoeffPoly(c4) - CoeffPoly::term(c2, 2).scaled(Rat(1, 3));
  std::map<std::string, CoeffPoly> rep{{"c4", CoeffPoly::term(c2, 2).scaled(Rat(1, 3))}};
  REQUIRE(p.subst(rep).is_zero());
}

TEST_CASE("q-polynomials truncate above the fixed order") {
  QTrunc a = QTrunc::q_power(N, 3);
  QTrunc b = QTrunc::q_power(N, 2);
  REQUIRE((a * b).is_zero());
  REQUIRE((a * a).is_zero());
  QTrunc c = qr(1) + QTrunc::q_power(N, 1);
  REQUIRE((c * c).coeff(2) == CoeffPoly(Rat(1)));
}

TEST_CASE("q-polynomial inversion by terminating geometric series") {
  QTrunc u = qr(1) + QTrunc::q_power(N, 1);
  QTrunc v = u.invert();
  for (int n = 0; n <= N; ++n) REQUIRE(v.coeff(n) == CoeffPoly(Rat(n % 2 == 0 ? 1 : -1)));
  REQUIRE((u * v) == QTrunc::one(N));

  QTrunc w = qr(2) + QTrunc::q_power(N, 1, CoeffPoly(sym("r"))) +
             qc(CoeffPoly(nilpotent("eps1")));
  REQUIRE((w * w.invert()) == QTrunc::one(N));
}

TEST_CASE("q-polynomial inversion factors unit-pair symbols") {
  auto [lam, lam_inv] = unit_pair("lam");
  QTrunc u = (qr(1) + QTrunc::q_power(N, 1)).scaled(CoeffPoly(lam));
  QTrunc v = u.invert();
  REQUIRE((u * v) == QTrunc::one(N));
  REQUIRE(v.coeff(0) == CoeffPoly(lam_inv));

  QTrunc lone = qc(CoeffPoly::term(lam, 2)).scaled(Rat(1, 2));
  REQUIRE((lone * lone.invert()) == QTrunc::one(N));
}

TEST_CASE("non-units are rejected") {
  REQUIRE_THROWS_AS(QTrunc::q_power(N, 1).invert(), NonUnitError);
  auto [lam, lam_inv] = unit_pair("lam");
  QTrunc bad = qc(CoeffPoly(lam) + CoeffPoly(lam_inv));
  REQUIRE_THROWS_AS(bad.invert(), NonUnitError);
  QTrunc bad2 = qr(1) + qc(CoeffPoly(sym("r")));  // free symbol: not nilpotent
  REQUIRE_THROWS_AS(bad2.invert(), NonUnitError);
}

TEST_CASE("window reads beyond K throw") {
  Laurent a(Var::x1, N, 3);
  a.add_term(-1, qr(1));
  a.add_term(2, qr(5));
  REQUIRE(a.coeff(3).is_zero());
  REQUIRE_THROWS_AS(a.coeff(4), WindowError);
}

TEST_CASE("product window follows the min rule") {
  // Both factors start at x^-1 and are known through x^3: the product is
  // known through x^2 only.
  Laurent a(Var::x1, N, 3), b(Var::x1, N, 3);
  a.add_term(-1, qr(1));
  a.add_term(1, qr(2));
  b.add_term(-1, qr(3));
  b.add_term(0, qr(1));
  Laurent p = a * b;
  REQUIRE(p.window() == 2);
  REQUIRE(p.coeff(-2) == qr(3));
  REQUIRE_THROWS_AS(p.coeff(3), WindowError);

  // Fully known times windowed: K = K_b + emin_a.
  Laurent c = Laurent::monomial(Var::x1, N, 2, CoeffPoly(Rat(1)));
  REQUIRE((c * b).window() == 5);
}

TEST_CASE("products match the convolution oracle") {
  SplitMix64 rng(20260814);
  for (int trial = 0; trial < 40; ++trial) {
    Laurent a = random_poly(rng, Var::x2, -2, 4, true);
    Laurent b = random_poly(rng, Var::x2, -3, 3, true);
    Laurent p = a * b;
    for (int e = -5; e <= 7; ++e) REQUIRE(p.coeff(e) == conv_coeff(a, b, e));
  }
}

TEST_CASE("ring identities on random series") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    Laurent a = random_poly(rng, Var::x1, -2, 3, true);
    Laurent b = random_poly(rng, Var::x1, -1, 4, true);
    Laurent c = random_poly(rng, Var::x1, 0, 3, true);
    REQUIRE((a * b) == (b * a));
    REQUIRE(((a + b) * c) == (a * c + b * c));
    REQUIRE((a * (b * c)) == ((a * b) * c));
  }
}

TEST_CASE("derivative drops the window top and kills constants") {
  Laurent a(Var::x1, N, 5);
  a.add_term(0, qr(7));
  a.add_term(3, qr(2));
  Laurent d = a.derived();
  REQUIRE(d.window() == 4);
  REQUIRE(d.coeff(2) == qr(6));
  REQUIRE(d.coeff(0).is_zero());
}

TEST_CASE("residue extracts the x^-1 coefficient and kills derivatives") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    Laurent f = random_poly(rng, Var::x1, -4, 4, true);
    REQUIRE(f.derived().residue().is_zero());
  }
  Laurent g(Var::x1, N, Laurent::KINF);
  g.add_term(-1, qr(5));
  g.add_term(1, qr(3));
  REQUIRE(g.residue() == qr(5));
}

TEST_CASE("boundary substitution x -> q/x") {
  // 1 + a*x1 + x1^2 maps to 1 + a*q*x2^-1 + q^2*x2^-2; exponents above the
  // q-order die, and the result is exact.
  Sym a = sym("a");
  Laurent f(Var::x1, N, Laurent::KINF);
  f.add_term(0, qr(1));
  f.add_term(1, qc(CoeffPoly(a)));
  f.add_term(2, qr(1));
  f.add_term(5, qr(9));  // 5 > N: vanishes
  Laurent g = f.subst_q_over_x();
  REQUIRE(g.var() == Var::x2);
  REQUIRE(g.fully_known());
  REQUIRE(g.coeff(0) == qr(1));
  REQUIRE(g.coeff(-1) == QTrunc::q_power(N, 1, CoeffPoly(a)));
  REQUIRE(g.coeff(-2) == QTrunc::q_power(N, 2));
  REQUIRE(g.coeff(-5).is_zero());

  Laurent narrow = f.truncated_window(N - 1);
  REQUIRE_THROWS_AS(narrow.subst_q_over_x(), InsufficientWindowError);
  Laurent polar(Var::x1, N, Laurent::KINF);
  polar.add_term(-1, qr(1));
  REQUIRE_THROWS_AS(polar.subst_q_over_x(), UsageError);
}

TEST_CASE("inversion inverts and propagates windows") {
  // (x^-1 + 1) known through x^5 inverts to x - x^2 + x^3 - ... through x^7.
  Laurent a(Var::x1, N, 5);
  a.add_term(-1, qr(1));
  a.add_term(0, qr(1));
  Laurent v = a.inverted();
  REQUIRE(v.window() == 7);
  for (int e = 1; e <= 7; ++e) REQUIRE(v.coeff(e) == qr(e % 2 ? 1 : -1));
  Laurent one = Laurent::monomial(Var::x1, N, 0, CoeffPoly(Rat(1)));
  REQUIRE(Laurent::equal_through(a * v, one, -3, 3));

  // Exact multi-term polynomials have no exact inverse.
  Laurent p(Var::x1, N, Laurent::KINF);
  p.add_term(0, qr(1));
  p.add_term(1, qr(1));
  REQUIRE_THROWS_AS(p.inverted(), UsageError);
  REQUIRE_NOTHROW(p.truncated_window(6).inverted());

  // Exact monomials invert exactly.
  Laurent m = Laurent::monomial(Var::x2, N, 3, CoeffPoly(Rat(2)));
  Laurent mi = m.inverted();
  REQUIRE(mi.fully_known());
  REQUIRE(mi.coeff(-3) == qr(1, 2));
}

TEST_CASE("random windowed units invert to the identity") {
  SplitMix64 rng(4242);
  for (int trial = 0; trial < 30; ++trial) {
    Laurent u(Var::x2, N, 6);
    int e0 = static_cast<int>(rng.range(-2, 1));
    u.add_term(e0, qr(rng.range(0, 1) ? 1 : 2));
    for (int e = e0 + 1; e <= 4; ++e)
      if (rng.range(0, 1)) u.add_term(e, qc(CoeffPoly(rng.small_rat())));
    Laurent v = u.inverted();
    Laurent prod = u * v;
    Laurent one = Laurent::monomial(Var::x2, N, 0, CoeffPoly(Rat(1)));
    REQUIRE(Laurent::equal_through(prod, one, -2, static_cast<int>(prod.window())));
  }
}

TEST_CASE("composition substitutes series with unit linear term") {
  // f = x^-1 + x composed with u = x + x^2:
  // 1/(x+x^2) = x^-1 - 1 + x - x^2 + ...
  Laurent f(Var::x1, N, Laurent::KINF);
  f.add_term(-1, qr(1));
  f.add_term(1, qr(1));
  Laurent u(Var::x1, N, 8);
  u.add_term(1, qr(1));
  u.add_term(2, qr(1));
  Laurent g = f.composed(u);
  REQUIRE(g.coeff(-1) == qr(1));
  REQUIRE(g.coeff(0) == qr(-1));
  REQUIRE(g.coeff(1) == qr(2));   // 1 from 1/u, 1 from u
  REQUIRE(g.coeff(2) == qr(0));   // -1 from 1/u, +1 from u

  Laurent bad(Var::x1, N, 8);
  bad.add_term(2, qr(1));
  REQUIRE_THROWS_AS(f.composed(bad), UsageError);
  Laurent bad2(Var::x1, N, 8);
  bad2.add_term(1, QTrunc::q_power(N, 1));
  REQUIRE_THROWS_AS(f.composed(bad2), NonUnitError);
}

TEST_CASE("composition is associative") {
  SplitMix64 rng(31337);
  for (int trial = 0; trial < 15; ++trial) {
    Laurent f(Var::x1, N, Laurent::KINF);
    for (int e = 0; e <= 3; ++e)
      if (rng.range(0, 1)) f.add_term(e, qc(CoeffPoly(rng.small_rat())));
    Laurent u(Var::x1, N, Laurent::KINF), v(Var::x1, N, Laurent::KINF);
    u.add_term(1, qr(1));
    v.add_term(1, qr(1));
    for (int e = 2; e <= 3; ++e) {
      if (rng.range(0, 1)) u.add_term(e, qc(CoeffPoly(rng.small_rat())));
      if (rng.range(0, 1)) v.add_term(e, qc(CoeffPoly(rng.small_rat())));
    }
    Laurent lhs = f.composed(u).composed(v);
    Laurent rhs = f.composed(u.composed(v));
    REQUIRE(Laurent::equal_through(lhs, rhs, 0, 9));
  }
}

TEST_CASE("series print deterministically") {
  Laurent f(Var::x1, N, Laurent::KINF);
  f.add_term(-1, qr(1));
  f.add_term(1, qr(-2));
  f.add_term(2, QTrunc::q_power(N, 1, CoeffPoly(sym("r"))));
  REQUIRE(f.to_string() == "x1^-1 - 2·x1 + r·q·x1^2");
}
