// Node algebra: canonical forms on R[[x1,x2]]/(x1 x2 - q), boundary
// expansions, differentials, and the determinant line of the node complex.

#include <catch2/catch_amalgamated.hpp>

#include <qglue/node.hpp>
#include <qglue/rng.hpp>

using namespace qglue;

namespace {

const NodeContext CTX{4, 12};

QTrunc qr(long num, long den = 1) { return QTrunc::constant(CTX.N, CoeffPoly(Rat(num, den))); }
QTrunc qone() { return QTrunc::one(CTX.N); }

NodeElement x1(const NodeContext& ctx = CTX, int d = 1) {
  return NodeElement::monomial(ctx, 1, d, QTrunc::one(ctx.N));
}
NodeElement x2(const NodeContext& ctx = CTX, int d = 1) {
  return NodeElement::monomial(ctx, 2, d, QTrunc::one(ctx.N));
}

NodeElement random_element(SplitMix64& rng, const NodeContext& ctx, int max_deg,
                           bool unit = false) {
  NodeElement v(ctx);
  QTrunc c0(ctx.N);
  c0.set_coeff(0, CoeffPoly(unit ? Rat(rng.range(0, 1) ? 1 : 2) : rng.small_rat()));
  if (rng.range(0, 1)) c0.add_coeff(1, CoeffPoly(rng.small_rat()));
  v.set_c0(c0);
  for (int side = 1; side <= 2; ++side)
    for (int d = 1; d <= max_deg; ++d) {
      if (rng.range(0, 2) == 0) continue;
      int qpow = static_cast<int>(rng.range(0, 1));
      v.add_tail(side, d, QTrunc::q_power(ctx.N, qpow, CoeffPoly(rng.small_rat())));
    }
  return v;
}

}  // namespace

TEST_CASE("canonical products contract x1 x2 into q") {
  REQUIRE((x1() * x2()) == NodeElement::constant(CTX, QTrunc::q_power(CTX.N, 1)));
  // x1^2 * x2 = q x1,  x1 * x2^3 = q x2^2
  REQUIRE((x1(CTX, 2) * x2()) == NodeElement::monomial(CTX, 1, 1, QTrunc::q_power(CTX.N, 1)));
  REQUIRE((x1() * x2(CTX, 3)) == NodeElement::monomial(CTX, 2, 2, QTrunc::q_power(CTX.N, 1)));

  NodeElement u = NodeElement::one(CTX) + x1();
  NodeElement v = NodeElement::one(CTX) + x2();
  NodeElement p = u * v;
  REQUIRE(p.c0() == qone() + QTrunc::q_power(CTX.N, 1));
  REQUIRE(p.a_tail(1) == qone());
  REQUIRE(p.b_tail(1) == qone());
}

TEST_CASE("node products are commutative and associative") {
  SplitMix64 rng(555);
  for (int trial = 0; trial < 20; ++trial) {
    NodeElement a = random_element(rng, CTX, 3);
    NodeElement b = random_element(rng, CTX, 3);
    NodeElement c = random_element(rng, CTX, 3);
    REQUIRE((a * b) == (b * a));
    REQUIRE(((a * b) * c) == (a * (b * c)));
    REQUIRE((a * (b + c)) == (a * b + a * c));
  }
}

TEST_CASE("boundary expansion is a ring homomorphism") {
  SplitMix64 rng(777);
  for (int trial = 0; trial < 25; ++trial) {
    NodeElement a = random_element(rng, CTX, 3);
    NodeElement b = random_element(rng, CTX, 3);
    for (int side = 1; side <= 2; ++side) {
      Laurent lhs = (a * b).boundary(side);
      Laurent rhs = a.boundary(side) * b.boundary(side);
      REQUIRE(Laurent::equal_through(lhs, rhs, -CTX.N, 7));
    }
  }
}

TEST_CASE("boundary expansion shifts opposite tails into polar q-terms") {
  NodeElement v(CTX);
  v.set_c0(qr(2));
  v.add_tail(1, 2, qr(5));
  v.add_tail(2, 1, qr(3));
  Laurent p1 = v.boundary(1);
  REQUIRE(p1.var() == Var::x1);
  REQUIRE(p1.coeff(0) == qr(2));
  REQUIRE(p1.coeff(2) == qr(5));
  REQUIRE(p1.coeff(-1) == QTrunc::q_power(CTX.N, 1, CoeffPoly(Rat(3))));
  Laurent p2 = v.boundary(2);
  REQUIRE(p2.coeff(1) == qr(3));
  REQUIRE(p2.coeff(-2) == QTrunc::q_power(CTX.N, 2, CoeffPoly(Rat(5))));
}

TEST_CASE("degree truncation lowers the staircase and reads beyond it throw") {
  NodeContext tight{4, 3};
  NodeElement a = NodeElement::one(tight) + x1(tight, 2);
  NodeElement b = NodeElement::one(tight) + x1(tight, 2);
  NodeElement p = a * b;  // x1^4 would overflow K=3
  REQUIRE(p.staircase() == 3);
  REQUIRE(p.at(1, 2, 0) == CoeffPoly(Rat(2)));
  REQUIRE_THROWS_AS(p.at(1, 3, 1), WindowError);

  // The kept staircase region matches the untruncated computation.
  NodeElement A = NodeElement::one(CTX) + x1(CTX, 2);
  NodeElement P = A * A;
  REQUIRE(p.at(1, 1, 0) == P.at(1, 1, 0));
  REQUIRE(p.at(1, 2, 1) == P.at(1, 2, 1));
  REQUIRE(p.at(2, 1, 2) == P.at(2, 1, 2));
}

TEST_CASE("node inversion inverts units") {
  NodeElement u = NodeElement::one(CTX) + x1();
  NodeElement v = u.inverted();
  for (int i = 1; i <= 4; ++i)
    REQUIRE(v.at(1, i, 0) == CoeffPoly(Rat(i % 2 ? -1 : 1)));
  REQUIRE(NodeElement::equal_on_staircase(u * v, NodeElement::one(CTX), CTX.K));

  SplitMix64 rng(2024);
  for (int trial = 0; trial < 12; ++trial) {
    NodeElement w = random_element(rng, CTX, 3, /*unit=*/true);
    REQUIRE(NodeElement::equal_on_staircase(w * w.inverted(), NodeElement::one(CTX), CTX.K));
  }

  NodeElement eps_unit = NodeElement::one(CTX) +
                         NodeElement::monomial(CTX, 1, 2, QTrunc::constant(CTX.N, CoeffPoly(nilpotent("eps"))));
  NodeElement ei = eps_unit.inverted();
  REQUIRE(NodeElement::equal_on_staircase(eps_unit * ei, NodeElement::one(CTX), CTX.K));
  REQUIRE_THROWS_AS(x1().inverted(), NonUnitError);
}

TEST_CASE("boundary pair reconstructs the element") {
  SplitMix64 rng(909);
  for (int trial = 0; trial < 15; ++trial) {
    NodeElement v = random_element(rng, CTX, 3);
    auto back = iota_preimage(v.boundary(1), v.boundary(2), CTX);
    REQUIRE(back.has_value());
    REQUIRE(NodeElement::equal_on_staircase(*back, v, CTX.K));
  }
}

TEST_CASE("inconsistent boundary pairs are rejected") {
  // (1, 0): constants disagree.
  Laurent one_series = Laurent::monomial(Var::x1, CTX.N, 0, CoeffPoly(Rat(1)));
  Laurent zero_series = Laurent::zero(Var::x2, CTX.N);
  REQUIRE_FALSE(iota_preimage(one_series, zero_series, CTX).has_value());

  // Polar part inconsistent with the opposite tail.
  NodeElement v(CTX);
  v.set_c0(qr(1));
  v.add_tail(2, 1, qr(3));
  Laurent p1 = v.boundary(1);
  Laurent p2 = v.boundary(2);
  Laurent tampered(Var::x1, CTX.N, p1.window());
  tampered.add_term(0, qr(1));
  tampered.add_term(-1, QTrunc::q_power(CTX.N, 1, CoeffPoly(Rat(4))));  // should be 3q
  REQUIRE_FALSE(iota_preimage(tampered, p2, CTX).has_value());

  // Polar decay deeper than the q-order cannot come from any element.
  Laurent deep(Var::x1, CTX.N, Laurent::KINF);
  deep.add_term(0, qr(1));
  deep.add_term(-(CTX.N + 1), qr(1));
  Laurent flat = Laurent::monomial(Var::x2, CTX.N, 0, CoeffPoly(Rat(1)));
  REQUIRE_FALSE(iota_preimage(deep, flat, CTX).has_value());
}

TEST_CASE("differential normalization rewrites deep monomials") {
  // x1^2 dx2 = -q dx1
  NodeElement P(CTX), Q(CTX);
  Q.add_tail(1, 2, qone());
  NodeDiff w = normalize_diff(P, Q);
  REQUIRE(w.s.is_zero());
  REQUIRE(w.f.c0() == -QTrunc::q_power(CTX.N, 1));
  REQUIRE(w.g.is_zero());

  // x2 dx1 = -x1 dx2
  NodeElement P2(CTX), Q2(CTX);
  P2.add_tail(2, 1, qone());
  NodeDiff w2 = normalize_diff(P2, Q2);
  REQUIRE(w2.s == -qone());
  REQUIRE(w2.f.is_zero());
  REQUIRE(w2.g.is_zero());
}

TEST_CASE("exterior derivative satisfies the product rule after normalization") {
  SplitMix64 rng(1212);
  for (int trial = 0; trial < 12; ++trial) {
    NodeElement u = random_element(rng, CTX, 3);
    NodeElement v = random_element(rng, CTX, 3);
    NodeDiff lhs = d_node(u * v);
    auto [Pu, Qu] = d_raw(u);
    auto [Pv, Qv] = d_raw(v);
    NodeDiff rhs = normalize_diff(u * Pv + v * Pu, u * Qv + v * Qu);
    REQUIRE(lhs.s == rhs.s);
    REQUIRE(NodeElement::equal_on_staircase(lhs.f, rhs.f, CTX.K - 4));
    REQUIRE(NodeElement::equal_on_staircase(lhs.g, rhs.g, CTX.K - 4));
  }
}

TEST_CASE("differentials map into the dualizing module") {
  // dx1 = -x1 e, dx2 = x2 e, x1 dx2 = q e.
  NodeDiff dx1(CTX);
  dx1.f = NodeElement::one(CTX);
  REQUIRE(to_omega(dx1) == -x1());
  NodeDiff dx2(CTX);
  dx2.g = NodeElement::one(CTX);
  REQUIRE(to_omega(dx2) == x2());
  NodeDiff gen(CTX);
  gen.s = qone();
  REQUIRE(to_omega(gen) == NodeElement::constant(CTX, QTrunc::q_power(CTX.N, 1)));
}

TEST_CASE("residues on the two branches cancel") {
  SplitMix64 rng(333);
  for (int trial = 0; trial < 10; ++trial) {
    NodeElement A = random_element(rng, CTX, 3);
    // omega = A e; on side 1, e = -dx1/x1, on side 2, e = dx2/x2.
    QTrunc res1 = -(A.boundary(1).shifted_exp(-1)).residue();
    QTrunc res2 = (A.boundary(2).shifted_exp(-1)).residue();
    REQUIRE((res1 + res2).is_zero());
    REQUIRE(res2 == A.c0());
  }
}

TEST_CASE("determinant of the node complex") {
  REQUIRE(theta_det(CTX) == QTrunc::q_power(CTX.N, 1));
  NodeContext flat{0, 12};
  REQUIRE(theta_det(flat).is_zero());  // N = 0: q = 0 on the base
}

TEST_CASE("determinant trivialization rescales by the inverse unit") {
  QTrunc th = theta_scaling(CTX);
  auto [lam, lam_inv] = unit_pair("lam");
  REQUIRE(th == QTrunc::constant(CTX.N, CoeffPoly(lam_inv)));
  REQUIRE((th * QTrunc::constant(CTX.N, CoeffPoly(lam))) == QTrunc::one(CTX.N));
}
