// Serialization layer: JSON emitters, text/LaTeX renderers, and the
// verify-suite report plumbing.

#include <catch2/catch_amalgamated.hpp>

#include <complex>

#include <qglue/qglue.hpp>

using namespace qglue;

namespace {

QTrunc qp(int N, int k, const CoeffPoly& c = CoeffPoly(Rat(1))) {
  return QTrunc::q_power(N, k, c);
}

}  // namespace

TEST_CASE("scalar terms serialize as exact decimal string pairs") {
  QTrunc c(3);
  c.set_coeff(0, CoeffPoly(Rat(1)));
  c.add_coeff(2, CoeffPoly(sym("c2_t1")).scaled(Rat(-3, 2)));
  CHECK(json_of(c).dump() ==
        R"([{"num":"1","den":"1","mono":{}},{"num":"-3","den":"2","mono":{"q":2,"c2_t1":1}}])");
}

TEST_CASE("windowed series serialize with explicit exponents") {
  Laurent f(Var::x1, 1, 5);
  f.add_term(-1, qp(1, 1, CoeffPoly(Rat(3))));
  f.add_term(2, QTrunc::one(1));
  CHECK(json_of(f).dump() ==
        R"({"var":"x1","N":1,"terms":[)"
        R"({"exp":-1,"q":[{"num":"3","den":"1","mono":{"q":1}}]},)"
        R"({"exp":2,"q":[{"num":"1","den":"1","mono":{}}]}]})");
  CHECK(json_of(Laurent::zero(Var::z, 1))["terms"].empty());
}

TEST_CASE("node elements carry their context and both tails") {
  NodeContext ctx{2, 6};
  NodeElement v = NodeElement::one(ctx);
  v.add_tail(1, 2, qp(2, 1, CoeffPoly(Rat(5))));
  v.add_tail(2, 1, QTrunc::constant(2, CoeffPoly(Rat(-1, 3))));
  ojson j = json_of(v);
  CHECK(j["N"] == 2);
  CHECK(j["K"] == 6);
  CHECK(j["a"].size() == 2);
  CHECK(j["b"].size() == 1);
  CHECK(j["a"][0].empty());  // degree 1 on the first side is zero
  CHECK(j["a"][1].dump() == R"([{"num":"5","den":"1","mono":{"q":1}}])");
  CHECK(j["b"][0].dump() == R"([{"num":"-1","den":"3","mono":{}}])");
  CHECK(json_of(GlueAut(v)).dump() == json_of(v).dump());
}

TEST_CASE("bracket tables and basis combinations serialize canonically") {
  NodeContext ctx{2, 8};
  WittElt w = witt_bracket(1, -1, ctx);
  CHECK(json_of(w).dump() == R"({"0":[{"num":"2","den":"1","mono":{"q":1}}]})");

  DiffCombo c(1);
  c.add(DiffLabel::omega(2, 2), CoeffPoly(Rat(-1)));
  c.add(DiffLabel::alpha(0), CoeffPoly(Rat(1, 2)));
  CHECK(json_of(c).dump() ==
        R"([{"basis":"al[0]","coeff":[{"num":"1","den":"2","mono":{}}]},)"
        R"({"basis":"om'[-2]","coeff":[{"num":"-1","den":"1","mono":{}}]}])");
}

TEST_CASE("period expansions emit one block per grade") {
  GluingDatum d = GluingDatum::make(SymbolicSide{GenusData::make(1, 1)},
                                    SymbolicSide{GenusData::make(1, 2)}, 3);
  PeriodExpansion P = pi_graded(d);
  ojson j = json_of(P);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 4);
  for (int g = 0; g < 4; ++g) {
    CHECK(j[g]["grade"] == g);
    CHECK(j[g]["rows"].size() == P.rows.size());
    CHECK(j[g]["cols"].size() == P.cols.size());
    REQUIRE(j[g]["entries"].size() == P.rows.size());
    CHECK(j[g]["entries"][0].size() == P.cols.size());
  }
  // Grade zero restricts to the identity on the regular generators.
  CHECK(j[0]["rows"][0] == "al[0]");
  CHECK(j[0]["entries"][0][0].dump() == R"([{"num":"1","den":"1","mono":{}}])");
}

TEST_CASE("recursion tables serialize both families in index order") {
  ojson j = json_of(genus1_ab(5));
  CHECK(j["N"] == 5);
  REQUIRE(j["a"].size() >= 2);
  CHECK(j["a"][0]["index"] == 2);
  CHECK(j["a"][0]["coeff"].empty());
  CHECK(j["a"][1]["index"] == 4);
  CHECK(j["a"][1]["coeff"].dump() == R"([{"num":"1","den":"1","mono":{"q":4,"c2_t2":1}}])");
  CHECK(json_of(std::complex<double>(0.5, -2.0)).dump() == "[0.5,-2.0]");
}

TEST_CASE("latex symbol translation recognizes the generated families") {
  CHECK(latex_sym("c4_t2") == "c_{4}(\\tau_{2})");
  CHECK(latex_sym("al1_2_0") == "a^{(1)}_{2,0}");
  CHECK(latex_sym("om2_1_3") == "b^{(2)}_{1,3}");
  CHECK(latex_sym("lam") == "\\lambda");
  CHECK(latex_sym("lam_inv") == "\\lambda^{-1}");
  CHECK(latex_sym("misc_name") == "\\mathit{misc\\_name}");
}

TEST_CASE("series renderers produce the canonical displays") {
  Laurent wp = wp_series(WpContext::symbolic(1, 6), 6);
  CHECK(latex_laurent(wp) ==
        "z^{-2} + c_{2}(\\tau_{1}) z^{2} + c_{4}(\\tau_{1}) z^{4} + c_{6}(\\tau_{1}) z^{6}");
  CHECK(text_laurent(wp) == "z^-2 + c2_t1·z^2 + c4_t1·z^4 + c6_t1·z^6");

  QTrunc c = qp(4, 4, (CoeffPoly(sym("c2_t1")) * CoeffPoly(sym("c2_t2"))).scaled(Rat(-1, 3)));
  CHECK(latex_qtrunc(c) == "-\\frac{1}{3} c_{2}(\\tau_{1}) c_{2}(\\tau_{2}) q^{4}");
}

TEST_CASE("labels, combinations, and bracket elements render exactly") {
  CHECK(latex_label(DiffLabel::alpha(0)) == "\\alpha_{0}");
  CHECK(latex_label(DiffLabel::omega(2, 2)) == "\\omega'_{-2}");

  auto [p1, p2] = genus1_pi(4);
  CHECK(latex_combo(p2) == "-q \\omega'_{-2}");
  CHECK(text_combo(p2) == "-q·om'[-2]");
  CHECK(latex_combo(DiffCombo(0)) == "0");

  NodeContext ctx{2, 8};
  CHECK(text_witt(witt_bracket(1, -1, ctx)) == "2·q·M_0");
  CHECK(latex_witt(witt_bracket(1, -1, ctx)) == "2 q M_{0}");
  CHECK(text_witt(witt_bracket(3, 3, ctx)) == "0");
  (void)p1;
}

TEST_CASE("period matrix renderers cover every cell") {
  GluingDatum d = GluingDatum::make(SymbolicSide{GenusData::make(1, 1)},
                                    SymbolicSide{GenusData::make(1, 2)}, 3);
  PeriodExpansion P = pi_graded(d);
  std::string lt = latex_period(P);
  CHECK(lt.find("\\Pi = \\begin{pmatrix}") != std::string::npos);
  CHECK(lt.find("\\bmod q^{4}") != std::string::npos);
  std::string tx = text_period(P);
  CHECK(tx.find("al[0] <- al[0]: 1") != std::string::npos);
  CHECK(tx.find("mod q^4") != std::string::npos);
}

TEST_CASE("the check harness reports passes, witnesses, and exceptions") {
  std::vector<CheckResult> out;
  verify_detail::run(out, "ok", [] { return std::string(); });
  verify_detail::run(out, "bad", [] { return std::string("left != right"); });
  verify_detail::run(out, "boom", []() -> std::string { throw UsageError("nope"); });
  REQUIRE(out.size() == 3);
  CHECK(out[0].pass);
  CHECK(!out[1].pass);
  CHECK(out[1].witness == "left != right");
  CHECK(!out[2].pass);
  CHECK(out[2].witness == "exception: nope");

  VerifyReport r;
  r.suite = "demo";
  r.checks = out;
  CHECK(!r.all_pass());
  ojson j = json_of(r);
  CHECK(j["suite"] == "demo");
  CHECK(j["checks"][0]["status"] == "pass");
  CHECK(!j["checks"][0].contains("witness"));
  CHECK(j["checks"][1]["status"] == "fail");
  CHECK(j["checks"][1]["witness"] == "left != right");
  CHECK(j.contains("wall_ms"));
}

TEST_CASE("the fast suites pass end to end with pinned check order") {
  VerifyReport r = run_verify("series");
  CHECK(r.all_pass());
  REQUIRE(r.checks.size() == 5);
  CHECK(r.checks[0].id == "series.ring_laws");
  CHECK(r.checks[1].id == "series.window_rule");
  CHECK(r.checks[2].id == "series.inversion_substitution");
  CHECK(r.checks[3].id == "series.derivative_leibniz");
  CHECK(r.checks[4].id == "series.unit_inverse");

  VerifyReport b = run_verify("basis");
  CHECK(b.all_pass());
  REQUIRE(b.checks.size() == 3);
  CHECK(b.checks[0].id == "basis.param_roundtrip");

  // Identical parameters reproduce the identical report (modulo timing).
  ojson j1 = json_of(run_verify("series"));
  ojson j2 = json_of(run_verify("series"));
  j1.erase("wall_ms");
  j2.erase("wall_ms");
  CHECK(j1.dump() == j2.dump());

  CHECK_THROWS_AS(run_verify("bogus"), UsageError);
}
