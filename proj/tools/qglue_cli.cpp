// Batch front-end: `verify` runs a named invariant suite and prints a JSON
// report; `emit` serializes one of the computed series/tables in JSON,
// LaTeX, or plain text.  Exit codes: 0 all checks pass, 1 at least one
// check failed, 2 invalid usage or parameters — nothing else.

#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <qglue/qglue.hpp>

namespace {

using namespace qglue;

void deliver(const std::string& doc, const std::string& out_path) {
  std::cout << doc;
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw UsageError("cannot open output file '" + out_path + "'");
    f << doc;
  }
}

std::string check_format(const std::string& format) {
  if (format != "json" && format != "latex" && format != "text")
    throw UsageError("unknown format '" + format + "'");
  return format;
}

std::string emit_wp(int side, int K, const std::vector<double>& tau,
                    const std::string& format) {
  if (!tau.empty()) {
    if (format != "json") throw UsageError("numeric evaluation is emitted as JSON only");
    const std::complex<double> t(tau[0], tau[1]);
    WpContext ctx = WpContext::numeric_at(t, K);
    ojson j;
    j["kind"] = "wp";
    j["tau"] = json_of(t);
    ojson c;
    for (int k = 2; k <= K; k += 2) c[std::to_string(k)] = json_of(ctx.c_value(k));
    j["c"] = std::move(c);
    return j.dump(2) + "\n";
  }
  Laurent s = wp_series(WpContext::symbolic(side, K), K);
  if (format == "latex") return "\\wp(z) = " + latex_laurent(s) + "\n";
  if (format == "text") return "wp(z) = " + text_laurent(s) + "\n";
  ojson j;
  j["kind"] = "wp";
  j["side"] = side;
  j["K"] = K;
  j["series"] = json_of(s);
  return j.dump(2) + "\n";
}

std::string emit_fdiff(int side, int pole, int K, const std::string& format) {
  Laurent s = f_series(pole, WpContext::symbolic(side, K + pole + 2), K).series;
  const std::string name = "f[-" + std::to_string(pole) + "]";
  if (format == "latex")
    return "f_{-" + std::to_string(pole) + "}(z) = " + latex_laurent(s) + "\n";
  if (format == "text") return name + "(z) = " + text_laurent(s) + "\n";
  ojson j;
  j["kind"] = "fdiff";
  j["side"] = side;
  j["pole"] = pole;
  j["K"] = K;
  j["series"] = json_of(s);
  return j.dump(2) + "\n";
}

std::string emit_recursion(int N, const std::string& format) {
  ABSeries ab = genus1_ab(N);
  if (format == "json") {
    ojson j;
    j["kind"] = "recursion";
    ojson body = json_of(ab);
    for (auto& [key, val] : body.items()) j[key] = std::move(val);
    return j.dump(2) + "\n";
  }
  std::string out;
  if (format == "latex") {
    out += "\\begin{aligned}\n";
    for (const auto& [n, v] : ab.a)
      out += "a_{" + std::to_string(n) + "} &= " + latex_qtrunc(v) + " \\\\\n";
    for (const auto& [n, v] : ab.b)
      out += "b_{" + std::to_string(n) + "} &= " + latex_qtrunc(v) + " \\\\\n";
    out += "\\end{aligned}\n";
  } else {
    for (const auto& [n, v] : ab.a)
      out += "a_" + std::to_string(n) + " = " + v.to_string() + "\n";
    for (const auto& [n, v] : ab.b)
      out += "b_" + std::to_string(n) + " = " + v.to_string() + "\n";
  }
  return out;
}

std::string emit_period(int N, int side, const std::string& format) {
  auto [p1, p2] = genus1_pi(N, side);
  if (format == "latex")
    return "\\Pi = \\bigl( " + latex_combo(p1) + ",\\; " + latex_combo(p2) +
           " \\bigr) \\bmod q^{" + std::to_string(N + 1) + "}\n";
  if (format == "text")
    return "first:  " + text_combo(p1) + "\nsecond: " + text_combo(p2) + "\nmod q^" +
           std::to_string(N + 1) + "\n";
  ojson j;
  j["kind"] = "period";
  j["N"] = N;
  j["seed_side"] = side;
  j["first"] = json_of(p1);
  j["second"] = json_of(p2);
  return j.dump(2) + "\n";
}

std::string emit_witt(int i, int j, int N, int K, const std::string& format) {
  WittElt w = witt_bracket(i, j, NodeContext{N, K});
  if (format == "latex") return latex_witt(w) + "\n";
  if (format == "text") return text_witt(w) + "\n";
  ojson doc;
  doc["kind"] = "witt";
  doc["i"] = i;
  doc["j"] = j;
  doc["N"] = N;
  doc["bracket"] = json_of(w);
  return doc.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact formal-series kernel for gluing curves across a node"};
  app.require_subcommand(1);

  // verify -------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "run an invariant suite, print a JSON report");
  std::string suite;
  VerifyParams params;
  std::string verify_out;
  verify->add_option("suite", suite,
                     "one of: series, node, group, elliptic, basis, periods, all")
      ->required();
  verify->add_option("-N,--order", params.N, "q-order (suite default when omitted)");
  verify->add_option("-K,--window", params.K, "series window (suite default when omitted)");
  verify->add_option("--seed", params.seed, "seed for the randomized checks");
  verify->add_option("--out", verify_out, "also write the report to this file");

  // emit ---------------------------------------------------------------
  auto* emit = app.add_subcommand("emit", "serialize a computed series or table");
  std::string kind, format = "json", emit_out;
  int order = -1, window = -1, side = 1, pole = 2, wi = 1, wj = -1;
  std::vector<double> tau;
  emit->add_option("kind", kind, "one of: wp, fdiff, recursion, period, witt")->required();
  emit->add_option("--format", format, "json (default), latex, or text");
  emit->add_option("-N,--order", order, "q-order for recursion/period/witt");
  emit->add_option("-K,--window", window, "series window for wp/fdiff");
  emit->add_option("--side", side, "curve side 1 or 2 (wp, fdiff, period)");
  emit->add_option("--pole", pole, "pole order for fdiff (>= 2)");
  emit->add_option("--i", wi, "first index for witt");
  emit->add_option("--j", wj, "second index for witt");
  emit->add_option("--tau", tau, "evaluate wp coefficients at tau = re im (JSON only)")
      ->expected(2);
  emit->add_option("--out", emit_out, "also write the document to this file");

  try {
    app.parse(argc, argv);

    if (verify->parsed()) {
      VerifyReport report = run_verify(suite, params);
      deliver(json_of(report).dump(2) + "\n", verify_out);
      return report.all_pass() ? 0 : 1;
    }

    check_format(format);
    std::string doc;
    if (kind == "wp") {
      doc = emit_wp(side, window < 0 ? 8 : window, tau, format);
    } else if (kind == "fdiff") {
      doc = emit_fdiff(side, pole, window < 0 ? 8 : window, format);
    } else if (kind == "recursion") {
      doc = emit_recursion(order < 0 ? 11 : order, format);
    } else if (kind == "period") {
      doc = emit_period(order < 0 ? 10 : order, side, format);
    } else if (kind == "witt") {
      int N = order < 0 ? 4 : order;
      int K = window < 0 ? std::max({8, std::abs(wi), std::abs(wj)}) : window;
      doc = emit_witt(wi, wj, N, K, format);
    } else {
      throw UsageError("unknown kind '" + kind + "'");
    }
    deliver(doc, emit_out);
    return 0;
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
