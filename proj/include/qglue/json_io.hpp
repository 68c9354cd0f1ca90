#pragma once

// JSON emitters for the library's value types (emission only; nothing in
// the tool chain reads JSON back).  Serialization is deterministic:
// object fields keep insertion order (nlohmann::ordered_json), term lists
// are walked in ascending q-power and canonical monomial order, and every
// rational appears as an exact decimal string pair {"num", "den"}.
//
// Requires the vendored single-header nlohmann/json (vendor/json.hpp) on
// the include path.

#include <json.hpp>

#include <complex>
#include <string>
#include <utility>

#include "diffcombo.hpp"
#include "glue_group.hpp"
#include "laurent.hpp"
#include "node.hpp"
#include "period.hpp"

namespace qglue {

using ojson = nlohmann::ordered_json;

// One scalar term r * mono * q^qpow as {"num", "den", "mono"}; the q-power
// is carried inside the exponent map under the key "q".
inline ojson json_term(const Rat& r, const Monomial& m, int qpow) {
  ojson t;
  t["num"] = numerator(r).str();
  t["den"] = denominator(r).str();
  ojson mono = ojson::object();
  if (qpow > 0) mono["q"] = qpow;
  for (const auto& [s, e] : m.factors()) mono[s.name] = e;
  t["mono"] = std::move(mono);
  return t;
}

// Flat term list of a truncated q-polynomial, ascending in q.
inline ojson json_of(const QTrunc& c) {
  ojson arr = ojson::array();
  for (int n = 0; n <= c.N(); ++n)
    for (const auto& [m, r] : c.coeff(n).terms()) arr.push_back(json_term(r, m, n));
  return arr;
}

inline ojson json_of(const Laurent& f) {
  ojson j;
  j["var"] = var_name(f.var());
  j["N"] = f.N();
  ojson terms = ojson::array();
  if (!f.is_zero()) {
    for (int e = f.emin(); e <= f.emax_stored(); ++e) {
      const QTrunc& c = f.coeff(e);
      if (c.is_zero()) continue;
      ojson t;
      t["exp"] = e;
      t["q"] = json_of(c);
      terms.push_back(std::move(t));
    }
  }
  j["terms"] = std::move(terms);
  return j;
}

// Node-algebra element: the pure-q part plus the two one-sided tails,
// listed by ascending degree starting at 1.
inline ojson json_of(const NodeElement& v) {
  ojson j;
  j["c0"] = json_of(v.c0());
  ojson a = ojson::array(), b = ojson::array();
  for (int i = 1; i <= v.a_size(); ++i) a.push_back(json_of(v.a_tail(i)));
  for (int k = 1; k <= v.b_size(); ++k) b.push_back(json_of(v.b_tail(k)));
  j["a"] = std::move(a);
  j["b"] = std::move(b);
  j["N"] = v.ctx().N;
  j["K"] = v.ctx().K;
  return j;
}

// A gluing automorphism is determined by its unit, whose serialization
// already carries the (N, K) context.
inline ojson json_of(const GlueAut& g) { return json_of(g.u); }

// Witt element as a {"mode": coefficient} map, ascending in the mode index.
inline ojson json_of(const WittElt& w) {
  ojson j = ojson::object();
  for (const auto& [n, c] : w.c) {
    if (c.is_zero()) continue;
    j[std::to_string(n)] = json_of(c);
  }
  return j;
}

// Cohomology-class combination as a list of {"basis", "coeff"} pairs in
// canonical label order.
inline ojson json_of(const DiffCombo& c) {
  ojson arr = ojson::array();
  for (const auto& [label, coeff] : c.terms()) {
    if (coeff.is_zero()) continue;
    ojson t;
    t["basis"] = label.to_string();
    t["coeff"] = json_of(coeff);
    arr.push_back(std::move(t));
  }
  return arr;
}

// Period expansion as one block per q-grade: shared row/column labels and
// the grade-j slice of each matrix entry.
inline ojson json_of(const PeriodExpansion& pe) {
  ojson rows = ojson::array(), cols = ojson::array();
  for (const auto& r : pe.rows) rows.push_back(r.to_string());
  for (const auto& c : pe.cols) cols.push_back(c.to_string());
  ojson blocks = ojson::array();
  for (int j = 0; j <= pe.N; ++j) {
    ojson block;
    block["grade"] = j;
    block["rows"] = rows;
    block["cols"] = cols;
    ojson entries = ojson::array();
    for (const auto& row : pe.entries) {
      ojson er = ojson::array();
      for (const auto& cell : row) {
        ojson terms = ojson::array();
        for (const auto& [m, r] : cell.coeff(j).terms())
          terms.push_back(json_term(r, m, j));
        er.push_back(std::move(terms));
      }
      entries.push_back(std::move(er));
    }
    block["entries"] = std::move(entries);
    blocks.push_back(std::move(block));
  }
  return blocks;
}

// Boundary-matching coefficient tables, ascending in the index.
inline ojson json_of(const ABSeries& ab) {
  ojson j;
  j["N"] = ab.N;
  auto table = [](const std::map<int, QTrunc>& m) {
    ojson arr = ojson::array();
    for (const auto& [idx, coeff] : m) {
      ojson t;
      t["index"] = idx;
      t["coeff"] = json_of(coeff);
      arr.push_back(std::move(t));
    }
    return arr;
  };
  j["a"] = table(ab.a);
  j["b"] = table(ab.b);
  return j;
}

inline ojson json_of(std::complex<double> z) { return ojson::array({z.real(), z.imag()}); }

}  // namespace qglue
