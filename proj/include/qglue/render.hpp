#pragma once

// Human-readable renderers: plain text (mirroring the to_string fixtures
// used in error messages) and LaTeX.  Both flatten a value into a list of
// signed scalar terms and join them with explicit signs, so the output is
// deterministic and free of redundant "+ -" sequences.

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "diffcombo.hpp"
#include "glue_group.hpp"
#include "laurent.hpp"
#include "period.hpp"

namespace qglue {

namespace render_detail {

// A scalar summand: rational factor plus an already-rendered symbolic body.
struct FlatTerm {
  Rat r;
  std::string body;
};

inline std::string join(const std::vector<FlatTerm>& terms, bool latex) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms) {
    Rat a = t.r;
    bool neg = a < Rat(0);
    if (neg) a = -a;
    if (first) {
      if (neg) out += "-";
      first = false;
    } else {
      out += neg ? " - " : " + ";
    }
    std::string mag;
    if (denominator(a) == 1) {
      mag = numerator(a).str();
    } else if (latex) {
      mag = "\\frac{" + numerator(a).str() + "}{" + denominator(a).str() + "}";
    } else {
      mag = rat_to_string(a);
    }
    if (t.body.empty()) {
      out += mag;
    } else if (a == Rat(1)) {
      out += t.body;
    } else {
      out += mag + (latex ? " " : "\u00b7") + t.body;
    }
  }
  return out;
}

inline std::string power(const std::string& base, int e, bool latex) {
  if (e == 0) return "";
  if (e == 1) return base;
  if (latex) return base + "^{" + std::to_string(e) + "}";
  return base + "^" + std::to_string(e);
}

inline std::string glue(const std::string& a, const std::string& b, bool latex) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + (latex ? " " : "\u00b7") + b;
}

}  // namespace render_detail

// ---------------------------------------------------------------------------
// Symbols and monomials.

// LaTeX form of a coefficient symbol.  The generated families are
// recognized by shape; anything else falls back to \mathit with escaped
// underscores.
inline std::string latex_sym(const std::string& name) {
  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
      if (ch == '_') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    parts.push_back(cur);
    return parts;
  };
  auto digits = [](const std::string& s, size_t from = 0) {
    if (s.size() <= from) return false;
    for (size_t i = from; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  std::vector<std::string> p = split(name);
  // c<k>_t<s>  ->  c_{k}(\tau_{s})
  if (p.size() == 2 && p[0].size() >= 2 && p[0][0] == 'c' && digits(p[0], 1) &&
      p[1].size() >= 2 && p[1][0] == 't' && digits(p[1], 1))
    return "c_{" + p[0].substr(1) + "}(\\tau_{" + p[1].substr(1) + "})";
  // al<s>_<n>_<i> / om<s>_<n>_<j>  ->  a^{(s)}_{n,i} / b^{(s)}_{n,j}
  if (p.size() == 3 && p[0].size() == 3 && digits(p[0], 2) && digits(p[1]) && digits(p[2])) {
    std::string head = p[0].substr(0, 2);
    if (head == "al" || head == "om")
      return std::string(head == "al" ? "a" : "b") + "^{(" + p[0].substr(2) + ")}_{" +
             p[1] + "," + p[2] + "}";
  }
  if (name == "lam") return "\\lambda";
  if (name == "lam_inv") return "\\lambda^{-1}";
  std::string esc;
  for (char ch : name) {
    if (ch == '_') esc += "\\_";
    else esc += ch;
  }
  return "\\mathit{" + esc + "}";
}

inline std::string latex_monomial(const Monomial& m) {
  std::string out;
  for (const auto& [s, e] : m.factors()) {
    std::string f = latex_sym(s.name);
    if (e > 1) f += "^{" + std::to_string(e) + "}";
    out = render_detail::glue(out, f, true);
  }
  return out;
}

inline std::string text_monomial(const Monomial& m) {
  std::string out;
  for (const auto& [s, e] : m.factors())
    out = render_detail::glue(out, render_detail::power(s.name, e, false), false);
  return out;
}

// ---------------------------------------------------------------------------
// Flattening of the series types.

namespace render_detail {

inline void flatten(const CoeffPoly& p, const std::string& suffix, bool latex,
                    std::vector<FlatTerm>& out) {
  for (const auto& [m, r] : p.terms()) {
    std::string body = latex ? latex_monomial(m) : text_monomial(m);
    out.push_back({r, glue(body, suffix, latex)});
  }
}

inline void flatten(const QTrunc& c, const std::string& suffix, bool latex,
                    std::vector<FlatTerm>& out) {
  for (int n = 0; n <= c.N(); ++n)
    flatten(c.coeff(n), glue(power("q", n, latex), suffix, latex), latex, out);
}

inline std::vector<FlatTerm> flatten_laurent(const Laurent& f, bool latex) {
  std::vector<FlatTerm> terms;
  if (f.is_zero()) return terms;
  std::string base = latex ? (f.var() == Var::z ? "z" : (f.var() == Var::x1 ? "x_{1}" : "x_{2}"))
                           : var_name(f.var());
  for (int e = f.emin(); e <= f.emax_stored(); ++e)
    flatten(f.coeff(e), power(base, e, latex), latex, terms);
  return terms;
}

}  // namespace render_detail

inline std::string latex_coeffpoly(const CoeffPoly& p) {
  std::vector<render_detail::FlatTerm> t;
  render_detail::flatten(p, "", true, t);
  return render_detail::join(t, true);
}

inline std::string latex_qtrunc(const QTrunc& c) {
  std::vector<render_detail::FlatTerm> t;
  render_detail::flatten(c, "", true, t);
  return render_detail::join(t, true);
}

inline std::string latex_laurent(const Laurent& f) {
  return render_detail::join(render_detail::flatten_laurent(f, true), true);
}

inline std::string text_laurent(const Laurent& f) {
  return render_detail::join(render_detail::flatten_laurent(f, false), false);
}

// ---------------------------------------------------------------------------
// Basis labels and cohomology combinations.

inline std::string latex_label(const DiffLabel& l) {
  std::string head = l.kind == DiffLabel::Kind::alpha ? "\\alpha" : "\\omega";
  if (l.side == 2) head += "'";
  int shown = l.kind == DiffLabel::Kind::alpha ? l.index : -l.index;
  return head + "_{" + std::to_string(shown) + "}";
}

namespace render_detail {

inline std::string combo(const DiffCombo& c, bool latex) {
  std::vector<std::string> pieces;
  for (const auto& [label, coeff] : c.terms()) {
    if (coeff.is_zero()) continue;
    std::vector<FlatTerm> t;
    flatten(coeff, "", latex, t);
    std::string lab = latex ? latex_label(label) : label.to_string();
    std::string sep = latex ? "\\," : "\u00b7";
    if (t.size() == 1) {
      FlatTerm one = t[0];
      one.body = glue(one.body, lab, latex);
      pieces.push_back(join({one}, latex));
    } else {
      pieces.push_back((latex ? "\\bigl(" : "(") + join(t, latex) +
                       (latex ? "\\bigr)" : ")") + sep + lab);
    }
  }
  if (pieces.empty()) return "0";
  std::string out;
  for (const auto& s : pieces) {
    if (out.empty()) {
      out = s;
    } else if (!s.empty() && s[0] == '-') {
      out += " - " + s.substr(1);
    } else {
      out += " + " + s;
    }
  }
  return out;
}

}  // namespace render_detail

inline std::string latex_combo(const DiffCombo& c) { return render_detail::combo(c, true); }
inline std::string text_combo(const DiffCombo& c) { return render_detail::combo(c, false); }

// ---------------------------------------------------------------------------
// Witt elements: terms like  2·q·M_0.

namespace render_detail {

inline std::string witt(const WittElt& w, bool latex) {
  std::vector<std::string> pieces;
  for (const auto& [n, coeff] : w.c) {
    if (coeff.is_zero()) continue;
    std::string mode = latex ? "M_{" + std::to_string(n) + "}" : "M_" + std::to_string(n);
    std::vector<FlatTerm> t;
    flatten(coeff, "", latex, t);
    if (t.size() == 1) {
      FlatTerm one = t[0];
      one.body = glue(one.body, mode, latex);
      pieces.push_back(join({one}, latex));
    } else {
      pieces.push_back((latex ? "\\bigl(" : "(") + join(t, latex) +
                       (latex ? "\\bigr)" : ")") + (latex ? "\\," : "\u00b7") + mode);
    }
  }
  if (pieces.empty()) return "0";
  std::string out;
  for (const auto& s : pieces) {
    if (out.empty()) out = s;
    else if (!s.empty() && s[0] == '-') out += " - " + s.substr(1);
    else out += " + " + s;
  }
  return out;
}

}  // namespace render_detail

inline std::string latex_witt(const WittElt& w) { return render_detail::witt(w, true); }
inline std::string text_witt(const WittElt& w) { return render_detail::witt(w, false); }

// ---------------------------------------------------------------------------
// Period matrices.

inline std::string latex_period(const PeriodExpansion& pe) {
  std::ostringstream os;
  os << "% rows:";
  for (const auto& r : pe.rows) os << " " << latex_label(r);
  os << "\n% cols:";
  for (const auto& c : pe.cols) os << " " << latex_label(c);
  os << "\n\\Pi = \\begin{pmatrix}\n";
  for (size_t i = 0; i < pe.entries.size(); ++i) {
    for (size_t j = 0; j < pe.entries[i].size(); ++j) {
      if (j) os << " & ";
      os << latex_qtrunc(pe.entries[i][j]);
    }
    os << (i + 1 < pe.entries.size() ? " \\\\\n" : "\n");
  }
  os << "\\end{pmatrix} \\bmod q^{" << pe.N + 1 << "}";
  return os.str();
}

inline std::string text_period(const PeriodExpansion& pe) {
  std::ostringstream os;
  for (size_t i = 0; i < pe.rows.size(); ++i) {
    for (size_t j = 0; j < pe.cols.size(); ++j) {
      os << pe.rows[i].to_string() << " <- " << pe.cols[j].to_string() << ": "
         << (pe.entries[i][j].is_zero() ? "0" : pe.entries[i][j].to_string()) << "\n";
    }
  }
  os << "mod q^" << pe.N + 1;
  return os.str();
}

}  // namespace qglue
