#pragma once

// Truncated polynomials in the gluing parameter q: c_0 + c_1 q + ... + c_N q^N,
// with CoeffPoly coefficients.  Terms above q^N are dropped everywhere; the
// truncation order N is fixed per computation and mixing orders is an error.

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "coeffpoly.hpp"
#include "errors.hpp"

namespace qglue {

class QTrunc {
 public:
  explicit QTrunc(int N) : N_(N), c_(N + 1) {
    if (N < 0) throw UsageError("QTrunc: negative truncation order");
  }

  static QTrunc constant(int N, const CoeffPoly& c0) {
    QTrunc r(N);
    r.c_[0] = c0;
    return r;
  }

  static QTrunc one(int N) { return constant(N, CoeffPoly(Rat(1))); }

  // coeff * q^k (terms beyond q^N silently vanish, as everywhere).
  static QTrunc q_power(int N, int k, const CoeffPoly& coeff = CoeffPoly(Rat(1))) {
    QTrunc r(N);
    if (k >= 0 && k <= N) r.c_[k] = coeff;
    return r;
  }

  int N() const { return N_; }

  const CoeffPoly& coeff(int n) const {
    check_range(n);
    return c_[n];
  }

  void set_coeff(int n, const CoeffPoly& p) {
    check_range(n);
    c_[n] = p;
  }

  void add_coeff(int n, const CoeffPoly& p) {
    check_range(n);
    c_[n] += p;
  }

  bool is_zero() const {
    for (const auto& p : c_)
      if (!p.is_zero()) return false;
    return true;
  }

  // Lowest q-power with a nonzero coefficient; N+1 when zero.
  int ord_q() const {
    for (int n = 0; n <= N_; ++n)
      if (!c_[n].is_zero()) return n;
    return N_ + 1;
  }

  QTrunc operator-() const {
    QTrunc r(N_);
    for (int n = 0; n <= N_; ++n) r.c_[n] = -c_[n];
    return r;
  }

  QTrunc& operator+=(const QTrunc& o) {
    check_same(o);
    for (int n = 0; n <= N_; ++n) c_[n] += o.c_[n];
    return *this;
  }
  QTrunc& operator-=(const QTrunc& o) {
    check_same(o);
    for (int n = 0; n <= N_; ++n) c_[n] -= o.c_[n];
    return *this;
  }

  friend QTrunc operator+(QTrunc a, const QTrunc& b) { return a += b; }
  friend QTrunc operator-(QTrunc a, const QTrunc& b) { return a -= b; }

  friend QTrunc operator*(const QTrunc& a, const QTrunc& b) {
    a.check_same(b);
    QTrunc r(a.N_);
    for (int i = 0; i <= a.N_; ++i) {
      if (a.c_[i].is_zero()) continue;
      for (int j = 0; i + j <= a.N_; ++j) {
        if (b.c_[j].is_zero()) continue;
        r.c_[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return r;
  }

  QTrunc& operator*=(const QTrunc& o) { return *this = *this * o; }

  QTrunc scaled(const CoeffPoly& p) const {
    QTrunc r(N_);
    for (int n = 0; n <= N_; ++n)
      if (!c_[n].is_zero()) r.c_[n] = c_[n] * p;
    return r;
  }

  QTrunc scaled(const Rat& r) const {
    QTrunc out(N_);
    for (int n = 0; n <= N_; ++n) out.c_[n] = c_[n].scaled(r);
    return out;
  }

  // Multiplication by q^k, k >= 0.
  QTrunc shifted(int k) const {
    if (k < 0) throw UsageError("QTrunc::shifted: negative shift");
    QTrunc r(N_);
    for (int n = 0; n + k <= N_; ++n) r.c_[n + k] = c_[n];
    return r;
  }

  QTrunc map_coeffs(const std::function<CoeffPoly(int, const CoeffPoly&)>& fn) const {
    QTrunc r(N_);
    for (int n = 0; n <= N_; ++n) r.c_[n] = fn(n, c_[n]);
    return r;
  }

  QTrunc subst(const std::map<std::string, CoeffPoly>& rep) const {
    QTrunc r(N_);
    for (int n = 0; n <= N_; ++n) r.c_[n] = c_[n].subst(rep);
    return r;
  }

  // Multiplicative inverse.  Units are elements whose constant term carries a
  // nonzero rational part after unit-pair symbol powers are factored out, and
  // whose remainder is nilpotent (q-divisible terms truncate; nilpotent
  // symbols square to zero).  Everything else throws NonUnitError.
  QTrunc invert() const {
    // Balance of unit-pair symbols per base name, minimized over monomials.
    std::map<std::string, int> balance;
    bool first_mono = true;
    std::vector<std::string> bases;
    // First collect every base name that occurs anywhere.
    for (const auto& poly : c_)
      for (const auto& [m, coeff] : poly.terms())
        for (const auto& [s, e] : m.factors())
          if (s.kind == SymKind::UnitPair) {
            std::string base = (s.partner == s.name + "_inv") ? s.name
                               : s.partner;
            if (std::find(bases.begin(), bases.end(), base) == bases.end())
              bases.push_back(base);
          }
    std::map<std::string, Sym> base_sym, inv_sym;
    for (const auto& b : bases) {
      auto [fwd, inv] = unit_pair(b);
      base_sym.emplace(b, fwd);
      inv_sym.emplace(b, inv);
    }
    for (const auto& poly : c_) {
      for (const auto& [m, coeff] : poly.terms()) {
        for (const auto& b : bases) {
          int d = m.exponent(b) - m.exponent(b + "_inv");
          auto [it, inserted] = balance.try_emplace(b, d);
          if (!inserted) it->second = std::min(it->second, d);
        }
        first_mono = false;
      }
    }
    (void)first_mono;
    if (is_zero()) throw NonUnitError("QTrunc::invert: zero element");

    CoeffPoly factor(Rat(1));  // f with v = f * u; inverse is f * v^{-1}
    for (const auto& [b, g] : balance) {
      if (g > 0) factor *= CoeffPoly::term(inv_sym.at(b), g);
      else if (g < 0) factor *= CoeffPoly::term(base_sym.at(b), -g);
    }
    QTrunc v = scaled(factor);

    Rat r0 = v.c_[0].rational_part();
    if (r0 == 0)
      throw NonUnitError("QTrunc::invert: constant term has no invertible part: " + to_string());
    QTrunc rest = v;
    rest.c_[0] = v.c_[0] - CoeffPoly(r0);
    QTrunc step = rest.scaled(Rat(-1) / r0);
    QTrunc sum = QTrunc::one(N_);
    QTrunc p = QTrunc::one(N_);
    for (int k = 1; !p.is_zero(); ++k) {
      if (k > N_ + 64)
        throw NonUnitError("QTrunc::invert: remainder is not nilpotent: " + to_string());
      p *= step;
      sum += p;
    }
    return sum.scaled(Rat(1) / r0).scaled(factor);
  }

  friend bool operator==(const QTrunc& a, const QTrunc& b) {
    return a.N_ == b.N_ && a.c_ == b.c_;
  }
  friend bool operator!=(const QTrunc& a, const QTrunc& b) { return !(a == b); }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int n = 0; n <= N_; ++n) {
      if (c_[n].is_zero()) continue;
      std::string body = piece(n);
      bool neg = body.size() && body[0] == '-';
      if (first) {
        os << body;
      } else {
        os << (neg ? " - " : " + ") << (neg ? body.substr(1) : body);
      }
      first = false;
    }
    if (first) return "0";
    return os.str();
  }

 private:
  int N_;
  std::vector<CoeffPoly> c_;

  void check_range(int n) const {
    if (n < 0 || n > N_) throw WindowError("QTrunc: q-power out of range");
  }
  void check_same(const QTrunc& o) const {
    if (N_ != o.N_) throw UsageError("QTrunc: mixed truncation orders");
  }

  std::string piece(int n) const {
    const CoeffPoly& p = c_[n];
    std::string cs = p.to_string();
    bool simple = p.terms().size() == 1;
    std::string qs = (n == 0) ? "" : (n == 1 ? "q" : "q^" + std::to_string(n));
    if (n == 0) return cs;
    if (p == CoeffPoly(Rat(1))) return qs;
    if (p == CoeffPoly(Rat(-1))) return "-" + qs;
    if (simple) return cs + "·" + qs;
    return "(" + cs + ")·" + qs;
  }
};

}  // namespace qglue
