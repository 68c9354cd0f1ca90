#pragma once

// Windowed Laurent series in one boundary coordinate (x1, x2) or a local
// parameter z, with QTrunc coefficients.  Each series carries the exponent
// window K through which its coefficients are known: reads above K throw,
// and every operation propagates windows pessimistically:
//   add:      K = min(Ka, Kb)
//   multiply: K = min(Ka + emin_b, Kb + emin_a)
//   derive:   K = Ka - 1
//   invert:   K = Ka - 2*emin_a
// KINF marks series that are exactly known at every exponent.

#include <climits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "qtrunc.hpp"

namespace qglue {

enum class Var { x1, x2, z };

inline std::string var_name(Var v) {
  switch (v) {
    case Var::x1: return "x1";
    case Var::x2: return "x2";
    default: return "z";
  }
}

class Laurent {
 public:
  static constexpr long KINF = (1L << 40);

  Laurent(Var var, int N, long K = KINF) : var_(var), N_(N), K_(K) {}

  static Laurent zero(Var var, int N, long K = KINF) { return Laurent(var, N, K); }

  static Laurent monomial(Var var, int N, int e, const QTrunc& coeff, long K = KINF) {
    Laurent r(var, N, K);
    r.add_term(e, coeff);
    return r;
  }

  static Laurent monomial(Var var, int N, int e, const CoeffPoly& coeff = CoeffPoly(Rat(1)),
                          long K = KINF) {
    return monomial(var, N, e, QTrunc::constant(N, coeff), K);
  }

  Var var() const { return var_; }
  int N() const { return N_; }
  long window() const { return K_; }
  bool fully_known() const { return K_ >= KINF; }
  bool is_zero() const { return c_.empty(); }

  // Lowest stored exponent (meaningful only when nonzero).
  int emin() const {
    if (c_.empty()) throw UsageError("Laurent::emin: zero series");
    return emin_;
  }
  int emax_stored() const {
    if (c_.empty()) throw UsageError("Laurent::emax_stored: zero series");
    return emin_ + static_cast<int>(c_.size()) - 1;
  }

  // First exponent at which the series is no longer known.
  long first_unknown() const { return K_ >= KINF ? KINF : K_ + 1; }

  const QTrunc& coeff(int e) const {
    if (static_cast<long>(e) > K_)
      throw WindowError("Laurent: coefficient at " + var_name(var_) + "^" +
                        std::to_string(e) + " is beyond the known window K=" +
                        std::to_string(K_));
    if (c_.empty() || e < emin_ || e > emax_stored()) {
      zero_cache_.try_emplace(N_, QTrunc(N_));
      return zero_cache_.at(N_);
    }
    return c_[e - emin_];
  }

  void add_term(int e, const QTrunc& coeff) {
    if (coeff.N() != N_) throw UsageError("Laurent: coefficient with mixed q-order");
    if (static_cast<long>(e) > K_) return;  // beyond the window: not represented
    if (coeff.is_zero() && c_.empty()) return;
    if (c_.empty()) {
      emin_ = e;
      c_.push_back(coeff);
      trim();
      return;
    }
    if (e < emin_) {
      c_.insert(c_.begin(), emin_ - e, QTrunc(N_));
      emin_ = e;
    } else if (e > emax_stored()) {
      c_.insert(c_.end(), e - emax_stored(), QTrunc(N_));
    }
    c_[e - emin_] += coeff;
    trim();
  }

  Laurent truncated_window(long W) const {
    if (W >= K_) return *this;
    Laurent r(var_, N_, W);
    for (int e = lo_stored(); e <= hi_stored(); ++e)
      if (e <= W) r.add_term(e, c_[e - emin_]);
    return r;
  }

  Laurent with_window(long W) const {  // explicit widening/attestation
    Laurent r(var_, N_, W);
    for (int e = lo_stored(); e <= hi_stored(); ++e)
      if (e <= W) r.add_term(e, c_[e - emin_]);
    return r;
  }

  Laurent operator-() const {
    Laurent r(var_, N_, K_);
    for (int e = lo_stored(); e <= hi_stored(); ++e) r.add_term(e, -c_[e - emin_]);
    return r;
  }

  friend Laurent operator+(const Laurent& a, const Laurent& b) {
    a.check_compatible(b);
    Laurent r(a.var_, a.N_, std::min(a.K_, b.K_));
    for (int e = a.lo_stored(); e <= a.hi_stored(); ++e) r.add_term(e, a.c_[e - a.emin_]);
    for (int e = b.lo_stored(); e <= b.hi_stored(); ++e) r.add_term(e, b.c_[e - b.emin_]);
    return r;
  }

  friend Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }

  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    a.check_compatible(b);
    Laurent r(a.var_, a.N_, mul_window(a, b));
    for (int ea = a.lo_stored(); ea <= a.hi_stored(); ++ea) {
      const QTrunc& ca = a.c_[ea - a.emin_];
      if (ca.is_zero()) continue;
      for (int eb = b.lo_stored(); eb <= b.hi_stored(); ++eb) {
        const QTrunc& cb = b.c_[eb - b.emin_];
        if (cb.is_zero()) continue;
        if (static_cast<long>(ea) + eb > r.K_) continue;
        r.add_term(ea + eb, ca * cb);
      }
    }
    return r;
  }

  Laurent scaled(const QTrunc& s) const {
    Laurent r(var_, N_, K_);
    for (int e = lo_stored(); e <= hi_stored(); ++e) {
      QTrunc v = c_[e - emin_] * s;
      r.add_term(e, v);
    }
    return r;
  }

  Laurent scaled(const CoeffPoly& s) const {
    Laurent r(var_, N_, K_);
    for (int e = lo_stored(); e <= hi_stored(); ++e) r.add_term(e, c_[e - emin_].scaled(s));
    return r;
  }

  Laurent scaled(const Rat& s) const { return scaled(CoeffPoly(s)); }

  // Multiplication by x^k.
  Laurent shifted_exp(int k) const {
    Laurent r(var_, N_, K_ >= KINF ? KINF : K_ + k);
    for (int e = lo_stored(); e <= hi_stored(); ++e) r.add_term(e + k, c_[e - emin_]);
    return r;
  }

  // d/dx.  Knowledge of the coefficient at K says nothing about the one at
  // K+1, so the derivative's window drops by one.
  Laurent derived() const {
    Laurent r(var_, N_, K_ >= KINF ? KINF : K_ - 1);
    for (int e = lo_stored(); e <= hi_stored(); ++e) {
      if (e == 0) continue;
      r.add_term(e - 1, c_[e - emin_].scaled(Rat(e)));
    }
    return r;
  }

  // Coefficient of x^{-1}.
  QTrunc residue() const {
    if (K_ < -1) throw WindowError("Laurent::residue: window ends below x^-1");
    return coeff(-1);
  }

  // Multiplicative inverse; the leading coefficient must be a QTrunc unit.
  Laurent inverted() const {
    if (c_.empty()) throw NonUnitError("Laurent::inverted: zero series");
    if (K_ >= KINF && hi_stored() > lo_stored())
      throw UsageError(
          "Laurent::inverted: inverse of an exact polynomial is an infinite series; "
          "truncate to a finite window first");
    int e0 = emin_;
    QTrunc lead_inv = c_[0].invert();
    // t = lead^{-1} x^{-e0} * this - 1 : regular of order >= 1.
    Laurent t = shifted_exp(-e0).scaled(lead_inv);
    t.add_term(0, -QTrunc::one(N_));
    long Kt = t.K_;  // = K - e0 (or KINF for exact monomials)
    Laurent sum = monomial(var_, N_, 0, QTrunc::one(N_), Kt);
    Laurent pw = sum;
    if (!t.is_zero()) {
      int step = t.emin();
      for (long k = 1; static_cast<long>(step) * k <= Kt; ++k) {
        pw = pw * (-t);
        if (pw.is_zero()) break;
        sum = sum + pw;
        if (Kt >= KINF && k > 4 * (N_ + 2))
          throw UsageError("Laurent::inverted: nonterminating exact inverse");
      }
    }
    return sum.scaled(lead_inv).shifted_exp(-e0);
  }

  // Boundary substitution x -> q/x: a regular series in one branch variable
  // becomes an exact polar series in the other.  The coefficient of x^e
  // picks up q^e, so exponents above the q-order vanish outright and the
  // result is fully known; for that the window must reach the q-order.
  Laurent subst_q_over_x() const {
    if (!c_.empty() && emin_ < 0)
      throw UsageError("Laurent::subst_q_over_x: series must be regular at the origin");
    if (K_ < N_)
      throw InsufficientWindowError(
          "Laurent::subst_q_over_x: window does not reach the q-order");
    Var w = var_ == Var::x2 ? Var::x1 : Var::x2;
    Laurent r(w, N_, KINF);
    if (c_.empty()) return r;
    for (int e = lo_stored(); e <= std::min(hi_stored(), N_); ++e) {
      const QTrunc& ce = c_[e - emin_];
      if (ce.is_zero()) continue;
      r.add_term(-e, ce.shifted(e));
    }
    return r;
  }

  Laurent composed(const Laurent& u) const {
    if (u.N_ != N_) throw UsageError("Laurent::composed: mixed q-orders");
    if (u.is_zero() || u.window() < 1 || u.coeff(1).is_zero())
      throw UsageError("Laurent::composed: substituted series must have a linear term");
    u.coeff(1).invert();  // throws NonUnitError when the linear coefficient is not a unit
    std::vector<Laurent> U = u.to_layers();
    // Terms of u in degrees <= 0 must sit in q-order >= 1; the q^0 layer is
    // then an ordinary substitution series, and the low terms enter as
    // corrections that converge q-adically.
    if (U[0].emin() != 1)
      throw NonUnitError(
          "Laurent::composed: degree-<=0 part of the substitution is not q-divisible");
    if (c_.empty()) return Laurent(u.var_, N_, K_ >= KINF ? KINF : K_);

    // Substitution works on q-layers: within a layer the flat window is
    // sharp (no q-folding left), so q-divisible polar terms of u do not
    // destroy the window the grading actually protects.
    std::map<int, std::vector<Laurent>> pows;
    pows.emplace(0, layers_one(u.var_, N_));
    for (int k = 1; k <= emax_stored(); ++k)
      pows.emplace(k, layers_mul(pows.at(k - 1), U));
    if (emin_ < 0) {
      std::vector<Laurent> uinv = layers_inverse(U);
      for (int k = -1; k >= emin_; --k) pows.emplace(k, layers_mul(pows.at(k + 1), uinv));
    }
    std::vector<Laurent> acc = layers_zero(u.var_, N_);
    for (int e = lo_stored(); e <= hi_stored(); ++e) {
      const QTrunc& ce = c_[e - emin_];
      if (ce.is_zero()) continue;
      acc = layers_add(acc, layers_scaled(pows.at(e), ce));
    }
    Laurent out = from_layers(u.var_, N_, acc);
    // The unknown tail of this, starting at exponent K+1, feeds exponents
    // >= K+1 of the result when u starts in degree 1; each q-divisible low
    // term of u can pull that contamination down by its offset, one q-order
    // at a time, so by at most N times the worst offset in total.
    long dmax = 0;
    for (int e = u.lo_stored(); e <= std::min(0, u.hi_stored()); ++e)
      if (!u.c_[e - u.emin_].is_zero()) dmax = std::max(dmax, 1L - e);
    long cap = K_ >= KINF ? KINF : K_ - static_cast<long>(N_) * dmax;
    return out.truncated_window(std::min(out.K_, cap));
  }

  friend bool operator==(const Laurent& a, const Laurent& b) {
    if (a.var_ != b.var_ || a.N_ != b.N_ || a.K_ != b.K_) return false;
    if (a.c_.size() != b.c_.size()) return false;
    if (a.c_.empty()) return true;
    return a.emin_ == b.emin_ && a.c_ == b.c_;
  }

  // Coefficient-wise equality on an explicit exponent range; reads past
  // either window throw WindowError, so a passing check is meaningful.
  static bool equal_through(const Laurent& a, const Laurent& b, int lo, int hi) {
    a.check_compatible(b);
    for (int e = lo; e <= hi; ++e)
      if (!(a.coeff(e) == b.coeff(e))) return false;
    return true;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int e = lo_stored(); e <= hi_stored(); ++e) {
      const QTrunc& q = c_[e - emin_];
      if (q.is_zero()) continue;
      std::string body = term_string(q, e);
      bool neg = !body.empty() && body[0] == '-';
      if (first) os << body;
      else os << (neg ? " - " : " + ") << (neg ? body.substr(1) : body);
      first = false;
    }
    if (first) return "0";
    return os.str();
  }

 private:
  Var var_;
  int N_;
  int emin_ = 0;
  std::vector<QTrunc> c_;
  long K_;
  static inline std::map<int, QTrunc> zero_cache_;

  std::string term_string(const QTrunc& q, int e) const {
    std::string cs = q.to_string();
    if (e == 0) return cs;
    std::string xs = var_name(var_);
    if (e != 1) xs += "^" + std::to_string(e);
    if (cs == "1") return xs;
    if (cs == "-1") return "-" + xs;
    bool wrap = cs.find(' ') != std::string::npos;
    if (wrap) return "(" + cs + ")·" + xs;
    return cs + "·" + xs;
  }

  int lo_stored() const { return c_.empty() ? 0 : emin_; }
  int hi_stored() const { return c_.empty() ? -1 : emin_ + static_cast<int>(c_.size()) - 1; }

  void trim() {
    while (!c_.empty() && c_.front().is_zero()) {
      c_.erase(c_.begin());
      ++emin_;
    }
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    if (c_.empty()) emin_ = 0;
  }

  void check_compatible(const Laurent& o) const {
    if (var_ != o.var_) throw UsageError("Laurent: mixed variables");
    if (N_ != o.N_) throw UsageError("Laurent: mixed q-orders");
  }

  // ----- q-layer helpers for composed() ---------------------------------
  // A Laurent over N-truncated q-coefficients sliced into N+1 layers of
  // pure-x series (each with q-order 0 coefficients).  Every layer carries
  // this object's flat window.
  std::vector<Laurent> to_layers() const {
    std::vector<Laurent> L;
    L.reserve(N_ + 1);
    long W = K_ >= KINF ? KINF : K_;
    for (int n = 0; n <= N_; ++n) L.emplace_back(var_, 0, W);
    for (int e = lo_stored(); e <= hi_stored(); ++e) {
      const QTrunc& c = c_[e - emin_];
      for (int n = 0; n <= N_; ++n)
        if (!c.coeff(n).is_zero()) L[n].add_term(e, QTrunc::constant(0, c.coeff(n)));
    }
    return L;
  }

  static std::vector<Laurent> layers_zero(Var var, int N) {
    return std::vector<Laurent>(N + 1, Laurent(var, 0, KINF));
  }

  static std::vector<Laurent> layers_one(Var var, int N) {
    std::vector<Laurent> L = layers_zero(var, N);
    L[0] = monomial(var, 0, 0, QTrunc::one(0), KINF);
    return L;
  }

  static std::vector<Laurent> layers_add(const std::vector<Laurent>& A,
                                         const std::vector<Laurent>& B) {
    std::vector<Laurent> R;
    R.reserve(A.size());
    for (std::size_t n = 0; n < A.size(); ++n) R.push_back(A[n] + B[n]);
    return R;
  }

  static std::vector<Laurent> layers_mul(const std::vector<Laurent>& A,
                                         const std::vector<Laurent>& B) {
    int N = static_cast<int>(A.size()) - 1;
    std::vector<Laurent> R;
    R.reserve(N + 1);
    for (int n = 0; n <= N; ++n) {
      Laurent acc = A[0] * B[n];
      for (int m = 1; m <= n; ++m) acc = acc + A[m] * B[n - m];
      R.push_back(acc);
    }
    return R;
  }

  // Multiply the layered series by a scalar QTrunc (shift-and-scale).
  static std::vector<Laurent> layers_scaled(const std::vector<Laurent>& A, const QTrunc& s) {
    int N = static_cast<int>(A.size()) - 1;
    std::vector<Laurent> R;
    R.reserve(N + 1);
    for (int n = 0; n <= N; ++n) {
      Laurent acc = A[n].scaled(s.coeff(0));
      for (int m = 1; m <= n; ++m) acc = acc + A[n - m].scaled(s.coeff(m));
      R.push_back(acc);
    }
    return R;
  }

  // Layered inverse: V solves U*V = 1 layer by layer; the zeroth layer must
  // be invertible as a plain Laurent series.
  static std::vector<Laurent> layers_inverse(const std::vector<Laurent>& U) {
    int N = static_cast<int>(U.size()) - 1;
    Laurent v0 = U[0].inverted();
    std::vector<Laurent> V{v0};
    for (int n = 1; n <= N; ++n) {
      Laurent acc = U[1] * V[n - 1];
      for (int m = 2; m <= n; ++m) acc = acc + U[m] * V[n - m];
      V.push_back(-(v0 * acc));
    }
    return V;
  }

  static Laurent from_layers(Var var, int N, const std::vector<Laurent>& L) {
    long W = KINF;
    for (const Laurent& l : L) W = std::min(W, l.window());
    Laurent r(var, N, W >= KINF ? KINF : W);
    for (int n = 0; n <= N; ++n) {
      const Laurent& l = L[n];
      for (int e = l.lo_stored(); e <= l.hi_stored(); ++e) {
        const CoeffPoly& p = l.c_[e - l.emin_].coeff(0);
        if (p.is_zero()) continue;
        QTrunc t(N);
        t.set_coeff(n, p);
        r.add_term(e, t);
      }
    }
    return r;
  }

  static long mul_window(const Laurent& a, const Laurent& b) {
    long Ka = a.K_, Kb = b.K_;
    long ea = a.c_.empty() ? a.first_unknown() : a.emin_;
    long eb = b.c_.empty() ? b.first_unknown() : b.emin_;
    long w1 = (Ka >= KINF) ? KINF : Ka + eb;
    long w2 = (Kb >= KINF) ? KINF : Kb + ea;
    long w = std::min(w1, w2);
    return w >= KINF ? KINF : w;
  }
};

}  // namespace qglue
