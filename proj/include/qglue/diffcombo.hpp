#pragma once

// Finite combinations of the standard one-pole differential basis.
//
// Labels name the basis elements: alpha(i) are the everywhere-regular
// generators (alpha(0) specializes to dz at genus one), omega(n) is the
// normalized differential with a single pole of order n >= 2 and zero
// residue.  The side tag distinguishes the two curves of a gluing datum;
// side-2 labels print primed.  Combinations carry exact q-truncated
// coefficients and the linear algebra the reduction and period maps need.

#include <map>
#include <sstream>
#include <string>
#include <tuple>

#include "qglue/errors.hpp"
#include "qglue/laurent.hpp"
#include "qglue/qtrunc.hpp"

namespace qglue {

struct DiffLabel {
  enum class Kind { alpha, omega };

  Kind kind;
  int index;  // alpha: i >= 0; omega: pole order n >= 2 (stored positive)
  int side;   // 1 or 2

  static DiffLabel alpha(int i, int side = 1) {
    if (i < 0) throw UsageError("DiffLabel::alpha: negative index");
    return DiffLabel{Kind::alpha, i, checked_side(side)};
  }
  static DiffLabel omega(int n, int side = 1) {
    if (n < 2) throw UsageError("DiffLabel::omega: pole order must be >= 2");
    return DiffLabel{Kind::omega, n, checked_side(side)};
  }

  friend bool operator==(const DiffLabel& a, const DiffLabel& b) {
    return a.kind == b.kind && a.index == b.index && a.side == b.side;
  }
  friend bool operator!=(const DiffLabel& a, const DiffLabel& b) { return !(a == b); }
  // Display order: side 1 before side 2, regular generators before polar
  // ones, then ascending index.
  friend bool operator<(const DiffLabel& a, const DiffLabel& b) {
    return std::tuple(a.side, static_cast<int>(a.kind), a.index) <
           std::tuple(b.side, static_cast<int>(b.kind), b.index);
  }

  std::string to_string() const {
    std::ostringstream os;
    os << (kind == Kind::alpha ? "al" : "om") << (side == 2 ? "'" : "") << "[";
    if (kind == Kind::omega) os << "-";
    os << index << "]";
    return os.str();
  }

 private:
  static int checked_side(int side) {
    if (side != 1 && side != 2) throw UsageError("DiffLabel: side must be 1 or 2");
    return side;
  }
};

class DiffCombo {
 public:
  explicit DiffCombo(int N) : N_(N) {
    if (N < 0) throw UsageError("DiffCombo: negative q-order");
  }

  int N() const { return N_; }

  void add(const DiffLabel& l, const QTrunc& c) {
    if (c.N() != N_) throw UsageError("DiffCombo::add: mixed q-orders");
    if (c.is_zero()) return;
    auto [it, inserted] = t_.try_emplace(l, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }
  void add(const DiffLabel& l, const CoeffPoly& c) { add(l, QTrunc::constant(N_, c)); }

  const std::map<DiffLabel, QTrunc>& terms() const { return t_; }

  // Coefficient on a label; zero (not an error) when absent.
  QTrunc coeff(const DiffLabel& l) const {
    auto it = t_.find(l);
    return it == t_.end() ? QTrunc(N_) : it->second;
  }

  bool is_zero() const { return t_.empty(); }

  DiffCombo operator-() const {
    DiffCombo r(N_);
    for (const auto& [l, c] : t_) r.t_.emplace(l, -c);
    return r;
  }
  friend DiffCombo operator+(const DiffCombo& a, const DiffCombo& b) {
    if (a.N_ != b.N_) throw UsageError("DiffCombo: mixed q-orders");
    DiffCombo r = a;
    for (const auto& [l, c] : b.t_) r.add(l, c);
    return r;
  }
  friend DiffCombo operator-(const DiffCombo& a, const DiffCombo& b) { return a + (-b); }

  DiffCombo scaled(const QTrunc& s) const {
    if (s.N() != N_) throw UsageError("DiffCombo::scaled: mixed q-orders");
    DiffCombo r(N_);
    for (const auto& [l, c] : t_) r.add(l, c * s);
    return r;
  }
  DiffCombo scaled(const CoeffPoly& s) const { return scaled(QTrunc::constant(N_, s)); }
  DiffCombo scaled(const Rat& s) const { return scaled(CoeffPoly(s)); }

  friend bool operator==(const DiffCombo& a, const DiffCombo& b) {
    return a.N_ == b.N_ && a.t_ == b.t_;
  }
  friend bool operator!=(const DiffCombo& a, const DiffCombo& b) { return !(a == b); }

  std::string to_string() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [l, c] : t_) {
      if (!first) os << " + ";
      os << "(" << c.to_string() << ")*" << l.to_string();
      first = false;
    }
    return os.str();
  }

 private:
  int N_;
  std::map<DiffLabel, QTrunc> t_;
};

// A cohomology class is a combination supported on the finite reduced basis.
using CohomClass = DiffCombo;

// Outcome of an exact identity check: the residual series and the exponent
// range on which it is certified.
struct IdentityReport {
  bool holds;
  int lo;
  int hi;
  Laurent residual;
};

}  // namespace qglue
