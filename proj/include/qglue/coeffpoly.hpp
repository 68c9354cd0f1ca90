#pragma once

// Sparse exact polynomials in formal coefficient symbols over Q.  These are
// the scalars that truncated series carry: free constants, nilpotents
// (square to zero), and unit pairs (X*X_inv rewrites to 1).

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"
#include "symbols.hpp"

namespace qglue {

// Product of sym^exp factors, kept sorted by symbol name, exponents >= 1.
class Monomial {
 public:
  Monomial() = default;

  explicit Monomial(const Sym& s, int exp = 1) {
    if (exp < 0) throw UsageError("Monomial: negative exponent for " + s.name);
    if (exp > 0) f_.push_back({s, exp});
  }

  bool is_one() const { return f_.empty(); }

  int total_degree() const {
    int d = 0;
    for (const auto& [s, e] : f_) d += e;
    return d;
  }

  int exponent(const std::string& name) const {
    for (const auto& [s, e] : f_)
      if (s.name == name) return e;
    return 0;
  }

  const std::vector<std::pair<Sym, int>>& factors() const { return f_; }

  bool has_kind(SymKind k) const {
    for (const auto& [s, e] : f_)
      if (s.kind == k) return true;
    return false;
  }

  // Merged product.  Sets dead=true when a nilpotent symbol reaches
  // exponent >= 2 (the whole term vanishes); applies X*X_inv -> 1.
  static Monomial times(const Monomial& a, const Monomial& b, bool& dead) {
    Monomial r;
    r.f_.reserve(a.f_.size() + b.f_.size());
    size_t i = 0, j = 0;
    while (i < a.f_.size() || j < b.f_.size()) {
      bool take_a;
      if (i == a.f_.size()) take_a = false;
      else if (j == b.f_.size()) take_a = true;
      else take_a = !(b.f_[j].first < a.f_[i].first);
      if (i < a.f_.size() && j < b.f_.size() && a.f_[i].first == b.f_[j].first) {
        const Sym& s = a.f_[i].first;
        int e = a.f_[i].second + b.f_[j].second;
        if (s.kind == SymKind::Nilpotent && e >= 2) {
          dead = true;
          return Monomial();
        }
        r.f_.push_back({s, e});
        ++i, ++j;
      } else if (take_a) {
        r.f_.push_back(a.f_[i++]);
      } else {
        r.f_.push_back(b.f_[j++]);
      }
    }
    r.cancel_unit_pairs();
    return r;
  }

  // Canonical order: exponent-expanded name sequences compared
  // lexicographically, with a proper prefix sorting first.
  static int cmp(const Monomial& a, const Monomial& b) {
    size_t i = 0, j = 0;
    int ra = 0, rb = 0;  // multiplicity already consumed in current factor
    while (i < a.f_.size() && j < b.f_.size()) {
      const auto& [sa, ea] = a.f_[i];
      const auto& [sb, eb] = b.f_[j];
      if (sa.name != sb.name) return sa.name < sb.name ? -1 : 1;
      int take = std::min(ea - ra, eb - rb);
      ra += take, rb += take;
      if (ra == ea) ++i, ra = 0;
      if (rb == eb) ++j, rb = 0;
    }
    if (i < a.f_.size()) return 1;
    if (j < b.f_.size()) return -1;
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db ? -1 : 1;
    return 0;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return cmp(a, b) == 0; }

  std::string to_string() const {
    if (is_one()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, e] : f_) {
      if (!first) os << "·";
      first = false;
      os << s.name;
      if (e != 1) os << "^" << e;
    }
    return os.str();
  }

 private:
  std::vector<std::pair<Sym, int>> f_;

  void cancel_unit_pairs() {
    for (size_t i = 0; i < f_.size(); ++i) {
      if (f_[i].first.kind != SymKind::UnitPair || f_[i].second == 0) continue;
      for (size_t j = i + 1; j < f_.size(); ++j) {
        if (f_[j].first.name == f_[i].first.partner) {
          int m = std::min(f_[i].second, f_[j].second);
          f_[i].second -= m;
          f_[j].second -= m;
          break;
        }
      }
    }
    f_.erase(std::remove_if(f_.begin(), f_.end(),
                            [](const auto& p) { return p.second == 0; }),
             f_.end());
  }
};

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return Monomial::cmp(a, b) < 0;
  }
};

// Polynomial with rational coefficients in the symbols above.
class CoeffPoly {
 public:
  using TermMap = std::map<Monomial, Rat, MonomialLess>;

  CoeffPoly() = default;
  /* implicit */ CoeffPoly(const Rat& r) { add_term(Monomial(), r); }
  /* implicit */ CoeffPoly(long n) { add_term(Monomial(), Rat(n)); }
  /* implicit */ CoeffPoly(const Sym& s) { add_term(Monomial(s), Rat(1)); }

  static CoeffPoly term(const Sym& s, int exp, const Rat& coeff = Rat(1)) {
    CoeffPoly p;
    if (s.kind == SymKind::Nilpotent && exp >= 2) return p;
    p.add_term(Monomial(s, exp), coeff);
    return p;
  }

  static CoeffPoly from_monomial(const Monomial& m, const Rat& coeff) {
    CoeffPoly p;
    p.add_term(m, coeff);
    return p;
  }

  bool is_zero() const { return t_.empty(); }

  bool is_rational() const {
    return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one());
  }

  Rat rational_part() const {
    auto it = t_.find(Monomial());
    return it == t_.end() ? Rat(0) : it->second;
  }

  Rat rational_value() const {
    if (!is_rational()) throw UsageError("CoeffPoly: not a pure rational: " + to_string());
    return rational_part();
  }

  const TermMap& terms() const { return t_; }

  void add_term(const Monomial& m, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = t_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) t_.erase(it);
    }
  }

  CoeffPoly operator-() const {
    CoeffPoly r;
    for (const auto& [m, c] : t_) r.t_.emplace(m, -c);
    return r;
  }

  CoeffPoly& operator+=(const CoeffPoly& o) {
    for (const auto& [m, c] : o.t_) add_term(m, c);
    return *this;
  }
  CoeffPoly& operator-=(const CoeffPoly& o) {
    for (const auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
  }

  friend CoeffPoly operator+(CoeffPoly a, const CoeffPoly& b) { return a += b; }
  friend CoeffPoly operator-(CoeffPoly a, const CoeffPoly& b) { return a -= b; }

  friend CoeffPoly operator*(const CoeffPoly& a, const CoeffPoly& b) {
    CoeffPoly r;
    for (const auto& [ma, ca] : a.t_) {
      for (const auto& [mb, cb] : b.t_) {
        bool dead = false;
        Monomial m = Monomial::times(ma, mb, dead);
        if (!dead) r.add_term(m, ca * cb);
      }
    }
    return r;
  }

  CoeffPoly& operator*=(const CoeffPoly& o) { return *this = *this * o; }

  CoeffPoly scaled(const Rat& r) const {
    CoeffPoly out;
    if (r == 0) return out;
    for (const auto& [m, c] : t_) out.t_.emplace(m, c * r);
    return out;
  }

  CoeffPoly pow(int e) const {
    if (e < 0) throw UsageError("CoeffPoly::pow: negative exponent");
    CoeffPoly r(Rat(1));
    for (int i = 0; i < e; ++i) r *= *this;
    return r;
  }

  // Substitutes replacement polynomials for the named symbols.
  CoeffPoly subst(const std::map<std::string, CoeffPoly>& rep) const {
    CoeffPoly out;
    for (const auto& [m, c] : t_) {
      CoeffPoly term(c);
      for (const auto& [s, e] : m.factors()) {
        auto it = rep.find(s.name);
        CoeffPoly base = (it != rep.end()) ? it->second : CoeffPoly(s);
        if (it != rep.end()) {
          term *= base.pow(e);
        } else {
          term *= CoeffPoly::term(s, e);
        }
        if (term.is_zero()) break;
      }
      out += term;
    }
    return out;
  }

  bool contains_symbol(const std::string& name) const {
    for (const auto& [m, c] : t_)
      if (m.exponent(name) > 0) return true;
    return false;
  }

  friend bool operator==(const CoeffPoly& a, const CoeffPoly& b) {
    return a.t_ == b.t_;
  }
  friend bool operator!=(const CoeffPoly& a, const CoeffPoly& b) { return !(a == b); }

  std::string to_string() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : t_) {
      Rat a = c;
      if (first) {
        if (a < 0) { os << "-"; a = -a; }
      } else {
        os << (a < 0 ? " - " : " + ");
        if (a < 0) a = -a;
      }
      first = false;
      if (m.is_one()) {
        os << rat_to_string(a);
      } else if (a == 1) {
        os << m.to_string();
      } else {
        os << rat_to_string(a) << "·" << m.to_string();
      }
    }
    return os.str();
  }

 private:
  TermMap t_;
};

}  // namespace qglue
