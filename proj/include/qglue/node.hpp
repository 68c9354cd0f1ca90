#pragma once

// The coordinate algebra at a node: R[[x1, x2]] / (x1*x2 - q), with elements
// kept in the canonical form  c0 + sum_i a_i x1^i + sum_j b_j x2^j  and
// coefficients in QTrunc.  Mixed monomials reduce by one contraction per
// x1*x2 pair: x1^i * x2^j = q^min(i,j) * x^|i-j|.
//
// Window tracking: tails are stored through x-degree K (from the context).
// Each element carries a staircase bound S: the coefficient at x-degree d
// and q-degree n is known exactly iff d + n <= S.  The staircase is the
// shape that survives both the reduction rule (degree lost becomes q-order
// gained) and degree truncation, and it is multiplicative: S(ab) =
// min(S(a), S(b)) when no new truncation occurs, dropping to K when the
// product overflows the stored degree range.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "laurent.hpp"
#include "qtrunc.hpp"

namespace qglue {

struct NodeContext {
  int N;                           // q-truncation order
  int K;                           // stored x-degree bound for tails

  friend bool operator==(const NodeContext& a, const NodeContext& b) {
    return a.N == b.N && a.K == b.K;
  }
};

class NodeElement {
 public:
  static constexpr long SINF = (1L << 40);

  explicit NodeElement(const NodeContext& ctx)
      : ctx_(ctx), c0_(ctx.N), S_(SINF) {
    if (ctx.N < 0 || ctx.K < 0) throw UsageError("NodeElement: bad context");
  }

  static NodeElement constant(const NodeContext& ctx, const QTrunc& c) {
    NodeElement r(ctx);
    r.c0_ = c;
    return r;
  }

  static NodeElement one(const NodeContext& ctx) {
    return constant(ctx, QTrunc::one(ctx.N));
  }

  static NodeElement monomial(const NodeContext& ctx, int side, int degree,
                              const QTrunc& coeff) {
    NodeElement r(ctx);
    r.add_tail(side, degree, coeff);
    return r;
  }

  const NodeContext& ctx() const { return ctx_; }
  long staircase() const { return S_; }

  NodeElement with_staircase(long S) const {
    NodeElement r = *this;
    r.S_ = S;
    return r;
  }

  // Raw component access (unchecked against the staircase).
  const QTrunc& c0() const { return c0_; }
  QTrunc a_tail(int i) const { return tail(a_, i); }
  QTrunc b_tail(int j) const { return tail(b_, j); }
  int a_size() const { return static_cast<int>(a_.size()); }
  int b_size() const { return static_cast<int>(b_.size()); }

  // Checked reads: the (x-degree, q-degree) pair must lie on the staircase.
  CoeffPoly at(int side, int degree, int n) const {
    if (degree + n > S_)
      throw WindowError("NodeElement: coefficient at degree " + std::to_string(degree) +
                        ", q^" + std::to_string(n) + " is beyond staircase " +
                        std::to_string(S_));
    if (degree == 0) return c0_.coeff(n);
    return tail(side == 1 ? a_ : b_, degree).coeff(n);
  }

  void set_c0(const QTrunc& c) { c0_ = check_q(c); }

  void add_c0(const QTrunc& c) { c0_ += check_q(c); }

  void add_tail(int side, int degree, const QTrunc& coeff) {
    check_q(coeff);
    if (degree <= 0) throw UsageError("NodeElement: tail degree must be positive");
    if (degree > ctx_.K) {
      if (!coeff.is_zero()) S_ = std::min(S_, static_cast<long>(ctx_.K));
      return;
    }
    auto& t = (side == 1) ? a_ : b_;
    if (static_cast<int>(t.size()) < degree) t.resize(degree, QTrunc(ctx_.N));
    t[degree - 1] += coeff;
  }

  bool is_zero() const {
    if (!c0_.is_zero()) return false;
    for (const auto& t : a_)
      if (!t.is_zero()) return false;
    for (const auto& t : b_)
      if (!t.is_zero()) return false;
    return true;
  }

  NodeElement operator-() const {
    NodeElement r(ctx_);
    r.S_ = S_;
    r.c0_ = -c0_;
    r.a_.reserve(a_.size());
    r.b_.reserve(b_.size());
    for (const auto& t : a_) r.a_.push_back(-t);
    for (const auto& t : b_) r.b_.push_back(-t);
    return r;
  }

  friend NodeElement operator+(const NodeElement& x, const NodeElement& y) {
    x.check_ctx(y);
    NodeElement r(x.ctx_);
    r.S_ = std::min(x.S_, y.S_);
    r.c0_ = x.c0_ + y.c0_;
    r.a_ = add_tails(x.a_, y.a_, x.ctx_.N);
    r.b_ = add_tails(x.b_, y.b_, x.ctx_.N);
    return r;
  }

  friend NodeElement operator-(const NodeElement& x, const NodeElement& y) {
    return x + (-y);
  }

  // Scaling by a q-polynomial.  Scaling by q^m shifts unknowns up in
  // q-degree, so the staircase improves by the scalar's q-order.
  NodeElement scaled(const QTrunc& s) const {
    NodeElement r(ctx_);
    if (s.is_zero()) return r;
    r.S_ = (S_ >= SINF) ? SINF : S_ + s.ord_q();
    r.c0_ = c0_ * s;
    r.a_.reserve(a_.size());
    r.b_.reserve(b_.size());
    for (const auto& t : a_) r.a_.push_back(t * s);
    for (const auto& t : b_) r.b_.push_back(t * s);
    return r;
  }

  NodeElement scaled(const CoeffPoly& s) const {
    return scaled(QTrunc::constant(ctx_.N, s));
  }
  NodeElement scaled(const Rat& s) const { return scaled(CoeffPoly(s)); }

  friend NodeElement operator*(const NodeElement& x, const NodeElement& y) {
    x.check_ctx(y);
    const NodeContext& ctx = x.ctx_;
    NodeElement r(ctx);
    bool dropped = false;
    QTrunc qq = QTrunc::q_power(ctx.N, 1, CoeffPoly(Rat(1)));  // one contraction
    std::vector<QTrunc> qqpow{QTrunc::one(ctx.N)};
    auto contraction = [&](int m) -> const QTrunc& {
      while (static_cast<int>(qqpow.size()) <= m) qqpow.push_back(qqpow.back() * qq);
      return qqpow[m];
    };

    // c0 * y
    r.c0_ += x.c0_ * y.c0_;
    for (int j = 1; j <= y.size(1); ++j) r.acc(1, j, x.c0_ * y.tail_ref(1, j), dropped);
    for (int j = 1; j <= y.size(2); ++j) r.acc(2, j, x.c0_ * y.tail_ref(2, j), dropped);

    for (int side = 1; side <= 2; ++side) {
      int other = 3 - side;
      for (int i = 1; i <= x.size(side); ++i) {
        const QTrunc& xi = x.tail_ref(side, i);
        if (xi.is_zero()) continue;
        // times y's constant
        r.acc(side, i, xi * y.c0_, dropped);
        // same-side tails multiply without contraction
        for (int j = 1; j <= y.size(side); ++j) {
          const QTrunc& yj = y.tail_ref(side, j);
          if (yj.is_zero()) continue;
          r.acc(side, i + j, xi * yj, dropped);
        }
        // opposite-side tails contract min(i, j) times
        for (int j = 1; j <= y.size(other); ++j) {
          const QTrunc& yj = y.tail_ref(other, j);
          if (yj.is_zero()) continue;
          int m = std::min(i, j);
          QTrunc v = xi * yj * contraction(m);
          if (i == j) r.c0_ += v;
          else if (i > j) r.acc(side, i - j, v, dropped);
          else r.acc(other, j - i, v, dropped);
        }
      }
    }
    r.S_ = std::min(x.S_, y.S_);
    if (dropped) r.S_ = std::min(r.S_, static_cast<long>(ctx.K));
    return r;
  }

  // Multiplicative inverse: c0 must be a QTrunc unit; the geometric series
  // over the tails terminates because every term loses x-degree or gains
  // q-order (x-degree + 2*q-order grows with each factor).
  NodeElement inverted() const {
    QTrunc c0_inv = c0_.invert();
    NodeElement t(ctx_);  // tails / c0
    t.S_ = S_;
    t.a_.reserve(a_.size());
    t.b_.reserve(b_.size());
    for (const auto& u : a_) t.a_.push_back(u * c0_inv);
    for (const auto& u : b_) t.b_.push_back(u * c0_inv);
    NodeElement sum = one(ctx_).with_staircase(S_);
    NodeElement p = sum;
    int bound = ctx_.K + 2 * ctx_.N + 2;
    for (int k = 1; k <= bound; ++k) {
      p = p * (-t);
      if (p.is_zero()) break;
      sum = sum + p;
    }
    return sum.scaled(c0_inv);
  }

  // Boundary restriction: the Laurent expansion on side 1 (x2 := q/x1)
  // or side 2 (x1 := q/x2).
  Laurent boundary(int side) const {
    Var var = (side == 1) ? Var::x1 : Var::x2;
    long Kflat = (S_ >= SINF) ? Laurent::KINF : S_ - ctx_.N;
    Laurent r(var, ctx_.N, Kflat);
    r.add_term(0, c0_);
    const auto& same = (side == 1) ? a_ : b_;
    const auto& opp = (side == 1) ? b_ : a_;
    QTrunc qq = QTrunc::q_power(ctx_.N, 1, CoeffPoly(Rat(1)));
    QTrunc qqp = QTrunc::one(ctx_.N);
    for (int i = 1; i <= static_cast<int>(same.size()); ++i)
      r.add_term(i, same[i - 1]);
    for (int j = 1; j <= static_cast<int>(opp.size()); ++j) {
      qqp = qqp * qq;
      r.add_term(-j, opp[j - 1] * qqp);
    }
    return r;
  }

  friend bool operator==(const NodeElement& x, const NodeElement& y) {
    x.check_ctx(y);
    return x.S_ == y.S_ && (x - y).is_zero();
  }

  // Equality of every coefficient on the staircase d + n <= S_req; requires
  // both operands to know that region.
  static bool equal_on_staircase(const NodeElement& x, const NodeElement& y, long S_req) {
    x.check_ctx(y);
    if (x.S_ < S_req || y.S_ < S_req)
      throw WindowError("NodeElement: staircase too small for requested comparison");
    NodeElement d = x - y;
    const int N = x.ctx_.N, K = x.ctx_.K;
    for (int n = 0; n <= N; ++n) {
      if (0 + n <= S_req && !d.c0_.coeff(n).is_zero()) return false;
      for (int deg = 1; deg <= K; ++deg) {
        if (deg + n > S_req) break;
        if (!d.tail(d.a_, deg).coeff(n).is_zero()) return false;
        if (!d.tail(d.b_, deg).coeff(n).is_zero()) return false;
      }
    }
    return true;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "(" << c0_.to_string() << ")";
    for (int i = 1; i <= static_cast<int>(a_.size()); ++i) {
      if (a_[i - 1].is_zero()) continue;
      os << " + (" << a_[i - 1].to_string() << ")·x1";
      if (i != 1) os << "^" << i;
    }
    for (int j = 1; j <= static_cast<int>(b_.size()); ++j) {
      if (b_[j - 1].is_zero()) continue;
      os << " + (" << b_[j - 1].to_string() << ")·x2";
      if (j != 1) os << "^" << j;
    }
    return os.str();
  }

 private:
  NodeContext ctx_;
  QTrunc c0_;
  std::vector<QTrunc> a_, b_;  // index d-1 <-> degree d, stored through ctx_.K
  long S_;

  QTrunc tail(const std::vector<QTrunc>& t, int d) const {
    if (d <= 0) throw UsageError("NodeElement: tail degree must be positive");
    if (d > static_cast<int>(t.size())) return QTrunc(ctx_.N);
    return t[d - 1];
  }

  // Unchecked stored-tail access; callers stay within size(side).
  const QTrunc& tail_ref(int side, int d) const {
    const auto& t = (side == 1) ? a_ : b_;
    return t[d - 1];
  }

  int size(int side) const {
    return static_cast<int>(((side == 1) ? a_ : b_).size());
  }

  void acc(int side, int degree, const QTrunc& v, bool& dropped) {
    if (v.is_zero()) return;
    if (degree > ctx_.K) {
      dropped = true;
      return;
    }
    auto& t = (side == 1) ? a_ : b_;
    if (static_cast<int>(t.size()) < degree) t.resize(degree, QTrunc(ctx_.N));
    t[degree - 1] += v;
  }

  const QTrunc& check_q(const QTrunc& c) const {
    if (c.N() != ctx_.N) throw UsageError("NodeElement: coefficient with mixed q-order");
    return c;
  }

  void check_ctx(const NodeElement& o) const {
    if (!(ctx_ == o.ctx_)) throw UsageError("NodeElement: mixed contexts");
  }

  static std::vector<QTrunc> add_tails(const std::vector<QTrunc>& x,
                                       const std::vector<QTrunc>& y, int N) {
    std::vector<QTrunc> r;
    r.reserve(std::max(x.size(), y.size()));
    for (size_t d = 0; d < std::max(x.size(), y.size()); ++d) {
      QTrunc v(N);
      if (d < x.size()) v += x[d];
      if (d < y.size()) v += y[d];
      r.push_back(v);
    }
    return r;
  }
};

// Reconstructs a canonical-form element from its two boundary expansions.
// The positive parts of the expansions determine the tails and constant;
// the polar parts are then forced, and any mismatch on a readable
// coefficient means the pair is not a boundary image (returns nullopt).
inline std::optional<NodeElement> iota_preimage(const Laurent& p1, const Laurent& p2,
                                                const NodeContext& ctx) {
  if (p1.var() != Var::x1 || p2.var() != Var::x2)
    throw UsageError("iota_preimage: expected expansions in x1 and x2");
  if (p1.N() != ctx.N || p2.N() != ctx.N)
    throw UsageError("iota_preimage: mixed q-orders");

  NodeElement r(ctx);
  long K1 = p1.window(), K2 = p2.window();
  if (K1 < 0 || K2 < 0)
    throw InsufficientWindowError("iota_preimage: windows too small to read constants");
  QTrunc c0 = p1.coeff(0);
  if (!(p2.coeff(0) == c0)) return std::nullopt;
  r.set_c0(c0);

  QTrunc qq = QTrunc::q_power(ctx.N, 1, CoeffPoly(Rat(1)));
  std::vector<QTrunc> qqpow{QTrunc::one(ctx.N)};
  auto contraction = [&](int m) -> const QTrunc& {
    while (static_cast<int>(qqpow.size()) <= m) qqpow.push_back(qqpow.back() * qq);
    return qqpow[m];
  };

  int amax = static_cast<int>(std::min<long>(ctx.K, K1));
  for (int i = 1; i <= amax; ++i) r.add_tail(1, i, p1.coeff(i));
  int bmax = static_cast<int>(std::min<long>(ctx.K, K2));
  for (int j = 1; j <= bmax; ++j) r.add_tail(2, j, p2.coeff(j));

  // Cross checks on the polar parts, wherever both sides are readable.
  for (int j = 1; j <= bmax; ++j)
    if (!(p1.coeff(-j) == p2.coeff(j) * contraction(j))) return std::nullopt;
  for (int i = 1; i <= amax; ++i)
    if (!(p2.coeff(-i) == p1.coeff(i) * contraction(i))) return std::nullopt;
  // Polar terms beyond q-order N cannot arise from any element.
  if (!p1.is_zero())
    for (int e = p1.emin(); e < -ctx.N; ++e)
      if (!p1.coeff(e).is_zero()) return std::nullopt;
  if (!p2.is_zero())
    for (int e = p2.emin(); e < -ctx.N; ++e)
      if (!p2.coeff(e).is_zero()) return std::nullopt;

  long S = std::min({K1, K2, static_cast<long>(ctx.K)});
  return r.with_staircase(S >= Laurent::KINF ? NodeElement::SINF : S);
}

// A relative differential in canonical form:
//   s * (x1 dx2)  +  f(x1) dx1  +  g(x2) dx2
// with s in QTrunc and f, g one-sided NodeElements (pure a-tail / b-tail).
struct NodeDiff {
  NodeContext ctx;
  QTrunc s;
  NodeElement f;  // constant + x1-tail only
  NodeElement g;  // constant + x2-tail only

  explicit NodeDiff(const NodeContext& c)
      : ctx(c), s(c.N), f(NodeElement(c)), g(NodeElement(c)) {}

  friend bool operator==(const NodeDiff& u, const NodeDiff& v) {
    return u.s == v.s && u.f == v.f && u.g == v.g;
  }
};

// Rewrites P dx1 + Q dx2 into canonical form using
//   x2 dx1 = -x1 dx2,
//   x1^i dx2 = -q x1^{i-2} dx1   (i >= 2),
//   x2^j dx1 = -q x2^{j-2} dx2   (j >= 2).
inline NodeDiff normalize_diff(const NodeElement& P, const NodeElement& Q) {
  const NodeContext& ctx = P.ctx();
  if (!(Q.ctx() == ctx)) throw UsageError("normalize_diff: mixed contexts");
  NodeDiff w(ctx);
  QTrunc qq = QTrunc::q_power(ctx.N, 1, CoeffPoly(Rat(1)));
  long S = std::min(P.staircase(), Q.staircase());

  w.s = Q.a_tail(1) - P.b_tail(1);

  NodeElement f(ctx);
  f.set_c0(P.c0());
  for (int i = 1; i <= P.a_size(); ++i) f.add_tail(1, i, P.a_tail(i));
  for (int i = 2; i <= Q.a_size(); ++i) {
    QTrunc v = -(Q.a_tail(i) * qq);
    if (i == 2) f.add_c0(v);
    else f.add_tail(1, i - 2, v);
  }

  NodeElement g(ctx);
  g.set_c0(Q.c0());
  for (int j = 1; j <= Q.b_size(); ++j) g.add_tail(2, j, Q.b_tail(j));
  for (int j = 2; j <= P.b_size(); ++j) {
    QTrunc v = -(P.b_tail(j) * qq);
    if (j == 2) g.add_c0(v);
    else g.add_tail(2, j - 2, v);
  }

  w.f = f.with_staircase(S);
  w.g = g.with_staircase(S);
  return w;
}

// Exterior derivative of a canonical-form element, as the raw pair (P, Q)
// with d(v) = P dx1 + Q dx2.
inline std::pair<NodeElement, NodeElement> d_raw(const NodeElement& v) {
  const NodeContext& ctx = v.ctx();
  long S = (v.staircase() >= NodeElement::SINF) ? NodeElement::SINF : v.staircase() - 1;
  NodeElement P(ctx), Q(ctx);
  for (int i = 1; i <= v.a_size(); ++i) {
    QTrunc c = v.a_tail(i).scaled(Rat(i));
    if (i == 1) P.add_c0(c);
    else P.add_tail(1, i - 1, c);
  }
  for (int j = 1; j <= v.b_size(); ++j) {
    QTrunc c = v.b_tail(j).scaled(Rat(j));
    if (j == 1) Q.add_c0(c);
    else Q.add_tail(2, j - 1, c);
  }
  return {P.with_staircase(S), Q.with_staircase(S)};
}

inline NodeDiff d_node(const NodeElement& v) {
  auto [P, Q] = d_raw(v);
  return normalize_diff(P, Q);
}

// The canonical degree-0 generator e = dx2/x2 = -dx1/x1 of the dualizing
// module.  to_omega expresses a canonical differential as A*e:
//   dx1 = -x1 e,   dx2 = x2 e,   x1 dx2 = q e.
inline NodeElement to_omega(const NodeDiff& w) {
  const NodeContext& ctx = w.ctx;
  QTrunc qq = QTrunc::q_power(ctx.N, 1, CoeffPoly(Rat(1)));
  NodeElement x1(ctx), x2(ctx);
  x1.add_tail(1, 1, QTrunc::one(ctx.N));
  x2.add_tail(2, 1, QTrunc::one(ctx.N));
  NodeElement r = NodeElement::constant(ctx, w.s * qq) - x1 * w.f + x2 * w.g;
  return r.with_staircase(std::min(w.f.staircase(), w.g.staircase()));
}

// Determinant of the complex [R*(x1 dx2) -> R*e] induced by d on the
// canonical splitting: x1 dx2 maps to q e.
inline QTrunc theta_det(const NodeContext& ctx) {
  NodeDiff gen(ctx);
  gen.s = QTrunc::one(ctx.N);
  NodeElement img = to_omega(gen);
  return img.c0();
}

// Trivialization change under (x1, x2, q) -> (lam x1, x2, lam q): the new
// generator lam*x1 dx2 rescales the determinant line by lam^{-1}.
inline QTrunc theta_scaling(const NodeContext& ctx, const std::string& lam_name = "lam") {
  auto [lam, lam_inv] = unit_pair(lam_name);
  QTrunc new_gen_in_old = QTrunc::constant(ctx.N, CoeffPoly(lam));  // lam*x1dx2 = lam*(x1dx2)
  return new_gen_in_old.invert();
}

}  // namespace qglue
