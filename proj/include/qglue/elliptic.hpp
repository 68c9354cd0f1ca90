#pragma once

// Genus-1 differentials in closed form: the pole-2 generator series with
// free even coefficients c2, c4, c6, ..., the rescaled-derivative family
// f[-n] of one-pole differentials, the reduction of polar differentials in
// degree-1 cohomology, the exact pole-lowering identity, and the numeric
// evaluation of the even coefficients at a point tau of the upper
// half-plane.
//
// Everything symbolic is exact: the c-coefficients are free constant
// symbols per curve side ("c4_t1", "c4_t2", ...), and identities are
// checked as polynomial identities in them.  The closure table expresses
// the higher coefficients in c2 and c4 via the cubic differential equation
// of the pole-2 series; the numeric path evaluates the coefficients as
// weight-(2k+2) lattice sums through their nome expansions.

#include <complex>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "qglue/coeffpoly.hpp"
#include "qglue/diffcombo.hpp"
#include "qglue/errors.hpp"
#include "qglue/laurent.hpp"
#include "qglue/qtrunc.hpp"
#include "qglue/rational.hpp"
#include "qglue/symbols.hpp"

namespace qglue {

enum class WpTag { tau1, tau2, numeric };

namespace detail {

// Bernoulli numbers B_0..B_n (B_1 = -1/2 convention; only even indices are
// used here), from sum_{j<=m} C(m+1,j) B_j = 0.  Recomputed per call to
// stay pure.
inline std::vector<Rat> bernoulli_table(int n) {
  std::vector<Rat> b{Rat(1)};
  if (n >= 1) b.push_back(Rat(-1, 2));
  for (int m = 2; m <= n; ++m) {
    Rat s(0);
    for (int j = 0; j < m; ++j) s += binomial(m + 1, j) * b[j];
    b.push_back(-s / Rat(m + 1));
  }
  return b;
}

}  // namespace detail

// Numeric value of the even coefficient c_{2k} at tau: (2k+1) times the
// weight-(2k+2) lattice sum, evaluated through its nome expansion
//   E_w = 1 - (2w/B_w) * sum_{n>=1} sigma_{w-1}(n) q^n,   q = e^{2 pi i tau},
// scaled by 2*zeta(w) with zeta(w) = (-1)^{w/2+1} B_w (2pi)^w / (2 w!).
// The cutoff is fixed (not tuned per call) so results are deterministic;
// for Im(tau) >= 1/2 the dropped tail is far below 1e-12.
inline std::complex<double> numeric_c(std::complex<double> tau, int two_k) {
  if (two_k < 2 || two_k % 2 != 0)
    throw UsageError("numeric_c: index must be a positive even integer");
  if (!(tau.imag() > 0.0))
    throw UsageError("numeric_c: tau must lie in the upper half-plane");
  const int w = two_k + 2;
  const double two_pi = 2.0 * std::numbers::pi;
  const double bw = detail::bernoulli_table(w)[w].convert_to<double>();
  double fact = 1.0;
  for (int i = 2; i <= w; ++i) fact *= i;
  const double sign = (w / 2) % 2 == 0 ? -1.0 : 1.0;
  const double zeta_w = sign * bw * std::pow(two_pi, w) / (2.0 * fact);

  const std::complex<double> q = std::exp(std::complex<double>(0.0, 1.0) * two_pi * tau);
  constexpr int kCutoff = 256;
  std::complex<double> sum = 0.0, qn = 1.0;
  for (int n = 1; n <= kCutoff; ++n) {
    qn *= q;
    double sigma = 0.0;
    for (int d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      double dp = 1.0;
      for (int i = 0; i < w - 1; ++i) dp *= d;
      sigma += dp;
    }
    sum += sigma * qn;
  }
  const std::complex<double> ew = 1.0 - (2.0 * w / bw) * sum;
  return static_cast<double>(two_k + 1) * (2.0 * zeta_w) * ew;
}

struct WpContext {
  WpTag tag = WpTag::tau1;
  int order = 0;  // largest z-order wp_series vouches for
  std::map<int, std::complex<double>> cnum;  // numeric tag only

  static WpContext symbolic(int side, int order) {
    if (side != 1 && side != 2) throw UsageError("WpContext::symbolic: side must be 1 or 2");
    WpContext ctx;
    ctx.tag = side == 1 ? WpTag::tau1 : WpTag::tau2;
    ctx.order = order;
    return ctx;
  }

  static WpContext numeric_at(std::complex<double> tau, int order) {
    WpContext ctx;
    ctx.tag = WpTag::numeric;
    ctx.order = order;
    for (int k = 2; k <= order; k += 2) ctx.cnum.emplace(k, numeric_c(tau, k));
    return ctx;
  }

  bool is_numeric() const { return tag == WpTag::numeric; }
  int side() const { return tag == WpTag::tau2 ? 2 : 1; }

  std::string c_name(int k) const {
    return "c" + std::to_string(k) + "_t" + std::to_string(side());
  }

  // c_k as an exact coefficient polynomial: zero for k <= 0 and odd k, a
  // free constant symbol otherwise.
  CoeffPoly c_poly(int k) const {
    if (is_numeric())
      throw UsageError("WpContext: numeric context carries no exact coefficients");
    if (k <= 0 || k % 2 != 0) return CoeffPoly();
    return CoeffPoly(sym(c_name(k)));
  }

  std::complex<double> c_value(int k) const {
    if (!is_numeric())
      throw UsageError("WpContext: symbolic context carries no numeric coefficients");
    if (k <= 0 || k % 2 != 0) return 0.0;
    auto it = cnum.find(k);
    if (it == cnum.end()) throw WindowError("WpContext::c_value: index beyond context order");
    return it->second;
  }
};

// The pole-2 generator z^-2 + c2 z^2 + c4 z^4 + ... through z^K.  All odd
// coefficients and the constant vanish.
inline Laurent wp_series(const WpContext& ctx, int K) {
  if (K > ctx.order) throw WindowError("wp_series: window exceeds the context order");
  Laurent r(Var::z, 0, K);
  r.add_term(-2, QTrunc::one(0));
  for (int k = 2; k <= K; k += 2) {
    CoeffPoly c = ctx.c_poly(k);
    if (!c.is_zero()) r.add_term(k, QTrunc::constant(0, c));
  }
  return r;
}

// A one-pole differential f[-n] dz in the genus-1 chart; n = 0 denotes the
// regular generator dz itself.
struct EllDiff {
  int n;           // pole order (>= 2), or 0 for dz
  Laurent series;  // z-expansion of the f-part
  WpContext ctx;
};

// f[-n] = z^-n + (-1)^n sum_{m>=1} C(m+n-2, m) (c_{m+n-2} / (n-1)) z^m,
// through z^K.  The constant term vanishes, matching the normalization
// f[-n] = z^-n + O(z).
inline EllDiff f_series(int n, const WpContext& ctx, int K) {
  if (n < 2) throw UsageError("f_series: pole order must be at least 2");
  Laurent s(Var::z, 0, K);
  s.add_term(-n, QTrunc::one(0));
  const Rat sign = n % 2 == 0 ? Rat(1) : Rat(-1);
  for (int m = 1; m <= K; ++m) {
    CoeffPoly c = ctx.c_poly(m + n - 2);
    if (c.is_zero()) continue;
    s.add_term(m, QTrunc::constant(0, c.scaled(sign * binomial(m + n - 2, m) / Rat(n - 1))));
  }
  return EllDiff{n, s, ctx};
}

// Substitution table expressing c_{2k} (k >= 3) in c2 and c4: substitute
// the pole-2 series into its cubic differential equation
//   (f')^2 - 4 f^3 + 20 c2 f + 28 c4
// and solve the vanishing of the residual triangularly; the unknown c_{2k}
// enters the z^{2k-4} coefficient linearly with pivot -(8k+12).  Keys are
// the symbol names of the requested side.
inline std::map<std::string, CoeffPoly> c_closure(int K, int side = 1) {
  WpContext ctx = WpContext::symbolic(side, K + 4);
  Laurent wp = wp_series(ctx, K + 4);
  Laurent dw = wp.derived();
  Laurent resid = dw * dw - (wp * wp * wp).scaled(Rat(4)) + wp.scaled(ctx.c_poly(2).scaled(20)) +
                  Laurent::monomial(Var::z, 0, 0, ctx.c_poly(4).scaled(28));
  std::map<std::string, CoeffPoly> table;
  for (int k = 3; 2 * k - 4 <= K; ++k) {
    CoeffPoly eq = resid.coeff(2 * k - 4).coeff(0).subst(table);
    const std::string name = ctx.c_name(2 * k);
    CoeffPoly rest = eq.subst({{name, CoeffPoly()}});
    Rat pivot = (eq.subst({{name, CoeffPoly(Rat(1))}}) - rest).rational_value();
    table.emplace(name, rest.scaled(Rat(-1) / pivot));
  }
  return table;
}

// Reduction to the degree-1 cohomology basis {dz, om[-2]} (dz = al[0]):
// om[-2] and al[0] are fixed, om[-n] for n >= 3 reduces to
// -(c_{n-2}/(n-1)) dz.
inline CohomClass h1_reduce_ell(const DiffCombo& w, const WpContext& ctx) {
  CohomClass out(w.N());
  for (const auto& [label, coeff] : w.terms()) {
    if (label.kind == DiffLabel::Kind::alpha && label.index == 0) {
      out.add(label, coeff);
    } else if (label.kind == DiffLabel::Kind::omega && label.index == 2) {
      out.add(label, coeff);
    } else if (label.kind == DiffLabel::Kind::omega && label.index >= 3) {
      const int n = label.index;
      out.add(DiffLabel::alpha(0, label.side),
              coeff.scaled(ctx.c_poly(n - 2).scaled(Rat(-1, n - 1))));
    } else {
      throw UsageError("h1_reduce_ell: unknown basis label " + label.to_string());
    }
  }
  return out;
}

// Exact pole-lowering identity at genus 1:
//   d f[-1-n] + (1+n) f[-n-2] + c_n = 0
// as Laurent series, where c_n is read off as the z^n coefficient of the
// pole-2 generator (zero for odd n).  The residual is certified on
// exponents [-n-2, K-1].
inline IdentityReport lemma_ii_ell(int n, int K, const WpContext& ctx) {
  if (n < 1) throw UsageError("lemma_ii_ell: n must be >= 1");
  if (K < n + 2)
    throw InsufficientWindowError(
        "lemma_ii_ell: window too small to read the matching coefficient");
  Laurent df = f_series(n + 1, ctx, K).series.derived();
  Laurent g = f_series(n + 2, ctx, K - 1).series.scaled(Rat(n + 1));
  QTrunc cn = f_series(2, ctx, std::max(n, K - 1)).series.coeff(n);
  Laurent resid = df + g + Laurent::monomial(Var::z, 0, 0, cn);
  return IdentityReport{resid.is_zero(), -(n + 2), static_cast<int>(resid.window()), resid};
}

inline IdentityReport lemma_ii_ell(int n, int K) {
  return lemma_ii_ell(n, K, WpContext::symbolic(1, K + n + 4));
}

}  // namespace qglue
