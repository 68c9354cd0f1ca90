#pragma once

// General-genus symbolic differential bases on a curve with one marked
// point and a canonical formal parameter.
//
// The basis consists of the regular generators al[0..g-1], with
// al[i] = (z^i + z^g sum_{n>=0} al_n[i] z^n) dz, and the one-pole
// differentials om[-j] = (z^-j + z^g sum_{n>=0} om_n[-j] z^n) dz for
// j >= 2 (zero residue, no terms between the pole and z^g).  The expansion
// coefficients al_n[i], om_n[-j] are free constant symbols, except
// al_n[g-1] = 0, which is the canonical-parameter normalization.
//
// The module provides the canonical-parameter solver, the residue-theorem
// expansion record of the pole-(g+n) function f[-g-n], the reduction of
// om[-g-n-1] in degree-1 cohomology, and the exact pole-lowering identity
// relating the two, checked on the window the expansions actually
// determine.  Coefficients beyond z^g of any one differential are unknown;
// nothing here reads past a stored window.

#include <map>
#include <string>
#include <vector>

#include "qglue/coeffpoly.hpp"
#include "qglue/diffcombo.hpp"
#include "qglue/elliptic.hpp"
#include "qglue/errors.hpp"
#include "qglue/laurent.hpp"
#include "qglue/qtrunc.hpp"
#include "qglue/rational.hpp"
#include "qglue/symbols.hpp"

namespace qglue {

struct GenusData {
  int g;
  int side;

  static GenusData make(int g, int side = 1) {
    if (g < 1) throw UsageError("GenusData: genus must be >= 1");
    if (side != 1 && side != 2) throw UsageError("GenusData: side must be 1 or 2");
    return GenusData{g, side};
  }

  std::string alpha_name(int n, int i) const {
    return "al" + std::to_string(side) + "_" + std::to_string(n) + "_" + std::to_string(i);
  }
  std::string omega_name(int n, int j) const {
    return "om" + std::to_string(side) + "_" + std::to_string(n) + "_" + std::to_string(j);
  }

  // Expansion symbol al_n[i]; identically zero at i = g-1 (the
  // canonical-parameter normalization).
  CoeffPoly alpha_sym(int n, int i) const {
    if (n < 0 || i < 0 || i >= g) throw UsageError("GenusData::alpha_sym: index out of range");
    if (i == g - 1) return CoeffPoly();
    return CoeffPoly(sym(alpha_name(n, i)));
  }

  // Expansion symbol om_n[-j], j >= 2; free.
  CoeffPoly omega_sym(int n, int j) const {
    if (n < 0 || j < 2) throw UsageError("GenusData::omega_sym: index out of range");
    return CoeffPoly(sym(omega_name(n, j)));
  }
};

// The unique parameter series u(z) = z + c2 z^2 + ... with
// u^{g-1} u' = 1 + a[0] z + a[1] z^2 + ..., solved triangularly through
// z^K.  The coefficient c_k enters the z^{g+k-2} equation linearly with
// pivot g+k-1, so the system has unit pivots and never branches.  Entries
// of a beyond the given sequence are zero.
inline Laurent canonical_param(const std::vector<CoeffPoly>& a, int g, int K) {
  if (g < 1) throw UsageError("canonical_param: genus must be >= 1");
  if (K < 2) throw UsageError("canonical_param: window must be >= 2");
  Laurent target = Laurent::monomial(Var::z, 0, g - 1, CoeffPoly(Rat(1)));
  for (int m = 0; m < static_cast<int>(a.size()); ++m)
    target = target + Laurent::monomial(Var::z, 0, g + m, a[m]);
  Laurent u = Laurent::monomial(Var::z, 0, 1, CoeffPoly(Rat(1)), K);
  for (int k = 2; k <= K; ++k) {
    Laurent lhs = Laurent::monomial(Var::z, 0, 0, CoeffPoly(Rat(1)), Laurent::KINF);
    for (int i = 0; i < g - 1; ++i) lhs = lhs * u;
    lhs = lhs * u.derived();
    CoeffPoly gap = (lhs - target).coeff(g + k - 2).coeff(0);
    u.add_term(k, QTrunc::constant(0, gap.scaled(Rat(-1, g + k - 1))));
  }
  return u;
}

// z-expansion of the regular generator al[i] through z^K, with q-order N
// coefficients.
inline Laurent alpha_expansion(const GenusData& gd, int i, int N, int K) {
  if (i < 0 || i >= gd.g) throw UsageError("alpha_expansion: index out of range");
  Laurent r(Var::z, N, K);
  if (i <= K) r.add_term(i, QTrunc::one(N));
  for (int m = 0; gd.g + m <= K; ++m) {
    CoeffPoly c = gd.alpha_sym(m, i);
    if (!c.is_zero()) r.add_term(gd.g + m, QTrunc::constant(N, c));
  }
  return r;
}

// z-expansion of the one-pole differential om[-j] through z^K: the pole,
// then nothing until the z^g tail of free symbols.
inline Laurent omega_expansion(const GenusData& gd, int j, int N, int K) {
  if (j < 2) throw UsageError("omega_expansion: pole order must be >= 2");
  Laurent r(Var::z, N, K);
  r.add_term(-j, QTrunc::one(N));
  for (int m = 0; gd.g + m <= K; ++m)
    r.add_term(gd.g + m, QTrunc::constant(N, gd.omega_sym(m, j)));
  return r;
}

// z-expansion of a combination of basis labels through z^K.
inline Laurent combo_expansion(const GenusData& gd, const DiffCombo& c, int K) {
  Laurent r(Var::z, c.N(), K);
  for (const auto& [label, coeff] : c.terms()) {
    if (label.side != gd.side)
      throw UsageError("combo_expansion: label side does not match the genus data");
    Laurent e = label.kind == DiffLabel::Kind::alpha
                    ? alpha_expansion(gd, label.index, c.N(), K)
                    : omega_expansion(gd, label.index, c.N(), K);
    r = r + e.scaled(coeff);
  }
  return r;
}

// Expansion record of the pole-(g+n) function: the residue theorem gives
//   -f[-g-n] + z^{-g-n} = al_{n-1}[g-2]/z^{g-1} + ... + al_{n-1}[0]/z
//                       + om_{n-1}[-2] z + ... + om_{n-1}[-g-1] z^g
// up to z^{g+1}, with the additive constant normalized to zero.  The
// returned series carries window g; the tail beyond it is genuinely
// undetermined by the basis expansions.
inline Laurent f_general(const GenusData& gd, int n) {
  if (n < 1) throw UsageError("f_general: n must be >= 1");
  const int g = gd.g;
  Laurent r(Var::z, 0, g);
  for (int j = 1; j <= g - 1; ++j) {
    CoeffPoly c = gd.alpha_sym(n - 1, j - 1);
    if (!c.is_zero()) r.add_term(-j, QTrunc::constant(0, c));
  }
  for (int m = 1; m <= g; ++m) r.add_term(m, QTrunc::constant(0, gd.omega_sym(n - 1, m + 1)));
  return r;
}

// Reduction of om[-g-n-1] in degree-1 cohomology, on the finite basis
// {al[0..g-1], om[-2..-g-1]}:
//   om[-g-n-1] = sum_{k=1}^{g-1} (g-k)/(g+n) al_{n-1}[g-1-k] om[-g-1+k]
//              - sum_{k=1}^{g}     k/(g+n) om_{n-1}[-k-1]   al[k-1].
// Labels whose coefficient vanishes (the weight-(g-1) term at g=1, and any
// normalized-zero symbol) are dropped.
inline CohomClass h1_general(const GenusData& gd, int n) {
  if (n < 1) throw UsageError("h1_general: n must be >= 1");
  const int g = gd.g;
  CohomClass out(0);
  for (int k = 1; k <= g - 1; ++k)
    out.add(DiffLabel::omega(g + 1 - k, gd.side),
            gd.alpha_sym(n - 1, g - 1 - k).scaled(Rat(g - k, g + n)));
  for (int k = 1; k <= g; ++k)
    out.add(DiffLabel::alpha(k - 1, gd.side),
            gd.omega_sym(n - 1, k + 1).scaled(Rat(-k, g + n)));
  return out;
}

// Exact pole-lowering identity on the window the expansions determine:
//   d f[-g-n] + (g+n) om[-g-n-1] = (g+n) * (expansion of the reduction)
// certified for exponents in [-g-n-1, g-1]; the z^g coefficients of both
// sides involve undetermined tails and are not compared.
inline IdentityReport lemma_ii_window(const GenusData& gd, int n) {
  if (n < 1) throw UsageError("lemma_ii_window: n must be >= 1");
  const int g = gd.g;
  Laurent f = Laurent::monomial(Var::z, 0, -(g + n), CoeffPoly(Rat(1))) - f_general(gd, n);
  Laurent lhs = f.derived() + omega_expansion(gd, g + n + 1, 0, g - 1).scaled(Rat(g + n));
  Laurent rhs = combo_expansion(gd, h1_general(gd, n), g - 1).scaled(Rat(g + n));
  Laurent resid = lhs - rhs;
  return IdentityReport{resid.is_zero(), -(g + n + 1), static_cast<int>(resid.window()), resid};
}

// Specialization of the genus-1 symbols to the closed-form family:
// om_n[-j] is the z^{n+1} coefficient of f[-j], i.e.
// (-1)^j C(n+j-1, n+1) c_{n+j-1} / (j-1); the al-symbols are already zero.
// Keys cover 0 <= n <= n_max, 2 <= j <= j_max.
inline std::map<std::string, CoeffPoly> elliptic_substitution(const GenusData& gd,
                                                              const WpContext& ctx, int n_max,
                                                              int j_max) {
  if (gd.g != 1) throw UsageError("elliptic_substitution: genus-1 data required");
  if (ctx.side() != gd.side)
    throw UsageError("elliptic_substitution: context side does not match the genus data");
  std::map<std::string, CoeffPoly> rep;
  for (int n = 0; n <= n_max; ++n)
    for (int j = 2; j <= j_max; ++j) {
      const Rat sign = j % 2 == 0 ? Rat(1) : Rat(-1);
      rep.emplace(gd.omega_name(n, j),
                  ctx.c_poly(n + j - 1).scaled(sign * binomial(n + j - 1, n + 1) / Rat(j - 1)));
    }
  return rep;
}

}  // namespace qglue
