#pragma once

#include "udc/bigfloat.hpp"

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <vector>

namespace udc {

// Exact Bernoulli number B_n (B_1 = -1/2). Cached across calls.
mpq_class bernoulli(long n);

BigComplex gamma(const BigComplex& x, const PrecisionCtx& ctx);
BigComplex digamma(const BigComplex& x, const PrecisionCtx& ctx);
BigFloat gamma(const BigFloat& x, const PrecisionCtx& ctx);
BigFloat digamma(const BigFloat& x, const PrecisionCtx& ctx);
// Riemann zeta at an integer s >= 2 by Euler-Maclaurin.
BigFloat zeta_value(long s, const PrecisionCtx& ctx);

// Gauss 2F1. Direct series for |z| < 0.9; the (a,a;2a) family is continued
// to the whole cut plane (upper limit on z > 1).
BigComplex hyp2f1(const BigComplex& a, const BigComplex& b, const BigComplex& c, const BigComplex& z,
                  const PrecisionCtx& ctx);

// 2F1(a,a;2a;w) for real a, evaluated from precomputed coefficient tables.
// Regions: Taylor series at 0, the logarithmic expansion at 1, the expansion
// at infinity, and ODE Taylor series centred on the upper unit circle.
class AAFamily {
 public:
  enum class Region { ORIGIN, ONE, INFINITY_, CIRCLE };

  AAFamily(const mpq_class& a, mpfr_prec_t prec);

  // f(w). If ell = log(1-w) is given it is used in place of w near 1,
  // which keeps full relative accuracy when 1-w underflows in double range.
  BigComplex eval(const BigComplex& w, const std::optional<BigComplex>& ell = std::nullopt) const;
  // Value and derivative by direct series, |w| < 1 only.
  std::pair<BigComplex, BigComplex> eval_with_derivative_origin(const BigComplex& w) const;
  Region region_for(const BigComplex& w) const;

  const mpq_class& a() const { return a_; }
  mpfr_prec_t prec() const { return prec_; }
  // Gamma(2a)/Gamma(a)^2.
  const BigFloat& log_prefactor() const { return pref_; }

 private:
  struct Center {
    BigComplex w0;
    BigFloat radius;
    std::vector<BigComplex> b;
    std::vector<double> lb;
  };

  mpq_class a_;
  mpfr_prec_t prec_;
  BigFloat af_;
  BigFloat pref_;
  std::vector<BigFloat> direct_, logc_, logcd_, infu_, infuv_;
  std::vector<double> direct_l_, logc_l_, logcd_l_, infu_l_, infuv_l_;
  std::vector<Center> centers_;
  long kmax_ = 0;

  Center make_center(const BigComplex& w0, const BigComplex& f0, const BigComplex& df0, long terms) const;
  BigComplex eval_upper(const BigComplex& w, const std::optional<BigComplex>& ell) const;
};

// Shared, immutable family tables keyed by (a, prec).
std::shared_ptr<const AAFamily> aa_family(const mpq_class& a, mpfr_prec_t prec);

// s_N(z) = z^{1/N} 2F1(a1,a1;2a1;z) / 2F1(a2,a2;2a2;z), a1 = (N+1)/2N, a2 = (N-1)/2N,
// principal root.
BigComplex s_N(const BigComplex& z, long N, const PrecisionCtx& ctx);
// The ratio 2F1(a1,a1;2a1;w)/2F1(a2,a2;2a2;w) without the root factor.
BigComplex s_ratio(const BigComplex& w, long N, const PrecisionCtx& ctx);
// gamma_N = |F_N'(0)|.
BigFloat gamma_N(long N, const PrecisionCtx& ctx);
// 16^{1/N} (1 + zeta(3)/(2N^3) + 3 zeta(5)/(8N^5)).
BigFloat gamma_N_asymptotic(long N, const PrecisionCtx& ctx);
// psi_N(z) = z * ratio(z^N) / gamma_N: the local inverse of F_N at 0, analytic on |z| < 1.
BigComplex psi_N(const BigComplex& z, long N, const PrecisionCtx& ctx);

}  // namespace udc
