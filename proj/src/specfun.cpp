#include "udc/hypergeom.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace udc {

namespace {

std::mutex bern_mutex;
std::vector<mpq_class> bern_cache;
std::vector<mpq_class> bern_row;

bool is_nonpositive_integer(const BigComplex& x) {
  if (!x.im.is_zero()) return false;
  if (x.re.sign() > 0) return false;
  return mpfr_integer_p(x.re.get()) != 0;
}

BigComplex with_prec(const BigComplex& x, mpfr_prec_t p) {
  BigComplex r = x;
  r.set_prec(p);
  return r;
}

// log Gamma(z) up to a multiple of 2 pi i, for Re z >= 1/2.
BigComplex log_gamma_shifted(const BigComplex& z, mpfr_prec_t p) {
  double R = 0.2 * static_cast<double>(p) + 10.0;
  long m = 0;
  double zr = z.re.to_double();
  if (zr < R) m = static_cast<long>(std::ceil(R - zr));

  BigComplex prod(BigFloat(1L, p), BigFloat(p));
  BigComplex Z = z;
  ComplexScratch scratch(p);
  for (long j = 0; j < m; ++j) {
    mul_into(prod, Z, scratch);
    Z.re += BigFloat(1L, p);
  }

  BigComplex logZ = log(Z);
  BigFloat two_pi = const_pi(p) * 2;
  BigComplex s = (Z - BigFloat(1L, p) / 2) * logZ - Z + log(two_pi) / 2;

  BigComplex zinv = inv(Z);
  BigComplex zinv2 = zinv * zinv;
  BigComplex pw = zinv;
  double eps_l2 = -static_cast<double>(p) - 4;
  long kcap = static_cast<long>(3.0 * R) + 10;
  for (long k = 1; k <= kcap; ++k) {
    mpq_class coef = bernoulli(2 * k) / mpq_class((2 * k) * (2 * k - 1));
    BigComplex term = pw * BigFloat(coef, p);
    s += term;
    if (abs(term).log2_abs() < eps_l2) break;
    pw = pw * zinv2;
  }
  return s - log(prod);
}

BigComplex digamma_shifted(const BigComplex& z, mpfr_prec_t p) {
  double R = 0.2 * static_cast<double>(p) + 10.0;
  long m = 0;
  double zr = z.re.to_double();
  if (zr < R) m = static_cast<long>(std::ceil(R - zr));

  BigComplex acc(p);
  BigComplex Z = z;
  for (long j = 0; j < m; ++j) {
    acc += inv(Z);
    Z.re += BigFloat(1L, p);
  }
  BigComplex zinv = inv(Z);
  BigComplex zinv2 = zinv * zinv;
  BigComplex s = log(Z) - zinv / BigFloat(2L, p);
  BigComplex pw = zinv2;
  double eps_l2 = -static_cast<double>(p) - 4;
  long kcap = static_cast<long>(3.0 * R) + 10;
  for (long k = 1; k <= kcap; ++k) {
    mpq_class coef = bernoulli(2 * k) / mpq_class(2 * k);
    BigComplex term = pw * BigFloat(coef, p);
    s -= term;
    if (abs(term).log2_abs() < eps_l2) break;
    pw = pw * zinv2;
  }
  return s - acc;
}

}  // namespace

mpq_class bernoulli(long n) {
  if (n < 0) throw std::invalid_argument("bernoulli: negative index");
  std::lock_guard<std::mutex> lock(bern_mutex);
  // Akiyama-Tanigawa; row state is kept so the table grows incrementally.
  while (static_cast<long>(bern_cache.size()) <= n) {
    long m = static_cast<long>(bern_cache.size());
    bern_row.emplace_back(mpq_class(1) / mpq_class(m + 1));
    for (long j = m; j >= 1; --j) {
      bern_row[j - 1] = j * (bern_row[j - 1] - bern_row[j]);
    }
    bern_cache.push_back(bern_row[0]);
  }
  mpq_class b = bern_cache[n];
  if (n == 1) b = -b;
  return b;
}

BigComplex gamma(const BigComplex& x, const PrecisionCtx& ctx) {
  if (is_nonpositive_integer(x)) throw std::domain_error("gamma: pole at a nonpositive integer");
  mpfr_prec_t p = ctx.work();
  BigComplex z = with_prec(x, p);
  BigFloat half(0.5, p);
  BigComplex r(p);
  if (z.re < half) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    BigFloat pi = const_pi(p);
    BigComplex one_minus = BigFloat(1L, p) - z;
    BigComplex g1 = exp(log_gamma_shifted(one_minus, p));
    r = BigComplex(pi) / (sin(z * pi) * g1);
  } else {
    r = exp(log_gamma_shifted(z, p));
  }
  r.set_prec(ctx.bits);
  return r;
}

BigFloat gamma(const BigFloat& x, const PrecisionCtx& ctx) { return gamma(BigComplex(x), ctx).re; }

BigComplex digamma(const BigComplex& x, const PrecisionCtx& ctx) {
  if (is_nonpositive_integer(x)) throw std::domain_error("digamma: pole at a nonpositive integer");
  mpfr_prec_t p = ctx.work();
  BigComplex z = with_prec(x, p);
  BigComplex r(p);
  if (z.re < BigFloat(0.5, p)) {
    // psi(z) = psi(1-z) - pi cot(pi z)
    BigFloat pi = const_pi(p);
    BigComplex piz = z * pi;
    r = digamma_shifted(BigFloat(1L, p) - z, p) - BigComplex(pi) * cos(piz) / sin(piz);
  } else {
    r = digamma_shifted(z, p);
  }
  r.set_prec(ctx.bits);
  return r;
}

BigFloat digamma(const BigFloat& x, const PrecisionCtx& ctx) { return digamma(BigComplex(x), ctx).re; }

BigFloat zeta_value(long s, const PrecisionCtx& ctx) {
  if (s < 2) throw std::domain_error("zeta_value: s must be >= 2");
  mpfr_prec_t p = ctx.work();
  long M = static_cast<long>(0.2 * static_cast<double>(p)) + 10;

  BigFloat sum(p);
  BigFloat t(p);
  for (long n = M - 1; n >= 1; --n) {
    mpfr_ui_pow_ui(t.get(), static_cast<unsigned long>(n), static_cast<unsigned long>(s), MPFR_RNDN);
    mpfr_ui_div(t.get(), 1, t.get(), MPFR_RNDN);
    sum += t;
  }
  BigFloat Mf(M, p);
  BigFloat Mpow(p);  // M^{-s}
  mpfr_ui_pow_ui(Mpow.get(), static_cast<unsigned long>(M), static_cast<unsigned long>(s), MPFR_RNDN);
  mpfr_ui_div(Mpow.get(), 1, Mpow.get(), MPFR_RNDN);
  sum += Mpow * Mf / (s - 1);
  sum += Mpow / 2;

  // sum_k B_2k/(2k)! * s(s+1)...(s+2k-2) * M^{-s-2k+1}
  mpz_class rising = s;  // s (s+1) ... (s+2k-2)
  mpz_class fact = 2;    // (2k)!
  BigFloat mpw = Mpow / Mf;
  BigFloat Minv2 = BigFloat(1L, p) / (Mf * Mf);
  double eps_l2 = -static_cast<double>(p) - 4;
  for (long k = 1; k < 4 * M; ++k) {
    mpq_class c(rising, fact);
    c.canonicalize();
    c *= bernoulli(2 * k);
    BigFloat term = BigFloat(c, p) * mpw;
    sum += term;
    if (term.log2_abs() < eps_l2) break;
    rising *= (s + 2 * k - 1) * (s + 2 * k);
    fact *= (2 * k + 1) * (2 * k + 2);
    mpw *= Minv2;
  }
  sum.set_prec(ctx.bits);
  return sum;
}

}  // namespace udc
