#include "udc/bigfloat.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace udc {

BigFloat::BigFloat(const std::string& s, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    mpfr_clear(v_);
    throw std::invalid_argument("not a decimal number: " + s);
  }
}

double BigFloat::log2_abs() const {
  if (mpfr_zero_p(v_)) return -std::numeric_limits<double>::infinity();
  long e = 0;
  double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

std::string BigFloat::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (digits <= 0) digits = static_cast<int>(std::floor(prec() * 0.30103)) - 1;
  if (digits < 1) digits = 1;
  std::string fmt = "%." + std::to_string(digits) + "Rg";
  char* buf = nullptr;
  mpfr_asprintf(&buf, fmt.c_str(), v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

std::string BigFloat::to_shortest() const {
  if (!is_finite() || is_zero()) return to_string(1);
  int max_digits = static_cast<int>(std::ceil(prec() * 0.30103)) + 2;
  for (int d = 1; d <= max_digits; ++d) {
    std::string s = to_string(d);
    BigFloat back(s, prec());
    if (back == *this) return s;
  }
  return to_string(max_digits);
}

#define UDC_UNARY(name, fn)                         \
  BigFloat name(const BigFloat& x) {                \
    BigFloat r(x.prec());                           \
    fn(r.get(), x.get(), MPFR_RNDN);                \
    return r;                                       \
  }
UDC_UNARY(sqrt, mpfr_sqrt)
UDC_UNARY(exp, mpfr_exp)
UDC_UNARY(log, mpfr_log)
UDC_UNARY(log1p, mpfr_log1p)
UDC_UNARY(sin, mpfr_sin)
UDC_UNARY(cos, mpfr_cos)
UDC_UNARY(tan, mpfr_tan)
UDC_UNARY(cot, mpfr_cot)
UDC_UNARY(abs, mpfr_abs)
#undef UDC_UNARY

BigFloat round_nearest(const BigFloat& x) {
  BigFloat r(x.prec());
  mpfr_round(r.get(), x.get());
  return r;
}

BigFloat atan2(const BigFloat& y, const BigFloat& x) {
  BigFloat r(max_prec(x, y));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

BigFloat pow(const BigFloat& x, const BigFloat& y) {
  BigFloat r(max_prec(x, y));
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

BigFloat hypot(const BigFloat& x, const BigFloat& y) {
  BigFloat r(max_prec(x, y));
  mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

BigFloat ldexp(const BigFloat& x, long e) {
  BigFloat r(x.prec());
  mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

BigFloat const_pi(mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

BigFloat const_euler(mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_const_euler(r.get(), MPFR_RNDN);
  return r;
}

BigFloat const_log2(mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_const_log2(r.get(), MPFR_RNDN);
  return r;
}

BigFloat min(const BigFloat& a, const BigFloat& b) { return a < b ? a : b; }
BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

BigComplex& BigComplex::operator*=(const BigComplex& o) {
  ComplexScratch s(prec());
  mul_into(*this, o, s);
  return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& o) {
  *this = *this / o;
  return *this;
}

void mul_into(BigComplex& z, const BigComplex& w, ComplexScratch& s) {
  // (a+bi)(c+di) = (ac - bd) + (ad + bc)i
  mpfr_mul(s.t1.get(), z.re.get(), w.re.get(), MPFR_RNDN);
  mpfr_mul(s.t2.get(), z.im.get(), w.im.get(), MPFR_RNDN);
  mpfr_sub(s.t1.get(), s.t1.get(), s.t2.get(), MPFR_RNDN);
  mpfr_mul(s.t2.get(), z.re.get(), w.im.get(), MPFR_RNDN);
  mpfr_mul(z.im.get(), z.im.get(), w.re.get(), MPFR_RNDN);
  mpfr_add(z.im.get(), z.im.get(), s.t2.get(), MPFR_RNDN);
  mpfr_swap(z.re.get(), s.t1.get());
}

BigComplex operator+(const BigComplex& a, const BigComplex& b) { return BigComplex(a.re + b.re, a.im + b.im); }
BigComplex operator-(const BigComplex& a, const BigComplex& b) { return BigComplex(a.re - b.re, a.im - b.im); }
BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  BigComplex r(a.re, a.im);
  mpfr_prec_t p = a.prec() > b.prec() ? a.prec() : b.prec();
  r.set_prec(p);
  ComplexScratch s(p);
  mul_into(r, b, s);
  return r;
}
BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  // Smith's algorithm avoids overflow in |b|^2.
  if (abs(b.re) >= abs(b.im)) {
    BigFloat t = b.im / b.re;
    BigFloat den = b.re + b.im * t;
    return BigComplex((a.re + a.im * t) / den, (a.im - a.re * t) / den);
  }
  BigFloat t = b.re / b.im;
  BigFloat den = b.re * t + b.im;
  return BigComplex((a.re * t + a.im) / den, (a.im * t - a.re) / den);
}
BigComplex operator*(const BigComplex& a, const BigFloat& s) { return BigComplex(a.re * s, a.im * s); }
BigComplex operator*(const BigFloat& s, const BigComplex& a) { return a * s; }
BigComplex operator/(const BigComplex& a, const BigFloat& s) { return BigComplex(a.re / s, a.im / s); }
BigComplex operator+(const BigComplex& a, const BigFloat& s) { return BigComplex(a.re + s, a.im); }
BigComplex operator-(const BigComplex& a, const BigFloat& s) { return BigComplex(a.re - s, a.im); }
BigComplex operator-(const BigFloat& s, const BigComplex& a) { return BigComplex(s - a.re, -a.im); }

BigComplex conj(const BigComplex& z) { return BigComplex(z.re, -z.im); }
BigFloat norm(const BigComplex& z) { return z.re * z.re + z.im * z.im; }
BigFloat abs(const BigComplex& z) { return hypot(z.re, z.im); }
BigFloat arg(const BigComplex& z) { return atan2(z.im, z.re); }

BigComplex polar(const BigFloat& r, const BigFloat& theta) {
  BigFloat s(theta.prec()), c(theta.prec());
  mpfr_sin_cos(s.get(), c.get(), theta.get(), MPFR_RNDN);
  return BigComplex(r * c, r * s);
}

BigComplex expi(const BigFloat& theta) {
  BigFloat s(theta.prec()), c(theta.prec());
  mpfr_sin_cos(s.get(), c.get(), theta.get(), MPFR_RNDN);
  return BigComplex(std::move(c), std::move(s));
}

BigComplex exp(const BigComplex& z) { return polar(exp(z.re), z.im); }

BigComplex log(const BigComplex& z) {
  if (z.is_zero()) throw std::domain_error("log of zero");
  return BigComplex(log(abs(z)), arg(z));
}

BigComplex sqrt(const BigComplex& z) {
  if (z.is_zero()) return z;
  BigFloat r = abs(z);
  BigFloat t = sqrt((r + abs(z.re)) / 2);
  if (z.re.sign() >= 0) {
    return BigComplex(t, z.im / (t * 2));
  }
  BigFloat im = z.im.sign() >= 0 ? t : -t;
  return BigComplex(abs(z.im) / (t * 2), im);
}

BigComplex pow(const BigComplex& z, const BigFloat& e) {
  if (z.is_zero()) {
    if (e.sign() > 0) return BigComplex(z.prec());
    throw std::domain_error("zero to a nonpositive power");
  }
  BigFloat r = pow(abs(z), e);
  return polar(r, arg(z) * e);
}

BigComplex pow(const BigComplex& z, const BigComplex& e) {
  if (z.is_zero()) return BigComplex(z.prec());
  return exp(e * log(z));
}

BigComplex pow_int(const BigComplex& z, long k) {
  mpfr_prec_t p = z.prec();
  BigComplex result(BigFloat(1L, p), BigFloat(p));
  BigComplex base = z;
  bool neg = k < 0;
  unsigned long n = neg ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
  ComplexScratch s(p);
  while (n) {
    if (n & 1UL) mul_into(result, base, s);
    n >>= 1;
    if (n) {
      BigComplex b2 = base;
      mul_into(base, b2, s);
    }
  }
  return neg ? inv(result) : result;
}

BigComplex sin(const BigComplex& z) {
  // sin(x+iy) = sin x cosh y + i cos x sinh y
  BigFloat s(z.prec()), c(z.prec()), sh(z.prec()), ch(z.prec());
  mpfr_sin_cos(s.get(), c.get(), z.re.get(), MPFR_RNDN);
  mpfr_sinh_cosh(sh.get(), ch.get(), z.im.get(), MPFR_RNDN);
  return BigComplex(s * ch, c * sh);
}

BigComplex cos(const BigComplex& z) {
  BigFloat s(z.prec()), c(z.prec()), sh(z.prec()), ch(z.prec());
  mpfr_sin_cos(s.get(), c.get(), z.re.get(), MPFR_RNDN);
  mpfr_sinh_cosh(sh.get(), ch.get(), z.im.get(), MPFR_RNDN);
  return BigComplex(c * ch, -(s * sh));
}

BigComplex inv(const BigComplex& z) {
  BigComplex one(BigFloat(1L, z.prec()), BigFloat(z.prec()));
  return one / z;
}

PrecisionCtx::PrecisionCtx(int b) : bits(b), target_abs_err(ldexp(BigFloat(1L, 64), -(b - 8))) {
  if (b < 64) throw std::invalid_argument("precision below 64 bits");
}

PrecisionCtx::PrecisionCtx(int b, const BigFloat& err) : bits(b), target_abs_err(err) {
  if (b < 64) throw std::invalid_argument("precision below 64 bits");
}

std::string format_complex(const BigComplex& z, int digits) {
  return z.re.to_string(digits) + (z.im.sign() < 0 ? " - " : " + ") + abs(z.im).to_string(digits) + "i";
}

std::string shortest_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace udc
