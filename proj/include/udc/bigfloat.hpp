#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <concepts>
#include <string>
#include <utility>

namespace udc {

class BigFloat {
 public:
  BigFloat() : BigFloat(mpfr_prec_t{64}) {}
  explicit BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  BigFloat(long x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, x, MPFR_RNDN); }
  BigFloat(int x, mpfr_prec_t prec) : BigFloat(static_cast<long>(x), prec) {}
  BigFloat(double x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
  BigFloat(const mpz_class& x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }
  BigFloat(const mpq_class& x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN); }
  BigFloat(const std::string& s, mpfr_prec_t prec);
  BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat(const BigFloat& o, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_)) mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  // Keeps the value, rounding it to the new precision.
  void set_prec(mpfr_prec_t p) { mpfr_prec_round(v_, p, MPFR_RNDN); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // log2 of |x|, -inf for zero; exact enough for term-count estimates.
  double log2_abs() const;
  std::string to_string(int digits = 0) const;
  // Shortest decimal that reads back to the same value at this precision.
  std::string to_shortest() const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  BigFloat& operator+=(const BigFloat& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator-=(const BigFloat& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator*=(const BigFloat& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator/=(const BigFloat& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator*=(long k) { mpfr_mul_si(v_, v_, k, MPFR_RNDN); return *this; }
  BigFloat& operator/=(long k) { mpfr_div_si(v_, v_, k, MPFR_RNDN); return *this; }
  template <std::floating_point T> BigFloat& operator*=(T) = delete;
  template <std::floating_point T> BigFloat& operator/=(T) = delete;
  BigFloat operator-() const { BigFloat r(*this); mpfr_neg(r.v_, r.v_, MPFR_RNDN); return r; }

 private:
  mpfr_t v_;
};

inline mpfr_prec_t max_prec(const BigFloat& a, const BigFloat& b) { return a.prec() > b.prec() ? a.prec() : b.prec(); }

inline BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(max_prec(a, b));
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
inline BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(max_prec(a, b));
  mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
inline BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(max_prec(a, b));
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
inline BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  BigFloat r(max_prec(a, b));
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
inline BigFloat operator*(const BigFloat& a, long k) { BigFloat r(a); r *= k; return r; }
inline BigFloat operator*(long k, const BigFloat& a) { return a * k; }
inline BigFloat operator/(const BigFloat& a, long k) { BigFloat r(a); r /= k; return r; }
inline BigFloat operator+(const BigFloat& a, long k) {
  BigFloat r(a.prec());
  mpfr_add_si(r.get(), a.get(), k, MPFR_RNDN);
  return r;
}
inline BigFloat operator+(long k, const BigFloat& a) { return a + k; }
inline BigFloat operator-(const BigFloat& a, long k) { return a + (-k); }
inline BigFloat operator-(long k, const BigFloat& a) {
  BigFloat r(a.prec());
  mpfr_si_sub(r.get(), k, a.get(), MPFR_RNDN);
  return r;
}

inline bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.get(), b.get()) != 0; }
inline bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.get(), b.get()) != 0; }
inline bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.get(), b.get()) != 0; }
inline bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.get(), b.get()) != 0; }
inline bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.get(), b.get()) != 0; }
// Mixing with double would silently truncate through the long overloads.
template <std::floating_point T> BigFloat operator*(const BigFloat&, T) = delete;
template <std::floating_point T> BigFloat operator*(T, const BigFloat&) = delete;
template <std::floating_point T> BigFloat operator/(const BigFloat&, T) = delete;
template <std::floating_point T> BigFloat operator/(T, const BigFloat&) = delete;
template <std::floating_point T> BigFloat operator+(const BigFloat&, T) = delete;
template <std::floating_point T> BigFloat operator+(T, const BigFloat&) = delete;
template <std::floating_point T> BigFloat operator-(const BigFloat&, T) = delete;
template <std::floating_point T> BigFloat operator-(T, const BigFloat&) = delete;

inline bool operator<(const BigFloat& a, double b) { return mpfr_cmp_d(a.get(), b) < 0; }
inline bool operator>(const BigFloat& a, double b) { return mpfr_cmp_d(a.get(), b) > 0; }

BigFloat sqrt(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat log1p(const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat tan(const BigFloat& x);
BigFloat cot(const BigFloat& x);
BigFloat atan2(const BigFloat& y, const BigFloat& x);
BigFloat pow(const BigFloat& x, const BigFloat& y);
BigFloat abs(const BigFloat& x);
BigFloat round_nearest(const BigFloat& x);
BigFloat ldexp(const BigFloat& x, long e);
BigFloat hypot(const BigFloat& x, const BigFloat& y);
BigFloat const_pi(mpfr_prec_t prec);
BigFloat const_euler(mpfr_prec_t prec);
BigFloat const_log2(mpfr_prec_t prec);
BigFloat min(const BigFloat& a, const BigFloat& b);
BigFloat max(const BigFloat& a, const BigFloat& b);

class BigComplex {
 public:
  BigFloat re, im;

  BigComplex() : BigComplex(mpfr_prec_t{64}) {}
  explicit BigComplex(mpfr_prec_t prec) : re(prec), im(prec) {}
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
  BigComplex(const BigFloat& r) : re(r), im(r.prec()) {}
  BigComplex(double r, double i, mpfr_prec_t prec) : re(r, prec), im(i, prec) {}

  mpfr_prec_t prec() const { return re.prec() > im.prec() ? re.prec() : im.prec(); }
  void set_prec(mpfr_prec_t p) { re.set_prec(p); im.set_prec(p); }
  bool is_finite() const { return re.is_finite() && im.is_finite(); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  BigComplex& operator+=(const BigComplex& o) { re += o.re; im += o.im; return *this; }
  BigComplex& operator-=(const BigComplex& o) { re -= o.re; im -= o.im; return *this; }
  BigComplex& operator*=(const BigComplex& o);
  BigComplex& operator/=(const BigComplex& o);
  BigComplex& operator*=(const BigFloat& s) { re *= s; im *= s; return *this; }
  BigComplex& operator/=(const BigFloat& s) { re /= s; im /= s; return *this; }
  BigComplex operator-() const { return BigComplex(-re, -im); }
};

BigComplex operator+(const BigComplex& a, const BigComplex& b);
BigComplex operator-(const BigComplex& a, const BigComplex& b);
BigComplex operator*(const BigComplex& a, const BigComplex& b);
BigComplex operator/(const BigComplex& a, const BigComplex& b);
BigComplex operator*(const BigComplex& a, const BigFloat& s);
BigComplex operator*(const BigFloat& s, const BigComplex& a);
BigComplex operator/(const BigComplex& a, const BigFloat& s);
BigComplex operator+(const BigComplex& a, const BigFloat& s);
BigComplex operator-(const BigComplex& a, const BigFloat& s);
BigComplex operator-(const BigFloat& s, const BigComplex& a);

BigComplex conj(const BigComplex& z);
BigFloat norm(const BigComplex& z);  // |z|^2
BigFloat abs(const BigComplex& z);
BigFloat arg(const BigComplex& z);
BigComplex exp(const BigComplex& z);
BigComplex log(const BigComplex& z);
BigComplex sqrt(const BigComplex& z);
BigComplex pow(const BigComplex& z, const BigFloat& e);
BigComplex pow(const BigComplex& z, const BigComplex& e);
BigComplex pow_int(const BigComplex& z, long k);
BigComplex sin(const BigComplex& z);
BigComplex cos(const BigComplex& z);
BigComplex polar(const BigFloat& r, const BigFloat& theta);
BigComplex expi(const BigFloat& theta);
BigComplex inv(const BigComplex& z);

// z <- z*w + c without temporaries beyond the scratch pair.
struct ComplexScratch {
  BigFloat t1, t2;
  explicit ComplexScratch(mpfr_prec_t p) : t1(p), t2(p) {}
};
void mul_into(BigComplex& z, const BigComplex& w, ComplexScratch& s);

struct PrecisionCtx {
  int bits = 256;
  BigFloat target_abs_err;

  PrecisionCtx() : PrecisionCtx(256) {}
  explicit PrecisionCtx(int b);
  PrecisionCtx(int b, const BigFloat& err);
  // Working precision used inside algorithms.
  mpfr_prec_t work() const { return bits + 32; }
  PrecisionCtx doubled() const { return PrecisionCtx(2 * bits); }
};

std::string format_complex(const BigComplex& z, int digits = 0);
// Shortest decimal that round-trips through double.
std::string shortest_double(double x);

}  // namespace udc
