#include "udc/hypergeom.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace udc {

namespace {

constexpr double kMaxRatio = 0.85;

bool is_nonpositive_integer(const BigComplex& x) {
  if (!x.im.is_zero() || x.re.sign() > 0) return false;
  return mpfr_integer_p(x.re.get()) != 0;
}

double log2_abs(const BigComplex& z) {
  double a = z.re.log2_abs();
  double b = z.im.log2_abs();
  double m = std::max(a, b);
  if (std::isinf(m)) return m;
  return m + 0.5 * std::log2(std::exp2(2 * (a - m)) + std::exp2(2 * (b - m)));
}

// Smallest n with coef_k t^k below target for k in [n, n+8).
long count_terms(const std::vector<double>& lc, double lt, double target) {
  long run = 0;
  long size = static_cast<long>(lc.size());
  for (long k = 0; k < size; ++k) {
    double v = lc[k] + static_cast<double>(k) * lt;
    if (v < target) {
      if (++run == 8) return k - 7;
    } else {
      run = 0;
    }
  }
  throw std::domain_error("2F1: coefficient table too short for the requested accuracy");
}

BigComplex horner_real(const std::vector<BigFloat>& c, long n, const BigComplex& t, mpfr_prec_t p) {
  BigComplex acc(p);
  ComplexScratch s(p);
  for (long k = n - 1; k >= 0; --k) {
    mul_into(acc, t, s);
    acc.re += c[k];
  }
  return acc;
}

BigComplex horner_complex(const std::vector<BigComplex>& c, long n, const BigComplex& t, mpfr_prec_t p) {
  BigComplex acc(p);
  ComplexScratch s(p);
  for (long k = n - 1; k >= 0; --k) {
    mul_into(acc, t, s);
    acc += c[k];
  }
  return acc;
}

std::vector<double> log2_table(const std::vector<BigFloat>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.log2_abs());
  return out;
}

// Principal log, forced onto arg in [-pi, pi/2] for arguments known to lie in the closed lower half plane.
BigComplex log_lower(const BigComplex& z) {
  BigComplex L = log(z);
  BigFloat half_pi = const_pi(L.prec()) / 2;
  if (L.im > half_pi) L.im -= const_pi(L.prec()) * 2;
  return L;
}

BigComplex direct_series(const BigComplex& a, const BigComplex& b, const BigComplex& c, const BigComplex& z,
                         mpfr_prec_t p) {
  BigComplex sum(BigFloat(1L, p), BigFloat(p));
  BigComplex term = sum;
  BigFloat az = abs(z);
  double tail = 1.0 - az.to_double();
  double kmin = abs(a).to_double() + abs(b).to_double() + abs(c).to_double() + 4;
  double target = -static_cast<double>(p) - 4 + std::log2(tail);
  for (long k = 0; k < 200000; ++k) {
    BigFloat kf(k, p);
    BigComplex num = (a + kf) * (b + kf);
    BigComplex den = (c + kf) * BigFloat(k + 1, p);
    term = term * num / den * z;
    sum += term;
    if (term.is_zero()) return sum;
    if (k > kmin && log2_abs(term) < target) return sum;
  }
  throw std::domain_error("2F1: direct series did not converge");
}

// 2F1(a,a;2a;z) near z = 1 by the logarithmic expansion in u = 1 - z.
BigComplex log_expansion(const BigComplex& a, const BigComplex& z, mpfr_prec_t p) {
  PrecisionCtx ctx(static_cast<int>(p));
  BigComplex u = BigFloat(1L, p) - z;
  BigComplex L = log(u);
  BigComplex g2a = gamma(a * BigFloat(2L, p), ctx);
  BigComplex ga = gamma(a, ctx);
  BigComplex pref = g2a / (ga * ga);
  BigComplex D = BigComplex(-const_euler(p)) - digamma(a, ctx);  // psi(1) - psi(a)
  BigComplex ck(BigFloat(1L, p), BigFloat(p));
  BigComplex uk = ck;
  BigComplex sum(p);
  double kmin = abs(a).to_double() + 4;
  double target = -static_cast<double>(p) - 4;
  for (long k = 0; k < 200000; ++k) {
    BigComplex cu = ck * uk;
    BigComplex term = cu * (D * BigFloat(2L, p) - L);
    sum += term;
    if (cu.is_zero()) break;
    if (k > kmin && log2_abs(term) < target) break;
    BigFloat kf(k, p);
    BigComplex ak = a + kf;
    ck = ck * ak * ak / BigFloat((k + 1) * (k + 1), p);
    uk = uk * u;
    D = D + BigFloat(1L, p) / BigFloat(k + 1, p) - inv(ak);
  }
  return pref * sum;
}

}  // namespace

AAFamily::AAFamily(const mpq_class& a, mpfr_prec_t prec) : a_(a), prec_(prec) {
  if (a <= 0) throw std::invalid_argument("AAFamily: a must be positive");
  mpfr_prec_t p = prec_ + 24;
  af_ = BigFloat(a, p);
  PrecisionCtx ctx(static_cast<int>(p));
  BigFloat ga = gamma(af_, ctx);
  pref_ = gamma(af_ * 2, ctx) / (ga * ga);
  pref_.set_prec(p);
  kmax_ = static_cast<long>(std::ceil((static_cast<double>(p) + 64) / -std::log2(kMaxRatio))) + 64;

  BigFloat one(1L, p);
  BigFloat two_a = af_ * 2;
  BigFloat psi_a = digamma(af_, ctx);
  psi_a.set_prec(p);
  BigFloat euler = const_euler(p);

  direct_.reserve(kmax_);
  logc_.reserve(kmax_);
  logcd_.reserve(kmax_);
  infu_.reserve(kmax_);
  infuv_.reserve(kmax_);

  BigFloat h = one;          // (a)_k^2 / ((2a)_k k!)
  BigFloat c = one;          // (a)_k^2 / k!^2
  BigFloat d = -euler - psi_a;  // psi(k+1) - psi(k+a)
  BigFloat u = one;          // (a)_n (1-a)_n / n!^2
  BigFloat v = (-euler - psi_a) * 2;  // 2 psi(n+1) - psi(a+n) - psi(a-n)
  for (long k = 0; k < kmax_; ++k) {
    direct_.push_back(h);
    logc_.push_back(c);
    logcd_.push_back(c * d * 2);
    infu_.push_back(u);
    infuv_.push_back(u * v);
    BigFloat ak = af_ + k;
    BigFloat k1(k + 1, p);
    h = h * ak * ak / ((two_a + k) * k1);
    c = c * ak * ak / (k1 * k1);
    d += one / k1 - one / ak;
    BigFloat bk = (one - af_) + k;
    u = u * ak * bk / (k1 * k1);
    v += BigFloat(2L, p) / k1 - one / ak + one / (af_ - (k + 1));
  }
  direct_l_ = log2_table(direct_);
  logc_l_ = log2_table(logc_);
  logcd_l_ = log2_table(logcd_);
  infu_l_ = log2_table(infu_);
  infuv_l_ = log2_table(infuv_);

  // Chain of ODE expansions along the upper unit circle, seeded inside the unit disc.
  BigComplex w1(BigFloat(0.5, p), BigFloat(0.5, p));
  auto [f1, df1] = eval_with_derivative_origin(w1);
  long chain_terms = static_cast<long>(std::ceil((static_cast<double>(p) + 64) / -std::log2(0.55))) + 32;
  Center prev = make_center(w1, f1, df1, chain_terms);
  BigFloat pi = const_pi(p);
  const long angles[] = {2, 3, 4, 5, 6};  // multiples of pi/6
  for (long m : angles) {
    BigComplex w0 = expi(pi * m / 6);
    if (m == 6) w0.im = BigFloat(p);
    BigComplex t = w0 - prev.w0;
    long n = static_cast<long>(prev.b.size());
    BigComplex f0 = horner_complex(prev.b, n, t, p);
    std::vector<BigComplex> db(n > 1 ? n - 1 : 1, BigComplex(p));
    for (long k = 1; k < n; ++k) db[k - 1] = prev.b[k] * BigFloat(k, p);
    BigComplex df0 = horner_complex(db, n - 1, t, p);
    Center cen = make_center(w0, f0, df0, kmax_);
    centers_.push_back(cen);
    prev = std::move(cen);
  }
}

AAFamily::Center AAFamily::make_center(const BigComplex& w0, const BigComplex& f0, const BigComplex& df0,
                                       long terms) const {
  mpfr_prec_t p = prec_ + 24;
  Center cen;
  cen.w0 = w0;
  BigFloat one(1L, p);
  BigComplex one_minus = one - w0;
  cen.radius = min(abs(w0), abs(one_minus));
  BigComplex P0 = w0 * one_minus;
  BigComplex P1 = one - w0 * BigFloat(2L, p);
  BigFloat c = af_ * 2;
  BigComplex Q0 = BigComplex(c) - w0 * (c + 1);
  cen.b.reserve(terms);
  cen.b.push_back(f0);
  cen.b.push_back(df0);
  for (long k = 0; k + 2 < terms; ++k) {
    BigFloat ka = af_ + k;
    BigComplex coef1 = P1 * BigFloat(k * (k + 1), p) + Q0 * BigFloat(k + 1, p);
    BigComplex num = coef1 * cen.b[k + 1] - cen.b[k] * (ka * ka);
    BigComplex den = P0 * BigFloat((k + 1) * (k + 2), p);
    cen.b.push_back(-(num / den));
  }
  cen.lb.reserve(cen.b.size());
  for (const auto& x : cen.b) cen.lb.push_back(log2_abs(x));
  return cen;
}

std::pair<BigComplex, BigComplex> AAFamily::eval_with_derivative_origin(const BigComplex& w) const {
  mpfr_prec_t p = prec_ + 24;
  double lt = log2_abs(w);
  if (!(lt < 0)) throw std::domain_error("AAFamily: derivative series needs |w| < 1");
  long n = count_terms(direct_l_, lt, -static_cast<double>(p) - 8);
  BigComplex f = horner_real(direct_, n, w, p);
  std::vector<BigFloat> dc;
  dc.reserve(n);
  for (long k = 1; k <= n; ++k) dc.push_back(direct_[k] * k);
  BigComplex df = horner_real(dc, n, w, p);
  return {f, df};
}

AAFamily::Region AAFamily::region_for(const BigComplex& w) const {
  BigComplex wu = w.im.sign() < 0 ? conj(w) : w;
  double best = abs(wu).to_double();
  Region r = Region::ORIGIN;
  double rl = abs(BigFloat(1L, wu.prec()) - wu).to_double();
  if (rl < best) { best = rl; r = Region::ONE; }
  double ri = 1.0 / abs(wu).to_double();
  if (ri < best) { best = ri; r = Region::INFINITY_; }
  for (const auto& c : centers_) {
    double rc = (abs(wu - c.w0) / c.radius).to_double();
    if (rc < best) { best = rc; r = Region::CIRCLE; }
  }
  return r;
}

BigComplex AAFamily::eval(const BigComplex& w, const std::optional<BigComplex>& ell) const {
  if (w.im.sign() < 0) {
    std::optional<BigComplex> ec;
    if (ell) ec = conj(*ell);
    return conj(eval_upper(conj(w), ec));
  }
  return eval_upper(w, ell);
}

BigComplex AAFamily::eval_upper(const BigComplex& w_in, const std::optional<BigComplex>& ell) const {
  mpfr_prec_t p = prec_ + 24;
  BigComplex w = w_in;
  w.set_prec(p);
  BigFloat one(1L, p);

  double lw = log2_abs(w);
  double best = lw;
  Region region = Region::ORIGIN;
  double l1 = ell ? ell->re.to_double() / std::log(2.0) : log2_abs(one - w);
  if (l1 < best) { best = l1; region = Region::ONE; }
  if (-lw < best) { best = -lw; region = Region::INFINITY_; }
  const Center* cen = nullptr;
  for (const auto& c : centers_) {
    double rc = log2_abs(w - c.w0) - c.radius.log2_abs();
    if (rc < best) { best = rc; region = Region::CIRCLE; cen = &c; }
  }
  if (std::isinf(l1) && l1 < 0) throw std::domain_error("AAFamily: singular point w = 1");
  if (!(best <= std::log2(kMaxRatio))) throw std::domain_error("AAFamily: no expansion covers this point");

  double target = -static_cast<double>(p) - 8;
  BigComplex out(p);
  switch (region) {
    case Region::ORIGIN: {
      long n = count_terms(direct_l_, lw, target);
      out = horner_real(direct_, n, w, p);
      break;
    }
    case Region::ONE: {
      BigComplex L = ell ? *ell : log_lower(one - w);
      L.set_prec(p);
      BigComplex u = ell ? exp(L) : one - w;
      double lu = ell ? L.re.to_double() / std::log(2.0) : log2_abs(u);
      double scale = std::max(0.0, log2_abs(L));
      long n = std::max(count_terms(logc_l_, lu, target), count_terms(logcd_l_, lu, target - scale));
      n = std::max(n, count_terms(logc_l_, lu, target - scale));
      BigComplex s1 = horner_real(logc_, n, u, p);
      BigComplex s2 = horner_real(logcd_, n, u, p);
      out = (s2 - L * s1) * pref_;
      break;
    }
    case Region::INFINITY_: {
      BigComplex L = log_lower(-w);
      BigComplex t = inv(w);
      double lt = -lw;
      long n = std::max(count_terms(infu_l_, lt, target), count_terms(infuv_l_, lt, target));
      BigComplex s1 = horner_real(infu_, n, t, p);
      BigComplex s2 = horner_real(infuv_, n, t, p);
      out = exp(L * (-af_)) * (L * s1 + s2) * pref_;
      break;
    }
    case Region::CIRCLE: {
      BigComplex t = w - cen->w0;
      double lt = log2_abs(t);
      double scale = std::max(0.0, cen->lb[0]);
      long n = count_terms(cen->lb, lt, target + scale);
      out = horner_complex(cen->b, n, t, p);
      break;
    }
  }
  out.set_prec(prec_);
  return out;
}

std::shared_ptr<const AAFamily> aa_family(const mpq_class& a, mpfr_prec_t prec) {
  static std::mutex mu;
  static std::map<std::pair<std::string, long>, std::shared_ptr<const AAFamily>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(a.get_str(), static_cast<long>(prec));
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto fam = std::make_shared<const AAFamily>(a, prec);
  cache.emplace(key, fam);
  return fam;
}

BigComplex hyp2f1(const BigComplex& a, const BigComplex& b, const BigComplex& c, const BigComplex& z,
                  const PrecisionCtx& ctx) {
  if (is_nonpositive_integer(c)) throw std::domain_error("2F1: c is a nonpositive integer");
  mpfr_prec_t p = ctx.work();
  auto up = [p](const BigComplex& x) {
    BigComplex r = x;
    r.set_prec(p);
    return r;
  };
  BigComplex A = up(a), B = up(b), C = up(c), Z = up(z);
  BigFloat one(1L, p);
  double rz = abs(Z).to_double();
  double r1 = abs(one - Z).to_double();
  bool aa = A.re == B.re && A.im == B.im && C.re == A.re * 2 && C.im == A.im * 2 && !is_nonpositive_integer(A);

  BigComplex out(p);
  if (aa && r1 < 0.5 && r1 < rz) {
    out = log_expansion(A, Z, p);
  } else if (rz < 0.9) {
    out = direct_series(A, B, C, Z, p);
  } else if (aa && A.im.is_zero() && A.re.sign() > 0) {
    mpq_class aq;
    mpfr_get_q(aq.get_mpq_t(), A.re.get());
    out = aa_family(aq, p)->eval(Z);
  } else {
    throw std::domain_error("2F1: parameter/region combination not supported");
  }
  out.set_prec(ctx.bits);
  return out;
}

namespace {
mpq_class upper_a(long N) { return mpq_class(N + 1, 2 * N); }
mpq_class lower_a(long N) { return mpq_class(N - 1, 2 * N); }
}  // namespace

BigComplex s_ratio(const BigComplex& w, long N, const PrecisionCtx& ctx) {
  if (N < 2) throw std::invalid_argument("N must be >= 2");
  mpfr_prec_t p = ctx.work();
  BigComplex f1 = aa_family(upper_a(N), p)->eval(w);
  BigComplex f2 = aa_family(lower_a(N), p)->eval(w);
  BigComplex r = f1 / f2;
  r.set_prec(ctx.bits);
  return r;
}

BigComplex s_N(const BigComplex& z, long N, const PrecisionCtx& ctx) {
  if (N < 2) throw std::invalid_argument("N must be >= 2");
  if (!(abs(z) < 1.0)) throw std::domain_error("s_N: |z| must be < 1");
  mpfr_prec_t p = ctx.work();
  if (z.is_zero()) return BigComplex(static_cast<mpfr_prec_t>(ctx.bits));
  BigComplex zz = z;
  zz.set_prec(p);
  BigComplex root = pow(zz, BigFloat(1L, p) / N);
  BigComplex r = root * s_ratio(zz, N, PrecisionCtx(static_cast<int>(p)));
  r.set_prec(ctx.bits);
  return r;
}

BigFloat gamma_N(long N, const PrecisionCtx& ctx) {
  if (N < 2) throw std::invalid_argument("N must be >= 2");
  mpfr_prec_t p = ctx.work();
  PrecisionCtx wctx(static_cast<int>(p));
  BigFloat one(1L, p);
  BigFloat h = one / (2 * N);
  BigFloat n1 = one / N;
  BigFloat gp = gamma(one + h, wctx);
  BigFloat gm = gamma(one - h, wctx);
  BigFloat num = gp * gp * gamma(one - n1, wctx);
  BigFloat den = gm * gm * gamma(one + n1, wctx);
  BigFloat r = pow(BigFloat(16L, p), n1) * num / den;
  r.set_prec(ctx.bits);
  return r;
}

BigComplex psi_N(const BigComplex& z, long N, const PrecisionCtx& ctx) {
  if (N < 2) throw std::invalid_argument("N must be >= 2");
  if (!(abs(z) < 1.0)) throw std::domain_error("psi_N: |z| must be < 1");
  mpfr_prec_t p = ctx.work();
  PrecisionCtx wctx(static_cast<int>(p));
  BigComplex zz = z;
  zz.set_prec(p);
  BigComplex r = zz * s_ratio(pow_int(zz, N), N, wctx) / gamma_N(N, wctx);
  r.set_prec(ctx.bits);
  return r;
}

BigFloat gamma_N_asymptotic(long N, const PrecisionCtx& ctx) {
  if (N < 2) throw std::invalid_argument("N must be >= 2");
  mpfr_prec_t p = ctx.work();
  PrecisionCtx wctx(static_cast<int>(p));
  BigFloat n(N, p);
  BigFloat n3 = n * n * n;
  BigFloat corr = BigFloat(1L, p) + zeta_value(3, wctx) / (n3 * 2) + zeta_value(5, wctx) * 3 / (n3 * n * n * 8);
  BigFloat r = pow(BigFloat(16L, p), BigFloat(1L, p) / n) * corr;
  r.set_prec(ctx.bits);
  return r;
}

}  // namespace udc
