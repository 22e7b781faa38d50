#include "udc/covering.hpp"

#include <cmath>

namespace udc {

namespace {

BigComplex I_unit(mpfr_prec_t p) { return BigComplex(BigFloat(p), BigFloat(1L, p)); }

BigComplex times_i(const BigComplex& z) { return BigComplex(-z.im, z.re); }

BigFloat clamp_im(const BigFloat& v, const BigFloat& lo) {
  if (v.sign() > 0) return BigFloat(v.prec());
  if (v < lo) return lo;
  return v;
}

}  // namespace

BigComplex disc_to_half_plane(const BigComplex& x) {
  BigFloat one(1L, x.prec());
  return times_i((one + x) / (one - x));
}

BigComplex half_plane_to_disc(const BigComplex& tau) {
  BigComplex i = I_unit(tau.prec());
  return (tau - i) / (tau + i);
}

BigComplex MoebiusReal::apply(const BigComplex& x) const {
  if (model == Model::DISK) {
    MoebiusReal h = in_model(Model::UPPER_HALF_PLANE);
    return half_plane_to_disc(h.apply(disc_to_half_plane(x)));
  }
  return (x * a + BigComplex(b)) / (x * c + BigComplex(d));
}

MoebiusReal MoebiusReal::inverse() const { return MoebiusReal{d, -b, -c, a, model}; }

MoebiusReal MoebiusReal::in_model(Model m) const { return MoebiusReal{a, b, c, d, m}; }

MoebiusReal operator*(const MoebiusReal& g, const MoebiusReal& h) {
  return MoebiusReal{g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d, g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d,
                     g.model};
}

MoebiusReal moebius_pow(const MoebiusReal& g, long k) {
  mpfr_prec_t p = g.a.prec();
  MoebiusReal r{BigFloat(1L, p), BigFloat(p), BigFloat(p), BigFloat(1L, p), g.model};
  MoebiusReal base = k < 0 ? g.inverse() : g;
  unsigned long n = static_cast<unsigned long>(k < 0 ? -k : k);
  while (n) {
    if (n & 1UL) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

Generators group_generators(long N, const PrecisionCtx& ctx) {
  if (N < 2) throw std::invalid_argument("N must be >= 2");
  mpfr_prec_t p = ctx.work();
  BigFloat pi = const_pi(p);
  BigFloat one(1L, p), zero(p);
  BigFloat width = cot(pi / (2 * N)) * 2;
  BigFloat c = cos(pi / N), s = sin(pi / N);
  Generators g;
  g.t = MoebiusReal{one, width, zero, one, Model::UPPER_HALF_PLANE};
  g.r = MoebiusReal{c, -s, s, c, Model::UPPER_HALF_PLANE};
  g.t_disk = g.t.in_model(Model::DISK);
  g.r_disk = g.r.in_model(Model::DISK);
  return g;
}

MoebiusReal cusp_generator(long N, long k, const PrecisionCtx& ctx) {
  Generators g = group_generators(N, ctx);
  return moebius_pow(g.r, -k) * g.t * moebius_pow(g.r, k);
}

Horoball horoball_image(const MoebiusReal& gamma, const BigFloat& D) {
  if (D.sign() <= 0) throw std::invalid_argument("horoball height must be positive");
  BigFloat s = gamma.a * gamma.a + gamma.c * gamma.c;
  Horoball h;
  h.diameter = BigFloat(2L, D.prec()) / (D * s + 1);
  BigComplex num(gamma.a, -gamma.c), den(gamma.a, gamma.c);
  h.tangency = num / den;
  return h;
}

std::string WordLetter::token() const {
  std::string s = gen == 0 ? "t" : "t" + std::to_string(gen);
  if (exp != 1) s += "^" + std::to_string(exp);
  return s;
}

std::vector<std::string> Reduction::tokens() const {
  std::vector<std::string> out;
  for (const auto& l : word) out.push_back(l.token());
  return out;
}

CoveringMap::CoveringMap(long N, const PrecisionCtx& ctx) : N_(N), ctx_(ctx), p_(ctx.work()) {
  if (N < 2) throw std::invalid_argument("N must be >= 2");
  PrecisionCtx wctx(static_cast<int>(p_));
  gamma_ = gamma_N(N, wctx);
  pi_ = const_pi(p_);
  cot_ = cot(pi_ / (2 * N));
  width_ = cot_ * 2;
  for (long k = 0; k < N; ++k) {
    zeta_.push_back(expi(pi_ * (2 * k) / N));
    zeta_inv_.push_back(conj(zeta_.back()));
  }
  f1_ = aa_family(mpq_class(N + 1, 2 * N), p_);
  f2_ = aa_family(mpq_class(N - 1, 2 * N), p_);

  // ell = log(1 - F^N) ~ 2 pi i tau / width + C deep in the cusp at 1.
  BigComplex ref(BigFloat(-20L, p_), BigFloat(-1.5, p_));
  BigComplex xr = phi_ell(ref, nullptr);
  BigComplex tr = disc_to_half_plane(xr);
  seed_shift_ = ref - times_i(tr) * (pi_ * 2 / width_);
}

Reduction CoveringMap::reduce(const BigComplex& x_in) const {
  if (!(abs(x_in) < 1.0)) throw std::domain_error("covering: point outside the unit disc");
  Reduction red;
  BigComplex x = x_in;
  x.set_prec(p_);
  BigFloat two_c = width_;
  BigComplex i = I_unit(p_);
  for (long iter = 0; iter < 20000; ++iter) {
    bool moved = false;
    for (long k = 0; k < N_; ++k) {
      BigComplex y = x * zeta_inv_[k];
      BigComplex tau = disc_to_half_plane(y);
      if (abs(tau.re) > cot_) {
        BigFloat nf = round_nearest(tau.re / two_c);
        long n = mpfr_get_si(nf.get(), MPFR_RNDN);
        if (n == 0) continue;
        tau.re -= two_c * n;
        x = half_plane_to_disc(tau) * zeta_[k];
        if (!red.word.empty() && red.word.back().gen == k) {
          red.word.back().exp += n;
          if (red.word.back().exp == 0) red.word.pop_back();
        } else {
          red.word.push_back(WordLetter{k, n});
        }
        moved = true;
      }
    }
    if (!moved) {
      red.x0 = x;
      return red;
    }
  }
  throw std::domain_error("covering: reduction did not terminate (precision exhausted)");
}

bool CoveringMap::in_domain(const BigComplex& x) const {
  for (long k = 0; k < N_; ++k) {
    BigComplex tau = disc_to_half_plane(x * zeta_inv_[k]);
    if (abs(tau.re) > cot_) return false;
  }
  return true;
}

BigComplex CoveringMap::psi(const BigComplex& z) const {
  BigComplex w = pow_int(z, N_);
  return z * f1_->eval(w) / (f2_->eval(w) * gamma_);
}

BigComplex CoveringMap::phi_ell(const BigComplex& ell, BigComplex* deriv) const {
  BigFloat one(1L, p_);
  BigComplex w = one - exp(ell);
  BigComplex y1 = f1_->eval(w, ell);
  BigComplex y2 = f2_->eval(w, ell);
  BigComplex root = pow(w, one / N_);
  if (deriv) {
    // d/d ell of w^{1/N} y1/y2 via the Wronskian: -w^{1/N-1} / (N y2^2)
    *deriv = -(root / (w * y2 * y2 * (gamma_ * N_)));
  }
  return root * y1 / (y2 * gamma_);
}

bool CoveringMap::z_chart_newton(const BigComplex& x1, Sheet& out) const {
  BigFloat one(1L, p_);
  double tol_l2 = -static_cast<double>(p_) + 12;
  auto eval = [&](const BigComplex& z, BigComplex& d) {
    BigComplex w = pow_int(z, N_);
    BigComplex y1 = f1_->eval(w), y2 = f2_->eval(w);
    d = inv((one - w) * y2 * y2 * gamma_);
    return z * y1 / (y2 * gamma_);
  };
  BigComplex z = x1 * gamma_;
  BigComplex d(p_);
  BigComplex r = eval(z, d) - x1;
  double res = abs(r).log2_abs();
  for (int it = 0; it < 80 && res > tol_l2; ++it) {
    BigComplex step = r / d;
    BigComplex zn(p_), dn(p_), rn(p_);
    double resn = 0;
    bool ok = false;
    for (int h = 0; h < 30; ++h) {
      zn = z - step;
      if (abs(zn) < 0.999) {
        rn = eval(zn, dn) - x1;
        resn = abs(rn).log2_abs();
        if (resn < res || resn < tol_l2) {
          ok = true;
          break;
        }
      }
      step = step / BigFloat(2L, p_);
    }
    if (!ok) return false;
    z = zn;
    d = dn;
    r = rn;
    res = resn;
  }
  if (!(res <= tol_l2)) return false;
  out.F = z;
  out.w = pow_int(z, N_);
  out.ell = log(one - out.w);
  out.residual = abs(r);
  return true;
}

bool CoveringMap::ell_chart_newton(const BigComplex& x1, const BigComplex& seed, Sheet& out) const {
  double tol_l2 = -static_cast<double>(p_) + 12;
  BigFloat lo = -pi_;
  auto project = [&](BigComplex l) {
    if (l.re.sign() > 0) l.re = BigFloat(p_);
    l.im = clamp_im(l.im, lo);
    return l;
  };
  BigComplex ell = project(seed);
  BigComplex d(p_);
  BigComplex r = phi_ell(ell, &d) - x1;
  double res = abs(r).log2_abs();
  for (int it = 0; it < 100 && res > tol_l2; ++it) {
    BigComplex step = r / d;
    BigComplex ln(p_), dn(p_), rn(p_);
    double resn = 0;
    bool ok = false;
    for (int h = 0; h < 40; ++h) {
      ln = project(ell - step);
      rn = phi_ell(ln, &dn) - x1;
      resn = abs(rn).log2_abs();
      if (resn < res || resn < tol_l2) {
        ok = true;
        break;
      }
      step = step / BigFloat(2L, p_);
    }
    if (!ok) return false;
    ell = ln;
    d = dn;
    r = rn;
    res = resn;
  }
  if (!(res <= tol_l2)) return false;
  BigFloat one(1L, p_);
  out.ell = ell;
  out.w = one - exp(ell);
  out.F = pow(out.w, one / N_);
  out.residual = abs(r);
  return true;
}

CoveringMap::Sheet CoveringMap::solve_sector(const BigComplex& x1) const {
  Sheet s;
  BigComplex gx = x1 * gamma_;
  if (abs(pow_int(gx, N_)) < 0.3 && z_chart_newton(x1, s)) return s;

  BigComplex tau = disc_to_half_plane(x1);
  BigComplex seed = times_i(tau) * (pi_ * 2 / width_) + seed_shift_;
  if (ell_chart_newton(x1, seed, s)) return s;

  // Coarse grid of seeds in the strip.
  const double res[] = {-40, -20, -10, -5, -2, -1, -0.5, -0.2, -0.05};
  const double ims[] = {-3.0, -2.5, -2.0, -1.5, -1.0, -0.5, -0.1};
  BigComplex best(p_);
  double best_r = INFINITY;
  for (double a : res) {
    for (double b : ims) {
      BigComplex l(a, b, p_);
      double r = abs(phi_ell(l, nullptr) - x1).to_double();
      if (r < best_r) {
        best_r = r;
        best = l;
      }
    }
  }
  if (ell_chart_newton(x1, best, s)) return s;
  if (z_chart_newton(x1, s)) return s;
  throw std::domain_error("covering: Newton inversion did not converge");
}

CoveringEvalReport CoveringMap::eval(const BigComplex& x) const {
  Reduction red = reduce(x);
  const BigComplex& x0 = red.x0;

  BigFloat half_step = pi_ / N_;
  for (long j = 0; j < 2 * N_; ++j) {
    BigComplex cusp = expi(half_step * j);
    if (abs(x0 - cusp) < kCuspGuard) throw CuspRefusal("covering: point too close to a cusp");
  }

  CoveringEvalReport rep;
  rep.word = red.tokens();
  if (x0.is_zero()) {
    rep.value = BigComplex(p_);
    rep.power = BigComplex(p_);
    rep.log_abs_power = BigFloat(-INFINITY, p_);
    rep.log_abs_power_m1 = BigFloat(p_);
    rep.residual = BigFloat(p_);
    return rep;
  }

  // Rotate into arg in [-pi/N, pi/N), reflect into the upper half, then fold across pi/2N.
  BigFloat sector = pi_ * 2 / N_;
  BigFloat kf = round_nearest(arg(x0) / sector);
  long k = ((mpfr_get_si(kf.get(), MPFR_RNDN) % N_) + N_) % N_;
  BigComplex x1 = x0 * zeta_inv_[k];
  bool conjugated = x1.im.sign() < 0;
  if (conjugated) x1 = conj(x1);
  bool flipped = arg(x1) > pi_ / (2 * N_);
  if (flipped) x1 = expi(pi_ / N_) * conj(x1);

  Sheet s = solve_sector(x1);
  BigFloat one(1L, p_);
  if (flipped) {
    // w -> conj(w / (w - 1)), so log(1 - w) -> -conj(log(1 - w)).
    BigComplex ell = -conj(s.ell);
    BigComplex w = abs(s.w) < 0.5 ? conj(s.w / (s.w - one)) : one - exp(ell);
    s.ell = ell;
    s.w = w;
    s.F = pow(w, one / N_);
  }
  if (conjugated) {
    s.F = conj(s.F);
    s.w = conj(s.w);
    s.ell = conj(s.ell);
  }
  rep.value = s.F * zeta_[k];
  rep.power = s.w;
  rep.log_abs_power = s.w.is_zero() ? BigFloat(-INFINITY, p_) : log(abs(s.w));
  rep.log_abs_power_m1 = s.ell.re;
  rep.residual = s.residual;
  for (auto* v : {&rep.value.re, &rep.value.im, &rep.power.re, &rep.power.im}) v->set_prec(ctx_.bits);
  return rep;
}

BigComplex CoveringMap::G(const BigComplex& x) const {
  if (!(abs(x) < 1.0)) throw std::domain_error("covering: point outside the unit disc");
  if (x.is_zero()) return BigComplex(p_);
  BigComplex xx = x;
  xx.set_prec(p_);
  return eval(pow(xx, BigFloat(1L, p_) / N_)).power;
}

BigComplex f_n_eval(long N, const BigComplex& x, const PrecisionCtx& ctx) { return CoveringMap(N, ctx).F(x); }

BigComplex g_n_eval(long N, const BigComplex& x, const PrecisionCtx& ctx) { return CoveringMap(N, ctx).G(x); }

BigFloat sup_scan(const CoveringMap& map, const BigFloat& r, long samples, bool full_circle) {
  if (!(r.sign() > 0 && r < 1.0)) throw std::domain_error("sup_scan: need 0 < r < 1");
  if (samples < 1) throw std::invalid_argument("sup_scan: samples must be positive");
  long N = map.N();
  mpfr_prec_t p = map.ctx().work();
  BigFloat pi = const_pi(p);
  long total = full_circle ? samples * N : samples;
  BigFloat best(-INFINITY, p);
  for (long j = 0; j < total; ++j) {
    BigFloat theta = pi * 2 * j / (samples * N);
    BigComplex x = polar(r, theta);
    BigFloat v = map.eval(x).log_abs_power / N;
    if (v > best) best = v;
  }
  return best;
}

BigFloat sup_scan(long N, const BigFloat& r, long samples, const PrecisionCtx& ctx, bool full_circle) {
  return sup_scan(CoveringMap(N, ctx), r, samples, full_circle);
}

}  // namespace udc
