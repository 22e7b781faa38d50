#include "udc/series.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace udc {

namespace {

// Coefficient vector num[i]/den, not necessarily reduced.
struct Scaled {
  std::vector<BigInt> num;
  BigInt den = 1;
};

void reduce_content(Scaled& s) {
  if (s.den == 1) return;
  BigInt g = s.den;
  for (const auto& x : s.num) {
    if (sgn(x) == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  for (auto& x : s.num) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  mpz_divexact(s.den.get_mpz_t(), s.den.get_mpz_t(), g.get_mpz_t());
}

Scaled to_scaled(const std::vector<BigRat>& c, size_t n) {
  Scaled s;
  n = std::min(n, c.size());
  s.den = 1;
  for (size_t i = 0; i < n; ++i) {
    if (c[i].get_den() != 1) mpz_lcm(s.den.get_mpz_t(), s.den.get_mpz_t(), c[i].get_den_mpz_t());
  }
  s.num.resize(n);
  BigInt t;
  for (size_t i = 0; i < n; ++i) {
    if (sgn(c[i]) == 0) continue;
    mpz_divexact(t.get_mpz_t(), s.den.get_mpz_t(), c[i].get_den_mpz_t());
    s.num[i] = c[i].get_num() * t;
  }
  return s;
}

std::vector<BigRat> from_scaled(const Scaled& s) {
  std::vector<BigRat> out(s.num.size());
  for (size_t i = 0; i < s.num.size(); ++i) {
    if (sgn(s.num[i]) == 0) continue;
    out[i] = BigRat(s.num[i], s.den);
    out[i].canonicalize();
  }
  return out;
}

// First n coefficients of a*b.
Scaled mul_trunc(const Scaled& a, const Scaled& b, size_t n) {
  Scaled r;
  r.num.assign(n, BigInt(0));
  r.den = a.den * b.den;
  size_t na = std::min(a.num.size(), n);
  for (size_t i = 0; i < na; ++i) {
    if (sgn(a.num[i]) == 0) continue;
    size_t nb = std::min(b.num.size(), n - i);
    mpz_srcptr ai = a.num[i].get_mpz_t();
    for (size_t j = 0; j < nb; ++j) {
      if (sgn(b.num[j]) == 0) continue;
      mpz_addmul(r.num[i + j].get_mpz_t(), ai, b.num[j].get_mpz_t());
    }
  }
  reduce_content(r);
  return r;
}

std::vector<BigRat> mul_vec(const std::vector<BigRat>& a, const std::vector<BigRat>& b, size_t n) {
  return from_scaled(mul_trunc(to_scaled(a, n), to_scaled(b, n), n));
}

// sum_i s_i * v_i truncated to n entries.
Scaled lincomb(const std::vector<std::pair<BigRat, const Scaled*>>& terms, size_t n) {
  Scaled r;
  r.den = 1;
  for (const auto& [s, v] : terms) {
    if (sgn(s) == 0) continue;
    BigInt d = s.get_den() * v->den;
    mpz_lcm(r.den.get_mpz_t(), r.den.get_mpz_t(), d.get_mpz_t());
  }
  r.num.assign(n, BigInt(0));
  BigInt factor;
  for (const auto& [s, v] : terms) {
    if (sgn(s) == 0) continue;
    BigInt d = s.get_den() * v->den;
    mpz_divexact(factor.get_mpz_t(), r.den.get_mpz_t(), d.get_mpz_t());
    factor *= s.get_num();
    size_t m = std::min(n, v->num.size());
    for (size_t i = 0; i < m; ++i) {
      if (sgn(v->num[i]) == 0) continue;
      mpz_addmul(r.num[i].get_mpz_t(), v->num[i].get_mpz_t(), factor.get_mpz_t());
    }
  }
  reduce_content(r);
  return r;
}

Scaled add_scaled(const Scaled& a, const Scaled& b, size_t n) {
  return lincomb({{BigRat(1), &a}, {BigRat(1), &b}}, n);
}

// 1/u for a power series with u[0] != 0, first n coefficients (Newton iteration).
std::vector<BigRat> inverse_unit(const std::vector<BigRat>& u, size_t n) {
  if (n == 0) return {};
  if (sgn(u.at(0)) == 0) throw std::domain_error("series not invertible");
  std::vector<BigRat> v{BigRat(1) / u[0]};
  size_t m = 1;
  while (m < n) {
    size_t m2 = std::min(2 * m, n);
    Scaled us = to_scaled(u, m2);
    Scaled vs = to_scaled(v, m2);
    Scaled e = mul_trunc(us, vs, m2);
    // e <- 1 - u v; only entries >= m are nonzero.
    for (auto& x : e.num) x = -x;
    e.num[0] += e.den;
    Scaled corr = mul_trunc(vs, e, m2);
    vs.num.resize(m2);
    v = from_scaled(add_scaled(vs, corr, m2));
    m = m2;
  }
  return v;
}

// u^alpha for u[0] = 1 and alpha = p/q, first n coefficients (Miller's recurrence).
std::vector<BigRat> unit_power(const std::vector<BigRat>& u, const BigRat& alpha, size_t n) {
  if (n == 0) return {};
  if (u.at(0) != 1) throw std::domain_error("leading coefficient must be 1");
  Scaled us = to_scaled(u, n);
  const BigInt& p = alpha.get_num();
  const BigInt& q = alpha.get_den();
  std::vector<BigInt> g(n);
  BigInt dg = 1;
  g[0] = 1;
  std::vector<BigRat> out(n);
  out[0] = 1;
  BigInt s, c, t, scale;
  for (size_t m = 1; m < n; ++m) {
    s = 0;
    for (size_t k = 1; k <= m && k < us.num.size(); ++k) {
      if (sgn(us.num[k]) == 0 || sgn(g[m - k]) == 0) continue;
      // ((p+q)k - q m) u_k g_{m-k}
      c = (p + q) * static_cast<unsigned long>(k) - q * static_cast<unsigned long>(m);
      mpz_mul(t.get_mpz_t(), us.num[k].get_mpz_t(), g[m - k].get_mpz_t());
      mpz_addmul(s.get_mpz_t(), t.get_mpz_t(), c.get_mpz_t());
    }
    BigRat gm(s, q * static_cast<unsigned long>(m) * us.den * dg);
    gm.canonicalize();
    out[m] = gm;
    if (sgn(gm) == 0) continue;
    BigInt newd;
    mpz_lcm(newd.get_mpz_t(), dg.get_mpz_t(), gm.get_den_mpz_t());
    if (newd != dg) {
      mpz_divexact(scale.get_mpz_t(), newd.get_mpz_t(), dg.get_mpz_t());
      for (size_t j = 0; j < m; ++j)
        if (sgn(g[j]) != 0) g[j] *= scale;
      dg = newd;
    }
    mpz_divexact(t.get_mpz_t(), dg.get_mpz_t(), gm.get_den_mpz_t());
    g[m] = gm.get_num() * t;
  }
  return out;
}

// P(u) for a power series u with u[0] = 0, first n coefficients; several P share the powers of u.
std::vector<std::vector<BigRat>> compose_many(const std::vector<std::vector<BigRat>>& polys,
                                              const std::vector<BigRat>& u, size_t n) {
  std::vector<std::vector<BigRat>> out;
  if (n == 0) {
    out.assign(polys.size(), {});
    return out;
  }
  if (!u.empty() && sgn(u[0]) != 0) throw std::domain_error("inner series must vanish at 0");
  size_t kmax = 0;
  for (const auto& p : polys) kmax = std::max(kmax, std::min(p.size(), n));
  size_t k = static_cast<size_t>(std::ceil(std::sqrt(static_cast<double>(std::max<size_t>(kmax, 1)))));
  std::vector<Scaled> pw(k + 1);
  pw[0].num.assign(n, BigInt(0));
  pw[0].num[0] = 1;
  pw[1] = to_scaled(u, n);
  pw[1].num.resize(n);
  for (size_t i = 2; i <= k; ++i) pw[i] = mul_trunc(pw[i - 1], pw[1], n);
  const Scaled& giant = pw[k];
  for (const auto& poly : polys) {
    size_t K = std::min(poly.size(), n);
    if (K == 0) {
      out.emplace_back(n, BigRat(0));
      continue;
    }
    size_t blocks = (K + k - 1) / k;
    Scaled acc;
    for (size_t j = blocks; j-- > 0;) {
      std::vector<std::pair<BigRat, const Scaled*>> terms;
      for (size_t i = 0; i < k && j * k + i < K; ++i) terms.emplace_back(poly[j * k + i], &pw[i]);
      Scaled b = lincomb(terms, n);
      if (j + 1 == blocks) {
        acc = std::move(b);
      } else {
        acc = add_scaled(mul_trunc(acc, giant, n), b, n);
      }
    }
    out.push_back(from_scaled(acc));
  }
  return out;
}

long lcm_long(long a, long b) { return std::lcm(a, b); }

void check_nome(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  if (a.nome != b.nome) throw std::domain_error("nome tags differ");
}

long to_long(const BigInt& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("exponent out of range");
  return z.get_si();
}

}  // namespace

const char* nome_name(Nome n) { return n == Nome::PI_I_TAU ? "PI_I_TAU" : "TWO_PI_I_TAU"; }

Nome nome_from_name(const std::string& s) {
  if (s == "PI_I_TAU") return Nome::PI_I_TAU;
  if (s == "TWO_PI_I_TAU") return Nome::TWO_PI_I_TAU;
  throw std::invalid_argument("unknown nome tag: " + s);
}

PuiseuxSeries::PuiseuxSeries(long ram_, long val_, long trunc_, Nome nome_, std::vector<BigRat> coeffs_)
    : ram(ram_), val(val_), trunc(trunc_), nome(nome_), coeffs(std::move(coeffs_)) {
  if (ram < 1) throw std::invalid_argument("ram must be positive");
  if (trunc < val) throw std::invalid_argument("trunc below valuation");
  coeffs.resize(static_cast<size_t>(trunc - val));
  normalize();
}

PuiseuxSeries PuiseuxSeries::constant(const BigRat& c, long trunc, Nome nome) {
  if (trunc < 1) throw std::invalid_argument("constant series needs trunc >= 1");
  std::vector<BigRat> v(static_cast<size_t>(trunc));
  v[0] = c;
  return PuiseuxSeries(1, 0, trunc, nome, v);
}

PuiseuxSeries PuiseuxSeries::monomial(long e, long ram, long trunc, Nome nome) {
  if (trunc <= e) throw std::invalid_argument("monomial beyond truncation");
  std::vector<BigRat> v(static_cast<size_t>(trunc - e));
  v[0] = 1;
  return PuiseuxSeries(ram, e, trunc, nome, v);
}

PuiseuxSeries PuiseuxSeries::from_coeffs(const std::vector<BigRat>& c, long trunc, Nome nome) {
  std::vector<BigRat> v(c.begin(), c.begin() + std::min<size_t>(c.size(), static_cast<size_t>(std::max(0L, trunc))));
  return PuiseuxSeries(1, 0, trunc, nome, v);
}

BigRat PuiseuxSeries::coeff(long e) const {
  if (e < val || e >= trunc) return BigRat(0);
  size_t i = static_cast<size_t>(e - val);
  return i < coeffs.size() ? coeffs[i] : BigRat(0);
}

BigRat PuiseuxSeries::coeff_at(const BigRat& exponent) const {
  BigRat e = exponent * ram;
  if (e.get_den() != 1) return BigRat(0);
  long k = to_long(e.get_num());
  if (k >= trunc) throw std::out_of_range("coefficient beyond truncation");
  return coeff(k);
}

const BigRat& PuiseuxSeries::leading() const {
  if (coeffs.empty()) throw std::domain_error("zero series has no leading coefficient");
  return coeffs.front();
}

void PuiseuxSeries::normalize() {
  size_t first = 0;
  while (first < coeffs.size() && sgn(coeffs[first]) == 0) ++first;
  if (first == coeffs.size()) {
    coeffs.clear();
    val = trunc;
    return;
  }
  if (first > 0) {
    coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(first));
    val += static_cast<long>(first);
  }
}

PuiseuxSeries PuiseuxSeries::with_ram(long r) const {
  if (r == ram) return *this;
  if (r % ram != 0) throw std::invalid_argument("ram must be a multiple of the current ram");
  long f = r / ram;
  PuiseuxSeries out;
  out.ram = r;
  out.val = val * f;
  out.trunc = trunc * f;
  out.nome = nome;
  out.coeffs.assign(static_cast<size_t>(out.trunc - out.val), BigRat(0));
  for (size_t i = 0; i < coeffs.size(); ++i) out.coeffs[i * static_cast<size_t>(f)] = coeffs[i];
  return out;
}

PuiseuxSeries PuiseuxSeries::truncated(long new_trunc) const {
  if (new_trunc >= trunc) return *this;
  PuiseuxSeries out = *this;
  out.trunc = new_trunc;
  if (new_trunc <= val) {
    out.coeffs.clear();
    out.val = new_trunc;
    return out;
  }
  out.coeffs.resize(static_cast<size_t>(new_trunc - val));
  out.normalize();
  return out;
}

PuiseuxSeries PuiseuxSeries::simplify_ram() const {
  long g = std::gcd(ram, std::gcd(std::labs(val), std::labs(trunc)));
  for (size_t i = 0; i < coeffs.size() && g > 1; ++i)
    if (sgn(coeffs[i]) != 0) g = std::gcd(g, static_cast<long>(i));
  if (g <= 1) return *this;
  PuiseuxSeries out;
  out.ram = ram / g;
  out.val = val / g;
  out.trunc = trunc / g;
  out.nome = nome;
  out.coeffs.resize(static_cast<size_t>(out.trunc - out.val));
  for (size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = coeffs[i * static_cast<size_t>(g)];
  return out;
}

bool PuiseuxSeries::all_integral() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const BigRat& c) { return c.get_den() == 1; });
}

bool PuiseuxSeries::operator==(const PuiseuxSeries& o) const {
  return ram == o.ram && val == o.val && trunc == o.trunc && nome == o.nome && coeffs == o.coeffs;
}

PuiseuxSeries operator+(const PuiseuxSeries& a0, const PuiseuxSeries& b0) {
  check_nome(a0, b0);
  long L = lcm_long(a0.ram, b0.ram);
  PuiseuxSeries a = a0.with_ram(L), b = b0.with_ram(L);
  long t = std::min(a.trunc, b.trunc);
  long v = std::min(a.val, b.val);
  if (v >= t) return PuiseuxSeries(L, t, t, a.nome, {});
  std::vector<BigRat> c(static_cast<size_t>(t - v));
  for (long e = v; e < t; ++e) {
    BigRat& x = c[static_cast<size_t>(e - v)];
    if (e >= a.val) x += a.coeff(e);
    if (e >= b.val) x += b.coeff(e);
  }
  return PuiseuxSeries(L, v, t, a.nome, std::move(c));
}

PuiseuxSeries operator-(const PuiseuxSeries& a) {
  PuiseuxSeries r = a;
  for (auto& c : r.coeffs) c = -c;
  return r;
}

PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b) { return a + (-b); }

PuiseuxSeries operator*(const BigRat& c, const PuiseuxSeries& a) {
  PuiseuxSeries r = a;
  for (auto& x : r.coeffs) x *= c;
  r.normalize();
  return r;
}

PuiseuxSeries operator*(const PuiseuxSeries& a0, const PuiseuxSeries& b0) {
  check_nome(a0, b0);
  long L = lcm_long(a0.ram, b0.ram);
  PuiseuxSeries a = a0.with_ram(L), b = b0.with_ram(L);
  long v = a.val + b.val;
  long t = std::min(a.val + b.trunc, b.val + a.trunc);
  if (a.is_zero() || b.is_zero() || t <= v) return PuiseuxSeries(L, t, t, a.nome, {});
  size_t n = static_cast<size_t>(t - v);
  return PuiseuxSeries(L, v, t, a.nome, mul_vec(a.coeffs, b.coeffs, n));
}

PuiseuxSeries inverse(const PuiseuxSeries& b) {
  if (b.is_zero()) throw std::domain_error("division by a series that is zero to its truncation order");
  size_t n = static_cast<size_t>(b.rel_prec());
  return PuiseuxSeries(b.ram, -b.val, b.trunc - 2 * b.val, b.nome, inverse_unit(b.coeffs, n));
}

PuiseuxSeries operator/(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  check_nome(a, b);
  return a * inverse(b);
}

PuiseuxSeries pow_int(const PuiseuxSeries& a, long k) {
  if (k == 0) {
    long p = a.is_zero() ? 1 : a.rel_prec();
    return PuiseuxSeries::constant(BigRat(1), p, a.nome);
  }
  if (k < 0) return pow_int(inverse(a), -k);
  PuiseuxSeries result;
  bool have = false;
  PuiseuxSeries base = a;
  while (k > 0) {
    if (k & 1) {
      result = have ? result * base : base;
      have = true;
    }
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

PuiseuxSeries series_arith(const PuiseuxSeries& a, const PuiseuxSeries& b, ArithOp op, long k) {
  switch (op) {
    case ArithOp::ADD: return a + b;
    case ArithOp::SUB: return a - b;
    case ArithOp::MUL: return a * b;
    case ArithOp::DIV: return a / b;
    case ArithOp::POW_INT: return pow_int(a, k);
  }
  throw std::invalid_argument("unknown series operation");
}

PuiseuxSeries rat_pow(const PuiseuxSeries& f, const BigRat& e) {
  if (f.is_zero()) throw std::domain_error("power of a zero series");
  if (f.leading() != 1) throw std::domain_error("leading coefficient must be 1; normalize before taking roots");
  size_t n = static_cast<size_t>(f.rel_prec());
  std::vector<BigRat> g = unit_power(f.coeffs, e, n);
  // Leading exponent (val/ram) * e, placed on the lattice of ram * den(e) if needed.
  BigRat lead = BigRat(f.val) * e;
  long q = to_long(BigInt(lead.get_den()));
  if (q == 1) {
    long v = to_long(lead.get_num());
    return PuiseuxSeries(f.ram, v, v + static_cast<long>(n), f.nome, std::move(g));
  }
  long r = f.ram * q;
  long v = to_long(lead.get_num());
  std::vector<BigRat> spread(n * static_cast<size_t>(q));
  for (size_t i = 0; i < n; ++i) spread[i * static_cast<size_t>(q)] = g[i];
  return PuiseuxSeries(r, v, v + static_cast<long>(n) * q, f.nome, std::move(spread));
}

PuiseuxSeries nth_root(const PuiseuxSeries& f, long n) {
  if (n < 1) throw std::invalid_argument("root index must be positive");
  if (n == 1) return f;
  return rat_pow(f, BigRat(1, n));
}

PuiseuxSeries derivative(const PuiseuxSeries& f) {
  if (f.ram != 1) throw std::invalid_argument("derivative needs integral exponents");
  std::vector<BigRat> c(f.coeffs.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = f.coeffs[i] * (f.val + static_cast<long>(i));
  return PuiseuxSeries(1, f.val - 1, f.trunc - 1, f.nome, std::move(c));
}

PuiseuxSeries substitute_scaled(const PuiseuxSeries& f, const BigRat& c, long k) {
  if (f.ram != 1 || k < 1) throw std::invalid_argument("substitute_scaled needs ram 1 and k >= 1");
  long v = f.val * k, t = f.trunc * k;
  std::vector<BigRat> out(static_cast<size_t>(t - v));
  BigRat cp;
  mpq_class base = c;
  for (size_t i = 0; i < f.coeffs.size(); ++i) {
    long e = f.val + static_cast<long>(i);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(std::labs(e)));
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(std::labs(e)));
    cp = e >= 0 ? BigRat(num, den) : BigRat(den, num);
    cp.canonicalize();
    out[i * static_cast<size_t>(k)] = f.coeffs[i] * cp;
  }
  return PuiseuxSeries(1, v, t, f.nome, std::move(out));
}

PuiseuxSeries revert(const PuiseuxSeries& f0) {
  PuiseuxSeries f = f0.simplify_ram();
  if (f.ram != 1 || f.val != 1 || f.is_zero() || f.leading() != 1)
    throw std::domain_error("revert needs a series of the form t + O(t^2)");
  long T = f.trunc;
  // Dense coefficient vectors from exponent 0.
  std::vector<BigRat> F(static_cast<size_t>(T));
  for (long e = 1; e < T; ++e) F[static_cast<size_t>(e)] = f.coeff(e);
  std::vector<BigRat> dF(static_cast<size_t>(T - 1));
  for (long e = 1; e < T; ++e) dF[static_cast<size_t>(e - 1)] = F[static_cast<size_t>(e)] * e;
  std::vector<BigRat> g{BigRat(0), BigRat(1)};
  size_t p = 2;
  size_t target = static_cast<size_t>(T);
  if (target < 2) g.resize(target);
  while (p < target) {
    size_t p2 = std::min(2 * p, target);
    std::vector<BigRat> gp = g;
    gp.resize(p2);
    std::vector<BigRat> Fp(F.begin(), F.begin() + static_cast<long>(p2));
    std::vector<BigRat> dFp(dF.begin(), dF.begin() + static_cast<long>(std::min(p2, dF.size())));
    auto comp = compose_many({Fp, dFp}, gp, p2);
    std::vector<BigRat>& fg = comp[0];
    fg[1] -= 1;
    std::vector<BigRat> corr = mul_vec(fg, inverse_unit(comp[1], p2), p2);
    for (size_t i = 0; i < p2; ++i) gp[i] -= corr[i];
    g = std::move(gp);
    p = p2;
  }
  std::vector<BigRat> c(g.begin() + 1, g.end());
  return PuiseuxSeries(1, 1, T, f.nome, std::move(c));
}

PuiseuxSeries compose(const PuiseuxSeries& f, const PuiseuxSeries& g) {
  if (g.is_zero() || g.val <= 0) throw std::domain_error("compose needs an inner series of positive valuation");
  PuiseuxSeries u = f.ram == 1 ? g : nth_root(g, f.ram);
  if (f.is_zero()) {
    long t = f.trunc * u.val;
    return PuiseuxSeries(u.ram, t, t, g.nome, {});
  }
  // f = q^{val/ram} P(q^{1/ram}) with P known mod X^K, so f(g) = u^{val} P(u).
  long K = f.rel_prec();
  long T = std::min(K * u.val, u.trunc);
  std::vector<BigRat> U(static_cast<size_t>(T));
  for (long e = u.val; e < T; ++e) U[static_cast<size_t>(e)] = u.coeff(e);
  auto comp = compose_many({f.coeffs}, U, static_cast<size_t>(T));
  PuiseuxSeries body(u.ram, 0, T, g.nome, std::move(comp[0]));
  if (f.val == 0) return body;
  return body * pow_int(u, f.val);
}

std::vector<BigInt> euler_product(long len) {
  std::vector<BigInt> c(static_cast<size_t>(std::max(0L, len)));
  if (len <= 0) return c;
  c[0] = 1;
  for (long k = 1;; ++k) {
    long e1 = k * (3 * k - 1) / 2, e2 = k * (3 * k + 1) / 2;
    if (e1 >= len) break;
    int sign = (k % 2 == 0) ? 1 : -1;
    c[static_cast<size_t>(e1)] += sign;
    if (e2 < len) c[static_cast<size_t>(e2)] += sign;
  }
  return c;
}

PuiseuxSeries eta_quotient(const std::vector<std::pair<BigRat, long>>& factors, long order, Nome nome) {
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  if (factors.empty()) throw std::invalid_argument("empty eta quotient");
  // eta(m tau) = q^{lead} prod (1 - q^{step n}).
  BigRat lead_total = 0;
  std::vector<BigRat> steps;
  for (const auto& [m, e] : factors) {
    if (m <= 0) throw std::invalid_argument("eta scale must be positive");
    BigRat lead = nome == Nome::PI_I_TAU ? m / 12 : m / 24;
    BigRat step = nome == Nome::PI_I_TAU ? m * 2 : m;
    lead_total += lead * e;
    steps.push_back(step);
  }
  // s = gcd of the steps as rationals.
  BigInt num_g = 0, den_l = 1;
  for (const auto& st : steps) mpz_lcm(den_l.get_mpz_t(), den_l.get_mpz_t(), st.get_den_mpz_t());
  for (const auto& st : steps) {
    BigInt k = st.get_num() * (den_l / st.get_den());
    mpz_gcd(num_g.get_mpz_t(), num_g.get_mpz_t(), k.get_mpz_t());
  }
  BigRat s(num_g, den_l);
  s.canonicalize();
  // Number of Y = q^s powers covering `order` nome powers.
  BigRat ylen = BigRat(order) / s;
  long M = to_long(BigInt(ylen.get_num() / ylen.get_den())) + (ylen.get_den() == 1 ? 0 : 1);
  PuiseuxSeries acc = PuiseuxSeries::constant(BigRat(1), M, nome);
  for (size_t i = 0; i < factors.size(); ++i) {
    BigRat kk = steps[i] / s;
    long k = to_long(kk.get_num());
    std::vector<BigInt> ep = euler_product((M + k - 1) / k);
    std::vector<BigRat> c(static_cast<size_t>(M));
    for (size_t j = 0; j < ep.size(); ++j)
      if (j * static_cast<size_t>(k) < static_cast<size_t>(M)) c[j * static_cast<size_t>(k)] = ep[j];
    PuiseuxSeries part(1, 0, M, nome, std::move(c));
    acc = acc * pow_int(part, factors[i].second);
  }
  // Place on the lattice q^{1/ram}.
  BigInt r = lead_total.get_den();
  mpz_lcm(r.get_mpz_t(), r.get_mpz_t(), s.get_den_mpz_t());
  long ram = to_long(r);
  long val = to_long(BigInt(BigRat(lead_total * ram)));
  long stride = to_long(BigInt(BigRat(s * ram)));
  long trunc = val + order * ram;
  std::vector<BigRat> out(static_cast<size_t>(order * ram));
  for (long j = 0; j < acc.trunc; ++j) {
    long off = j * stride;
    if (off >= order * ram) break;
    out[static_cast<size_t>(off)] = acc.coeff(j);
  }
  return PuiseuxSeries(ram, val, trunc, nome, std::move(out)).simplify_ram();
}

PuiseuxSeries eta_expansion(const BigRat& m, long order, Nome nome) {
  if (m <= 0) throw std::invalid_argument("eta scale must be positive");
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  return eta_quotient({{m, 1}}, order, nome);
}

PuiseuxSeries lambda_over_16(long order) {
  return eta_quotient({{BigRat(1, 2), 8}, {BigRat(2), 16}, {BigRat(1), -24}}, order, Nome::PI_I_TAU);
}

PuiseuxSeries h_series(long order) {
  return eta_quotient({{BigRat(1, 2), 24}, {BigRat(2), 24}, {BigRat(1), -48}}, order, Nome::PI_I_TAU);
}

PuiseuxSeries eisenstein_e4(long order) {
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  std::vector<BigInt> sigma(static_cast<size_t>(order), BigInt(0));
  for (long d = 1; d < order; ++d) {
    BigInt d3 = BigInt(d) * d * d;
    for (long n = d; n < order; n += d) sigma[static_cast<size_t>(n)] += d3;
  }
  std::vector<BigRat> c(static_cast<size_t>(order));
  c[0] = 1;
  for (long n = 1; n < order; ++n) c[static_cast<size_t>(n)] = BigRat(240 * sigma[static_cast<size_t>(n)]);
  return PuiseuxSeries(1, 0, order, Nome::TWO_PI_I_TAU, std::move(c));
}

PuiseuxSeries j_cube_root(long order) {
  Nome nm = Nome::TWO_PI_I_TAU;
  std::vector<BigInt> ep = euler_product(order);
  std::vector<BigRat> c(ep.begin(), ep.end());
  PuiseuxSeries prod(1, 0, order, nm, std::move(c));
  PuiseuxSeries body = eisenstein_e4(order) / pow_int(prod, 8);
  return PuiseuxSeries::monomial(-1, 3, 3 * order, nm) * body;
}

PuiseuxSeries hypergeometric_series(const BigRat& a, const BigRat& b, const BigRat& c, long order) {
  if (c <= 0 && c.get_den() == 1) throw std::domain_error("c is a nonpositive integer");
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  std::vector<BigRat> out(static_cast<size_t>(order));
  out[0] = 1;
  for (long k = 0; k + 1 < order; ++k) {
    BigRat num = (a + k) * (b + k);
    BigRat den = (c + k) * (k + 1);
    out[static_cast<size_t>(k + 1)] = out[static_cast<size_t>(k)] * num / den;
  }
  return PuiseuxSeries(1, 0, order, Nome::PI_I_TAU, std::move(out));
}

PuiseuxSeries elliptic_e_series(long order) {
  PuiseuxSeries lam = BigRat(16) * lambda_over_16(order);
  PuiseuxSeries e = hypergeometric_series(BigRat(-1, 2), BigRat(1, 2), BigRat(1), order + 1);
  return compose(e, lam);
}

PuiseuxSeries catalan_square_series(long order) {
  std::vector<BigRat> c(static_cast<size_t>(std::max(order, 1L)));
  BigInt cat = 1;
  for (long n = 0; n + 1 < order; ++n) {
    c[static_cast<size_t>(n + 1)] = BigRat(cat * cat);
    // C_{n+1} = C_n * 2(2n+1)/(n+2)
    cat = cat * (2 * (2 * n + 1));
    cat /= (n + 2);
  }
  return PuiseuxSeries(1, 0, order, Nome::PI_I_TAU, std::move(c));
}

PuiseuxSeries binomial_series(const BigRat& e, const BigRat& c, long order) {
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  std::vector<BigRat> out(static_cast<size_t>(order));
  out[0] = 1;
  for (long k = 0; k + 1 < order; ++k) out[static_cast<size_t>(k + 1)] = out[static_cast<size_t>(k)] * (e - k) / (k + 1) * c;
  return PuiseuxSeries(1, 0, order, Nome::PI_I_TAU, std::move(out));
}

bool DenominatorProfile::bounded_upto(long order) const {
  if (cumulative_lcm.empty()) return true;
  long last = std::min<long>(order, static_cast<long>(cumulative_lcm.size()) - 1);
  long half = last / 2;
  return cumulative_lcm[static_cast<size_t>(half)] == cumulative_lcm[static_cast<size_t>(last)];
}

bool DenominatorProfile::divisibility_monotone() const {
  for (size_t i = 1; i < cumulative_lcm.size(); ++i)
    if (!mpz_divisible_p(cumulative_lcm[i].get_mpz_t(), cumulative_lcm[i - 1].get_mpz_t())) return false;
  return true;
}

DenominatorProfile denominator_profile(const PuiseuxSeries& f, unsigned long prime_bound) {
  DenominatorProfile p;
  BigInt l = 1;
  p.cumulative_lcm.reserve(f.coeffs.size());
  for (const auto& c : f.coeffs) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    p.cumulative_lcm.push_back(l);
  }
  std::vector<unsigned long> primes;
  for (unsigned long q = 2; q <= prime_bound; ++q) {
    bool is_p = true;
    for (unsigned long d = 2; d * d <= q; ++d)
      if (q % d == 0) { is_p = false; break; }
    if (is_p && mpz_divisible_ui_p(l.get_mpz_t(), q)) primes.push_back(q);
  }
  for (unsigned long q : primes) {
    PrimeTrack t;
    t.prime = q;
    long cur = 0;
    bool seen = false;
    BigInt tmp;
    for (const auto& c : f.coeffs) {
      if (sgn(c) != 0) {
        long v = 0;
        if (mpz_divisible_ui_p(c.get_den_mpz_t(), q)) {
          v = -static_cast<long>(mpz_remove(tmp.get_mpz_t(), c.get_den_mpz_t(), BigInt(q).get_mpz_t()));
        } else {
          v = static_cast<long>(mpz_remove(tmp.get_mpz_t(), c.get_num_mpz_t(), BigInt(q).get_mpz_t()));
        }
        cur = seen ? std::min(cur, v) : v;
        seen = true;
      }
      t.min_valuation.push_back(cur);
    }
    p.primes.push_back(std::move(t));
  }
  return p;
}

nlohmann::json to_json(const PuiseuxSeries& f) {
  nlohmann::json j;
  j["ram"] = f.ram;
  j["val"] = f.val;
  j["trunc"] = f.trunc;
  j["nome"] = nome_name(f.nome);
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : f.coeffs) arr.push_back(c.get_str());
  j["coeffs"] = arr;
  return j;
}

PuiseuxSeries series_from_json(const nlohmann::json& j) {
  std::vector<BigRat> c;
  for (const auto& s : j.at("coeffs")) {
    BigRat q(s.get<std::string>());
    q.canonicalize();
    c.push_back(q);
  }
  return PuiseuxSeries(j.at("ram").get<long>(), j.at("val").get<long>(), j.at("trunc").get<long>(),
                       nome_from_name(j.at("nome").get<std::string>()), std::move(c));
}

}  // namespace udc
