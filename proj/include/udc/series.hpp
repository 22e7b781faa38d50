#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace udc {

using BigRat = mpq_class;
using BigInt = mpz_class;

// q = e^{pi i tau} or q = e^{2 pi i tau}.
enum class Nome { PI_I_TAU, TWO_PI_I_TAU };

const char* nome_name(Nome n);
Nome nome_from_name(const std::string& s);

// Sum of coeffs[i] * q^{(val + i)/ram}, known modulo q^{trunc/ram}.
// The zero series (to its truncation) is stored with val == trunc and no coefficients.
struct PuiseuxSeries {
  long ram = 1;
  long val = 0;
  long trunc = 1;
  Nome nome = Nome::PI_I_TAU;
  std::vector<BigRat> coeffs;

  PuiseuxSeries() = default;
  PuiseuxSeries(long ram, long val, long trunc, Nome nome, std::vector<BigRat> coeffs);

  static PuiseuxSeries constant(const BigRat& c, long trunc, Nome nome = Nome::PI_I_TAU);
  // q^{e/ram} known to q^{trunc/ram}.
  static PuiseuxSeries monomial(long e, long ram, long trunc, Nome nome = Nome::PI_I_TAU);
  // Integral power series sum c[i] q^i, truncated at q^{trunc}.
  static PuiseuxSeries from_coeffs(const std::vector<BigRat>& c, long trunc, Nome nome = Nome::PI_I_TAU);

  bool is_zero() const { return coeffs.empty(); }
  long rel_prec() const { return trunc - val; }
  // Coefficient of q^{e/ram}; zero outside the stored window.
  BigRat coeff(long e) const;
  // Coefficient of q^{k} for integral k (requires the exponent to be on the lattice).
  BigRat coeff_at(const BigRat& exponent) const;
  const BigRat& leading() const;
  BigRat leading_exponent() const { return BigRat(val, ram); }

  void normalize();
  PuiseuxSeries with_ram(long r) const;
  PuiseuxSeries truncated(long new_trunc) const;
  // Largest exact reduction of ram compatible with val, trunc and every nonzero exponent.
  PuiseuxSeries simplify_ram() const;
  bool all_integral() const;
  bool operator==(const PuiseuxSeries& o) const;
};

enum class ArithOp { ADD, SUB, MUL, DIV, POW_INT };

PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries operator-(const PuiseuxSeries& a);
PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries operator*(const BigRat& c, const PuiseuxSeries& a);
PuiseuxSeries operator/(const PuiseuxSeries& a, const PuiseuxSeries& b);

PuiseuxSeries series_arith(const PuiseuxSeries& a, const PuiseuxSeries& b, ArithOp op, long k = 0);
PuiseuxSeries inverse(const PuiseuxSeries& b);
PuiseuxSeries pow_int(const PuiseuxSeries& a, long k);
// g with g^n = f; leading coefficient of f must be 1.
PuiseuxSeries nth_root(const PuiseuxSeries& f, long n);
// Rational power f^{p/q} with leading coefficient 1.
PuiseuxSeries rat_pow(const PuiseuxSeries& f, const BigRat& e);
// Compositional inverse of t + O(t^2).
PuiseuxSeries revert(const PuiseuxSeries& f);
// f(g); g must have positive valuation.
PuiseuxSeries compose(const PuiseuxSeries& f, const PuiseuxSeries& g);
// Formal derivative d/dq for an integral-exponent series (ram 1).
PuiseuxSeries derivative(const PuiseuxSeries& f);
// f(c q^k) for ram 1 series.
PuiseuxSeries substitute_scaled(const PuiseuxSeries& f, const BigRat& c, long k);

// Product of (1 - X^n), n >= 1, as coefficients of X^0..X^{len-1} (pentagonal numbers).
std::vector<BigInt> euler_product(long len);

// eta(m tau) in the requested nome with `order` integral nome powers beyond the leading one.
PuiseuxSeries eta_expansion(const BigRat& m, long order, Nome nome = Nome::PI_I_TAU);
// prod eta(m_i tau)^{e_i}; `order` counts integral nome powers past the leading exponent.
PuiseuxSeries eta_quotient(const std::vector<std::pair<BigRat, long>>& factors, long order, Nome nome);

// lambda/16 = (eta(tau/2) eta(2tau)^2 / eta(tau)^3)^8 = q - 8q^2 + ..., q = e^{pi i tau}, known to q^{order+1}.
PuiseuxSeries lambda_over_16(long order);
// lambda(1-lambda)/16 = (eta(tau/2) eta(2 tau) / eta(tau)^2)^24.
PuiseuxSeries h_series(long order);
// 1 + 240 sum sigma_3(n) q^n, q = e^{2 pi i tau}.
PuiseuxSeries eisenstein_e4(long order);
// j^{1/3} = q^{-1/3} E4 / prod(1-q^n)^8 with q = e^{2 pi i tau}.
PuiseuxSeries j_cube_root(long order);
// Gauss series 2F1(a,b;c;x) with rational parameters, known to x^{order}.
PuiseuxSeries hypergeometric_series(const BigRat& a, const BigRat& b, const BigRat& c, long order);
// (2/pi) E(lambda(q)) = 2F1(-1/2, 1/2; 1; lambda).
PuiseuxSeries elliptic_e_series(long order);
// sum C_n^2 x^{n+1}.
PuiseuxSeries catalan_square_series(long order);
// (1 + c x)^{e}, known to x^{order}.
PuiseuxSeries binomial_series(const BigRat& e, const BigRat& c, long order);

struct PrimeTrack {
  unsigned long prime = 0;
  // min p-adic valuation of coefficients 0..i.
  std::vector<long> min_valuation;
};

struct DenominatorProfile {
  std::vector<BigInt> cumulative_lcm;
  std::vector<PrimeTrack> primes;

  // LCM constant over the second half of coefficient orders [0, order].
  bool bounded_upto(long order) const;
  bool divisibility_monotone() const;
};

DenominatorProfile denominator_profile(const PuiseuxSeries& f, unsigned long prime_bound = 100);

nlohmann::json to_json(const PuiseuxSeries& f);
PuiseuxSeries series_from_json(const nlohmann::json& j);

}  // namespace udc
