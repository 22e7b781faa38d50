#include "udc/holonomy.hpp"

#include "udc/covering.hpp"
#include "udc/hypergeom.hpp"
#include "udc/sl2.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace udc {

BigFloat default_slack(mpfr_prec_t prec) {
  PrecisionCtx ctx(static_cast<int>(std::max<mpfr_prec_t>(64, prec)));
  return BigFloat(zeta_value(3, ctx), prec) / 4;
}

BigFloat max_feasible_slack(long N, const PrecisionCtx& ctx) {
  mpfr_prec_t p = ctx.work();
  BigFloat g(gamma_N(N, ctx), p);
  BigFloat root16 = exp(log(BigFloat(16L, p)) / N);
  BigFloat N3(N * N * N, p);
  return N3 * (BigFloat(1L, p) - root16 / g);
}

namespace {

BigFloat analytic_lower(long N, mpfr_prec_t p) {
  // N^3 / (2 pi^2), rounded toward zero
  BigFloat pi(p);
  mpfr_const_pi(pi.get(), MPFR_RNDU);
  BigFloat den(p);
  mpfr_sqr(den.get(), pi.get(), MPFR_RNDU);
  mpfr_mul_ui(den.get(), den.get(), 2, MPFR_RNDU);
  BigFloat out(p);
  BigFloat N3(N * N * N, p);
  mpfr_div(out.get(), N3.get(), den.get(), MPFR_RNDD);
  return out;
}

}  // namespace

BoundReport dimension_bound_rhs(long N, const BigFloat& slack, const PrecisionCtx& ctx, const GrowthOptions& opt) {
  if (N < 2) throw std::invalid_argument("dimension_bound_rhs: N must be at least 2");
  mpfr_prec_t p = ctx.work();
  BoundReport rep;
  rep.N = N;
  rep.slack = BigFloat(slack, p);
  BigFloat N3(N * N * N, p);
  rep.r = BigFloat(1L, p) - rep.slack / N3;
  BigFloat smax = max_feasible_slack(N, ctx);
  if (!(rep.slack.sign() > 0) || !(rep.slack < smax)) {
    throw InfeasibleSlack("dimension_bound_rhs: slack must lie in (0, " + smax.to_string(8) + ") for N = " +
                              std::to_string(N),
                          smax.to_double());
  }
  BigFloat g(gamma_N(N, ctx), p);
  rep.log_phi_prime = log(g) + log(rep.r) - log(BigFloat(16L, p)) / N;
  CoveringMap map(N, ctx);
  QuadResult q = proximity_power(map, rep.r, opt);
  rep.nodes = growth_nodes(N, rep.r, opt);
  rep.m_value = q.value();
  rep.m_err = q.est_err;
  BigFloat e = exp(BigFloat(1L, p));
  rep.rhs = e * rep.m_value / rep.log_phi_prime;
  rep.rhs_upper = e * (rep.m_value + rep.m_err) / rep.log_phi_prime;
  rep.lower = analytic_lower(N, p);
  return rep;
}

CongruenceBound congruence_lower_bound(long N, mpfr_prec_t prec) {
  if (N < 2 || N % 2 != 0) throw std::invalid_argument("congruence_lower_bound: N must be even and at least 2");
  CongruenceBound b;
  mpz_class idx = index_gamma2_gammaN(N, false).formula;
  b.exact = N == 2 ? mpz_class(1) : mpz_class(idx / 2);
  b.analytic = analytic_lower(N, prec);
  return b;
}

std::vector<GapRow> gap_report(const std::vector<long>& Ns, const BigFloat& slack, const PrecisionCtx& ctx,
                               const GrowthOptions& opt) {
  std::vector<GapRow> rows;
  for (long N : Ns) {
    GapRow row;
    row.N = N;
    try {
      row.bound = dimension_bound_rhs(N, slack, ctx, opt);
      row.exact_dim = congruence_lower_bound(N, ctx.work()).exact;
      BigFloat N3(N * N * N, ctx.work());
      row.ratio_to_N3logN = row.bound.rhs / (N3 * log(BigFloat(N, ctx.work())));
      row.ok = true;
    } catch (const std::exception& e) {
      row.failure = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_gap_csv(std::ostream& os, const std::vector<GapRow>& rows) {
  os << "N,slack,log_phi_prime,m_value,rhs,exact_dim,ratio_to_N3logN\n";
  for (const auto& row : rows) {
    os << row.N << ',';
    if (row.ok) {
      os << shortest_double(row.bound.slack.to_double()) << ',' << shortest_double(row.bound.log_phi_prime.to_double())
         << ',' << shortest_double(row.bound.m_value.to_double()) << ',' << shortest_double(row.bound.rhs.to_double())
         << ',' << row.exact_dim.get_str() << ',' << shortest_double(row.ratio_to_N3logN.to_double());
    } else {
      os << ",,,,,";
    }
    os << '\n';
  }
}

long MultiSeries::order() const {
  long best = trunc;
  for (const auto& [j, c] : coeffs) {
    long deg = 0;
    for (long e : j) deg += e;
    best = std::min(best, deg);
  }
  return best;
}

std::optional<std::pair<std::vector<long>, BigRat>> MultiSeries::lex_min() const {
  if (coeffs.empty()) return std::nullopt;
  return *coeffs.begin();  // std::map orders keys lexicographically
}

namespace {

mpz_class binom(long n, long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

long ipow(long b, long e) {
  long r = 1;
  for (long i = 0; i < e; ++i) r *= b;
  return r;
}

// Coefficients 0..T-1 of p(x)^k f_i(x), slot = i * D + k.
std::vector<std::vector<BigRat>> univariate_basis(const SiegelInstance& inst, long D, long T) {
  PuiseuxSeries p = inst.p ? *inst.p : PuiseuxSeries::monomial(1, 1, T);
  std::vector<std::vector<BigRat>> out;
  for (long i = 0; i < inst.m; ++i) {
    PuiseuxSeries term = inst.functions[i].truncated(T);
    for (long k = 0; k < D; ++k) {
      std::vector<BigRat> c(T);
      for (long e = 0; e < T; ++e) c[e] = term.coeff(e);
      out.push_back(std::move(c));
      term = (term * p).truncated(T);
    }
  }
  return out;
}

// All multi-indices in d variables of total degree < T.
std::vector<std::vector<long>> monomials(long d, long T) {
  std::vector<std::vector<long>> out;
  std::vector<long> j(d, 0);
  std::function<void(long, long)> rec = [&](long s, long left) {
    if (s == d) {
      out.push_back(j);
      return;
    }
    for (long e = 0; e < left; ++e) {
      j[s] = e;
      rec(s + 1, left - e);
    }
    j[s] = 0;
  };
  rec(0, T);
  return out;
}

std::vector<long> slots_of(long idx, long d, long width) {
  std::vector<long> s(d);
  for (long t = d - 1; t >= 0; --t) {
    s[t] = idx % width;
    idx /= width;
  }
  return s;
}

// Kernel vector of an exact rational matrix. Columns are eliminated in the
// given order; the first free one in that order is set to 1.
std::vector<BigRat> kernel_vector(std::vector<std::vector<BigRat>> A, const std::vector<long>& order,
                                  long& kernel_dim) {
  long rows = static_cast<long>(A.size());
  long cols = static_cast<long>(order.size());
  std::vector<long> pivot_col;
  long r = 0;
  for (long c : order) {
    if (r >= rows) break;
    long piv = -1;
    for (long i = r; i < rows; ++i) {
      if (sgn(A[i][c]) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(A[r], A[piv]);
    BigRat inv = 1 / A[r][c];
    for (long k = 0; k < cols; ++k) A[r][k] *= inv;
    for (long i = 0; i < rows; ++i) {
      if (i == r || sgn(A[i][c]) == 0) continue;
      BigRat f = A[i][c];
      for (long k = 0; k < cols; ++k) {
        if (sgn(A[r][k]) != 0) A[i][k] -= f * A[r][k];
      }
    }
    pivot_col.push_back(c);
    ++r;
  }
  kernel_dim = cols - static_cast<long>(pivot_col.size());
  if (kernel_dim == 0) return {};
  std::vector<char> is_pivot(cols, 0);
  for (long c : pivot_col) is_pivot[c] = 1;
  long free = -1;
  for (long c : order) {
    if (!is_pivot[c]) {
      free = c;
      break;
    }
  }
  std::vector<BigRat> x(cols, BigRat(0));
  x[free] = 1;
  for (long i = 0; i < static_cast<long>(pivot_col.size()); ++i) x[pivot_col[i]] = -A[i][free];
  return x;
}

}  // namespace

long SiegelInstance::conditions() const { return binom(alpha + d - 1, d).get_si(); }

void SiegelInstance::validate() const {
  if (d < 1 || d > 2) throw std::invalid_argument("siegel: d must be 1 or 2");
  if (alpha < 1 || alpha > 30) throw std::invalid_argument("siegel: alpha must lie in [1, 30]");
  if (m < 1 || static_cast<long>(functions.size()) != m) throw std::invalid_argument("siegel: need m functions");
  if (!(kappa > 0 && kappa < 1)) throw std::invalid_argument("siegel: kappa must lie in (0, 1)");
  if (D < 0) throw std::invalid_argument("siegel: D must be nonnegative");
  for (const auto& f : functions) {
    if (f.ram != 1 || f.val < 0) throw std::invalid_argument("siegel: functions must be power series");
  }
  if (p && (p->ram != 1 || p->val < 1)) throw std::invalid_argument("siegel: p must vanish at 0");
}

SiegelResult siegel_construct(const SiegelInstance& inst, long extra_order) {
  inst.validate();
  SiegelResult res;
  res.conditions = inst.conditions();
  long D = inst.D;
  if (D == 0) {
    BigRat need = (1 + 1 / inst.kappa) * res.conditions;
    D = 1;
    while (BigRat(ipow(inst.m * D, inst.d)) < need || ipow(inst.m * D, inst.d) <= res.conditions) ++D;
  }
  res.D = D;
  long width = inst.m * D;
  res.unknowns = ipow(width, inst.d);
  if (res.unknowns <= res.conditions) {
    throw std::invalid_argument("siegel: (mD)^d must exceed the number of vanishing conditions");
  }
  long T = inst.alpha + extra_order;
  for (const auto& f : inst.functions) {
    if (f.trunc < T) throw std::invalid_argument("siegel: function series known to too low an order");
  }
  auto basis = univariate_basis(inst, D, T);

  auto rows_idx = monomials(inst.d, inst.alpha);
  std::vector<std::vector<BigRat>> A(rows_idx.size(), std::vector<BigRat>(res.unknowns));
  for (size_t r = 0; r < rows_idx.size(); ++r) {
    for (long u = 0; u < res.unknowns; ++u) {
      auto sl = slots_of(u, inst.d, width);
      BigRat v = 1;
      for (long s = 0; s < inst.d && sgn(v) != 0; ++s) v *= basis[sl[s]][rows_idx[r][s]];
      A[r][u] = v;
    }
  }
  // low powers of p first, so the solution mixes all the f_i
  std::vector<long> order(res.unknowns);
  for (long u = 0; u < res.unknowns; ++u) order[u] = u;
  auto weight = [&](long u) {
    long w = 0;
    for (long sl : slots_of(u, inst.d, width)) w += sl % D;
    return w;
  };
  std::stable_sort(order.begin(), order.end(), [&](long a, long b) { return weight(a) < weight(b); });
  std::vector<BigRat> x = kernel_vector(std::move(A), order, res.kernel_dim);
  if (x.empty()) throw std::logic_error("siegel: only the zero solution; dimension count violated");

  mpz_class den = 1, g = 0;
  for (const auto& v : x) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
  for (const auto& v : x) {
    mpz_class n = v.get_num() * (den / v.get_den());
    res.coeffs.push_back(n);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  double best = 0;
  for (auto& a : res.coeffs) {
    a /= g;
    if (a != 0) {
      long ex;
      double mant = mpz_get_d_2exp(&ex, a.get_mpz_t());
      best = std::max(best, std::log(std::fabs(mant)) + static_cast<double>(ex) * std::log(2.0));
    }
  }
  res.log_height = best;

  res.F.vars = inst.d;
  res.F.trunc = T;
  for (const auto& j : monomials(inst.d, T)) {
    BigRat sum = 0;
    for (long u = 0; u < res.unknowns; ++u) {
      if (res.coeffs[u] == 0) continue;
      auto sl = slots_of(u, inst.d, width);
      BigRat v = res.coeffs[u];
      for (long s = 0; s < inst.d && sgn(v) != 0; ++s) v *= basis[sl[s]][j[s]];
      sum += v;
    }
    if (sgn(sum) != 0) res.F.coeffs[j] = sum;
  }
  res.order = res.F.order();
  if (res.order < inst.alpha) throw std::logic_error("siegel: kernel vector does not vanish to order alpha");
  for (const auto& [j, c] : res.F.coeffs) {
    long deg = 0;
    for (long e : j) deg += e;
    if (deg == res.order) {
      res.lowest = c;
      res.lowest_integral = c.get_den() == 1;
      break;
    }
  }
  return res;
}

SiegelInstance binomial_instance(long m, long d, long alpha, long series_order) {
  SiegelInstance inst;
  inst.m = m;
  inst.d = d;
  inst.alpha = alpha;
  for (long i = 1; i <= m; ++i) inst.functions.push_back(binomial_series(BigRat(i, 8), BigRat(-16), series_order));
  return inst;
}

namespace {

BigComplex eval_series(const PuiseuxSeries& f, const BigComplex& x, mpfr_prec_t p) {
  BigComplex acc(p);
  for (long e = f.trunc - 1; e >= 0; --e) {
    acc = acc * x + BigComplex(BigFloat(f.coeff(e), p));
  }
  return acc;
}

}  // namespace

LexiReport lexi_check(const SiegelInstance& inst, const SiegelResult& res, const BigFloat& rho, long nodes,
                      const PrecisionCtx& ctx) {
  if (nodes < 8 || nodes % 2 != 0) throw std::invalid_argument("lexi_check: nodes must be even and at least 8");
  mpfr_prec_t p = ctx.work();
  auto lm = res.F.lex_min();
  if (!lm) throw std::logic_error("lexi_check: F vanishes to the computed order");
  long width = inst.m * res.D;
  BigFloat R(rho, p);
  PuiseuxSeries pser = inst.p ? *inst.p : PuiseuxSeries::monomial(1, 1, 2);

  // U[slot](x) = p(x)^k f_i(x) on the node circle
  auto slot_values = [&](const BigComplex& x) {
    std::vector<BigComplex> out;
    BigComplex px = eval_series(pser, x, p);
    for (long i = 0; i < inst.m; ++i) {
      BigComplex v = eval_series(inst.functions[i], x, p);
      for (long k = 0; k < res.D; ++k) {
        out.push_back(v);
        v = v * px;
      }
    }
    return out;
  };
  BigFloat pi = const_pi(p);
  std::vector<std::vector<BigComplex>> U(nodes);
  for (long t = 0; t < nodes; ++t) U[t] = slot_values(polar(R, pi * 2 * t / nodes));

  long total = 1;
  for (long s = 0; s < inst.d; ++s) total *= nodes;
  BigFloat full(p), half(p);
  long nhalf = 0;
  std::vector<long> pt(inst.d);
  for (long flat = 0; flat < total; ++flat) {
    long rem = flat;
    bool even = true;
    for (long s = inst.d - 1; s >= 0; --s) {
      pt[s] = rem % nodes;
      rem /= nodes;
      even = even && pt[s] % 2 == 0;
    }
    BigComplex G(p);
    for (long u = 0; u < res.unknowns; ++u) {
      if (res.coeffs[u] == 0) continue;
      auto sl = slots_of(u, inst.d, width);
      BigComplex term(BigFloat(res.coeffs[u], p));
      for (long s = 0; s < inst.d; ++s) term = term * U[pt[s]][sl[s]];
      G += term;
    }
    BigFloat L = log(abs(G));
    if (!L.is_finite()) throw QuadratureFailure("lexi_check: G vanishes at a torus node");
    full += L;
    if (even) {
      half += L;
      ++nhalf;
    }
  }
  LexiReport rep;
  rep.mean_log_G = full / total;
  rep.est_err = abs(rep.mean_log_G - half / nhalf);
  long deg = 0;
  for (long e : lm->first) deg += e;
  rep.log_abs_c = log(abs(BigFloat(lm->second, p))) + log(R) * deg;
  rep.holds = !(rep.log_abs_c > rep.mean_log_G + rep.est_err);
  return rep;
}

}  // namespace udc
