// Acceptance suite: one PASS/FAIL line per criterion.

#include "udc/covering.hpp"
#include "udc/holonomy.hpp"
#include "udc/hypergeom.hpp"
#include "udc/nevanlinna.hpp"
#include "udc/series.hpp"
#include "udc/sl2.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

using namespace udc;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  double budget_s;
  std::function<Verdict()> run;
};

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

Verdict series_leading() {
  PuiseuxSeries l = lambda_over_16(500);
  bool integral = l.all_integral();
  bool head = l.val == 1 && l.coeff(1) == 1 && l.coeff(2) == -8;
  PuiseuxSeries g = revert(l);
  bool rev = g.coeff(1) == 1 && g.coeff(2) == 8 && g.coeff(3) == 91;
  std::string d = "order 500 integral=" + std::string(integral ? "yes" : "no") + ", q - 8q^2 " + (head ? "ok" : "no") +
                  ", reversion " + g.coeff(1).get_str() + ", " + g.coeff(2).get_str() + ", " + g.coeff(3).get_str() +
                  " (expected 1, 8, 91)";
  return {integral && head && rev, d};
}

Verdict divisor_law() {
  PuiseuxSeries h = h_series(200);
  std::vector<long> integral_ns;
  bool ok = true;
  for (long n = 1; n <= 24; ++n) {
    bool integral = nth_root(h, n).all_integral();
    if (integral) integral_ns.push_back(n);
    ok = ok && integral == (24 % n == 0);
  }
  std::string d = "integral roots for n =";
  for (long n : integral_ns) d += " " + std::to_string(n);
  return {ok, d};
}

Verdict named_coefficients() {
  PuiseuxSeries j = j_cube_root(8);
  std::vector<long> je{1, 248, 4124, 34752};
  bool jok = true;
  for (size_t i = 0; i < je.size(); ++i) jok = jok && j.coeff_at(BigRat(-1, 3) + static_cast<long>(i)) == je[i];
  PuiseuxSeries e = elliptic_e_series(10);
  std::vector<long> ee{1, -4, 20, -64, 164, -392};
  bool eok = e.val == 0;
  for (size_t i = 0; i < ee.size(); ++i) eok = eok && e.coeff(static_cast<long>(i)) == ee[i];
  return {jok && eok, std::string("j^(1/3) ") + (jok ? "ok" : "mismatch") + ", (2/pi)E(lambda) " + (eok ? "ok" : "mismatch")};
}

Verdict gamma_defect() {
  PrecisionCtx ctx(256);
  bool ok = true;
  std::string d;
  for (long N : {10L, 100L, 1000L}) {
    mpfr_prec_t p = ctx.work();
    BigFloat defect = BigFloat(gamma_N(N, ctx), p) - BigFloat(gamma_N_asymptotic(N, ctx), p);
    BigFloat n6 = pow(BigFloat(N, p), BigFloat(6L, p));
    BigFloat bound = pow(BigFloat(16L, p), BigFloat(1L, p) / N) * 10 / n6;
    ok = ok && defect.sign() > 0 && defect < bound;
    d += "N=" + std::to_string(N) + " defect*N^6=" + num((defect * n6).to_double()) + " ";
  }
  return {ok, d};
}

Verdict covering_roundtrip() {
  PrecisionCtx ctx(128);
  std::mt19937_64 rng(20240501);
  std::uniform_real_distribution<double> U(0, 1);
  double worst_rt = 0, worst_rot = 0;
  for (long N : {2L, 3L, 5L, 8L}) {
    CoveringMap map(N, ctx);
    mpfr_prec_t p = ctx.work();
    BigFloat pi = const_pi(p);
    BigComplex zeta = polar(BigFloat(1L, p), pi * 2 / N);
    for (int i = 0; i < 100; ++i) {
      BigFloat rad = BigFloat(shortest_double(0.3 * std::sqrt(U(rng))), p);
      BigComplex x = polar(rad, pi * 2 * BigFloat(shortest_double(U(rng)), p));
      BigComplex f = map.F(x);
      worst_rt = std::max(worst_rt, abs(map.psi(f) - x).to_double());
      worst_rot = std::max(worst_rot, abs(map.F(zeta * x) - zeta * f).to_double());
    }
  }
  return {worst_rt < 1e-20 && worst_rot < 1e-20,
          "max |psi(F(x)) - x| = " + num(worst_rt) + ", max rotation defect = " + num(worst_rot)};
}

CircleQuadrature circle(const char* r, long nodes, mpfr_prec_t p) {
  CircleQuadrature q;
  q.radius = BigFloat(std::string(r), p);
  q.nodes = nodes;
  return q;
}

Verdict nevanlinna_identities() {
  PrecisionCtx ctx(128);
  mpfr_prec_t p = ctx.work();
  BigFloat one(1L, p);
  double worst = 0;

  JensenReport c = jensen_check([&](const BigComplex&) { return BigComplex(BigFloat(2L, p)); }, {}, {},
                                log(BigFloat(2L, p)), circle("0.5", 16, p), ctx);
  worst = std::max(worst, c.residual.to_double());

  BigFloat third = one / 3;
  Evaluator blaschke = [&](const BigComplex& z) { return (z - third) / (one - z * third); };
  worst = std::max(worst,
                   jensen_check(blaschke, {{BigComplex(third), 1}}, {}, log(third), circle("0.9", 256, p), ctx)
                       .residual.to_double());

  BigComplex pole(BigFloat(p), BigFloat(std::string("-0.5"), p));
  BigFloat a(std::string("0.3"), p);
  Evaluator rat = [&](const BigComplex& z) { return pow_int(z - a, 2) / (z - pole); };
  worst = std::max(worst, jensen_check(rat, {{BigComplex(a), 2}}, {{pole, 1}}, log(a * a / BigFloat(std::string("0.5"), p)),
                                       circle("0.7", 512, p), ctx)
                              .residual.to_double());

  std::string margins;
  bool margin_ok = true;
  for (long N : {2L, 3L}) {
    CoveringMap map(N, ctx);
    Evaluator g = [&](const BigComplex& z) { return one - map.eval(z).power; };
    CircleQuadrature q = circle("0.8", 96, p);
    q.symmetry = {N, true};
    worst = std::max(worst, jensen_check(g, {}, {}, BigFloat(p), q, ctx).residual.to_double());
    LogDerivReport r = logderiv_bound_check(g, BigFloat(std::string("0.8"), p), BigFloat(std::string("0.9"), p), 96, ctx,
                                            {N, true});
    margin_ok = margin_ok && r.margin.sign() > 0;
    margins += " N=" + std::to_string(N) + ":" + num(r.margin.to_double());
  }
  return {worst < 1e-8 && margin_ok, "max Jensen residual " + num(worst) + ", log-derivative margins" + margins};
}

Verdict growth_bound(unsigned jobs) {
  PrecisionCtx ctx(64);
  std::vector<long> Ns;
  for (long N = 2; N <= 16; ++N) Ns.push_back(N);
  GrowthOptions opt;
  opt.jobs = jobs;
  auto rows = growth_table(Ns, {0.9, 0.99, 0.999}, ctx, opt);
  bool ok = rows.size() == Ns.size() * 9;
  double max_ratio = 0, max_spread = 0;
  long worst_N = 0;
  double worst_r = 0;
  double log4 = std::log(4.0);
  for (size_t i = 0; i + 2 < rows.size(); i += 3) {
    double m[3];
    for (int k = 0; k < 3; ++k) {
      const GrowthRow& row = rows[i + k];
      ok = ok && row.ok && row.ratio.is_finite();
      if (!row.ok) continue;
      m[k] = row.m_value.to_double();
      double ratio = row.ratio.to_double();
      if (row.p == PChoice::POWER && ratio > max_ratio) {
        max_ratio = ratio;
        worst_N = row.N;
        worst_r = row.r;
      }
    }
    if (!ok) break;
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) max_spread = std::max(max_spread, std::abs(m[a] - m[b]));
  }
  ok = ok && max_spread <= log4;
  return {ok, "135 cells finite, reported constant C = " + num(max_ratio) + " (N=" + std::to_string(worst_N) +
                  ", r=" + num(worst_r) + "), max p-choice spread " + num(max_spread) + " <= log 4"};
}

Verdict sl2_suite() {
  bool ok = true;
  std::string d;
  for (long N = 1; N <= 12; ++N) ok = ok && wohlfahrt_level(principal_congruence(N)) == N;
  d += std::string("levels of Gamma(N), N<=12 ") + (ok ? "ok" : "mismatch");
  IndexReport idx = index_gamma2_gammaN(4, true);
  bool iok = idx.formula == 8 && idx.enumerated && *idx.enumerated == 8;
  ok = ok && iok;
  d += ", [Gamma(2):Gamma(4)] = " + idx.formula.get_str() + "/" + (idx.enumerated ? idx.enumerated->get_str() : "?");
  std::mt19937_64 rng(12345);
  int checked = 0, held = 0;
  while (checked < 50) {
    CosetAction G = random_subgroup(rng, 24);
    long L = wohlfahrt_level(G);
    for (long p : {3L, 5L}) {
      long L2 = wohlfahrt_level(conj_A_intersect(G, p));
      if ((p * L) % L2 == 0) ++held;
    }
    ++checked;
  }
  ok = ok && held == 100;
  d += ", level divisibility " + std::to_string(held) + "/100";
  return {ok, d};
}

Verdict holonomy_gap() {
  PrecisionCtx ctx(64);
  BigFloat slack = default_slack(ctx.work());
  auto rows = gap_report({2, 4, 8, 16}, slack, ctx);
  bool ok = true;
  double max_ratio = 0;
  std::string d;
  for (const auto& row : rows) {
    ok = ok && row.ok;
    if (!row.ok) {
      d += "N=" + std::to_string(row.N) + " failed: " + row.failure + "; ";
      continue;
    }
    ok = ok && row.bound.rhs.is_finite() && row.bound.rhs > BigFloat(row.exact_dim, ctx.work());
    max_ratio = std::max(max_ratio, row.ratio_to_N3logN.to_double());
    d += "N=" + std::to_string(row.N) + " rhs=" + num(row.bound.rhs.to_double()) + " dim=" + row.exact_dim.get_str() + "; ";
  }
  for (const auto& row : rows) {
    if (row.ok) ok = ok && row.ratio_to_N3logN.to_double() <= max_ratio;
  }
  d += "max rhs/(N^3 log N) = " + num(max_ratio);
  SiegelInstance inst = binomial_instance(2, 1, 10);
  SiegelResult res = siegel_construct(inst);
  bool nonzero = std::any_of(res.coeffs.begin(), res.coeffs.end(), [](const mpz_class& a) { return a != 0; });
  bool sok = nonzero && res.order >= 10 && res.lowest_integral && sgn(res.lowest) != 0;
  ok = ok && sok;
  d += "; Siegel D=" + std::to_string(res.D) + " ord=" + std::to_string(res.order) + " lowest=" + res.lowest.get_str();
  return {ok, d};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance suite"};
  std::vector<int> only;
  unsigned jobs = 1;
  app.add_option("--only", only, "criteria to run (default all)")->check(CLI::Range(1, 9));
  app.add_option("--jobs", jobs, "threads for the growth grid")->check(CLI::Range(1u, 256u));
  CLI11_PARSE(app, argc, argv);

  std::vector<Criterion> all = {
      {1, 30, series_leading},     {2, 120, divisor_law},           {3, 60, named_coefficients},
      {4, 10, gamma_defect},       {5, 120, covering_roundtrip},    {6, 600, nevanlinna_identities},
      {7, 1200, [jobs] { return growth_bound(jobs); }},             {8, 300, sl2_suite},
      {9, 1200, holonomy_gap},
  };
  std::set<int> want(only.begin(), only.end());
  int failures = 0;
  for (const auto& c : all) {
    if (!want.empty() && !want.count(c.id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = dt <= c.budget_s;
    bool pass = v.pass && in_time;
    if (!pass) ++failures;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << v.detail << " [" << num(dt) << " s"
              << (in_time ? "" : ", over budget " + num(c.budget_s) + " s") << "]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
