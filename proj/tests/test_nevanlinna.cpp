#include "udc/covering.hpp"
#include "udc/nevanlinna.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace udc;

namespace {

const PrecisionCtx P128(128);
constexpr mpfr_prec_t WP = 160;

BigFloat bf(double x) { return BigFloat(x, WP); }
BigFloat bf(const char* s) { return BigFloat(std::string(s), WP); }

CircleQuadrature quad(double r, long nodes, QuadRule rule = QuadRule::TRAPEZOID) {
  CircleQuadrature q;
  q.radius = BigFloat(shortest_double(r), WP);
  q.nodes = nodes;
  q.rule = rule;
  return q;
}

const CoveringMap& map_for(long N) {
  static std::vector<std::unique_ptr<CoveringMap>> maps(20);
  if (!maps[N]) maps[N] = std::make_unique<CoveringMap>(N, P128);
  return *maps[N];
}

BigComplex blaschke(const BigComplex& z) {
  BigFloat third = BigFloat(1L, WP) / 3;
  return (z - third) / (BigFloat(1L, WP) - z * third);
}

// sup over arcs, enumerated from the sorted angles
double brute_discrepancy(const std::vector<std::complex<double>>& pts) {
  std::vector<double> t;
  for (auto z : pts) t.push_back(std::fmod(std::arg(z) / (2 * M_PI) + 1, 1.0));
  double d = static_cast<double>(t.size());
  double best = 0;
  auto in_closed = [&](double a, double len, double x) { return std::fmod(x - a + 2, 1.0) <= len + 1e-15; };
  for (double a : t) {
    for (double b : t) {
      double len = std::fmod(b - a + 2, 1.0);
      long closed = 0, open = 0;
      for (double x : t) {
        double off = std::fmod(x - a + 2, 1.0);
        if (in_closed(a, len, x)) ++closed;
        if (off > 1e-15 && off < len - 1e-15) ++open;
      }
      best = std::max(best, closed / d - len);
      double olen = len < 1e-15 ? 1.0 : len;
      if (len < 1e-15) open = static_cast<long>(t.size()) - closed;
      best = std::max(best, olen - open / d);
    }
  }
  return best;
}

}  // namespace

TEST_CASE("quadrature rules") {
  // |Re z| / r has mean 2/pi and kinks at +-pi/2
  CircleIntegrand f = [](const BigComplex& z) { return std::vector<BigFloat>{abs(z.re) / bf(0.5)}; };
  BigFloat two_over_pi = BigFloat(2L, WP) / const_pi(WP);
  QuadResult a = circle_mean(f, 1, quad(0.5, 16, QuadRule::ADAPTIVE), P128);
  CHECK(abs(a.value() - two_over_pi).to_double() < 1e-25);
  CHECK(a.est_err.to_double() < 1e-18);
  QuadResult t = circle_mean(f, 1, quad(0.5, 1024), P128);
  // the kinks sit on nodes, so the trapezoid sum is exact up to O(h^2) smoothing
  CHECK(abs(t.value() - two_over_pi).to_double() < 1e-5);
  CHECK(abs(t.value() - two_over_pi).to_double() <= t.est_err.to_double() + 1e-30);

  // Kronrod nodes integrate cos(k theta) exactly to high degree on one panel
  for (long k = 1; k <= 6; ++k) {
    CircleQuadrature q = quad(0.7, 16, QuadRule::ADAPTIVE);
    CircleIntegrand g = [k](const BigComplex& z) { return std::vector<BigFloat>{pow_int(z, k).re}; };
    CHECK(abs(circle_mean(g, 1, q, P128).value()).to_double() < 1e-30);
  }
  CHECK_THROWS_AS(circle_mean(f, 1, quad(0.5, 8), P128), std::invalid_argument);
  CHECK_THROWS_AS(circle_mean(f, 1, quad(1.0, 64), P128), std::invalid_argument);
}

TEST_CASE("symmetric quadrature matches the full circle") {
  Evaluator g = [](const BigComplex& z) { return BigFloat(1L, WP) - pow_int(z, 3) * bf(2.5); };
  LogModulus L = log_modulus(g);
  CircleQuadrature full = quad(0.8, 3 * 256);
  CircleQuadrature sector = quad(0.8, 128);
  sector.symmetry = {3, true};
  double a = proximity_m(L, full, P128).value().to_double();
  double b = proximity_m(L, sector, P128).value().to_double();
  CHECK(a == doctest::Approx(b).epsilon(1e-6));
}

TEST_CASE("refused nodes are jittered, and too many refusals fail") {
  CircleIntegrand spike = [](const BigComplex& z) -> std::vector<BigFloat> {
    if (z.im.is_zero()) throw CuspRefusal("refused");
    return {BigFloat(1L, WP)};
  };
  QuadResult r = circle_mean(spike, 1, quad(0.5, 64), P128);
  CHECK(r.jittered >= 1);
  CHECK(r.refused == 0);
  CHECK(abs(r.value() - 1).to_double() < 1e-30);

  CircleIntegrand arc = [](const BigComplex& z) -> std::vector<BigFloat> {
    if (z.re.sign() > 0 && abs(z.im) < z.re / 5) throw CuspRefusal("refused");
    return {BigFloat(1L, WP)};
  };
  CHECK_THROWS_AS(circle_mean(arc, 1, quad(0.5, 256), P128), QuadratureFailure);

  // deterministic: identical runs agree bit for bit
  QuadResult r2 = circle_mean(spike, 1, quad(0.5, 64), P128);
  CHECK(r2.value() == r.value());
}

TEST_CASE("proximity function examples") {
  for (double c : {3.0, 0.5, 1.0, 17.0}) {
    LogModulus L = [c](const BigComplex&) { return log(bf(c)); };
    double expect = c > 1 ? std::log(c) : 0.0;
    CHECK(proximity_m(L, quad(0.5, 16), P128).value().to_double() == doctest::Approx(expect).epsilon(1e-15));
  }
  LogModulus inv1m = log_modulus([](const BigComplex& z) { return inv(BigFloat(1L, WP) - z); });
  BigFloat ref = bf("0.1597171462343802401091085455561997432494");
  CHECK(abs(proximity_m(inv1m, quad(0.5, 16, QuadRule::ADAPTIVE), P128).value() - ref).to_double() < 1e-20);
  CircleQuadrature q = quad(0.5, 4096);
  q.symmetry = {1, true};
  QuadResult t = proximity_m(inv1m, q, P128);
  CHECK(abs(t.value() - ref).to_double() < 1e-6);
  // m(r, 1/f) with f = 1 - z: the same function
  LogModulus onem = log_modulus([](const BigComplex& z) { return BigFloat(1L, WP) - z; });
  CHECK(abs(proximity_m_reciprocal(onem, q, P128).value() - t.value()).to_double() < 1e-30);
}

TEST_CASE("counting function") {
  BigFloat r = bf(0.8);
  CHECK(counting_N({}, r).is_zero());
  CHECK(abs(counting_N({{BigComplex(bf(0.4), bf(0.0)), 1}}, r) - log(BigFloat(2L, WP))).to_double() < 1e-40);
  BigComplex a(bf(0.1), bf(-0.3));
  BigFloat expect = log(r / abs(a)) * 2;
  CHECK(abs(counting_N({{a, 2}}, r) - expect).to_double() < 1e-40);
  // poles outside the disc do not count
  CHECK(counting_N({{BigComplex(bf(0.9), bf(0.0)), 3}}, r).is_zero());
  CHECK_THROWS_AS(counting_N({{BigComplex(WP), 1}}, r), std::invalid_argument);

  LogModulus L = log_modulus([&](const BigComplex& z) { return pow_int(z - a, -2); });
  NevanlinnaProfile prof = characteristic_T(L, {{a, 2}}, quad(0.8, 512), P128);
  CHECK(prof.m.sign() >= 0);
  CHECK(prof.Ncount.sign() > 0);
  CHECK(prof.T == prof.m + prof.Ncount);
}

TEST_CASE("Jensen identity") {
  BigFloat zero(WP);
  JensenReport c2 = jensen_check([](const BigComplex&) { return BigComplex(BigFloat(2L, WP)); }, {}, {},
                                 log(BigFloat(2L, WP)), quad(0.5, 16), P128);
  CHECK(c2.residual.to_double() < 1e-40);

  BigFloat third = BigFloat(1L, WP) / 3;
  JensenReport b = jensen_check(blaschke, {{BigComplex(third), 1}}, {}, log(third), quad(0.9, 256), P128);
  CHECK(b.residual.to_double() < 1e-10);
  CHECK(b.winding == 1);

  // zeros and a pole: f = (z - 0.3)^2 / (z + 0.5i)
  BigComplex pole(bf(0.0), bf(-0.5));
  Evaluator rat = [&](const BigComplex& z) { return pow_int(z - bf("0.3"), 2) / (z - pole); };
  BigFloat logc = log(bf("0.09") / bf("0.5"));
  JensenReport rj = jensen_check(rat, {{BigComplex(bf("0.3")), 2}}, {{pole, 1}}, logc, quad(0.7, 512), P128);
  CHECK(rj.residual.to_double() < 1e-20);
  CHECK(rj.winding == 1);

  const CoveringMap& m2 = map_for(2);
  Evaluator g2 = [&](const BigComplex& z) { return BigFloat(1L, WP) - m2.eval(z).power; };
  CircleQuadrature q = quad(0.8, 96);
  q.symmetry = {2, true};
  JensenReport jf = jensen_check(g2, {}, {}, zero, q, P128);
  CHECK(jf.residual.to_double() < 1e-8);

  CHECK_THROWS_AS(jensen_check(blaschke, {}, {}, log(third), quad(0.9, 64), P128), std::invalid_argument);
}

TEST_CASE("first main theorem sandwich") {
  BigFloat third = BigFloat(1L, WP) / 3;
  LogModulus Lf = log_modulus(blaschke);
  CircleQuadrature q = quad(0.85, 2048);
  QuadResult mf = proximity_m(Lf, q, P128);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-2.5, 2.5);
  for (int i = 0; i < 12; ++i) {
    BigComplex a(bf(U(rng)), bf(U(rng)));
    // f - a vanishes where z - 1/3 = a (1 - z/3)
    BigComplex root = (a + third) / (BigComplex(BigFloat(1L, WP)) + a * third);
    std::vector<PointMultiplicity> zeros;
    if (abs(root) < q.radius) zeros.push_back({root, 1});
    BigComplex fa0 = BigComplex(-third) - a;
    LogModulus Lg = log_modulus([&](const BigComplex& z) { return inv(blaschke(z) - a); });
    QuadResult mg = proximity_m(Lg, q, P128);
    BigFloat lhs = abs(mf.value() - (mg.value() + counting_N(zeros, q.radius)) - log(abs(fa0)));
    BigFloat bound = log_plus(log(abs(a))) + const_log2(WP);
    CHECK(lhs.to_double() <= bound.to_double() + mf.est_err.to_double() + mg.est_err.to_double());
  }
}

TEST_CASE("log-derivative lemma") {
  Evaluator one = [](const BigComplex&) { return BigComplex(BigFloat(1L, WP)); };
  LogDerivReport r1 = logderiv_bound_check(one, bf(0.5), bf(0.7), 32, P128);
  CHECK(r1.lhs.is_zero());
  CHECK(r1.margin.sign() > 0);

  Evaluator ex = [](const BigComplex& z) { return exp(z); };
  LogDerivReport r2 = logderiv_bound_check(ex, bf(0.5), bf(0.7), 64, P128);
  CHECK(r2.lhs.to_double() < 1e-25);
  CHECK(r2.margin.sign() > 0);

  for (long N : {2L, 3L}) {
    const CoveringMap& m = map_for(N);
    Evaluator g = [&](const BigComplex& z) { return BigFloat(1L, WP) - m.eval(z).power; };
    LogDerivReport r = logderiv_bound_check(g, bf(0.8), bf(0.9), 96, P128, {N, true});
    CHECK(r.margin.sign() > 0);
    CHECK(r.lhs.sign() > 0);
  }

  Evaluator hits = [](const BigComplex& z) { return BigFloat(1L, WP) - z / bf(0.5); };
  CHECK_THROWS_AS(logderiv_bound_check(hits, bf(0.5), bf(0.7), 32, P128), std::logic_error);
  Evaluator shifted = [](const BigComplex& z) { return z + bf(2.0); };
  CHECK_THROWS_AS(logderiv_bound_check(shifted, bf(0.5), bf(0.7), 32, P128), std::invalid_argument);
  CHECK_THROWS_AS(logderiv_bound_check(one, bf(0.7), bf(0.5), 32, P128), std::invalid_argument);
}

TEST_CASE("growth table on a small grid") {
  GrowthOptions opt;
  opt.node_density = 16;
  auto rows = growth_table({2, 3}, {0.9}, P128, opt);
  REQUIRE(rows.size() == 6);
  for (size_t c = 0; c < rows.size(); c += 3) {
    for (int k = 0; k < 3; ++k) {
      CHECK(rows[c + k].ok);
      CHECK(rows[c + k].m_value.sign() > 0);
      CHECK(rows[c + k].ratio.is_finite());
    }
    double slack = std::log(4.0) + 2 * rows[c].est_err.to_double();
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        CHECK(std::fabs((rows[c + i].m_value - rows[c + j].m_value).to_double()) <= slack);
      }
    }
  }
  std::ostringstream os;
  write_growth_csv(os, rows);
  CHECK(os.str().rfind("N,r,p_choice,m_value,ratio,est_err\n2,0.9,x^N,", 0) == 0);

  // m(r, F_N) = m(r, F_N^N) / N, at two node densities
  GrowthOptions dense = opt;
  dense.node_density = 64;
  QuadResult a = proximity_power(map_for(2), bf("0.9"), opt);
  QuadResult b = proximity_power(map_for(2), bf("0.9"), dense);
  CHECK(std::fabs((a.value() - b.value()).to_double()) <= a.est_err.to_double() + b.est_err.to_double());
  LogModulus LF = [&](const BigComplex& z) { return log(abs(map_for(2).F(z))); };
  CircleQuadrature q = quad(0.9, growth_nodes(2, bf("0.9"), dense));
  q.symmetry = {2, true};
  CHECK(std::fabs((proximity_m(LF, q, P128).value() * 2 - b.value()).to_double()) < 1e-20);

  CHECK_THROWS_AS(growth_table({1}, {0.9}, P128), std::invalid_argument);
  CHECK_THROWS_AS(growth_table({2}, {1.0}, P128), std::invalid_argument);
}

TEST_CASE("discrepancy suite") {
  for (long d : {1L, 2L, 5L, 12L, 40L}) {
    std::vector<std::complex<double>> pts;
    for (long j = 0; j < d; ++j) pts.push_back(std::polar(1.0, 2 * M_PI * j / d + 0.1));
    DiscrepancyReport r = discrepancy_suite(pts);
    CHECK(r.box_discrepancy == doctest::Approx(1.0 / d).epsilon(1e-12));
    CHECK(r.vandermonde_log == doctest::Approx(0.5 * d * std::log(static_cast<double>(d))).epsilon(1e-10));
    CHECK(r.box_discrepancy <= r.erdos_turan_bound);
  }
  std::vector<std::complex<double>> same(7, std::polar(1.0, 0.4));
  DiscrepancyReport s = discrepancy_suite(same);
  CHECK(s.box_discrepancy >= 1 - 1.0 / 7 - 1e-12);
  CHECK(std::isinf(s.vandermonde_log));
  CHECK(s.vandermonde_log < 0);

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> U(0, 2 * M_PI);
  // g = log+|p(phi)| with phi(z) = 1.3 z + 0.2 z^2 and p(x) = x^3
  std::function<double(double)> g = [](double t) {
    std::complex<double> z = std::polar(1.0, t);
    return std::max(0.0, 3 * std::log(std::abs(1.3 * z + 0.2 * z * z)));
  };
  for (int trial = 0; trial < 100; ++trial) {
    long d = 1 + trial % 23;
    std::vector<std::complex<double>> pts;
    for (long j = 0; j < d; ++j) pts.push_back(std::polar(1.0, U(rng)));
    DiscrepancyReport r = discrepancy_suite(pts, trial % 5 == 0 ? &g : nullptr, 1 << 14);
    CHECK(r.box_discrepancy <= r.erdos_turan_bound);
    CHECK(r.erdos_turan_K >= 1);
    CHECK(r.erdos_turan_K <= 10 * d);
    if (d <= 12) CHECK(r.box_discrepancy == doctest::Approx(brute_discrepancy(pts)).epsilon(1e-12));
    // Fekete: |V| <= d^{d/2}
    CHECK(r.vandermonde_log <= 0.5 * d * std::log(static_cast<double>(d)) + 1e-9);
    if (r.koksma) CHECK(r.koksma->defect >= -1e-9);
  }
  CHECK_THROWS_AS(discrepancy_suite({}), std::invalid_argument);
  CHECK_THROWS_AS(discrepancy_suite({{0.5, 0.0}}), std::invalid_argument);
}
