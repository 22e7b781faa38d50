#include "udc/hypergeom.hpp"

#include <doctest.h>

#include <random>

using namespace udc;

namespace {

const PrecisionCtx P256(256);

BigFloat bf(const char* s, mpfr_prec_t p = 300) { return BigFloat(std::string(s), p); }
BigComplex bc(double re, double im, mpfr_prec_t p = 300) { return BigComplex(re, im, p); }

double err(const BigComplex& v, const char* re, const char* im) {
  BigComplex ref(bf(re), bf(im));
  return abs(v - ref).to_double();
}
double err(const BigFloat& v, const char* ref) { return abs(v - bf(ref)).to_double(); }

BigComplex rat_c(long n, long d, mpfr_prec_t p = 300) { return BigComplex(BigFloat(mpq_class(n, d), p)); }

}  // namespace

TEST_CASE("bernoulli numbers") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == mpq_class(-1, 2));
  CHECK(bernoulli(2) == mpq_class(1, 6));
  CHECK(bernoulli(3) == 0);
  CHECK(bernoulli(12) == mpq_class(-691, 2730));
  CHECK(bernoulli(30) == mpq_class("8615841276005/14322"));
}

TEST_CASE("gamma at classical points") {
  CHECK(abs(gamma(bc(1, 0), P256) - BigComplex(BigFloat(1L, 256))).log2_abs() < -250);
  BigFloat sqrt_pi = sqrt(const_pi(300));
  CHECK((abs(gamma(BigFloat(0.5, 300), P256) - sqrt_pi)).log2_abs() < -250);
  CHECK(err(gamma(bc(0.25, 1), P256), "0.099149758763453354352757460762995862232202698",
            "-0.516617743792885287274473828381761810095165618") < 1e-43);
  CHECK(err(gamma(bc(-2.5, 0.5), P256), "-0.333875203522432337403277270339565588072706348",
            "-0.206457307963608414918287607563872988383466877") < 1e-43);
  CHECK_THROWS_AS(gamma(bc(-3, 0), P256), std::domain_error);
  CHECK_THROWS_AS(gamma(bc(0, 0), P256), std::domain_error);
}

TEST_CASE("gamma agrees with mpfr on a real grid") {
  for (int i = 1; i <= 40; ++i) {
    BigFloat x(i * 0.37 - 5.01, 300);
    BigFloat ref(300);
    mpfr_gamma(ref.get(), x.get(), MPFR_RNDN);
    BigFloat g = gamma(x, P256);
    CHECK(abs((g - ref) / ref).log2_abs() < -245);
  }
}

TEST_CASE("digamma") {
  BigFloat euler = const_euler(300);
  CHECK(abs(digamma(BigFloat(1L, 300), P256) + euler).log2_abs() < -250);
  CHECK(err(digamma(bc(0.3, 2), P256), "0.687523593749103972239587660073499431642205",
            "1.67273021105662864402941309366010126394242388") < 1e-42);
  CHECK(err(digamma(BigFloat(-1.25, 300), P256), "3.71413912021352783037311323718281930682992496") < 1e-42);
  for (int i = 1; i <= 20; ++i) {
    BigFloat x(i * 0.61 - 4.3, 300);
    BigFloat ref(300);
    mpfr_digamma(ref.get(), x.get(), MPFR_RNDN);
    CHECK(abs(digamma(x, P256) - ref).log2_abs() < -240);
  }
  CHECK_THROWS_AS(digamma(bc(-2, 0), P256), std::domain_error);
}

TEST_CASE("zeta values") {
  BigFloat pi = const_pi(300);
  CHECK(abs(zeta_value(2, P256) - pi * pi / 6).log2_abs() < -250);
  CHECK(err(zeta_value(3, P256), "1.20205690315959428539973816151144999076498629") < 1e-43);
  CHECK(err(zeta_value(5, P256), "1.03692775514336992633136548645703416805708092") < 1e-43);
  for (long s = 2; s <= 25; ++s) {
    BigFloat ref(300);
    mpfr_zeta_ui(ref.get(), static_cast<unsigned long>(s), MPFR_RNDN);
    CHECK(abs(zeta_value(s, P256) - ref).log2_abs() < -250);
  }
  CHECK_THROWS_AS(zeta_value(1, P256), std::domain_error);
}

TEST_CASE("gamma ratio feeding gamma_2") {
  auto g = [](long n, long d) { return gamma(BigFloat(mpq_class(n, d), 300), P256); };
  BigFloat r = g(5, 4) * g(5, 4) * g(1, 2) / (g(3, 4) * g(3, 4) * g(3, 2));
  BigFloat g2 = gamma_N(2, P256);
  CHECK(abs(r * 4 - g2).log2_abs() < -248);
  CHECK(err(g2, "4.37687923045295327767353988140892908651874545") < 1e-43);
  CHECK(err(gamma_N(3, P256), "2.58105653984046446188280245891011290552029858") < 1e-43);
  CHECK(err(gamma_N(8, P256), "1.41589165508695804741785539661224043636853931") < 1e-43);
}

TEST_CASE("binomial identity 2F1(a,b;b;z) = (1-z)^-a") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> U(-0.6, 0.6);
  for (int i = 0; i < 20; ++i) {
    BigComplex a = bc(U(rng) * 3, U(rng));
    BigComplex b = bc(U(rng) * 2 + 2, U(rng));
    BigComplex z = bc(U(rng) * 1.0, U(rng) * 1.0);
    BigComplex lhs = hyp2f1(a, b, b, z, P256);
    BigComplex rhs = exp(-(a * log(BigFloat(1L, 300) - z)));
    CHECK(abs(lhs - rhs).log2_abs() < -240);
  }
}

TEST_CASE("generic complex parameters against reference") {
  BigComplex v = hyp2f1(bc(0.3, 0.1), bc(0.7, 0), bc(1.2, 0), bc(0.6, -0.3), P256);
  CHECK(err(v, "1.1654944226966423876329848168356152059318759", "-0.0682884791467420582915978397144718437471652614") <
        1e-42);
}

TEST_CASE("Jacobi theta formula at q = 0.05") {
  mpfr_prec_t p = 300;
  BigFloat q("0.05", p);
  BigFloat theta(1L, p), prod(1L, p);
  for (long n = 1; n < 40; ++n) {
    BigFloat qn(p);
    mpfr_pow_ui(qn.get(), q.get(), static_cast<unsigned long>(n * n), MPFR_RNDN);
    theta += qn * 2;
  }
  for (long n = 1; n < 200; ++n) {
    BigFloat a(p), b(p);
    mpfr_pow_ui(a.get(), q.get(), static_cast<unsigned long>(2 * n), MPFR_RNDN);
    mpfr_pow_ui(b.get(), q.get(), static_cast<unsigned long>(2 * n - 1), MPFR_RNDN);
    prod *= (a + 1) / (b + 1);
  }
  BigFloat p2 = prod * prod, p4 = p2 * p2;
  BigFloat lam = q * 16 * p4 * p4;
  CHECK(err(lam, "0.551870345466968911737279318116923982608089985") < 1e-40);
  BigComplex half = rat_c(1, 2);
  BigComplex v = hyp2f1(half, half, BigComplex(BigFloat(1L, p)), BigComplex(lam), P256);
  CHECK(abs(v.re - theta * theta).to_double() < 1e-20);
  CHECK(abs(v.re - theta * theta).log2_abs() < -240);
}

TEST_CASE("logarithmic expansion near 1 agrees with the direct series") {
  for (auto a : {rat_c(1, 2), bc(0.3, 0.2), rat_c(3, 4)}) {
    BigComplex c = a * BigFloat(2L, 300);
    for (auto z : {bc(0.72, 0.05), bc(0.8, -0.2), bc(0.66, 0.3)}) {
      // |1-z| < |z| selects the logarithmic branch; the direct series is forced via b != a.
      BigComplex v1 = hyp2f1(a, a, c, z, P256);
      BigComplex b = a;
      b.re += BigFloat(1e-60, 300);
      BigComplex v2 = hyp2f1(a, b, c, z, P256);
      CHECK(abs(v1 - v2).log2_abs() < -190);
    }
  }
  BigComplex a = rat_c(3, 4);
  BigComplex z(BigFloat(1L, 300) - BigFloat("1e-6", 300));
  BigComplex v = hyp2f1(a, a, a * BigFloat(2L, 300), z, P256);
  CHECK(err(v, "8.75388330422075204216945592825283360362712826", "0") < 1e-42);
  BigComplex h = rat_c(1, 2);
  BigComplex vh = hyp2f1(h, h, BigComplex(BigFloat(1L, 300)), z, P256);
  // K(m) asymptotics: (2/pi) K ~ (1/pi) log(16/(1-m))
  BigFloat approx = log(BigFloat(16L, 300) / BigFloat("1e-6", 300)) / const_pi(300);
  CHECK(abs(vh.re - approx).to_double() < 1e-5);
}

TEST_CASE("(a,a;2a) family across the plane") {
  struct Ref {
    long n, d;
    double wr, wi;
    const char* re;
    const char* im;
  };
  const Ref refs[] = {
      {3, 4, 0, 0.95, "0.858491067558110759206207990999511707538440113", "0.264391441164009444827967412686144801455181962"},
      {3, 4, 1.5, 0.5, "0.897672661008107487099398857836043692069749115", "0.988078116385386003201424175915582814668680661"},
      {3, 4, 3, 0, "0.250674156799414874602327510769382507501940389", "0.988649059146752061788463470184724552030108192"},
      {3, 4, -2, 0, "0.640428546973740813474942771937272353490788885", "0"},
      {3, 4, 0.5, -0.9, "0.940487205577055784543916569544952723249368161", "-0.398364379041325915415011607446684098837952685"},
      {3, 4, -0.7, 0.8, "0.77207539868958510239697848190708991741156583", "0.140889008738757246253871546222911840020032018"},
      {3, 4, 0.9, 0.4, "1.30089769861183098459677752340264964549272278", "0.596853599023647817613488156056366376555249093"},
      {1, 4, 0, 0.95, "0.958396346588504802099823299577750408774821565", "0.0937662744526832694383857929855287324033372399"},
      {1, 4, 1.5, 0.5, "1.03141315771045657989601792209310566539709983", "0.302808354970640140433657021636376516956916629"},
      {1, 4, 3, 0, "0.881669558407350451930441821553125749021151678", "0.391235469643088884759678124857810003217181157"},
      {1, 4, -2, 0, "0.866252071548611619038914817380650765378302705", "0"},
      {1, 4, 0.5, -0.9, "0.993389419218117112054852233847431285563730634", "-0.133196974680515485193119488284100040419480662"},
      {1, 4, -0.7, 0.8, "0.921662501777113338448630471056050619409918971", "0.0533911114379323656007063680576951821747006518"},
      {2, 5, 1.5, 0.5, "1.02611659734619283338498608618923423333465421", "0.497951895923536007459627906534128465804542872"},
      {2, 5, 3, 0, "0.752956543976211995578237369470831997262696227", "0.612829873748205958051117385237727383212091818"},
      {2, 5, -0.7, 0.8, "0.875594606918580088362781022900648227345061511", "0.0826532719911014962600493673014453346987929802"},
      {2, 5, 0.9, 0.4, "1.17223725036640276303556485657429088824613922", "0.285337583239384664354869049156189022108826141"},
  };
  for (const auto& r : refs) {
    CAPTURE(r.wr);
    CAPTURE(r.wi);
    auto fam = aa_family(mpq_class(r.n, r.d), 288);
    BigComplex w = bc(r.wr, r.wi);
    CHECK(err(fam->eval(w), r.re, r.im) < 1e-42);
  }
  // unit circle point at angle pi/3
  auto fam = aa_family(mpq_class(3, 4), 288);
  BigFloat pi = const_pi(300);
  CHECK(err(fam->eval(expi(pi / 3)), "0.953068693825728260803914372787301840748775896",
            "0.394773978855827520985926170232168556943466926") < 1e-42);
  CHECK_THROWS_AS(fam->eval(bc(1, 0)), std::domain_error);
}

TEST_CASE("family regions agree on overlaps") {
  auto fam = aa_family(mpq_class(5, 8), 200);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> U(-2.5, 2.5);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    BigComplex w = bc(U(rng), U(rng));
    if (abs(w - BigFloat(1L, 300)) < 1e-3) continue;
    BigComplex v = fam->eval(w);
    CHECK(v.is_finite());
    if (abs(w) < 0.85 && abs(BigFloat(1L, 300) - w) > 0.3) {
      BigComplex a = rat_c(5, 8);
      BigComplex d = hyp2f1(a, a + BigFloat(1e-70, 300), a * BigFloat(2L, 300), w, PrecisionCtx(200));
      CHECK(abs(v - d).log2_abs() < -180);
      ++checked;
    }
  }
  CHECK(checked > 10);
  // derivative through the log variable: ell = log(1-w)
  BigComplex w = bc(0.999, 0.0005);
  BigComplex ell = log(BigFloat(1L, 300) - w);
  CHECK(abs(fam->eval(w) - fam->eval(w, ell)).log2_abs() < -180);
  // deep near 1, only reachable through ell
  BigComplex deep(BigFloat(-5000L, 300), BigFloat(-1.0, 300));
  BigComplex vd = fam->eval(bc(1, 0), deep);
  BigFloat expect = fam->log_prefactor() * 5000;
  CHECK(abs(vd.re / expect - 1).to_double() < 1e-2);
}

TEST_CASE("Gauss contiguous relation on random parameters") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int i = 0; i < 15; ++i) {
    BigComplex a = bc(U(rng) * 2, U(rng) * 0.5), b = bc(U(rng) * 2, U(rng) * 0.5);
    BigComplex c = bc(U(rng) + 2.5, U(rng) * 0.5);
    BigComplex z = bc(U(rng) * 0.6, U(rng) * 0.6);
    BigComplex one(BigFloat(1L, 300));
    BigComplex fm = hyp2f1(a - one, b, c, z, P256);
    BigComplex f0 = hyp2f1(a, b, c, z, P256);
    BigComplex fp = hyp2f1(a + one, b, c, z, P256);
    // (c-a) F(a-1) + (2a - c + (b-a) z) F(a) + a (z-1) F(a+1) = 0
    BigComplex res = (c - a) * fm + (a * BigFloat(2L, 300) - c + (b - a) * z) * f0 + a * (z - one) * fp;
    CHECK(abs(res).log2_abs() < -240);
  }
}

TEST_CASE("solutions satisfy the G equation") {
  for (long N : {2L, 3L, 7L}) {
    mpfr_prec_t p = 300;
    BigFloat one(1L, p);
    BigFloat invN = one / N;
    for (auto z : {bc(0.3, 0.2), bc(-0.5, 0.1), bc(0.1, -0.6)}) {
      for (int which = 0; which < 2; ++which) {
        BigComplex a = which == 0 ? BigComplex(BigFloat(mpq_class(N + 1, 2 * N), p))
                                  : BigComplex(BigFloat(mpq_class(N - 1, 2 * N), p));
        BigComplex c = a * BigFloat(2L, p);
        BigComplex A1 = a + one, A2 = a + BigFloat(2L, p);
        BigComplex F = hyp2f1(a, a, c, z, P256);
        BigComplex F1 = a * a / c * hyp2f1(A1, A1, c + one, z, P256);
        BigComplex F2 = a * a * A1 * A1 / (c * (c + one)) * hyp2f1(A2, A2, c + BigFloat(2L, p), z, P256);
        BigComplex omz = one - z;
        // y = g F with g = sqrt(1-z) z^{1/N} (first) or sqrt(1-z) (second)
        BigComplex e = which == 0 ? BigComplex(invN) / z : BigComplex(p);
        BigComplex h = e - inv(omz) / BigFloat(2L, p);  // g'/g
        BigComplex dh = (which == 0 ? -(BigComplex(invN) / (z * z)) : BigComplex(p)) - inv(omz * omz) / BigFloat(2L, p);
        BigComplex g = sqrt(omz) * (which == 0 ? pow(z, invN) : BigComplex(one));
        BigComplex y = g * F;
        BigComplex y1 = g * (h * F + F1);
        BigComplex y2 = g * ((h * h + dh) * F + h * F1 * BigFloat(2L, p) + F2);
        BigComplex zm1 = z - one;
        BigComplex res = z * zm1 * zm1 * y2 + (one - invN) * zm1 * zm1 * y1 +
                         (BigComplex(BigFloat(0.25, p)) + zm1 / BigFloat(4 * N * N, p)) * y;
        CHECK(abs(res).to_double() < 1e-25);
        CHECK(abs(res).log2_abs() < -230);
      }
    }
  }
}

TEST_CASE("gamma_N asymptotics") {
  BigFloat z3 = zeta_value(3, P256), z5 = zeta_value(5, P256);
  for (long N : {10L, 100L, 1000L}) {
    BigFloat g = gamma_N(N, P256);
    BigFloat base = pow(BigFloat(16L, 300), BigFloat(1L, 300) / N);
    BigFloat n3 = BigFloat(N, 300) * N * N;
    BigFloat n5 = n3 * N * N, n6 = n5 * N;
    BigFloat defect = g - base * (1 + z3 / (n3 * 2) + z5 * 3 / (n5 * 8));
    CHECK(defect.sign() > 0);
    CHECK(defect < base * 10 / n6);
    CHECK((g - gamma_N_asymptotic(N, P256) - defect).log2_abs() < -240);
    // log gamma_N = log 16 / N + sum_k (4^k - 1) / (2^{2k-1} (2k+1)) zeta(2k+1) / N^{2k+1}
    BigFloat series = log(BigFloat(16L, 300)) / N;
    for (long k = 1; k <= 3; ++k) {
      BigFloat c = BigFloat(mpq_class((1L << (2 * k)) - 1, (1L << (2 * k - 1)) * (2 * k + 1)), 300);
      BigFloat nk(1L, 300);
      for (long j = 0; j < 2 * k + 1; ++j) nk *= N;
      series += c * zeta_value(2 * k + 1, P256) / nk;
    }
    BigFloat n9(1L, 300);
    for (int j = 0; j < 9; ++j) n9 *= N;
    BigFloat next = BigFloat(mpq_class(255, 128 * 9), 300) * zeta_value(9, P256) / n9;
    BigFloat diff = log(g) - series;
    CHECK(diff.sign() > 0);
    CHECK(diff < next * 2);
  }
  for (long N = 2; N <= 60; ++N) {
    CHECK(gamma_N(N, P256) > pow(BigFloat(16L, 300), BigFloat(1L, 300) / N));
  }
}

TEST_CASE("s_N and psi_N") {
  BigComplex z = bc(1e-30, 2e-30);
  BigComplex s = s_N(z, 3, P256);
  CHECK(abs(s / pow(z, BigFloat(1L, 300) / 3) - BigFloat(1L, 300)).to_double() < 1e-28);
  CHECK(err(s_N(bc(0.25, 0), 2, P256), "0.536267616750132183034863492746771727622959833", "0") < 1e-42);
  CHECK_THROWS_AS(s_N(bc(1.2, 0), 2, P256), std::domain_error);

  for (long N : {2L, 5L}) {
    CHECK(psi_N(bc(0, 0), N, P256).is_zero());
    BigFloat h("1e-25", 300);
    BigComplex d = (psi_N(BigComplex(h), N, P256) - psi_N(BigComplex(-h), N, P256)) / (h * 2);
    BigFloat inv_g = BigFloat(1L, 300) / gamma_N(N, P256);
    CHECK(abs(d - BigComplex(inv_g)).to_double() < 1e-20);
    BigComplex x = bc(0.3, 0.25);
    BigFloat pi = const_pi(300);
    for (long k = 1; k < N; ++k) {
      BigComplex zeta = expi(pi * 2 * k / N);
      CHECK(abs(psi_N(zeta * x, N, P256) - zeta * psi_N(x, N, P256)).log2_abs() < -240);
    }
  }
}

TEST_CASE("two-precision self-consistency") {
  PrecisionCtx lo(256), hi(512);
  BigComplex x = bc(0.37, -1.3, 600);
  CHECK(abs(gamma(x, lo) - gamma(x, hi)).log2_abs() < -245);
  CHECK(abs(digamma(x, lo) - digamma(x, hi)).log2_abs() < -245);
  CHECK(abs(zeta_value(7, lo) - zeta_value(7, hi)).log2_abs() < -250);
  CHECK(abs(gamma_N(4, lo) - gamma_N(4, hi)).log2_abs() < -250);
  for (auto w : {bc(0.95, 0.2, 600), bc(-1.1, 0.4, 600), bc(2.0, -0.7, 600)}) {
    CHECK(abs(s_ratio(w, 3, lo) - s_ratio(w, 3, hi)).log2_abs() < -245);
  }
}

TEST_CASE("unsupported configurations are refused") {
  CHECK_THROWS_AS(hyp2f1(bc(0.5, 0), bc(0.5, 0), bc(-2, 0), bc(0.1, 0), P256), std::domain_error);
  CHECK_THROWS_AS(hyp2f1(bc(0.3, 0), bc(0.6, 0), bc(1.7, 0), bc(0.2, 0.95), P256), std::domain_error);
  CHECK_THROWS_AS(PrecisionCtx(32), std::invalid_argument);
}
