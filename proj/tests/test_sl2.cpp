#include "udc/sl2.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace udc;

namespace {

Mat2Z random_product(std::mt19937_64& rng, int len) {
  Mat2Z m;
  std::uniform_int_distribution<int> pick(0, 2);
  for (int i = 0; i < len; ++i) {
    int g = pick(rng);
    m = m * (g == 0 ? Mat2Z::S() : g == 1 ? Mat2Z::T() : Mat2Z::T_pow(-1));
  }
  return m;
}

bool congruent_pm_identity(const Mat2Z& M, long N, bool allow_minus) {
  auto md = [N](const mpz_class& x) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), N);
    return r.get_si();
  };
  bool plus = md(M.a) == 1 % N && md(M.b) == 0 && md(M.c) == 0 && md(M.d) == 1 % N;
  bool minus = md(M.a) == (N - 1) % N && md(M.b) == 0 && md(M.c) == 0 && md(M.d) == (N - 1) % N;
  return plus || (allow_minus && minus);
}

}  // namespace

TEST_CASE("word decomposition") {
  Word u = word_decompose(Mat2Z::T());
  CHECK(u.tokens() == std::vector<std::string>{"T"});
  CHECK(u.sign == 1);
  Word s = word_decompose(Mat2Z::S());
  CHECK(s.tokens() == std::vector<std::string>{"S"});
  CHECK(s.sign == 1);
  CHECK(word_decompose(-Mat2Z::identity()).sign == -1);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    Mat2Z M = random_product(rng, 20);
    Word w = word_decompose(M);
    CHECK(w.evaluate() == M);
  }
  CHECK_THROWS_AS(word_decompose(Mat2Z{2, 0, 0, 1}), std::invalid_argument);
}

TEST_CASE("membership") {
  CosetAction g2 = principal_congruence(2);
  CHECK(g2.degree == 6);
  CHECK(contains(g2, Mat2Z::T_pow(2)));
  CHECK_FALSE(contains(g2, Mat2Z::T()));
  CosetAction full = full_group();
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) CHECK(contains(full, random_product(rng, 15)));
  CHECK(contains(gamma0(5), Mat2Z{1, 0, 5, 1}));
  CHECK_FALSE(contains(gamma0(5), Mat2Z{1, 0, 1, 1}));
  CHECK(gamma0(2).degree == 3);

  for (long N = 2; N <= 12; ++N) {
    CosetAction G = principal_congruence(N);
    CHECK(G.contains_minus_identity == (N <= 2));
    for (int i = 0; i < 40; ++i) {
      Mat2Z M = random_product(rng, 12);
      CHECK(contains(G, M) == congruent_pm_identity(M, N, false));
      CHECK(contains_pm(G, M) == congruent_pm_identity(M, N, true));
    }
    // elements of the group itself
    for (int i = 0; i < 5; ++i) {
      Mat2Z M = random_product(rng, 8);
      Mat2Z h = M * Mat2Z::T_pow(N) * M.inverse();
      CHECK(contains(G, h));
    }
  }
}

TEST_CASE("cusps and levels") {
  auto widths = [](const CosetAction& G) {
    std::vector<long> w;
    for (const auto& c : cusp_data(G)) w.push_back(c.width);
    std::sort(w.begin(), w.end());
    return w;
  };
  CHECK(widths(principal_congruence(2)) == std::vector<long>{2, 2, 2});
  CHECK(widths(full_group()) == std::vector<long>{1});
  CHECK(widths(gamma0(4)) == std::vector<long>{1, 1, 4});
  CHECK(wohlfahrt_level(gamma0(4)) == 4);
  CHECK(wohlfahrt_level(full_group()) == 1);
  for (long N = 2; N <= 12; ++N) CHECK(wohlfahrt_level(principal_congruence(N)) == N);
  for (long p : {2L, 3L, 5L, 7L}) {
    CHECK(wohlfahrt_level(gamma0(p)) == p);
    CHECK(gamma0(p).degree == p + 1);
    CHECK(gamma_upper0(p).degree == p + 1);
  }
  auto c0 = cusp_data(gamma0(4));
  std::vector<std::string> reps;
  for (const auto& c : c0) reps.push_back(c.rep_string());
  CHECK(std::find(reps.begin(), reps.end(), "oo") != reps.end());
  CHECK(c0.front().rep_string() == "oo");
  CHECK(c0.front().width == 1);

  std::mt19937_64 rng(3);
  std::vector<CosetAction> groups{principal_congruence(6), principal_congruence(5), gamma0(9), gamma_upper0(6)};
  for (int i = 0; i < 30; ++i) groups.push_back(random_subgroup(rng, 24));
  for (const auto& G : groups) {
    long total = 0;
    for (const auto& c : cusp_data(G)) total += c.orbit_size;
    CHECK(total == G.degree);
  }
}

TEST_CASE("conjugation by A") {
  for (long p : {2L, 3L, 5L, 7L}) {
    CosetAction lo = gamma0(p), up = gamma_upper0(p);
    mpz_class P(p);
    for (const auto& h : schreier_generators(lo)) {
      CHECK(contains(lo, h));
      Mat2Z conj{h.a, h.b * P, h.c / P, h.d};  // A h A^{-1}
      CHECK(h.c % P == 0);
      CHECK(contains(up, conj));
    }
    for (const auto& h : schreier_generators(up)) {
      CHECK(h.b % P == 0);
      Mat2Z back{h.a, h.b / P, h.c * P, h.d};  // A^{-1} h A
      CHECK(contains(lo, back));
    }
    CosetAction H = conj_A_intersect(full_group(), p);
    CHECK(H.degree == p + 1);
    CHECK(wohlfahrt_level(H) == p);
  }
  CosetAction H = conj_A_intersect(principal_congruence(2), 3);
  CHECK(6 % wohlfahrt_level(H) == 0);
  CHECK_THROWS_AS(conj_A_intersect(full_group(), 4), std::invalid_argument);
}

TEST_CASE("level divisibility under conjugation on random subgroups") {
  std::mt19937_64 rng(20240601);
  for (int i = 0; i < 50; ++i) {
    CosetAction G = random_subgroup(rng, 24);
    CHECK(G.contains_minus_identity);
    long L = wohlfahrt_level(G);
    for (long p : {3L, 5L}) {
      CosetAction H = conj_A_intersect(G, p);
      CHECK(H.degree <= G.degree * (p + 1));
      CHECK((p * L) % wohlfahrt_level(H) == 0);
    }
  }
}

TEST_CASE("intersections") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    CosetAction G = random_subgroup(rng, 12), H = random_subgroup(rng, 12);
    CosetAction I = intersect(G, H);
    CHECK(std::lcm(wohlfahrt_level(G), wohlfahrt_level(H)) % wohlfahrt_level(I) == 0);
    CHECK(I.degree % G.degree == 0);
    CHECK(I.degree % H.degree == 0);
    Mat2Z M = random_product(rng, 10);
    CHECK(contains(I, M) == (contains(G, M) && contains(H, M)));
  }
  CosetAction g4 = intersect(gamma0(4), gamma_upper0(4));
  // conjugate to Gamma_0(16), index 16 * 3/2
  CHECK(g4.degree == 24);
}

TEST_CASE("index of Gamma(N) in Gamma(2)") {
  IndexReport r2 = index_gamma2_gammaN(2);
  CHECK(r2.formula == 1);
  IndexReport r4 = index_gamma2_gammaN(4);
  CHECK(r4.formula == 8);
  REQUIRE(r4.enumerated);
  CHECK(*r4.enumerated == 8);
  for (long N = 2; N <= 24; N += 2) {
    IndexReport r = index_gamma2_gammaN(N, N <= 16);
    CHECK(r.formula.get_d() > r.lower_bound);
    if (r.enumerated) CHECK(*r.enumerated == r.formula);
  }
  CHECK_THROWS_AS(index_gamma2_gammaN(3), std::invalid_argument);
  CHECK_THROWS_AS(principal_congruence(0), std::invalid_argument);
}

TEST_CASE("relations are validated") {
  CHECK_THROWS_AS(CosetAction::from_perms({1, 0}, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(CosetAction::from_perms({0, 1}, {0, 1}), std::invalid_argument);
  CHECK_NOTHROW(CosetAction::from_perms({0}, {0}));
}
