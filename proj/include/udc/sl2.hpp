#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace udc {

struct Mat2Z {
  mpz_class a{1}, b{0}, c{0}, d{1};

  static Mat2Z identity() { return {}; }
  static Mat2Z S() { return {0, -1, 1, 0}; }
  static Mat2Z T() { return {1, 1, 0, 1}; }
  static Mat2Z T_pow(const mpz_class& k) { return {1, k, 0, 1}; }

  mpz_class det() const { return a * d - b * c; }
  Mat2Z inverse() const { return {d, -b, -c, a}; }  // det 1 assumed
  Mat2Z operator-() const { return {-a, -b, -c, -d}; }
  bool operator==(const Mat2Z& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
  std::string to_string() const;
};

Mat2Z operator*(const Mat2Z& x, const Mat2Z& y);

enum class Gen { S, T };

struct Syllable {
  Gen gen;
  long exp;
};

struct Word {
  std::vector<Syllable> syllables;
  int sign = 1;  // product of syllables = sign * M

  Mat2Z evaluate() const;
  // Letters from {S, T, T^-1}, repeated out.
  std::vector<std::string> tokens() const;
};

Word word_decompose(const Mat2Z& M);

// Transitive right action of SL2(Z) on the cosets G\SL2(Z), basepoint 0 = G.
struct CosetAction {
  int degree = 1;
  std::vector<int> perm_S, perm_T;
  std::vector<Mat2Z> reps;  // reps[i] maps the basepoint to coset i
  bool contains_minus_identity = true;

  // Checks the relations S^4 = 1 and (ST)^3 = S^2 and transitivity; fills reps.
  static CosetAction from_perms(std::vector<int> S, std::vector<int> T);
  // Breadth-first coset enumeration. same_coset(x, y) decides Gx = Gy.
  static CosetAction enumerate(const std::function<bool(const Mat2Z&, const Mat2Z&)>& same_coset, long max_degree);
  // Same, with a canonical key per coset.
  static CosetAction enumerate_keyed(const std::function<std::uint64_t(const Mat2Z&)>& key, long max_degree);

  int act(int point, const Word& w) const;
  std::vector<int> perm_minus() const;
};

bool contains(const CosetAction& G, const Mat2Z& M);
// M in {+-1} * G.
bool contains_pm(const CosetAction& G, const Mat2Z& M);

struct CuspData {
  mpz_class num, den;  // representative num/den; den = 0 for infinity
  long width = 1;
  long orbit_size = 1;  // cosets in the orbit of <T, -I>
  std::string rep_string() const;
};

std::vector<CuspData> cusp_data(const CosetAction& G);
long wohlfahrt_level(const CosetAction& G);

CosetAction full_group();
CosetAction principal_congruence(long N);
CosetAction gamma0(long N);
CosetAction gamma_upper0(long N);

// Schreier generators of G from the coset action.
std::vector<Mat2Z> schreier_generators(const CosetAction& G);

// A^{-1} G A intersected with SL2(Z), A = diag(p, 1).
CosetAction conj_A_intersect(const CosetAction& G, long p);
CosetAction intersect(const CosetAction& G, const CosetAction& H);

// Stabilizer of a point in a random transitive action of PSL2(Z) of degree
// at most max_degree; always contains -I.
CosetAction random_subgroup(std::mt19937_64& rng, int max_degree);

struct IndexReport {
  mpz_class formula;                    // N^3 prod(1 - p^-2) / 6
  std::optional<mpz_class> enumerated;  // |Gamma(2) \ Gamma(N)| by enumeration, N <= 24
  double lower_bound;                   // N^3 / (12 zeta(2))
};

IndexReport index_gamma2_gammaN(long N, bool enumerate = true);

}  // namespace udc
