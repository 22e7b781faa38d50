#include "udc/sl2.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace udc {

std::string Mat2Z::to_string() const {
  return "[[" + a.get_str() + "," + b.get_str() + "],[" + c.get_str() + "," + d.get_str() + "]]";
}

Mat2Z operator*(const Mat2Z& x, const Mat2Z& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Mat2Z Word::evaluate() const {
  Mat2Z m;
  for (const auto& s : syllables) {
    if (s.gen == Gen::T) {
      m = m * Mat2Z::T_pow(s.exp);
    } else {
      long e = ((s.exp % 4) + 4) % 4;
      for (long i = 0; i < e; ++i) m = m * Mat2Z::S();
    }
  }
  return sign < 0 ? -m : m;
}

std::vector<std::string> Word::tokens() const {
  std::vector<std::string> out;
  for (const auto& s : syllables) {
    long n = std::labs(s.exp);
    const char* tok = s.gen == Gen::S ? "S" : (s.exp > 0 ? "T" : "T^-1");
    if (s.gen == Gen::S) n = ((s.exp % 4) + 4) % 4;
    for (long i = 0; i < n; ++i) out.emplace_back(tok);
  }
  return out;
}

Word word_decompose(const Mat2Z& M) {
  if (M.det() != 1) throw std::invalid_argument("word_decompose: determinant must be 1");
  mpz_class a = M.a, b = M.b, c = M.c, d = M.d;
  // Right multipliers R_1 R_2 ... with M R_1 R_2 ... = +-T^m.
  std::vector<Syllable> right;
  while (c != 0) {
    mpz_class cc = abs(c), dd = sgn(c) < 0 ? mpz_class(-d) : d;
    mpz_class k;
    mpz_class num = 2 * dd + cc, den = 2 * cc;
    mpz_fdiv_q(k.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    k = -k;
    if (k != 0) {
      if (!k.fits_slong_p()) throw std::overflow_error("word_decompose: exponent too large");
      b += k * a;
      d += k * c;
      right.push_back({Gen::T, k.get_si()});
    }
    mpz_class na = b, nb = -a, nc = d, nd = -c;
    a = na;
    b = nb;
    c = nc;
    d = nd;
    right.push_back({Gen::S, 1});
  }
  Word w;
  w.sign = sgn(a) > 0 ? 1 : -1;
  mpz_class m = b * a;
  if (!m.fits_slong_p()) throw std::overflow_error("word_decompose: exponent too large");
  if (m != 0) w.syllables.push_back({Gen::T, m.get_si()});
  for (auto it = right.rbegin(); it != right.rend(); ++it) {
    if (it->gen == Gen::T) {
      w.syllables.push_back({Gen::T, -it->exp});
    } else {
      // S^{-1} = -S
      w.syllables.push_back({Gen::S, 1});
      w.sign = -w.sign;
    }
  }
  return w;
}

namespace {

bool is_permutation(const std::vector<int>& p) {
  std::vector<char> seen(p.size(), 0);
  for (int x : p) {
    if (x < 0 || x >= static_cast<int>(p.size()) || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

std::vector<int> compose(const std::vector<int>& first, const std::vector<int>& then) {
  std::vector<int> r(first.size());
  for (size_t i = 0; i < first.size(); ++i) r[i] = then[first[i]];
  return r;
}

}  // namespace

CosetAction CosetAction::from_perms(std::vector<int> S, std::vector<int> T) {
  if (S.empty() || S.size() != T.size()) throw std::invalid_argument("coset action: permutation sizes differ");
  if (!is_permutation(S) || !is_permutation(T)) throw std::invalid_argument("coset action: not a permutation");
  std::vector<int> S2 = compose(S, S);
  std::vector<int> ST = compose(S, T);
  std::vector<int> ST3 = compose(compose(ST, ST), ST);
  std::vector<int> id(S.size());
  std::iota(id.begin(), id.end(), 0);
  if (compose(S2, S2) != id) throw std::invalid_argument("coset action: S^4 != 1");
  if (ST3 != S2) throw std::invalid_argument("coset action: (ST)^3 != S^2");

  CosetAction G;
  G.degree = static_cast<int>(S.size());
  G.perm_S = std::move(S);
  G.perm_T = std::move(T);
  G.contains_minus_identity = S2[0] == 0;
  G.reps.assign(G.degree, Mat2Z());
  std::vector<char> seen(G.degree, 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  std::vector<int> Tinv(G.degree);
  for (int i = 0; i < G.degree; ++i) Tinv[G.perm_T[i]] = i;
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    struct Step {
      int to;
      Mat2Z m;
    };
    Step steps[3] = {{G.perm_S[i], Mat2Z::S()}, {G.perm_T[i], Mat2Z::T()}, {Tinv[i], Mat2Z::T_pow(-1)}};
    for (auto& s : steps) {
      if (!seen[s.to]) {
        seen[s.to] = 1;
        G.reps[s.to] = G.reps[i] * s.m;
        queue.push_back(s.to);
      }
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw std::invalid_argument("coset action: not transitive");
  return G;
}

CosetAction CosetAction::enumerate(const std::function<bool(const Mat2Z&, const Mat2Z&)>& same_coset,
                                   long max_degree) {
  std::vector<Mat2Z> reps{Mat2Z()};
  std::vector<int> S, T;
  for (size_t i = 0; i < reps.size(); ++i) {
    for (int g = 0; g < 2; ++g) {
      Mat2Z y = reps[i] * (g == 0 ? Mat2Z::S() : Mat2Z::T());
      int found = -1;
      for (size_t j = 0; j < reps.size(); ++j) {
        if (same_coset(y, reps[j])) {
          found = static_cast<int>(j);
          break;
        }
      }
      if (found < 0) {
        if (static_cast<long>(reps.size()) >= max_degree) {
          throw std::logic_error("coset enumeration exceeded its certified index bound");
        }
        found = static_cast<int>(reps.size());
        reps.push_back(y);
      }
      (g == 0 ? S : T).push_back(found);
    }
  }
  CosetAction G = from_perms(S, T);
  G.reps = std::move(reps);
  return G;
}

CosetAction CosetAction::enumerate_keyed(const std::function<std::uint64_t(const Mat2Z&)>& key, long max_degree) {
  std::vector<Mat2Z> reps{Mat2Z()};
  std::unordered_map<std::uint64_t, int> index{{key(Mat2Z()), 0}};
  std::vector<int> S, T;
  for (size_t i = 0; i < reps.size(); ++i) {
    for (int g = 0; g < 2; ++g) {
      Mat2Z y = reps[i] * (g == 0 ? Mat2Z::S() : Mat2Z::T());
      auto [it, fresh] = index.emplace(key(y), static_cast<int>(reps.size()));
      if (fresh) {
        if (static_cast<long>(reps.size()) >= max_degree) {
          throw std::logic_error("coset enumeration exceeded its certified index bound");
        }
        reps.push_back(y);
      }
      (g == 0 ? S : T).push_back(it->second);
    }
  }
  CosetAction G = from_perms(S, T);
  G.reps = std::move(reps);
  return G;
}

std::vector<int> CosetAction::perm_minus() const { return compose(perm_S, perm_S); }

int CosetAction::act(int point, const Word& w) const {
  if (w.sign < 0) point = perm_S[perm_S[point]];
  for (const auto& s : w.syllables) {
    if (s.gen == Gen::S) {
      long e = ((s.exp % 4) + 4) % 4;
      for (long i = 0; i < e; ++i) point = perm_S[point];
    } else {
      long len = 1;
      for (int q = perm_T[point]; q != point; q = perm_T[q]) ++len;
      long e = ((s.exp % len) + len) % len;
      for (long i = 0; i < e; ++i) point = perm_T[point];
    }
  }
  return point;
}

bool contains(const CosetAction& G, const Mat2Z& M) { return G.act(0, word_decompose(M)) == 0; }

bool contains_pm(const CosetAction& G, const Mat2Z& M) { return contains(G, M) || contains(G, -M); }

std::string CuspData::rep_string() const {
  if (den == 0) return "oo";
  if (den == 1) return num.get_str();
  return num.get_str() + "/" + den.get_str();
}

std::vector<CuspData> cusp_data(const CosetAction& G) {
  std::vector<int> minus = G.perm_minus();
  std::vector<char> seen(G.degree, 0);
  std::vector<CuspData> out;
  for (int i = 0; i < G.degree; ++i) {
    if (seen[i]) continue;
    std::vector<int> cycle{i};
    for (int q = G.perm_T[i]; q != i; q = G.perm_T[q]) cycle.push_back(q);
    for (int q : cycle) seen[q] = 1;
    long len = static_cast<long>(cycle.size());
    CuspData cd;
    int j = minus[i];
    if (j == i) {
      cd.width = len;
      cd.orbit_size = len;
    } else if (std::find(cycle.begin(), cycle.end(), j) != cycle.end()) {
      cd.width = len / 2;  // irregular cusp
      cd.orbit_size = len;
    } else {
      cd.width = len;
      cd.orbit_size = 2 * len;
      for (int q = j; !seen[q]; q = G.perm_T[q]) seen[q] = 1;
    }
    const Mat2Z& r = G.reps[i];
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r.a.get_mpz_t(), r.c.get_mpz_t());
    cd.num = r.a / g;
    cd.den = r.c / g;
    if (cd.den < 0 || (cd.den == 0 && cd.num < 0)) {
      cd.num = -cd.num;
      cd.den = -cd.den;
    }
    if (cd.den == 0) cd.num = 1;
    out.push_back(cd);
  }
  return out;
}

long wohlfahrt_level(const CosetAction& G) {
  long L = 1;
  for (const auto& c : cusp_data(G)) L = std::lcm(L, c.width);
  return L;
}

CosetAction full_group() { return CosetAction::from_perms({0}, {0}); }

namespace {

long mod(const mpz_class& x, long N) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(N));
  return r.get_si();
}

void check_level(long N) {
  if (N < 1) throw std::invalid_argument("level must be a positive integer");
  if (N > 4096) throw std::invalid_argument("level too large for coset enumeration");
}

std::vector<long> units_mod(long N) {
  std::vector<long> u;
  for (long x = 1; x <= N; ++x) {
    if (std::gcd(x, N) == 1) u.push_back(x % N);
  }
  return u;
}

// Canonical point of P^1(Z/N) for the row (x : y).
std::uint64_t projective_key(long x, long y, long N, const std::vector<long>& units) {
  std::uint64_t best = UINT64_MAX;
  for (long u : units) {
    std::uint64_t k = (static_cast<std::uint64_t>(u * x % N) << 32) | static_cast<std::uint64_t>(u * y % N);
    best = std::min(best, k);
  }
  return best;
}

long sl2_order_mod(long N) {
  long n = N * N * N;
  long m = N;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      n = n / (p * p) * (p * p - 1);
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) n = n / (m * m) * (m * m - 1);
  return n;
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

}  // namespace

CosetAction principal_congruence(long N) {
  check_level(N);
  if (N > 64) throw std::invalid_argument("principal_congruence: level too large for enumeration");
  if (N == 1) return full_group();
  auto key = [N](const Mat2Z& M) {
    std::uint64_t k = 0;
    for (const mpz_class* e : {&M.a, &M.b, &M.c, &M.d}) k = k * 65536 + static_cast<std::uint64_t>(mod(*e, N));
    return k;
  };
  return CosetAction::enumerate_keyed(key, sl2_order_mod(N));
}

CosetAction gamma0(long N) {
  check_level(N);
  auto units = units_mod(N);
  return CosetAction::enumerate_keyed(
      [N, units](const Mat2Z& M) { return projective_key(mod(M.c, N), mod(M.d, N), N, units); }, N * N + 1);
}

CosetAction gamma_upper0(long N) {
  check_level(N);
  auto units = units_mod(N);
  return CosetAction::enumerate_keyed(
      [N, units](const Mat2Z& M) { return projective_key(mod(M.a, N), mod(M.b, N), N, units); }, N * N + 1);
}

std::vector<Mat2Z> schreier_generators(const CosetAction& G) {
  std::vector<Mat2Z> gens;
  for (int i = 0; i < G.degree; ++i) {
    for (int g = 0; g < 2; ++g) {
      int j = g == 0 ? G.perm_S[i] : G.perm_T[i];
      Mat2Z h = G.reps[i] * (g == 0 ? Mat2Z::S() : Mat2Z::T()) * G.reps[j].inverse();
      if (!(h == Mat2Z()) && std::find(gens.begin(), gens.end(), h) == gens.end()) gens.push_back(h);
    }
  }
  return gens;
}

CosetAction conj_A_intersect(const CosetAction& G, long p) {
  if (!is_prime(p)) throw std::invalid_argument("conj_A_intersect: p must be prime");
  mpz_class P(p);
  auto member = [&](const Mat2Z& M) {
    if (mod(M.c, p) != 0) return false;
    Mat2Z conj{M.a, M.b * P, M.c / P, M.d};  // A M A^{-1}
    return contains(G, conj);
  };
  auto same = [&](const Mat2Z& x, const Mat2Z& y) { return member(x * y.inverse()); };
  return CosetAction::enumerate(same, static_cast<long>(G.degree) * (p + 1));
}

CosetAction intersect(const CosetAction& G, const CosetAction& H) {
  std::unordered_map<long, int> index;
  std::vector<std::pair<int, int>> pts{{0, 0}};
  index[0] = 0;
  std::vector<int> S, T;
  auto id_of = [&](int g, int h) {
    long k = static_cast<long>(g) * H.degree + h;
    auto [it, fresh] = index.emplace(k, static_cast<int>(pts.size()));
    if (fresh) pts.push_back({g, h});
    return it->second;
  };
  for (size_t i = 0; i < pts.size(); ++i) {
    auto [g, h] = pts[i];
    S.push_back(id_of(G.perm_S[g], H.perm_S[h]));
    T.push_back(id_of(G.perm_T[g], H.perm_T[h]));
  }
  return CosetAction::from_perms(S, T);
}

CosetAction random_subgroup(std::mt19937_64& rng, int max_degree) {
  if (max_degree < 1) throw std::invalid_argument("random_subgroup: degree must be positive");
  std::uniform_int_distribution<int> deg(1, max_degree);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    int n = deg(rng);
    std::vector<int> pts(n);
    std::iota(pts.begin(), pts.end(), 0);
    std::shuffle(pts.begin(), pts.end(), rng);
    std::vector<int> sigma(n), rho(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::iota(rho.begin(), rho.end(), 0);
    int pairs = std::uniform_int_distribution<int>(0, n / 2)(rng);
    for (int k = 0; k < pairs; ++k) {
      sigma[pts[2 * k]] = pts[2 * k + 1];
      sigma[pts[2 * k + 1]] = pts[2 * k];
    }
    std::shuffle(pts.begin(), pts.end(), rng);
    int triples = std::uniform_int_distribution<int>(0, n / 3)(rng);
    for (int k = 0; k < triples; ++k) {
      rho[pts[3 * k]] = pts[3 * k + 1];
      rho[pts[3 * k + 1]] = pts[3 * k + 2];
      rho[pts[3 * k + 2]] = pts[3 * k];
    }
    // i.S = sigma(i), i.(ST) = rho(i), hence i.T = rho(sigma(i))
    std::vector<int> T(n);
    for (int i = 0; i < n; ++i) T[i] = rho[sigma[i]];
    try {
      return CosetAction::from_perms(sigma, T);
    } catch (const std::invalid_argument&) {
      continue;  // not transitive
    }
  }
  throw std::runtime_error("random_subgroup: no transitive action found");
}

IndexReport index_gamma2_gammaN(long N, bool enumerate) {
  if (N < 2 || N % 2 != 0) throw std::invalid_argument("index_gamma2_gammaN: N must be even and at least 2");
  IndexReport rep;
  mpz_class n = mpz_class(N) * N * N;
  long m = N;
  for (long p = 2; p <= m; ++p) {
    if (m % p == 0) {
      n = n / (p * p) * (p * p - 1);
      while (m % p == 0) m /= p;
    }
  }
  rep.formula = n / 6;
  if (enumerate && N <= 24) {
    long big = principal_congruence(N).degree;
    long small = principal_congruence(2).degree;
    rep.enumerated = mpz_class(big / small);
  }
  double lb = static_cast<double>(N) * N * N / (2 * M_PI * M_PI);
  rep.lower_bound = std::nextafter(lb, 0.0);
  return rep;
}

}  // namespace udc
