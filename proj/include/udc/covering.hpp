#pragma once

#include "udc/bigfloat.hpp"
#include "udc/hypergeom.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace udc {

enum class Model { UPPER_HALF_PLANE, DISK };

// Real 2x2 matrix of determinant 1. In the DISK model the matrix acts on the
// disc through x -> i(1+x)/(1-x).
struct MoebiusReal {
  BigFloat a, b, c, d;
  Model model = Model::UPPER_HALF_PLANE;

  BigComplex apply(const BigComplex& x) const;
  BigFloat det() const { return a * d - b * c; }
  MoebiusReal inverse() const;
  MoebiusReal in_model(Model m) const;
};

MoebiusReal operator*(const MoebiusReal& g, const MoebiusReal& h);
MoebiusReal moebius_pow(const MoebiusReal& g, long k);

BigComplex disc_to_half_plane(const BigComplex& x);
BigComplex half_plane_to_disc(const BigComplex& tau);

struct Generators {
  MoebiusReal t, r;            // upper half-plane model
  MoebiusReal t_disk, r_disk;  // same matrices acting on the disc
};

// t = [[1, 2cot(pi/2N)], [0, 1]], r = rotation by pi/N about i.
Generators group_generators(long N, const PrecisionCtx& ctx);
// Parabolic generator fixing the cusp zeta_N^k: r^{-k} t r^{k}.
MoebiusReal cusp_generator(long N, long k, const PrecisionCtx& ctx);

struct Horoball {
  BigComplex tangency;
  BigFloat diameter;
};

// Image in the disc of {Im tau >= D} under gamma.
Horoball horoball_image(const MoebiusReal& gamma, const BigFloat& D);

// Letter g_k^e of a reduction word; g_k = cusp_generator(N, k).
struct WordLetter {
  long gen = 0;
  long exp = 0;
  std::string token() const;
};

struct Reduction {
  BigComplex x0;
  std::vector<WordLetter> word;  // x = g_{k1}^{e1} g_{k2}^{e2} ... x0
  std::vector<std::string> tokens() const;
};

class CuspRefusal : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct CoveringEvalReport {
  BigComplex value;            // F_N(x)
  BigComplex power;            // F_N(x)^N
  BigFloat log_abs_power;      // log |F_N(x)^N|
  BigFloat log_abs_power_m1;   // log |F_N(x)^N - 1|
  std::vector<std::string> word;
  BigFloat residual;
};

class CoveringMap {
 public:
  CoveringMap(long N, const PrecisionCtx& ctx);

  long N() const { return N_; }
  const PrecisionCtx& ctx() const { return ctx_; }
  const BigFloat& gamma() const { return gamma_; }

  Reduction reduce(const BigComplex& x) const;
  bool in_domain(const BigComplex& x) const;
  CoveringEvalReport eval(const BigComplex& x) const;
  BigComplex F(const BigComplex& x) const { return eval(x).value; }
  // G_N(x) = F_N(x^{1/N})^N, principal root.
  BigComplex G(const BigComplex& x) const;
  // Local inverse of F_N at 0, continued to the slit plane z^N not in [1, inf).
  BigComplex psi(const BigComplex& z) const;
  // Cusp-approach threshold below which evaluation is refused.
  static constexpr double kCuspGuard = 1e-6;

 private:
  long N_;
  PrecisionCtx ctx_;
  mpfr_prec_t p_;
  BigFloat gamma_, cot_, width_, pi_;
  std::vector<BigComplex> zeta_, zeta_inv_;
  std::shared_ptr<const AAFamily> f1_, f2_;
  BigComplex seed_shift_;

  struct Sheet {
    BigComplex w;    // F^N
    BigComplex ell;  // log(1 - F^N)
    BigComplex F;
    BigFloat residual;
  };
  Sheet solve_sector(const BigComplex& x1) const;
  bool z_chart_newton(const BigComplex& x1, Sheet& out) const;
  bool ell_chart_newton(const BigComplex& x1, const BigComplex& seed, Sheet& out) const;
  BigComplex phi_ell(const BigComplex& ell, BigComplex* deriv) const;
  BigComplex tau_of(const BigComplex& x) const { return disc_to_half_plane(x); }
};

BigComplex f_n_eval(long N, const BigComplex& x, const PrecisionCtx& ctx);
BigComplex g_n_eval(long N, const BigComplex& x, const PrecisionCtx& ctx);

// max of log|F_N| over `samples` points of |x| = r in one sector [0, 2pi/N);
// full_circle scans N * samples points of the whole circle.
BigFloat sup_scan(long N, const BigFloat& r, long samples, const PrecisionCtx& ctx, bool full_circle = false);
BigFloat sup_scan(const CoveringMap& map, const BigFloat& r, long samples, bool full_circle = false);

}  // namespace udc
