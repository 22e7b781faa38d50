#pragma once

#include "udc/bigfloat.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace udc {

class CoveringMap;

enum class QuadRule { TRAPEZOID, ADAPTIVE };

// Symmetry of the integrand on the circle: f(e^{2pi i/period} z) = f(z), and
// f(conj z) = f(z) when reflection is set. Only the fundamental arc is sampled.
struct CircleSymmetry {
  long period = 1;
  bool reflection = false;
};

struct CircleQuadrature {
  BigFloat radius;
  long nodes = 64;  // trapezoid: intervals on the fundamental arc; adaptive: initial panels
  QuadRule rule = QuadRule::TRAPEZOID;
  CircleSymmetry symmetry;
  double tol = 1e-20;        // adaptive: absolute tolerance on the mean
  long max_evals = 400000;   // adaptive: evaluation budget
  std::uint64_t jitter_seed = 0x243f6a8885a308d3ULL;
  int jitter_tries = 4;
  double max_refused_fraction = 0.01;

  void validate() const;
};

struct QuadResult {
  std::vector<BigFloat> values;  // one mean per integrand component
  BigFloat est_err;              // max over components
  long evaluations = 0;
  long jittered = 0;
  long refused = 0;
  const BigFloat& value() const { return values.at(0); }
};

class QuadratureFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Vector integrand on the circle |z| = radius. May throw CuspRefusal (or any
// std::domain_error) at a node; such nodes are re-sampled at jittered angles.
using CircleIntegrand = std::function<std::vector<BigFloat>(const BigComplex& z)>;

// Normalized Haar mean of each component over the circle.
QuadResult circle_mean(const CircleIntegrand& f, long components, const CircleQuadrature& quad,
                       const PrecisionCtx& ctx);

using Evaluator = std::function<BigComplex(const BigComplex&)>;
// log|f(z)|; -inf at zeros, +inf at poles.
using LogModulus = std::function<BigFloat(const BigComplex&)>;

LogModulus log_modulus(Evaluator f);
BigFloat log_plus(const BigFloat& x);

// m(r, f) = mean of log+|f| on |z| = r.
QuadResult proximity_m(const LogModulus& logf, const CircleQuadrature& quad, const PrecisionCtx& ctx);
// m(r, 1/f).
QuadResult proximity_m_reciprocal(const LogModulus& logf, const CircleQuadrature& quad, const PrecisionCtx& ctx);

struct PointMultiplicity {
  BigComplex point;
  long mult = 1;
};

// N(r, f) = sum over poles |rho| < r of mult * log(r/|rho|).
BigFloat counting_N(const std::vector<PointMultiplicity>& poles, const BigFloat& r);

struct NevanlinnaProfile {
  BigFloat r, m, Ncount, T, est_err;
};

NevanlinnaProfile characteristic_T(const LogModulus& logf, const std::vector<PointMultiplicity>& poles,
                                   const CircleQuadrature& quad, const PrecisionCtx& ctx);

struct JensenReport {
  BigFloat T_f, T_inv, log_abs_c;
  BigFloat residual;  // |T(r,f) - T(r,1/f) - log|c(f,0)||
  BigFloat est_err;
  long winding = 0;
};

// zeros/poles: data inside |z| < r; log_abs_c = log|c(f,0)|. The zero/pole
// lists are cross-checked against the winding number of f on the circle.
JensenReport jensen_check(const Evaluator& f, const std::vector<PointMultiplicity>& zeros,
                          const std::vector<PointMultiplicity>& poles, const BigFloat& log_abs_c,
                          const CircleQuadrature& quad, const PrecisionCtx& ctx);

// Winding number of f around 0 along |z| = r, with adaptive node doubling.
long winding_number(const Evaluator& f, const BigFloat& r, long nodes, const PrecisionCtx& ctx);

// Richardson-extrapolated central difference at step 2^{-bits/4}.
BigComplex numeric_derivative(const Evaluator& g, const BigComplex& z, const PrecisionCtx& ctx);

struct LogDerivReport {
  BigFloat lhs;    // m(r, g'/g)
  BigFloat m_R;    // m(R, g)
  BigFloat rhs;    // log+(m(R,g)/r * R/(R-r)) + log 2 + 1/e
  BigFloat margin; // rhs - lhs - est_err
  BigFloat est_err;
};

// g nowhere vanishing on |z| <= R with g(0) = 1. Optional symmetry applies to
// both circles (it must hold for |g| and |g'/g|).
LogDerivReport logderiv_bound_check(const Evaluator& g, const BigFloat& r, const BigFloat& R, long nodes,
                                    const PrecisionCtx& ctx, CircleSymmetry sym = {});

enum class PChoice { POWER, POWER_OVER_POWER_M1, INV_POWER_M1 };
const char* p_choice_name(PChoice p);

struct GrowthRow {
  long N = 0;
  double r = 0;
  PChoice p = PChoice::POWER;
  BigFloat m_value, ratio, est_err;
  bool ok = false;  // false marks a hole (quadrature failure)
  std::string failure;
};

struct GrowthOptions {
  double node_density = 64;  // trapezoid intervals per sector ~ density / (N (1 - r))
  long min_nodes = 64;
  unsigned jobs = 1;
};

// m(r, p(F_N)) / log(N/(1-r)) for the three p choices on the (N, r) grid.
std::vector<GrowthRow> growth_table(const std::vector<long>& Ns, const std::vector<double>& rs,
                                    const PrecisionCtx& ctx, const GrowthOptions& opt = {});
void write_growth_csv(std::ostream& os, const std::vector<GrowthRow>& rows);

// m(r, F_N^N) alone, trapezoid with the growth-table node rule.
QuadResult proximity_power(const CoveringMap& map, const BigFloat& r, const GrowthOptions& opt = {});
long growth_nodes(long N, const BigFloat& r, const GrowthOptions& opt);

struct KoksmaReport {
  double average, integral, variation;
  double lhs, rhs, defect;  // defect = rhs - lhs
};

struct DiscrepancyReport {
  double box_discrepancy = 0;
  double erdos_turan_bound = 0;
  long erdos_turan_K = 0;
  double vandermonde_log = 0;  // -inf for repeated points
  std::optional<KoksmaReport> koksma;
};

// g is a function of the angle in [0, 2pi); its mean and total variation are
// taken on a uniform grid of `grid` points.
DiscrepancyReport discrepancy_suite(const std::vector<std::complex<double>>& points,
                                    const std::function<double(double)>* g = nullptr, long grid = 1 << 16);

double box_discrepancy(const std::vector<std::complex<double>>& points);

}  // namespace udc
