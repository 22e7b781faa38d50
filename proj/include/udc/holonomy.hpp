#pragma once

#include "udc/bigfloat.hpp"
#include "udc/nevanlinna.hpp"
#include "udc/series.hpp"

#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace udc {

struct BoundReport {
  long N = 0;
  BigFloat slack, r;
  BigFloat log_phi_prime;  // log(gamma_N r / 16^{1/N})
  BigFloat m_value;        // m(r, F_N^N)
  BigFloat m_err;
  BigFloat rhs;            // e m / log_phi_prime
  BigFloat rhs_upper;      // same with m + m_err
  BigFloat lower;          // N^3 / (12 zeta(2)), rounded down
  long nodes = 0;
};

class InfeasibleSlack : public std::domain_error {
 public:
  InfeasibleSlack(const std::string& what, double max_slack) : std::domain_error(what), max_slack(max_slack) {}
  double max_slack;  // feasible slacks form (0, max_slack)
};

// Largest slack with r gamma_N / 16^{1/N} > 1 for r = 1 - slack/N^3.
BigFloat max_feasible_slack(long N, const PrecisionCtx& ctx);
BoundReport dimension_bound_rhs(long N, const BigFloat& slack, const PrecisionCtx& ctx, const GrowthOptions& opt = {});

struct CongruenceBound {
  mpz_class exact;  // (1/2)[Gamma(2):Gamma(N)], and 1 for N = 2
  BigFloat analytic;  // N^3 / (12 zeta(2)), rounded down
};

CongruenceBound congruence_lower_bound(long N, mpfr_prec_t prec = 128);

struct GapRow {
  long N = 0;
  BoundReport bound;
  mpz_class exact_dim;
  BigFloat ratio_to_N3logN;
  bool ok = false;
  std::string failure;
};

std::vector<GapRow> gap_report(const std::vector<long>& Ns, const BigFloat& slack, const PrecisionCtx& ctx,
                               const GrowthOptions& opt = {});
void write_gap_csv(std::ostream& os, const std::vector<GapRow>& rows);

// zeta(3)/4
BigFloat default_slack(mpfr_prec_t prec);

// Multivariate formal series truncated at total degree `trunc`.
struct MultiSeries {
  long vars = 1;
  long trunc = 0;
  std::map<std::vector<long>, BigRat> coeffs;  // nonzero entries only

  // Lowest total degree with a nonzero coefficient; trunc if none.
  long order() const;
  // Lexicographically minimal nonzero monomial.
  std::optional<std::pair<std::vector<long>, BigRat>> lex_min() const;
};

struct SiegelInstance {
  long m = 1;      // number of functions
  long d = 1;      // variables
  long alpha = 1;  // vanishing order
  BigRat kappa{1, 2};
  long D = 0;      // 0 picks the smallest D with (mD)^d >= (1 + 1/kappa) * conditions
  std::vector<PuiseuxSeries> functions;
  std::optional<PuiseuxSeries> p;  // defaults to p(x) = x

  // Number of monomials of total degree < alpha in d variables.
  long conditions() const;
  void validate() const;
};

struct SiegelResult {
  long D = 0;
  long unknowns = 0;
  long conditions = 0;
  long kernel_dim = 0;
  // a_{i,k} with (i_1..i_d, k_1..k_d) flattened row-major, i in [0,m), k in [0,D)
  std::vector<mpz_class> coeffs;
  MultiSeries F;  // expansion to total degree alpha + extra
  long order = 0;
  BigRat lowest;  // coefficient of a lowest-order monomial
  bool lowest_integral = false;
  double log_height = 0;  // log max |a|
};

SiegelResult siegel_construct(const SiegelInstance& inst, long extra_order = 8);

// Standard instance: f_i = (1 - 16x)^{i/8}, i = 1..m.
SiegelInstance binomial_instance(long m, long d, long alpha, long series_order = 200);

struct LexiReport {
  BigFloat log_abs_c;  // log |c| for the lexicographically minimal monomial of G
  BigFloat mean_log_G;
  BigFloat est_err;
  bool holds = false;
};

// G(z) = F(rho z_1, ..., rho z_d); checks log|c| <= integral of log|G| over the torus.
LexiReport lexi_check(const SiegelInstance& inst, const SiegelResult& res, const BigFloat& rho, long nodes,
                      const PrecisionCtx& ctx);

}  // namespace udc
