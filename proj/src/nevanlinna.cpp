#include "udc/nevanlinna.hpp"

#include "udc/covering.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <queue>
#include <random>
#include <thread>

namespace udc {

void CircleQuadrature::validate() const {
  if (!(radius.sign() > 0 && radius < 1.0)) throw std::invalid_argument("quadrature radius must lie in (0, 1)");
  if (nodes < 16) throw std::invalid_argument("quadrature needs at least 16 nodes");
  if (symmetry.period < 1) throw std::invalid_argument("symmetry period must be positive");
  if (jitter_tries < 0 || max_refused_fraction < 0) throw std::invalid_argument("bad refusal policy");
}

namespace {

// Evaluates one node, re-sampling at jittered angles on refusal.
class NodeSampler {
 public:
  NodeSampler(const CircleIntegrand& f, long comps, const CircleQuadrature& q, mpfr_prec_t p)
      : f_(f), comps_(comps), q_(q), p_(p) {}

  bool operator()(const BigFloat& theta, const BigFloat& spread, std::uint64_t key, std::vector<BigFloat>& out) {
    ++evals;
    if (try_eval(theta, out)) return true;
    std::mt19937_64 rng(q_.jitter_seed ^ (key * 0x9e3779b97f4a7c15ULL));
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int t = 0; t < q_.jitter_tries; ++t) {
      ++evals;
      BigFloat th = theta + spread * BigFloat(0.25 * U(rng), p_);
      if (try_eval(th, out)) {
        ++jittered;
        return true;
      }
    }
    ++refused;
    return false;
  }

  long evals = 0, jittered = 0, refused = 0;

 private:
  bool try_eval(const BigFloat& theta, std::vector<BigFloat>& out) {
    try {
      out = f_(polar(BigFloat(q_.radius, p_), theta));
    } catch (const std::domain_error&) {
      return false;
    }
    if (static_cast<long>(out.size()) != comps_) throw std::logic_error("integrand returned wrong arity");
    for (const auto& v : out) {
      if (!v.is_finite()) return false;
    }
    return true;
  }

  const CircleIntegrand& f_;
  long comps_;
  const CircleQuadrature& q_;
  mpfr_prec_t p_;
};

BigFloat arc_length(const CircleQuadrature& q, mpfr_prec_t p) {
  BigFloat L = const_pi(p) * 2 / q.symmetry.period;
  if (q.symmetry.reflection) L /= 2;
  return L;
}

QuadResult trapezoid(const CircleIntegrand& f, long comps, const CircleQuadrature& q, mpfr_prec_t p) {
  long K = q.nodes + (q.nodes & 1);
  BigFloat L = arc_length(q, p);
  BigFloat h = L / K;
  bool closed = q.symmetry.reflection;
  long count = closed ? K + 1 : K;
  NodeSampler sample(f, comps, q, p);

  std::vector<BigFloat> full(comps, BigFloat(p)), half(comps, BigFloat(p));
  BigFloat wfull(p), whalf(p);
  std::vector<BigFloat> v;
  for (long j = 0; j < count; ++j) {
    if (!sample(h * j, h, static_cast<std::uint64_t>(j), v)) continue;
    BigFloat w(closed && (j == 0 || j == K) ? 0.5 : 1.0, p);
    wfull += w;
    for (long c = 0; c < comps; ++c) full[c] += v[c] * w;
    if (j % 2 == 0) {
      whalf += w;
      for (long c = 0; c < comps; ++c) half[c] += v[c] * w;
    }
  }
  if (sample.refused > q.max_refused_fraction * count || wfull.is_zero() || whalf.is_zero()) {
    throw QuadratureFailure("quadrature: " + std::to_string(sample.refused) + " of " + std::to_string(count) +
                            " nodes refused after jitter");
  }
  QuadResult res;
  res.est_err = BigFloat(p);
  for (long c = 0; c < comps; ++c) {
    BigFloat a = full[c] / wfull, b = half[c] / whalf;
    BigFloat e = abs(a - b);
    if (e > res.est_err) res.est_err = e;
    res.values.push_back(std::move(a));
  }
  res.evaluations = sample.evals;
  res.jittered = sample.jittered;
  res.refused = sample.refused;
  return res;
}

// Gauss-Kronrod 7-15 abscissae and weights on [-1, 1].
const char* const kXgk[8] = {"0.991455371120812639206854697526329", "0.949107912342758524526189684047851",
                             "0.864864423359769072789712788640926", "0.741531185599394439863864773280788",
                             "0.586087235467691130294144845693013", "0.405845151377397166906606412076961",
                             "0.207784955007898467600689403773245", "0"};
const char* const kWgk[8] = {"0.022935322010529224963732008058970", "0.063092092629978553290700663189204",
                             "0.104790010322250183839876322541518", "0.140653259715525918745189590510238",
                             "0.169004726639267902826583426598550", "0.190350578064785409913256402421014",
                             "0.204432940075298892414161999234649", "0.209482141084727828012999174891714"};
const char* const kWg[4] = {"0.129484966168869693270611432679082", "0.279705391489276667901467771423780",
                            "0.381830050505118944950369775488975", "0.417959183673469387755102040816327"};

struct Panel {
  BigFloat a, b;
  std::vector<BigFloat> k15;
  double err;
  long refused;
  bool operator<(const Panel& o) const { return err < o.err; }
};

QuadResult adaptive(const CircleIntegrand& f, long comps, const CircleQuadrature& q, mpfr_prec_t p) {
  std::vector<BigFloat> xgk, wgk, wg;
  for (const char* s : kXgk) xgk.emplace_back(std::string(s), p);
  for (const char* s : kWgk) wgk.emplace_back(std::string(s), p);
  for (const char* s : kWg) wg.emplace_back(std::string(s), p);
  BigFloat L = arc_length(q, p);
  NodeSampler sample(f, comps, q, p);
  std::uint64_t key = 0;
  BigFloat min_width = L * BigFloat(1e-12, p);

  auto run = [&](const BigFloat& a, const BigFloat& b) {
    Panel P{a, b, std::vector<BigFloat>(comps, BigFloat(p)), 0.0, 0};
    BigFloat c = (a + b) / 2, hw = (b - a) / 2;
    std::vector<BigFloat> g7(comps, BigFloat(p));
    BigFloat wk_used(p), wg_used(p), wk_all(p), wg_all(p);
    std::vector<BigFloat> v;
    for (int i = 0; i < 15; ++i) {
      int idx = i < 8 ? i : 14 - i;
      BigFloat x = i < 8 ? -xgk[idx] : xgk[idx];
      bool gauss = idx % 2 == 1;  // includes the centre node
      const BigFloat& wk = wgk[idx];
      wk_all += wk;
      if (gauss) wg_all += wg[idx / 2];
      if (!sample(c + hw * x, hw / 8, ++key, v)) {
        ++P.refused;
        continue;
      }
      wk_used += wk;
      for (long k = 0; k < comps; ++k) P.k15[k] += v[k] * wk;
      if (gauss) {
        const BigFloat& w = wg[idx / 2];
        wg_used += w;
        for (long k = 0; k < comps; ++k) g7[k] += v[k] * w;
      }
    }
    for (long k = 0; k < comps; ++k) {
      if (!wk_used.is_zero()) P.k15[k] *= hw * wk_all / wk_used;
      if (!wg_used.is_zero()) g7[k] *= hw * wg_all / wg_used;
      double e = abs(P.k15[k] - g7[k]).to_double();
      P.err = std::max(P.err, e);
    }
    if (P.refused > 0 && (b - a) > min_width) P.err = std::numeric_limits<double>::infinity();
    return P;
  };

  std::priority_queue<Panel> heap;
  long n0 = q.nodes;
  for (long j = 0; j < n0; ++j) heap.push(run(L * j / n0, L * (j + 1) / n0));
  auto total_err = [&]() {
    // recomputed lazily; heap sizes stay modest
    double s = 0;
    auto copy = heap;
    while (!copy.empty()) {
      s += copy.top().err;
      copy.pop();
    }
    return s;
  };
  double tol = q.tol * L.to_double();
  double err = total_err();
  while (err > tol && sample.evals + 30 <= q.max_evals) {
    Panel P = heap.top();
    if ((P.b - P.a) <= min_width) break;
    heap.pop();
    BigFloat m = (P.a + P.b) / 2;
    Panel left = run(P.a, m), right = run(m, P.b);
    err += left.err + right.err - P.err;
    if (!std::isfinite(err)) err = total_err();
    heap.push(std::move(left));
    heap.push(std::move(right));
  }
  QuadResult res;
  res.values.assign(comps, BigFloat(p));
  double esum = 0;
  long refused = 0;
  while (!heap.empty()) {
    const Panel& P = heap.top();
    for (long k = 0; k < comps; ++k) res.values[k] += P.k15[k];
    esum += P.err;
    refused += P.refused;
    heap.pop();
  }
  for (auto& v : res.values) v /= L;
  res.evaluations = sample.evals;
  res.jittered = sample.jittered;
  res.refused = refused;
  if (refused > q.max_refused_fraction * sample.evals || !std::isfinite(esum)) {
    throw QuadratureFailure("quadrature: " + std::to_string(refused) + " nodes refused after refinement");
  }
  res.est_err = BigFloat(esum / L.to_double(), p);
  return res;
}

}  // namespace

QuadResult circle_mean(const CircleIntegrand& f, long components, const CircleQuadrature& quad,
                       const PrecisionCtx& ctx) {
  quad.validate();
  if (components < 1) throw std::invalid_argument("circle_mean: need at least one component");
  mpfr_prec_t p = ctx.work();
  return quad.rule == QuadRule::TRAPEZOID ? trapezoid(f, components, quad, p) : adaptive(f, components, quad, p);
}

LogModulus log_modulus(Evaluator f) {
  return [f = std::move(f)](const BigComplex& z) { return log(abs(f(z))); };
}

BigFloat log_plus(const BigFloat& x) {
  if (x.sign() > 0) return x;
  return BigFloat(x.prec());
}

namespace {

BigFloat finite_or_throw(BigFloat x) {
  if (!x.is_finite()) throw std::domain_error("integrand is not finite at this node");
  return x;
}

}  // namespace

QuadResult proximity_m(const LogModulus& logf, const CircleQuadrature& quad, const PrecisionCtx& ctx) {
  return circle_mean([&](const BigComplex& z) { return std::vector<BigFloat>{log_plus(finite_or_throw(logf(z)))}; },
                     1, quad, ctx);
}

QuadResult proximity_m_reciprocal(const LogModulus& logf, const CircleQuadrature& quad, const PrecisionCtx& ctx) {
  return circle_mean([&](const BigComplex& z) { return std::vector<BigFloat>{log_plus(-finite_or_throw(logf(z)))}; },
                     1, quad, ctx);
}

BigFloat counting_N(const std::vector<PointMultiplicity>& poles, const BigFloat& r) {
  BigFloat sum(r.prec());
  for (const auto& pm : poles) {
    if (pm.mult < 0) throw std::invalid_argument("counting_N: negative multiplicity");
    BigFloat a = abs(pm.point);
    if (a.is_zero()) throw std::invalid_argument("counting_N: pole at the origin is unsupported");
    if (a < r) sum += log(r / a) * BigFloat(pm.mult, r.prec());
  }
  return sum;
}

NevanlinnaProfile characteristic_T(const LogModulus& logf, const std::vector<PointMultiplicity>& poles,
                                   const CircleQuadrature& quad, const PrecisionCtx& ctx) {
  QuadResult m = proximity_m(logf, quad, ctx);
  NevanlinnaProfile prof;
  prof.r = quad.radius;
  prof.m = m.value();
  prof.Ncount = counting_N(poles, BigFloat(quad.radius, ctx.work()));
  prof.T = prof.m + prof.Ncount;
  prof.est_err = m.est_err;
  return prof;
}

long winding_number(const Evaluator& f, const BigFloat& r, long nodes, const PrecisionCtx& ctx) {
  mpfr_prec_t p = ctx.work();
  BigFloat pi = const_pi(p);
  for (long M = std::max(16L, nodes); M <= (1L << 18); M *= 2) {
    BigFloat total(p);
    BigComplex prev = f(polar(BigFloat(r, p), BigFloat(p)));
    BigComplex first = prev;
    bool fine = true;
    for (long j = 1; j <= M; ++j) {
      BigComplex cur = j == M ? first : f(polar(BigFloat(r, p), pi * 2 * j / M));
      if (cur.is_zero() || prev.is_zero()) throw std::domain_error("winding_number: f vanishes on the circle");
      BigFloat step = arg(cur / prev);
      if (abs(step).to_double() > 1.0) {
        fine = false;
        break;
      }
      total += step;
      prev = cur;
    }
    if (fine) return std::lround((total / (pi * 2)).to_double());
  }
  throw std::domain_error("winding_number: argument does not resolve");
}

JensenReport jensen_check(const Evaluator& f, const std::vector<PointMultiplicity>& zeros,
                          const std::vector<PointMultiplicity>& poles, const BigFloat& log_abs_c,
                          const CircleQuadrature& quad, const PrecisionCtx& ctx) {
  quad.validate();
  mpfr_prec_t p = ctx.work();
  BigFloat r(quad.radius, p);
  long inside = 0;
  for (const auto& z : zeros) {
    if (abs(z.point) < r) inside += z.mult;
  }
  for (const auto& q : poles) {
    if (abs(q.point) < r) inside -= q.mult;
  }
  JensenReport rep;
  rep.winding = winding_number(f, r, quad.nodes, ctx);
  if (rep.winding != inside) {
    throw std::invalid_argument("jensen_check: zero/pole data give " + std::to_string(inside) +
                                " but the argument principle gives " + std::to_string(rep.winding));
  }
  QuadResult q = circle_mean(
      [&](const BigComplex& z) {
        BigFloat L = finite_or_throw(log(abs(f(z))));
        return std::vector<BigFloat>{log_plus(L), log_plus(-L)};
      },
      2, quad, ctx);
  rep.T_f = q.values[0] + counting_N(poles, r);
  rep.T_inv = q.values[1] + counting_N(zeros, r);
  rep.log_abs_c = BigFloat(log_abs_c, p);
  rep.residual = abs(rep.T_f - rep.T_inv - rep.log_abs_c);
  rep.est_err = q.est_err;
  return rep;
}

BigComplex numeric_derivative(const Evaluator& g, const BigComplex& z, const PrecisionCtx& ctx) {
  mpfr_prec_t p = ctx.work();
  BigFloat h = ldexp(BigFloat(1L, p), -ctx.bits / 4);
  auto central = [&](const BigFloat& step) { return (g(z + step) - g(z - step)) / (step * 2); };
  BigComplex d1 = central(h), d2 = central(h / 2);
  return (d2 * BigFloat(4L, p) - d1) / BigFloat(3L, p);
}

LogDerivReport logderiv_bound_check(const Evaluator& g, const BigFloat& r, const BigFloat& R, long nodes,
                                    const PrecisionCtx& ctx, CircleSymmetry sym) {
  mpfr_prec_t p = ctx.work();
  if (!(r.sign() > 0 && r < R && R < 1.0)) throw std::invalid_argument("logderiv_bound_check: need 0 < r < R < 1");
  BigComplex g0 = g(BigComplex(p));
  if (abs(g0 - BigFloat(1L, p)) > ldexp(BigFloat(1L, p), -ctx.bits / 2)) {
    throw std::invalid_argument("logderiv_bound_check: g(0) must equal 1");
  }
  auto nonvanishing = [](const BigComplex& v) {
    if (v.is_zero()) throw std::logic_error("logderiv_bound_check: g vanishes at a node");
    return v;
  };
  CircleQuadrature qr;
  qr.radius = BigFloat(r, p);
  qr.nodes = nodes;
  qr.symmetry = sym;
  QuadResult lhs = circle_mean(
      [&](const BigComplex& z) {
        BigComplex gz = nonvanishing(g(z));
        BigComplex d = numeric_derivative(g, z, ctx);
        return std::vector<BigFloat>{log_plus(log(abs(d / gz)))};
      },
      1, qr, ctx);
  CircleQuadrature qR = qr;
  qR.radius = BigFloat(R, p);
  QuadResult mR = circle_mean(
      [&](const BigComplex& z) { return std::vector<BigFloat>{log_plus(log(abs(nonvanishing(g(z)))))}; }, 1, qR, ctx);

  LogDerivReport rep;
  rep.lhs = lhs.value();
  rep.m_R = mR.value();
  BigFloat Rp(R, p), rp(r, p);
  BigFloat inner = rep.m_R / rp * Rp / (Rp - rp);
  rep.rhs = (inner.is_zero() ? BigFloat(p) : log_plus(log(inner))) + const_log2(p) + exp(BigFloat(-1L, p));
  rep.est_err = lhs.est_err + mR.est_err;
  rep.margin = rep.rhs - rep.lhs - rep.est_err;
  return rep;
}

const char* p_choice_name(PChoice c) {
  switch (c) {
    case PChoice::POWER: return "x^N";
    case PChoice::POWER_OVER_POWER_M1: return "x^N/(x^N-1)";
    case PChoice::INV_POWER_M1: return "1/(x^N-1)";
  }
  return "?";
}

long growth_nodes(long N, const BigFloat& r, const GrowthOptions& opt) {
  double gap = 1.0 - r.to_double();
  long K = static_cast<long>(std::ceil(opt.node_density / (static_cast<double>(N) * gap)));
  K = std::max(K, opt.min_nodes);
  return K + (K & 1);
}

namespace {

CircleQuadrature growth_quadrature(const CoveringMap& map, const BigFloat& r, const GrowthOptions& opt) {
  CircleQuadrature q;
  q.radius = BigFloat(r, map.ctx().work());
  q.nodes = growth_nodes(map.N(), r, opt);
  q.symmetry = {map.N(), true};
  return q;
}

std::vector<BigFloat> p_values(const CoveringEvalReport& rep) {
  const BigFloat& L = rep.log_abs_power;
  const BigFloat& Lm1 = rep.log_abs_power_m1;
  if (!Lm1.is_finite() || (L.sign() > 0 && !L.is_finite())) throw std::domain_error("non-finite covering value");
  BigFloat quotient = L.is_finite() ? L - Lm1 : BigFloat(L.prec());
  return {log_plus(L), log_plus(quotient), log_plus(-Lm1)};
}

}  // namespace

QuadResult proximity_power(const CoveringMap& map, const BigFloat& r, const GrowthOptions& opt) {
  CircleQuadrature q = growth_quadrature(map, r, opt);
  return circle_mean([&](const BigComplex& z) { return std::vector<BigFloat>{log_plus(map.eval(z).log_abs_power)}; },
                     1, q, map.ctx());
}

std::vector<GrowthRow> growth_table(const std::vector<long>& Ns, const std::vector<double>& rs,
                                    const PrecisionCtx& ctx, const GrowthOptions& opt) {
  for (long N : Ns) {
    if (N < 2) throw std::invalid_argument("growth_table: N must be at least 2");
  }
  for (double r : rs) {
    if (!(r > 0 && r < 1)) throw std::invalid_argument("growth_table: r must lie in (0, 1)");
  }
  std::vector<std::unique_ptr<CoveringMap>> maps;
  for (long N : Ns) maps.push_back(std::make_unique<CoveringMap>(N, ctx));
  struct Cell {
    size_t ni, ri;
  };
  std::vector<Cell> cells;
  for (size_t i = 0; i < Ns.size(); ++i) {
    for (size_t j = 0; j < rs.size(); ++j) cells.push_back({i, j});
  }
  std::vector<GrowthRow> rows(cells.size() * 3);
  mpfr_prec_t p = ctx.work();

  auto work = [&](size_t c) {
    const CoveringMap& map = *maps[cells[c].ni];
    long N = map.N();
    double rd = rs[cells[c].ri];
    BigFloat r(shortest_double(rd), p);
    BigFloat denom = log(BigFloat(N, p) / (BigFloat(1L, p) - r));
    GrowthRow* out = &rows[c * 3];
    for (int k = 0; k < 3; ++k) {
      out[k].N = N;
      out[k].r = rd;
      out[k].p = static_cast<PChoice>(k);
    }
    try {
      QuadResult q =
          circle_mean([&](const BigComplex& z) { return p_values(map.eval(z)); }, 3, growth_quadrature(map, r, opt), ctx);
      for (int k = 0; k < 3; ++k) {
        out[k].m_value = q.values[k];
        out[k].ratio = q.values[k] / denom;
        out[k].est_err = q.est_err;
        out[k].ok = true;
      }
    } catch (const std::exception& e) {
      for (int k = 0; k < 3; ++k) out[k].failure = e.what();
    }
  };

  unsigned jobs = std::max(1u, opt.jobs);
  if (jobs == 1) {
    for (size_t c = 0; c < cells.size(); ++c) work(c);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) {
      pool.emplace_back([&] {
        for (size_t c; (c = next++) < cells.size();) work(c);
      });
    }
    for (auto& th : pool) th.join();
  }
  return rows;
}

void write_growth_csv(std::ostream& os, const std::vector<GrowthRow>& rows) {
  os << "N,r,p_choice,m_value,ratio,est_err\n";
  for (const auto& row : rows) {
    os << row.N << ',' << shortest_double(row.r) << ',' << p_choice_name(row.p) << ',';
    if (row.ok) {
      os << shortest_double(row.m_value.to_double()) << ',' << shortest_double(row.ratio.to_double()) << ','
         << shortest_double(row.est_err.to_double());
    } else {
      os << ",,";
    }
    os << '\n';
  }
}

namespace {

// Neumaier compensated sum.
struct CompensatedSum {
  double s = 0, c = 0;
  void add(double x) {
    double t = s + x;
    if (std::fabs(s) >= std::fabs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }
  double value() const { return s + c; }
};

std::vector<double> unit_angles(const std::vector<std::complex<double>>& points) {
  if (points.empty()) throw std::invalid_argument("discrepancy: empty point list");
  std::vector<double> t;
  t.reserve(points.size());
  for (const auto& z : points) {
    if (std::fabs(std::abs(z) - 1.0) > 1e-9) throw std::invalid_argument("discrepancy: points must lie on the unit circle");
    double a = std::arg(z) / (2 * M_PI);
    if (a < 0) a += 1;
    if (a >= 1) a -= 1;
    t.push_back(a);
  }
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace

double box_discrepancy(const std::vector<std::complex<double>>& points) {
  std::vector<double> t = unit_angles(points);
  double d = static_cast<double>(t.size());
  double hi = -1e300, lo = 1e300;
  for (size_t i = 0; i < t.size(); ++i) {
    double v = t[i] - static_cast<double>(i) / d;
    hi = std::max(hi, v);
    lo = std::min(lo, v);
  }
  return 1.0 / d + hi - lo;
}

DiscrepancyReport discrepancy_suite(const std::vector<std::complex<double>>& points,
                                    const std::function<double(double)>* g, long grid) {
  DiscrepancyReport rep;
  rep.box_discrepancy = box_discrepancy(points);
  std::vector<double> theta = unit_angles(points);
  for (auto& t : theta) t *= 2 * M_PI;
  long d = static_cast<long>(theta.size());

  double tail = 0;
  CompensatedSum series;
  double best = std::numeric_limits<double>::infinity();
  for (long K = 1; K <= 10 * d; ++K) {
    CompensatedSum re, im;
    for (double t : theta) {
      re.add(std::cos(K * t));
      im.add(std::sin(K * t));
    }
    series.add(std::hypot(re.value(), im.value()) / (static_cast<double>(d) * K));
    tail = 1.0 / (K + 1);
    double bound = 3 * (tail + series.value());
    if (bound < best) {
      best = bound;
      rep.erdos_turan_K = K;
    }
  }
  rep.erdos_turan_bound = best;

  CompensatedSum vl;
  for (long i = 0; i < d && std::isfinite(vl.value()); ++i) {
    for (long j = i + 1; j < d; ++j) {
      double dist = std::abs(points[i] - points[j]);
      if (dist == 0) {
        vl.s = -std::numeric_limits<double>::infinity();
        vl.c = 0;
        break;
      }
      vl.add(std::log(dist));
    }
  }
  rep.vandermonde_log = vl.value();

  if (g) {
    if (grid < 16) throw std::invalid_argument("discrepancy: Koksma grid too small");
    KoksmaReport k{};
    CompensatedSum avg, integral, var;
    for (double t : theta) avg.add((*g)(t));
    double prev = (*g)(0.0);
    integral.add(prev);
    for (long j = 1; j < grid; ++j) {
      double v = (*g)(2 * M_PI * static_cast<double>(j) / static_cast<double>(grid));
      integral.add(v);
      var.add(std::fabs(v - prev));
      prev = v;
    }
    k.average = avg.value() / static_cast<double>(d);
    k.integral = integral.value() / static_cast<double>(grid);
    k.variation = var.value();
    k.lhs = std::fabs(k.average - k.integral);
    k.rhs = k.variation * rep.box_discrepancy;
    k.defect = k.rhs - k.lhs;
    rep.koksma = k;
  }
  return rep;
}

}  // namespace udc
