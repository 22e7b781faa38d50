#include "udc/cli.hpp"

#include "udc/covering.hpp"
#include "udc/holonomy.hpp"
#include "udc/hypergeom.hpp"
#include "udc/nevanlinna.hpp"
#include "udc/series.hpp"
#include "udc/sl2.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace udc::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  int bits = 256;
  std::string format = "json";
  std::string output;
  unsigned jobs = 1;
};

std::string fmt(const BigFloat& x, int bits) { return BigFloat(x, bits).to_shortest(); }

json cjson(const BigComplex& z, int bits) { return json::array({fmt(z.re, bits), fmt(z.im, bits)}); }

std::string csv_row(const std::vector<std::string>& cells) {
  std::string s;
  for (size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
  return s + "\n";
}

// "2..16", "2,4,8" or a mix such as "2,5..7"
std::vector<long> parse_long_list(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string part;
  try {
    while (std::getline(ss, part, ',')) {
      auto dots = part.find("..");
      size_t used = 0;
      if (dots == std::string::npos) {
        out.push_back(std::stol(part, &used));
        if (used != part.size()) throw UsageError("bad integer list: " + s);
      } else {
        long a = std::stol(part.substr(0, dots));
        long b = std::stol(part.substr(dots + 2), &used);
        if (used != part.size() - dots - 2 || b < a || b - a > 10000) throw UsageError("bad integer range: " + s);
        for (long v = a; v <= b; ++v) out.push_back(v);
      }
    }
  } catch (const std::logic_error&) {
    throw UsageError("bad integer list: " + s);
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    size_t used = 0;
    try {
      out.push_back(std::stod(part, &used));
    } catch (const std::logic_error&) {
      throw UsageError("bad number list: " + s);
    }
    if (used != part.size()) throw UsageError("bad number list: " + s);
  }
  if (out.empty()) throw UsageError("empty number list");
  return out;
}

BigComplex parse_point(const std::string& s, mpfr_prec_t p) {
  auto comma = s.find(',');
  std::string re = s.substr(0, comma);
  std::string im = comma == std::string::npos ? "0" : s.substr(comma + 1);
  try {
    return BigComplex(BigFloat(re, p), BigFloat(im, p));
  } catch (const std::exception&) {
    throw UsageError("bad point: " + s + " (expected re,im)");
  }
}

BigFloat parse_real(const std::string& s, mpfr_prec_t p) {
  try {
    return BigFloat(s, p);
  } catch (const std::exception&) {
    throw UsageError("bad number: " + s);
  }
}

void emit(const Common& c, std::ostream& out, const std::string& text) {
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file " + c.output);
  f << text;
}

void emit_json(const Common& c, std::ostream& out, const json& j) { emit(c, out, j.dump(2) + "\n"); }

// ---- series

PuiseuxSeries named_series(const std::string& name, long order) {
  if (name == "lambda") return lambda_over_16(order);
  if (name == "h") return h_series(order);
  if (name == "j13") return j_cube_root(order);
  if (name == "e4") return eisenstein_e4(order);
  if (name == "elliptic_e") return elliptic_e_series(order);
  if (name == "catalan_square") return catalan_square_series(order);
  if (name == "eta") return eta_expansion(BigRat(1), order);
  throw UsageError("unknown series " + name);
}

struct SeriesArgs {
  std::string name;
  long order = 50;
  long root = 0;
  bool revert = false;
  bool denominators = false;
};

void run_series(const Common& c, const SeriesArgs& a, std::ostream& out) {
  PuiseuxSeries f = named_series(a.name, a.order);
  if (a.root > 1) f = nth_root(f, a.root);
  if (a.revert) f = revert(f);
  if (c.format == "csv") {
    std::string s = "exponent,coefficient\n";
    for (size_t i = 0; i < f.coeffs.size(); ++i) {
      BigRat e(f.val + static_cast<long>(i), f.ram);
      e.canonicalize();
      s += csv_row({e.get_str(), f.coeffs[i].get_str()});
    }
    emit(c, out, s);
    return;
  }
  json j = to_json(f);
  j["name"] = a.name;
  if (a.root > 1) j["root"] = a.root;
  j["reverted"] = a.revert;
  j["all_integral"] = f.all_integral();
  if (a.denominators) {
    DenominatorProfile prof = denominator_profile(f);
    j["denominators"] = {{"final_lcm", prof.cumulative_lcm.empty() ? "1" : prof.cumulative_lcm.back().get_str()},
                         {"bounded", prof.bounded_upto(f.rel_prec())},
                         {"divisibility_monotone", prof.divisibility_monotone()}};
  }
  emit_json(c, out, j);
}

// ---- radius

void run_radius(const Common& c, long N, std::ostream& out) {
  PrecisionCtx ctx(c.bits);
  BigFloat g = gamma_N(N, ctx);
  BigFloat asym = gamma_N_asymptotic(N, ctx);
  BigFloat defect = BigFloat(g, ctx.work()) - BigFloat(asym, ctx.work());
  BigFloat n(N, ctx.work());
  BigFloat scaled = defect * n * n * n * n * n * n;
  if (c.format == "csv") {
    emit(c, out,
         "N,bits,gamma_N,asymptotic,defect,defect_times_N6\n" +
             csv_row({std::to_string(N), std::to_string(c.bits), fmt(g, c.bits), fmt(asym, c.bits),
                      fmt(defect, c.bits), fmt(scaled, c.bits)}));
    return;
  }
  emit_json(c, out,
            {{"N", N},
             {"bits", c.bits},
             {"gamma_N", fmt(g, c.bits)},
             {"asymptotic", fmt(asym, c.bits)},
             {"defect", fmt(defect, c.bits)},
             {"defect_times_N6", fmt(scaled, c.bits)}});
}

// ---- cover

void run_cover_eval(const Common& c, long N, const std::string& x, std::ostream& out) {
  PrecisionCtx ctx(c.bits);
  CoveringMap map(N, ctx);
  BigComplex z = parse_point(x, ctx.work());
  if (!(abs(z) < BigFloat(1L, ctx.work()))) throw std::domain_error("cover eval: x must lie in the open unit disc");
  CoveringEvalReport rep = map.eval(z);
  json j = {{"N", N},
            {"x", cjson(z, c.bits)},
            {"value", cjson(rep.value, c.bits)},
            {"word", rep.word},
            {"residual", fmt(rep.residual, 53)}};
  if (c.format == "csv") {
    emit(c, out,
         "N,x_re,x_im,value_re,value_im,word,residual\n" +
             csv_row({std::to_string(N), fmt(z.re, c.bits), fmt(z.im, c.bits), fmt(rep.value.re, c.bits),
                      fmt(rep.value.im, c.bits), [&] {
                        std::string w;
                        for (const auto& t : rep.word) w += (w.empty() ? "" : " ") + t;
                        return w;
                      }(),
                      fmt(rep.residual, 53)}));
    return;
  }
  emit_json(c, out, j);
}

void run_cover_scan(const Common& c, long N, const std::string& r, long samples, bool full, std::ostream& out) {
  PrecisionCtx ctx(c.bits);
  BigFloat rr = parse_real(r, ctx.work());
  BigFloat s = sup_scan(N, rr, samples, ctx, full);
  if (c.format == "csv") {
    emit(c, out,
         "N,r,samples,full_circle,sup_log_abs\n" +
             csv_row({std::to_string(N), r, std::to_string(samples), full ? "1" : "0", fmt(s, c.bits)}));
    return;
  }
  emit_json(c, out, {{"N", N}, {"r", r}, {"samples", samples}, {"full_circle", full}, {"sup_log_abs", fmt(s, c.bits)}});
}

// ---- nevan

void run_nevan_growth(const Common& c, const std::string& Ns, const std::string& rs, double density,
                      std::ostream& out) {
  PrecisionCtx ctx(c.bits);
  GrowthOptions opt;
  opt.jobs = c.jobs;
  opt.node_density = density;
  auto rows = growth_table(parse_long_list(Ns), parse_double_list(rs), ctx, opt);
  if (c.format == "csv") {
    std::ostringstream os;
    write_growth_csv(os, rows);
    emit(c, out, os.str());
    return;
  }
  json arr = json::array();
  for (const auto& row : rows) {
    json j = {{"N", row.N}, {"r", shortest_double(row.r)}, {"p_choice", p_choice_name(row.p)}, {"ok", row.ok}};
    if (row.ok) {
      j["m_value"] = fmt(row.m_value, 53);
      j["ratio"] = fmt(row.ratio, 53);
      j["est_err"] = fmt(row.est_err, 53);
    } else {
      j["failure"] = row.failure;
    }
    arr.push_back(j);
  }
  emit_json(c, out, arr);
}

void run_nevan_proximity(const Common& c, long N, const std::string& r, double density, std::ostream& out) {
  PrecisionCtx ctx(c.bits);
  GrowthOptions opt;
  opt.node_density = density;
  BigFloat rr = parse_real(r, ctx.work());
  if (!(rr.sign() > 0 && rr < BigFloat(1L, ctx.work()))) throw std::domain_error("nevan proximity: r must lie in (0, 1)");
  CoveringMap map(N, ctx);
  QuadResult q = proximity_power(map, rr, opt);
  long nodes = growth_nodes(N, rr, opt);
  if (c.format == "csv") {
    emit(c, out,
         "N,r,m_value,est_err,nodes\n" +
             csv_row({std::to_string(N), r, fmt(q.value(), c.bits), fmt(q.est_err, 53), std::to_string(nodes)}));
    return;
  }
  emit_json(c, out,
            {{"N", N}, {"r", r}, {"m_value", fmt(q.value(), c.bits)}, {"est_err", fmt(q.est_err, 53)}, {"nodes", nodes}});
}

// ---- sl2

CosetAction named_group(const std::string& g, long N) {
  if (g == "full") return full_group();
  if (g == "gamma") return principal_congruence(N);
  if (g == "gamma0") return gamma0(N);
  if (g == "gamma_upper0") return gamma_upper0(N);
  throw UsageError("unknown group " + g);
}

void run_sl2(const Common& c, const std::string& what, const std::string& group, long N, std::ostream& out) {
  if (what == "index") {
    if (N < 2 || N % 2 != 0) throw std::invalid_argument("sl2 index: N must be even and at least 2");
    IndexReport rep = index_gamma2_gammaN(N, N <= 24);
    json j = {{"N", N}, {"formula", rep.formula.get_str()}, {"lower_bound", shortest_double(rep.lower_bound)}};
    j["enumerated"] = rep.enumerated ? json(rep.enumerated->get_str()) : json(nullptr);
    if (c.format == "csv") {
      emit(c, out,
           "N,formula,enumerated,lower_bound\n" +
               csv_row({std::to_string(N), rep.formula.get_str(), rep.enumerated ? rep.enumerated->get_str() : "",
                        shortest_double(rep.lower_bound)}));
      return;
    }
    emit_json(c, out, j);
    return;
  }
  CosetAction G = named_group(group, N);
  long level = wohlfahrt_level(G);
  if (what == "level") {
    if (c.format == "csv") {
      emit(c, out, "group,N,level\n" + csv_row({group, std::to_string(N), std::to_string(level)}));
    } else {
      emit_json(c, out, {{"group", group}, {"N", N}, {"level", level}});
    }
    return;
  }
  auto cusps = cusp_data(G);
  if (c.format == "csv") {
    std::string s = "rep,width,orbit_size\n";
    for (const auto& cd : cusps) s += csv_row({cd.rep_string(), std::to_string(cd.width), std::to_string(cd.orbit_size)});
    emit(c, out, s);
    return;
  }
  json cj = json::array();
  for (const auto& cd : cusps) cj.push_back({{"rep", cd.rep_string()}, {"width", cd.width}});
  emit_json(c, out,
            {{"group", group},
             {"N", N},
             {"degree", G.degree},
             {"cusps", cj},
             {"level", level},
             {"index", G.degree},
             {"contains_minus_identity", G.contains_minus_identity}});
}

// ---- holonomy

json bound_json(const BoundReport& r, int bits) {
  return {{"N", r.N},
          {"slack", fmt(r.slack, bits)},
          {"r", fmt(r.r, bits)},
          {"log_phi_prime", fmt(r.log_phi_prime, bits)},
          {"m_value", fmt(r.m_value, bits)},
          {"m_err", fmt(r.m_err, 53)},
          {"rhs", fmt(r.rhs, bits)},
          {"rhs_upper", fmt(r.rhs_upper, bits)},
          {"analytic_lower", fmt(r.lower, bits)},
          {"nodes", r.nodes}};
}

BigFloat slack_or_default(const std::string& s, const PrecisionCtx& ctx) {
  return s.empty() ? default_slack(ctx.work()) : parse_real(s, ctx.work());
}

void run_holonomy_bound(const Common& c, long N, const std::string& slack, std::ostream& out) {
  PrecisionCtx ctx(c.bits);
  BoundReport r = dimension_bound_rhs(N, slack_or_default(slack, ctx), ctx);
  if (c.format == "csv") {
    emit(c, out,
         "N,slack,log_phi_prime,m_value,m_err,rhs,analytic_lower,nodes\n" +
             csv_row({std::to_string(N), fmt(r.slack, c.bits), fmt(r.log_phi_prime, c.bits), fmt(r.m_value, c.bits),
                      fmt(r.m_err, 53), fmt(r.rhs, c.bits), fmt(r.lower, c.bits), std::to_string(r.nodes)}));
    return;
  }
  emit_json(c, out, bound_json(r, c.bits));
}

void run_holonomy_gap(const Common& c, const std::string& Ns, const std::string& slack, std::ostream& out) {
  PrecisionCtx ctx(c.bits);
  auto list = parse_long_list(Ns);
  BigFloat s = slack_or_default(slack, ctx);
  if (c.format == "csv") {
    std::ostringstream os;
    write_gap_csv(os, gap_report(list, s, ctx));
    emit(c, out, os.str());
    return;
  }
  json arr = json::array();
  for (const auto& row : gap_report(list, s, ctx)) {
    json j = {{"N", row.N}, {"ok", row.ok}};
    if (row.ok) {
      j["bound"] = bound_json(row.bound, c.bits);
      j["exact_dim"] = row.exact_dim.get_str();
      j["ratio_to_N3logN"] = fmt(row.ratio_to_N3logN, 53);
    } else {
      j["failure"] = row.failure;
    }
    arr.push_back(j);
  }
  emit_json(c, out, arr);
}

struct SiegelArgs {
  long m = 2, d = 1, alpha = 10, D = 0;
  std::string rho;
  long nodes = 64;
};

void run_holonomy_siegel(const Common& c, const SiegelArgs& a, std::ostream& out) {
  SiegelInstance inst = binomial_instance(a.m, a.d, a.alpha);
  inst.D = a.D;
  SiegelResult res = siegel_construct(inst);
  json coeffs = json::array();
  for (const auto& v : res.coeffs) coeffs.push_back(v.get_str());
  json j = {{"m", a.m},
            {"d", a.d},
            {"alpha", a.alpha},
            {"D", res.D},
            {"unknowns", res.unknowns},
            {"conditions", res.conditions},
            {"kernel_dim", res.kernel_dim},
            {"order", res.order},
            {"lowest", res.lowest.get_str()},
            {"lowest_integral", res.lowest_integral},
            {"log_height", shortest_double(res.log_height)},
            {"coeffs", coeffs}};
  if (!a.rho.empty()) {
    PrecisionCtx ctx(c.bits);
    LexiReport lx = lexi_check(inst, res, parse_real(a.rho, ctx.work()), a.nodes, ctx);
    j["lexi"] = {{"log_abs_c", fmt(lx.log_abs_c, 53)},
                 {"mean_log_G", fmt(lx.mean_log_G, 53)},
                 {"est_err", fmt(lx.est_err, 53)},
                 {"holds", lx.holds}};
  }
  if (c.format == "csv") {
    emit(c, out,
         "m,d,alpha,D,unknowns,conditions,order,lowest,lowest_integral,log_height\n" +
             csv_row({std::to_string(a.m), std::to_string(a.d), std::to_string(a.alpha), std::to_string(res.D),
                      std::to_string(res.unknowns), std::to_string(res.conditions), std::to_string(res.order),
                      res.lowest.get_str(), res.lowest_integral ? "1" : "0", shortest_double(res.log_height)}));
    return;
  }
  emit_json(c, out, j);
}

json error_object(const char* kind, const std::string& msg) { return {{"error", {{"kind", kind}, {"message", msg}}}}; }

}  // namespace

int default_bits() {
  const char* env = std::getenv("UDC_DEFAULT_BITS");
  if (env) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 16 && v <= 1 << 16) return static_cast<int>(v);
  }
  return 256;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"udc: exact series, uniformization radii, covering maps, value distribution and SL2(Z) subgroups"};
  app.require_subcommand(1);
  Common c;
  c.bits = default_bits();

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--bits", c.bits, "working precision in bits (default 256 or UDC_DEFAULT_BITS)")
        ->check(CLI::Range(16, 1 << 16));
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("-o,--output", c.output, "write to this file instead of stdout");
  };
  std::function<void()> action;

  // series
  SeriesArgs sa;
  auto* series = app.add_subcommand("series", "exact q-expansions");
  add_common(series);
  series->add_option("name", sa.name, "lambda | h | j13 | e4 | elliptic_e | catalan_square | eta")
      ->required()
      ->check(CLI::IsMember({"lambda", "h", "j13", "e4", "elliptic_e", "catalan_square", "eta"}));
  series->add_option("--order", sa.order, "number of q-powers")->check(CLI::Range(1L, 100000L));
  series->add_option("--root", sa.root, "take the n-th root")->check(CLI::Range(1L, 1000L));
  series->add_flag("--revert", sa.revert, "compositional inverse");
  series->add_flag("--denominators", sa.denominators, "add the denominator profile");
  series->callback([&] { action = [&] { run_series(c, sa, out); }; });

  // radius
  long N = 2;
  auto* radius = app.add_subcommand("radius", "uniformization radius gamma_N");
  add_common(radius);
  radius->add_option("--N", N, "number of punctures")->required()->check(CLI::Range(2L, 1000000L));
  radius->callback([&] { action = [&] { run_radius(c, N, out); }; });

  // cover
  std::string x = "0", r = "0.5";
  long samples = 256;
  bool full = false;
  auto* cover = app.add_subcommand("cover", "universal covering map F_N");
  cover->require_subcommand(1);
  auto* ceval = cover->add_subcommand("eval", "F_N(x) with its reduction word");
  add_common(ceval);
  ceval->add_option("--N", N)->required()->check(CLI::Range(2L, 64L));
  ceval->add_option("--x", x, "point re,im in the unit disc")->required();
  ceval->callback([&] { action = [&] { run_cover_eval(c, N, x, out); }; });
  auto* cscan = cover->add_subcommand("scan", "max log|F_N| on |x| = r");
  add_common(cscan);
  cscan->add_option("--N", N)->required()->check(CLI::Range(2L, 64L));
  cscan->add_option("--r", r)->required();
  cscan->add_option("--samples", samples)->check(CLI::Range(1L, 10000000L));
  cscan->add_flag("--full-circle", full);
  cscan->callback([&] { action = [&] { run_cover_scan(c, N, r, samples, full, out); }; });

  // nevan
  std::string Ns = "2..16", rs = "0.9,0.99,0.999";
  double density = 64;
  auto* nevan = app.add_subcommand("nevan", "proximity functions of F_N^N");
  nevan->require_subcommand(1);
  auto* growth = nevan->add_subcommand("growth", "m(r, p(F_N)) / log(N/(1-r)) on a grid");
  add_common(growth);
  growth->add_option("--N", Ns, "list such as 2..16 or 2,4,8");
  growth->add_option("--r", rs, "comma-separated radii");
  growth->add_option("--jobs", c.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  growth->add_option("--density", density)->check(CLI::Range(1.0, 1e6));
  growth->callback([&] { action = [&] { run_nevan_growth(c, Ns, rs, density, out); }; });
  auto* prox = nevan->add_subcommand("proximity", "m(r, F_N^N)");
  add_common(prox);
  prox->add_option("--N", N)->required()->check(CLI::Range(2L, 64L));
  prox->add_option("--r", r)->required();
  prox->add_option("--density", density)->check(CLI::Range(1.0, 1e6));
  prox->callback([&] { action = [&] { run_nevan_proximity(c, N, r, density, out); }; });

  // sl2
  std::string group = "gamma";
  auto* sl2 = app.add_subcommand("sl2", "finite-index subgroups of SL2(Z)");
  sl2->require_subcommand(1);
  for (const char* what : {"level", "cusps", "info", "index"}) {
    auto* sub = sl2->add_subcommand(what);
    add_common(sub);
    if (std::string(what) != "index") {
      sub->add_option("--group", group)->check(CLI::IsMember({"full", "gamma", "gamma0", "gamma_upper0"}));
    }
    sub->add_option("--N", N)->required()->check(CLI::Range(1L, 64L));
    std::string w = what;
    sub->callback([&, w] { action = [&, w] { run_sl2(c, w, group, N, out); }; });
  }

  // holonomy
  std::string slack;
  std::string gapNs = "2,4,8,16";
  SiegelArgs ga;
  auto* hol = app.add_subcommand("holonomy", "dimension bound and auxiliary functions");
  hol->require_subcommand(1);
  auto* hb = hol->add_subcommand("bound", "e m(r, F_N^N) / log phi'(0)");
  add_common(hb);
  hb->add_option("--N", N)->required()->check(CLI::Range(2L, 64L));
  hb->add_option("--slack", slack, "r = 1 - slack/N^3 (default zeta(3)/4)");
  hb->callback([&] { action = [&] { run_holonomy_bound(c, N, slack, out); }; });
  auto* hg = hol->add_subcommand("gap", "bound against the congruence dimension");
  add_common(hg);
  hg->add_option("--N", gapNs, "list of even N");
  hg->add_option("--slack", slack);
  hg->callback([&] { action = [&] { run_holonomy_gap(c, gapNs, slack, out); }; });
  auto* hs = hol->add_subcommand("siegel", "auxiliary function for f_i = (1-16x)^{i/8}");
  add_common(hs);
  hs->add_option("--m", ga.m)->check(CLI::Range(1L, 8L));
  hs->add_option("--d", ga.d)->check(CLI::Range(1L, 2L));
  hs->add_option("--alpha", ga.alpha)->check(CLI::Range(1L, 30L));
  hs->add_option("--D", ga.D, "0 chooses automatically")->check(CLI::Range(0L, 200L));
  hs->add_option("--rho", ga.rho, "also run the torus check at this radius");
  hs->add_option("--nodes", ga.nodes)->check(CLI::Range(8L, 4096L));
  hs->callback([&] { action = [&] { run_holonomy_siegel(c, ga, out); }; });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    action();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const InfeasibleSlack& e) {
    json j = error_object("infeasible_slack", e.what());
    j["error"]["max_slack"] = shortest_double(e.max_slack);
    err << j.dump() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << error_object("invalid_argument", e.what()).dump() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    err << error_object("domain_error", e.what()).dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << error_object("failure", e.what()).dump() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace udc::cli
