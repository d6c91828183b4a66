// SPDX-License-Identifier: MIT
#include "g2eh/suites.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <random>
#include <sstream>
#include <stdexcept>
#include <type_traits>

#include "g2eh/eguchi_hanson.hpp"
#include "g2eh/fibre_elliptic.hpp"
#include "g2eh/g2.hpp"
#include "g2eh/glue_schedule.hpp"
#include "g2eh/hk4.hpp"
#include "g2eh/topology.hpp"

namespace g2eh {

namespace {

std::string sci(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

std::string trim(std::string s) {
  auto ws = [](unsigned char c) { return std::isspace(c); };
  while (!s.empty() && ws(s.back())) s.pop_back();
  size_t i = 0;
  while (i < s.size() && ws(s[i])) ++i;
  return s.substr(i);
}

}  // namespace

double RunConfig::tol(const std::string& name, double fallback) const {
  auto it = tolerances.find(name);
  return it == tolerances.end() ? fallback : it->second;
}

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "mode") {
    if (value == "exact")
      cfg.mode = Mode::Exact;
    else if (value == "float")
      cfg.mode = Mode::Float;
    else
      throw std::invalid_argument("mode must be exact or float");
  } else if (key == "seed") {
    cfg.seed = std::stoull(value);
  } else if (key == "gamma") {
    cfg.gamma = parse_rational(value);
  } else if (key == "a") {
    cfg.a = std::stod(value);
  } else if (key == "t") {
    cfg.t = std::stod(value);
  } else if (key == "out") {
    cfg.out_dir = value;
  } else if (key.rfind("tol.", 0) == 0) {
    cfg.tolerances[key.substr(4)] = std::stod(value);
  } else {
    throw std::invalid_argument("unknown config key: " + key);
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("config line without '=': " + line);
    apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

std::string CsvTable::str() const {
  std::ostringstream os;
  auto row = [&](const std::vector<std::string>& r) {
    for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << "\n";
  };
  row(header);
  for (const auto& r : rows) row(r);
  return os.str();
}

bool SuiteResult::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void SuiteResult::exact(const std::string& id, const std::string& ref, const std::string& measured,
                        const std::string& expected) {
  add({id, ref, measured == expected, measured, expected, 0});
}

void SuiteResult::below(const std::string& id, const std::string& ref, double measured, double bound) {
  add({id, ref, std::isfinite(measured) && measured < bound, sci(measured), "< " + sci(bound), bound});
}

void SuiteResult::within(const std::string& id, const std::string& ref, double measured, double expected, double tol) {
  add({id, ref, std::isfinite(measured) && std::fabs(measured - expected) <= tol, sci(measured), sci(expected), tol});
}

void SuiteResult::flag(const std::string& id, const std::string& ref, bool ok, const std::string& detail) {
  add({id, ref, ok, ok ? "true" : (detail.empty() ? "false" : detail), "true", 0});
}

// ---------------------------------------------------------------- identities

namespace {

template <class S> void run_identities(SuiteResult& R) {
  const double tol = std::is_same_v<S, double> ? 1e-12 : 0.0;
  auto same = [&](const KForm<S>& x, const KForm<S>& y) { return (x - y).is_zero(tol); };
  const ModelSpace<S> E7 = ModelSpace<S>::euclidean(7);

  const KForm<S> phi = phi0<S>();
  R.flag("phi0.theta", "Theta(phi0) equals *phi0 coefficient-for-coefficient",
         same(theta(phi), psi0<S>()) && same(theta(phi), hodge(E7, phi)));
  auto [g, o] = metric_from_phi(phi);
  R.flag("phi0.metric", "phi0 induces the Euclidean metric and orientation",
         equal(g, Mat<S>::identity(7), tol) && o == 1);

  const auto frame = QuaternionicFrame<S>::standard();
  const ModelSpace<S> X = frame.space();
  int bad = 0, total = 0;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 4; ++i) {
      KForm<S> a = KForm<S>::dx(4, {i + 1});
      ++total;
      if (!same(hodge(X, wedge(a, frame.omega[k])), -frame.apply_J(k, a))) ++bad;
    }
  R.exact("hk.star_wedge_omega", "*(a ^ omega_k) = -J_k a over all basis 1-forms and k", std::to_string(bad) + "/" +
          std::to_string(total) + " mismatches", "0/" + std::to_string(total) + " mismatches");
  R.flag("hk.frame", "quaternion relations, self-duality and compatibility of the flat triple", check_frame(frame).ok);

  bad = 0;
  for (int i = 0; i < 7; ++i) {
    KForm<S> a = KForm<S>::dx(7, {i + 1});
    KForm<S> lhs = hodge(E7, wedge(phi, hodge(E7, wedge(phi, a))));
    if (!same(lhs, S(-4) * a)) ++bad;
  }
  R.exact("phi0.minus_four", "*(phi ^ *(phi ^ a)) = -4 a for the 7 basis 1-forms", std::to_string(bad) + " mismatches",
          "0 mismatches");

  G2Structure<S> G(phi);
  std::string ranks3 = std::to_string(rank(G.projector(3, 1))) + "," + std::to_string(rank(G.projector(3, 7))) + "," +
                       std::to_string(rank(G.projector(3, 27)));
  std::string ranks2 = std::to_string(rank(G.projector(2, 7))) + "," + std::to_string(rank(G.projector(2, 14)));
  R.exact("types.lambda3_ranks", "ranks of the type projectors on 3-forms", ranks3, "1,7,27");
  R.exact("types.lambda2_ranks", "ranks of the type projectors on 2-forms", ranks2, "7,14");

  const S ts[3] = {S(1), S(2), Num<S>::from_ratio(1, 3)};
  const char* tn[3] = {"1", "2", "1/3"};
  for (int ti = 0; ti < 3; ++ti) {
    const S t = ts[ti];
    ProductG2Point<S> P(frame, t);
    bad = 0;
    total = 0;
    for (int k = 0; k <= 4; ++k)
      for (int l = 0; l <= 3; ++l) {
        const Basis& BV = Basis::get(4, k);
        const Basis& BH = Basis::get(3, l);
        S f(1);
        for (int e = 0; e < 4 - 2 * k; ++e) f *= t;
        for (int e = 0; e < 2 * k - 4; ++e) f /= t;
        if ((k * l) % 2) f = -f;
        for (int i = 0; i < BV.size(); ++i)
          for (int j = 0; j < BH.size(); ++j) {
            KForm<S> a(4, k), b(3, l);
            a.c[i] = S(1);
            b.c[j] = S(1);
            KForm<S> lhs = P.star_t(wedge(embed_vertical(a), embed_horizontal(b)));
            KForm<S> rhs = f * wedge(embed_vertical(hodge(P.X, a)), embed_horizontal(hodge(P.R3, b)));
            ++total;
            if (!same(lhs, rhs)) ++bad;
          }
      }
    R.exact(std::string("product.star_split.t=") + tn[ti],
            "*_t(a ^ b) = (-1)^(kl) t^(4-2k) (*_X a) ^ (*_R3 b) over all bidegree basis pairs",
            std::to_string(bad) + "/" + std::to_string(total) + " mismatches",
            "0/" + std::to_string(total) + " mismatches");
  }
}

}  // namespace

SuiteResult suite_identities(const RunConfig& cfg) {
  SuiteResult R;
  R.name = "identities";
  if (cfg.mode == Mode::Exact)
    run_identities<Rational>(R);
  else
    run_identities<double>(R);
  R.notes.push_back(cfg.mode == Mode::Exact ? "exact rational arithmetic" : "double precision, tolerance 1e-12");
  return R;
}

// ------------------------------------------------------------- linearization

namespace {

KForm<double> random_positive_3form(std::mt19937_64& rng, double spread) {
  std::uniform_real_distribution<double> U(-spread, spread);
  for (;;) {
    KForm<double> p = phi0<double>();
    for (auto& c : p.c) c += U(rng);
    if (is_positive(p)) return p;
  }
}

double jacobian_error(const KForm<double>& phi, double eps) {
  G2Structure<double> G(phi);
  double num = 0, den = 0;
  for (int i = 0; i < 35; ++i) {
    KForm<double> e(7, 3);
    e.c[i] = 1;
    KForm<double> fd = (1.0 / (2 * eps)) * (theta(phi + eps * e) - theta(phi - eps * e));
    KForm<double> an = G.linearize_theta(e);
    for (int j = 0; j < 35; ++j) {
      num += (fd.c[j] - an.c[j]) * (fd.c[j] - an.c[j]);
      den += an.c[j] * an.c[j];
    }
  }
  return std::sqrt(num / den);
}

}  // namespace

SuiteResult suite_linearization(const RunConfig& cfg) {
  SuiteResult R;
  R.name = "linearization";
  const double eps = 1e-5, tol = cfg.tol("jacobian", 1e-4);
  std::mt19937_64 rng(cfg.seed);
  CsvTable tab{"jacobian", {"sample", "relative_error"}, {}};
  for (int s = 0; s <= 10; ++s) {
    KForm<double> phi = s == 0 ? phi0<double>() : random_positive_3form(rng, 0.15);
    double err = jacobian_error(phi, eps);
    char id[40];
    std::snprintf(id, sizeof id, "jacobian.sample_%02d", s);
    R.below(id, s == 0 ? "D Theta at phi0 against central differences, eps = 1e-5"
                       : "D Theta at a seeded random positive 3-form against central differences, eps = 1e-5",
            err, tol);
    tab.rows.push_back({std::to_string(s), sci(err)});
  }
  R.tables.push_back(tab);

  CsvTable rem{"remainder", {"sample", "xi_norm", "F_norm"}, {}};
  std::normal_distribution<double> N;
  for (int s = 0; s < 3; ++s) {
    KForm<double> phi = s == 0 ? phi0<double>() : random_positive_3form(rng, 0.15);
    G2Structure<double> G(phi);
    KForm<double> dir(7, 3);
    for (auto& c : dir.c) c = N(rng);
    dir = (1.0 / norm(G.space, dir)) * dir;
    std::vector<double> xs, ys;
    for (double m : {1e-2, 1e-3, 1e-4}) {
      double f = norm(G.space, remainder_F(G, m * dir));
      xs.push_back(m);
      ys.push_back(f);
      rem.rows.push_back({std::to_string(s), sci(m), sci(f)});
    }
    R.within("remainder.slope_" + std::to_string(s), "log-log slope of |F(xi)| against |xi| over 1e-2, 1e-3, 1e-4",
             loglog_slope(xs, ys), 2.0, 0.05);
  }
  R.tables.push_back(rem);
  R.notes.push_back("finite differences are evaluated in double precision regardless of --mode");
  R.notes.push_back("seed " + std::to_string(cfg.seed));
  return R;
}

// ---------------------------------------------------------- product formulas

namespace {

template <class S> void run_product_formulas(SuiteResult& R) {
  const double tol = std::is_same_v<S, double> ? 1e-11 : 0.0;
  const auto frame = QuaternionicFrame<S>::standard();
  const S ts[3] = {S(1), S(2), Num<S>::from_ratio(1, 3)};
  const char* tn[3] = {"1", "2", "1/3"};
  for (int ti = 0; ti < 3; ++ti) {
    ProductG2Point<S> P(frame, ts[ti]);
    G2Structure<S> G(P.phi_t);
    std::vector<KForm<S>> inputs;
    for (int i = 0; i < 4; ++i) {
      KForm<S> eta(4, 3);
      eta.c[i] = S(1);
      inputs.push_back(embed_vertical(eta));
    }
    const int pairs[3][2] = {{2, 3}, {3, 1}, {1, 2}};
    for (int i = 0; i < 4; ++i)
      for (const auto& pr : pairs)
        inputs.push_back(wedge(embed_vertical(KForm<S>::dx(4, {i + 1})), KForm<S>::dx(7, {pr[0], pr[1]})));
    int bad7 = 0, badD = 0;
    for (const auto& g : inputs) {
      if (!(P.pi7_formula(g) - G.component(g, 7)).is_zero(tol) || !(P.pi7_formula(g) - P.pi7_bruteforce(g)).is_zero(tol))
        ++bad7;
      if (!(P.dtheta_formula(g) - G.linearize_theta(g)).is_zero(tol)) ++badD;
    }
    const std::string n = std::to_string(inputs.size());
    R.exact(std::string("pi7.t=") + tn[ti], "closed pi_7 formulas on types (3,0) and (1,2) against projection",
            std::to_string(bad7) + "/" + n + " mismatches", "0/" + n + " mismatches");
    R.exact(std::string("dtheta.t=") + tn[ti], "closed D Theta formulas on types (3,0) and (1,2) against projection",
            std::to_string(badD) + "/" + n + " mismatches", "0/" + n + " mismatches");
  }
}

}  // namespace

SuiteResult suite_product_formulas(const RunConfig& cfg) {
  SuiteResult R;
  R.name = "product-formulas";
  if (cfg.mode == Mode::Exact)
    run_product_formulas<Rational>(R);
  else
    run_product_formulas<double>(R);
  R.notes.push_back("spanning set: 4 vertical 3-forms and 12 products dy_i ^ dx_ab");
  return R;
}

SuiteResult suite_appendix_a(const RunConfig&) {
  SuiteResult R;
  R.name = "appendix-a";
  AppendixAReport a = appendixA_maps(QuaternionicFrame<Rational>::standard());
  R.exact("A.kernel_dim", "dimension of ker A", std::to_string(a.dim_ker_A), "15");
  R.exact("B.rank", "rank of B", std::to_string(a.rank_B), "15");
  R.flag("B.image_is_ker_A", "image of B equals ker A", a.image_B_equals_ker_A);
  R.exact("C.rank", "rank of C", std::to_string(a.rank_C), "48");
  R.flag("B.example", "B sends h^1_11 = 1/2 to f^1 (x) *(J_1 f^1)", a.B_example_matches);
  R.notes.push_back("exact rational linear algebra");
  return R;
}

// ------------------------------------------------------------- Eguchi-Hanson

SuiteResult suite_eguchi_hanson(const RunConfig& cfg) {
  SuiteResult R;
  R.name = "eh";
  const double a = cfg.a;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> U(-1, 1);

  double worst = 0;
  for (double r = 1e-2; r < 1e2; r *= 1.07) {
    double x = potential_form1(a, r), y = potential_form2(a, r);
    worst = std::max(worst, std::fabs(x - y) / std::max(1.0, std::fabs(x)));
  }
  R.below("potential.forms_agree", "the two closed forms of f_a agree on r in [1e-2, 1e2]", worst,
          cfg.tol("potential", 1e-12));

  DecayFit fit = ale_decay(a, 5, 50, 12);
  R.within("ale.slope", "log-log slope of |h_a - h_0| on r in [5, 50]", fit.slope, -4.0, 0.1);
  CsvTable dec{"ale_decay", {"r", "abs_h_minus_h0", "fitted_slope"}, {}};
  for (size_t i = 0; i < fit.r.size(); ++i) dec.rows.push_back({sci(fit.r[i]), sci(fit.dev[i]), sci(fit.slope)});
  R.tables.push_back(dec);

  const double sa = std::sqrt(a);
  MetricField gf = [a](const Point& y) { return metric_h(EHParams(a), y); };
  CsvTable ric{"ricci", {"point", "r", "max_ricci_h", "max_ricci_h_half"}, {}};
  for (int s = 0; s < 5; ++s) {
    Point q(4);
    double r;
    do {
      for (auto& v : q) v = 2 * sa * U(rng);
      r = radius(q);
    } while (r < sa || r > 4 * sa);
    double R1 = max_abs(ricci_fd(gf, q, r / 200)), R2 = max_abs(ricci_fd(gf, q, r / 400));
    R.below("ricci.point_" + std::to_string(s), "finite-difference Ricci of h_a, step r/400", R2, cfg.tol("ricci", 1e-4));
    R.flag("ricci.halving_" + std::to_string(s), "Ricci residual does not grow under step halving (or sits below 1e-9)",
           R2 < R1 || R2 < 1e-9, sci(R1) + " -> " + sci(R2));
    ric.rows.push_back({std::to_string(s), sci(r), sci(R1), sci(R2)});
  }
  R.tables.push_back(ric);

  for (double aa : {1.0, 2.5}) {
    BoltArea b = bolt_area(EHParams(aa));
    R.below("bolt.area_a=" + std::string(aa == 1.0 ? "1" : "2.5"), "relative error of the bolt area against pi a",
            std::fabs(b.area / (M_PI * aa) - 1), 1e-3);
  }

  double tp = 0;
  for (double t : {1.0, 0.5, cfg.t}) {
    for (int s = 0; s < 4; ++s) {
      Point x(7);
      for (int i = 0; i < 3; ++i) x[i] = U(rng);
      double r;
      do {
        for (int i = 3; i < 7; ++i) x[i] = 2 * sa * U(rng);
        r = radius(Point(x.begin() + 3, x.end()));
      } while (r < 0.3 * sa);
      ProductStructure ps = product_structure(EHParams(a, t), x);
      tp = std::max(tp, (theta(ps.phi) - ps.psi).flat_norm());
    }
  }
  R.below("product.theta_equals_psi", "Theta(phi_{a,t}) = psi_{a,t} at seeded points, t in {1, 1/2, --t}", tp,
          cfg.tol("theta_psi", 1e-9));

  Point x{0.1, 0.2, -0.3, 0.3 * sa, -0.7 * sa, 0.5 * sa, 0.2 * sa};
  FormField pf = product_phi_field(EHParams(a, 1));
  std::vector<double> mags;
  double diff = 0;
  CsvTable fr{"fundamental_relation", {"h", "max_lhs_rhs", "lhs_minus_rhs"}, {}};
  for (double h : {0.05, 0.025, 0.0125}) {
    FundamentalTerms T = fundamental_relation_terms(pf, x, h * sa);
    double m = std::max(T.lhs.flat_norm(), T.rhs.flat_norm());
    mags.push_back(m);
    diff = std::max(diff, T.residual);
    fr.rows.push_back({sci(h * sa), sci(m), sci(T.residual)});
  }
  R.tables.push_back(fr);
  double ord = std::min(std::log2(mags[0] / mags[1]), std::log2(mags[1] / mags[2]));
  R.flag("fundamental.order", "fundamental-relation terms decay at order >= 1.9 under step halving", ord >= 1.9,
         sci(ord));
  R.below("fundamental.residual", "phi ^ *d phi - psi ^ *d psi on the product structure", diff, 1e-10);
  R.notes.push_back("a = " + sci(a) + ", seed " + std::to_string(cfg.seed));
  return R;
}

// ------------------------------------------------------------------- fibre

namespace {

double bump(double r) { return (r <= 1 || r >= 2) ? 0.0 : std::pow(std::sin(M_PI * (r - 1)), 4); }

// u(r) = M(r)/(2 r^2) + 1/2 int_r^inf s f(s) ds solves -(r^3 u')'/r^3 = f with u -> 0
double flat_bump_oracle(double r) {
  using boost::math::quadrature::gauss_kronrod;
  double M = r <= 1 ? 0.0 : gauss_kronrod<double, 61>::integrate([](double s) { return s * s * s * bump(s); }, 1.0,
                                                                  std::min(r, 2.0), 10, 1e-13);
  double T = r >= 2 ? 0.0 : gauss_kronrod<double, 61>::integrate([](double s) { return s * bump(s); }, std::max(r, 1.0),
                                                                  2.0, 10, 1e-13);
  return M / (2 * r * r) + 0.5 * T;
}

}  // namespace

SuiteResult suite_fibre(const RunConfig& cfg) {
  SuiteResult R;
  R.name = "solve-fibre";
  PoissonOptions opt;
  if (cfg.gamma) {
    double g = cfg.gamma->get_d();
    if (g > 0 && g <= 0.5) opt.gamma = g;
  }
  const double a = cfg.a;

  RadialSolution z = solve_poisson(a, [](double) { return 0.0; }, opt);
  double zm = 0;
  for (double v : z.u) zm = std::max(zm, std::fabs(v));
  R.below("zero_source", "zero source gives the zero solution", zm, 1e-10);

  RadialSolution b = solve_poisson(a, bump, opt);
  R.within("bump.far_slope", "compactly supported source: log-log slope of u on [10, 100]", b.far_slope, -2.0, 0.1);
  R.below("bump.residual", "relative residual of the discrete solve", b.residual, 1e-8);

  RadialSolution fl = solve_poisson(1e-6, bump, opt);
  double worst = 0;
  CsvTable tab{"flat_limit", {"r", "u_solver", "u_oracle"}, {}};
  for (size_t i = 0; i < fl.r.size() && fl.r[i] <= 100; ++i) {
    double o = flat_bump_oracle(fl.r[i]);
    worst = std::max(worst, std::fabs(fl.u[i] - o) / std::fabs(o));
    if (i % 50 == 0) tab.rows.push_back({sci(fl.r[i]), sci(fl.u[i]), sci(o)});
  }
  R.tables.push_back(tab);
  R.below("flat_limit.oracle", "a -> 0 solve against the quadrature solution on r <= 100", worst, 1e-3);

  RateReport rr = verify_rates(a);
  R.within("indicial.root_0", "first indicial root at infinity", rr.roots[0], 0.0, 0.01);
  R.within("indicial.root_1", "second indicial root at infinity", rr.roots[1], -2.0, 0.01);

  const double g = opt.gamma;
  auto matched = [g](double r) { return r < 1 ? 4 / g : std::pow(r, -4 + g); };
  RadialSolution m = solve_poisson(a, matched, opt);
  R.flag("decay_window", "source O(r^(-4+gamma)) without r^-2 part: slope in [-2.1, -2+gamma+0.1]", m.in_window,
         sci(m.far_slope));
  R.within("refinement_order", "observed order under node doubling", refinement_order(a, bump, opt), 2.0, 0.2);
  R.notes.push_back("gamma = " + sci(g) + ", r in [" + sci(opt.r0) + ", " + sci(opt.rmax) + "], " +
                    std::to_string(opt.nodes) + " nodes");
  return R;
}

// ------------------------------------------------------------ torsion table

namespace {

std::string cell_str(const NormExponent& e) {
  if (e.zero) return "0";
  return e.exponent.str() + (e.logarithmic ? " (log)" : "");
}

}  // namespace

SuiteResult suite_torsion_table(const RunConfig& cfg) {
  SuiteResult R;
  R.name = "torsion-table";
  if (cfg.gamma && (*cfg.gamma <= 0 || *cfg.gamma >= 1)) throw std::invalid_argument("gamma must lie in (0, 1)");
  TorsionTable T = torsion_table(cfg.gamma);
  auto golden = reference_table();
  const char* col[3] = {"C0", "L2", "L14"};
  CsvTable tab{"torsion_table", {"region", "C0", "L2", "L14"}, {}};
  if (cfg.gamma) tab.header.insert(tab.header.end(), {"C0_at_gamma", "L2_at_gamma", "L14_at_gamma"});
  for (size_t i = 0; i < T.rows.size(); ++i) {
    std::vector<std::string> row{"\"" + T.rows[i].label + "\""};
    for (int c = 0; c < 3; ++c) {
      row.push_back(cell_str(T.rows[i].cells[c]));
      R.exact("cell.row" + std::to_string(i + 1) + "." + col[c], "norm exponent of d(Theta(phi) - psi) on " + T.rows[i].label,
              cell_str(T.rows[i].cells[c]), cell_str(golden[i][c]));
    }
    if (cfg.gamma)
      for (int c = 0; c < 3; ++c) {
        const auto& e = T.rows[i].cells[c];
        row.push_back(e.zero ? "0" : e.exponent.at(*cfg.gamma).get_str());
      }
    tab.rows.push_back(row);
  }
  R.tables.push_back(tab);
  const char* agg[3] = {"16/9", "32/9", "8/7"};
  for (int c = 0; c < 3; ++c)
    R.exact(std::string("aggregate.") + col[c], "smallest exponent over the regions", T.aggregate[c].str(), agg[c]);
  AlphaWindow w = alpha_window(T);
  R.exact("alpha_window", "min(C0, L2 - 7/2, L14 + 1/2) of the aggregates", w.alpha.get_str(), "1/18");
  for (int k = 0; k < 2; ++k)
    for (const auto& bc : boundary_consistency(k, cfg.gamma)) {
      std::string id = "boundary.k" + std::to_string(k) + ".r" + std::to_string(bc.left) + "r" + std::to_string(bc.right);
      if (bc.right <= 3)
        R.exact(id, "pointwise bounds of adjacent regions agree at the shared boundary", bc.right_value.str(),
                bc.left_value.str());
      else
        R.notes.push_back(id + ": " + bc.left_value.str() + " vs " + bc.right_value.str() + " (reported only)");
    }
  R.notes.push_back("boundary points belong to the lower-indexed region");
  R.notes.push_back(cfg.gamma ? "gamma = " + cfg.gamma->get_str() : "gamma symbolic");
  return R;
}

SuiteResult suite_alpha_window(const RunConfig& cfg) {
  SuiteResult R;
  R.name = "alpha-window";
  if (cfg.gamma && (*cfg.gamma <= 0 || *cfg.gamma >= 1)) throw std::invalid_argument("gamma must lie in (0, 1)");
  AlphaWindow w = alpha_window(torsion_table(cfg.gamma));
  R.exact("alpha", "alpha window from the aggregated exponents", w.alpha.get_str(), "1/18");
  R.flag("nonempty", "window is non-empty", !w.empty);
  R.exact("limits", "C0, L2 - 7/2, L14 + 1/2",
          w.limits[0].get_str() + "," + w.limits[1].get_str() + "," + w.limits[2].get_str(), "16/9,1/18,23/14");
  AlphaWindow ex = alpha_window(2, 4, 2);
  R.exact("example.2_4_2", "alpha window of exponents (2, 4, 2)", ex.alpha.get_str(), "1/2");
  AlphaWindow em = alpha_window(2, Num<Rational>::from_ratio(7, 2), 2);
  R.flag("example.empty", "L2 exponent 7/2 leaves an empty window", em.empty && em.alpha == 0);
  return R;
}

SuiteResult suite_betti(const RunConfig&, const std::string& example) {
  SuiteResult R;
  R.name = "betti";
  std::vector<std::string> names;
  if (example == "all")
    names = preset_names();
  else if (std::find(preset_names().begin(), preset_names().end(), example) != preset_names().end())
    names = {example};
  else
    throw std::invalid_argument("unknown example: " + example);
  CsvTable tab{"betti", {"example", "quotient", "singular", "twisted", "N"}, {}};
  for (const auto& n : names) {
    PresetReport p = preset(n);
    for (const auto& c : p.checks)
      R.exact(n + "." + c.id, "Betti bookkeeping", std::to_string(c.measured), std::to_string(c.expected));
    R.flag(n + ".poincare_duality", "b^k(N) = b^(7-k)(N)", p.result.poincare_dual(), p.result.str());
    for (const auto& f : p.flags) R.notes.push_back(n + ": " + f);
    tab.rows.push_back({n, "\"" + p.quotient.str() + "\"", "\"" + p.singular.str() + "\"",
                        p.twisted ? "\"" + p.twisted->str() + "\"" : "", "\"" + p.result.str() + "\""});
  }
  R.tables.push_back(tab);
  return R;
}

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> n{"identities", "linearization", "product-formulas", "appendix-a"};
  return n;
}

SuiteResult run_verify_suite(const std::string& name, const RunConfig& cfg) {
  if (name == "identities") return suite_identities(cfg);
  if (name == "linearization") return suite_linearization(cfg);
  if (name == "product-formulas") return suite_product_formulas(cfg);
  if (name == "appendix-a") return suite_appendix_a(cfg);
  throw std::invalid_argument("unknown suite: " + name);
}

std::string report_json(const std::string& command, const RunConfig& cfg, const std::vector<SuiteResult>& suites) {
  using nlohmann::json;
  json j;
  j["header"] = {{"tool", "g2eh"}, {"format", 1}};
  j["command"] = command;
  json c = {{"mode", cfg.mode == Mode::Exact ? "exact" : "float"},
            {"seed", cfg.seed},
            {"a", cfg.a},
            {"t", cfg.t},
            {"gamma", cfg.gamma ? json(cfg.gamma->get_str()) : json(nullptr)}};
  json tols = json::object();
  for (const auto& [k, v] : cfg.tolerances) tols[k] = v;
  c["tolerances"] = tols;
  j["config"] = c;
  long passed = 0, failed = 0;
  json arr = json::array();
  for (const auto& s : suites) {
    std::vector<Check> sorted = s.checks;
    std::stable_sort(sorted.begin(), sorted.end(), [](const Check& x, const Check& y) { return x.id < y.id; });
    json checks = json::array();
    for (const auto& ch : sorted) {
      checks.push_back({{"id", ch.id},
                        {"ref", ch.ref},
                        {"status", ch.pass ? "pass" : "fail"},
                        {"measured", ch.measured},
                        {"expected", ch.expected},
                        {"tolerance", ch.tolerance}});
      (ch.pass ? passed : failed)++;
    }
    arr.push_back({{"name", s.name}, {"status", s.pass() ? "pass" : "fail"}, {"checks", checks}, {"notes", s.notes}});
  }
  j["suites"] = arr;
  j["summary"] = {{"passed", passed}, {"failed", failed}, {"status", failed == 0 ? "pass" : "fail"}};
  return j.dump(2) + "\n";
}

}  // namespace g2eh
