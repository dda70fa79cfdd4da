#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "regint/cli.hpp"
#include "regint/errors.hpp"
#include "regint/lattice.hpp"
#include "regint/mellin.hpp"
#include "regint/padic.hpp"
#include "regint/pairings.hpp"

namespace regint::cli {
namespace {

struct Globals {
  bool json = false;
  bool csv = false;
  std::uint64_t seed = kDefaultSeed;
  double tol = std::nan("");  // per-command default when unset
  double tol_or(double fallback) const { return std::isnan(tol) ? fallback : tol; }
};

ordered_json cnum(cplx z) { return {{"re", number(z.real())}, {"im", number(z.imag())}}; }

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", round12(x));
  return buf;
}
std::string fmt(cplx z) {
  if (round12(z.imag()) == 0.0) return fmt(z.real());
  return fmt(z.real()) + (z.imag() < 0 ? " - " : " + ") + fmt(std::abs(z.imag())) + "i";
}

// "re" or "re,im"
cplx parse_complex(const std::string& text) {
  std::istringstream in(text);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(in >> re)) throw UsageError("bad complex number '" + text + "'");
  if (in >> comma) {
    if (comma != ',' || !(in >> im)) throw UsageError("bad complex number '" + text + "'");
  }
  return {re, im};
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << '\n'; }

ordered_json header(const std::string& command) { return {{"schema", kSchema}, {"command", command}}; }

// ---- sample descriptors -----------------------------------------------------

cplx json_complex(const ordered_json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2) return {v[0].get<double>(), v[1].get<double>()};
  if (v.is_object()) return {v.value("re", 0.0), v.value("im", 0.0)};
  throw UsageError("expected a number, [re, im] or {re, im}");
}

EisensteinSpec spec_from(const ordered_json& d) {
  EisensteinSpec s;
  s.s0 = json_complex(d.at("s"));
  s.deriv_order = d.value("n", 0);
  s.regularized = d.value("regularized", false);
  validate(s);
  return s;
}

AutomorphicSample sample_from(const ordered_json& d) {
  const std::string kind = d.value("kind", "");
  if (kind == "constant") return sample_constant(json_complex(d.value("value", ordered_json(1.0))));
  if (kind == "eisenstein") return sample_product({spec_from(d)});
  if (kind == "product") {
    std::vector<EisensteinSpec> specs;
    for (const auto& f : d.at("factors")) specs.push_back(spec_from(f));
    if (specs.empty()) throw UsageError("product needs at least one factor");
    return sample_product(specs);
  }
  if (kind == "hecke") return hecke_T(d.at("p").get<long>(), sample_from(d.at("of")));
  throw UsageError("unknown sample kind '" + kind + "' (constant, eisenstein, product, hecke)");
}

// ---- subcommands ------------------------------------------------------------------

int cmd_lambda(const Globals& g, int order) {
  if (order < -1 || order > 6) throw UsageError("--order must lie in [-1, 6]");
  const auto& d = lambda_laurent_data();
  // the pole of lambda_F sits at 0; lambda_tilde is holomorphic there
  const double lf = order < 0 ? d.residue : d.ell[std::size_t(order)];
  const double lt = order < 0 ? 0.0 : d.m[std::size_t(order)];
  if (g.json) {
    auto j = header("lambda");
    j["order"] = order;
    j["lambda_F"] = cnum(lf);
    j["lambda_tilde"] = cnum(lt);
    emit(j);
  } else {
    std::cout << "lambda_F^(" << order << ")(0) = " << fmt(lf) << '\n';
    std::cout << "lambda_tilde^(" << order << ")(0) = " << fmt(lt) << '\n';
  }
  return 0;
}

int cmd_eis(const Globals& g, const std::string& z_text, const std::string& s_text, int n, bool regularized) {
  const cplx zc = parse_complex(z_text);
  const UpperHalfPoint z{zc.real(), zc.imag()};
  if (!(z.y > 0)) throw UsageError("--z needs y > 0");
  const EisensteinSpec spec{parse_complex(s_text), n, regularized};
  validate(spec);
  const cplx v = eval_spec(z, spec);
  if (g.json) {
    auto j = header("eis");
    j["z"] = {number(z.x), number(z.y)};
    j["s"] = cnum(spec.s0);
    j["n"] = n;
    j["regularized"] = regularized;
    j["value"] = cnum(v);
    emit(j);
  } else {
    std::cout << (regularized ? "E^reg" : "E") << "^(" << n << ")(z, " << fmt(spec.s0) << ") = " << fmt(v) << '\n';
  }
  return 0;
}

int cmd_regint(const Globals& g, const std::string& spec_text, const std::string& file, double T) {
  std::string text = spec_text;
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw UsageError("cannot read " + file);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  if (text.empty()) throw UsageError("need --spec or --file");
  ordered_json desc;
  try {
    desc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw UsageError(std::string("descriptor is not JSON: ") + e.what());
  }
  const auto phi = sample_from(desc);
  RegularizeOptions opts;
  opts.T = T;
  const auto r = Regularizer(phi, opts).integral();
  OracleOptions oo;
  oo.T = T;
  const cplx oracle = subtraction_oracle(phi, oo);
  const double delta = std::abs(r.total - oracle), tol = g.tol_or(1e-4);
  const bool ok = delta <= tol;
  if (g.json) {
    auto j = header("regint");
    j["quantity"] = "regularized_integral";
    j["params"] = {{"sample", desc}, {"label", phi.label}, {"T", T}};
    j["principal"] = cnum(r.principal);
    j["degenerate"] = cnum(r.degenerate);
    j["total"] = cnum(r.total);
    j["error_estimate"] = number(r.diagnostics.contour_error);
    j["oracle"] = cnum(oracle);
    j["oracle_delta"] = number(delta);
    j["tolerance"] = number(tol);
    j["status"] = ok ? "pass" : "fail";
    emit(j);
  } else {
    std::cout << "sample      " << phi.label << '\n'
              << "principal   " << fmt(r.principal) << '\n'
              << "degenerate  " << fmt(r.degenerate) << '\n'
              << "total       " << fmt(r.total) << '\n'
              << "error est.  " << fmt(r.diagnostics.contour_error) << '\n'
              << "oracle      " << fmt(oracle) << "  (delta " << fmt(delta) << ", tol " << fmt(tol) << ")\n";
  }
  if (!ok) std::cerr << "oracle disagreement " << fmt(delta) << " exceeds " << fmt(tol) << '\n';
  return ok ? 0 : 1;
}

int cmd_pairing(const Globals& g, const std::string& mode, int n1, int n2, bool numeric) {
  PairingRequest req;
  if (mode == "unitary")
    req = unitary_request(n1, n2);
  else if (mode == "singular")
    req = singular_request(n1, n2);
  else
    throw UsageError("--mode must be unitary or singular");
  const auto f = pairing_formula(req);
  std::optional<PairingComparison> cmp;
  if (numeric) cmp = compare_with_oracles(req);
  const double tol = g.tol_or(1e-4);
  const bool ok = !cmp || cmp->max_delta <= tol;

  if (g.csv) {
    std::cout << "monomial,weight,weight_value\n";
    for (const auto& t : f.terms())
      std::cout << t.monomial << ',' << t.weight.str() << ',' << fmt(t.weight.convert_to<double>()) << '\n';
  } else if (g.json) {
    auto j = header("pairing");
    j["mode"] = mode;
    j["n1"] = n1;
    j["n2"] = n2;
    j["label"] = f.label;
    auto& terms = j["terms"] = ordered_json::array();
    for (const auto& t : f.terms()) terms.push_back({{"monomial", t.monomial}, {"weight", t.weight.str()}});
    j["value"] = number(f.value());
    j["max_residual"] = number(f.max_residual);
    if (cmp) {
      j["residue_oracle"] = cnum(cmp->residue_oracle);
      j["subtraction_oracle"] = cnum(cmp->subtraction_oracle);
      j["max_delta"] = number(cmp->max_delta);
      j["tolerance"] = number(tol);
      j["status"] = ok ? "pass" : "fail";
    }
    emit(j);
  } else {
    std::cout << f.label << '\n';
    for (const auto& t : f.terms()) std::cout << "  " << t.weight.str() << "  " << t.monomial << '\n';
    std::cout << "value         " << fmt(f.value()) << '\n' << "pole residual " << fmt(f.max_residual) << '\n';
    if (cmp)
      std::cout << "residue oracle      " << fmt(cmp->residue_oracle) << '\n'
                << "subtraction oracle  " << fmt(cmp->subtraction_oracle) << '\n'
                << "max delta           " << fmt(cmp->max_delta) << '\n';
  }
  return ok ? 0 : 1;
}

int cmd_triple(const Globals& g, int n, bool direct) {
  const auto t = triple_product(n);
  std::optional<cplx> d;
  if (direct) d = triple_product_direct(n);
  const double tol = g.tol_or(5e-3);
  const bool ok = !d || std::abs(*d - t.value) <= tol;
  if (g.json) {
    auto j = header("triple");
    j["n"] = n;
    j["value"] = cnum(t.value);
    j["triple_part"] = cnum(t.triple_part);
    j["pairing_part"] = number(t.pairing_part);
    j["detail"] = {{"hol_derivative", cnum(t.detail.hol_derivative)},
                   {"integral_phi", cnum(t.detail.integral_phi)},
                   {"exponent_sum", cnum(t.detail.exponent_sum)},
                   {"pairing", cnum(t.detail.pairing)}};
    if (d) {
      j["direct"] = cnum(*d);
      j["delta"] = number(std::abs(*d - t.value));
      j["tolerance"] = number(tol);
      j["status"] = ok ? "pass" : "fail";
    }
    emit(j);
  } else {
    std::cout << "int^reg E*(0)^2 E^reg,(" << n << ")(1/2) = " << fmt(t.value) << '\n'
              << "  triple part   " << fmt(t.triple_part) << '\n'
              << "  pairing part  " << fmt(t.pairing_part) << '\n';
    if (d) std::cout << "  direct        " << fmt(*d) << "  (delta " << fmt(std::abs(*d - t.value)) << ")\n";
  }
  return ok ? 0 : 1;
}

ordered_json indices_json(const PadicIndices& I) { return {{"D", I.D}, {"delta", I.delta}, {"m", I.m}}; }

int cmd_padic(const Globals& g, const std::string& input, const std::string& file, int conductor, bool whittaker,
              double q, const std::string& s_text, int n_max, double eps) {
  if (whittaker) {
    const auto data = unramified_data(q, parse_complex(s_text));
    ordered_json rows = ordered_json::array();
    bool all = true;
    if (g.csv) std::cout << "n,W_re,W_im,abs_W,bound,ok\n";
    for (int n = 0; n <= n_max; ++n) {
      const cplx w = whittaker_unramified(n, data);
      const double b = n >= 1 ? whittaker_bound(n, data, eps) : std::abs(w);
      const bool ok = n == 0 || whittaker_bound_check(n, data, eps);
      all = all && ok;
      if (g.csv)
        std::cout << n << ',' << fmt(w.real()) << ',' << fmt(w.imag()) << ',' << fmt(std::abs(w)) << ',' << fmt(b)
                  << ',' << (ok ? "true" : "false") << '\n';
      rows.push_back({{"n", n}, {"W", cnum(w)}, {"abs", number(std::abs(w))}, {"bound", number(b)}, {"ok", ok}});
    }
    if (g.json) {
      auto j = header("padic");
      j["whittaker"] = {{"q", q}, {"s", cnum(data.s)}, {"eps", eps}, {"rows", rows}};
      emit(j);
    } else if (!g.csv) {
      for (const auto& r : rows)
        std::cout << "n=" << r["n"] << "  |W| = " << r["abs"] << "  bound " << r["bound"] << (r["ok"] ? "" : "  FAIL")
                  << '\n';
    }
    return all ? 0 : 1;
  }

  std::string text = input;
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw UsageError("cannot read " + file);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  if (text.empty()) throw UsageError("need --input, --file or --whittaker");
  const auto phi = PadicSchwartz::parse(text);
  const auto I = phi.indices();
  const auto F = phi.fourier(conductor);
  const auto J = F.indices();
  constexpr double inf = std::numeric_limits<double>::infinity();
  const bool double_ok =
      exactly_equal(F.fourier(conductor), phi.reflect().scaled(Rational(ipow(phi.p(), phi.dim() * conductor))));
  if (g.json) {
    auto j = header("padic");
    j["p"] = phi.p();
    j["d"] = phi.dim();
    j["cells"] = phi.cells();
    j["indices"] = indices_json(I);
    j["conductor"] = conductor;
    j["fourier_indices"] = indices_json(J);
    j["norms"] = {{"1", number(phi.norm(1))}, {"2", number(phi.norm(2))}, {"inf", number(phi.norm(inf))}};
    j["fourier_norms"] = {{"1", number(F.norm(1))}, {"2", number(F.norm(2))}, {"inf", number(F.norm(inf))}};
    j["double_transform_is_reflection"] = double_ok;
    emit(j);
  } else {
    std::cout << "p = " << phi.p() << ", d = " << phi.dim() << ", " << phi.cells() << " cells\n"
              << "D = " << I.D << ", delta = " << I.delta << ", m = " << I.m << '\n'
              << "Fourier (c = " << conductor << "): D = " << J.D << ", delta = " << J.delta << ", m = " << J.m << '\n'
              << "norms 1, 2, inf: " << fmt(phi.norm(1)) << ", " << fmt(phi.norm(2)) << ", " << fmt(phi.norm(inf))
              << '\n'
              << "FF = reflection: " << (double_ok ? "yes" : "no") << '\n';
  }
  return double_ok ? 0 : 1;
}

int cmd_coset(const Globals& g, long long level, const std::string& matrix, bool minus) {
  const auto A = IntMatrix::parse(matrix);
  const auto t = minus ? coset_decompose_minus(A, level) : coset_decompose(A, level);
  const auto rep = check_triple(t, A);
  if (g.json) {
    auto j = header("coset");
    j["level"] = level;
    j["matrix"] = A.to_string();
    j["order"] = minus ? "gamma n_plus n_minus" : "gamma n_minus n_plus";
    j["gamma"] = t.gamma.to_string();
    j["n_minus"] = t.n_minus.to_string();
    j["n_plus"] = t.n_plus.to_string();
    j["report"] = {{"gamma_in_group", rep.gamma_in_group},
                   {"unipotent_shapes", rep.unipotent_shapes},
                   {"entries_reduced", rep.entries_reduced},
                   {"product_exact", rep.product_exact},
                   {"ok", rep.ok()}};
    emit(j);
  } else {
    std::cout << "gamma   " << t.gamma.to_string() << '\n'
              << "n_minus " << t.n_minus.to_string() << '\n'
              << "n_plus  " << t.n_plus.to_string() << '\n'
              << "membership " << (rep.gamma_in_group ? "ok" : "FAIL") << ", shapes "
              << (rep.unipotent_shapes ? "ok" : "FAIL") << ", entry bound " << (rep.entries_reduced ? "ok" : "FAIL")
              << ", product " << (rep.product_exact ? "ok" : "FAIL") << '\n';
  }
  return rep.ok() ? 0 : 1;
}

int cmd_lattice(const Globals& g, long long d, long long m, double t, const std::string& t_range, double c,
                bool include_zero) {
  const auto L = inverse_ideal_lattice(QuadField{d}, m);
  const double tail = g.tol_or(1e-8);
  const double N = L.norm.convert_to<double>();
  if (t_range.empty()) {
    const auto s = lattice_sum(L, t, c, tail, include_zero);
    if (g.json) {
      auto j = header("lattice");
      j["field"] = d;
      j["ideal"] = m;
      j["t"] = number(t);
      j["c"] = number(c);
      j["value"] = number(s.value);
      j["error"] = number(s.error);
      j["radius"] = number(s.radius);
      j["points"] = s.points;
      emit(j);
    } else {
      std::cout << "sum = " << fmt(s.value) << "  (tail <= " << fmt(s.error) << ", radius " << fmt(s.radius) << ", "
                << s.points << " points)\n";
    }
    return 0;
  }
  int lo = 0, hi = 0;
  if (std::sscanf(t_range.c_str(), "%d:%d", &lo, &hi) != 2 || lo < 1 || hi < lo)
    throw UsageError("--t-range wants lo:hi with 1 <= lo <= hi");
  ordered_json rows = ordered_json::array();
  if (!g.json) std::cout << "t,value,error,ratio\n";
  for (int k = lo; k <= hi; ++k) {
    const auto s = lattice_sum(L, k, c, tail, include_zero);
    const double ratio = s.value * std::pow(double(k), c) / std::pow(N, 3.0 * c);
    if (g.json)
      rows.push_back({{"t", k}, {"value", number(s.value)}, {"error", number(s.error)}, {"ratio", number(ratio)}});
    else
      std::cout << k << ',' << fmt(s.value) << ',' << fmt(s.error) << ',' << fmt(ratio) << '\n';
  }
  if (g.json) {
    auto j = header("lattice");
    j["field"] = d;
    j["ideal"] = m;
    j["c"] = number(c);
    j["rows"] = rows;
    emit(j);
  }
  return 0;
}

struct SweepRow {
  ordered_json params;
  double lhs, rhs;
};

int emit_sweep(const Globals& g, const std::string& command, const std::vector<SweepRow>& rows,
               const std::vector<std::string>& keys) {
  bool all = true;
  for (const auto& r : rows) all = all && r.lhs <= r.rhs;
  if (g.json) {
    auto j = header(command);
    j["seed"] = g.seed;
    auto& arr = j["rows"] = ordered_json::array();
    for (const auto& r : rows) {
      const double ratio = r.rhs > 0 ? r.lhs / r.rhs : std::nan("");
      arr.push_back({{"params", r.params}, {"lhs", number(r.lhs)}, {"rhs", number(r.rhs)}, {"ratio", number(ratio)}});
    }
    emit(j);
  } else {
    for (const auto& k : keys) std::cout << k << ',';
    std::cout << "lhs,rhs,ratio\n";
    for (const auto& r : rows) {
      for (const auto& k : keys) {
        const auto& v = r.params.at(k);
        std::cout << (v.is_string() ? v.get<std::string>() : v.dump()) << ',';
      }
      std::cout << fmt(r.lhs) << ',' << fmt(r.rhs) << ',' << (r.rhs > 0 ? fmt(r.lhs / r.rhs) : "nan") << '\n';
    }
  }
  return all ? 0 : 1;
}

int cmd_mellin(const Globals& g, int count) {
  std::mt19937_64 rng(g.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0), l(0.5, 2.0), sig(0.3, 2.0);
  std::uniform_int_distribution<int> b(0, 2), terms(1, 3);
  std::vector<SweepRow> rows;
  for (int trial = 0; trial < count; ++trial) {
    // f = sum a y^b e^{-lam y}, M f = sum a Gamma(s + b) lam^{-s-b}
    std::vector<cplx> a;
    std::vector<int> bs;
    std::vector<double> lam;
    for (int j = terms(rng); j > 0; --j) {
      a.emplace_back(u(rng), u(rng));
      bs.push_back(b(rng));
      lam.push_back(l(rng));
    }
    const GrowthCertifiedFn f{[=](double y) {
                                cplx s = 0.0;
                                for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * std::pow(y, bs[j]) * std::exp(-lam[j] * y);
                                return s;
                              },
                              0.0,
                              {}};
    const PeriodicMellinFn M{[=](cplx s) {
                               cplx v = 0.0;
                               for (std::size_t j = 0; j < a.size(); ++j)
                                 v += a[j] * gamma(s + double(bs[j])) * std::pow(lam[j], -(s + double(bs[j])));
                               return v;
                             },
                             0.0};
    const double sigma = sig(rng);
    const int k = trial % 3;
    const ordered_json base = {{"trial", trial}, {"k", k}, {"sigma", number(sigma)}};
    auto p1 = base, p2 = base;
    p1["inequality"] = "H_inf(Mf) <= B_1(f)";
    p2["inequality"] = "B_inf(f) <= H_1(Mf)";
    rows.push_back({p1, seminorm_H(M, kInfNorm, k, sigma), seminorm_B(f, 1.0, k, sigma)});
    rows.push_back({p2, seminorm_B(inverse_of(M, sigma), kInfNorm, k, sigma), seminorm_H(M, 1.0, k, sigma)});
  }
  return emit_sweep(g, "mellin", rows, {"trial", "k", "sigma", "inequality"});
}

int cmd_ergodic(const Globals& g, int count, int dim_max) {
  if (dim_max < 1) throw UsageError("--dim must be positive");
  std::mt19937_64 rng(g.seed);
  std::uniform_real_distribution<double> th(-3.0, 3.0), tt(0.1, 50.0);
  std::uniform_int_distribution<int> ni(-4, 4), dim(1, dim_max);
  std::vector<SweepRow> rows;
  for (int trial = 0; trial < count; ++trial) {
    const int d = dim(rng);
    std::vector<double> theta(std::size_t(d), 0.0), x(std::size_t(d), 0.0);
    std::vector<long long> n(std::size_t(d), 0);
    double w = 0.0;
    for (int i = 0; i < d; ++i) {
      theta[i] = th(rng), x[i] = th(rng), n[i] = ni(rng);
      w += theta[i] * double(n[i]);
    }
    const double T = tt(rng);
    rows.push_back({{{"trial", trial}, {"d", d}, {"T", number(T)}, {"n_dot_theta", number(w)}},
                    std::abs(ergodic_average(theta, n, T, x)),
                    ergodic_bound(theta, n, T)});
  }
  return emit_sweep(g, "ergodic", rows, {"trial", "d", "T", "n_dot_theta"});
}

int cmd_verify(const Globals& g, const std::string& suite, int jobs, bool timing) {
  const auto r = run_suite(suite, g.seed, jobs);
  if (g.json) {
    emit(r.to_json(timing));
  } else {
    for (const auto& c : r.cases)
      std::cout << to_string(c.status) << "  " << c.id << "  actual " << fmt(c.actual) << "  expected "
                << fmt(c.expected) << "  tol " << fmt(c.tolerance) << '\n';
    std::cout << r.suite << ": " << r.cases.size() - r.failures() << "/" << r.cases.size() << " passed, seed "
              << r.seed;
    if (timing) std::cout << ", " << fmt(r.wall_time) << " s";
    std::cout << '\n';
  }
  if (!r.passed()) {
    std::cerr << "failing cases:\n";
    for (const auto& c : r.cases)
      if (c.status == Status::fail) {
        ordered_json e = {{"id", c.id}, {"params", c.params}, {"expected", number(c.expected)},
                          {"actual", number(c.actual)}, {"tolerance", number(c.tolerance)}};
        if (!c.note.empty()) e["note"] = c.note;
        std::cerr << e.dump() << '\n';
      }
  }
  return r.passed() ? 0 : 1;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Regularized integrals of automorphic functions on the modular surface"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Globals g;
  app.add_flag("--json", g.json, "JSON output");
  app.add_flag("--csv", g.csv, "CSV output where a table exists");
  app.add_option("--seed", g.seed, "seed for randomized commands")->capture_default_str();
  app.add_option("--tol", g.tol, "tolerance for oracle comparisons (verify suites keep their own)");

  int order = 0;
  auto* lambda = app.add_subcommand("lambda", "Laurent data of lambda_F and lambda_tilde at 0");
  lambda->add_option("--order", order, "derivative order, -1 for the residue")->required();

  std::string z_text = "0,1", s_text = "0.3";
  int n = 0;
  bool regularized = false;
  auto* eis = app.add_subcommand("eis", "evaluate an Eisenstein series");
  eis->add_option("--z", z_text, "point x,y")->capture_default_str();
  eis->add_option("--s", s_text, "spectral parameter re[,im]")->capture_default_str();
  eis->add_option("--n", n, "derivative order")->capture_default_str();
  eis->add_flag("--regularized", regularized, "regularized series");

  std::string spec_text, file;
  double T = 12.0;
  auto* regint = app.add_subcommand("regint", "regularized integral of a sample");
  regint->add_option("--spec", spec_text, "sample descriptor as JSON");
  regint->add_option("--file", file, "file holding the descriptor");
  regint->add_option("--T", T, "truncation height")->capture_default_str();

  std::string mode = "singular";
  int n1 = 0, n2 = 0;
  bool numeric = false;
  auto* pairing = app.add_subcommand("pairing", "closed-form regularized pairing of two Eisenstein series");
  pairing->add_option("--mode", mode, "unitary or singular")->capture_default_str();
  pairing->add_option("--n1", n1)->capture_default_str();
  pairing->add_option("--n2", n2)->capture_default_str();
  pairing->add_flag("--numeric", numeric, "compare with both numeric oracles");

  int tn = 0;
  bool direct = false;
  auto* triple = app.add_subcommand("triple", "int^reg E*(0)^2 E^reg,(n)(1/2)");
  triple->add_option("--n", tn)->capture_default_str();
  triple->add_flag("--direct", direct, "also integrate the pointwise product");

  std::string pin, pfile;
  int conductor = 0, n_max = 12;
  bool whittaker = false;
  double q = 3.0, eps = 0.1;
  std::string ws = "0.1";
  auto* padic = app.add_subcommand("padic", "indices, Fourier transform and norms of a p-adic Schwartz function");
  padic->add_option("--input", pin, "lines 'p d coeff_re coeff_im center... level'");
  padic->add_option("--file", pfile, "file in the same format");
  padic->add_option("--conductor", conductor)->capture_default_str();
  padic->add_flag("--whittaker", whittaker, "tabulate unramified Whittaker values instead");
  padic->add_option("--q", q)->capture_default_str();
  padic->add_option("--s", ws, "re[,im]")->capture_default_str();
  padic->add_option("--n-max", n_max)->capture_default_str();
  padic->add_option("--eps", eps)->capture_default_str();

  long long level = 2;
  std::string matrix;
  bool minus = false;
  auto* coset = app.add_subcommand("coset", "Gamma_0(N) coset decomposition");
  coset->add_option("--level", level)->required();
  coset->add_option("--matrix", matrix, "rows separated by ';', entries by ','")->required();
  coset->add_flag("--minus", minus, "use A = gamma N+ N- with gamma in Gamma_0^-(N)");

  long long field = 1, ideal = 1;
  double lt = 1.0, lc = 4.0;
  std::string t_range;
  bool include_zero = false;
  auto* lattice = app.add_subcommand("lattice", "sum of f_c over an inverse ideal lattice");
  lattice->add_option("--field", field, "d for Q(sqrt d), 1 for Q")->capture_default_str();
  lattice->add_option("--ideal", ideal, "J = m o")->capture_default_str();
  lattice->add_option("--t", lt)->capture_default_str();
  lattice->add_option("--t-range", t_range, "lo:hi, tabulates integer t");
  lattice->add_option("--c", lc)->capture_default_str();
  lattice->add_flag("--include-zero", include_zero);

  int mcount = 20;
  auto* mellin = app.add_subcommand("mellin", "seminorm inequalities on random Mellin pairs");
  mellin->add_option("--count", mcount)->capture_default_str();

  int ecount = 1000, edim = 4;
  auto* ergodic = app.add_subcommand("ergodic", "ergodic averages against their bound");
  ergodic->add_option("--count", ecount)->capture_default_str();
  ergodic->add_option("--dim", edim, "largest torus dimension")->capture_default_str();

  std::string suite;
  int jobs = 1;
  bool timing = false;
  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  verify->add_option("suite", suite, "special, regularize, pairings, padic, coset, mellin or all")->required();
  verify->add_option("--jobs", jobs, "criteria run concurrently")->capture_default_str();
  verify->add_flag("--timing", timing, "include wall time (breaks byte-identical output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*lambda) return cmd_lambda(g, order);
    if (*eis) return cmd_eis(g, z_text, s_text, n, regularized);
    if (*regint) return cmd_regint(g, spec_text, file, T);
    if (*pairing) return cmd_pairing(g, mode, n1, n2, numeric);
    if (*triple) return cmd_triple(g, tn, direct);
    if (*padic) return cmd_padic(g, pin, pfile, conductor, whittaker, q, ws, n_max, eps);
    if (*coset) return cmd_coset(g, level, matrix, minus);
    if (*lattice) return cmd_lattice(g, field, ideal, lt, t_range, lc, include_zero);
    if (*mellin) return cmd_mellin(g, mcount);
    if (*ergodic) return cmd_ergodic(g, ecount, edim);
    if (*verify) return cmd_verify(g, suite, jobs, timing);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "bad descriptor: " << e.what() << '\n';
    return 2;
  } catch (const std::logic_error& e) {
    // domain, argument and order errors from the libraries
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace regint::cli
