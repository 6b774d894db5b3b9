// Command-line front end. Links only the C interface of libmgrid.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mgrid/mgrid.h"

namespace {

using json = nlohmann::ordered_json;

constexpr double kLTol = 1e-12;

// Exit codes: 0 success, 1 usage or configuration error, 2 computed but unconverged.
struct Exit : std::runtime_error {
  int code;
  Exit(int c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

void check(mgrid_status st) {
  if (st == MGRID_OK) return;
  int code = (st == MGRID_NONCONVERGENCE || st == MGRID_UNCONVERGED) ? 2 : 1;
  throw Exit(code, mgrid_last_error());
}

std::string hexfloat(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

void put_real(json& o, const std::string& key, double x) {
  o[key] = x;
  o[key + "_hex"] = hexfloat(x);
}

void put_complex(json& o, mgrid_complex z) {
  put_real(o, "re", z.re);
  put_real(o, "im", z.im);
}

json complex_object(mgrid_complex z) {
  json o = json::object();
  put_complex(o, z);
  return o;
}

std::vector<int64_t> parse_tuple(const std::string& text) {
  std::vector<int64_t> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoll(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw Exit(1, "bad integer '" + item + "' in '" + text + "'");
    }
  }
  if (v.size() != 4) throw Exit(1, "group elements are given as a,b,c,d, got '" + text + "'");
  return v;
}

struct Common {
  int64_t level = 1;
  std::string generators;
  double lambda = 1.0;
  int weight = 0;
  std::string character = "trivial";
  std::string rep = "trivial";
  int64_t c_max = 5000;
  double tol = 1e-8;
  int bits = 113;
  bool allow_slow = false;
  std::string json_path, csv_path;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--group", c.level, "Level N of Gamma_0(N)")->capture_default_str();
  sub->add_option("--generators", c.generators, "Generators for N > 1 as a,b,c,d;a,b,c,d;...");
  sub->add_option("--lambda", c.lambda, "Cusp width at infinity")->capture_default_str();
  sub->add_option("--weight", c.weight, "Weight k + 2 of the Poincare series")->required();
  sub->add_option("--character", c.character, "trivial | eta:r | dirichlet:N:t1,...")->capture_default_str();
  sub->add_option("--rep", c.rep, "trivial | diag(m1,m2,...)")->capture_default_str();
  sub->add_option("--cmax", c.c_max, "Largest c in the Kloosterman-Bessel sums")->capture_default_str();
  sub->add_option("--tol", c.tol, "Relative tail tolerance")->capture_default_str();
  sub->add_option("--bits", c.bits, "Working precision in bits")->capture_default_str();
  sub->add_flag("--allow-slow-convergence", c.allow_slow, "Permit weight 3");
  sub->add_option("--json", c.json_path, "Write JSON here instead of stdout");
  sub->add_option("--csv", c.csv_path, "Also write a CSV table here");
}

class Config {
 public:
  explicit Config(const Common& c) : common_(c) {
    if (c.lambda != 1.0) throw Exit(1, "only cusp width lambda = 1 is supported");
    check(mgrid_config_create(c.level, c.generators.empty() ? nullptr : c.generators.c_str(), c.weight,
                              c.character.c_str(), c.rep.c_str(), &cfg_));
    check(mgrid_config_set_truncation(cfg_, c.c_max, c.tol, c.bits, c.allow_slow ? 1 : 0));
  }
  ~Config() { mgrid_config_destroy(cfg_); }
  Config(const Config&) = delete;
  Config& operator=(const Config&) = delete;

  const mgrid_config* get() const { return cfg_; }
  const Common& common() const { return common_; }

  int dim() const {
    int d = 0;
    check(mgrid_config_dim(cfg_, &d));
    return d;
  }

  std::vector<std::vector<int64_t>> generators() const {
    std::size_t n = 0;
    check(mgrid_config_generators(cfg_, &n, nullptr));
    std::vector<int64_t> flat(4 * n);
    check(mgrid_config_generators(cfg_, &n, flat.data()));
    std::vector<std::vector<int64_t>> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back({flat[4 * i], flat[4 * i + 1], flat[4 * i + 2], flat[4 * i + 3]});
    return out;
  }

  // Configuration block embedded in every record.
  json describe() const {
    json o;
    o["weight"] = common_.weight;
    char buf[512];
    check(mgrid_config_character(cfg_, buf, sizeof buf));
    o["character"] = buf;
    check(mgrid_config_rep(cfg_, buf, sizeof buf));
    o["rep"] = buf;
    o["lambda"] = common_.lambda;
    std::vector<double> kappa(static_cast<std::size_t>(dim()));
    check(mgrid_config_kappa(cfg_, kappa.data()));
    o["kappa"] = kappa;
    o["group"] = {{"level", common_.level}, {"generators", generators()}};
    o["c_max"] = common_.c_max;
    o["truncation"] = {{"c_max", common_.c_max},
                       {"tail_tol", common_.tol},
                       {"bits", common_.bits},
                       {"allow_slow_convergence", common_.allow_slow}};
    return o;
  }

 private:
  Common common_;
  mgrid_config* cfg_ = nullptr;
};

class Series {
 public:
  Series() = default;
  ~Series() { mgrid_series_destroy(s_); }
  Series(const Series&) = delete;
  Series& operator=(const Series&) = delete;
  mgrid_series** out() { return &s_; }

  std::vector<mgrid_entry> entries() const {
    std::vector<mgrid_entry> v(mgrid_series_size(s_));
    for (std::size_t i = 0; i < v.size(); ++i) check(mgrid_series_entry(s_, i, &v[i]));
    return v;
  }
  int64_t c_used() const { return mgrid_series_c_used(s_); }

 private:
  mgrid_series* s_ = nullptr;
};

bool entry_converged(const mgrid_entry& e, double tol) {
  return e.tail_bound <= tol * std::max(1.0, std::hypot(e.value.re, e.value.im));
}

json entries_json(const std::vector<mgrid_entry>& v, double tol, bool& all_ok) {
  json arr = json::array();
  for (const auto& e : v) {
    json o;
    o["n"] = e.l;
    o["j"] = e.j;
    put_complex(o, e.value);
    o["tail_bound"] = e.tail_bound;
    bool ok = entry_converged(e, tol);
    o["converged"] = ok;
    all_ok = all_ok && ok;
    arr.push_back(o);
  }
  return arr;
}

void emit(const json& doc, const Common& c) {
  std::string text = doc.dump(2) + "\n";
  if (c.json_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.json_path);
  if (!out) throw Exit(1, "cannot write " + c.json_path);
  out << text;
}

void write_csv(const Common& c, const std::string& header, const std::vector<std::string>& rows) {
  if (c.csv_path.empty()) return;
  std::ofstream out(c.csv_path);
  if (!out) throw Exit(1, "cannot write " + c.csv_path);
  out << header << "\n";
  for (const auto& r : rows) out << r << "\n";
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Pads per-index component lists to the index list length (default component 0).
std::vector<int> components(const std::vector<int>& given, std::size_t count, const char* flag) {
  if (given.empty()) return std::vector<int>(count, 0);
  if (given.size() == 1) return std::vector<int>(count, given[0]);
  if (given.size() != count) throw Exit(1, std::string(flag) + " must be given once or once per index");
  return given;
}

int cmd_coeffs(const Common& c, const std::vector<int64_t>& ns, const std::vector<int>& alphas_in, int64_t l_max) {
  if (ns.empty()) throw Exit(1, "coeffs needs at least one --n");
  Config cfg(c);
  auto alphas = components(alphas_in, ns.size(), "--alpha");
  json doc = cfg.describe();
  doc["command"] = "coeffs";
  json tables = json::array();
  std::vector<std::string> rows;
  bool all_ok = true;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    Series s;
    check(mgrid_poincare_series(cfg.get(), ns[i], alphas[i], l_max, s.out()));
    json t;
    t["n"] = ns[i];
    t["alpha"] = alphas[i];
    t["c_used"] = s.c_used();
    bool ok = true;
    auto entries = s.entries();
    t["entries"] = entries_json(entries, c.tol, ok);
    t["converged"] = ok;
    all_ok = all_ok && ok;
    tables.push_back(t);
    for (const auto& e : entries)
      rows.push_back(std::to_string(ns[i]) + "," + std::to_string(alphas[i]) + "," + std::to_string(e.l) + "," +
                     std::to_string(e.j) + "," + num(e.value.re) + "," + num(e.value.im) + "," + num(e.tail_bound));
  }
  doc["tables"] = tables;
  emit(doc, c);
  write_csv(c, "n,alpha,l,j,re,im,tail_bound", rows);
  if (!all_ok) std::cerr << "mgrid: some coefficients did not meet the tail tolerance\n";
  return all_ok ? 0 : 2;
}

json duality_json(const std::vector<mgrid_duality>& recs, bool& all_ok, std::vector<std::string>& rows) {
  json pairs = json::array();
  for (const auto& r : recs) {
    json o;
    o["n1"] = r.n1;
    o["a1"] = r.alpha1;
    o["n2"] = r.n2;
    o["a2"] = r.alpha2;
    o["lhs"] = complex_object(r.lhs);
    o["rhs"] = complex_object(r.rhs);
    o["lhs_bound"] = r.lhs_bound;
    o["rhs_bound"] = r.rhs_bound;
    put_real(o, "residual", r.residual);
    o["tolerance"] = r.tolerance;
    o["ok"] = r.ok != 0;
    all_ok = all_ok && r.ok;
    pairs.push_back(o);
    rows.push_back(std::to_string(r.n1) + "," + std::to_string(r.alpha1) + "," + std::to_string(r.n2) + "," +
                   std::to_string(r.alpha2) + "," + num(r.lhs.re) + "," + num(r.lhs.im) + "," + num(r.rhs.re) + "," +
                   num(r.rhs.im) + "," + num(r.residual));
  }
  return pairs;
}

std::vector<mgrid_duality> run_duality(const Config& cfg, const std::vector<int64_t>& n1, const std::vector<int>& a1,
                                       const std::vector<int64_t>& n2, const std::vector<int>& a2) {
  std::vector<mgrid_duality> recs(n1.size() * n2.size());
  check(mgrid_duality_grid(cfg.get(), n1.data(), a1.data(), n1.size(), n2.data(), a2.data(), n2.size(), recs.data()));
  return recs;
}

int cmd_duality(const Common& c, const std::vector<int64_t>& n1, const std::vector<int>& a1_in,
                const std::vector<int64_t>& n2, const std::vector<int>& a2_in, bool with_tables, int64_t l_max) {
  Config cfg(c);
  auto a1 = components(a1_in, n1.size(), "--alpha1");
  auto a2 = components(a2_in, n2.size(), "--alpha2");
  json doc = cfg.describe();
  doc["command"] = with_tables ? "grid" : "duality";
  bool all_ok = true;
  if (with_tables) {
    json fs = json::array(), gs = json::array();
    for (std::size_t i = 0; i < n1.size(); ++i) {
      Series s;
      check(mgrid_poincare_series(cfg.get(), n1[i], a1[i], l_max, s.out()));
      json t;
      t["n1"] = n1[i];
      t["alpha1"] = a1[i];
      t["c_used"] = s.c_used();
      t["entries"] = entries_json(s.entries(), c.tol, all_ok);
      fs.push_back(t);
    }
    for (std::size_t i = 0; i < n2.size(); ++i) {
      Series h, nh;
      check(mgrid_harmonic_form(cfg.get(), n2[i], a2[i], l_max, h.out(), nh.out()));
      json t;
      t["n2"] = n2[i];
      t["alpha2"] = a2[i];
      t["weight"] = 2 - c.weight;
      t["holomorphic"] = entries_json(h.entries(), c.tol, all_ok);
      t["nonholomorphic"] = entries_json(nh.entries(), c.tol, all_ok);
      gs.push_back(t);
    }
    doc["f"] = fs;
    doc["G"] = gs;
  }
  std::vector<std::string> rows;
  doc["pairs"] = duality_json(run_duality(cfg, n1, a1, n2, a2), all_ok, rows);
  emit(doc, c);
  write_csv(c, "n1,a1,n2,a2,lhs_re,lhs_im,rhs_re,rhs_im,residual", rows);
  if (!all_ok) std::cerr << "mgrid: some entries did not meet their tolerance\n";
  return all_ok ? 0 : 2;
}

std::vector<int64_t> gamma_or_default(const std::string& text) {
  return text.empty() ? std::vector<int64_t>{0, -1, 1, 0} : parse_tuple(text);
}

json element_json(const std::vector<int64_t>& g) { return {{"a", g[0]}, {"b", g[1]}, {"c", g[2]}, {"d", g[3]}}; }

int cmd_lvalue(const Common& c, int64_t n, const std::string& gamma_text, std::vector<int> s_list, double t0,
               const std::string& method) {
  Config cfg(c);
  if (method != "series" && method != "integral") throw Exit(1, "--method is series or integral");
  int m = method == "series" ? MGRID_METHOD_SERIES : MGRID_METHOD_INTEGRAL;
  auto g = gamma_or_default(gamma_text);
  if (s_list.empty())
    for (int s = 1; s <= c.weight - 1; ++s) s_list.push_back(s);
  int s_max = 0;
  for (int s : s_list) {
    if (s < 1 || s > c.weight - 1) throw Exit(1, "s must lie in 1..weight-1");
    s_max = std::max(s_max, s);
  }
  std::vector<mgrid_lvalue> vals(static_cast<std::size_t>(s_max));
  check(mgrid_lvalues(cfg.get(), n, g.data(), s_max, t0, m, kLTol, vals.data()));
  json doc = cfg.describe();
  doc["command"] = "lvalue";
  doc["n"] = n;
  json arr = json::array();
  bool all_ok = true;
  std::vector<std::string> rows;
  for (int s : s_list) {
    const auto& v = vals[static_cast<std::size_t>(s - 1)];
    json o;
    o["s"] = v.s;
    o["twist"] = element_json(g);
    o["t0"] = v.t0;
    o["method"] = method;
    put_complex(o, v.value);
    o["err"] = v.err;
    o["converged"] = v.converged != 0;
    o["terms"] = v.terms;
    all_ok = all_ok && v.converged;
    arr.push_back(o);
    rows.push_back(std::to_string(v.s) + "," + num(v.value.re) + "," + num(v.value.im) + "," + num(v.err));
  }
  doc["values"] = arr;
  emit(doc, c);
  write_csv(c, "s,re,im,err", rows);
  return all_ok ? 0 : 2;
}

int cmd_period(const Common& c, int64_t n, const std::string& gamma_text, const std::string& kind, double t0) {
  Config cfg(c);
  int k = kind == "r" ? MGRID_PERIOD_R : kind == "rH" ? MGRID_PERIOD_RH : kind == "rN" ? MGRID_PERIOD_RN : -1;
  if (k < 0) throw Exit(1, "--kind is r, rH or rN");
  std::vector<std::vector<int64_t>> gens;
  if (gamma_text.empty())
    gens = cfg.generators();
  else
    gens.push_back(parse_tuple(gamma_text));
  json doc = cfg.describe();
  doc["command"] = "period";
  doc["n"] = n;
  doc["kind"] = kind;
  json arr = json::array();
  bool all_ok = true;
  std::vector<std::string> rows;
  for (const auto& g : gens) {
    std::vector<mgrid_complex> coeffs(static_cast<std::size_t>(c.weight - 1));
    double err = 0;
    int conv = 0;
    check(mgrid_period(cfg.get(), n, g.data(), k, t0, kLTol, coeffs.data(), &err, &conv));
    json o;
    o["generator"] = element_json(g);
    o["basis"] = g[2] == 0 ? "tau" : "tau+d/c";
    json cs = json::array();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      json e;
      e["i"] = i;
      put_complex(e, coeffs[i]);
      cs.push_back(e);
      rows.push_back(std::to_string(g[0]) + " " + std::to_string(g[1]) + " " + std::to_string(g[2]) + " " +
                     std::to_string(g[3]) + "," + std::to_string(i) + "," + num(coeffs[i].re) + "," + num(coeffs[i].im));
    }
    o["coeffs"] = cs;
    o["err"] = err;
    o["converged"] = conv != 0;
    all_ok = all_ok && conv;
    arr.push_back(o);
  }
  doc["periods"] = arr;
  emit(doc, c);
  write_csv(c, "generator,i,re,im", rows);
  return all_ok ? 0 : 2;
}

int cmd_pairing(const Common& c, std::vector<int64_t> ns) {
  Config cfg(c);
  if (ns.empty()) ns = {-1, -2};
  std::vector<mgrid_gram> out(ns.size() * ns.size());
  mgrid_pairing_info info{};
  check(mgrid_pairing(cfg.get(), ns.data(), ns.size(), kLTol, out.data(), &info));
  json doc = cfg.describe();
  doc["command"] = "pairing";
  doc["training"] = {ns[0], ns[0]};
  doc["rank"] = info.rank;
  put_real(doc, "fit_residual", info.fit_residual);
  doc["rank_deficient"] = info.rank_deficient != 0;
  json arr = json::array();
  std::vector<std::string> rows;
  for (const auto& g : out) {
    json o;
    o["n1"] = g.n1;
    o["n2"] = g.n2;
    o["training"] = g.training != 0;
    o["predicted"] = complex_object(g.predicted);
    o["from_constants"] = complex_object(g.from_constants);
    o["reference"] = complex_object(g.reference);
    put_real(o, "rel_error", g.rel_error);
    o["feature_err"] = g.feature_err;
    arr.push_back(o);
    rows.push_back(std::to_string(g.n1) + "," + std::to_string(g.n2) + "," + num(g.predicted.re) + "," +
                   num(g.predicted.im) + "," + num(g.reference.re) + "," + num(g.reference.im) + "," +
                   num(g.rel_error));
  }
  doc["entries"] = arr;
  emit(doc, c);
  write_csv(c, "n1,n2,pred_re,pred_im,ref_re,ref_im,rel_error", rows);
  return 0;
}

// Quick end-to-end checks on small instances.
int cmd_selfcheck(const std::string& json_path) {
  json doc;
  doc["command"] = "selfcheck";
  json checks = json::array();
  bool all = true;
  auto record = [&](const std::string& name, bool ok, double value) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << " (" << num(value) << ")\n";
    checks.push_back({{"name", name}, {"ok", ok}, {"value", value}});
    all = all && ok;
  };
  {
    Common c;
    c.weight = 4;
    c.c_max = 2000;
    Config cfg(c);
    Series s;
    check(mgrid_poincare_series(cfg.get(), 0, 0, 3, s.out()));
    const int64_t sigma3[] = {1, 9, 28};
    double worst = 0;
    for (const auto& e : s.entries())
      if (e.l >= 1) worst = std::max(worst, std::abs(e.value.re / (240.0 * sigma3[e.l - 1]) - 1));
    record("eisenstein weight 4 against 240 sigma_3", worst < 1e-4, worst);
  }
  {
    Common c;
    c.weight = 12;
    Config cfg(c);
    int64_t n1 = 1, n2 = 1;
    int a = 0;
    mgrid_duality r{};
    check(mgrid_duality_grid(cfg.get(), &n1, &a, 1, &n2, &a, 1, &r));
    record("duality weight 12 (1,1)", r.residual < 1e-6, r.residual);
    const int64_t S[4] = {0, -1, 1, 0};
    mgrid_lvalue ls[6], li[6];
    check(mgrid_lvalues(cfg.get(), -1, S, 6, 0, MGRID_METHOD_SERIES, kLTol, ls));
    check(mgrid_lvalues(cfg.get(), -1, S, 6, 0, MGRID_METHOD_INTEGRAL, kLTol, li));
    double dev = std::hypot(ls[5].value.re - li[5].value.re, ls[5].value.im - li[5].value.im) /
                 std::hypot(ls[5].value.re, ls[5].value.im);
    record("L-value series against integral, s = 6", dev < 1e-6, dev);
  }
  doc["checks"] = checks;
  doc["ok"] = all;
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) throw Exit(1, "cannot write " + json_path);
    out << doc.dump(2) << "\n";
  }
  return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poincare series, harmonic grids, periods and L-values"};
  app.require_subcommand(1);
  app.set_version_flag("--version", mgrid_version());

  Common c;
  std::vector<int64_t> ns, n1s, n2s;
  std::vector<int> alphas, a1s, a2s, s_list;
  int64_t l_max = 10;
  double t0 = 0;
  std::string gamma_text, method = "series", kind = "r", selfcheck_json;

  auto* coeffs = app.add_subcommand("coeffs", "Fourier coefficients of Poincare series");
  add_common(coeffs, c);
  coeffs->add_option("--n", ns, "Index n of P_{n,alpha} (repeatable)");
  coeffs->add_option("--alpha", alphas, "Component alpha (repeatable, default 0)");
  coeffs->add_option("--lmax", l_max, "Largest coefficient index")->capture_default_str();

  auto* grid = app.add_subcommand("grid", "Grid pair tables and duality report");
  auto* duality = app.add_subcommand("duality", "Duality report only");
  for (auto* sub : {grid, duality}) {
    add_common(sub, c);
    sub->add_option("--n1", n1s, "Indices n1 of f (repeatable)");
    sub->add_option("--n2", n2s, "Indices n2 of G (repeatable)");
    sub->add_option("--alpha1", a1s, "Components of n1 (repeatable)");
    sub->add_option("--alpha2", a2s, "Components of n2 (repeatable)");
    sub->add_option("--lmax", l_max, "Largest coefficient index in tables")->capture_default_str();
  }

  auto* lvalue = app.add_subcommand("lvalue", "Twisted L-values of a Poincare series");
  add_common(lvalue, c);
  lvalue->add_option("--n", ns, "Index n of P_n")->expected(1);
  lvalue->add_option("--gamma", gamma_text, "Twist element a,b,c,d (default 0,-1,1,0)");
  lvalue->add_option("--s", s_list, "Points s (repeatable, default 1..weight-1)");
  lvalue->add_option("--t0", t0, "Split point (default 1/|c|)");
  lvalue->add_option("--method", method, "series | integral")->capture_default_str();

  auto* period = app.add_subcommand("period", "Period polynomials of a Poincare series");
  add_common(period, c);
  period->add_option("--n", ns, "Index n of P_n")->expected(1);
  period->add_option("--gamma", gamma_text, "Group element a,b,c,d (default: every generator)");
  period->add_option("--kind", kind, "r | rH | rN")->capture_default_str();
  period->add_option("--t0", t0, "Split point (default 1/|c|)");

  auto* pairing = app.add_subcommand("pairing", "Fit of the period pairing against Petersson products");
  add_common(pairing, c);
  pairing->add_option("--n", ns, "Cusp indices, first one trains the fit (default -1 -2)");

  auto* selfcheck = app.add_subcommand("selfcheck", "Quick end-to-end checks");
  selfcheck->add_option("--json", selfcheck_json, "Write JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*coeffs) return cmd_coeffs(c, ns, alphas, l_max);
    if (*grid) return cmd_duality(c, n1s, a1s, n2s, a2s, true, l_max);
    if (*duality) return cmd_duality(c, n1s, a1s, n2s, a2s, false, l_max);
    if (*lvalue) return cmd_lvalue(c, ns.empty() ? -1 : ns[0], gamma_text, s_list, t0, method);
    if (*period) return cmd_period(c, ns.empty() ? -1 : ns[0], gamma_text, kind, t0);
    if (*pairing) return cmd_pairing(c, ns);
    if (*selfcheck) return cmd_selfcheck(selfcheck_json);
  } catch (const Exit& e) {
    std::cerr << "mgrid: " << e.what() << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "mgrid: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
