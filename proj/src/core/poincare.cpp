#include "mgrid/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <thread>

#include "mgrid/error.hpp"

namespace mgrid::poincare {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int64_t kChunk = 64;

enum class Case { JBessel, Power, IBessel };

struct Request {
  int64_t l;
  int j;
  double nu;           // l + kappa_j
  Complex prefactor;   // factor outside the c-sum
  double bound_scale;  // (2 pi / lambda)^K nu^{K-1} / Gamma(K)
};

struct Plan {
  const AutomorphyData* data;
  int64_t n;
  int alpha;
  double mu;  // -n + kappa_alpha
  Case kase;
  int weight;
  std::vector<Request> reqs;
  TruncationParams trunc;
};

int64_t mod(int64_t x, int64_t m) {
  int64_t r = x % m;
  return r < 0 ? r + m : r;
}

// omega[m] = e^{2 pi i m / c}; the upper half mirrors the lower half by conjugation.
void fill_roots(std::vector<Complex>& omega, int64_t c) {
  omega.resize(c);
  omega[0] = 1;
  for (int64_t m = 1; 2 * m <= c; ++m) {
    omega[m] = turn_to_complex(static_cast<double>(m) / static_cast<double>(c));
    omega[c - m] = std::conj(omega[m]);
  }
}

// Column alpha of chi(g)^{-1} rho(g^{-1}), i.e. entries (j, alpha) for every j.
void inverse_column(const AutomorphyData& data, const GroupElement& g, int alpha, std::vector<Complex>& out) {
  int p = data.dim();
  out.assign(p, Complex{});
  if (data.rho.is_diagonal()) {
    out[alpha] = data.inverse_factor(g, alpha, alpha);
    return;
  }
  Complex ci = turn_to_complex(-data.chi.turns(g));
  auto m = data.rho.eval(g);
  for (int j = 0; j < p; ++j) out[j] = ci * std::conj(m[alpha * p + j]);
}

double radial(const Plan& plan, const Request& r, int64_t c) {
  double cd = static_cast<double>(c);
  double lam = plan.data->lambda;
  switch (plan.kase) {
    case Case::Power:
      return std::pow(cd, -plan.weight);
    case Case::JBessel:
      return specialfn::bessel_j(plan.weight - 1, 4 * kPi * std::sqrt(plan.mu * r.nu) / (cd * lam), plan.trunc.ctx) / cd;
    case Case::IBessel:
      return specialfn::bessel_i(plan.weight - 1, 4 * kPi * std::sqrt(-plan.mu * r.nu) / (cd * lam), plan.trunc.ctx) / cd;
  }
  return 0;
}

// Certified bound for the sum over c > cc of one coefficient.
double tail_bound(const Plan& plan, const Request& r, int64_t cc) {
  double K = plan.weight;
  double cd = static_cast<double>(cc);
  double growth = 1.0;
  if (plan.kase == Case::IBessel)
    growth = std::exp(4 * kPi * std::sqrt(-plan.mu * r.nu) / ((cd + 1) * plan.data->lambda));
  return r.bound_scale * growth * std::pow(cd, 2 - K) / (K - 2);
}

// Layer sums for c in [c0, c1), one compensated accumulator per request.
std::vector<specialfn::CompensatedSum> chunk_sums(const Plan& plan, int64_t c0, int64_t c1) {
  const AutomorphyData& data = *plan.data;
  int p = data.dim();
  std::vector<specialfn::CompensatedSum> acc(plan.reqs.size());
  std::vector<Complex> omega, col;
  std::vector<Complex> base;  // per element and component
  std::vector<int64_t> dres;
  double ka = data.kappa[plan.alpha];
  const bool trivial = p == 1 && data.rho.is_diagonal() && data.chi.kind() == Multiplier::Kind::Trivial &&
                       data.rho.components()[0].kind() == Multiplier::Kind::Trivial;
  for (int64_t c = c0; c < c1; ++c) {
    auto elems = group::enumerate_cplus(data.group, c);
    if (elems.empty()) continue;
    fill_roots(omega, c);
    size_t ne = elems.size();
    base.assign(ne * p, Complex{});
    dres.resize(ne);
    for (size_t e = 0; e < ne; ++e) {
      const auto& g = elems[e];
      if (trivial) {
        col.assign(1, Complex(1, 0));
      } else {
        inverse_column(data, g, plan.alpha, col);
      }
      Complex ph = omega[mod(-plan.n % c * (g.a % c), c)];
      dres[e] = mod(g.d, c);
      for (int j = 0; j < p; ++j) {
        if (col[j] == Complex{}) continue;
        double frac = (ka * static_cast<double>(g.a) + data.kappa[j] * static_cast<double>(g.d)) / static_cast<double>(c);
        base[e * p + j] = col[j] * ph * (frac == 0 ? Complex(1, 0) : turn_to_complex(frac));
      }
    }
    for (size_t r = 0; r < plan.reqs.size(); ++r) {
      const Request& req = plan.reqs[r];
      int64_t lm = mod(req.l, c);
      // A layer has at most c unit-size terms; plain summation suffices inside it.
      double sr = 0, si = 0;
      for (size_t e = 0; e < ne; ++e) {
        const Complex& b = base[e * p + req.j];
        const Complex& w = omega[(lm * dres[e]) % c];
        sr += b.real() * w.real() - b.imag() * w.imag();
        si += b.real() * w.imag() + b.imag() * w.real();
      }
      acc[r].add(Complex(sr, si) * radial(plan, req, c));
    }
  }
  return acc;
}

Plan make_plan(const AutomorphyData& data, int64_t n, int alpha, const std::vector<std::pair<int64_t, int>>& wanted,
               const TruncationParams& trunc) {
  trunc.validate(data.weight);
  require(alpha >= 0 && alpha < data.dim(), ErrorCode::InvalidArgument, "component alpha out of range");
  require(data.lambda == 1.0, ErrorCode::InvalidArgument, "Poincare coefficients need cusp width 1");
  Plan plan{&data, n, alpha, static_cast<double>(-n) + data.kappa[alpha], Case::Power, data.weight, {}, trunc};
  plan.kase = plan.mu > 0 ? Case::JBessel : (plan.mu < 0 ? Case::IBessel : Case::Power);
  const double K = data.weight;
  const double lam = data.lambda;
  for (auto [l, j] : wanted) {
    require(j >= 0 && j < data.dim(), ErrorCode::InvalidArgument, "component j out of range");
    double nu = static_cast<double>(l) + data.kappa[j];
    if (nu <= 0) continue;
    Request r{l, j, nu, {}, 0};
    if (plan.kase == Case::Power) {
      r.prefactor = std::pow(Complex(0, -2 * kPi), K) / (std::tgamma(K) * std::pow(lam, K)) * std::pow(nu, K - 1);
    } else {
      r.prefactor = (2 * kPi / lam) * std::pow(Complex(0, 1), -K) * std::pow(nu / std::abs(plan.mu), (K - 1) / 2);
    }
    r.bound_scale = std::pow(2 * kPi / lam, K) * std::pow(nu, K - 1) / std::tgamma(K);
    plan.reqs.push_back(r);
  }
  return plan;
}

struct SumResult {
  std::vector<Complex> values;
  std::vector<double> bounds;
  int64_t c_used = 0;
};

SumResult run(const Plan& plan) {
  SumResult res;
  size_t nr = plan.reqs.size();
  res.values.assign(nr, {});
  res.bounds.assign(nr, 0);
  if (nr == 0) return res;
  std::vector<specialfn::CompensatedSum> total(nr);
  const int64_t c_max = plan.trunc.c_max;
  const unsigned nt = worker_threads();
  int64_t c = 1;
  while (c <= c_max) {
    std::vector<std::pair<int64_t, int64_t>> chunks;
    for (unsigned t = 0; t < nt && c <= c_max; ++t) {
      int64_t hi = std::min(c_max + 1, c + kChunk);
      chunks.emplace_back(c, hi);
      c = hi;
    }
    std::vector<std::vector<specialfn::CompensatedSum>> parts(chunks.size());
    if (chunks.size() == 1) {
      parts[0] = chunk_sums(plan, chunks[0].first, chunks[0].second);
    } else {
      std::vector<std::thread> workers;
      std::vector<std::exception_ptr> errors(chunks.size());
      for (size_t i = 0; i < chunks.size(); ++i)
        workers.emplace_back([&, i] {
          try {
            parts[i] = chunk_sums(plan, chunks[i].first, chunks[i].second);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        });
      for (auto& w : workers) w.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }
    // Ordered reduction; stop at the first chunk boundary where every tail is negligible.
    for (size_t i = 0; i < chunks.size(); ++i) {
      for (size_t r = 0; r < nr; ++r) total[r].merge(parts[i][r]);
      int64_t upto = chunks[i].second - 1;
      res.c_used = upto;
      bool done = true;
      for (size_t r = 0; r < nr && done; ++r) {
        double v = std::abs(total[r].value() * plan.reqs[r].prefactor);
        done = tail_bound(plan, plan.reqs[r], upto) <= plan.trunc.ctx.target_tol * std::max(1.0, v);
      }
      if (done || upto >= c_max) {
        for (size_t r = 0; r < nr; ++r) {
          res.values[r] = total[r].value() * plan.reqs[r].prefactor;
          res.bounds[r] = tail_bound(plan, plan.reqs[r], upto);
        }
        return res;
      }
    }
  }
  return res;
}

}  // namespace

unsigned worker_threads() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MGRID_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<unsigned>(std::min<long>(v, 256));
  }
  return hw;
}

std::vector<CoefficientResult> poincare_coefficients(const AutomorphyData& data, int64_t n, int alpha,
                                                     const std::vector<std::pair<int64_t, int>>& wanted,
                                                     const TruncationParams& trunc) {
  Plan plan = make_plan(data, n, alpha, wanted, trunc);
  SumResult s = run(plan);
  std::vector<CoefficientResult> out(wanted.size());
  size_t r = 0;
  for (size_t i = 0; i < wanted.size(); ++i) {
    CoefficientResult& o = out[i];
    o.converged = true;
    if (r < plan.reqs.size() && plan.reqs[r].l == wanted[i].first && plan.reqs[r].j == wanted[i].second) {
      o.value = s.values[r];
      o.tail_bound = s.bounds[r];
      o.c_used = s.c_used;
      o.converged = o.tail_bound <= trunc.tail_tol * std::max(1.0, std::abs(o.value));
      ++r;
    }
  }
  return out;
}

CoefficientResult poincare_coefficient(const AutomorphyData& data, int64_t n, int alpha, int64_t l, int j,
                                       const TruncationParams& trunc) {
  return poincare_coefficients(data, n, alpha, {{l, j}}, trunc)[0];
}

FourierSeries poincare_series(const AutomorphyData& data, int64_t n, int alpha, int64_t l_min, int64_t l_max,
                              const TruncationParams& trunc) {
  require(l_min <= l_max, ErrorCode::InvalidArgument, "l_min must not exceed l_max");
  std::vector<std::pair<int64_t, int>> wanted;
  for (int64_t l = l_min; l <= l_max; ++l)
    for (int j = 0; j < data.dim(); ++j) wanted.emplace_back(l, j);
  Plan plan = make_plan(data, n, alpha, wanted, trunc);
  SumResult s = run(plan);
  FourierSeries f(data);
  f.n = n;
  f.alpha = alpha;
  f.c_used = s.c_used;
  f.truncation = trunc;
  for (size_t r = 0; r < plan.reqs.size(); ++r) f.set(plan.reqs[r].l, plan.reqs[r].j, {s.values[r], s.bounds[r]});
  f.add(-n, alpha, 1.0);
  return f;
}

Complex kloosterman_layer(const AutomorphyData& data, int64_t n, int alpha, int64_t l, int j, int64_t c) {
  require(alpha >= 0 && alpha < data.dim() && j >= 0 && j < data.dim(), ErrorCode::InvalidArgument,
          "component out of range");
  double mu = static_cast<double>(-n) + data.kappa[alpha];
  double nu = static_cast<double>(l) + data.kappa[j];
  specialfn::CompensatedSum acc;
  std::vector<Complex> col;
  for (const auto& g : group::enumerate_cplus(data.group, c)) {
    inverse_column(data, g, alpha, col);
    if (col[j] == Complex{}) continue;
    int64_t whole = mod(mod(-n, c) * mod(g.a, c) + mod(l, c) * mod(g.d, c), c);
    double frac = (mu + static_cast<double>(n)) * static_cast<double>(g.a) + (nu - static_cast<double>(l)) * static_cast<double>(g.d);
    acc.add(col[j] * turn_to_complex((static_cast<double>(whole) + frac) / (static_cast<double>(c) * data.lambda)));
  }
  return acc.value();
}

std::vector<Complex> constant_term_cf(const FourierSeries& f, const TruncationParams& trunc, double* tail_bound) {
  const AutomorphyData& data = f.data();
  trunc.validate(data.weight);
  require(data.lambda == 1.0, ErrorCode::InvalidArgument, "constant term needs cusp width 1");
  const int p = data.dim();
  const int K = data.weight;
  std::vector<std::pair<SeriesKey, Complex>> principal;
  double mass = 0;
  for (const auto& [key, c] : f.entries())
    if (static_cast<double>(key.l) + data.kappa[key.j] < 0 && c.value != Complex{}) {
      principal.emplace_back(key, c.value);
      mass += std::abs(c.value);
    }
  std::vector<Complex> out(p);
  if (tail_bound) *tail_bound = 0;
  bool any = false;
  for (int j = 0; j < p; ++j) any = any || data.kappa[j] == 0.0;
  if (principal.empty() || !any) return out;
  std::vector<specialfn::CompensatedSum> acc(p);
  const double scale = std::pow(2 * kPi, K) * mass / std::tgamma(K);
  std::vector<Complex> col;
  double tail = 0;
  for (int64_t c = 1; c <= trunc.c_max; ++c) {
    auto elems = group::enumerate_cplus(data.group, c);
    Complex radial = std::pow(Complex(0, -2 * kPi / static_cast<double>(c)), K);
    for (const auto& [key, a] : principal) {
      std::vector<specialfn::CompensatedSum> layer(p);
      for (const auto& g : elems) {
        inverse_column(data, g, key.j, col);
        int64_t whole = mod(mod(key.l, c) * mod(g.a, c), c);
        double frac = data.kappa[key.j] * static_cast<double>(g.a);
        Complex ph = turn_to_complex((static_cast<double>(whole) + frac) / static_cast<double>(c));
        for (int j = 0; j < p; ++j)
          if (data.kappa[j] == 0.0 && col[j] != Complex{}) layer[j].add(col[j] * ph);
      }
      for (int j = 0; j < p; ++j) acc[j].add(layer[j].value() * a * radial);
    }
    tail = scale * std::pow(static_cast<double>(c), 2.0 - K) / (K - 2) / data.lambda;
    double v = 0;
    for (int j = 0; j < p; ++j) v = std::max(v, std::abs(acc[j].value()) / (data.lambda * std::tgamma(K)));
    if (tail <= trunc.ctx.target_tol * std::max(1.0, v)) break;
  }
  for (int j = 0; j < p; ++j)
    if (data.kappa[j] == 0.0) out[j] = acc[j].value() / (data.lambda * std::tgamma(K));
  if (tail_bound) *tail_bound = tail;
  return out;
}

}  // namespace mgrid::poincare
