#include "mgrid/lfun.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "expansion.hpp"
#include "mgrid/quadrature.hpp"

namespace mgrid::lfun {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

Complex i_power(int n) {
  static constexpr Complex kUnits[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kUnits[((n % 4) + 4) % 4];
}

double factorial(int n) {
  double r = 1;
  for (int m = 2; m <= n; ++m) r *= m;
  return r;
}

void require_scalar(const FourierSeries& f) {
  require(f.dim() == 1, ErrorCode::InvalidArgument, "L-functions are implemented for scalar-valued forms only");
}

// Gamma(n, y) / (2 pi x)^n with y = 2 pi x t, n >= 1. Positive x uses the finite closed form
// (n-1)! e^{-y} sum_{m<n} y^m / m!, every term positive; negative x goes through gamma_upper.
Complex gamma_ratio(int n, double x, double t) {
  double z = kTwoPi * x;
  if (x > 0) {
    double y = z * t;
    double term = 1, sum = 1;
    for (int m = 1; m < n; ++m) {
      term *= y / m;
      sum += term;
    }
    return factorial(n - 1) * std::exp(-y + std::log(sum) - n * std::log(z));
  }
  PrecisionContext ctx{53, 1e-15};
  return specialfn::gamma_upper(n, Complex(z * t, 0), ctx) / std::pow(z, n);
}

GroupElement positive_c(const GroupElement& g) {
  require(g.c != 0, ErrorCode::InvalidArgument, "twist needs gamma with c != 0");
  return g.c > 0 ? g : -g;
}

}  // namespace

TwistSpec TwistSpec::from(const GroupElement& g) {
  require(g.is_unimodular(), ErrorCode::InvalidArgument, "twist element must have determinant 1");
  return {positive_c(g)};
}

std::vector<LValue> lvalues_series(const FourierSeries& f, const TwistSpec& tw, int s_max, double t0, double tol) {
  require_scalar(f);
  const int K = f.weight();
  require(s_max >= 1 && s_max <= K - 1, ErrorCode::InvalidArgument, "s must lie in 1..weight-1");
  require(t0 > 0 && std::isfinite(t0), ErrorCode::InvalidArgument, "t0 must be positive");
  require(tol > 0, ErrorCode::InvalidArgument, "tolerance must be positive");
  const GroupElement g = positive_c(tw.gamma);
  const double c = static_cast<double>(g.c);
  const Complex chi_inv = std::conj(f.data().chi(g));

  std::vector<specialfn::CompensatedSum> first(static_cast<std::size_t>(s_max)), second(first);
  std::vector<double> coeff_err(static_cast<std::size_t>(s_max)), last(coeff_err), prev(coeff_err), mass(coeff_err);
  std::vector<Complex> pref2(static_cast<std::size_t>(s_max));
  for (int s = 1; s <= s_max; ++s) pref2[s - 1] = chi_inv * i_power(K) * std::pow(-c, K - 2 * s);

  int64_t terms = 0;
  for (const auto& [key, coef] : f.entries()) {
    double x = f.exponent(key.l, key.j);
    if (x == 0) {
      require(coef.value == Complex{}, ErrorCode::Precondition, "L-series needs a zero constant term");
      continue;
    }
    ++terms;
    Complex tw1 = turn_to_complex(-static_cast<double>(g.d) * x / c);
    Complex tw2 = turn_to_complex(static_cast<double>(g.a) * x / c);
    for (int s = 1; s <= s_max; ++s) {
      Complex w1 = tw1 * gamma_ratio(s, x, t0);
      Complex w2 = pref2[s - 1] * tw2 * gamma_ratio(K - s, x, 1 / (c * c * t0));
      Complex t1 = coef.value * w1, t2 = coef.value * w2;
      first[s - 1] += t1;
      second[s - 1] += t2;
      coeff_err[s - 1] += coef.tail_bound * (std::abs(w1) + std::abs(w2));
      mass[s - 1] += std::abs(t1) + std::abs(t2);
      if (x > 0) {
        prev[s - 1] = last[s - 1];
        last[s - 1] = std::abs(t1) + std::abs(t2);
      }
    }
  }

  std::vector<LValue> out;
  for (int s = 1; s <= s_max; ++s) {
    double norm = std::pow(kTwoPi, s) / factorial(s - 1);
    LValue v;
    v.s = s;
    v.twist = {g};
    v.method = Method::Series;
    v.t0 = t0;
    v.terms = terms;
    v.value = norm * (first[s - 1].value() + second[s - 1].value());
    // The dropped terms decay at least geometrically; twice the last two kept terms bounds them
    // once the decay has set in.
    double cut = 2 * norm * (last[s - 1] + prev[s - 1]);
    // Rounding: terms and coefficients carry relative error of a few ulps each, which matters
    // when large terms cancel (weakly holomorphic forms at small t0).
    double rounding = 8 * 2.2e-16 * norm * mass[s - 1];
    v.err = cut + rounding + norm * coeff_err[s - 1];
    v.converged = cut <= tol * std::max(std::abs(v.value), 1e-300);
    out.push_back(v);
  }
  return out;
}

LValue lvalue_series(const FourierSeries& f, const TwistSpec& tw, int s, double t0, double tol) {
  require(s >= 1, ErrorCode::InvalidArgument, "s must be >= 1");
  return lvalues_series(f, tw, s, t0, tol).back();
}

std::vector<Complex> regularized_moments(const FourierSeries& f, const GroupElement& gamma, int max_power, double t0,
                                         double tol, double* err) {
  require_scalar(f);
  const int K = f.weight();
  require(max_power >= 0 && max_power <= K - 2, ErrorCode::InvalidArgument, "moment order must lie in 0..weight-2");
  require(t0 > 0 && std::isfinite(t0), ErrorCode::InvalidArgument, "t0 must be positive");
  const GroupElement g = positive_c(gamma);
  const double a = static_cast<double>(g.a), c = static_cast<double>(g.c), d = static_cast<double>(g.d);
  const double y0 = 1 / (c * c * t0);
  const std::size_t width = static_cast<std::size_t>(max_power) + 1;
  const Complex chi_inv = std::conj(f.data().chi(g));

  std::vector<Complex> upper(width), lower(width);
  // Principal part in closed form.
  for (const auto& [key, coef] : f.entries()) {
    double x = f.exponent(key.l, key.j);
    if (x == 0) require(coef.value == Complex{}, ErrorCode::Precondition, "regularized integral needs a zero constant term");
    if (x >= 0 || coef.value == Complex{}) continue;
    Complex e_up = coef.value * turn_to_complex(-x * d / c);
    Complex e_low = coef.value * turn_to_complex(x * a / c);
    for (std::size_t j = 0; j < width; ++j) {
      int p = K - 2 - static_cast<int>(j);
      upper[j] += e_up * gamma_ratio(static_cast<int>(j) + 1, x, t0);
      lower[j] += e_low * gamma_ratio(p + 1, x, y0);
    }
  }

  detail::ExpansionEvaluator regular(f, 0, true);
  double quad_err = 0;
  if (!regular.empty()) {
    double rate = kTwoPi * regular.min_positive_exponent();
    auto up = [&](double y, std::span<Complex> o) {
      Complex v = regular(Complex(-d / c, y));
      double pw = 1;
      for (std::size_t j = 0; j < width; ++j, pw *= y) o[j] = v * pw;
    };
    auto low = [&](double y, std::span<Complex> o) {
      Complex v = regular(Complex(a / c, y));
      for (std::size_t j = 0; j < width; ++j) o[j] = v * std::pow(y, K - 2 - static_cast<int>(j));
    };
    // Absolute tolerance from the size of the integrands at the split point.
    std::vector<Complex> probe(width);
    double scale = 0;
    up(t0, probe);
    for (auto v : probe) scale = std::max(scale, std::abs(v));
    low(y0, probe);
    for (auto v : probe) scale = std::max(scale, std::abs(v));
    double abs_tol = tol * std::max(scale / rate, 1e-300);
    auto qu = quadrature::integrate_to_infinity(up, width, t0, rate, abs_tol);
    auto ql = quadrature::integrate_to_infinity(low, width, y0, rate, abs_tol);
    for (std::size_t j = 0; j < width; ++j) {
      upper[j] += qu.value[j];
      lower[j] += ql.value[j];
    }
    quad_err = qu.error + ql.error;
  }

  std::vector<Complex> m(width);
  double worst = 0;
  for (std::size_t j = 0; j < width; ++j) {
    int jj = static_cast<int>(j);
    Complex pu = i_power(jj + 1);
    Complex pl = chi_inv * i_power(-K) * std::pow(c, K - 2 - 2 * jj) * i_power(jj + 1);
    m[j] = pu * upper[j] + pl * lower[j];
    worst = std::max(worst, quad_err * std::max(1.0, std::abs(pl)));
  }
  if (err) *err = worst;
  return m;
}

std::vector<LValue> lvalues_integral(const FourierSeries& f, const TwistSpec& tw, int s_max, double t0, double tol) {
  require_scalar(f);
  for (const auto& [key, coef] : f.entries())
    require(coef.value == Complex{} || f.exponent(key.l, key.j) > 0, ErrorCode::Precondition,
            "the integral representation is evaluated for cusp forms only");
  require(s_max >= 1 && s_max <= f.weight() - 1, ErrorCode::InvalidArgument, "s must lie in 1..weight-1");
  double err = 0;
  auto m = regularized_moments(f, tw.gamma, s_max - 1, t0, tol, &err);
  std::vector<LValue> out;
  for (int s = 1; s <= s_max; ++s) {
    double norm = std::pow(kTwoPi, s) / factorial(s - 1);
    LValue v;
    v.s = s;
    v.twist = TwistSpec::from(tw.gamma);
    v.method = Method::Integral;
    v.t0 = t0;
    v.terms = static_cast<int64_t>(f.entries().size());
    v.value = norm * i_power(-s) * m[static_cast<std::size_t>(s - 1)];
    v.err = norm * err;
    v.converged = true;
    out.push_back(v);
  }
  return out;
}

LValue lvalue_integral(const FourierSeries& f, const TwistSpec& tw, int s, double t0, double tol) {
  require(s >= 1, ErrorCode::InvalidArgument, "s must be >= 1");
  return lvalues_integral(f, tw, s, t0, tol).back();
}

FourierSeries series_for_lvalues(const std::function<FourierSeries(int64_t)>& build, std::span<const TwistSpec> twists,
                                 double tol, int64_t l_cap) {
  for (int64_t l_max = 16;; l_max *= 2) {
    FourierSeries f = build(l_max);
    bool ok = true;
    for (const auto& tw : twists) {
      for (const auto& v : lvalues_series(f, tw, f.weight() - 1, tw.default_t0(), tol)) ok = ok && v.converged;
      if (!ok) break;
    }
    if (ok || l_max >= l_cap) return f;
  }
}

Complex petersson_poincare(const FourierSeries& g, int64_t n, int alpha) {
  const auto& data = g.data();
  require(alpha >= 0 && alpha < data.dim(), ErrorCode::InvalidArgument, "component index out of range");
  double x = -static_cast<double>(n) + data.kappa[static_cast<std::size_t>(alpha)];
  require(x > 0, ErrorCode::Precondition, "the inner product needs a cusp-form Poincare series (-n + kappa > 0)");
  const Coefficient* c = g.find(-n, alpha);
  require(c != nullptr, ErrorCode::Precondition, "coefficient c(-n, alpha) is not available");
  int k = data.weight - 2;
  double lambda = data.lambda;
  return lambda * c->value * std::pow(lambda / (4 * std::numbers::pi * x), k + 1) * factorial(k);
}

double gram_normalization(const AutomorphyData& data) {
  int k = data.weight - 2;
  return 1 / (data.lambda * std::pow(data.lambda / (4 * std::numbers::pi), k + 1) * factorial(k));
}

PeriodFeatures period_features(const AutomorphyData& data, int64_t n, std::span<const GroupElement> generators,
                               const eichler::PeriodOptions& opt) {
  require(data.dim() == 1, ErrorCode::InvalidArgument, "period features are implemented for scalar forms only");
  const int k = data.weight - 2;
  PeriodFeatures pf;
  pf.n = n;
  std::vector<TwistSpec> twists;
  for (const auto& g : generators)
    if (g.c != 0) {
      pf.generators.push_back(g);
      twists.push_back(TwistSpec::from(g));
    }
  require(!pf.generators.empty(), ErrorCode::InvalidArgument, "no generator with c != 0");
  const eichler::ComboTerm term{1.0, n, 0};
  auto build = [&](int64_t l_max) {
    return eichler::supplementary(std::span<const eichler::ComboTerm>(&term, 1), data, l_max, opt.trunc);
  };
  FourierSeries star = series_for_lvalues(build, twists, opt.tol);
  double cf_bound = 0;
  pf.correction = eichler::eichler_constant(k) * poincare::constant_term_cf(star, opt.trunc, &cf_bound)[0];
  for (std::size_t i = 0; i < pf.generators.size(); ++i) {
    auto h = eichler::period_rH(star, pf.generators[i], opt);
    for (const auto& c : h.coeffs) pf.x.push_back(std::conj(c));
    pf.err += h.err;
    pf.converged = pf.converged && h.converged;
    double t0 = opt.t0 > 0 ? opt.t0 : twists[i].default_t0();
    for (const auto& v : lvalues_series(star, twists[i], k + 1, t0, opt.tol)) pf.lvalues.push_back(v.value);
  }
  return pf;
}

PairingMatrix fit_pairing(std::span<const PeriodFeatures> features, std::span<const GramEntry> training, int k) {
  require(!features.empty() && !training.empty(), ErrorCode::InvalidArgument, "pairing fit needs training entries");
  PairingMatrix pm;
  pm.k = k;
  pm.generators = features[0].generators;
  pm.size = features[0].x.size();
  require(pm.size == static_cast<std::size_t>(k + 1) * pm.generators.size(), ErrorCode::InvalidArgument,
          "feature vector does not match weight and generator count");
  for (const auto& f : features)
    require(f.x.size() == pm.size && f.generators == pm.generators, ErrorCode::InvalidArgument,
            "feature vectors must share generators");
  const std::size_t n = pm.size, unknowns = n * n;
  Eigen::MatrixXcd M(static_cast<Eigen::Index>(training.size()), static_cast<Eigen::Index>(unknowns));
  Eigen::VectorXcd rhs(static_cast<Eigen::Index>(training.size()));
  for (std::size_t r = 0; r < training.size(); ++r) {
    const auto& e = training[r];
    require(e.first < features.size() && e.second < features.size(), ErrorCode::InvalidArgument,
            "training entry refers to a missing feature vector");
    const auto& x = features[e.first].x;
    const auto& y = features[e.second].x;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(u * n + v)) = x[u] * std::conj(y[v]);
    rhs(static_cast<Eigen::Index>(r)) = e.value;
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(M);
  Eigen::VectorXcd sol = cod.solve(rhs);
  pm.rank = static_cast<int>(cod.rank());
  pm.rank_deficient = static_cast<std::size_t>(pm.rank) < unknowns;
  pm.B.assign(sol.data(), sol.data() + sol.size());
  for (const auto& e : training) {
    Complex got = predict_gram(pm, features[e.first], features[e.second]);
    pm.residual = std::max(pm.residual, std::abs(got - e.value) / std::max(std::abs(e.value), 1e-300));
  }
  return pm;
}

Complex predict_gram(const PairingMatrix& pm, const PeriodFeatures& f, const PeriodFeatures& g) {
  require(f.x.size() == pm.size && g.x.size() == pm.size, ErrorCode::InvalidArgument,
          "feature vectors do not match the pairing");
  Complex acc{};
  for (std::size_t u = 0; u < pm.size; ++u)
    for (std::size_t v = 0; v < pm.size; ++v) acc += pm.B[u * pm.size + v] * f.x[u] * std::conj(g.x[v]);
  return acc;
}

PairingConstants pairing_constants(const PairingMatrix& pm, const AutomorphyData& data) {
  const int k = pm.k;
  const std::size_t t = pm.generators.size(), n = pm.size, kk = static_cast<std::size_t>(k);
  PairingConstants pc;
  pc.k = k;
  pc.t = t;
  pc.A.assign(n * n, Complex{});
  pc.B.assign(n, Complex{});
  pc.C.assign(n, Complex{});
  const double nu = gram_normalization(data);
  // r^H(P*, gamma_i) has coefficient w(a) L(k - a + 1) on (tau + d_i/c_i)^a.
  auto w = [&](int a) { return i_power(1 - (k - a)) * factorial(k) / (factorial(a) * std::pow(kTwoPi, k - a + 1)); };
  // Weight of the (tau + d_i/c_i)^k coefficient in the constant-term correction: chi(gamma_i) c_i^k.
  std::vector<Complex> top(t);
  for (std::size_t i = 0; i < t; ++i)
    top[i] = data.chi(pm.generators[i]) * std::pow(static_cast<double>(pm.generators[i].c), k);
  auto b = [&](std::size_t a, std::size_t i, std::size_t bb, std::size_t j) {
    return pm.B[(a + (kk + 1) * i) * n + bb + (kk + 1) * j];
  };
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) {
      for (std::size_t p = 0; p <= kk; ++p) {
        Complex wp = std::conj(w(k - static_cast<int>(p)));
        for (std::size_t q = 0; q <= kk; ++q)
          pc.A[(p + (kk + 1) * i) * n + q + (kk + 1) * j] =
              nu * b(kk - p, i, kk - q, j) * wp * w(k - static_cast<int>(q));
        pc.B[p + (kk + 1) * i] += nu * wp * (b(kk - p, i, 0, j) - b(kk - p, i, kk, j) * top[j]);
        Complex wq = w(k - static_cast<int>(p));
        pc.C[p + (kk + 1) * j] += nu * wq * (b(0, i, kk - p, j) - std::conj(top[i]) * b(kk, i, kk - p, j));
      }
      pc.D += nu * (b(0, i, 0, j) - std::conj(top[i]) * b(kk, i, 0, j) - top[j] * b(0, i, kk, j) +
                    std::conj(top[i]) * top[j] * b(kk, i, kk, j));
    }
  return pc;
}

Complex gram_from_constants(const PairingConstants& pc, const PeriodFeatures& f, const PeriodFeatures& g) {
  const std::size_t n = pc.A.size() == 0 ? 0 : static_cast<std::size_t>(std::sqrt(static_cast<double>(pc.A.size())));
  require(f.lvalues.size() == n && g.lvalues.size() == n, ErrorCode::InvalidArgument,
          "L-value vectors do not match the pairing constants");
  Complex acc{};
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) acc += pc.A[u * n + v] * std::conj(f.lvalues[u]) * g.lvalues[v];
  for (std::size_t u = 0; u < n; ++u) {
    acc += pc.B[u] * std::conj(f.lvalues[u]) * g.correction;
    acc += pc.C[u] * std::conj(f.correction) * g.lvalues[u];
  }
  acc += pc.D * std::conj(f.correction) * g.correction;
  return acc;
}

}  // namespace mgrid::lfun
