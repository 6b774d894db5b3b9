#include "mgrid/grid.hpp"

#include <cmath>
#include <numbers>

namespace mgrid::grid {
namespace {

constexpr double kPi = std::numbers::pi;

int k_of(const AutomorphyData& data) {
  require(data.weight >= 3, ErrorCode::InvalidArgument, "a grid needs weight k + 2 >= 3");
  return data.weight - 2;
}

double factorial(int k) { return std::tgamma(static_cast<double>(k) + 1.0); }

// -n2 + kappa'_{alpha2}, required negative.
double leading_exponent(const AutomorphyData& cdata, int64_t n2, int alpha2) {
  require(alpha2 >= 0 && alpha2 < cdata.dim(), ErrorCode::InvalidArgument, "component alpha2 out of range");
  double mu = static_cast<double>(-n2) + cdata.kappa[alpha2];
  require(mu < 0, ErrorCode::InvalidArgument, "G_{n2} needs n2 - kappa'_{alpha2} > 0");
  return mu;
}

// Shadow index l_s with l_s + kappa_j = -(l + kappa'_j).
int64_t shadow_index(int64_t l, double kappa_j) { return kappa_j == 0.0 ? -l : -l - 1; }

Complex qpower_u(double x, double u) { return turn_to_complex(x * u); }

}  // namespace

Complex HarmonicForm::eval(Complex tau, int j, const PrecisionContext& ctx) const {
  specialfn::CompensatedSum acc;
  acc.add(holomorphic.eval(tau, j));
  for (const auto& [key, c] : nonholomorphic.entries()) {
    if (key.j != j) continue;
    double x = nonholomorphic.exponent(key.l, j);
    double h = specialfn::h_function(2 * kPi * x * tau.imag(), k, ctx);
    acc.add(c.value * h * qpower_u(x, tau.real()));
  }
  return acc.value();
}

FourierSeries build_f(const AutomorphyData& data, int64_t n1, int alpha1, int64_t l_max, const TruncationParams& trunc) {
  require(alpha1 >= 0 && alpha1 < data.dim(), ErrorCode::InvalidArgument, "component alpha1 out of range");
  require(static_cast<double>(n1) - data.kappa[alpha1] >= 0, ErrorCode::InvalidArgument,
          "f_{n1} needs n1 - kappa_{alpha1} >= 0");
  return poincare::poincare_series(data, n1, alpha1, 0, std::max<int64_t>(l_max, 0), trunc);
}

namespace {

// b(l, j) of G^+_{n2,alpha2} for several (l, j) with l + kappa'_j >= 0.
std::vector<poincare::CoefficientResult> holomorphic_coefficients(const AutomorphyData& data, int64_t n2, int alpha2,
                                                                  const std::vector<std::pair<int64_t, int>>& wanted,
                                                                  const TruncationParams& trunc) {
  const int k = k_of(data);
  AutomorphyData cdata = data.conjugate(data.weight);
  const double mu = leading_exponent(cdata, n2, alpha2);
  std::vector<poincare::CoefficientResult> out(wanted.size());
  std::vector<std::pair<int64_t, int>> positive;
  bool need_constant = false;
  for (auto [l, j] : wanted) {
    require(j >= 0 && j < data.dim(), ErrorCode::InvalidArgument, "component j out of range");
    double nu = static_cast<double>(l) + cdata.kappa[j];
    require(nu >= 0, ErrorCode::InvalidArgument, "holomorphic coefficient needs l + kappa'_j >= 0");
    if (nu > 0)
      positive.emplace_back(l, j);
    else
      need_constant = true;
  }
  auto pos = poincare::poincare_coefficients(cdata, n2, alpha2, positive, trunc);
  std::vector<Complex> cf;
  double bound = 0;
  if (need_constant) {
    FourierSeries lead(cdata);
    lead.add(-n2, alpha2, 1.0);
    cf = poincare::constant_term_cf(lead, trunc, &bound);
  }
  size_t ip = 0;
  for (size_t i = 0; i < wanted.size(); ++i) {
    auto [l, j] = wanted[i];
    double nu = static_cast<double>(l) + cdata.kappa[j];
    poincare::CoefficientResult r;
    double s;
    if (nu > 0) {
      r = pos[ip++];
      s = std::pow(mu / nu, k + 1);
      r.value *= s;
    } else {
      s = std::pow(mu / cdata.lambda, k + 1);
      r.value = cf[j] * s;
      r.tail_bound = bound;
      r.c_used = trunc.c_max;
    }
    r.tail_bound *= std::abs(s);
    r.converged = r.tail_bound <= trunc.tail_tol * std::max(1.0, std::abs(r.value));
    out[i] = r;
  }
  return out;
}

int shift(double kappa) { return kappa == 0.0 ? 0 : 1; }  // kappa + kappa'

}  // namespace

poincare::CoefficientResult holomorphic_coefficient(const AutomorphyData& data, int64_t n2, int alpha2, int64_t l, int j,
                                                    const TruncationParams& trunc) {
  return holomorphic_coefficients(data, n2, alpha2, {{l, j}}, trunc)[0];
}

poincare::CoefficientResult nonholomorphic_coefficient(const AutomorphyData& data, int64_t n2, int alpha2, int64_t l,
                                                       int j, const TruncationParams& trunc) {
  const int k = k_of(data);
  AutomorphyData cdata = data.conjugate(data.weight);
  const double mu = leading_exponent(cdata, n2, alpha2);
  require(j >= 0 && j < data.dim(), ErrorCode::InvalidArgument, "component j out of range");
  double x = static_cast<double>(l) + cdata.kappa[j];
  require(x < 0, ErrorCode::InvalidArgument, "non-holomorphic coefficient needs l + kappa'_j < 0");
  int64_t np = n_prime(n2, data.kappa[alpha2]);
  int64_t ls = shadow_index(l, data.kappa[j]);
  auto r = poincare::poincare_coefficient(data, np, alpha2, ls, j, trunc);
  if (ls == -np && j == alpha2) r.value += 1.0;
  double s = -std::pow(mu / x, k + 1) / factorial(k);
  r.value = std::conj(r.value) * s;
  r.tail_bound *= std::abs(s);
  return r;
}

HarmonicForm build_G(const AutomorphyData& data, int64_t n2, int alpha2, int64_t l_max, const TruncationParams& trunc) {
  const int k = k_of(data);
  AutomorphyData cdata = data.conjugate(data.weight);
  const double mu = leading_exponent(cdata, n2, alpha2);
  l_max = std::max<int64_t>(l_max, 0);
  HarmonicForm g;
  g.k = k;
  g.n2 = n2;
  g.alpha2 = alpha2;
  g.holomorphic = FourierSeries(data.conjugate(-k));
  g.nonholomorphic = FourierSeries(data.conjugate(-k));
  g.holomorphic.n = n2;
  g.holomorphic.alpha = alpha2;
  g.holomorphic.truncation = trunc;

  FourierSeries pc = poincare::poincare_series(cdata, n2, alpha2, 0, l_max, trunc);
  g.holomorphic.c_used = pc.c_used;
  for (const auto& [key, c] : pc.entries()) {
    double nu = static_cast<double>(key.l) + cdata.kappa[key.j];
    if (nu <= 0) continue;
    double s = std::pow(mu / nu, k + 1);
    g.holomorphic.set(key.l, key.j, {c.value * s, c.tail_bound * std::abs(s)});
  }
  g.holomorphic.set(-n2, alpha2, {1.0, 0.0});
  FourierSeries lead(cdata);
  lead.add(-n2, alpha2, 1.0);
  double bound = 0;
  auto cf = poincare::constant_term_cf(lead, trunc, &bound);
  double s = std::pow(mu / cdata.lambda, k + 1);
  for (int j = 0; j < data.dim(); ++j)
    if (cdata.kappa[j] == 0.0) g.holomorphic.set(0, j, {cf[j] * s, bound * std::abs(s)});

  int64_t np = n_prime(n2, data.kappa[alpha2]);
  FourierSeries shadow = poincare::poincare_series(data, np, alpha2, 0, l_max, trunc);
  const double kf = factorial(k);
  for (const auto& [key, c] : shadow.entries()) {
    double nu = static_cast<double>(key.l) + data.kappa[key.j];
    if (nu <= 0) continue;
    int64_t l = data.kappa[key.j] == 0.0 ? -key.l : -key.l - 1;
    double x = static_cast<double>(l) + cdata.kappa[key.j];
    double sc = -std::pow(mu / x, k + 1) / kf;
    g.nonholomorphic.set(l, key.j, {std::conj(c.value) * sc, c.tail_bound * std::abs(sc)});
  }
  return g;
}

std::vector<DualityRecord> verify_duality_grid(const AutomorphyData& data,
                                               const std::vector<std::pair<int64_t, int>>& first,
                                               const std::vector<std::pair<int64_t, int>>& second,
                                               const TruncationParams& trunc) {
  k_of(data);
  AutomorphyData cdata = data.conjugate(data.weight);
  for (auto [n1, alpha1] : first) {
    require(alpha1 >= 0 && alpha1 < data.dim(), ErrorCode::InvalidArgument, "component alpha1 out of range");
    require(static_cast<double>(n1) - data.kappa[alpha1] >= 0, ErrorCode::InvalidArgument,
            "duality needs n1 - kappa_{alpha1} >= 0");
  }
  for (auto [n2, alpha2] : second) leading_exponent(cdata, n2, alpha2);
  const size_t m = second.size();
  std::vector<DualityRecord> recs(first.size() * m);
  for (size_t a = 0; a < first.size(); ++a) {
    auto [n1, alpha1] = first[a];
    std::vector<std::pair<int64_t, int>> wanted;
    for (auto [n2, alpha2] : second) wanted.emplace_back(n2 - shift(data.kappa[alpha2]), alpha2);
    auto lhs = poincare::poincare_coefficients(data, n1, alpha1, wanted, trunc);
    for (size_t b = 0; b < m; ++b) {
      DualityRecord& r = recs[a * m + b];
      r.n1 = n1;
      r.alpha1 = alpha1;
      r.n2 = second[b].first;
      r.alpha2 = second[b].second;
      r.lhs = lhs[b].value;
      r.lhs_bound = lhs[b].tail_bound;
    }
  }
  for (size_t b = 0; b < m; ++b) {
    auto [n2, alpha2] = second[b];
    std::vector<std::pair<int64_t, int>> wanted;
    for (auto [n1, alpha1] : first) wanted.emplace_back(n1 - shift(data.kappa[alpha1]), alpha1);
    auto rhs = holomorphic_coefficients(data, n2, alpha2, wanted, trunc);
    for (size_t a = 0; a < first.size(); ++a) {
      DualityRecord& r = recs[a * m + b];
      r.rhs = rhs[a].value;
      r.rhs_bound = rhs[a].tail_bound;
      double scale = std::max({1.0, std::abs(r.lhs), std::abs(r.rhs)});
      r.residual = std::abs(r.lhs + r.rhs) / scale;
      r.tolerance = (r.lhs_bound + r.rhs_bound) / scale + 1e-12;
      r.ok = r.residual <= r.tolerance;
    }
  }
  return recs;
}

DualityRecord verify_duality(const AutomorphyData& data, int64_t n1, int alpha1, int64_t n2, int alpha2,
                             const TruncationParams& trunc) {
  return verify_duality_grid(data, {{n1, alpha1}}, {{n2, alpha2}}, trunc)[0];
}

FourierSeries apply_Dk1(const HarmonicForm& g) {
  AutomorphyData d = g.holomorphic.data();
  d.weight = g.k + 2;
  FourierSeries out(d);
  for (const auto& [key, c] : g.holomorphic.entries()) {
    double x = g.holomorphic.exponent(key.l, key.j);
    if (x == 0) continue;
    double s = std::pow(x, g.k + 1);
    out.set(key.l, key.j, {c.value * s, c.tail_bound * std::abs(s)});
  }
  return out;
}

FourierSeries apply_xi(const HarmonicForm& g, const AutomorphyData& data) {
  FourierSeries out(data);
  for (const auto& [key, c] : g.nonholomorphic.entries()) {
    double x = g.nonholomorphic.exponent(key.l, key.j);
    int64_t ls = shadow_index(key.l, data.kappa[key.j]);
    double s = -std::pow(-4 * kPi * x, g.k + 1);
    out.set(ls, key.j, {std::conj(c.value) * s, c.tail_bound * std::abs(s)});
  }
  return out;
}

SymmetryRecord check_main2_symmetry(const AutomorphyData& data, int64_t n2, int alpha_n, int64_t m2, int alpha_m,
                                    const TruncationParams& trunc) {
  const int k = k_of(data);
  AutomorphyData cdata = data.conjugate(data.weight);
  double en = leading_exponent(cdata, n2, alpha_n);
  double em = leading_exponent(cdata, m2, alpha_m);
  auto x = nonholomorphic_coefficient(data, n2, alpha_n, -m2, alpha_m, trunc);
  auto y = nonholomorphic_coefficient(data, m2, alpha_m, -n2, alpha_n, trunc);
  SymmetryRecord rec;
  rec.lhs = x.value * std::pow(em, k + 1);
  rec.rhs = std::conj(y.value) * std::pow(en, k + 1);
  double scale = std::max({1e-300, std::abs(rec.lhs), std::abs(rec.rhs)});
  rec.residual = std::abs(rec.lhs - rec.rhs) / scale;
  rec.tolerance = (x.tail_bound * std::pow(std::abs(em), k + 1) + y.tail_bound * std::pow(std::abs(en), k + 1)) / scale +
                  1e-12;
  rec.ok = rec.residual <= rec.tolerance;
  return rec;
}

}  // namespace mgrid::grid
