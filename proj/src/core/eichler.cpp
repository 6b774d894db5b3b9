#include "mgrid/eichler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "expansion.hpp"
#include "mgrid/lfun.hpp"
#include "mgrid/quadrature.hpp"

namespace mgrid::eichler {
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

double binomial(int n, int m) { return factorial(n) / (factorial(m) * factorial(n - m)); }

int weight_k(const FourierSeries& f) { return f.weight() - 2; }

void require_scalar(const FourierSeries& f) {
  require(f.dim() == 1, ErrorCode::InvalidArgument, "periods are implemented for scalar-valued forms only");
}

void require_cusp_form(const FourierSeries& f) {
  for (const auto& [key, c] : f.entries())
    require(c.value == Complex{} || f.exponent(key.l, key.j) > 0, ErrorCode::Precondition,
            "operation requires a cusp form (no principal part or constant term)");
}

// e^{2 pi i x tau} (-i)^k i k! e^{4 pi x v} Gamma(k+1, 2 pi x (2v + V)) / (2 pi x)^{k+1} / e^{2 pi i x tau}
// folded into one finite sum: the integral of e^{2 pi i x z} (conj(tau) - z)^k over [tau + iV, i infinity).
Complex ray_term(double x, Complex tau, double V, int k) {
  double v = tau.imag();
  double y = kTwoPi * x * (2 * v + V);
  double term = 1, sum = 1;
  for (int m = 1; m <= k; ++m) {
    term *= y / m;
    sum += term;
  }
  double mag = factorial(k) * std::exp(-kTwoPi * x * (v + V) + std::log(sum) - (k + 1) * std::log(kTwoPi * x));
  return mag * turn_to_complex(x * tau.real()) * i_power(1 - k);
}

}  // namespace

Complex eichler_constant(int k) {
  require(k >= 0, ErrorCode::InvalidArgument, "k must be non-negative");
  return -factorial(k) / (std::pow(kTwoPi, k + 1) * i_power(k + 1));
}

Complex PeriodPolynomial::operator()(Complex tau) const {
  Complex x = tau + shift(), acc{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

PeriodPolynomial& PeriodPolynomial::operator+=(const PeriodPolynomial& other) {
  require(other.gamma == gamma && other.k == k, ErrorCode::InvalidArgument, "period polynomials do not match");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += other.coeffs[i];
  err += other.err;
  converged = converged && other.converged;
  return *this;
}

Complex slash(const PeriodPolynomial& r, const Multiplier& chi, const GroupElement& g, Complex tau) {
  Complex j = static_cast<double>(g.c) * tau + static_cast<double>(g.d);
  return std::conj(chi(g)) * std::pow(j, r.k) * r(group::moebius(g, tau));
}

FourierSeries eichler_E(const FourierSeries& f) {
  int k = weight_k(f);
  require(k >= 1, ErrorCode::InvalidArgument, "Eichler integrals need weight >= 3");
  AutomorphyData d = f.data();
  d.weight = -k;
  FourierSeries out(d);
  for (const auto& [key, c] : f.entries()) {
    double x = f.exponent(key.l, key.j);
    if (x == 0) {
      require(c.value == Complex{}, ErrorCode::Precondition, "Eichler integral needs a zero constant term");
      continue;
    }
    double s = std::pow(x, -(k + 1));
    out.set(key.l, key.j, {c.value * s, c.tail_bound * std::abs(s)});
  }
  out.n = f.n;
  out.alpha = f.alpha;
  out.c_used = f.c_used;
  out.truncation = f.truncation;
  return out;
}

HolomorphicEichler eichler_EH(const FourierSeries& f, const TruncationParams& trunc) {
  HolomorphicEichler h{eichler_E(f), {}, 0};
  h.constant = poincare::constant_term_cf(f, trunc, &h.constant_bound);
  return h;
}

std::vector<Complex> eichler_EN(const FourierSeries& f, Complex tau, const PrecisionContext& ctx) {
  ctx.validate();
  require(tau.imag() > 0, ErrorCode::InvalidArgument, "tau must lie in the upper half-plane");
  require_cusp_form(f);
  int k = weight_k(f);
  Complex ck = eichler_constant(k);
  Complex phase = i_power(1 - k);  // (-i)^k i
  std::vector<Complex> out(static_cast<std::size_t>(f.dim()));
  for (int j = 0; j < f.dim(); ++j) {
    detail::ExpansionEvaluator ev(f, j, false);
    if (ev.empty()) continue;
    double xmin = ev.min_positive_exponent();
    double v = tau.imag();
    double tol = std::max(ctx.target_tol, 1e-16);
    double V = std::log(1 / tol) / (kTwoPi * xmin) + 1;
    auto integrand = [&](double t, std::span<Complex> o) {
      o[0] = ev(tau + Complex(0, t)) * phase * std::pow(2 * v + t, k);
    };
    // Scale for the absolute tolerance: size of the integrand times its decay length.
    std::vector<Complex> probe(1);
    integrand(0, probe);
    double scale = std::abs(probe[0]) / (kTwoPi * xmin);
    auto q = quadrature::integrate(integrand, 1, 0, V, tol * std::max(scale, 1e-300));
    Complex tail{};
    for (const auto& [key, c] : f.entries())
      if (key.j == j) tail += c.value * ray_term(f.exponent(key.l, j), tau, V, k);
    out[static_cast<std::size_t>(j)] = std::conj(q.value[0] + tail) / ck;
  }
  return out;
}

std::vector<Complex> eichler_EN_series(const FourierSeries& f, Complex tau) {
  require(tau.imag() > 0, ErrorCode::InvalidArgument, "tau must lie in the upper half-plane");
  require_cusp_form(f);
  int k = weight_k(f);
  Complex ck = eichler_constant(k);
  std::vector<Complex> out(static_cast<std::size_t>(f.dim()));
  for (const auto& [key, c] : f.entries())
    out[static_cast<std::size_t>(key.j)] += c.value * ray_term(f.exponent(key.l, key.j), tau, 0, k);
  for (auto& v : out) v = std::conj(v) / ck;
  return out;
}

FourierSeries poincare_combination(std::span<const ComboTerm> combo, const AutomorphyData& data, int64_t l_max,
                                   const TruncationParams& trunc) {
  FourierSeries out(data);
  for (const auto& t : combo) {
    require(t.alpha >= 0 && t.alpha < data.dim(), ErrorCode::InvalidArgument, "component index out of range");
    require(-static_cast<double>(t.n) + data.kappa[static_cast<std::size_t>(t.alpha)] > 0, ErrorCode::Precondition,
            "combination terms must be cusp forms (-n + kappa_alpha > 0)");
    out.add_scaled(poincare::poincare_series(data, t.n, t.alpha, 0, l_max, trunc), t.b);
  }
  out.truncation = trunc;
  return out;
}

FourierSeries supplementary(std::span<const ComboTerm> combo, const AutomorphyData& data, int64_t l_max,
                            const TruncationParams& trunc) {
  AutomorphyData conj = data.conjugate(data.weight);
  FourierSeries out(conj);
  for (const auto& t : combo) {
    require(t.alpha >= 0 && t.alpha < data.dim(), ErrorCode::InvalidArgument, "component index out of range");
    double kappa = data.kappa[static_cast<std::size_t>(t.alpha)];
    require(-static_cast<double>(t.n) + kappa > 0, ErrorCode::Precondition,
            "supplementary functions are defined for cusp combinations (-n + kappa_alpha > 0)");
    out.add_scaled(poincare::poincare_series(conj, n_prime(t.n, kappa), t.alpha, 0, l_max, trunc), std::conj(t.b));
  }
  out.truncation = trunc;
  return out;
}

PeriodPolynomial period_r(const FourierSeries& f, const GroupElement& g, const PeriodOptions& opt) {
  require_scalar(f);
  if (g.c == 0) return period_r_parabolic(f, g);
  int k = weight_k(f);
  auto tw = lfun::TwistSpec::from(g);
  double t0 = opt.t0 > 0 ? opt.t0 : tw.default_t0();
  auto lv = lfun::lvalues_series(f, tw, k + 1, t0, opt.tol);
  PeriodPolynomial p{g, k, std::vector<Complex>(static_cast<std::size_t>(k + 1)), 0, true};
  for (int n = 0; n <= k; ++n) {
    Complex w = i_power(1 - n) * binomial(k, n) * factorial(n) / std::pow(kTwoPi, n + 1);
    p.coeffs[static_cast<std::size_t>(k - n)] = w * lv[static_cast<std::size_t>(n)].value;
    p.err += std::abs(w) * lv[static_cast<std::size_t>(n)].err;
    p.converged = p.converged && lv[static_cast<std::size_t>(n)].converged;
  }
  return p;
}

PeriodPolynomial period_r_parabolic(const FourierSeries& f, const GroupElement& g) {
  require_scalar(f);
  require(g.c == 0 && g.is_unimodular(), ErrorCode::InvalidArgument, "parabolic periods need gamma = +-T^m");
  int k = weight_k(f);
  PeriodPolynomial p{g, k, std::vector<Complex>(static_cast<std::size_t>(k + 1)), 0, true};
  // E_f - E_f|gamma has coefficients a(l) x^{-(k+1)} (1 - chi(gamma)^{-1} d^k e^{2 pi i x b / d}).
  Complex factor = std::conj(f.data().chi(g)) * std::pow(static_cast<double>(g.d), k);
  double shift = static_cast<double>(g.b) / static_cast<double>(g.d);
  for (const auto& [key, c] : f.entries()) {
    double x = f.exponent(key.l, key.j);
    if (x == 0) continue;
    double defect = std::abs(1.0 - factor * turn_to_complex(x * shift));
    p.err = std::max(p.err, std::abs(c.value) * std::pow(std::abs(x), -(k + 1)) * defect);
  }
  return p;
}

PeriodPolynomial period_rH(const FourierSeries& f, const GroupElement& g, const PeriodOptions& opt) {
  PeriodPolynomial p = period_r(f, g, opt);
  int k = p.k;
  double bound = 0;
  Complex cf = poincare::constant_term_cf(f, opt.trunc, &bound)[0];
  if (cf == Complex{} && bound == 0) return p;
  Complex e = eichler_constant(k) * cf;
  Complex chi_inv = std::conj(f.data().chi(g));
  if (g.c == 0) {
    p.coeffs[0] += e * (1.0 - chi_inv * std::pow(static_cast<double>(g.d), k));
  } else {
    double ck = std::pow(static_cast<double>(g.c), k);
    p.coeffs[0] += e;
    p.coeffs[static_cast<std::size_t>(k)] -= e * chi_inv * ck;
    p.err += std::abs(eichler_constant(k)) * bound * (1 + std::abs(ck));
  }
  return p;
}

PeriodPolynomial period_integral(const FourierSeries& f, const GroupElement& g, const PeriodOptions& opt) {
  require_scalar(f);
  require(g.c != 0, ErrorCode::InvalidArgument, "period integral needs c != 0");
  int k = weight_k(f);
  double t0 = opt.t0 > 0 ? opt.t0 : 1.0 / std::abs(static_cast<double>(g.c));
  double err = 0;
  auto m = lfun::regularized_moments(f, g, k, t0, opt.tol, &err);
  PeriodPolynomial p{g, k, std::vector<Complex>(static_cast<std::size_t>(k + 1)), 0, true};
  // (tau - z)^k = sum_i C(k, i) (tau + d/c)^i (-(z + d/c))^{k-i}.
  for (int i = 0; i <= k; ++i) {
    double w = binomial(k, i) * ((k - i) % 2 == 0 ? 1.0 : -1.0);
    p.coeffs[static_cast<std::size_t>(i)] = w * m[static_cast<std::size_t>(k - i)];
    p.err += std::abs(w) * err;
  }
  return p;
}

PeriodPolynomial period_rN(const FourierSeries& f, const GroupElement& g, const PeriodOptions& opt) {
  require_cusp_form(f);
  PeriodPolynomial p = period_integral(f, g, opt);
  // conj(sum C(k,i) I_i (conj(tau) + d/c)^i) = sum conj(C(k,i) I_i) (tau + d/c)^i.
  for (auto& c : p.coeffs) c = std::conj(c);
  return p;
}

Complex period_direct(const FourierSeries& f, const GroupElement& g, Complex tau) {
  require_scalar(f);
  int k = weight_k(f);
  FourierSeries e = eichler_E(f);
  Complex j = static_cast<double>(g.c) * tau + static_cast<double>(g.d);
  Complex moved = e.eval(group::moebius(g, tau), 0);
  return eichler_constant(k) * (e.eval(tau, 0) - std::conj(f.data().chi(g)) * std::pow(j, k) * moved);
}

IdentityReport check_supplementary_identity(const FourierSeries& f, const FourierSeries& f_star, const GroupElement& g,
                                            std::span<const Complex> points, const PeriodOptions& opt) {
  IdentityReport rep;
  PeriodPolynomial lhs = period_rH(f, g, opt);
  PeriodPolynomial rhs = period_rH(f_star, g, opt);
  rep.converged = lhs.converged && rhs.converged;
  double scale = 1, worst = 0;
  for (Complex tau : points) {
    rep.points.push_back(tau);
    rep.lhs.push_back(lhs(tau));
    rep.rhs.push_back(std::conj(rhs(std::conj(tau))));
    scale = std::max(scale, std::abs(rep.lhs.back()));
    worst = std::max(worst, std::abs(rep.lhs.back() - rep.rhs.back()));
  }
  rep.residual = worst / scale;
  return rep;
}

std::vector<Complex> sample_points() {
  return {{0, 1}, {1.0 / 3, 1}, {-0.25, 2}, {0.1, 0.7}, {-0.6, 1.5}};
}

}  // namespace mgrid::eichler
