#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mgrid/poincare.hpp"

namespace mgrid::eichler {

/// c_{k+2} = -k! / (2 pi i)^{k+1}.
Complex eichler_constant(int k);

/// Degree <= k polynomial attached to gamma. Coefficient i multiplies (tau + d/c)^i when c != 0
/// and tau^i when c = 0.
struct PeriodPolynomial {
  GroupElement gamma;
  int k = 0;
  std::vector<Complex> coeffs;
  double err = 0;  // estimated absolute error of the coefficients
  bool converged = true;

  double shift() const { return gamma.c == 0 ? 0.0 : static_cast<double>(gamma.d) / static_cast<double>(gamma.c); }
  Complex operator()(Complex tau) const;
  PeriodPolynomial& operator+=(const PeriodPolynomial& other);
};

/// chi(g)^{-1} (c tau + d)^k r(g tau): the weight -k slash of a period polynomial, evaluated at tau.
Complex slash(const PeriodPolynomial& r, const Multiplier& chi, const GroupElement& g, Complex tau);

/// Holomorphic Eichler integral: a(n, j) ((n + kappa_j)/lambda)^{-(k+1)}, weight -k, same (chi, rho).
/// Requires a zero constant term.
FourierSeries eichler_E(const FourierSeries& f);

struct HolomorphicEichler {
  FourierSeries series;
  std::vector<Complex> constant;  // c_f per component
  double constant_bound = 0;

  Complex eval(Complex tau, int j) const { return series.eval(tau, j) + constant[static_cast<std::size_t>(j)]; }
};

/// E_f plus the constant term c_f.
HolomorphicEichler eichler_EH(const FourierSeries& f, const TruncationParams& trunc);

/// Non-holomorphic Eichler integral of a cusp form, per component: quadrature on [tau, tau + iV]
/// with the remaining ray evaluated in closed form.
std::vector<Complex> eichler_EN(const FourierSeries& f, Complex tau, const PrecisionContext& ctx);

/// The same quantity summed term by term from the closed form of each exponential.
std::vector<Complex> eichler_EN_series(const FourierSeries& f, Complex tau);

/// One term b * P_{n,alpha} of a Poincare combination.
struct ComboTerm {
  Complex b{};
  int64_t n = 0;
  int alpha = 0;
};

/// sum b_i P_{n_i,alpha_i} for l up to l_max (each -n_i + kappa_{alpha_i} > 0).
FourierSeries poincare_combination(std::span<const ComboTerm> combo, const AutomorphyData& data, int64_t l_max,
                                   const TruncationParams& trunc);

/// The supplementary function sum conj(b_i) P_{n_i',alpha_i} with conjugate data.
FourierSeries supplementary(std::span<const ComboTerm> combo, const AutomorphyData& data, int64_t l_max,
                            const TruncationParams& trunc);

struct PeriodOptions {
  double t0 = 0;       // split point of the L-series; 0 selects 1/|c|
  double tol = 1e-12;  // relative tolerance for L-values and quadrature
  TruncationParams trunc;
};

/// r(f, gamma) from the k + 1 twisted L-values (scalar f, zero constant term, c != 0).
PeriodPolynomial period_r(const FourierSeries& f, const GroupElement& g, const PeriodOptions& opt);

/// r(f, gamma) for gamma = +-T^m: zero; `err` reports how far the stored expansion is from T-periodic.
PeriodPolynomial period_r_parabolic(const FourierSeries& f, const GroupElement& g);

/// r^H = r + c_{k+2} c_f (1 - chi(gamma)^{-1} (c tau + d)^k).
PeriodPolynomial period_rH(const FourierSeries& f, const GroupElement& g, const PeriodOptions& opt);

/// r^N(f, gamma; tau) = conj(int_{gamma^{-1} i infinity}^{i infinity} f(z) (conj(tau) - z)^k dz), by quadrature.
PeriodPolynomial period_rN(const FourierSeries& f, const GroupElement& g, const PeriodOptions& opt);

/// Regularized integral of f(z) (tau - z)^k from -d/c to i infinity as a polynomial in tau + d/c.
PeriodPolynomial period_integral(const FourierSeries& f, const GroupElement& g, const PeriodOptions& opt);

/// c_{k+2} (E_f - E_f|gamma)(tau) straight from the series of E_f.
Complex period_direct(const FourierSeries& f, const GroupElement& g, Complex tau);

struct IdentityReport {
  std::vector<Complex> points;
  std::vector<Complex> lhs, rhs;
  double residual = 0;  // max |lhs - rhs| / max(1, max |lhs|)
  bool converged = true;
};

/// r^H(f, gamma; tau) against conj(r^H(f*, gamma; conj(tau))) at the sample points.
IdentityReport check_supplementary_identity(const FourierSeries& f, const FourierSeries& f_star, const GroupElement& g,
                                            std::span<const Complex> points, const PeriodOptions& opt);

/// Fixed generic sample points for identity checks.
std::vector<Complex> sample_points();

}  // namespace mgrid::eichler
