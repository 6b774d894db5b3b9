#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mgrid/eichler.hpp"

namespace mgrid::lfun {

/// Twist zeta_{c lambda}^{-d} attached to gamma, stored with c > 0 (gamma and -gamma give the same twist).
struct TwistSpec {
  GroupElement gamma;

  static TwistSpec from(const GroupElement& g);
  double default_t0() const { return 1.0 / static_cast<double>(gamma.c); }
};

enum class Method { Series, Integral };

struct LValue {
  int s = 0;
  TwistSpec twist;
  Complex value{};
  Method method = Method::Series;
  double t0 = 0;
  double err = 0;
  bool converged = false;
  int64_t terms = 0;  // stored coefficients used
};

/// L(f, zeta^{-d}, s) for s = 1..s_max from the incomplete-gamma series. Scalar f with zero
/// constant term; s_max <= weight - 1. `tol` is relative and applies to the truncation of the
/// m-sum; `err` also includes rounding and coefficient tail bounds.
std::vector<LValue> lvalues_series(const FourierSeries& f, const TwistSpec& tw, int s_max, double t0, double tol);
LValue lvalue_series(const FourierSeries& f, const TwistSpec& tw, int s, double t0, double tol);

/// The same values from the integral representation, by quadrature. Cusp forms only.
std::vector<LValue> lvalues_integral(const FourierSeries& f, const TwistSpec& tw, int s_max, double t0, double tol);
LValue lvalue_integral(const FourierSeries& f, const TwistSpec& tw, int s, double t0, double tol);

/// Regularized integrals of f(z) (z + d/c)^j dz from -d/c to i infinity, j = 0..max_power, split at
/// -d/c + i t0. Principal-part terms are integrated in closed form.
std::vector<Complex> regularized_moments(const FourierSeries& f, const GroupElement& g, int max_power, double t0,
                                         double tol, double* err = nullptr);

/// Builds build(l_max) for l_max = 16, 32, ... until the L-values s = 1..weight-1 for every twist converge.
FourierSeries series_for_lvalues(const std::function<FourierSeries(int64_t)>& build, std::span<const TwistSpec> twists,
                                 double tol, int64_t l_cap = 2048);

/// (g, P_{n,alpha}) by unfolding: lambda c(-n, alpha) (lambda / (4 pi (-n + kappa_alpha)))^{k+1} k!.
Complex petersson_poincare(const FourierSeries& g, int64_t n, int alpha);

/// Period data of a cusp Poincare series P_n, taken from its supplementary function P_n*.
struct PeriodFeatures {
  int64_t n = 0;
  std::vector<GroupElement> generators;  // c != 0 only
  /// conj of the coefficients of r^H(P_n*, gamma_i; tau) in (tau + d_i/c_i)^a, index a + (k+1) i.
  std::vector<Complex> x;
  /// L(P_n*, zeta_i, s), index (s-1) + (k+1) i.
  std::vector<Complex> lvalues;
  /// c_{k+2} c_f(P_n*): the constant-term correction of r^H.
  Complex correction{};
  double err = 0;
  bool converged = true;
};

PeriodFeatures period_features(const AutomorphyData& data, int64_t n, std::span<const GroupElement> generators,
                               const eichler::PeriodOptions& opt);

/// Bilinear form {x, y} = sum B_{uv} x_u conj(y_v) on period coordinates (u = a + (k+1) i).
struct PairingMatrix {
  int k = 0;
  std::vector<GroupElement> generators;
  std::size_t size = 0;
  std::vector<Complex> B;  // row-major size x size
  int rank = 0;
  double residual = 0;  // max relative misfit on the training entries
  bool rank_deficient = false;

  Complex at(int a, int b, std::size_t i, std::size_t j) const {
    return B[(static_cast<std::size_t>(a) + (k + 1) * i) * size + static_cast<std::size_t>(b) + (k + 1) * j];
  }
};

struct GramEntry {
  std::size_t first = 0, second = 0;  // indices into the feature list
  Complex value{};
};

/// Minimum-norm least-squares B reproducing the given Gram entries.
PairingMatrix fit_pairing(std::span<const PeriodFeatures> features, std::span<const GramEntry> training, int k);

/// {phi(P_n1), phi(P_n2)} from the fitted B and the period features.
Complex predict_gram(const PairingMatrix& pm, const PeriodFeatures& f, const PeriodFeatures& g);

/// Constants turning L-values of the supplementary functions into (-n2 + kappa)^{-(k+1)} c_{n1}(-n2):
/// A_{p,q}(i,j) on conj(L(P*_{n1}, zeta_i, p+1)) L(P*_{n2}, zeta_j, q+1), B_p(i) on
/// conj(L(P*_{n1}, zeta_i, p+1)) E_{n2}, C_q(j) on conj(E_{n1}) L(P*_{n2}, zeta_j, q+1), D on conj(E_{n1}) E_{n2},
/// where E_n = c_{k+2} c_f(P*_n).
struct PairingConstants {
  int k = 0;
  std::size_t t = 0;
  std::vector<Complex> A;  // index (p + (k+1) i) * size + q + (k+1) j
  std::vector<Complex> B;  // index p + (k+1) i
  std::vector<Complex> C;  // index q + (k+1) j
  Complex D{};
};

PairingConstants pairing_constants(const PairingMatrix& pm, const AutomorphyData& data);

Complex gram_from_constants(const PairingConstants& pc, const PeriodFeatures& f, const PeriodFeatures& g);

/// Factor turning a Gram entry (P_n1, P_n2) into (-n2 + kappa)^{-(k+1)} c_{n1}(-n2).
double gram_normalization(const AutomorphyData& data);

}  // namespace mgrid::lfun
