#pragma once

#include <cstdint>

#include "mgrid/poincare.hpp"

namespace mgrid::grid {

/// Harmonic form G_{n2,alpha2} of weight -k with conjugate automorphy data.
struct HarmonicForm {
  int k = 0;
  int64_t n2 = 0;
  int alpha2 = 0;
  /// Holomorphic part: leading 1 at (-n2, alpha2), constant terms, and b(l, j) for l + kappa'_j > 0.
  FourierSeries holomorphic;
  /// Non-holomorphic coefficients b^-(l, j) for l + kappa'_j < 0.
  FourierSeries nonholomorphic;

  /// Value of component j at tau (holomorphic plus non-holomorphic part).
  Complex eval(Complex tau, int j, const PrecisionContext& ctx) const;
};

/// f_{n1,alpha1} of weight data.weight = k + 2 (the Poincare series P_{n1,alpha1}).
FourierSeries build_f(const AutomorphyData& data, int64_t n1, int alpha1, int64_t l_max, const TruncationParams& trunc);

/// G_{n2,alpha2}; `data` carries (chi, rho) at weight k + 2, the result has weight -k.
HarmonicForm build_G(const AutomorphyData& data, int64_t n2, int alpha2, int64_t l_max, const TruncationParams& trunc);

/// b(l, j) of G^+_{n2,alpha2} for l + kappa'_j >= 0 (the leading term is not included).
poincare::CoefficientResult holomorphic_coefficient(const AutomorphyData& data, int64_t n2, int alpha2, int64_t l, int j,
                                                    const TruncationParams& trunc);

/// b^-(l, j) of G^-_{n2,alpha2} for l + kappa'_j < 0.
poincare::CoefficientResult nonholomorphic_coefficient(const AutomorphyData& data, int64_t n2, int alpha2, int64_t l,
                                                       int j, const TruncationParams& trunc);

struct DualityRecord {
  int64_t n1 = 0, n2 = 0;
  int alpha1 = 0, alpha2 = 0;
  Complex lhs{}, rhs{};  // a_{n1}(...) and b_{n2}(...); duality says lhs = -rhs
  double lhs_bound = 0, rhs_bound = 0;
  double residual = 0;   // |lhs + rhs| / max(1, |lhs|, |rhs|)
  double tolerance = 0;  // truncation-driven allowance on the same scale
  bool ok = false;
};

DualityRecord verify_duality(const AutomorphyData& data, int64_t n1, int alpha1, int64_t n2, int alpha2,
                             const TruncationParams& trunc);

/// Duality records for every pair, one pass over c per n1 and per n2.
std::vector<DualityRecord> verify_duality_grid(const AutomorphyData& data,
                                               const std::vector<std::pair<int64_t, int>>& first,
                                               const std::vector<std::pair<int64_t, int>>& second,
                                               const TruncationParams& trunc);

/// D^{k+1} G: weight k + 2 expansion with the conjugate data.
FourierSeries apply_Dk1(const HarmonicForm& g);

/// xi_{-k} G: weight k + 2 expansion with the original data.
FourierSeries apply_xi(const HarmonicForm& g, const AutomorphyData& data);

struct SymmetryRecord {
  Complex lhs{}, rhs{};
  double residual = 0;
  double tolerance = 0;
  bool ok = false;
};

/// b^-_{n2}(-m2, alpha_m) (-m2 + kappa')^{k+1} against conj(b^-_{m2}(-n2, alpha_n)) (-n2 + kappa')^{k+1}.
SymmetryRecord check_main2_symmetry(const AutomorphyData& data, int64_t n2, int alpha_n, int64_t m2, int alpha_m,
                                    const TruncationParams& trunc);

}  // namespace mgrid::grid
